use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{GaussRational, SymbolicError};

/// Exponent vector `(e_t, e_1, …, e_n)` of a monomial `∂t^e_t ∂1^e_1 ⋯ ∂n^e_n`.
///
/// Ordered graded-lexicographically: total degree first, then
/// lexicographically with `∂t` as the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n + 1])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn t_degree(&self) -> u32 {
        self.0[0]
    }

    pub fn spatial(&self) -> &[u32] {
        &self.0[1..]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact polynomial in `∂t, ∂1, …, ∂n` with Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, GaussRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "spatial dimension must be at least 1");
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    /// `∂t` when `var == 0`, otherwise `∂var`.
    pub fn variable(n: usize, var: usize) -> Self {
        assert!(var <= n);
        let mut m = Monomial::one(n);
        m.0[var] = 1;
        let mut p = Self::zero(n);
        p.add_term(m, GaussRational::one());
        p
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, GaussRational)>,
    ) -> Result<Self, SymbolicError> {
        let mut p = Self::zero(n);
        for (exps, c) in terms {
            if exps.len() != n + 1 {
                return Err(SymbolicError::DimensionMismatch {
                    left: n,
                    right: exps.len().saturating_sub(1),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> GaussRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::t_degree).max().unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRational::is_real)
    }

    /// Monic in `τ`: the `∂t^deg` coefficient is 1 and no other monomial
    /// reaches that `∂t` degree.
    pub fn is_monic_in_t(&self) -> bool {
        let d = self.t_degree();
        let top: Vec<_> = self.terms.iter().filter(|(m, _)| m.t_degree() == d).collect();
        top.len() == 1 && top[0].0.spatial().iter().all(|&e| e == 0) && top[0].1.is_one()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn arith(&self, other: &MultiPoly, op: PolyOp) -> Result<MultiPoly, SymbolicError> {
        if self.n != other.n {
            return Err(SymbolicError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        match op {
            PolyOp::Add => {
                for (m, c) in &other.terms {
                    out.add_term(m.clone(), c.clone());
                }
            }
            PolyOp::Sub => {
                for (m, c) in &other.terms {
                    out.add_term(m.clone(), -c);
                }
            }
            PolyOp::Mul => {
                out = MultiPoly::zero(self.n);
                for (ma, ca) in &self.terms {
                    for (mb, cb) in &other.terms {
                        out.add_term(ma.mul(mb), ca * cb);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
        self.arith(other, PolyOp::Add)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
        self.arith(other, PolyOp::Sub)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
        self.arith(other, PolyOp::Mul)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.n, GaussRational::one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    /// Prints in the operator grammar, highest graded-lex term first, so
    /// that the output parses back to an equal polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            let symbols = m.0.iter().enumerate().filter(|(_, &e)| e > 0);
            for (var, &e) in symbols {
                let name = if var == 0 {
                    "Dt".to_string()
                } else {
                    format!("Dx{var}")
                };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if !c.is_one() || factors.is_empty() {
                factors.insert(0, c.to_grammar_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let t = MultiPoly::variable(1, 0);
        let one = MultiPoly::constant(1, GaussRational::one());
        let a = t.add(&one).unwrap();
        let b = t.sub(&one).unwrap();
        let expect = t.mul(&t).unwrap().sub(&one).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expect);
    }

    #[test]
    fn zero_identity_and_cancellation() {
        let x = MultiPoly::variable(2, 1);
        let z = MultiPoly::zero(2);
        assert_eq!(x.add(&z).unwrap(), x);
        assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let a = MultiPoly::variable(1, 0);
        let b = MultiPoly::variable(2, 0);
        assert!(matches!(
            a.add(&b),
            Err(SymbolicError::DimensionMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn graded_lex_order() {
        let lo = Monomial(vec![0, 2, 0]);
        let hi = Monomial(vec![1, 1, 0]);
        let top = Monomial(vec![0, 0, 3]);
        assert!(hi > lo);
        assert!(top > hi);
    }

    #[test]
    fn monic_detection() {
        let t = MultiPoly::variable(2, 0);
        let x = MultiPoly::variable(2, 1);
        let heat = t.sub(&x.mul(&x).unwrap()).unwrap();
        assert!(heat.is_monic_in_t());
        let mixed = t.mul(&x).unwrap().add(&t).unwrap();
        assert!(!mixed.is_monic_in_t());
    }
}
