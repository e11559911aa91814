use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GaussRational, SymbolicError};

/// Coefficients with magnitude at or below this fraction of the largest
/// coefficient are dropped when trimming a floating polynomial.
pub const TRIM_RELATIVE: f64 = 1e-14;

/// Exact univariate polynomial over the Gaussian rationals, `coeffs[k]` is
/// the coefficient of `τ^k`. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPolyQ {
    coeffs: Vec<GaussRational>,
}

impl UniPolyQ {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![GaussRational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&k| GaussRational::from_int(k)).collect())
    }

    pub fn from_rationals(c: Vec<BigRational>) -> Self {
        Self::new(c.into_iter().map(GaussRational::real).collect())
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussRational> {
        self.coeffs.last()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussRational::is_real)
    }

    pub fn eval(&self, x: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluation of a real polynomial at a rational point.
    pub fn eval_real(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + &c.re;
        }
        acc
    }

    pub fn add(&self, o: &UniPolyQ) -> UniPolyQ {
        let len = self.coeffs.len().max(o.coeffs.len());
        let zero = GaussRational::zero();
        UniPolyQ::new(
            (0..len)
                .map(|k| {
                    let a = self.coeffs.get(k).unwrap_or(&zero);
                    let b = o.coeffs.get(k).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &UniPolyQ) -> UniPolyQ {
        self.add(&o.scale(&GaussRational::from_int(-1)))
    }

    pub fn mul(&self, o: &UniPolyQ) -> UniPolyQ {
        if self.is_zero() || o.is_zero() {
            return UniPolyQ::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPolyQ::new(out)
    }

    pub fn scale(&self, k: &GaussRational) -> UniPolyQ {
        UniPolyQ::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> UniPolyQ {
        UniPolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussRational::from_int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPolyQ {
        match self.leading() {
            None => UniPolyQ::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division over the field `Q(i)`.
    pub fn div_rem(&self, d: &UniPolyQ) -> Result<(UniPolyQ, UniPolyQ), SymbolicError> {
        let dd = d.degree().ok_or(SymbolicError::DivisionByZero)?;
        let lc_inv = d.leading().and_then(GaussRational::inv).expect("nonzero");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((UniPolyQ::zero(), UniPolyQ::zero()));
        };
        if nd < dd {
            return Ok((UniPolyQ::zero(), self.clone()));
        }
        let mut quot = vec![GaussRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPolyQ::new(quot), UniPolyQ::new(rem)))
    }

    /// Monic gcd over `Q(i)`; `gcd(0, 0)` is an error.
    pub fn gcd(&self, o: &UniPolyQ) -> Result<UniPolyQ, SymbolicError> {
        if self.is_zero() && o.is_zero() {
            return Err(SymbolicError::GcdOfZeros);
        }
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    /// Substitutes `τ = i·s` and splits into real-coefficient polynomials
    /// `u(s) + i·v(s)`.
    pub fn split_on_imaginary_axis(&self) -> (UniPolyQ, UniPolyQ) {
        let mut u = Vec::with_capacity(self.coeffs.len());
        let mut v = Vec::with_capacity(self.coeffs.len());
        let mut ik = GaussRational::one();
        for c in &self.coeffs {
            let t = c * &ik;
            u.push(GaussRational::real(t.re));
            v.push(GaussRational::real(t.im));
            ik = ik.mul_i();
        }
        (UniPolyQ::new(u), UniPolyQ::new(v))
    }

    /// Substitutes `τ = k·τ'` for a rational `k`.
    pub fn rescale_argument(&self, k: &BigRational) -> UniPolyQ {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.scale(&pow));
            pow *= k;
        }
        UniPolyQ::new(out)
    }

    pub fn to_complex(&self) -> UniPolyC {
        UniPolyC::from_exact(self)
    }
}

/// Monic gcd of two real-coefficient polynomials over `Q`.
pub fn real_poly_gcd(u: &UniPolyQ, v: &UniPolyQ) -> Result<UniPolyQ, SymbolicError> {
    if !u.is_real() || !v.is_real() {
        return Err(SymbolicError::NotReal);
    }
    u.gcd(v)
}

/// Yun's square-free decomposition over the field of coefficients:
/// returns `(factor, multiplicity)` pairs with square-free, pairwise
/// coprime, non-constant monic factors whose product (with multiplicities)
/// equals `p` made monic.
pub fn square_free_decomposition(p: &UniPolyQ) -> Result<Vec<(UniPolyQ, usize)>, SymbolicError> {
    if p.is_zero() {
        return Err(SymbolicError::ZeroPolynomial);
    }
    let p = p.monic();
    let dp = p.derivative();
    let mut out = Vec::new();
    if dp.is_zero() {
        return Ok(out);
    }
    let a0 = p.gcd(&dp)?;
    let mut b = p.div_rem(&a0)?.0;
    let c = dp.div_rem(&a0)?.0;
    let mut d = c.sub(&b.derivative());
    let mut mult = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d)?;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), mult));
        }
        let nb = b.div_rem(&a)?.0;
        let nc = d.div_rem(&a)?.0;
        d = nc.sub(&nb.derivative());
        b = nb;
        mult += 1;
    }
    Ok(out)
}

/// Floating-point univariate polynomial, `coeffs[k]` multiplies `τ^k`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct UniPolyC {
    coeffs: Vec<Complex64>,
}

impl UniPolyC {
    /// Builds and trims: leading coefficients at or below
    /// `TRIM_RELATIVE · max|c|` are dropped.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, SymbolicError> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SymbolicError::NonFinite);
        }
        let mut coeffs = coeffs;
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cut = TRIM_RELATIVE * max;
        while coeffs.last().is_some_and(|c| c.norm() <= cut) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    /// Floating image of an exact polynomial. The exact degree is kept:
    /// only exactly-zero leading terms are absent.
    pub fn from_exact(p: &UniPolyQ) -> Self {
        Self {
            coeffs: p.coeffs().iter().map(GaussRational::to_complex).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> UniPolyC {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        }
    }

    /// `lead · Π (τ − r_j)` expanded.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> UniPolyC {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    /// Cauchy bound `1 + max_j |c_j / c_m|` on root magnitudes.
    pub fn cauchy_bound(&self) -> f64 {
        let Some(lead) = self.leading() else {
            return 0.0;
        };
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
        1.0 + m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let s2m1 = UniPolyQ::from_ints(&[-1, 0, 1]);
        let sm1 = UniPolyQ::from_ints(&[-1, 1]);
        assert_eq!(real_poly_gcd(&s2m1, &sm1).unwrap(), sm1);

        let s2p1 = UniPolyQ::from_ints(&[1, 0, 1]);
        let s = UniPolyQ::from_ints(&[0, 1]);
        assert_eq!(real_poly_gcd(&s2p1, &s).unwrap(), UniPolyQ::one());

        let p = UniPolyQ::from_ints(&[4, 0, 2]);
        assert_eq!(
            real_poly_gcd(&p, &UniPolyQ::zero()).unwrap(),
            UniPolyQ::from_ints(&[2, 0, 1])
        );
        assert!(matches!(
            real_poly_gcd(&UniPolyQ::zero(), &UniPolyQ::zero()),
            Err(SymbolicError::GcdOfZeros)
        ));
    }

    #[test]
    fn division_identity() {
        let a = UniPolyQ::from_ints(&[3, -2, 0, 5, 1]);
        let b = UniPolyQ::from_ints(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn imaginary_axis_split() {
        // τ² + 25 at τ = i s gives 25 − s².
        let p = UniPolyQ::from_ints(&[25, 0, 1]);
        let (u, v) = p.split_on_imaginary_axis();
        assert_eq!(u, UniPolyQ::from_ints(&[25, 0, -1]));
        assert!(v.is_zero());
    }

    #[test]
    fn square_free_parts() {
        // (s − 1)² (s + 2)
        let p = UniPolyQ::from_ints(&[-1, 1])
            .mul(&UniPolyQ::from_ints(&[-1, 1]))
            .mul(&UniPolyQ::from_ints(&[2, 1]));
        let parts = square_free_decomposition(&p).unwrap();
        assert_eq!(
            parts,
            vec![
                (UniPolyQ::from_ints(&[2, 1]), 1),
                (UniPolyQ::from_ints(&[-1, 1]), 2)
            ]
        );
    }

    #[test]
    fn trimming() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let p = UniPolyC::new(vec![c(1.0), c(2.0), c(1e-16)]).unwrap();
        assert_eq!(p.degree(), Some(1));
        assert!(UniPolyC::new(vec![c(f64::NAN)]).is_err());
    }
}
