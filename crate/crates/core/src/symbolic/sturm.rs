//! Sturm sequences over `Q` for exact real-root counting and isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::unipoly::square_free_decomposition;
use super::{SymbolicError, UniPolyQ};

/// Canonical Sturm chain of the square-free part of a real polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPolyQ>,
}

impl SturmChain {
    pub fn new(p: &UniPolyQ) -> Result<Self, SymbolicError> {
        if p.is_zero() {
            return Err(SymbolicError::ZeroPolynomial);
        }
        if !p.is_real() {
            return Err(SymbolicError::NotReal);
        }
        let dp = p.derivative();
        let sqf = if dp.is_zero() {
            p.monic()
        } else {
            p.div_rem(&p.gcd(&dp)?)?.0.monic()
        };
        let mut chain = vec![sqf.clone(), sqf.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&super::GaussRational::from_int(-1)));
        }
        Ok(Self { chain })
    }

    pub fn poly(&self) -> &UniPolyQ {
        &self.chain[0]
    }

    fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    fn changes_at(&self, x: &BigRational) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| sign(&p.eval_real(x))))
    }

    fn changes_at_infinity(&self, positive: bool) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| {
            let lc = sign(&p.leading().expect("nonzero chain entry").re);
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -lc
            } else {
                lc
            }
        }))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.changes_at_infinity(false) - self.changes_at_infinity(true)
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.changes_at(a).saturating_sub(self.changes_at(b))
    }

    /// Isolating intervals `(a, b]`, each holding exactly one distinct real
    /// root, refined until `b − a ≤ width`. Sorted ascending.
    pub fn isolate(&self, width: &BigRational) -> Vec<(BigRational, BigRational)> {
        let total = self.count_all();
        let mut out = Vec::with_capacity(total);
        if total == 0 {
            return out;
        }
        let bound = root_bound(self.poly());
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let c = self.count_in(&a, &b);
            if c == 0 {
                continue;
            }
            if c == 1 && &(&b - &a) <= width {
                out.push((a, b));
                continue;
            }
            let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }
}

fn sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Power-of-two bound strictly above every real root magnitude.
fn root_bound(p: &UniPolyQ) -> BigRational {
    let lc = p.leading().expect("nonzero").re.abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.re.abs() / &lc)
        .max()
        .unwrap_or_else(BigRational::zero);
    let cauchy = BigRational::one() + max;
    let mut b = BigRational::one();
    while b <= cauchy {
        b *= BigRational::from_integer(BigInt::from(2));
    }
    b
}

/// Number of distinct real roots of a nonzero real polynomial.
pub fn sturm_count_real_roots(p: &UniPolyQ) -> Result<usize, SymbolicError> {
    Ok(SturmChain::new(p)?.count_all())
}

/// A distinct real root located exactly inside `(lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

impl IsolatedRoot {
    pub fn midpoint(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        super::rational_to_f64(&mid)
    }
}

/// All distinct real roots of a real polynomial with their multiplicities,
/// each isolated to an interval no wider than `width`.
pub fn real_roots_with_multiplicity(
    p: &UniPolyQ,
    width: &BigRational,
) -> Result<Vec<IsolatedRoot>, SymbolicError> {
    if !p.is_real() {
        return Err(SymbolicError::NotReal);
    }
    let mut out = Vec::new();
    for (factor, multiplicity) in square_free_decomposition(p)? {
        let chain = SturmChain::new(&factor)?;
        for (lo, hi) in chain.isolate(width) {
            out.push(IsolatedRoot {
                lo,
                hi,
                multiplicity,
            });
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}
