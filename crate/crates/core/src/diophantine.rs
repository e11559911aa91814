//! Exact arithmetic for the Liouville constant `c = Σ_{j≥1} 2^{−j!}`.
//!
//! `c` itself is never formed. It is represented by a truncation
//! `c_K = Σ_{j≤K} 2^{−j!}` together with an exact bound on the tail, so
//! every inequality about `c` becomes a decidable statement about
//! rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::FreqVector;

pub const MAX_ORDER: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiophantineError {
    #[error("order {0} outside 1..={MAX_ORDER}")]
    OutOfRange(usize),
    #[error("truncation order {truncation} must exceed convergent index {k}")]
    InsufficientTruncation { k: usize, truncation: usize },
    #[error("ξ₁ + c·ξ₂ vanishes exactly at ξ = {0}")]
    DivisionByZero(FreqVector),
    #[error("probe needs a nonzero frequency in Z², got {0}")]
    BadFrequency(FreqVector),
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// `2^{−e}` as an exact rational.
fn inv_pow2(e: usize) -> BigRational {
    BigRational::new(BigInt::one(), pow2(e))
}

fn check_order(k: usize) -> Result<(), DiophantineError> {
    if (1..=MAX_ORDER).contains(&k) {
        Ok(())
    } else {
        Err(DiophantineError::OutOfRange(k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiouvilleTruncation {
    pub order: usize,
    /// `Σ_{j=1}^{K} 2^{−j!}`
    pub value: BigRational,
    /// `2 · 2^{−(K+1)!}`, strictly above `c − value`.
    pub tail_bound: BigRational,
}

pub fn truncate_liouville(order: usize) -> Result<LiouvilleTruncation, DiophantineError> {
    check_order(order)?;
    let value = (1..=order).map(|j| inv_pow2(factorial(j))).sum();
    let tail_bound = inv_pow2(factorial(order + 1)) * BigRational::from_integer(2.into());
    Ok(LiouvilleTruncation {
        order,
        value,
        tail_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub k: usize,
    /// `Σ_{j=1}^{k} 2^{k!−j!}`
    pub p: BigInt,
    /// `2^{k!}`
    pub q: BigInt,
}

impl Convergent {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }

    /// The probe frequency `(−p_k, q_k)`.
    pub fn probe_point(&self) -> FreqVector {
        FreqVector(vec![-self.p.clone(), self.q.clone()])
    }
}

pub fn convergent(k: usize) -> Result<Convergent, DiophantineError> {
    check_order(k)?;
    let kf = factorial(k);
    let p = (1..=k).map(|j| pow2(kf - factorial(j))).sum();
    Ok(Convergent { k, p, q: pow2(kf) })
}

/// Exact witnesses for `|c − p_k/q_k| < 2·2^{−(k+1)!} ≤ q_k^{−k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiouvilleCheck {
    pub k: usize,
    pub truncation: usize,
    /// `|c_K − p_k/q_k|`
    pub gap: BigRational,
    /// Upper bound on `|c − p_k/q_k|`: `gap + tail_bound(K)`.
    pub upper: BigRational,
    /// `2 · 2^{−(k+1)!}`
    pub middle: BigRational,
    /// `q_k^{−k}`
    pub bound: BigRational,
    pub holds: bool,
}

pub fn verify_liouville_inequality(k: usize, truncation: usize) -> Result<LiouvilleCheck, DiophantineError> {
    if truncation <= k {
        return Err(DiophantineError::InsufficientTruncation { k, truncation });
    }
    let conv = convergent(k)?;
    let trunc = truncate_liouville(truncation)?;
    let gap = (&trunc.value - conv.ratio()).abs();
    let upper = &gap + &trunc.tail_bound;
    let middle = inv_pow2(factorial(k + 1)) * BigRational::from_integer(2.into());
    let bound = BigRational::new(BigInt::one(), num_traits::pow(conv.q.clone(), k));
    let holds = upper < middle && middle <= bound;
    Ok(LiouvilleCheck {
        k,
        truncation,
        gap,
        upper,
        middle,
        bound,
        holds,
    })
}

/// `1/|ξ₁ + c_K·ξ₂|`, exactly.
pub fn small_denominator_probe(
    c: &LiouvilleTruncation,
    xi: &FreqVector,
) -> Result<BigRational, DiophantineError> {
    if xi.dim() != 2 || xi.is_zero() {
        return Err(DiophantineError::BadFrequency(xi.clone()));
    }
    let x1 = BigRational::from_integer(xi.0[0].clone());
    let x2 = BigRational::from_integer(xi.0[1].clone());
    let den = (x1 + &c.value * x2).abs();
    if den.is_zero() {
        return Err(DiophantineError::DivisionByZero(xi.clone()));
    }
    Ok(den.recip())
}

/// Probe at the convergent point `(−p_k, q_k)` against `q_k^{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeCheck {
    pub k: usize,
    pub truncation: usize,
    #[serde(skip)]
    pub value: BigRational,
    #[serde(skip)]
    pub lower: BigRational,
    pub holds: bool,
}

pub fn convergent_probe(k: usize, truncation: usize) -> Result<ProbeCheck, DiophantineError> {
    if truncation <= k {
        return Err(DiophantineError::InsufficientTruncation { k, truncation });
    }
    let conv = convergent(k)?;
    let c = truncate_liouville(truncation)?;
    let value = small_denominator_probe(&c, &conv.probe_point())?;
    let lower = BigRational::from_integer(num_traits::pow(conv.q.clone(), k - 1));
    let holds = value >= lower;
    Ok(ProbeCheck {
        k,
        truncation,
        value,
        lower,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn truncations() {
        assert_eq!(truncate_liouville(1).unwrap().value, q(1, 2));
        assert_eq!(truncate_liouville(3).unwrap().value, q(49, 64));
        assert_eq!(truncate_liouville(9), Err(DiophantineError::OutOfRange(9)));
        assert_eq!(truncate_liouville(0), Err(DiophantineError::OutOfRange(0)));
    }

    #[test]
    fn convergents() {
        let pq = |k| {
            let c = convergent(k).unwrap();
            (c.p, c.q)
        };
        assert_eq!(pq(1), (1.into(), 2.into()));
        assert_eq!(pq(2), (3.into(), 4.into()));
        assert_eq!(pq(3), (49.into(), 64.into()));
    }

    #[test]
    fn inequality_instances() {
        let c = verify_liouville_inequality(2, 5).unwrap();
        assert!(c.holds);
        let expect = inv_pow2(6) + inv_pow2(24) + inv_pow2(120);
        assert_eq!(c.gap, expect);
        assert_eq!(c.bound, q(1, 16));
        assert!(verify_liouville_inequality(1, 4).unwrap().holds);
        assert_eq!(
            verify_liouville_inequality(3, 3),
            Err(DiophantineError::InsufficientTruncation { k: 3, truncation: 3 })
        );
    }

    #[test]
    fn probes() {
        let c4 = truncate_liouville(4).unwrap();
        let v = small_denominator_probe(&c4, &FreqVector::from_i64(&[-49, 64])).unwrap();
        assert!(v >= q(4096, 1));
        // ξ₁ + c₄ξ₂ = 64·2^{−24} = 2^{−18}
        assert_eq!(v, q(1 << 18, 1));
        let c3 = truncate_liouville(3).unwrap();
        assert!(matches!(
            small_denominator_probe(&c3, &FreqVector::from_i64(&[-49, 64])),
            Err(DiophantineError::DivisionByZero(_))
        ));
        assert_eq!(small_denominator_probe(&c4, &FreqVector::from_i64(&[1, 0])).unwrap(), q(1, 1));
        assert!(small_denominator_probe(&c4, &FreqVector::from_i64(&[0, 0])).is_err());
    }
}
