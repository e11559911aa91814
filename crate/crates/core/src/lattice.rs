//! Period lattices, dual frequency matrices and integer frequency balls.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::symbolic::rational_to_f64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("period matrix must be square and non-empty")]
    NotSquare,
    #[error("period matrix is singular")]
    Singular,
    #[error("no data on shell r = {0}")]
    MissingShell(usize),
    #[error("frequency vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
}

/// Integer frequency index `ξ ∈ Zⁿ`. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreqVector(pub Vec<BigInt>);

impl FreqVector {
    pub fn from_i64(v: &[i64]) -> Self {
        FreqVector(v.iter().map(|&k| BigInt::from(k)).collect())
    }

    pub fn zero(n: usize) -> Self {
        FreqVector(vec![BigInt::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        FreqVector(self.0.iter().map(|k| -k).collect())
    }

    /// `‖ξ‖₁`, exact.
    pub fn norm1(&self) -> BigInt {
        self.0.iter().map(|k| k.abs()).sum()
    }

    pub fn norm1_f64(&self) -> f64 {
        rational_to_f64(&BigRational::from_integer(self.norm1()))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|k| rational_to_f64(&BigRational::from_integer(k.clone())))
            .collect()
    }
}

impl fmt::Display for FreqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for FreqVector {
    /// Components that fit in `i64` are JSON numbers, larger ones strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|k| match k.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(k.to_string()),
            })
            .collect();
        vals.serialize(s)
    }
}

/// How integer indices map to spatial frequencies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `θ = ξ`: the symbol is evaluated at `P(τ, iξ)` and fields are
    /// `2π`-periodic in every coordinate.
    IntegerLattice,
    /// `θ = Bξ` with `B = 2π (A⁻¹)ᵀ`.
    General,
}

/// Spatial frequency `θ` at a lattice index, with its exact rational part.
#[derive(Clone, Debug, PartialEq)]
pub struct Frequency {
    pub theta: Vec<f64>,
    /// `θ = scale · exact` where `scale` is 1 (integer lattice) or `2π`.
    pub exact: Vec<BigRational>,
    pub two_pi_scaled: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodLattice {
    n: usize,
    a: Vec<Vec<BigRational>>,
    /// `(A⁻¹)ᵀ`, so that `B = 2π · exact_b`.
    exact_b: Vec<Vec<BigRational>>,
    b: Vec<Vec<f64>>,
    convention: Convention,
}

impl PeriodLattice {
    /// The integer-lattice convention: `A = I`, frequencies `θ = ξ`.
    pub fn integer(n: usize) -> Self {
        let id: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let b = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2.0 * PI } else { 0.0 }).collect())
            .collect();
        Self {
            n,
            a: id.clone(),
            exact_b: id,
            b,
            convention: Convention::IntegerLattice,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn period_matrix(&self) -> &[Vec<BigRational>] {
        &self.a
    }

    /// `B/(2π) = (A⁻¹)ᵀ`, exact.
    pub fn exact_b(&self) -> &[Vec<BigRational>] {
        &self.exact_b
    }

    /// `B = 2π (A⁻¹)ᵀ` in floating point.
    pub fn b(&self) -> &[Vec<f64>] {
        &self.b
    }

    /// Matrix applied to `ξ` in the phase `e^{i⟨Mξ, x⟩}` of a synthesized
    /// field: the identity under the integer-lattice convention, `B` otherwise.
    pub fn phase_matrix(&self) -> Vec<Vec<f64>> {
        match self.convention {
            Convention::IntegerLattice => (0..self.n)
                .map(|i| (0..self.n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
            Convention::General => self.b.clone(),
        }
    }

    /// Spatial period vectors, one per row: `2π e_j` under the integer
    /// convention, otherwise the columns `A e_j` of the period matrix.
    pub fn period_vectors(&self) -> Vec<Vec<f64>> {
        match self.convention {
            Convention::IntegerLattice => (0..self.n)
                .map(|j| (0..self.n).map(|k| if j == k { 2.0 * PI } else { 0.0 }).collect())
                .collect(),
            Convention::General => (0..self.n)
                .map(|j| (0..self.n).map(|k| rational_to_f64(&self.a[k][j])).collect())
                .collect(),
        }
    }

    pub fn frequency(&self, xi: &FreqVector) -> Result<Frequency, LatticeError> {
        if xi.dim() != self.n {
            return Err(LatticeError::WrongLength {
                expected: self.n,
                got: xi.dim(),
            });
        }
        let xs: Vec<BigRational> = xi.0.iter().cloned().map(BigRational::from_integer).collect();
        match self.convention {
            Convention::IntegerLattice => Ok(Frequency {
                theta: xs.iter().map(rational_to_f64).collect(),
                exact: xs,
                two_pi_scaled: false,
            }),
            Convention::General => {
                let exact: Vec<BigRational> = self
                    .exact_b
                    .iter()
                    .map(|row| row.iter().zip(&xs).map(|(r, x)| r * x).sum())
                    .collect();
                let theta = exact.iter().map(|q| 2.0 * PI * rational_to_f64(q)).collect();
                Ok(Frequency {
                    theta,
                    exact,
                    two_pi_scaled: true,
                })
            }
        }
    }
}

/// Builds the general-convention lattice for a rational period matrix
/// whose columns are the period vectors.
pub fn dual_matrix(a: Vec<Vec<BigRational>>) -> Result<PeriodLattice, LatticeError> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(LatticeError::NotSquare);
    }
    let inv = invert(&a)?;
    let exact_b: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| inv[j][i].clone()).collect())
        .collect();
    let b = exact_b
        .iter()
        .map(|row| row.iter().map(|q| 2.0 * PI * rational_to_f64(q)).collect())
        .collect();
    Ok(PeriodLattice {
        n,
        a,
        exact_b,
        b,
        convention: Convention::General,
    })
}

/// Gauss-Jordan inversion over `Q`.
fn invert(a: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>, LatticeError> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(LatticeError::Singular)?;
        m.swap(col, pivot);
        let inv = BigRational::one() / &m[col][col];
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Lexicographic enumeration of `{ξ ∈ Zⁿ : ‖ξ‖₁ ≤ R}`.
#[derive(Clone, Debug)]
pub struct BallIter {
    radius: i64,
    cur: Option<Vec<i64>>,
}

impl Iterator for BallIter {
    type Item = FreqVector;

    fn next(&mut self) -> Option<FreqVector> {
        let cur = self.cur.as_mut()?;
        let out = FreqVector::from_i64(cur);
        // successor: bump the rightmost coordinate that still fits the
        // budget, then reset the tail to its lexicographic minimum
        let n = cur.len();
        let mut advanced = false;
        for k in (0..n).rev() {
            let prefix: i64 = cur[..k].iter().map(|v| v.abs()).sum();
            if prefix + (cur[k] + 1).abs() <= self.radius {
                cur[k] += 1;
                let rem = self.radius - prefix - cur[k].abs();
                if k + 1 < n {
                    cur[k + 1] = -rem;
                    for v in cur[k + 2..].iter_mut() {
                        *v = 0;
                    }
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.cur = None;
        }
        Some(out)
    }
}

pub fn iter_ball(n: usize, radius: usize) -> BallIter {
    let r = radius as i64;
    let mut start = vec![0i64; n];
    if n > 0 {
        start[0] = -r;
    }
    BallIter {
        radius: r,
        cur: (n > 0).then_some(start),
    }
}

/// Per-shell maxima `M_r` for `r = 0..=R`; `None` where a shell has no data.
pub fn shell_maxima(values: &BTreeMap<FreqVector, f64>, radius: usize) -> Vec<Option<f64>> {
    let mut out: Vec<Option<f64>> = vec![None; radius + 1];
    for (xi, &v) in values {
        let Some(r) = xi.norm1().to_usize() else {
            continue;
        };
        if r <= radius {
            out[r] = Some(out[r].map_or(v, |m: f64| m.max(v)));
        }
    }
    out
}

/// Per-shell maxima, requiring data on every shell up to `R`.
pub fn shell_max(values: &BTreeMap<FreqVector, f64>, radius: usize) -> Result<Vec<f64>, LatticeError> {
    shell_maxima(values, radius)
        .into_iter()
        .enumerate()
        .map(|(r, m)| m.ok_or(LatticeError::MissingShell(r)))
        .collect()
}
