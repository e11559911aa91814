use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::axis::{classify_axis, ExactSymbol};
use super::roots::{find_roots, sort_roots};
use super::{AxisMode, RootSolverConfig, SpectrumError};
use crate::lattice::{FreqVector, Frequency, PeriodLattice};
use crate::symbolic::{GaussRational, MultiPoly, UniPolyC, UniPolyQ};

/// The symbol at one frequency: floating image plus, when it exists, an
/// exact polynomial over `Q(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialized {
    pub float: UniPolyC,
    /// Exact polynomial in `τ` (integer lattice) or in `τ' = τ/(2π)` after
    /// removing a common power of `2π` (general lattice, homogeneous slices).
    pub exact: Option<ExactSymbol>,
    /// Exact `P(τ, iθ)` itself, available only on the integer lattice.
    pub exact_tau: Option<UniPolyQ>,
}

/// `Σ a_α τ^{α_t} Π (i θ_j)^{α_j}` for rational `θ`, exactly. Also returns
/// the total degrees of the monomials that contribute a nonzero term.
fn specialize_exact(p: &MultiPoly, theta: &[BigRational]) -> (UniPolyQ, Vec<u32>) {
    let mut coeffs = vec![GaussRational::zero(); p.t_degree() as usize + 1];
    let mut degrees = Vec::new();
    for (m, a) in p.terms() {
        let mut mag = BigRational::one();
        let mut i_power = 0u32;
        for (th, &e) in theta.iter().zip(m.spatial()) {
            if e > 0 {
                mag *= num_traits::pow(th.clone(), e as usize);
                i_power += e;
            }
        }
        if mag.is_zero() {
            continue;
        }
        let mut term = a.scale(&mag);
        for _ in 0..i_power % 4 {
            term = term.mul_i();
        }
        coeffs[m.t_degree() as usize] += &term;
        degrees.push(m.total_degree());
    }
    (UniPolyQ::new(coeffs), degrees)
}

fn specialize_float(p: &MultiPoly, theta: &[f64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); p.t_degree() as usize + 1];
    for (m, a) in p.terms() {
        let mut term = a.to_complex();
        for (&th, &e) in theta.iter().zip(m.spatial()) {
            term *= Complex64::new(0.0, th).powu(e);
        }
        coeffs[m.t_degree() as usize] += term;
    }
    coeffs
}

/// Substitutes `∂t → τ`, `∂j → i·θ_j`.
///
/// With `use_exact`, an exact image is produced whenever one exists over
/// `Q(i)`: always on the integer lattice; on a general lattice only when
/// every contributing monomial has the same total degree `d`, in which case
/// `P(2πτ', 2πi·Rξ) = (2π)^d · Q(τ')` with `Q` exact.
pub fn specialize_frequency(
    p: &MultiPoly,
    freq: &Frequency,
    use_exact: bool,
) -> Result<Specialized, SpectrumError> {
    if !use_exact {
        return Ok(Specialized {
            float: UniPolyC::new(specialize_float(p, &freq.theta))?,
            exact: None,
            exact_tau: None,
        });
    }
    let (q, degrees) = specialize_exact(p, &freq.exact);
    if !freq.two_pi_scaled {
        return Ok(Specialized {
            float: q.to_complex(),
            exact: Some(ExactSymbol {
                poly: q.clone(),
                root_scale: 1.0,
            }),
            exact_tau: Some(q),
        });
    }
    let homogeneous = degrees.windows(2).all(|w| w[0] == w[1]);
    if !homogeneous || q.is_zero() {
        return Ok(Specialized {
            float: UniPolyC::new(specialize_float(p, &freq.theta))?,
            exact: None,
            exact_tau: None,
        });
    }
    let d = degrees[0] as i32;
    let two_pi = 2.0 * std::f64::consts::PI;
    let float = q
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.to_complex() * two_pi.powi(d - k as i32))
        .collect();
    Ok(Specialized {
        float: UniPolyC::new(float)?,
        exact: Some(ExactSymbol {
            poly: q,
            root_scale: two_pi,
        }),
        exact_tau: None,
    })
}

/// How the imaginary-axis flags of a slice were decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisMethod {
    Exact,
    Numeric,
    /// Exact mode was requested but the slice has no exact image.
    NumericFallback,
}

/// Per-frequency factorization `P(τ, iθ) = c · Π (τ − λ_j)` with the
/// axis flags and `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceFactorization {
    pub xi: FreqVector,
    pub m: usize,
    pub c: Complex64,
    pub roots: Vec<Complex64>,
    pub on_axis: Vec<bool>,
    pub d: f64,
    pub axis_method: AxisMethod,
    /// Exact symbol in `τ`, kept for the exact solve path.
    pub exact_tau: Option<UniPolyQ>,
}

impl SliceFactorization {
    pub fn all_on_axis(&self) -> bool {
        self.on_axis.iter().all(|&b| b)
    }

    pub fn max_root_modulus(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }
}

pub fn slice_factorize(
    p: &MultiPoly,
    xi: &FreqVector,
    lattice: &PeriodLattice,
    cfg: &RootSolverConfig,
) -> Result<SliceFactorization, SpectrumError> {
    let freq = lattice.frequency(xi)?;
    let spec = specialize_frequency(p, &freq, cfg.axis_mode == AxisMode::Exact)?;
    let Some(m) = spec.float.degree() else {
        return Err(SpectrumError::IdenticallyZeroSlice(xi.clone()));
    };
    let c = spec.float.leading().expect("nonzero");
    if m == 0 {
        return Ok(SliceFactorization {
            xi: xi.clone(),
            m,
            c,
            roots: Vec::new(),
            on_axis: Vec::new(),
            d: 1.0,
            axis_method: method_for(cfg, &spec),
            exact_tau: spec.exact_tau,
        });
    }
    let mut roots = find_roots(&spec.float, cfg)?;
    let (method, local_cfg) = match (cfg.axis_mode, &spec.exact) {
        (AxisMode::Exact, None) => (
            AxisMethod::NumericFallback,
            RootSolverConfig {
                axis_mode: AxisMode::Numeric,
                ..cfg.clone()
            },
        ),
        (AxisMode::Exact, Some(_)) => (AxisMethod::Exact, cfg.clone()),
        (AxisMode::Numeric, _) => (AxisMethod::Numeric, cfg.clone()),
    };
    let flags = classify_axis(&spec.float, spec.exact.as_ref(), &roots, &local_cfg)?;
    if method == AxisMethod::Exact {
        // an exactly-decided axis root has real part 0
        for (r, &f) in roots.iter_mut().zip(&flags) {
            if f {
                r.re = 0.0;
            }
        }
    }
    let mut paired: Vec<(Complex64, bool)> = roots.into_iter().zip(flags).collect();
    paired.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    let (mut roots, on_axis): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
    sort_roots(&mut roots);
    let off_axis_min = roots
        .iter()
        .zip(&on_axis)
        .filter(|(_, &f)| !f)
        .map(|(r, _)| r.re.abs())
        .fold(f64::INFINITY, f64::min);
    // an off-axis root whose real part underflowed still has d > 0
    let d = if off_axis_min.is_infinite() {
        1.0
    } else {
        off_axis_min.max(f64::MIN_POSITIVE)
    };
    Ok(SliceFactorization {
        xi: xi.clone(),
        m,
        c,
        roots,
        on_axis,
        d,
        axis_method: method,
        exact_tau: spec.exact_tau,
    })
}

fn method_for(cfg: &RootSolverConfig, spec: &Specialized) -> AxisMethod {
    match (cfg.axis_mode, spec.exact.is_some()) {
        (AxisMode::Numeric, _) => AxisMethod::Numeric,
        (AxisMode::Exact, true) => AxisMethod::Exact,
        (AxisMode::Exact, false) => AxisMethod::NumericFallback,
    }
}
