//! Division `P(d/dt, iθ)S = T` for finitely supported mode forcings.
//!
//! Each mode is normalized by `c_ξ` and passed through the first-order
//! resolvents of its roots in sorted order. On the exact path the roots
//! must be recovered in `Q(i)`; when some root is irrational the mode is
//! solved instead by inverting the symbol `P(iω + D)` as a power series in
//! `D`, which is exact for any exponential polynomial.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{Convention, FreqVector, PeriodLattice};
use crate::parallel::Exec;
use crate::resolvent::{
    antiderivative, resolvent_exppoly, shift_by_iomega, resolvent_grid, resolvent_grid_stage, ExpPoly, GridProfile, Lambda,
    ResolventError,
};
use crate::spectrum::{slice_factorize, specialize_frequency, RootSolverConfig, SliceFactorization, SpectrumError};
use crate::symbolic::{GaussRational, MultiPoly, UniPolyC, UniPolyQ};

pub const PERIODICITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("P(τ, iθ) vanishes identically at forced mode ξ = {0}")]
    Degenerate(FreqVector),
    #[error("mode {xi}: {source}")]
    Mode { xi: FreqVector, source: ResolventError },
    #[error("exponential-polynomial forcing at ξ = {0} needs an exact symbol (integer lattice)")]
    ExactPathUnavailable(FreqVector),
    #[error("grid forcings must share one window and step")]
    MixedGrids,
    #[error("solution and forcing use different profile representations")]
    RepresentationMismatch,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum TimeProfile {
    ExpPoly(ExpPoly),
    Grid(GridProfile),
}

impl TimeProfile {
    pub fn eval(&self, t: f64) -> Complex64 {
        match self {
            TimeProfile::ExpPoly(e) => e.eval(t),
            TimeProfile::Grid(g) => g.eval(t),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Forcing {
    pub modes: BTreeMap<FreqVector, TimeProfile>,
}

impl Forcing {
    pub fn single(xi: FreqVector, profile: TimeProfile) -> Self {
        Self {
            modes: BTreeMap::from([(xi, profile)]),
        }
    }

    fn check_grids(&self) -> Result<(), SolverError> {
        let mut grids = self.modes.values().filter_map(|p| match p {
            TimeProfile::Grid(g) => Some(g),
            TimeProfile::ExpPoly(_) => None,
        });
        if let Some(first) = grids.next() {
            if grids.any(|g| !g.same_grid(first)) {
                return Err(SolverError::MixedGrids);
            }
        }
        Ok(())
    }
}

/// How a mode was solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Exact roots, one resolvent per factor.
    Cascade,
    /// Exact power-series inversion of `P(iω + D)`.
    SymbolInversion,
    /// Numeric roots, grid recursions.
    Grid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModeSolution {
    pub profile: TimeProfile,
    pub residual: f64,
    pub route: Route,
    pub factorization: SliceFactorization,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolutionField {
    pub modes: BTreeMap<FreqVector, ModeSolution>,
}

impl SolutionField {
    pub fn profile(&self, xi: &FreqVector) -> Option<&TimeProfile> {
        self.modes.get(xi).map(|m| &m.profile)
    }

    pub fn max_residual(&self) -> f64 {
        self.modes.values().map(|m| m.residual).fold(0.0, f64::max)
    }
}

/// Best rational approximation by continued fractions, denominators up to
/// `max_den`, accepted only within `1e-9` relative.
fn approx_rational(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - r.floor();
        if (x - p1 as f64 / q1 as f64).abs() <= 1e-15 * (1.0 + x.abs()) || frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    if q1 == 0 || (x - p1 as f64 / q1 as f64).abs() > 1e-9 * (1.0 + x.abs()) {
        return None;
    }
    Some(BigRational::new(p1.into(), q1.into()))
}

/// The roots of the slice in `Q(i)`, in the slice's order, when the exact
/// symbol factors completely over them.
pub fn exact_roots(f: &SliceFactorization) -> Option<Vec<GaussRational>> {
    let exact = f.exact_tau.as_ref()?;
    let lead = exact.leading()?.clone();
    let mut roots = Vec::with_capacity(f.m);
    let mut product = UniPolyQ::new(vec![lead]);
    for r in &f.roots {
        let re = if f.on_axis[roots.len()] {
            BigRational::zero()
        } else {
            approx_rational(r.re, 1 << 24)?
        };
        let lam = GaussRational::new(re, approx_rational(r.im, 1 << 24)?);
        product = product.mul(&UniPolyQ::new(vec![-lam.clone(), GaussRational::from_int(1)]));
        roots.push(lam);
    }
    (product == *exact).then_some(roots)
}

/// `S = R_{λ_m} ⋯ R_{λ_1}(U / c)`.
pub fn cascade_exppoly(c: &GaussRational, roots: &[GaussRational], u: &ExpPoly) -> Result<ExpPoly, ResolventError> {
    let inv = c.inv().expect("leading coefficient is nonzero");
    let mut s = u.scale(&inv);
    for lam in roots {
        s = resolvent_exppoly(&Lambda::exact(lam.clone()), &s)?;
    }
    Ok(s)
}

/// Solves `R(D)S = U` exactly for an exact symbol `R`: on each term
/// `q e^{iωt}`, `R(iω + D) = D^j R̂(D)` with `R̂(0) ≠ 0`; invert `R̂` as a
/// power series up to `deg q`, then integrate `j` times.
pub fn invert_symbol(r: &UniPolyQ, u: &ExpPoly) -> ExpPoly {
    let mut out = ExpPoly::zero();
    for (w, q) in u.terms() {
        let shifted = shift_by_iomega(r, w);
        let j = shifted.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero symbol");
        let hat = &shifted.coeffs()[j..];
        let deg = q.degree().unwrap_or(0);
        let inv0 = hat[0].inv().expect("nonzero");
        // a = 1/R̂ as a power series, truncated at deg q
        let mut a: Vec<GaussRational> = vec![inv0.clone()];
        for k in 1..=deg {
            let mut acc = GaussRational::zero();
            for i in 1..=k.min(hat.len() - 1) {
                acc += &(&hat[i] * &a[k - i]);
            }
            a.push(-(&acc * &inv0));
        }
        let mut y = UniPolyQ::zero();
        let mut dq = q.clone();
        for ak in &a {
            y = y.add(&dq.scale(ak));
            dq = dq.derivative();
        }
        for _ in 0..j {
            y = antiderivative(&y);
        }
        out.add_term(w.clone(), y);
    }
    out
}

fn cascade_grid(f: &SliceFactorization, u: &GridProfile) -> Result<GridProfile, ResolventError> {
    let inv = f.c.inv();
    let mut s = u.map(|_, z| z * inv);
    for (k, (r, &axis)) in f.roots.iter().zip(&f.on_axis).enumerate() {
        let lam = Lambda::numeric(*r, axis);
        s = if k == 0 {
            resolvent_grid(&lam, &s)?
        } else {
            resolvent_grid_stage(&lam, &s)?
        };
    }
    Ok(s)
}

/// `Σ a_k D^k S` for the floating symbol `a`.
fn apply_symbol_grid(a: &UniPolyC, s: &GridProfile) -> GridProfile {
    let mut acc = s.map(|_, _| Complex64::new(0.0, 0.0));
    let mut d = s.clone();
    for (k, &c) in a.coeffs().iter().enumerate() {
        if k > 0 {
            d = d.derivative();
        }
        acc = acc.zip(&d, |x, y| x + c * y);
    }
    acc
}

fn exact_symbol(p: &MultiPoly, lattice: &PeriodLattice, xi: &FreqVector) -> Result<UniPolyQ, SolverError> {
    if lattice.convention() != Convention::IntegerLattice {
        return Err(SolverError::ExactPathUnavailable(xi.clone()));
    }
    let freq = lattice.frequency(xi).map_err(SpectrumError::from)?;
    specialize_frequency(p, &freq, true)?
        .exact_tau
        .ok_or_else(|| SolverError::ExactPathUnavailable(xi.clone()))
}

/// Residual of `P(d/dt, iθ)S = T` at one mode: the largest coefficient of
/// the exact mismatch on exponential polynomials, the relative `ℓ²` norm
/// on grids.
pub fn verify_residual(
    p: &MultiPoly,
    lattice: &PeriodLattice,
    xi: &FreqVector,
    s: &TimeProfile,
    t: &TimeProfile,
) -> Result<f64, SolverError> {
    match (s, t) {
        (TimeProfile::ExpPoly(s), TimeProfile::ExpPoly(t)) => {
            let r = exact_symbol(p, lattice, xi)?;
            Ok(s.apply_poly(&r).sub(t).max_coefficient())
        }
        (TimeProfile::Grid(s), TimeProfile::Grid(t)) => {
            if !s.same_grid(t) {
                return Err(SolverError::RepresentationMismatch);
            }
            let freq = lattice.frequency(xi).map_err(SpectrumError::from)?;
            let a = specialize_frequency(p, &freq, false)?.float;
            let r = apply_symbol_grid(&a, s).zip(t, |x, y| x - y);
            Ok(r.norm2() / t.norm2())
        }
        _ => Err(SolverError::RepresentationMismatch),
    }
}

fn solve_mode(
    p: &MultiPoly,
    lattice: &PeriodLattice,
    cfg: &RootSolverConfig,
    xi: &FreqVector,
    u: &TimeProfile,
) -> Result<ModeSolution, SolverError> {
    let f = match slice_factorize(p, xi, lattice, cfg) {
        Ok(f) => f,
        Err(SpectrumError::IdenticallyZeroSlice(xi)) => return Err(SolverError::Degenerate(xi)),
        Err(e) => return Err(e.into()),
    };
    let tag = |source| SolverError::Mode { xi: xi.clone(), source };
    let (profile, route) = match u {
        TimeProfile::ExpPoly(e) => {
            let exact = exact_symbol(p, lattice, xi)?;
            match exact_roots(&f) {
                Some(roots) => {
                    let c = exact.leading().expect("nonzero symbol");
                    (TimeProfile::ExpPoly(cascade_exppoly(c, &roots, e).map_err(tag)?), Route::Cascade)
                }
                None => (TimeProfile::ExpPoly(invert_symbol(&exact, e)), Route::SymbolInversion),
            }
        }
        TimeProfile::Grid(g) => (TimeProfile::Grid(cascade_grid(&f, g).map_err(tag)?), Route::Grid),
    };
    let residual = verify_residual(p, lattice, xi, &profile, u)?;
    Ok(ModeSolution {
        profile,
        residual,
        route,
        factorization: f,
    })
}

/// Solves every forced mode; modes are independent and run through `exec`.
pub fn solve_division(
    p: &MultiPoly,
    lattice: &PeriodLattice,
    forcing: &Forcing,
    cfg: &RootSolverConfig,
    exec: Exec,
) -> Result<SolutionField, SolverError> {
    forcing.check_grids()?;
    cfg.validate()?;
    let modes: Vec<(&FreqVector, &TimeProfile)> = forcing.modes.iter().collect();
    let solved = exec.map(&modes, |(xi, u)| solve_mode(p, lattice, cfg, xi, u));
    let mut out = SolutionField::default();
    for ((xi, _), s) in modes.into_iter().zip(solved) {
        out.modes.insert(xi.clone(), s?);
    }
    Ok(out)
}

/// `S(t, x) = Σ_ξ S_ξ(t) e^{i⟨θ(ξ), x⟩}` on a `t × x` grid.
pub fn synthesize_field(
    field: &SolutionField,
    lattice: &PeriodLattice,
    t_grid: &[f64],
    x_points: &[Vec<f64>],
) -> Result<Vec<Vec<Complex64>>, SolverError> {
    let phases: Vec<(Vec<f64>, &TimeProfile)> = field
        .modes
        .iter()
        .map(|(xi, m)| Ok((lattice.frequency(xi).map_err(SpectrumError::from)?.theta, &m.profile)))
        .collect::<Result<_, SolverError>>()?;
    Ok(t_grid
        .iter()
        .map(|&t| {
            let values: Vec<Complex64> = phases.iter().map(|(_, p)| p.eval(t)).collect();
            x_points
                .iter()
                .map(|x| {
                    phases
                        .iter()
                        .zip(&values)
                        .map(|((theta, _), v)| {
                            let arg: f64 = theta.iter().zip(x).map(|(a, b)| a * b).sum();
                            v * Complex64::from_polar(1.0, arg)
                        })
                        .sum()
                })
                .collect()
        })
        .collect())
}

/// Largest relative change of the field under a shift by any period
/// vector, over the given sample points.
pub fn periodicity_defect(
    field: &SolutionField,
    lattice: &PeriodLattice,
    t_grid: &[f64],
    x_points: &[Vec<f64>],
) -> Result<f64, SolverError> {
    let base = synthesize_field(field, lattice, t_grid, x_points)?;
    let scale = base.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    for a in lattice.period_vectors() {
        let shifted_x: Vec<Vec<f64>> = x_points.iter().map(|x| x.iter().zip(&a).map(|(u, v)| u + v).collect()).collect();
        let shifted = synthesize_field(field, lattice, t_grid, &shifted_x)?;
        for (r0, r1) in base.iter().zip(&shifted) {
            for (z0, z1) in r0.iter().zip(r1) {
                worst = worst.max((z0 - z1).norm() / scale);
            }
        }
    }
    Ok(worst)
}
