//! Finite-radius tests of polynomial growth for sequences on `Zⁿ`, and the
//! two-condition surjectivity verdict built on them.
//!
//! A sequence is polynomially bounded when `v(ξ) ≤ k(1 + ‖ξ‖₁)^k` for some
//! `k`. At finite radius this is probed by fitting `log M_r` against
//! `log(1 + r)` for the shell maxima `M_r` in two windows, `[R/4, R/2]`
//! and `[R/2, R]`. A jump of more than 1 between the two fitted exponents
//! is reported as suspected super-polynomial growth. Sparse probe points
//! outside the ball are compared against the envelope of the inner window.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice::{iter_ball, shell_maxima, FreqVector, PeriodLattice};
use crate::parallel::Exec;
use crate::spectrum::{slice_factorize, AxisMethod, RootSolverConfig, SliceFactorization, SpectrumError};
use crate::symbolic::MultiPoly;

pub const MIN_RADIUS: usize = 8;
pub const DIVERGENCE_THRESHOLD: f64 = 1.0;
pub const MIN_WINDOW_SHELLS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrowthError {
    #[error("radius {0} below the minimum of {MIN_RADIUS}")]
    InsufficientRadius(usize),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthVerdict {
    PolynomialBounded,
    SuperpolynomialSuspected,
    Inconclusive,
}

/// A probe point compared against the inner-window envelope.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeOutcome {
    pub xi: FreqVector,
    pub value: f64,
    /// `log(C·(1 + ‖ξ‖)^{k+1})` with `k = max(innerExponent, 0)`.
    pub log_bound: f64,
    pub violates: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub radius: usize,
    pub shell_maxima: Vec<Option<f64>>,
    pub fitted_exponent: Option<f64>,
    pub inner_exponent: Option<f64>,
    /// `max_r M_r / (1 + r)^{max(k_inner, 0)}` over the inner window.
    pub inner_envelope: Option<f64>,
    /// Shells with no finite value (all slices degenerate).
    pub excluded_shells: Vec<usize>,
    pub probes: Vec<ProbeOutcome>,
    pub verdict: GrowthVerdict,
}

fn window_fit(maxima: &[Option<f64>], lo: usize, hi: usize) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = (lo..=hi)
        .filter_map(|r| maxima.get(r).copied().flatten().map(|m| ((1.0 + r as f64).ln(), m.ln())))
        .collect();
    if pts.len() < MIN_WINDOW_SHELLS {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Fits growth exponents from per-shell maxima `M_0..=M_R`.
pub fn fit_shell_maxima(maxima: Vec<Option<f64>>) -> Result<GrowthReport, GrowthError> {
    let radius = maxima.len().saturating_sub(1);
    if radius < MIN_RADIUS {
        return Err(GrowthError::InsufficientRadius(radius));
    }
    let maxima: Vec<Option<f64>> = maxima
        .into_iter()
        .map(|m| m.filter(|v| v.is_finite() && *v > 0.0))
        .collect();
    let excluded_shells = (0..=radius).filter(|&r| maxima[r].is_none()).collect();
    let outer = window_fit(&maxima, radius / 2, radius);
    let inner = window_fit(&maxima, radius / 4, radius / 2);
    let inner_envelope = inner.map(|(k, _)| {
        let k = k.max(0.0);
        (radius / 4..=radius / 2)
            .filter_map(|r| maxima[r].map(|m| m / (1.0 + r as f64).powf(k)))
            .fold(0.0, f64::max)
    });
    let verdict = match (outer, inner) {
        (Some((ko, _)), Some((ki, _))) if ko - ki > DIVERGENCE_THRESHOLD => {
            GrowthVerdict::SuperpolynomialSuspected
        }
        (Some(_), Some(_)) => GrowthVerdict::PolynomialBounded,
        _ => GrowthVerdict::Inconclusive,
    };
    Ok(GrowthReport {
        radius,
        shell_maxima: maxima,
        fitted_exponent: outer.map(|f| f.0),
        inner_exponent: inner.map(|f| f.0),
        inner_envelope,
        excluded_shells,
        probes: Vec::new(),
        verdict,
    })
}

/// Growth report for values given on the full ball of radius `R`.
pub fn fit_growth(values: &BTreeMap<FreqVector, f64>, radius: usize) -> Result<GrowthReport, GrowthError> {
    if radius < MIN_RADIUS {
        return Err(GrowthError::InsufficientRadius(radius));
    }
    fit_shell_maxima(shell_maxima(values, radius))
}

impl GrowthReport {
    /// Records probe values; any probe above `C·(1 + ‖ξ‖)^{k+1}` tips the
    /// verdict to `SuperpolynomialSuspected`.
    pub fn apply_probes(&mut self, probes: &[(FreqVector, f64)]) {
        let (Some(k), Some(c)) = (self.inner_exponent, self.inner_envelope) else {
            return;
        };
        let k = k.max(0.0);
        for (xi, value) in probes {
            let log_bound = c.ln() + (k + 1.0) * (1.0 + xi.norm1_f64()).ln();
            let violates = value.ln() > log_bound;
            if violates {
                self.verdict = GrowthVerdict::SuperpolynomialSuspected;
            }
            self.probes.push(ProbeOutcome {
                xi: xi.clone(),
                value: *value,
                log_bound,
                violates,
            });
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ConditionsHold,
    /// Which of the two conditions failed: `(first, second)`.
    ConditionFails { first: bool, second: bool },
    NecessaryConditionFails,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ConditionsHold => f.write_str("ConditionsHold"),
            Verdict::ConditionFails { first: true, second: true } => f.write_str("ConditionFails(1,2)"),
            Verdict::ConditionFails { first: true, .. } => f.write_str("ConditionFails(1)"),
            Verdict::ConditionFails { .. } => f.write_str("ConditionFails(2)"),
            Verdict::NecessaryConditionFails => f.write_str("NecessaryConditionFails"),
            Verdict::Inconclusive => f.write_str("Inconclusive"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxisMethodCounts {
    pub exact: usize,
    pub numeric: usize,
    pub numeric_fallback: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRecord {
    pub xi: FreqVector,
    pub c_inv: Option<f64>,
    pub d_inv: Option<f64>,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionsReport {
    pub radius: usize,
    pub label: String,
    pub c_report: GrowthReport,
    pub d_report: GrowthReport,
    pub degenerate_slices: Vec<FreqVector>,
    pub probes: Vec<ProbeRecord>,
    pub axis_methods: AxisMethodCounts,
    pub verdict: Verdict,
}

fn combine(c: GrowthVerdict, d: GrowthVerdict, degenerate: bool) -> Verdict {
    use GrowthVerdict::*;
    if degenerate {
        return Verdict::NecessaryConditionFails;
    }
    match (c, d) {
        (PolynomialBounded, PolynomialBounded) => Verdict::ConditionsHold,
        (SuperpolynomialSuspected, _) | (_, SuperpolynomialSuspected) => Verdict::ConditionFails {
            first: c == SuperpolynomialSuspected,
            second: d == SuperpolynomialSuspected,
        },
        _ => Verdict::Inconclusive,
    }
}

type SliceResult = Result<SliceFactorization, SpectrumError>;

fn collect(results: Vec<SliceResult>, degenerate: &mut Vec<FreqVector>, counts: &mut AxisMethodCounts) -> Result<Vec<Option<SliceFactorization>>, GrowthError> {
    let mut out = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(s) => {
                match s.axis_method {
                    AxisMethod::Exact => counts.exact += 1,
                    AxisMethod::Numeric => counts.numeric += 1,
                    AxisMethod::NumericFallback => counts.numeric_fallback += 1,
                }
                out.push(Some(s));
            }
            Err(SpectrumError::IdenticallyZeroSlice(xi)) => {
                degenerate.push(xi);
                out.push(None);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

/// Factorizes every slice in the ball of radius `R` (plus the probes),
/// fits growth of `|c_ξ|⁻¹` and `d_ξ⁻¹`, and assembles the verdict.
pub fn check_conditions(
    p: &MultiPoly,
    lattice: &PeriodLattice,
    radius: usize,
    cfg: &RootSolverConfig,
    probes: &[FreqVector],
    exec: Exec,
) -> Result<ConditionsReport, GrowthError> {
    if radius < MIN_RADIUS {
        return Err(GrowthError::InsufficientRadius(radius));
    }
    cfg.validate()?;
    let ball: Vec<FreqVector> = iter_ball(lattice.dim(), radius).collect();
    let work = |xi: &FreqVector| slice_factorize(p, xi, lattice, cfg);
    let ball_results = exec.map(&ball, work);
    let probe_results = exec.map(probes, work);

    let mut degenerate = Vec::new();
    let mut counts = AxisMethodCounts::default();
    let ball_slices = collect(ball_results, &mut degenerate, &mut counts)?;
    let probe_slices = collect(probe_results, &mut degenerate, &mut counts)?;
    degenerate.sort();
    degenerate.dedup();

    let mut c_vals = BTreeMap::new();
    let mut d_vals = BTreeMap::new();
    for s in ball_slices.iter().flatten() {
        c_vals.insert(s.xi.clone(), 1.0 / s.c.norm());
        d_vals.insert(s.xi.clone(), 1.0 / s.d);
    }
    let mut c_report = fit_growth(&c_vals, radius)?;
    let mut d_report = fit_growth(&d_vals, radius)?;

    let records: Vec<ProbeRecord> = probes
        .iter()
        .zip(&probe_slices)
        .map(|(xi, s)| ProbeRecord {
            xi: xi.clone(),
            c_inv: s.as_ref().map(|s| 1.0 / s.c.norm()),
            d_inv: s.as_ref().map(|s| 1.0 / s.d),
            degenerate: s.is_none(),
        })
        .collect();
    let c_probe: Vec<_> = records.iter().filter_map(|r| r.c_inv.map(|v| (r.xi.clone(), v))).collect();
    let d_probe: Vec<_> = records.iter().filter_map(|r| r.d_inv.map(|v| (r.xi.clone(), v))).collect();
    c_report.apply_probes(&c_probe);
    d_report.apply_probes(&d_probe);

    let verdict = combine(c_report.verdict, d_report.verdict, !degenerate.is_empty());
    Ok(ConditionsReport {
        radius,
        label: format!("verdict at radius {radius}"),
        c_report,
        d_report,
        degenerate_slices: degenerate,
        probes: records,
        axis_methods: counts,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball_values(n: usize, radius: usize, f: impl Fn(f64) -> f64) -> BTreeMap<FreqVector, f64> {
        iter_ball(n, radius)
            .map(|xi| {
                let r = xi.norm1_f64();
                (xi, f(r))
            })
            .collect()
    }

    #[test]
    fn constant_sequence() {
        let rep = fit_growth(&ball_values(2, 32, |_| 1.0), 32).unwrap();
        assert!(rep.fitted_exponent.unwrap().abs() <= 0.05);
        assert_eq!(rep.verdict, GrowthVerdict::PolynomialBounded);
    }

    #[test]
    fn cubic_sequence() {
        let rep = fit_growth(&ball_values(2, 32, |r| (1.0 + r).powi(3)), 32).unwrap();
        let k = rep.fitted_exponent.unwrap();
        assert!((2.9..=3.1).contains(&k), "{k}");
        assert_eq!(rep.verdict, GrowthVerdict::PolynomialBounded);
    }

    #[test]
    fn exponential_sequence() {
        let rep = fit_growth(&ball_values(2, 32, f64::exp), 32).unwrap();
        assert_eq!(rep.verdict, GrowthVerdict::SuperpolynomialSuspected);
    }

    #[test]
    fn radius_guard() {
        assert_eq!(
            fit_growth(&ball_values(1, 4, |_| 1.0), 4),
            Err(GrowthError::InsufficientRadius(4))
        );
    }

    #[test]
    fn small_radius_is_inconclusive() {
        // R = 8: the inner window [2, 4] holds only three shells
        let rep = fit_growth(&ball_values(1, 8, |_| 1.0), 8).unwrap();
        assert_eq!(rep.verdict, GrowthVerdict::Inconclusive);
    }

    #[test]
    fn probe_tips_verdict() {
        let mut rep = fit_growth(&ball_values(2, 32, |r| 1.0 + r), 32).unwrap();
        assert_eq!(rep.verdict, GrowthVerdict::PolynomialBounded);
        rep.apply_probes(&[(FreqVector::from_i64(&[100, 0]), 50.0)]);
        assert_eq!(rep.verdict, GrowthVerdict::PolynomialBounded);
        rep.apply_probes(&[(FreqVector::from_i64(&[-1000, 1000]), 1e12)]);
        assert_eq!(rep.verdict, GrowthVerdict::SuperpolynomialSuspected);
        assert!(rep.probes[1].violates && !rep.probes[0].violates);
    }

    #[test]
    fn verdict_strings() {
        assert_eq!(Verdict::ConditionFails { first: false, second: true }.to_string(), "ConditionFails(2)");
        assert_eq!(
            combine(GrowthVerdict::PolynomialBounded, GrowthVerdict::PolynomialBounded, true),
            Verdict::NecessaryConditionFails
        );
    }
}
