//! Right inverses of a single factor `d/dt − λ` on two profile
//! representations: exact exponential polynomials and sampled grids.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::symbolic::{rational_to_f64, GaussRational, UniPolyQ};

pub const NEAR_RESONANCE: f64 = 1e-10;
pub const MAX_STEP: f64 = 0.1;
pub const BOUNDARY_MASS: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResolventError {
    #[error("λ = {lambda} resonates with frequency ω = {omega} but is not flagged as an axis root")]
    Resonance { lambda: Complex64, omega: f64 },
    #[error("exact path needs λ in Q(i)")]
    InexactLambda,
    #[error("grid step {0} above {MAX_STEP}")]
    GridTooCoarse(f64),
    #[error("boundary mass {0:e} of the profile exceeds {BOUNDARY_MASS:e} of its peak")]
    WindowTooSmall(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grids differ in window or step")]
    GridMismatch,
    #[error("pairing probe needs ε spanning at least two decades")]
    InsufficientRange,
}

/// The smooth step `σ(s) = f(s)/(f(s) + f(1−s))`, `f(s) = e^{−1/s}`.
fn smooth_step(s: f64) -> f64 {
    let f = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
    let a = f(s);
    let b = f(1.0 - s);
    a / (a + b)
}

/// Equal to 1 on `[0, ∞)`, 0 on `(−∞, −1]`.
pub fn chi_plus(t: f64) -> f64 {
    smooth_step(2.0 * t + 1.0)
}

pub fn chi_minus(t: f64) -> f64 {
    1.0 - chi_plus(t)
}

/// A root handed to the resolvent.
#[derive(Clone, Debug, PartialEq)]
pub struct Lambda {
    pub value: Complex64,
    /// Treat `Re λ` as exactly zero.
    pub axis_flag: bool,
    pub exact: Option<GaussRational>,
}

impl Lambda {
    pub fn numeric(value: Complex64, axis_flag: bool) -> Self {
        Self {
            value,
            axis_flag,
            exact: None,
        }
    }

    /// Exact `λ`; the axis flag is set exactly when `Re λ = 0`.
    pub fn exact(value: GaussRational) -> Self {
        Self {
            value: value.to_complex(),
            axis_flag: value.re.is_zero(),
            exact: Some(value),
        }
    }
}

/// `Σ q_ω(t) e^{iωt}` with exact `Q(i)` polynomial coefficients and
/// rational frequencies. Zero polynomials are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpPoly {
    terms: BTreeMap<BigRational, UniPolyQ>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(omega: BigRational, q: UniPolyQ) -> Self {
        let mut e = Self::zero();
        e.add_term(omega, q);
        e
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::term(BigRational::zero(), UniPolyQ::new(vec![c]))
    }

    /// `e^{iωt}` for integer `ω`.
    pub fn exp_i(omega: i64) -> Self {
        Self::term(BigRational::from_integer(omega.into()), UniPolyQ::one())
    }

    pub fn add_term(&mut self, omega: BigRational, q: UniPolyQ) {
        let sum = match self.terms.remove(&omega) {
            Some(old) => old.add(&q),
            None => q,
        };
        if !sum.is_zero() {
            self.terms.insert(omega, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &UniPolyQ)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (w, q) in &o.terms {
            out.add_term(w.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, o: &ExpPoly) -> ExpPoly {
        self.add(&o.scale(&GaussRational::from_int(-1)))
    }

    pub fn scale(&self, k: &GaussRational) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (w, q) in &self.terms {
            out.add_term(w.clone(), q.scale(k));
        }
        out
    }

    /// Largest polynomial degree over all terms.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(UniPolyQ::degree).max()
    }

    /// Applies `R(D)` given the coefficients of `R` as a polynomial in `D`.
    pub fn apply_poly(&self, r: &UniPolyQ) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (w, q) in &self.terms {
            // on q(t)e^{iωt}, D acts as (iω + d/dt)
            let shifted = shift_by_iomega(r, w);
            let mut acc = UniPolyQ::zero();
            let mut dq = q.clone();
            for c in shifted.coeffs() {
                if dq.is_zero() {
                    break;
                }
                acc = acc.add(&dq.scale(c));
                dq = dq.derivative();
            }
            out.add_term(w.clone(), acc);
        }
        out
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(w, q)| q.to_complex().eval(Complex64::new(t, 0.0)) * Complex64::new(0.0, rational_to_f64(w) * t).exp())
            .sum()
    }

    /// Largest modulus among the exact coefficients, as a float.
    pub fn max_coefficient(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|q| q.coeffs().iter().map(|c| c.to_complex().norm()))
            .fold(0.0, f64::max)
    }
}

/// Coefficients of `R(iω + s)` as a polynomial in `s`.
pub(crate) fn shift_by_iomega(r: &UniPolyQ, omega: &BigRational) -> UniPolyQ {
    let lin = UniPolyQ::new(vec![GaussRational::new(BigRational::zero(), omega.clone()), GaussRational::one()]);
    let mut out = UniPolyQ::zero();
    for c in r.coeffs().iter().rev() {
        out = out.mul(&lin).add(&UniPolyQ::new(vec![c.clone()]));
    }
    out
}

/// Antiderivative with zero constant term.
pub(crate) fn antiderivative(q: &UniPolyQ) -> UniPolyQ {
    let mut c = vec![GaussRational::zero()];
    for (k, a) in q.coeffs().iter().enumerate() {
        c.push(a.scale(&BigRational::new(1.into(), (k as i64 + 1).into())));
    }
    UniPolyQ::new(c)
}

/// The minimal particular solution `S` of `(d/dt − λ)S = U`.
///
/// Off resonance each term `q e^{iωt}` maps to `q̃ e^{iωt}` with
/// `q̃ = Σ_k (−1)^k q^{(k)} / μ^{k+1}`, `μ = iω − λ`. On resonance (axis
/// roots only) `q̃` is the antiderivative of `q`.
pub fn resolvent_exppoly(lambda: &Lambda, u: &ExpPoly) -> Result<ExpPoly, ResolventError> {
    let lam = lambda.exact.as_ref().ok_or(ResolventError::InexactLambda)?;
    let mut out = ExpPoly::zero();
    for (w, q) in u.terms() {
        let mu = &GaussRational::new(BigRational::zero(), w.clone()) - lam;
        if !lambda.axis_flag && mu.to_complex().norm() < NEAR_RESONANCE {
            return Err(ResolventError::Resonance {
                lambda: lambda.value,
                omega: rational_to_f64(w),
            });
        }
        let qt = match mu.inv() {
            None => antiderivative(q),
            Some(inv) => {
                let mut acc = UniPolyQ::zero();
                let mut dq = q.clone();
                let mut factor = inv.clone();
                while !dq.is_zero() {
                    acc = acc.add(&dq.scale(&factor));
                    dq = dq.derivative();
                    factor = -(&factor * &inv);
                }
                acc
            }
        };
        out.add_term(w.clone(), qt);
    }
    Ok(out)
}

/// `(d/dt − λ)S`, exactly.
pub fn apply_factor_exppoly(lambda: &GaussRational, s: &ExpPoly) -> ExpPoly {
    s.apply_poly(&UniPolyQ::new(vec![-lambda.clone(), GaussRational::one()]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    /// `e^{−t²}`
    Gaussian,
    /// `exp(1 − 1/(1 − (t/4)²))` on `|t| < 4`
    Bump,
    /// `e^{−t²} e^{3it}`
    ModulatedGaussian,
}

impl GridKind {
    pub fn eval(self, t: f64) -> Complex64 {
        match self {
            GridKind::Gaussian => Complex64::new((-t * t).exp(), 0.0),
            GridKind::Bump => {
                let s = t / 4.0;
                if s.abs() < 1.0 {
                    Complex64::new((1.0 - 1.0 / (1.0 - s * s)).exp(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            GridKind::ModulatedGaussian => Complex64::from_polar((-t * t).exp(), 3.0 * t),
        }
    }
}

/// Samples on `t_i = −T + i·h`, `i = 0..=2T/h`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridProfile {
    pub half_width: f64,
    pub h: f64,
    pub samples: Vec<Complex64>,
}

fn grid_len(half_width: f64, h: f64) -> Result<usize, ResolventError> {
    if !(h > 0.0 && half_width > 0.0 && h.is_finite() && half_width.is_finite()) {
        return Err(ResolventError::InvalidGrid(format!("T = {half_width}, h = {h}")));
    }
    let steps = 2.0 * half_width / h;
    let n = steps.round();
    if (steps - n).abs() > 1e-9 * steps.max(1.0) {
        return Err(ResolventError::InvalidGrid(format!("2T/h = {steps} is not an integer")));
    }
    Ok(n as usize + 1)
}

impl GridProfile {
    pub fn new(half_width: f64, h: f64, samples: Vec<Complex64>) -> Result<Self, ResolventError> {
        let n = grid_len(half_width, h)?;
        if samples.len() != n {
            return Err(ResolventError::InvalidGrid(format!("expected {n} samples, got {}", samples.len())));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(ResolventError::InvalidGrid("non-finite sample".into()));
        }
        Ok(Self { half_width, h, samples })
    }

    pub fn from_fn(half_width: f64, h: f64, f: impl Fn(f64) -> Complex64) -> Result<Self, ResolventError> {
        let n = grid_len(half_width, h)?;
        let samples = (0..n).map(|i| f(-half_width + i as f64 * h)).collect();
        Self::new(half_width, h, samples)
    }

    pub fn generate(kind: GridKind, half_width: f64, h: f64) -> Result<Self, ResolventError> {
        Self::from_fn(half_width, h, |t| kind.eval(t))
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.h
    }

    pub fn same_grid(&self, o: &GridProfile) -> bool {
        self.samples.len() == o.samples.len() && self.h == o.h && self.half_width == o.half_width
    }

    pub fn map(&self, f: impl Fn(usize, Complex64) -> Complex64) -> GridProfile {
        GridProfile {
            half_width: self.half_width,
            h: self.h,
            samples: self.samples.iter().enumerate().map(|(i, &z)| f(i, z)).collect(),
        }
    }

    pub fn zip(&self, o: &GridProfile, f: impl Fn(Complex64, Complex64) -> Complex64) -> GridProfile {
        self.map(|i, z| f(z, o.samples[i]))
    }

    pub fn norm2(&self) -> f64 {
        (self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.h).sqrt()
    }

    /// Linear interpolation; zero outside the window.
    pub fn eval(&self, t: f64) -> Complex64 {
        let x = (t + self.half_width) / self.h;
        let last = self.samples.len() - 1;
        if !(x >= 0.0 && x <= last as f64) {
            return Complex64::new(0.0, 0.0);
        }
        let i = (x.floor() as usize).min(last.saturating_sub(1));
        let f = x - i as f64;
        if last == 0 {
            return self.samples[0];
        }
        self.samples[i] * (1.0 - f) + self.samples[i + 1] * f
    }

    /// Fourth-order central differences, one-sided of the same order
    /// within two points of either edge.
    pub fn derivative(&self) -> GridProfile {
        let f = &self.samples;
        let n = f.len();
        let c = 1.0 / (12.0 * self.h);
        if n < 5 {
            return self.map(|_, _| Complex64::new(0.0, 0.0));
        }
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        for i in 2..n - 2 {
            d[i] = (-f[i + 2] + f[i + 1] * 8.0 - f[i - 1] * 8.0 + f[i - 2]) * c;
        }
        let fwd0 = |g: &dyn Fn(usize) -> Complex64| (g(0) * -25.0 + g(1) * 48.0 - g(2) * 36.0 + g(3) * 16.0 - g(4) * 3.0) * c;
        let fwd1 = |g: &dyn Fn(usize) -> Complex64| (g(0) * -3.0 - g(1) * 10.0 + g(2) * 18.0 - g(3) * 6.0 + g(4)) * c;
        d[0] = fwd0(&|k| f[k]);
        d[1] = fwd1(&|k| f[k]);
        d[n - 1] = -fwd0(&|k| f[n - 1 - k]);
        d[n - 2] = -fwd1(&|k| f[n - 1 - k]);
        GridProfile {
            half_width: self.half_width,
            h: self.h,
            samples: d,
        }
    }

    /// `|U|` at the window edges relative to its peak.
    pub fn boundary_mass(&self) -> f64 {
        let peak = self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let edge = self.samples[0].norm().max(self.samples[self.samples.len() - 1].norm());
        edge / peak
    }
}

/// `A(z) = ∫₀¹ e^{zu} du` and `B(z) = ∫₀¹ u e^{zu} du`.
fn phi_integrals(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() < 0.5 {
        let mut a = Complex64::new(0.0, 0.0);
        let mut b = Complex64::new(0.0, 0.0);
        let mut zk_over_fact = Complex64::new(1.0, 0.0);
        for k in 0..30 {
            a += zk_over_fact / (k as f64 + 1.0);
            b += zk_over_fact / (k as f64 + 2.0);
            zk_over_fact = zk_over_fact * z / (k as f64 + 1.0);
        }
        (a, b)
    } else {
        let ez = z.exp();
        ((ez - 1.0) / z, (ez * (z - 1.0) + 1.0) / (z * z))
    }
}

/// Causal convolution with `Y(t)e^{λt}`, starting from zero at the left edge.
fn forward(lambda: Complex64, u: &[Complex64], h: f64) -> Vec<Complex64> {
    let z = lambda * h;
    let ez = z.exp();
    let (a, b) = phi_integrals(z);
    let mut s = vec![Complex64::new(0.0, 0.0); u.len()];
    for i in 0..u.len().saturating_sub(1) {
        s[i + 1] = ez * s[i] + (u[i + 1] * a + (u[i] - u[i + 1]) * b) * h;
    }
    s
}

/// Anticausal convolution with `−Y(−t)e^{λt}`, zero at the right edge.
fn backward(lambda: Complex64, u: &[Complex64], h: f64) -> Vec<Complex64> {
    let z = -lambda * h;
    let ez = z.exp();
    let (a, b) = phi_integrals(z);
    let n = u.len();
    let mut s = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n.saturating_sub(1)).rev() {
        s[i] = ez * s[i + 1] - (u[i] * a + (u[i + 1] - u[i]) * b) * h;
    }
    s
}

/// The three-branch resolvent without window checks.
pub(crate) fn resolvent_grid_unchecked(lambda: &Lambda, u: &GridProfile) -> GridProfile {
    let h = u.h;
    let samples = if lambda.axis_flag {
        let lam = Complex64::new(0.0, lambda.value.im);
        let plus: Vec<Complex64> = u.samples.iter().enumerate().map(|(i, z)| z * chi_plus(u.time(i))).collect();
        let minus: Vec<Complex64> = u.samples.iter().zip(&plus).map(|(z, p)| z - p).collect();
        let f = forward(lam, &plus, h);
        let b = backward(lam, &minus, h);
        f.into_iter().zip(b).map(|(x, y)| x + y).collect()
    } else if lambda.value.re < 0.0 {
        forward(lambda.value, &u.samples, h)
    } else {
        backward(lambda.value, &u.samples, h)
    };
    GridProfile {
        half_width: u.half_width,
        h,
        samples,
    }
}

fn check_grid(u: &GridProfile) -> Result<(), ResolventError> {
    if u.h > MAX_STEP {
        return Err(ResolventError::GridTooCoarse(u.h));
    }
    let mass = u.boundary_mass();
    if mass > BOUNDARY_MASS {
        return Err(ResolventError::WindowTooSmall(mass));
    }
    Ok(())
}

/// Convolution with `E₊` (`Re λ < 0`), `E₋` (`Re λ > 0`) or, for axis
/// roots, `χ₊U ∗ E₊ + χ₋U ∗ E₋`, by an exponential-integrator recursion
/// exact for piecewise-linear input.
pub fn resolvent_grid(lambda: &Lambda, u: &GridProfile) -> Result<GridProfile, ResolventError> {
    check_grid(u)?;
    Ok(resolvent_grid_unchecked(lambda, u))
}

/// Same recursion, checking only the grid step; used on intermediate
/// stages of a cascade whose input no longer decays at the edges.
pub(crate) fn resolvent_grid_stage(lambda: &Lambda, u: &GridProfile) -> Result<GridProfile, ResolventError> {
    if u.h > MAX_STEP {
        return Err(ResolventError::GridTooCoarse(u.h));
    }
    Ok(resolvent_grid_unchecked(lambda, u))
}

/// `(D − λ)S` with `D` the fourth-order difference operator.
pub fn apply_factor_grid(lambda: Complex64, s: &GridProfile) -> GridProfile {
    s.derivative().zip(s, |d, v| d - lambda * v)
}

/// `‖(D − λ)S − U‖₂ / ‖U‖₂`.
pub fn grid_residual(lambda: Complex64, s: &GridProfile, u: &GridProfile) -> Result<f64, ResolventError> {
    if !s.same_grid(u) {
        return Err(ResolventError::GridMismatch);
    }
    let r = apply_factor_grid(lambda, s).zip(u, |a, b| a - b);
    Ok(r.norm2() / u.norm2())
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PairingProbe {
    /// `(ε, |⟨φ, R_{−ε}U⟩|)`
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Fits the slope of `log|⟨φ, R_λ U⟩|` against `log(1/ε)` for `λ = −ε`,
/// and compares it with `k + 1 + 0.3`.
pub fn pairing_bound_probe(
    eps: &[f64],
    u: &GridProfile,
    phi: &GridProfile,
    k: u32,
) -> Result<PairingProbe, ResolventError> {
    if !u.same_grid(phi) {
        return Err(ResolventError::GridMismatch);
    }
    let lo = eps.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eps.iter().copied().fold(0.0, f64::max);
    if eps.len() < 2 || !(lo > 0.0) || hi / lo < 100.0 * (1.0 - 1e-12) {
        return Err(ResolventError::InsufficientRange);
    }
    let points: Vec<(f64, f64)> = eps
        .iter()
        .map(|&e| {
            let s = resolvent_grid_unchecked(&Lambda::numeric(Complex64::new(-e, 0.0), false), u);
            let pairing: Complex64 = phi.samples.iter().zip(&s.samples).map(|(a, b)| a * b).sum::<Complex64>() * u.h;
            (e, pairing.norm())
        })
        .collect();
    let xs: Vec<f64> = points.iter().map(|p| (1.0 / p.0).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let bound = k as f64 + 1.3;
    Ok(PairingProbe {
        points,
        slope,
        bound,
        holds: slope <= bound,
    })
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `ω = 0` polynomial `Σ c_k t^k` from integer coefficients.
pub fn poly_term(coeffs: &[i64]) -> ExpPoly {
    ExpPoly::term(BigRational::zero(), UniPolyQ::from_ints(coeffs))
}

impl From<GaussRational> for ExpPoly {
    fn from(c: GaussRational) -> Self {
        ExpPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRational {
        GaussRational::new(rational(re, 1), rational(im, 1))
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi_plus(0.0), 1.0);
        assert_eq!(chi_plus(3.0), 1.0);
        assert_eq!(chi_plus(-1.0), 0.0);
        assert_eq!(chi_plus(-0.5) + chi_minus(-0.5), 1.0);
        assert!((chi_plus(-0.25) - 0.5).abs() < 1e-15);
        let mut prev = 0.0;
        for k in 0..=1000 {
            let v = chi_plus(-1.0 + k as f64 / 1000.0);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn exact_examples() {
        let one = ExpPoly::constant(g(1, 0));
        let s = resolvent_exppoly(&Lambda::exact(g(-1, 0)), &one).unwrap();
        assert_eq!(s, one);

        let s = resolvent_exppoly(&Lambda::exact(g(0, 0)), &one).unwrap();
        assert_eq!(s, poly_term(&[0, 1]));

        let eit = ExpPoly::exp_i(1);
        let s = resolvent_exppoly(&Lambda::exact(g(0, 1)), &eit).unwrap();
        assert_eq!(s, ExpPoly::term(rational(1, 1), UniPolyQ::from_ints(&[0, 1])));

        let s = resolvent_exppoly(&Lambda::exact(g(0, 2)), &eit).unwrap();
        assert_eq!(s, eit.scale(&g(0, 1)));
    }

    #[test]
    fn resonance_without_flag() {
        let lam = Lambda {
            value: Complex64::new(0.0, 1.0),
            axis_flag: false,
            exact: Some(g(0, 1)),
        };
        assert!(matches!(
            resolvent_exppoly(&lam, &ExpPoly::exp_i(1)),
            Err(ResolventError::Resonance { .. })
        ));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(apply_factor_exppoly(&g(0, 0), &poly_term(&[0, 1])), poly_term(&[1]));
        assert!(apply_factor_exppoly(&g(0, 1), &ExpPoly::exp_i(1)).is_zero());
    }

    #[test]
    fn grid_derivative_of_sine() {
        let s = GridProfile::from_fn(3.0, 1e-3, |t| Complex64::new(t.sin(), 0.0)).unwrap();
        let d = s.derivative();
        let err = d
            .samples
            .iter()
            .enumerate()
            .map(|(i, z)| (z - Complex64::new(s.time(i).cos(), 0.0)).norm())
            .fold(0.0, f64::max);
        assert!(err <= 1e-6, "{err}");
    }

    #[test]
    fn grid_branches() {
        let u = GridProfile::generate(GridKind::Gaussian, 20.0, 1e-3).unwrap();
        for (lam, axis) in [
            (Complex64::new(-1.0, 0.0), false),
            (Complex64::new(1.0, 0.0), false),
            (Complex64::new(0.0, 1.0), true),
        ] {
            let s = resolvent_grid(&Lambda::numeric(lam, axis), &u).unwrap();
            let r = grid_residual(lam, &s, &u).unwrap();
            assert!(r <= 1e-3, "{lam} {r}");
        }
    }

    #[test]
    fn grid_errors() {
        let u = GridProfile::generate(GridKind::Gaussian, 20.0, 0.2).unwrap();
        assert!(matches!(
            resolvent_grid(&Lambda::numeric(Complex64::new(-1.0, 0.0), false), &u),
            Err(ResolventError::GridTooCoarse(_))
        ));
        let u = GridProfile::generate(GridKind::Gaussian, 2.0, 0.01).unwrap();
        assert!(matches!(
            resolvent_grid(&Lambda::numeric(Complex64::new(-1.0, 0.0), false), &u),
            Err(ResolventError::WindowTooSmall(_))
        ));
        assert!(GridProfile::generate(GridKind::Gaussian, 1.0, 0.3).is_err());
    }

    #[test]
    fn pairing_probe_examples() {
        let u = GridProfile::generate(GridKind::Gaussian, 20.0, 1e-2).unwrap();
        let eps = [1e-1, 1e-2, 1e-3];
        let p = pairing_bound_probe(&eps, &u, &u, 0).unwrap();
        assert!(p.holds, "{}", p.slope);
        assert!(matches!(
            pairing_bound_probe(&[1e-2], &u, &u, 0),
            Err(ResolventError::InsufficientRange)
        ));
    }
}
