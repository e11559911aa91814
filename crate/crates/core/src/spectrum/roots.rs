//! Aberth–Ehrlich simultaneous iteration for all complex roots.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{RootSolverConfig, SpectrumError};
use crate::symbolic::UniPolyC;

const RESTART_EVERY: usize = 100;
const PERTURB_SEED: u64 = 0x005e_ed0f_a6e7;

/// All roots of `p` (with multiplicity), sorted by `(Re, Im)`.
pub fn find_roots(p: &UniPolyC, cfg: &RootSolverConfig) -> Result<Vec<Complex64>, SpectrumError> {
    cfg.validate()?;
    let deg = match p.degree() {
        None | Some(0) => return Err(SpectrumError::DegreeZero),
        Some(d) => d,
    };
    let lead = p.leading().expect("nonzero");
    let monic: Vec<Complex64> = p.coeffs().iter().map(|c| c / lead).collect();
    let mut roots = if deg == 1 {
        vec![-monic[0]]
    } else {
        aberth(&monic, cfg)?
    };
    sort_roots(&mut roots);
    Ok(roots)
}

pub(crate) fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(cmp_root);
}

fn cmp_root(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn eval_with_bound(monic: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    // Horner for p, p' and the rounding scale Σ|c_k||z|^k
    let az = z.norm();
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for &c in monic.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        scale = scale * az + c.norm();
    }
    (p, dp, scale)
}

fn initial_guesses(monic: &[Complex64]) -> Vec<Complex64> {
    let deg = monic.len() - 1;
    // Fujiwara-style radius: max_k |c_{deg-k}|^{1/k}
    let radius = (1..=deg)
        .map(|k| monic[deg - k].norm().powf(1.0 / k as f64))
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE.sqrt());
    let centre = -monic[deg - 1] / deg as f64;
    (0..deg)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / deg as f64 + 0.4;
            centre + Complex64::from_polar(radius, angle)
        })
        .collect()
}

fn aberth(monic: &[Complex64], cfg: &RootSolverConfig) -> Result<Vec<Complex64>, SpectrumError> {
    let deg = monic.len() - 1;
    let mut z = initial_guesses(monic);
    let mut rng = StdRng::seed_from_u64(PERTURB_SEED);
    let mut done = vec![false; deg];
    for iter in 0..cfg.max_iterations {
        if iter > 0 && iter % RESTART_EVERY == 0 {
            // stagnation: jitter the unconverged estimates and carry on
            for i in (0..deg).filter(|&i| !done[i]) {
                let jitter = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let scale = 1e-3 * (1.0 + z[i].norm());
                z[i] += jitter * scale;
            }
        }
        for i in 0..deg {
            let (p, dp, scale) = eval_with_bound(monic, z[i]);
            if p.norm() <= 8.0 * f64::EPSILON * scale {
                done[i] = true;
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            done[i] = w.norm() <= cfg.tolerance * (1.0 + z[i].norm());
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    let residual = z
        .iter()
        .map(|&zi| {
            let (p, _, scale) = eval_with_bound(monic, zi);
            p.norm() / scale.max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    Err(SpectrumError::NonConvergence {
        iterations: cfg.max_iterations,
        residual,
    })
}

/// Groups roots lying within `10·tolerance·(1 + |λ|)` of each other and
/// returns `(representative, multiplicity)` pairs in sorted order.
pub fn cluster_roots(roots: &[Complex64], tolerance: f64) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize, Complex64)> = Vec::new();
    for &r in roots {
        let radius = 10.0 * tolerance * (1.0 + r.norm());
        match out.iter_mut().find(|(c, _, _)| (c - r).norm() <= radius) {
            Some((c, m, sum)) => {
                *m += 1;
                *sum += r;
                *c = *sum / *m as f64;
            }
            None => out.push((r, 1, r)),
        }
    }
    out.into_iter().map(|(c, m, _)| (c, m)).collect()
}
