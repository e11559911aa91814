use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AxisMode, RootSolverConfig, SpectrumError};
use crate::symbolic::{
    real_poly_gcd, real_roots_with_multiplicity, square_free_decomposition, SturmChain, UniPolyC, UniPolyQ,
};

/// Isolating-interval width used when locating exact axis roots.
const ISOLATION_BITS: u32 = 40;

/// Exact image of a slice symbol whose roots are the numeric roots divided
/// by `root_scale` (1 on the integer lattice, `2π` after rescaling).
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSymbol {
    pub poly: UniPolyQ,
    pub root_scale: f64,
}

/// Flags which of `roots` lie on the imaginary axis.
///
/// Exact mode substitutes `τ = i·s`, splits the exact polynomial into real
/// and imaginary parts `u(s) + i·v(s)` and takes `g = gcd(u, v)`: the real
/// roots of `g`, with multiplicity, are exactly the axis roots. When the
/// count does not settle the slice, the numeric roots with smallest `|Re|`
/// are taken if clearly separated; otherwise each isolated axis root is
/// matched to the nearest unflagged numeric root.
pub fn classify_axis(
    _p: &UniPolyC,
    exact: Option<&ExactSymbol>,
    roots: &[Complex64],
    cfg: &RootSolverConfig,
) -> Result<Vec<bool>, SpectrumError> {
    match cfg.axis_mode {
        AxisMode::Numeric => Ok(roots
            .iter()
            .map(|r| r.re.abs() <= cfg.axis_tolerance)
            .collect()),
        AxisMode::Exact => {
            let exact = exact.ok_or(SpectrumError::ExactUnavailable)?;
            classify_exact(exact, roots)
        }
    }
}

fn classify_exact(exact: &ExactSymbol, roots: &[Complex64]) -> Result<Vec<bool>, SpectrumError> {
    let mut flags = vec![false; roots.len()];
    if let [c0, c1] = exact.poly.coeffs() {
        // single root −c0/c1 lies on the axis iff Re(c0·conj(c1)) = 0
        let re = &c0.re * &c1.re + &c0.im * &c1.im;
        return Ok(vec![re.is_zero(); roots.len()]);
    }
    let (u, v) = exact.poly.split_on_imaginary_axis();
    let g = real_poly_gcd(&u, &v)?;
    if g.degree().unwrap_or(0) == 0 {
        return Ok(flags);
    }
    let mut axis_count = 0;
    for (factor, multiplicity) in square_free_decomposition(&g)? {
        axis_count += SturmChain::new(&factor)?.count_all() * multiplicity;
    }
    if axis_count == 0 {
        return Ok(flags);
    }
    if axis_count == roots.len() {
        return Ok(vec![true; roots.len()]);
    }
    // the exact count picks the axis_count smallest |Re| when they are well
    // separated from the rest
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| roots[a].re.abs().total_cmp(&roots[b].re.abs()));
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let inside = roots[order[axis_count - 1]].re.abs();
    let outside = roots[order[axis_count]].re.abs();
    if inside <= 1e-6 * scale && outside > 1e3 * inside.max(1e-12 * scale) {
        for &k in &order[..axis_count] {
            flags[k] = true;
        }
        return Ok(flags);
    }
    let width = BigRational::new(BigInt::one(), BigInt::one() << ISOLATION_BITS);
    for root in real_roots_with_multiplicity(&g, &width)? {
        let target = Complex64::new(0.0, root.midpoint() * exact.root_scale);
        for _ in 0..root.multiplicity {
            let nearest = roots
                .iter()
                .enumerate()
                .filter(|(k, _)| !flags[*k])
                .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()));
            if let Some((k, _)) = nearest {
                flags[k] = true;
            }
        }
    }
    Ok(flags)
}
