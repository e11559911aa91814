use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use perdiv::lattice::{iter_ball, FreqVector, PeriodLattice};
use perdiv::parallel::Exec;
use perdiv::resolvent::{apply_factor_exppoly, chi_minus, chi_plus, ExpPoly, GridProfile};
use perdiv::solver::{
    cascade_exppoly, periodicity_defect, solve_division, Forcing, Route, SolutionField, TimeProfile,
    PERIODICITY_TOLERANCE,
};
use perdiv::spectrum::RootSolverConfig;
use perdiv::symbolic::{parse_operator, GaussRational, UniPolyQ};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn g(re: i64, im: i64) -> GaussRational {
    GaussRational::new(q(re, 1), q(im, 1))
}

/// `e^{it} + t + (1+i) t² e^{−2it}`
fn mixed_forcing() -> ExpPoly {
    let mut e = ExpPoly::exp_i(1);
    e.add_term(q(0, 1), UniPolyQ::new(vec![g(0, 0), g(1, 0)]));
    e.add_term(q(-2, 1), UniPolyQ::new(vec![g(0, 0), g(0, 0), g(1, 1)]));
    e
}

fn solve(op: &str, n: usize, forcing: &Forcing) -> SolutionField {
    let p = parse_operator(op, n).unwrap();
    solve_division(&p, &PeriodLattice::integer(n), forcing, &RootSolverConfig::default(), Exec::with_jobs(0)).unwrap()
}

#[test]
fn exact_residual_vanishes_on_operator_suite() {
    let ops = [
        "Dt - Dx1^2 - Dx2^2",
        "Dt^2 - Dx1^2 - Dx2^2 + 2*Dt*Dx1",
        "Dt - i*Dx1 - i*(49/64)*Dx2",
        "Dt^3 + Dx1*Dt^2 - Dx2^2*Dt + (1/2)*Dx1 + 3",
    ];
    let mut forcing = Forcing::default();
    for xi in iter_ball(2, 8) {
        forcing.modes.insert(xi, TimeProfile::ExpPoly(mixed_forcing()));
    }
    for op in ops {
        let s = solve(op, 2, &forcing);
        assert_eq!(s.modes.len(), forcing.modes.len());
        assert_eq!(s.max_residual(), 0.0, "{op}");
    }
}

#[test]
fn heat_matches_closed_form() {
    // (d/dt + |ξ|²) S = e^{it}  ⇒  S = e^{it} / (i + |ξ|²)
    let mut forcing = Forcing::default();
    for xi in iter_ball(2, 5) {
        forcing.modes.insert(xi, TimeProfile::ExpPoly(ExpPoly::exp_i(1)));
    }
    let s = solve("Dt - Dx1^2 - Dx2^2", 2, &forcing);
    for (xi, m) in &s.modes {
        assert_eq!(m.route, Route::Cascade);
        let r2: f64 = xi.to_f64().iter().map(|x| x * x).sum();
        for t in [-2.0, 0.3, 4.0] {
            let want = Complex64::from_polar(1.0, t) / Complex64::new(r2, 1.0);
            assert!((m.profile.eval(t) - want).norm() <= 1e-14, "{xi} t={t}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factor_order_is_irrelevant(
        roots in prop::collection::vec((-3i64..=3, -3i64..=3), 1..5),
        w in -2i64..=2,
        shift in 0usize..4,
    ) {
        let roots: Vec<GaussRational> = roots.into_iter().map(|(a, b)| GaussRational::new(q(a, 2), q(b, 1))).collect();
        let mut rotated = roots.clone();
        rotated.rotate_left(shift % roots.len());
        rotated.reverse();
        let mut u = ExpPoly::exp_i(w);
        u.add_term(q(1, 2), UniPolyQ::new(vec![g(2, -1)]));
        let c = g(3, 1);
        let a = cascade_exppoly(&c, &roots, &u).unwrap();
        let b = cascade_exppoly(&c, &rotated, &u).unwrap();
        // the two particular solutions differ by a kernel element of Π(d/dt − λ)
        let diff = roots.iter().fold(a.sub(&b), |acc, lam| apply_factor_exppoly(lam, &acc));
        prop_assert!(diff.is_zero());
        let back = roots.iter().fold(a.scale(&c), |acc, lam| apply_factor_exppoly(lam, &acc));
        prop_assert_eq!(back, u);
    }

    #[test]
    fn division_is_linear(a in -4i64..=4, b in -4i64..=4, x1 in -4i64..=4, x2 in -4i64..=4) {
        let xi = FreqVector::from_i64(&[x1, x2]);
        let op = "Dt^2 - Dx1^2 - Dx2^2 + 2*Dt*Dx1";
        let u = ExpPoly::exp_i(2);
        let v = mixed_forcing();
        let mix = u.scale(&g(a, 0)).add(&v.scale(&g(0, b)));
        let sol = |e: &ExpPoly| match &solve(op, 2, &Forcing::single(xi.clone(), TimeProfile::ExpPoly(e.clone()))).modes[&xi].profile {
            TimeProfile::ExpPoly(s) => s.clone(),
            TimeProfile::Grid(_) => unreachable!(),
        };
        prop_assert_eq!(sol(&mix), sol(&u).scale(&g(a, 0)).add(&sol(&v).scale(&g(0, b))));
    }
}

#[test]
fn grid_agrees_with_exact_on_heat() {
    // windowed e^{it}; the start-up transient decays like e^{−|ξ|²(t+15)}
    let window = |t: f64| chi_plus(t + 15.0) * chi_minus(t - 15.0);
    let u = GridProfile::from_fn(20.0, 1e-3, |t| window(t) * Complex64::from_polar(1.0, t)).unwrap();
    let mut grid = Forcing::default();
    let mut exact = Forcing::default();
    for xi in iter_ball(2, 3).filter(|xi| !xi.is_zero()) {
        grid.modes.insert(xi.clone(), TimeProfile::Grid(u.clone()));
        exact.modes.insert(xi, TimeProfile::ExpPoly(ExpPoly::exp_i(1)));
    }
    let op = "Dt - Dx1^2 - Dx2^2";
    let (sg, se) = (solve(op, 2, &grid), solve(op, 2, &exact));
    for (xi, m) in &sg.modes {
        assert_eq!(m.route, Route::Grid);
        let e = &se.modes[xi].profile;
        for k in 0..=100 {
            let t = -5.0 + 0.1 * k as f64;
            let (a, b) = (m.profile.eval(t), e.eval(t));
            assert!((a - b).norm() <= 1e-3 * b.norm().max(1e-3), "{xi} t={t}: {a} vs {b}");
        }
    }
}

#[test]
fn synthesized_field_is_periodic() {
    let mut forcing = Forcing::default();
    for (xi, w) in [([1i64, 0], 1i64), ([-1, 0], -1), ([0, 2], 3), ([3, -1], 0)] {
        forcing.modes.insert(FreqVector::from_i64(&xi), TimeProfile::ExpPoly(ExpPoly::exp_i(w)));
    }
    let s = solve("Dt^2 - Dx1^2 - Dx2^2 + 2*Dt*Dx1", 2, &forcing);
    let lat = PeriodLattice::integer(2);
    let ts: Vec<f64> = (0..11).map(|k| -5.0 + k as f64).collect();
    let xs: Vec<Vec<f64>> = (0..16).map(|k| vec![0.4 * k as f64, 0.25 * (k * k) as f64]).collect();
    assert!(periodicity_defect(&s, &lat, &ts, &xs).unwrap() <= PERIODICITY_TOLERANCE);
    assert!(s.modes.values().all(|m| matches!(&m.profile, TimeProfile::ExpPoly(e) if !e.is_zero())));
}
