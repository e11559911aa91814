use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;

use perdiv::lattice::{dual_matrix, iter_ball, shell_max, shell_maxima, FreqVector, LatticeError, PeriodLattice};

fn brute_force_ball(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-r; n];
    loop {
        if cur.iter().map(|x| x.abs()).sum::<i64>() <= r {
            out.push(cur.clone());
        }
        let mut j = n;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < r {
                cur[j] += 1;
                for c in cur.iter_mut().skip(j + 1) {
                    *c = -r;
                }
                break;
            }
        }
    }
}

/// Closed form for the number of points with `‖ξ‖₁ ≤ R` in `Zⁿ`:
/// `Σ_k 2^k C(n,k) C(R,k)`.
fn ball_count(n: u64, r: u64) -> u64 {
    let binom = |a: u64, b: u64| -> u64 {
        if b > a {
            return 0;
        }
        (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
    };
    (0..=n).map(|k| (1u64 << k) * binom(n, k) * binom(r, k)).sum()
}

#[test]
fn ball_matches_brute_force() {
    for n in 1..=3 {
        for r in [0usize, 1, 2, 5, 11, 20] {
            let got: Vec<Vec<i64>> = iter_ball(n, r)
                .map(|xi| xi.0.iter().map(|b| i64::try_from(b).unwrap()).collect())
                .collect();
            assert_eq!(got, brute_force_ball(n, r as i64), "n={n} r={r}");
            assert_eq!(got.len() as u64, ball_count(n as u64, r as u64));
        }
    }
}

#[test]
fn ball_is_symmetric() {
    let pts: Vec<FreqVector> = iter_ball(3, 7).collect();
    for p in &pts {
        assert!(pts.binary_search(&p.neg()).is_ok());
    }
}

#[test]
fn missing_shell_reported() {
    let mut v = BTreeMap::new();
    v.insert(FreqVector::from_i64(&[0, 0]), 1.0);
    v.insert(FreqVector::from_i64(&[2, 0]), 3.0);
    assert_eq!(shell_maxima(&v, 2), vec![Some(1.0), None, Some(3.0)]);
    assert_eq!(shell_max(&v, 2), Err(LatticeError::MissingShell(1)));
}

#[test]
fn general_lattice_frequencies() {
    // A with columns (2, 0) and (1, 1): B = 2π (A⁻¹)ᵀ
    let a = vec![
        vec![BigRational::from_integer(2.into()), BigRational::from_integer(1.into())],
        vec![BigRational::from_integer(0.into()), BigRational::from_integer(1.into())],
    ];
    let lat = dual_matrix(a).unwrap();
    let periods = lat.period_vectors();
    for xi in iter_ball(2, 4) {
        let theta = lat.frequency(&xi).unwrap().theta;
        for a in &periods {
            let phase: f64 = theta.iter().zip(a).map(|(t, x)| t * x).sum();
            let k = (phase / (2.0 * std::f64::consts::PI)).round();
            assert!((phase - 2.0 * std::f64::consts::PI * k).abs() < 1e-12, "{xi} {phase}");
        }
    }
    assert_eq!(PeriodLattice::integer(2).frequency(&FreqVector::from_i64(&[3, -1])).unwrap().theta, vec![3.0, -1.0]);
}

proptest! {
    #[test]
    fn shell_maxima_are_shell_maxima(vals in prop::collection::vec(0.1f64..10.0, 25)) {
        let values: BTreeMap<FreqVector, f64> = iter_ball(2, 3).zip(vals).collect();
        let m = shell_maxima(&values, 3);
        for (xi, v) in &values {
            let r = xi.norm1_f64() as usize;
            prop_assert!(m[r].unwrap() >= *v);
        }
    }

    #[test]
    fn frequency_json_round_trip(a in any::<i64>(), b in any::<i64>()) {
        let xi = FreqVector::from_i64(&[a, b]);
        let s = serde_json::to_string(&xi).unwrap();
        prop_assert_eq!(s, format!("[{a},{b}]"));
    }
}
