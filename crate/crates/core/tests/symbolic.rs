use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use perdiv::symbolic::{
    parse_operator, real_roots_with_multiplicity, square_free_decomposition, GaussRational, MultiPoly, SturmChain,
    UniPolyQ,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussRational::new(q(a, b), q(c, d)))
}

fn multipoly(n: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, n + 1), gauss()), 0..6)
        .prop_map(move |terms| MultiPoly::from_terms(n, terms).unwrap())
}

/// Product of `(x − r)` over the given integer roots, times `lead`.
fn from_roots(lead: i64, roots: &[i64]) -> UniPolyQ {
    roots.iter().fold(UniPolyQ::from_ints(&[lead]), |acc, &r| acc.mul(&UniPolyQ::from_ints(&[-r, 1])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(p in multipoly(2)) {
        let text = p.to_string();
        prop_assert_eq!(parse_operator(&text, 2).unwrap(), p);
    }

    #[test]
    fn ring_laws(a in multipoly(1), b in multipoly(1), c in multipoly(1)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn gcd_divides_both(
        common in prop::collection::vec(-4i64..=4, 0..3),
        ra in prop::collection::vec(-4i64..=4, 0..3),
        rb in prop::collection::vec(-4i64..=4, 0..3),
    ) {
        let c = from_roots(1, &common);
        let a = c.mul(&from_roots(2, &ra));
        let b = c.mul(&from_roots(-3, &rb));
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
        // the planted common factor divides the gcd
        prop_assert!(g.div_rem(&c).unwrap().1.is_zero());
    }

    #[test]
    fn sturm_matches_planted_roots(
        roots in prop::collection::vec(-8i64..=8, 1..6),
        a in -10i64..=10,
        w in 0i64..=12,
    ) {
        // oracle: the distinct planted roots, counted directly
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let p = from_roots(3, &roots).mul(&UniPolyQ::from_ints(&[1, 0, 1]));
        let chain = SturmChain::new(&p).unwrap();
        prop_assert_eq!(chain.count_all(), distinct.len());
        let b = a + w;
        let inside = distinct.iter().filter(|&&r| r > a && r <= b).count();
        prop_assert_eq!(chain.count_in(&q(a, 1), &q(b, 1)), inside);
    }

    #[test]
    fn multiplicities_match(roots in prop::collection::vec(-5i64..=5, 1..7)) {
        let p = from_roots(1, &roots);
        let width = q(1, 1 << 20);
        let found = real_roots_with_multiplicity(&p, &width).unwrap();
        let mut expect: Vec<(i64, usize)> = Vec::new();
        let mut sorted = roots.clone();
        sorted.sort();
        for r in sorted {
            match expect.last_mut() {
                Some((v, m)) if *v == r => *m += 1,
                _ => expect.push((r, 1)),
            }
        }
        let mut got: Vec<(i64, usize)> = found.iter().map(|r| (r.midpoint().round() as i64, r.multiplicity)).collect();
        got.sort();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn square_free_product(roots in prop::collection::vec(-3i64..=3, 1..7)) {
        let p = from_roots(1, &roots);
        let parts = square_free_decomposition(&p).unwrap();
        let rebuilt = parts
            .iter()
            .fold(UniPolyQ::one(), |acc, (f, m)| (0..*m).fold(acc, |a, _| a.mul(f)));
        prop_assert_eq!(rebuilt.monic(), p.monic());
    }

    #[test]
    fn gauss_field_laws(a in gauss(), b in gauss()) {
        prop_assert_eq!(&(&a * &b) - &(&b * &a), GaussRational::from_int(0));
        if let Some(inv) = b.inv() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert_eq!(&b * &inv, GaussRational::from_int(1));
        }
    }
}

#[test]
fn gcd_worked_example() {
    // s² + 1 and s are coprime
    let g = UniPolyQ::from_ints(&[1, 0, 1]).gcd(&UniPolyQ::from_ints(&[0, 1])).unwrap();
    assert_eq!(g, UniPolyQ::one());
}

#[test]
fn big_literals_survive() {
    let big = BigInt::from(1) << 300;
    let text = format!("Dt - i*(1/{big})*Dx1");
    let p = parse_operator(&text, 1).unwrap();
    assert_eq!(parse_operator(&p.to_string(), 1).unwrap(), p);
    assert_eq!(p.coefficient(&[0, 1]), GaussRational::new(q(0, 1), -BigRational::new(1.into(), big)));
}
