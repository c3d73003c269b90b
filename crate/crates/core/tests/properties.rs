use proptest::prelude::*;

use dualimit_core::arith::{PolyXY, QPoly, TruncatedFamily, UPoly, Q};
use dualimit_core::elim::{discriminant, discriminant_mod_tpow, resultant, resultant_sylvester};
use dualimit_core::parse::{parse_family, parse_poly, print};

fn rational() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=8).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn qpoly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(QPoly::new)
}

/// Degree exactly `lo..=hi` with an integer leading coefficient.
fn qpoly_deg(lo: usize, hi: usize) -> impl Strategy<Value = QPoly> {
    (lo..=hi)
        .prop_flat_map(|d| (prop::collection::vec(rational(), d), (1i64..=9, any::<bool>())))
        .prop_map(|(mut v, (lc, neg))| {
            v.push(Q::from_integer(if neg { -lc } else { lc }.into()));
            QPoly::new(v)
        })
}

fn polyxy() -> impl Strategy<Value = PolyXY> {
    prop::collection::vec(((0usize..=4, 0usize..=2), rational()), 0..8).prop_map(|terms| {
        terms
            .into_iter()
            .fold(PolyXY::zero(), |acc, ((dx, dy), c)| acc.add(&PolyXY::monomial(c, dx, dy)))
    })
}

fn family() -> impl Strategy<Value = TruncatedFamily> {
    (1usize..=4, 0usize..=3)
        .prop_flat_map(|(n, trunc)| {
            let head = prop::collection::vec(((0..n, 0usize..=2), rational()), 0..5);
            let tail = prop::collection::vec(prop::collection::vec(((0..=n, 0usize..=2), rational()), 0..5), trunc);
            (Just(n), Just(trunc), head, tail)
        })
        .prop_map(|(n, trunc, head, tail)| {
            let build = |terms: Vec<((usize, usize), Q)>| {
                terms
                    .into_iter()
                    .fold(PolyXY::zero(), |acc, ((dx, dy), c)| acc.add(&PolyXY::monomial(c, dx, dy)))
            };
            let f0 = build(head).add(&PolyXY::monomial(Q::from_integer(1.into()), n, 0));
            let mut coeffs = vec![f0];
            coeffs.extend(tail.into_iter().map(build));
            TruncatedFamily::new(coeffs, trunc).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn qpoly_ring_axioms(a in qpoly(4), b in qpoly(4), c in qpoly(4)) {
        prop_assert_eq!(a.add_poly(&b), b.add_poly(&a));
        prop_assert_eq!(a.mul_poly(&b), b.mul_poly(&a));
        prop_assert_eq!(a.add_poly(&b).add_poly(&c), a.add_poly(&b.add_poly(&c)));
        prop_assert_eq!(a.mul_poly(&b).mul_poly(&c), a.mul_poly(&b.mul_poly(&c)));
        prop_assert_eq!(a.mul_poly(&b.add_poly(&c)), a.mul_poly(&b).add_poly(&a.mul_poly(&c)));
        prop_assert!(a.sub_poly(&a).is_zero());
    }

    #[test]
    fn polyxy_ring_axioms(a in polyxy(), b in polyxy(), c in polyxy()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).exact_div(&b), Some(a.clone()));
        }
    }

    #[test]
    fn resultant_is_multiplicative(f in qpoly_deg(1, 4), g in qpoly_deg(1, 4), h in qpoly_deg(1, 4)) {
        prop_assert_eq!(resultant(&f.mul_poly(&g), &h), resultant(&f, &h) * resultant(&g, &h));
    }

    #[test]
    fn discriminant_of_a_product(f in qpoly_deg(1, 4), g in qpoly_deg(1, 4)) {
        let r = resultant(&f, &g);
        prop_assert_eq!(discriminant(&f.mul_poly(&g)), discriminant(&f) * discriminant(&g) * &r * &r);
    }

    #[test]
    fn resultant_swap_sign(f in qpoly_deg(1, 5), g in qpoly_deg(1, 5)) {
        let sign = if (f.deg() * g.deg()) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(resultant(&g, &f), resultant(&f, &g) * Q::from_integer(sign.into()));
    }

    #[test]
    fn subresultant_matches_sylvester(f in qpoly_deg(1, 5), g in qpoly_deg(1, 5)) {
        prop_assert_eq!(resultant(&f, &g), resultant_sylvester(&f, &g));
    }

    #[test]
    fn truncated_discriminant_is_a_prefix(
        cols in prop::collection::vec(qpoly(2), 1..=4),
        lead in (1i64..=5, qpoly(2)),
        len in 1usize..=5,
    ) {
        let mut cols = cols;
        let (c0, rest) = lead;
        let mut lc = rest.coeffs().to_vec();
        if lc.is_empty() {
            lc.push(Q::from_integer(0.into()));
        }
        lc[0] = Q::from_integer(c0.into());
        cols.push(QPoly::new(lc));
        let f = UPoly::new(cols);
        let full = discriminant(&f);
        let want: Vec<Q> = (0..len).map(|k| full.coeff(k)).collect();
        prop_assert_eq!(discriminant_mod_tpow(&f, len), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn polynomial_round_trip(p in polyxy()) {
        let text = print::poly_to_string(&p);
        prop_assert_eq!(parse_poly(&text).unwrap(), p);
    }

    #[test]
    fn family_round_trip(f in family()) {
        let text = print::family_to_string(&f);
        prop_assert_eq!(parse_family(&text, f.trunc()).unwrap(), f);
    }
}
