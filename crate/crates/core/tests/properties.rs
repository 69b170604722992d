//! Property tests for the algebraic laws the modules promise.

use proptest::prelude::*;

use gia_core::cocycles::{are_cohomologous, coboundary, Cocycle, ExponentMap};
use gia_core::cyclotomic::{rat, CycRational};
use gia_core::groups::{GroupElement, GroupSpec};
use gia_core::text;
use gia_core::utn::{apply_canonical, factor_u, normalize_u, CanonicalKind, UtMatrix};

fn group_strategy() -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(2u64..=5, 0..=3)
        .prop_map(|f| GroupSpec::abelian(f).unwrap())
        .prop_filter("keep orders small", |g| g.order() <= 36)
}

fn element_of(g: &GroupSpec) -> impl Strategy<Value = GroupElement> {
    let order = g.order();
    let g = g.clone();
    (0..order).prop_map(move |i| g.element(i).unwrap())
}

fn small_rational() -> impl Strategy<Value = CycRational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| CycRational::from_rational(rat(n, d)))
}

fn cyclotomic_value() -> impl Strategy<Value = CycRational> {
    (1u64..=8, 0i64..8, small_rational()).prop_map(|(n, k, c)| {
        CycRational::root_of_unity(n, k % n as i64)
            .unwrap()
            .mul(&c)
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(g in group_strategy(), seed in any::<u64>()) {
        let order = g.order() as u64;
        let pick = |s: u64| g.element((s % order) as usize).unwrap();
        let (a, b, c) = (pick(seed), pick(seed / 7 + 3), pick(seed / 13 + 11));
        let ab_c = g.op(&g.op(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.op(&a, &g.op(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(g.op(&a, &g.identity()).unwrap(), a.clone());
        prop_assert_eq!(g.op(&g.inv(&a).unwrap(), &a).unwrap(), g.identity());
    }

    #[test]
    fn field_laws(a in cyclotomic_value(), b in cyclotomic_value(), c in cyclotomic_value()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b.mul(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().mul(&c).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn embedding_is_multiplicative(a in cyclotomic_value(), b in cyclotomic_value(), m in 1u64..=4) {
        let target = gia_core::zn::lcm(gia_core::zn::lcm(a.root_order(), b.root_order()), m * a.root_order());
        let ea = a.embed(target).unwrap();
        let eb = b.embed(target).unwrap();
        prop_assert_eq!(ea.mul(&eb).unwrap(), a.mul(&b).unwrap().embed(target).unwrap());
        prop_assert_eq!(ea.add(&eb).unwrap(), a.add(&b).unwrap().embed(target).unwrap());
    }

    #[test]
    fn coboundaries_are_cocycles(g in group_strategy(), n in 1u64..=4, seed in any::<u64>()) {
        let order = g.order();
        let values: Vec<u64> = (0..order)
            .map(|i| (seed.wrapping_mul(i as u64 * 2 + 3) >> 7) % n)
            .collect();
        let lambda = ExponentMap::new(g.clone(), n, values).unwrap();
        let d = coboundary(&lambda);
        prop_assert!(d.is_cocycle());
        // bar is an involution on tables.
        prop_assert_eq!(d.bar().bar(), d.clone());
        // sigma * bar(sigma) = sigma(1,1) * coboundary(u -> sigma(u, u^{-1}))
        // exactly; the border constant drops for normalized cocycles.
        let gt = g.op_table();
        let witness = ExponentMap::new(
            g.clone(),
            n,
            (0..order).map(|u| d.exponent_at(u, gt.inv[u])).collect(),
        )
        .unwrap();
        let border = d.exponent_at(gt.id, gt.id);
        let shift = Cocycle::new(
            g.clone(),
            n,
            vec![vec![border; order]; order],
        )
        .unwrap();
        prop_assert_eq!(
            d.combine(&d.bar(), 1, 1).unwrap(),
            coboundary(&witness).combine(&shift, 1, 1).unwrap()
        );
        // Normalized form: the witness identity as stated.
        let (norm, _) = d.normalize();
        let nwitness = ExponentMap::new(
            g.clone(),
            n,
            (0..order).map(|u| norm.exponent_at(u, gt.inv[u])).collect(),
        )
        .unwrap();
        prop_assert_eq!(
            norm.combine(&norm.bar(), 1, 1).unwrap(),
            coboundary(&nwitness)
        );
    }

    #[test]
    fn cohomology_witnesses_compose(g in group_strategy(), n in 1u64..=4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let order = g.order();
        let mk = |seed: u64| {
            let values: Vec<u64> = (0..order)
                .map(|i| (seed.wrapping_mul(i as u64 * 5 + 1) >> 9) % n)
                .collect();
            coboundary(&ExponentMap::new(g.clone(), n, values).unwrap())
        };
        let (a, b) = (mk(s1), mk(s2));
        // Reflexivity with the zero witness.
        let w = are_cohomologous(&a, &a).unwrap().unwrap();
        prop_assert!(w.values().iter().all(|&v| v == 0));
        // The witness satisfies a = (delta w) * b, and its negation works
        // in the other direction (symmetry).
        let w_ab = are_cohomologous(&a, &b).unwrap().unwrap();
        prop_assert_eq!(a.clone(), b.combine(&coboundary(&w_ab), 1, 1).unwrap());
        prop_assert_eq!(b.clone(), a.combine(&coboundary(&w_ab.neg()), 1, 1).unwrap());
        // Transitivity through the trivial cocycle: witnesses add.
        let t = Cocycle::trivial(a.group().clone(), n);
        let w_at = are_cohomologous(&a, &t).unwrap().unwrap();
        let w_tb = are_cohomologous(&t, &b).unwrap().unwrap();
        prop_assert_eq!(
            a,
            b.combine(&coboundary(&w_at.add(&w_tb).unwrap()), 1, 1).unwrap()
        );
    }

    #[test]
    fn bicharacter_is_coboundary_invariant(n in 1u64..=4, seed in any::<u64>()) {
        let g = GroupSpec::abelian(vec![2, 2]).unwrap();
        let values: Vec<u64> = (0..4).map(|i| (seed >> (3 * i)) % n).collect();
        let lambda = ExponentMap::new(g.clone(), n, values).unwrap();
        let base = Cocycle::trivial(g.clone(), n);
        let shifted = base.combine(&coboundary(&lambda), 1, 1).unwrap();
        prop_assert_eq!(
            shifted.bicharacter().unwrap(),
            base.bicharacter().unwrap()
        );
    }

    #[test]
    fn ut_factorization(n in 1usize..=5, seed in any::<u64>(), symplectic in any::<bool>()) {
        let kind = if symplectic && n % 2 == 0 { CanonicalKind::S } else { CanonicalKind::Tau };
        // Random invertible fixed point: u = x + kind(x) with a positive
        // diagonal to keep it invertible.
        let mut x = UtMatrix::zero(n);
        let mut s = seed | 1;
        for i in 0..n {
            for j in i..n {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let v = ((s >> 33) % 7) as i64 + i64::from(i == j);
                *x.at_mut(i, j) = CycRational::from_integer(v.max(1).min(7) * i64::from(i == j) + v * i64::from(i != j));
            }
        }
        let mut u = x.add(&apply_canonical(kind, &x).unwrap()).unwrap();
        if !u.is_invertible() {
            // Nudge the diagonal.
            for i in 0..n {
                if u.at(i, i).is_zero() {
                    *u.at_mut(i, i) = CycRational::from_integer(2);
                }
            }
            let fixed = apply_canonical(kind, &u).unwrap();
            u = u.add(&fixed).unwrap();
        }
        prop_assume!(u.is_invertible());
        prop_assume!(apply_canonical(kind, &u).unwrap() == u);
        let u = if n % 2 == 1 { normalize_u(&u).unwrap().0 } else { u };
        let v = factor_u(&u, kind).unwrap();
        prop_assert_eq!(v.mul(&apply_canonical(kind, &v).unwrap()).unwrap(), u);
    }

    #[test]
    fn scalar_text_round_trip(v in cyclotomic_value()) {
        let text = text::render_scalar(&v);
        let back = text::parse_scalar(&text).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn cocycle_file_round_trip(n in 1u64..=4, seed in any::<u64>()) {
        let g = GroupSpec::abelian(vec![2, 2]).unwrap();
        let values: Vec<u64> = (0..4).map(|i| (seed >> (5 * i)) % n).collect();
        let c = coboundary(&ExponentMap::new(g, n, values).unwrap());
        let rendered = text::render_cocycle_file(&c).unwrap();
        prop_assert_eq!(text::parse_cocycle_file(&rendered).unwrap(), c);
    }

    #[test]
    fn ut_matrix_file_round_trip(n in 1usize..=4, seed in any::<u64>()) {
        let mut m = UtMatrix::zero(n);
        let mut s = seed | 1;
        for i in 0..n {
            for j in i..n {
                s = s.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                let num = ((s >> 40) % 9) as i64 - 4;
                let den = ((s >> 20) % 3) as i64 + 1;
                *m.at_mut(i, j) = CycRational::from_rational(rat(num, den));
            }
        }
        let rendered = text::render_ut_matrix_file(&m);
        prop_assert_eq!(text::parse_ut_matrix_file(&rendered).unwrap(), m);
    }

    #[test]
    fn group_literal_round_trip(factors in prop::collection::vec(2u64..=9, 0..=4)) {
        let g = GroupSpec::abelian(factors).unwrap();
        let lit = text::render_group_literal(&g).unwrap();
        prop_assert_eq!(text::parse_group_literal(&lit).unwrap(), g);
    }
}
