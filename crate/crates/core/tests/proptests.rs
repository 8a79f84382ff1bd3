//! Property tests: field axioms for the fraction field, Weyl-action group
//! laws, Newton-polytope additivity, and parser/renderer round trips.

use proptest::prelude::*;

use springer_stable::exactalg::{
    parse_ratfunc, render_ratfunc, ExpKey, LaurentPoly, Polytope, RatFunc, VarMode,
};
use springer_stable::weyl::{rat, RootSystem};

fn poly_strategy(rank: usize, terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (
            prop::collection::vec(-3i64..=3, rank),
            -2i64..=2,
            -6i64..=6,
        ),
        0..=terms,
    )
    .prop_map(move |ts| {
        let mut p = LaurentPoly::zero(rank);
        for (lam, q, c) in ts {
            if c == 0 {
                continue;
            }
            p = p.add(&LaurentPoly::monomial(
                rank,
                ExpKey { lam, q2: 2 * q, y: 0, h: 0 },
                rat(c),
            ));
        }
        p
    })
}

fn ratfunc_strategy(rank: usize) -> impl Strategy<Value = RatFunc> {
    (poly_strategy(rank, 3), poly_strategy(rank, 3))
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFunc::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(
        a in ratfunc_strategy(2),
        b in ratfunc_strategy(2),
        c in ratfunc_strategy(2),
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv()), RatFunc::one(2));
        }
    }

    #[test]
    fn products_of_polynomials_stay_polynomial(
        p in poly_strategy(2, 3),
        q in poly_strategy(2, 3),
        d in poly_strategy(2, 2),
    ) {
        prop_assume!(!d.is_zero());
        // (p·d)/d · q is a polynomial however it is represented
        let f = RatFunc::new(p.mul(&d), d).mul(&RatFunc::from_poly(q.clone()));
        prop_assert!(f.is_polynomial());
        prop_assert_eq!(f.as_poly().unwrap(), p.mul(&q));
    }

    #[test]
    fn newton_polytope_of_product_is_minkowski_sum(
        p in poly_strategy(2, 4),
        q in poly_strategy(2, 4),
    ) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let np = Polytope::newton(&p).unwrap();
        let nq = Polytope::newton(&q).unwrap();
        let npq = Polytope::newton(&p.mul(&q)).unwrap();
        prop_assert!(npq.same_as(&np.minkowski_sum(&nq)));
    }
}

fn word_strategy(rank: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weyl_action_is_a_group_action(
        u_word in word_strategy(2),
        v_word in word_strategy(2),
        lam in prop::collection::vec(-3i64..=3, 2),
        p in poly_strategy(2, 3),
    ) {
        let rs = RootSystem::build('B', 2).unwrap();
        let u = rs.from_word(&u_word).unwrap();
        let v = rs.from_word(&v_word).unwrap();
        let lam: Vec<_> = lam.into_iter().map(rat).collect();
        prop_assert_eq!(
            rs.act_weight(rs.mul(u, v), &lam),
            rs.act_weight(u, &rs.act_weight(v, &lam))
        );
        prop_assert_eq!(
            p.weyl_act_k(&rs, rs.mul(u, v)),
            p.weyl_act_k(&rs, v).weyl_act_k(&rs, u)
        );
    }

    #[test]
    fn word_round_trips(w_word in word_strategy(2)) {
        let rs = RootSystem::build('G', 2).unwrap();
        let w = rs.from_word(&w_word).unwrap();
        prop_assert_eq!(rs.parse_word(&rs.word_string(w)).unwrap(), w);
        // chamber and alcove strings built from w parse back to w
        prop_assert_eq!(rs.parse_chamber(&format!("{}+", rs.word_string(w))).unwrap(), w);
        let alc = rs.parse_alcove(&format!("{};1,-2", rs.word_string(w))).unwrap();
        prop_assert_eq!(alc.x, w);
        prop_assert_eq!(alc.mu, vec![1, -2]);
    }

    #[test]
    fn ratfunc_render_parse_round_trip(f in ratfunc_strategy(2)) {
        let rs = RootSystem::build('A', 2).unwrap();
        let s = render_ratfunc(&rs, VarMode::KTheory, &f);
        let back = parse_ratfunc(&rs, VarMode::KTheory, &s).unwrap();
        prop_assert_eq!(back, f);
    }
}
