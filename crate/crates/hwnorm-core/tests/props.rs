use hwnorm_core::arith::{rat2, Eval, FactoredFn, LinearFactor, Rat};
use proptest::prelude::*;

fn shift_strategy() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat2(n, d))
}

fn factors_strategy() -> impl Strategy<Value = Vec<LinearFactor>> {
    prop::collection::vec(shift_strategy().prop_map(|shift| LinearFactor { shift }), 0..6)
}

fn factored_strategy() -> impl Strategy<Value = FactoredFn> {
    (
        (-5i64..=5).prop_filter("nonzero", |n| *n != 0),
        factors_strategy(),
        factors_strategy(),
    )
        .prop_map(|(c, num, den)| FactoredFn::from_factors(rat2(c, 1), &num, &den))
}

proptest! {
    #[test]
    fn simplify_is_idempotent(f in factored_strategy()) {
        let once = f.simplify();
        prop_assert!(once.is_canonical());
        prop_assert_eq!(once.simplify(), once.clone());
    }

    #[test]
    fn simplify_preserves_evaluation(f in factored_strategy(), p in -8i64..=8, q in 1i64..=3) {
        let at = rat2(p, q);
        // when the raw function has no vanishing denominator factor, the
        // canonical form evaluates identically
        if f.evaluate(&at) != Eval::Pole {
            prop_assert_eq!(f.simplify().evaluate(&at), f.evaluate(&at));
        }
    }

    #[test]
    fn pole_order_is_additive(f in factored_strategy(), g in factored_strategy(), p in -8i64..=8, q in 1i64..=3) {
        let at = rat2(p, q);
        prop_assert_eq!(
            f.mul(&g).pole_order(&at),
            f.pole_order(&at) + g.pole_order(&at)
        );
    }

    #[test]
    fn sign_matches_evaluation(f in factored_strategy(), p in -8i64..=8, q in 1i64..=3) {
        use hwnorm_core::arith::Sign;
        use num_traits::Signed;
        let at = rat2(p, q);
        match (f.sign_at(&at), f.evaluate(&at)) {
            (Sign::Pole, Eval::Pole) => {}
            (Sign::Zero, Eval::Zero) => {}
            (Sign::Positive, Eval::Value(v)) => prop_assert!(v.is_positive()),
            (Sign::Negative, Eval::Value(v)) => prop_assert!(v.is_negative()),
            (s, e) => prop_assert!(false, "sign {s:?} vs eval {e:?}"),
        }
    }
}
