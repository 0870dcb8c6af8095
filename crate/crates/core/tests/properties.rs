use dfc_core::identities::ORDER_SWEEP;
use dfc_core::{
    diamond_fractional_sum, verify_coincidence, verify_composition, verify_leibniz,
    verify_linearity, DiamondParams, GridFunction, Order, Rational, Scalar, Verifier,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=3).prop_map(|(p, d)| Rational::from_ratio(p, d).unwrap())
}

fn order() -> impl Strategy<Value = Order<Rational>> {
    prop::sample::select(ORDER_SWEEP.to_vec())
        .prop_map(|(p, d)| Order::new(Rational::from_ratio(p, d).unwrap()).unwrap())
}

fn gamma() -> impl Strategy<Value = Rational> {
    (0i64..=4).prop_map(|p| Rational::from_ratio(p, 4).unwrap())
}

fn params() -> impl Strategy<Value = DiamondParams<Rational>> {
    (order(), order(), gamma()).prop_map(|(a, b, g)| DiamondParams::new(a, b, g).unwrap())
}

fn grid(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = GridFunction<Rational>> {
    (rational(), prop::collection::vec(rational(), len))
        .prop_map(|(base, samples)| GridFunction::new(base, samples).unwrap())
}

fn grid_pair() -> impl Strategy<Value = (GridFunction<Rational>, GridFunction<Rational>)> {
    (rational(), 1usize..=10).prop_flat_map(|(base, n)| {
        let a = prop::collection::vec(rational(), n);
        let b = prop::collection::vec(rational(), n);
        (a, b).prop_map(move |(a, b)| {
            (
                GridFunction::new(base.clone(), a).unwrap(),
                GridFunction::new(base.clone(), b).unwrap(),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linearity_is_exact((f, g) in grid_pair(), p in params(), c in rational()) {
        prop_assert!(verify_linearity(&f, &g, &p).unwrap().passed);
        let scaled = diamond_fractional_sum(&f.scale(&c).unwrap(), &p).unwrap();
        let outside = diamond_fractional_sum(&f, &p).unwrap().scale(&c).unwrap();
        prop_assert_eq!(scaled, outside);
    }

    #[test]
    fn coincidence_is_exact(f in grid(1..=10), nu in order()) {
        let report = verify_coincidence(&f, &nu).unwrap();
        prop_assert_eq!(report.max_abs_error, Rational::from_i64(0));
    }

    #[test]
    fn gamma_drops_out_for_equal_orders(f in grid(1..=10), nu in order(), g1 in gamma(), g2 in gamma()) {
        let p1 = DiamondParams::new(nu.clone(), nu.clone(), g1).unwrap();
        let p2 = DiamondParams::new(nu.clone(), nu, g2).unwrap();
        prop_assert_eq!(diamond_fractional_sum(&f, &p1).unwrap(), diamond_fractional_sum(&f, &p2).unwrap());
    }

    #[test]
    fn composition_is_exact(f in grid(1..=8), p1 in params(), a2 in order(), b2 in order()) {
        let p2 = DiamondParams::new(a2, b2, p1.gamma().clone()).unwrap();
        prop_assert!(verify_composition(&f, &p1, &p2).unwrap().passed);
    }

    #[test]
    fn leibniz_is_exact((f, g) in grid_pair(), p in params()) {
        prop_assert!(verify_leibniz(&f, &g, &p).unwrap().passed);
    }

    #[test]
    fn leibniz_tail_is_zero((f, g) in grid_pair(), p in params(), extra in 1usize..8) {
        let v = Verifier::new();
        for m in 0..f.len() {
            prop_assert_eq!(
                v.leibniz_rhs(&f, &g, &p, m).unwrap(),
                v.leibniz_rhs_capped(&f, &g, &p, m, m + extra).unwrap()
            );
        }
    }

    #[test]
    fn backward_differences_compose(f in grid(1..=12), j in 0usize..6, k in 0usize..6) {
        prop_assume!(j + k < f.len());
        let twice = f.backward_difference(k).unwrap().backward_difference(j).unwrap();
        prop_assert_eq!(twice, f.backward_difference(j + k).unwrap());
    }

    #[test]
    fn differencing_undoes_cumulative_sum(f in grid(2..=12)) {
        let back = f.cumulative_sum().unwrap().backward_difference(1).unwrap();
        prop_assert_eq!(back.samples(), &f.samples()[1..]);
        prop_assert_eq!(back.base(), &f.point(1));
    }

    #[test]
    fn float_backward_difference_undoes_cumulative_sum(v in prop::collection::vec(-1000i32..1000, 2..12)) {
        // Integer-valued floats keep every partial sum exact.
        let f = GridFunction::new(0.5, v.iter().map(|&x| x as f64).collect()).unwrap();
        let back = f.cumulative_sum().unwrap().backward_difference(1).unwrap();
        prop_assert_eq!(back.samples(), &f.samples()[1..]);
    }

    #[test]
    fn exact_text_round_trips(x in rational(), y in rational()) {
        let v = x * y + Rational::from_ratio(1, 7).unwrap();
        prop_assert_eq!(Rational::parse(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn float_text_round_trips(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
        prop_assert_eq!(f64::parse(&x.to_string()).unwrap(), x);
    }
}
