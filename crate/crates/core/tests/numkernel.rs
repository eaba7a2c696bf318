use harmonic_atlas::numkernel::*;
use proptest::prelude::*;

fn series(cs: &[(i64, i64)], order: usize) -> TruncSeries {
    TruncSeries::from_coeffs_with_order(cs.iter().map(|&(n, d)| GaussRational::from_ratio(n, d)).collect(), order)
}

fn geometric(order: usize) -> TruncSeries {
    TruncSeries::from_coeffs(vec![GaussRational::one(); order + 1])
}

#[test]
fn rationals_are_canonical() {
    let r = GaussRational::from_ratio(6, -4);
    assert_eq!(r.to_string(), "-3/2");
    assert_eq!(GaussRational::from_ratio(0, 5).to_string(), "0");
    let z = GaussRational::new(Rational::new(1.into(), 2.into()), Rational::new((-3).into(), 4.into()));
    assert_eq!(z.to_string(), "1/2-3/4 i");
    assert_eq!(z.conj().conj(), z);
    assert_eq!(z.to_string().parse::<GaussRational>().unwrap(), z);
}

#[test]
fn public_series_functions() {
    let n = 10;
    let one_minus_z = series(&[(1, 1), (-1, 1)], n);
    assert_eq!(series_mul(&one_minus_z, &geometric(n)), TruncSeries::one(n));
    assert_eq!(series_reciprocal(&one_minus_z).unwrap(), geometric(n));
    assert!(series_reciprocal(&series(&[(0, 1), (1, 1)], n)).is_err());
    assert_eq!(series_add(&series(&[(1, 1), (1, 1)], n), &series(&[(1, 1), (-1, 1)], n)), series(&[(2, 1)], n));
    assert_eq!(series_derivative(&series(&[(0, 1), (1, 1), (-1, 2)], n)), series(&[(1, 1), (-1, 1)], n - 1));
    let log = series_antiderivative(&geometric(n));
    assert_eq!(log.order(), n + 1);
    for k in 1..=n + 1 {
        assert_eq!(*log.coeff(k), GaussRational::from_ratio(1, k as i64));
    }
    assert_eq!(series_compose_linear(&geometric(n), &GaussRational::one()), geometric(n));
}

#[test]
fn mixed_orders_truncate() {
    assert_eq!(series_add(&geometric(3), &geometric(7)).order(), 3);
    assert_eq!(series_mul(&geometric(9), &geometric(4)).order(), 4);
}

fn arb_series() -> impl Strategy<Value = TruncSeries> {
    proptest::collection::vec(((-9i64..9), (1i64..5), (-9i64..9), (1i64..5)), 1..8).prop_map(|cs| {
        TruncSeries::from_coeffs(
            cs.into_iter()
                .map(|(a, b, c, d)| GaussRational::new(Rational::new(a.into(), b.into()), Rational::new(c.into(), d.into())))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reciprocal_inverts(a in arb_series()) {
        prop_assume!(!a.coeff(0).is_zero());
        let r = series_reciprocal(&a).unwrap();
        prop_assert_eq!(series_mul(&a, &r), TruncSeries::one(a.order()));
    }

    #[test]
    fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(series_mul(&series_mul(&a, &b), &c), series_mul(&a, &series_mul(&b, &c)));
        prop_assert_eq!(
            series_mul(&a, &series_add(&b, &c)),
            series_add(&series_mul(&a, &b), &series_mul(&a, &c))
        );
    }

    #[test]
    fn derivative_undoes_antiderivative(a in arb_series()) {
        prop_assert_eq!(series_derivative(&series_antiderivative(&a)), a);
    }
}
