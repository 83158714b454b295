use meshsum_core::analytics::{platonic_counts, GrowthStart, SeedDescriptor};
use meshsum_core::summation::{
    euler_formula_check, euler_sum, euler_sum_by_lemma, generating_value, mesh_invariants, mesh_invariants_from_seed,
    mesh_invariants_from_start, partial_sum, RecurrenceSeries, SummationError,
};
use meshsum_core::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

#[test]
fn closed_forms_at_small_degrees() {
    for (r, v, e, f) in [(7, -6, -21, -14), (8, -3, -12, -8), (12, -1, -6, -4)] {
        let m = mesh_invariants(r).unwrap();
        assert_eq!((m.v, m.e, m.f), (q(v, 1), q(e, 1), q(f, 1)));
    }
    let m = mesh_invariants(9).unwrap();
    assert_eq!((m.v, m.e, m.f), (q(-2, 1), q(-9, 1), q(-6, 1)));
    let m = mesh_invariants(10).unwrap();
    assert_eq!((m.v, m.e, m.f), (q(-3, 2), q(-15, 2), q(-5, 1)));
}

#[test]
fn excluded_degrees() {
    assert_eq!(mesh_invariants(6), Err(SummationError::FlatGrid));
    assert!(matches!(mesh_invariants(5), Err(SummationError::Spherical { r: 5 })));
}

#[test]
fn corollary_over_the_whole_range() {
    for r in 7..=1000 {
        assert!(euler_formula_check(&mesh_invariants(r).unwrap()), "r={r}");
    }
}

#[test]
fn seed_pipeline_reproduces_the_closed_form() {
    for r in 7..=12 {
        let expected = mesh_invariants(r).unwrap();
        assert_eq!(mesh_invariants_from_seed(&SeedDescriptor::triangle(r).unwrap()).unwrap(), expected);
        assert_eq!(mesh_invariants_from_seed(&SeedDescriptor::fan(r).unwrap()).unwrap(), expected);
        assert_eq!(mesh_invariants_from_start(&GrowthStart::single_vertex(r).unwrap()).unwrap(), expected);
    }
}

#[test]
fn vertex_increment_series() {
    let series = RecurrenceSeries::for_degree(7, 12, 33);
    assert_eq!(euler_sum(&series).unwrap(), q(-9, 1));
    assert_eq!(euler_sum_by_lemma(7, &BigInt::from(12), &BigInt::from(33)).unwrap(), q(-9, 1));
    assert_eq!(generating_value(&series, &Rational::one()).unwrap(), q(-9, 1));
    let first: Vec<i64> = series.terms().take(4).map(|x| x.try_into().unwrap()).collect();
    assert_eq!(first, [12, 33, 87, 228]);
}

#[test]
fn partial_sums_at_small_argument() {
    let series = RecurrenceSeries::for_degree(7, 12, 33);
    assert_eq!(partial_sum(&series, &q(1, 6), 0), Rational::zero());
        // 12/6 + 33/36 + 87/216
    assert_eq!(partial_sum(&series, &q(1, 6), 3), q(239, 72));
}

#[test]
fn convergence_inside_the_radius() {
    let bound = q(1, 1_000_000_000_000);
    for r in 7..=12u32 {
        let t = q(1, 2 * (r as i64 - 4));
        let k = r as i64;
        // vertex increments of the face seed: a₁ + b₁ and a₂ + b₂
        let series = RecurrenceSeries::for_degree(r, 3 * (k - 3), (k - 4) * (3 * k - 12) + 3 * (k - 5));
        let exact = generating_value(&series, &t).unwrap();
        let gap = (&partial_sum(&series, &t, 60) - &exact).abs().checked_div(&exact.abs()).unwrap();
        assert!(gap < bound, "r={r}");
    }
}

#[test]
fn poles_are_reported() {
    // 1 − 2t + t² vanishes at t = 1.
    let series = RecurrenceSeries::new(2, 1, 2);
    assert!(matches!(generating_value(&series, &Rational::one()), Err(SummationError::Pole { .. })));
    assert_eq!(euler_sum(&series), Err(SummationError::UndefinedSum { gamma: 2 }));
}

#[test]
fn platonic_reference() {
    assert_eq!(platonic_counts(3).unwrap(), (4, 6, 4));
    assert_eq!(platonic_counts(4).unwrap(), (6, 12, 8));
    assert_eq!(platonic_counts(5).unwrap(), (12, 30, 20));
    assert!(platonic_counts(6).is_err());
}

proptest! {
    #[test]
    fn lemma_form_equals_direct_form(r in 7i64..2000, x1 in any::<i64>(), x2 in any::<i64>()) {
        let (x1, x2) = (BigInt::from(x1), BigInt::from(x2));
        let direct = euler_sum(&RecurrenceSeries::new(r - 4, x1.clone(), x2.clone())).unwrap();
        prop_assert_eq!(euler_sum_by_lemma(r, &x1, &x2).unwrap(), direct);
    }

    #[test]
    fn euler_sum_is_linear(r in 7u32..200, a in -1000i64..1000, b in -1000i64..1000,
                           x in (-10_000i64..10_000, -10_000i64..10_000), y in (-10_000i64..10_000, -10_000i64..10_000)) {
        let sx = euler_sum(&RecurrenceSeries::for_degree(r, x.0, x.1)).unwrap();
        let sy = euler_sum(&RecurrenceSeries::for_degree(r, y.0, y.1)).unwrap();
        let combined = RecurrenceSeries::for_degree(r, a * x.0 + b * y.0, a * x.1 + b * y.1);
        prop_assert_eq!(euler_sum(&combined).unwrap(), q(a, 1) * sx + q(b, 1) * sy);
    }

    #[test]
    fn generating_function_at_one_is_the_euler_sum(gamma in -50i64..50, x1 in -1000i64..1000, x2 in -1000i64..1000) {
        prop_assume!(gamma != 2);
        let series = RecurrenceSeries::new(gamma, x1, x2);
        prop_assert_eq!(generating_value(&series, &Rational::one()).unwrap(), euler_sum(&series).unwrap());
    }
}
