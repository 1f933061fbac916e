//! Property tests for the invariants each module promises.

use metricspace::function::{d1_distance, dinf_distance, PLFunction};
use metricspace::metric::{snowflake_distance, snowflake_inequality_holds, Snowflake};
use metricspace::padic::{PAdicContext, Valuation};
use metricspace::series::{geometric_identity_residual, limit_error, SeriesMetric};
use metricspace::sphere::{chord_distance, geodesic_distance, UnitVector};
use metricspace::vector::{self, homogeneity_defect, NormKind, Point, VectorMetric};
use metricspace::{verify_metric_axioms, Metric, Rational};
use proptest::prelude::*;

fn coords(dim: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    dim.prop_flat_map(|n| prop::collection::vec(-100.0..100.0f64, n))
}

fn point_pair() -> impl Strategy<Value = (Point, Point)> {
    (1usize..=8).prop_flat_map(|n| {
        (
            prop::collection::vec(-100.0..100.0f64, n),
            prop::collection::vec(-100.0..100.0f64, n),
        )
            .prop_map(|(a, b)| (Point::new(a).unwrap(), Point::new(b).unwrap()))
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..=1_000_000, 1i64..=1_000_000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn prime() -> impl Strategy<Value = PAdicContext> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| PAdicContext::new(p).unwrap())
}

fn unit_vector(dim: usize) -> impl Strategy<Value = UnitVector> {
    prop::collection::vec(-1.0..1.0f64, dim).prop_filter_map("nonzero", |c| UnitVector::new(c).ok())
}

fn pl_function() -> impl Strategy<Value = PLFunction> {
    (
        prop::collection::btree_set(1u32..1000, 0..8),
        prop::collection::vec(-5.0..5.0f64, 10),
    )
        .prop_map(|(ticks, vals)| {
            let mut bp = vec![0.0];
            bp.extend(ticks.iter().map(|&k| k as f64 / 1000.0));
            bp.push(1.0);
            let values = vals[..bp.len()].to_vec();
            PLFunction::new(bp, values).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_equivalence_chain((x, y) in point_pair()) {
        let n = x.dim() as f64;
        let d_inf = vector::distance(NormKind::Linf, &x, &y).unwrap();
        let d2 = vector::distance(NormKind::L2, &x, &y).unwrap();
        let d1 = vector::distance(NormKind::L1, &x, &y).unwrap();
        prop_assert!(d_inf <= d2 + 1e-12);
        prop_assert!(d2 <= d1 + 1e-12);
        prop_assert!(d1 <= n * d_inf + 1e-12);
    }

    #[test]
    fn zero_norm_means_origin(c in coords(1..=6), kind in prop::sample::select(NormKind::ALL.to_vec())) {
        let p = Point::new(c).unwrap();
        if vector::norm(kind, &p) == 0.0 {
            prop_assert!(p.coords().iter().all(|&c| c == 0.0));
        } else {
            prop_assert!(vector::norm(kind, &p) > 0.0);
        }
    }

    #[test]
    fn homogeneity_within_contract(c in coords(1..=8), t in -50.0..50.0f64,
                                   kind in prop::sample::select(NormKind::ALL.to_vec())) {
        let x = Point::new(c).unwrap();
        let bound = 1e-9 * (1.0 + t.abs() * vector::norm(kind, &x));
        prop_assert!(homogeneity_defect(kind, t, &x) <= bound);
    }

    #[test]
    fn snowflake_identity_exponent_is_bit_exact(d in 0.0..1e6f64) {
        prop_assert_eq!(snowflake_distance(d, 1.0).unwrap().to_bits(), d.to_bits());
    }

    #[test]
    fn snowflake_inequality_and_chain(a in 0.0..100.0f64, b in 0.0..100.0f64, alpha in 0.001..=1.0f64) {
        let c = snowflake_inequality_holds(a, b, alpha, 1e-12).unwrap();
        prop_assert!(c.holds, "defect {}", c.defect);
        prop_assert!(c.chain_holds(1e-12));
    }

    #[test]
    fn snowflake_preserves_distance_order(
        center in coords(3..=3),
        others in prop::collection::vec(coords(3..=3), 2..30),
        alpha in prop::sample::select(vec![0.25, 0.5, 0.75, 1.0]),
    ) {
        let l2 = VectorMetric(NormKind::L2);
        let snow = Snowflake::new(l2, alpha).unwrap();
        let c = Point::new(center).unwrap();
        let pts: Vec<Point> = others.into_iter().map(|o| Point::new(o).unwrap()).collect();
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&i, &j| {
            l2.distance(&c, &pts[i]).unwrap().total_cmp(&l2.distance(&c, &pts[j]).unwrap())
        });
        // the base ordering is also an ordering of the snowflaked distances
        let snowed: Vec<f64> = order.iter().map(|&i| snow.distance(&c, &pts[i]).unwrap()).collect();
        prop_assert!(snowed.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn ultrametric_and_triangle(x in rational(), y in rational(), z in rational(), ctx in prime()) {
        let r = ctx.ultrametric_defect(&x, &y, &z);
        prop_assert!(r.holds);
        let sum = ctx.distance(&x, &y) + ctx.distance(&y, &z);
        prop_assert!(r.strong_rhs <= sum);
    }

    #[test]
    fn integers_have_padic_abs_at_most_one(n in -1_000_000i64..=1_000_000, ctx in prime()) {
        prop_assert!(ctx.abs(&Rational::from(n)) <= Rational::one());
    }

    #[test]
    fn isosceles(x in rational(), y in rational(), ctx in prime()) {
        let (ax, ay) = (ctx.abs(&x), ctx.abs(&y));
        if ax != ay {
            prop_assert_eq!(ctx.abs(&(&x + &y)), ax.max(ay));
        }
    }

    #[test]
    fn multiplicative(x in rational(), y in rational(), ctx in prime()) {
        prop_assert!(ctx.abs_multiplicativity_check(&x, &y));
    }

    #[test]
    fn abs_is_a_power_of_p(x in rational(), ctx in prime()) {
        let a = ctx.abs(&x);
        match ctx.valuation(&x) {
            Valuation::Infinity => prop_assert!(a.is_zero()),
            Valuation::Finite(j) => prop_assert_eq!(a, ctx.power(j)),
        }
    }

    #[test]
    fn geometric_identity(x in rational(), n in 0u32..=60) {
        prop_assert!(geometric_identity_residual(&x, n).is_zero());
    }

    #[test]
    fn standard_errors_shrink_by_abs_x(num in -999i64..=999, n in 0u32..40) {
        let x = Rational::new(num, 1000).unwrap();
        let m = SeriesMetric::Standard;
        let (e0, e1) = (limit_error(&x, n, &m).unwrap(), limit_error(&x, n + 1, &m).unwrap());
        if x.is_zero() {
            prop_assert!(e0.is_zero() && e1.is_zero());
        } else {
            prop_assert!(e1 < e0);
            prop_assert_eq!(e1 / e0, x.abs());
        }
    }

    #[test]
    fn chord_geodesic_relation(x in unit_vector(3), y in unit_vector(3)) {
        let d = geodesic_distance(&x, &y).unwrap();
        let c = chord_distance(&x, &y).unwrap();
        prop_assert!((2.0 * (d / 2.0).sin() - c).abs() <= 1e-9);
        prop_assert!(c <= d + 1e-12);
        prop_assert!(d <= std::f64::consts::FRAC_PI_2 * c + 1e-12);
        prop_assert!(d <= std::f64::consts::PI);
    }

    #[test]
    fn d1_below_dinf(f in pl_function(), g in pl_function()) {
        prop_assert!(d1_distance(&f, &g) <= dinf_distance(&f, &g) + 1e-12);
    }

    #[test]
    fn function_metrics_scale(f in pl_function(), g in pl_function(), c in -5.0..5.0f64) {
        let (cf, cg) = (f.scale(c), g.scale(c));
        prop_assert!((d1_distance(&cf, &cg) - c.abs() * d1_distance(&f, &g)).abs() <= 1e-12);
        prop_assert!((dinf_distance(&cf, &cg) - c.abs() * dinf_distance(&f, &g)).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn snowflaked_vector_metrics_stay_metrics(
        pts in prop::collection::vec(coords(4..=4), 2..20),
        kind in prop::sample::select(NormKind::ALL.to_vec()),
        alpha in prop::sample::select(vec![0.25, 0.5, 0.75, 1.0]),
    ) {
        let sample: Vec<Point> = pts.into_iter().map(|c| Point::new(c).unwrap()).collect();
        let base = verify_metric_axioms(&VectorMetric(kind), &sample, 1e-9).unwrap();
        prop_assert!(base.passed);
        let snow = Snowflake::new(VectorMetric(kind), alpha).unwrap();
        prop_assert!(verify_metric_axioms(&snow, &sample, 1e-9).unwrap().passed);
    }

    #[test]
    fn padic_axioms_hold_exactly(pts in prop::collection::vec(rational(), 2..25), ctx in prime()) {
        prop_assert!(verify_metric_axioms(&ctx, &pts, 0.0).unwrap().passed);
    }
}
