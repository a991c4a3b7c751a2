use caradepth::depth::{centerpoint, tukey_depth};
use caradepth::geom::rational::ratio;
use caradepth::geom::{OrientedHyperplane, Point, PointSet, Rational};
use caradepth::projection::{
    evaluate_line, lemma2_witness, projection_depth, projection_depth_wrt,
};
use proptest::prelude::*;

fn planar_set(min: usize, max: usize, range: i64) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((-range..=range, -range..=range), min..=max).prop_map(|s| {
        PointSet::new(
            2,
            s.into_iter()
                .map(|(x, y)| Point::from_ints(&[x, y]))
                .collect(),
        )
        .unwrap()
    })
}

fn query(set: &PointSet, qx: i64, qy: i64) -> Option<Point> {
    let q = Point::from_ratios(&[(2 * qx + 1, 4), (2 * qy + 1, 4)]);
    set.position(&q).is_none().then_some(q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn global_value_dominates_tukey_depth(set in planar_set(3, 14, 6), qx in -12i64..=12, qy in -12i64..=12) {
        let q = query(&set, qx, qy).unwrap();
        let tau = tukey_depth(&set, &q).unwrap().normalized;
        let r = projection_depth(&set, &q).unwrap();
        prop_assert!(r.value >= tau.clone().min(ratio(1, 2)), "pi {} < tau {}", r.value, tau);
    }

    #[test]
    fn witness_line_meets_the_bound(
        set in planar_set(4, 16, 6),
        qx in -6i64..=6, qy in -6i64..=6,
        nx in -5i64..=5, ny in -5i64..=5,
    ) {
        prop_assume!(nx != 0 || ny != 0);
        let q = query(&set, qx, qy).unwrap();
        let tau = tukey_depth(&set, &q).unwrap().normalized;
        prop_assume!(tau > Rational::from_integer(0.into()));
        let pi = OrientedHyperplane::through(&q, vec![Rational::from_integer(nx.into()), Rational::from_integer(ny.into())]).unwrap();
        let Ok(best) = projection_depth_wrt(&set, &q, &pi) else {
            // every point of one open side lies on pi
            return Ok(());
        };
        prop_assume!(set.points().iter().all(|p| !pi.contains(p)));
        let eps = ratio(1, 100);
        let line = lemma2_witness(&set, &q, &pi, &eps).unwrap();
        let score = evaluate_line(&set, &q, &pi, &line).unwrap();
        prop_assert!(score >= tau.min(ratio(1, 2)) - eps);
        prop_assert!(best.value >= score);
        let w = best.witness_line.unwrap();
        prop_assert_eq!(evaluate_line(&set, &q, &pi, &w).unwrap(), best.value);
    }

    #[test]
    fn centerpoints_have_projection_depth_a_third(set in planar_set(3, 20, 8)) {
        let (c, _) = centerpoint(&set).unwrap();
        prop_assume!(set.position(&c).is_none());
        prop_assert!(projection_depth(&set, &c).unwrap().value >= ratio(1, 3));
    }
}
