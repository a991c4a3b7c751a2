use caradepth::depth::{centerpoint, max_separable_subset, simplicial_depth, tukey_depth};
use caradepth::geom::{Point, PointSet, Rational};
use caradepth::oracles::{
    oracle_max_depth_2d, oracle_max_separable_subset, oracle_simplicial, oracle_tukey,
};
use proptest::prelude::*;

fn planar_set(max: usize, range: i64) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::btree_set((-range..=range, -range..=range), 1..=max)
        .prop_map(|s| s.into_iter().collect())
}

fn to_set(rows: &[(i64, i64)]) -> PointSet {
    PointSet::new(
        2,
        rows.iter()
            .map(|&(x, y)| Point::from_ints(&[x, y]))
            .collect(),
    )
    .unwrap()
}

fn raw(set: &PointSet) -> Vec<Vec<Rational>> {
    set.points().iter().map(|p| p.coords().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tukey_matches_oracle(rows in planar_set(12, 6), qx in -13i64..=13, qy in -13i64..=13) {
        let set = to_set(&rows);
        let q = Point::from_ratios(&[(qx, 2), (qy, 2)]);
        let fast = tukey_depth(&set, &q).unwrap().raw;
        let slow = oracle_tukey(&raw(&set), set.weights(), q.coords()).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn simplicial_matches_oracle(rows in planar_set(10, 5), qx in -11i64..=11, qy in -11i64..=11) {
        let set = to_set(&rows);
        let q = Point::from_ratios(&[(qx, 2), (qy, 2)]);
        let r = simplicial_depth(&set, &q).unwrap();
        let (count, boundary) = oracle_simplicial(&raw(&set), set.weights(), q.coords()).unwrap();
        prop_assert_eq!(r.raw, count);
        prop_assert_eq!(r.boundary_tuples, boundary);
    }

    #[test]
    fn centerpoint_is_a_tukey_median(rows in planar_set(9, 5)) {
        let set = to_set(&rows);
        let (_, r) = centerpoint(&set).unwrap();
        prop_assert_eq!(r.raw, oracle_max_depth_2d(&raw(&set)).unwrap());
    }

    #[test]
    fn separable_subset_is_maximum(rows in planar_set(10, 4), qx in -9i64..=9, qy in -9i64..=9) {
        let set = to_set(&rows);
        let q = Point::from_ratios(&[(qx, 2), (qy, 2)]);
        prop_assume!(set.position(&q).is_none());
        let (sub, h) = max_separable_subset(&set, &q).unwrap();
        prop_assert!(h.side_of(&q) < 0);
        for &i in &sub {
            prop_assert!(h.side_of(&set.points()[i]) > 0);
        }
        prop_assert_eq!(sub.len(), oracle_max_separable_subset(&raw(&set), q.coords()).unwrap());
    }

    #[test]
    fn tukey_3d_matches_oracle(
        rows in prop::collection::btree_set((-3i64..=3, -3i64..=3, -3i64..=3), 1..=8),
        q in (-5i64..=5, -5i64..=5, -5i64..=5),
    ) {
        let set = PointSet::new(3, rows.iter().map(|&(x, y, z)| Point::from_ints(&[x, y, z])).collect()).unwrap();
        let q = Point::from_ratios(&[(q.0, 2), (q.1, 2), (q.2, 2)]);
        let fast = tukey_depth(&set, &q).unwrap().raw;
        prop_assert_eq!(fast, oracle_tukey(&raw(&set), set.weights(), q.coords()).unwrap());
    }
}

#[test]
fn weighted_simplicial_counts_expanded_tuples() {
    let set = PointSet::with_weights(
        2,
        vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[4, 0]),
            Point::from_ints(&[0, 4]),
        ],
        vec![2, 1, 1],
    )
    .unwrap();
    let q = Point::from_ints(&[1, 1]);
    let r = simplicial_depth(&set, &q).unwrap();
    let (count, _) = oracle_simplicial(&raw(&set), set.weights(), q.coords()).unwrap();
    assert_eq!(r.raw, count);
    assert_eq!(r.raw, 2);
}
