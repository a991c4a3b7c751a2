use caradepth::caradepth::{
    caradepth_partition_general, caradepth_partition_planar, certify_partition,
};
use caradepth::depth::{simplicial_depth, tukey_depth};
use caradepth::geom::predicates::planar_general_position;
use caradepth::geom::rational::ln_upper;
use caradepth::geom::{Point, PointSet, Rational};
use caradepth::oracles::{oracle_transversal_containment, OracleBudget};
use caradepth::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Points with coordinates in `0..1000`, and a query near their centroid,
/// with `X + q` in general position.
fn instance(seed: u64, n: usize) -> (PointSet, Point) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Point> = (0..n)
            .map(|_| Point::from_ints(&[rng.gen_range(0..1000), rng.gen_range(0..1000)]))
            .collect();
        let Ok(set) = PointSet::new(2, pts) else {
            continue;
        };
        let k = Rational::from_integer((n as i64).into());
        let c: Vec<Rational> = (0..2)
            .map(|j| set.points().iter().map(|p| p[j].clone()).sum::<Rational>() / &k)
            .collect();
        let q = Point::new(vec![
            &c[0] + Rational::new(rng.gen_range(-99..100).into(), 997.into()),
            &c[1] + Rational::new(rng.gen_range(-99..100).into(), 991.into()),
        ])
        .unwrap();
        let mut all: Vec<&Point> = set.points().iter().collect();
        all.push(&q);
        if planar_general_position(&all) && tukey_depth(&set, &q).unwrap().raw > 0 {
            return (set, q);
        }
    }
}

fn raw_parts(parts: &[PointSet]) -> Vec<Vec<Vec<Rational>>> {
    parts
        .iter()
        .map(|p| p.points().iter().map(|x| x.coords().to_vec()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn planar_method_is_sound(seed in any::<u64>(), n in 3usize..40) {
        let (set, q) = instance(seed, n);
        let p = caradepth_partition_planar(&set, &q).unwrap();
        let sigma = simplicial_depth(&set, &q).unwrap().raw;
        prop_assert_eq!(p.guarantee.sigma_raw, Some(sigma));
        prop_assert!(p.certification.as_ref().unwrap().holds);
        let (ok, _) = oracle_transversal_containment(&raw_parts(&p.parts), q.coords(), OracleBudget::default());
        prop_assert!(ok);
        let product = Rational::from_integer(p.guarantee.product.into());
        if n >= 16 {
            prop_assert!(product >= Rational::from_integer(sigma.into()) / (Rational::from_integer(16.into()) * ln_upper(n as u64)));
        }
        let trace = p.trace.unwrap();
        prop_assert!(2 * trace.t_count >= trace.sigma);
        let mut seen = std::collections::BTreeSet::new();
        for ix in &p.indices {
            for i in ix {
                prop_assert!(seen.insert(*i), "parts overlap");
            }
        }
    }

    #[test]
    fn general_method_is_sound(seed in any::<u64>(), n in 6usize..30) {
        let (set, q) = instance(seed, n);
        let p = caradepth_partition_general(&set, &q).unwrap();
        prop_assert!(p.parts.iter().all(|s| !s.is_empty()));
        prop_assert!(p.certification.as_ref().unwrap().holds);
        let (ok, _) = oracle_transversal_containment(&raw_parts(&p.parts), q.coords(), OracleBudget::default());
        prop_assert!(ok);
    }
}

#[test]
fn corrupted_partition_fails() {
    let (set, q) = instance(11, 30);
    let p = caradepth_partition_planar(&set, &q).unwrap();
    // Move a point to the part on the other side: swap the first points of X_1 and X_2.
    let mut ix = p.indices.clone();
    let (a, b) = (ix[0][0], ix[1][0]);
    ix[0][0] = b;
    ix[1][0] = a;
    let parts: Vec<PointSet> = ix.iter().map(|i| set.subset(i)).collect();
    assert!(!certify_partition(&parts, &q).unwrap().holds);
}

#[test]
fn depth_zero_is_rejected() {
    let set = PointSet::from_ints(&[&[0, 0], &[5, 1], &[1, 5]]);
    let q = Point::from_ints(&[9, 9]);
    assert!(matches!(
        caradepth_partition_general(&set, &q),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        caradepth_partition_planar(&set, &q),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn hundred_points_meet_the_log_bound() {
    let (set, q) = instance(2024, 100);
    let p = caradepth_partition_planar(&set, &q).unwrap();
    let sigma = p.guarantee.sigma_raw.unwrap();
    assert_eq!(sigma, simplicial_depth(&set, &q).unwrap().raw);
    assert!(Rational::from_integer(p.guarantee.product.into()) >= p.guarantee.bound);
    assert!(p.certification.unwrap().exhaustive);
}
