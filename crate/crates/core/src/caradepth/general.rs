use num_traits::{Signed, Zero};

use super::{bisecting_directions, certify_partition, Guarantee, Method, TransversalPartition};
use crate::depth::tukey_depth;
use crate::error::{Error, Result};
use crate::geom::hyperplane::{Line, OrientedHyperplane};
use crate::geom::point::{dot, Point, PointSet};
use crate::geom::predicates::{planar_general_position, simplex_contains};
use crate::geom::rational::{ratio, Rational};
use crate::projection::{lemma2_witness, project_split};
use crate::same_type::{same_type_fraction, same_type_refine, ColoredFamily};

/// Depth Carathéodory partition by projection and same-type refinement.
///
/// In dimension 1 the parts are the points left and right of `q`. In the
/// plane a bisecting line `pi` through `q` is chosen, a line `l` through `q`
/// whose crossings `q+`, `q-` with the parallels of `pi` are deep in the
/// projected sets, and each side is split at its crossing into two parts.
/// Any choice of one point per part surrounds `q`; after refining the four
/// parts and `{q}` to the same type, one representative triangle containing
/// `q` names the three parts to return.
pub fn caradepth_partition_general(set: &PointSet, q: &Point) -> Result<TransversalPartition> {
    set.check_query(q)?;
    if set.position(q).is_some() {
        return Err(Error::Precondition(
            "the query point belongs to the set".into(),
        ));
    }
    let tau = tukey_depth(set, q)?;
    if tau.raw == 0 {
        return Err(Error::Precondition("q has Tukey depth 0".into()));
    }
    match set.dim() {
        1 => Ok(line_split(set, q, tau.raw)),
        2 => planar(set, q, &tau.normalized),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn line_split(set: &PointSet, q: &Point, depth: u64) -> TransversalPartition {
    let left: Vec<usize> = (0..set.len())
        .filter(|&i| set.points()[i][0] < q[0])
        .collect();
    let right: Vec<usize> = (0..set.len())
        .filter(|&i| set.points()[i][0] > q[0])
        .collect();
    let parts = vec![set.subset(&left), set.subset(&right)];
    let product = (parts[0].n() * parts[1].n()) as u128;
    TransversalPartition {
        parts,
        indices: vec![left, right],
        query: q.clone(),
        guarantee: Guarantee {
            method: Method::General,
            product,
            sigma_raw: Some(product as u64),
            bound: Rational::from_integer(depth.into()),
        },
        certification: None,
        trace: None,
        lines: vec![],
    }
}

fn planar(set: &PointSet, q: &Point, tau: &Rational) -> Result<TransversalPartition> {
    let n = set.len();
    let mut all: Vec<&Point> = set.points().iter().collect();
    all.push(q);
    if !planar_general_position(&all) {
        return Err(Error::Degenerate(
            "X together with q is not in general position".into(),
        ));
    }
    let e = bisecting_directions(set, q)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no bisecting line through q".into()))?;
    let pi = OrientedHyperplane::through(q, vec![-e[1].clone(), e[0].clone()])?;
    let split = project_split(set, q, &pi)?;
    let eps = ratio(1, 2 * n as i64);
    let witness = lemma2_witness(set, q, &pi, &eps)?;
    let s = split
        .coordinate_of(&witness)
        .ok_or_else(|| Error::Internal("witness line is parallel to pi".into()))?;

    // Image coordinates of the data points on pi_plus (upper) and, reflected, of the lower ones.
    let nu = pi.normal();
    let t = [nu[1].clone(), -nu[0].clone()];
    let coord = |i: usize| -> Rational {
        let v = &set.points()[i] - q;
        let sv = dot(nu, &v);
        let c = dot(&t, &v) / sv.abs();
        if sv > Rational::zero() {
            c
        } else {
            -c
        }
    };
    let split_at = |s: &Rational| -> [Vec<usize>; 4] {
        let mut out: [Vec<usize>; 4] = Default::default();
        for (i, &side) in split.side.iter().enumerate() {
            let c = coord(i);
            let slot = match (side, c.cmp(s)) {
                (_, std::cmp::Ordering::Equal) | (0, _) => continue,
                (1, std::cmp::Ordering::Less) => 0,
                (1, _) => 1,
                (_, std::cmp::Ordering::Less) => 2,
                _ => 3,
            };
            out[slot].push(i);
        }
        out
    };
    let mut groups = split_at(&s);
    let mut line = witness;
    if groups.iter().any(Vec::is_empty) {
        // The witness crosses at a data image; move to the best strictly separating coordinate.
        let mut coords: Vec<Rational> = (0..n).filter(|&i| split.side[i] != 0).map(coord).collect();
        coords.sort();
        coords.dedup();
        let best = coords
            .windows(2)
            .map(|w| (&w[0] + &w[1]) / Rational::from_integer(2.into()))
            .max_by_key(|c| split_at(c).iter().map(Vec::len).min().unwrap_or(0))
            .ok_or_else(|| Error::Internal("too few projected points".into()))?;
        groups = split_at(&best);
        line = split.line_at(q, &best);
        if groups.iter().any(Vec::is_empty) {
            return Err(Error::Internal(
                "no line splits both projected sides".into(),
            ));
        }
    }
    let mut sets: Vec<PointSet> = groups.iter().map(|g| set.subset(g)).collect();
    sets.push(PointSet::new(2, vec![q.clone()])?);
    let cert = same_type_refine(&ColoredFamily::new(sets)?)?;
    let z: Vec<&Point> = cert.subsets[..4].iter().map(|s| &s.points()[0]).collect();
    let triple = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .into_iter()
        .find(|tr| {
            let tri: Vec<&Point> = tr.iter().map(|&i| z[i]).collect();
            simplex_contains(&tri, q).is_some_and(|p| p.contains())
        })
        .ok_or_else(|| Error::Internal("q is in no representative triangle".into()))?;
    let indices: Vec<Vec<usize>> = triple
        .iter()
        .map(|&g| cert.kept[g].iter().map(|&k| groups[g][k]).collect())
        .collect();
    let parts: Vec<PointSet> = indices.iter().map(|ix| set.subset(ix)).collect();
    let product = parts.iter().map(|p| p.len() as u128).product();
    let delta = tau.clone().min(ratio(1, 2));
    let bound = same_type_fraction(5) * delta * Rational::from_integer((n / 2).into());
    let certification = certify_partition(&parts, q)?;
    if !certification.holds {
        return Err(Error::Internal(
            "general partition failed certification".into(),
        ));
    }
    Ok(TransversalPartition {
        parts,
        indices,
        query: q.clone(),
        guarantee: Guarantee {
            method: Method::General,
            product,
            sigma_raw: None,
            bound,
        },
        certification: Some(certification),
        trace: None,
        lines: vec![Line::new(q.clone(), e)?, line],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_split() {
        let x = PointSet::new(
            1,
            [-3, -1, 2, 5]
                .iter()
                .map(|&v| Point::from_ints(&[v]))
                .collect(),
        )
        .unwrap();
        let p = caradepth_partition_general(&x, &Point::origin(1)).unwrap();
        assert_eq!(p.indices, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn three_clusters() {
        let x = PointSet::from_ints(&[
            &[10, 1],
            &[10, -1],
            &[-10, 9],
            &[-9, 10],
            &[-10, -9],
            &[-9, -10],
        ]);
        let mut p = caradepth_partition_general(&x, &Point::origin(2)).unwrap();
        assert!(p.certify().unwrap().holds);
        assert!(p.parts.iter().all(|s| !s.is_empty()));
    }
}
