use num_traits::{Signed, Zero};

use super::{DepthReport, DepthWitness};
use crate::error::{Error, Result};
use crate::geom::hyperplane::{Halfspace, OrientedHyperplane, Side};
use crate::geom::point::{dot, Point, PointSet};
use crate::geom::predicates::{orthogonal_complement, span_coordinates};
use crate::geom::rational::{ratio, Rational};

pub const MAX_TUKEY_DIM: usize = 6;

/// Halfspace (Tukey) depth of `q`: the least multiplicity-weighted number of
/// points in a closed halfspace containing `q`.
///
/// The minimum is attained by a halfspace whose boundary passes through `q`,
/// so `depth = n - max_u #{x : u . (x - q) > 0}`. The maximum over directions
/// `u` is found exactly by visiting every vertex of the central arrangement
/// `{u : u . (x - q) = 0}` and resolving the vectors that vanish at the vertex
/// with the same problem one dimension lower.
pub fn tukey_depth(set: &PointSet, q: &Point) -> Result<DepthReport> {
    set.check_query(q)?;
    let d = set.dim();
    if d > MAX_TUKEY_DIM {
        return Err(Error::UnsupportedDimension(d));
    }
    let n = set.n();
    let vectors: Vec<(Vec<Rational>, u64)> = set
        .iter()
        .map(|(p, w)| (p - q, w))
        .filter(|(v, _)| !v.iter().all(Zero::is_zero))
        .collect();
    let best = max_open_count(&vectors, d);
    let raw = n - best.count;
    let boundary = OrientedHyperplane::through(q, best.direction)?;
    let witness = Halfspace::closed(boundary, Side::Negative);
    debug_assert_eq!(
        set.iter()
            .filter(|(p, _)| witness.contains(p))
            .map(|(_, w)| w)
            .sum::<u64>(),
        raw
    );
    Ok(DepthReport {
        raw,
        normalized: if n == 0 {
            Rational::zero()
        } else {
            ratio(raw as i64, n as i64)
        },
        witness: DepthWitness::Halfspace(witness),
        boundary_tuples: 0,
    })
}

pub(crate) struct OpenCount {
    pub count: u64,
    pub direction: Vec<Rational>,
}

/// `max_u sum{w : v . u > 0}` over nonzero `vectors` in `R^k`, with a maximizer.
pub(crate) fn max_open_count(vectors: &[(Vec<Rational>, u64)], k: usize) -> OpenCount {
    let unit = |k: usize| {
        let mut e = vec![Rational::zero(); k];
        e[0] = Rational::from_integer(1.into());
        e
    };
    if vectors.is_empty() {
        return OpenCount {
            count: 0,
            direction: unit(k),
        };
    }
    let raw: Vec<Vec<Rational>> = vectors.iter().map(|(v, _)| v.clone()).collect();
    let cols = span_coordinates(&raw);
    if cols.len() < k {
        // Restrict to coordinates on which the span projects injectively; a
        // direction supported on those coordinates realizes every functional.
        let projected: Vec<(Vec<Rational>, u64)> = vectors
            .iter()
            .map(|(v, w)| (cols.iter().map(|&c| v[c].clone()).collect(), *w))
            .collect();
        let sub = max_open_count(&projected, cols.len());
        let mut direction = vec![Rational::zero(); k];
        for (c, x) in cols.iter().zip(sub.direction) {
            direction[*c] = x;
        }
        return OpenCount {
            count: sub.count,
            direction,
        };
    }
    if k == 1 {
        let pos: u64 = vectors
            .iter()
            .filter(|(v, _)| v[0].is_positive())
            .map(|(_, w)| w)
            .sum();
        let neg: u64 = vectors
            .iter()
            .filter(|(v, _)| v[0].is_negative())
            .map(|(_, w)| w)
            .sum();
        let sign = if pos >= neg { 1 } else { -1 };
        return OpenCount {
            count: pos.max(neg),
            direction: vec![Rational::from_integer(sign.into())],
        };
    }
    if k == 2 {
        return planar_open_count(vectors);
    }
    let total: u64 = vectors.iter().map(|(_, w)| w).sum();
    let mut best = OpenCount {
        count: 0,
        direction: unit(k),
    };
    let m = vectors.len();
    let mut subset: Vec<usize> = (0..k - 1).collect();
    loop {
        let rows: Vec<&[Rational]> = subset.iter().map(|&i| vectors[i].0.as_slice()).collect();
        if let Some(u0) = orthogonal_complement(&rows, k) {
            for flip in [false, true] {
                let u: Vec<Rational> = if flip {
                    u0.iter().map(|c| -c).collect()
                } else {
                    u0.clone()
                };
                let mut pos = 0u64;
                let mut zero = Vec::new();
                let mut rest = Vec::new();
                for (v, w) in vectors {
                    let s = dot(v, &u);
                    if s.is_positive() {
                        pos += w;
                        rest.push((v, s));
                    } else if s.is_zero() {
                        zero.push((v.clone(), *w));
                    } else {
                        rest.push((v, s));
                    }
                }
                let zero_weight: u64 = zero.iter().map(|(_, w)| w).sum();
                if pos + zero_weight <= best.count {
                    continue;
                }
                let sub = max_open_count(&zero, k);
                let count = pos + sub.count;
                if count > best.count {
                    best = OpenCount {
                        count,
                        direction: perturb(&u, &sub.direction, &rest),
                    };
                    if best.count == total {
                        return best;
                    }
                }
            }
        }
        if !next_combination(&mut subset, m) {
            break;
        }
    }
    best
}

fn cross(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Upper half (including the positive x axis) sorts before the lower half.
fn half(v: &[Rational]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| Rational::zero().cmp(&cross(a, b)))
}

/// Planar case by an angular sweep: an open halfplane through the origin
/// covers an open half-turn of directions, and a best one starts just before
/// some direction `theta` and holds everything in `[theta, theta + pi)`.
fn planar_open_count(vectors: &[(Vec<Rational>, u64)]) -> OpenCount {
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&a, &b| angle_cmp(&vectors[a].0, &vectors[b].0));
    // Group equal directions.
    let mut dirs: Vec<(&[Rational], u64)> = Vec::new();
    for &i in &order {
        let (v, w) = (&vectors[i].0, vectors[i].1);
        match dirs.last_mut() {
            Some((d, acc)) if angle_cmp(d, v).is_eq() => *acc += w,
            _ => dirs.push((v, w)),
        }
    }
    let m = dirs.len();
    if m == 1 {
        return OpenCount {
            count: dirs[0].1,
            direction: dirs[0].0.to_vec(),
        };
    }
    // Direction j (taken mod m, j in i..i+m) lies in [theta_i, theta_i + pi).
    let ahead = |i: usize, j: usize| {
        let (a, b) = (dirs[i].0, dirs[j % m].0);
        j == i || cross(a, b).is_positive()
    };
    let (mut best, mut best_i, mut best_end) = (0u64, 0usize, 1usize);
    let mut end = 0usize;
    let mut sum = 0u64;
    for i in 0..m {
        if end < i {
            end = i;
            sum = 0;
        }
        while end < i + m && ahead(i, end) {
            sum += dirs[end % m].1;
            end += 1;
        }
        if sum > best {
            (best, best_i, best_end) = (sum, i, end);
        }
        sum -= dirs[i].1;
    }
    // Lower end of the open half-turn: strictly after both the previous
    // direction and the reverse of the last covered one, strictly before theta_i.
    let vi = dirs[best_i].0;
    let prev = dirs[(best_i + m - 1) % m].0;
    let last = dirs[(best_end - 1) % m].0;
    let reversed: Vec<Rational> = last.iter().map(|c| -c).collect();
    let lower: &[Rational] = if angle_after(prev, &reversed, vi) {
        prev
    } else {
        &reversed
    };
    let c: Vec<Rational> = if cross(lower, vi).is_positive() {
        vec![&lower[0] + &vi[0], &lower[1] + &vi[1]]
    } else {
        vec![vi[1].clone(), -vi[0].clone()]
    };
    OpenCount {
        count: best,
        direction: vec![-c[1].clone(), c[0].clone()],
    }
}

/// Whether `a` comes no earlier than `b` when both are measured clockwise
/// back from `from`, i.e. `a` is closer to `from` going counterclockwise.
fn angle_after(a: &[Rational], b: &[Rational], from: &[Rational]) -> bool {
    // Rotate so that `from` sits at angle zero and compare reversed angles.
    let key = |v: &[Rational]| -> (u8, Vec<Rational>) {
        let x = &v[0] * &from[0] + &v[1] * &from[1];
        let y = cross(from, v);
        let r = vec![x, y];
        (half(&r), r)
    };
    let (ka, kb) = (key(a), key(b));
    // Larger counterclockwise angle from `from` means closer when walking back.
    match ka.0.cmp(&kb.0) {
        std::cmp::Ordering::Equal => !cross(&ka.1, &kb.1).is_positive(),
        o => o.is_gt(),
    }
}

/// `u + eps w` with `eps` small enough that no sign of `v . u != 0` changes.
fn perturb(u: &[Rational], w: &[Rational], rest: &[(&Vec<Rational>, Rational)]) -> Vec<Rational> {
    let mut eps: Option<Rational> = None;
    for (v, vu) in rest {
        let vw = dot(v, w);
        if vw.is_zero() {
            continue;
        }
        let limit = (vu / vw).abs();
        if eps.as_ref().is_none_or(|e| &limit < e) {
            eps = Some(limit);
        }
    }
    let eps = eps.map_or_else(
        || Rational::from_integer(1.into()),
        |e| e / Rational::from_integer(2.into()),
    );
    u.iter().zip(w).map(|(a, b)| a + &eps * b).collect()
}

/// Advances a sorted `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Largest subset of `set` whose convex hull misses `q`, with a hyperplane
/// strictly separating it from `q` (subset on the positive side).
///
/// Its weight is `n - tukey_depth(set, q)`: the complement of the witness
/// halfspace is an open halfspace avoiding `q`, and any subset missing `q` is
/// strictly separated from it, leaving at least the depth on `q`'s side.
pub fn max_separable_subset(set: &PointSet, q: &Point) -> Result<(Vec<usize>, OrientedHyperplane)> {
    set.check_query(q)?;
    if set.position(q).is_some() {
        return Err(Error::Precondition(
            "the query point belongs to the set".into(),
        ));
    }
    let report = tukey_depth(set, q)?;
    let DepthWitness::Halfspace(h) = report.witness else {
        unreachable!("tukey depth always reports a halfspace");
    };
    let u = h.boundary.normal().to_vec();
    let base = dot(&u, q.coords());
    let mut chosen = Vec::new();
    let mut margin: Option<Rational> = None;
    for (i, p) in set.points().iter().enumerate() {
        let s = dot(&u, p.coords()) - &base;
        if s.is_positive() {
            chosen.push(i);
            if margin.as_ref().is_none_or(|m| &s < m) {
                margin = Some(s);
            }
        }
    }
    let half = margin.map_or_else(
        || Rational::from_integer(1.into()),
        |m| m / Rational::from_integer(2.into()),
    );
    let plane = OrientedHyperplane::new(u, base + half)?;
    Ok((chosen, plane))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PointSet {
        PointSet::from_ints(&[
            &[0, 0],
            &[1, 0],
            &[2, 0],
            &[0, 1],
            &[2, 1],
            &[0, 2],
            &[1, 2],
            &[2, 2],
        ])
    }

    fn witness(r: &DepthReport) -> &Halfspace {
        match &r.witness {
            DepthWitness::Halfspace(h) => h,
            _ => panic!("expected halfspace"),
        }
    }

    #[test]
    fn triangle_examples() {
        let x = PointSet::from_ints(&[&[0, 0], &[4, 0], &[0, 4]]);
        let r = tukey_depth(&x, &Point::from_ints(&[1, 1])).unwrap();
        assert_eq!(r.raw, 1);
        assert!(witness(&r).contains(&Point::from_ints(&[1, 1])));
        assert_eq!(tukey_depth(&x, &Point::from_ints(&[5, 5])).unwrap().raw, 0);
    }

    #[test]
    fn grid_ring_has_depth_four() {
        let r = tukey_depth(&ring(), &Point::from_ints(&[1, 1])).unwrap();
        assert_eq!(r.raw, 4);
        assert_eq!(r.normalized, ratio(1, 2));
    }

    #[test]
    fn data_points_and_multiplicities_count() {
        let x = PointSet::with_weights(
            1,
            vec![
                Point::from_ints(&[0]),
                Point::from_ints(&[1]),
                Point::from_ints(&[2]),
            ],
            vec![1, 3, 1],
        )
        .unwrap();
        assert_eq!(tukey_depth(&x, &Point::from_ints(&[1])).unwrap().raw, 4);
        assert_eq!(tukey_depth(&x, &Point::from_ints(&[0])).unwrap().raw, 1);
    }

    #[test]
    fn collinear_points_in_the_plane() {
        let x = PointSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3]]);
        assert_eq!(tukey_depth(&x, &Point::from_ints(&[1, 1])).unwrap().raw, 2);
        assert_eq!(
            tukey_depth(&x, &Point::from_ratios(&[(3, 2), (3, 2)]))
                .unwrap()
                .raw,
            2
        );
        assert_eq!(tukey_depth(&x, &Point::from_ints(&[1, 2])).unwrap().raw, 0);
    }

    #[test]
    fn simplex_centroid_in_3d() {
        let x = PointSet::from_ints(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4]]);
        assert_eq!(
            tukey_depth(&x, &Point::from_ints(&[1, 1, 1])).unwrap().raw,
            1
        );
    }

    #[test]
    fn separable_subset_examples() {
        let tri = PointSet::from_ints(&[&[0, 0], &[3, 0], &[0, 3]]);
        let (sub, h) = max_separable_subset(&tri, &Point::from_ints(&[1, 1])).unwrap();
        assert_eq!(sub.len(), 2);
        assert!(h.side_of(&Point::from_ints(&[1, 1])) < 0);
        for i in sub {
            assert!(h.side_of(&tri.points()[i]) > 0);
        }
        let (sub, _) = max_separable_subset(&tri, &Point::from_ints(&[9, 9])).unwrap();
        assert_eq!(sub.len(), 3);
        let (sub, _) = max_separable_subset(&ring(), &Point::from_ints(&[1, 1])).unwrap();
        assert_eq!(sub.len(), 4);
        assert!(max_separable_subset(&tri, &Point::from_ints(&[0, 0])).is_err());
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
