use super::tukey::tukey_depth;
use super::DepthReport;
use crate::error::{Error, Result};
use crate::geom::hyperplane::{Halfspace, OrientedHyperplane, Side};
use crate::geom::lp::lp_feasible;
use crate::geom::point::{Point, PointSet};
use crate::geom::predicates::{orient2d, rank, IntFrame};
use crate::geom::rational::{rat, Rational};

/// A point of large Tukey depth.
///
/// In dimensions 1 and 2 the result is a Tukey median (maximum depth, at
/// least `ceil(n / (d + 1))`). In the plane the depth-`k` region is the
/// intersection of the closed halfplanes bounded by lines through two data
/// points whose opposite open side holds fewer than `k` points; the largest
/// `k` with a nonempty region is found by binary search over exact LPs, and
/// the LP returns a vertex of that region. Higher dimensions are best effort
/// over a small candidate set.
pub fn centerpoint(set: &PointSet) -> Result<(Point, DepthReport)> {
    if set.is_empty() {
        return Err(Error::Precondition("centerpoint of an empty set".into()));
    }
    let point = match set.dim() {
        1 => weighted_median_1d(set),
        2 => planar_median(set)?,
        _ => best_candidate(set)?,
    };
    let report = tukey_depth(set, &point)?;
    let d = set.dim() as u64;
    let guaranteed = set.n().div_ceil(d + 1);
    if set.dim() <= 2 && report.raw < guaranteed {
        return Err(Error::Internal(format!(
            "centerpoint depth {} below the guaranteed {}",
            report.raw, guaranteed
        )));
    }
    Ok((point, report))
}

fn weighted_median_1d(set: &PointSet) -> Point {
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by(|&a, &b| set.points()[a][0].cmp(&set.points()[b][0]));
    let half = set.n().div_ceil(2);
    let mut acc = 0;
    for &i in &order {
        acc += set.weight(i);
        if acc >= half {
            return set.points()[i].clone();
        }
    }
    set.points()[order[order.len() - 1]].clone()
}

struct PairLine {
    i: usize,
    j: usize,
    left: u64,
    right: u64,
}

fn planar_median(set: &PointSet) -> Result<Point> {
    let pts = set.points();
    let n = set.n();
    let diffs: Vec<Vec<Rational>> = pts.iter().skip(1).map(|p| p - &pts[0]).collect();
    if rank(&diffs) <= 1 {
        // Collinear input: depth along the line is the one-dimensional depth.
        let dir = diffs
            .first()
            .cloned()
            .unwrap_or_else(|| vec![rat(1), rat(0)]);
        let line = PointSet::with_weights(
            1,
            pts.iter()
                .map(|p| Point::new(vec![p.dot(&dir)]).unwrap())
                .collect(),
            set.weights().to_vec(),
        )?;
        let m = weighted_median_1d(&line);
        let idx = line.position(&m).expect("median is a data point");
        return Ok(pts[idx].clone());
    }
    // Work in integer coordinates when possible; depth is invariant under the scaling.
    let frame = IntFrame::new(pts.iter());
    let scaled: Vec<Point> = match &frame {
        Some(f) => f.coords.iter().map(|c| Point::from_ints(c)).collect(),
        None => pts.to_vec(),
    };
    let orient = |a: usize, b: usize, c: usize| -> i8 {
        match &frame {
            Some(f) => f.orient2(a, b, c),
            None => orient2d(&pts[a], &pts[b], &pts[c]),
        }
    };
    let m = pts.len();
    let mut lines = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let (mut left, mut right) = (0, 0);
            for k in 0..m {
                match orient(i, j, k) {
                    1 => left += set.weight(k),
                    -1 => right += set.weight(k),
                    _ => {}
                }
            }
            lines.push(PairLine { i, j, left, right });
        }
    }
    // Each line through two data points bounds at most two constraints: the
    // closed side opposite an open side with fewer than `k` points.
    let mut planes = Vec::with_capacity(2 * lines.len());
    for l in &lines {
        let (a, b) = (&scaled[l.i], &scaled[l.j]);
        let normal = vec![-(&b[1] - &a[1]), &b[0] - &a[0]];
        let h = OrientedHyperplane::through(a, normal)?;
        planes.push((l.right, Halfspace::closed(h.clone(), Side::Positive)));
        planes.push((l.left, Halfspace::closed(h, Side::Negative)));
    }
    let scaled_set = PointSet::with_weights(2, scaled.clone(), set.weights().to_vec())?;
    // The depth-k region, by constraint generation: start from the lines
    // with exactly k-1 points outside, accept an LP point once its exact
    // depth reaches k, otherwise add the constraints it violates. A subset
    // of the constraints being infeasible already proves emptiness.
    let region = |k: u64| -> Result<Option<(Point, u64)>> {
        let mut active: Vec<bool> = planes
            .iter()
            .map(|(outside, _)| *outside + 1 == k)
            .collect();
        loop {
            let hs: Vec<Halfspace> = planes
                .iter()
                .zip(&active)
                .filter(|(_, &on)| on)
                .map(|((_, h), _)| h.clone())
                .collect();
            let Some(p) = lp_feasible(&hs, 2)? else {
                return Ok(None);
            };
            let depth = tukey_depth(&scaled_set, &p)?.raw;
            if depth >= k {
                return Ok(Some((p, depth)));
            }
            let mut added = false;
            for ((outside, h), on) in planes.iter().zip(active.iter_mut()) {
                if !*on && *outside < k && !h.contains(&p) {
                    *on = true;
                    added = true;
                }
            }
            if !added {
                return Ok(Some((p, depth)));
            }
        }
    };
    let unscale = |p: Point| -> Point {
        match &frame {
            Some(f) => p.scaled(&Rational::new(1.into(), f.scale.clone())),
            None => p,
        }
    };
    let guaranteed = n.div_ceil(3);
    let (mut best, mut lo) = match region(guaranteed)? {
        Some((p, depth)) if depth >= guaranteed => (unscale(p), depth),
        _ => return fallback(set, guaranteed),
    };
    let mut hi = n + 1;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match region(mid)? {
            Some((p, depth)) if depth >= mid => {
                lo = depth;
                best = unscale(p);
            }
            Some(_) => return fallback(set, guaranteed),
            None => hi = mid,
        }
    }
    if tukey_depth(set, &best)?.raw >= lo {
        Ok(best)
    } else {
        fallback(set, guaranteed)
    }
}

fn fallback(set: &PointSet, guaranteed: u64) -> Result<Point> {
    let p = best_candidate(set)?;
    if tukey_depth(set, &p)?.raw < guaranteed {
        return Err(Error::Degenerate(
            "depth region is degenerate and no candidate reaches the centerpoint bound".into(),
        ));
    }
    Ok(p)
}

/// Deepest of: data points, centroid, coordinate-wise median.
fn best_candidate(set: &PointSet) -> Result<Point> {
    let d = set.dim();
    let n = Rational::from_integer(set.n().into());
    let mut centroid = vec![rat(0); d];
    for (p, w) in set.iter() {
        for (c, x) in centroid.iter_mut().zip(p.coords()) {
            *c += x * Rational::from_integer(w.into());
        }
    }
    let centroid = Point::new(centroid.into_iter().map(|c| c / &n).collect())?;
    let median = Point::new(
        (0..d)
            .map(|axis| {
                let coord = PointSet::from_multiset(
                    1,
                    set.expanded()
                        .iter()
                        .map(|p| Point::new(vec![p[axis].clone()]).unwrap())
                        .collect(),
                )
                .map(|(s, _)| weighted_median_1d(&s)[0].clone())
                .unwrap_or_else(|_| rat(0));
                coord
            })
            .collect(),
    )?;
    let mut best: Option<(u64, Point)> = None;
    for cand in std::iter::once(centroid)
        .chain(std::iter::once(median))
        .chain(set.points().iter().cloned())
    {
        let depth = tukey_depth(set, &cand)?.raw;
        if best.as_ref().is_none_or(|(b, _)| depth > *b) {
            best = Some((depth, cand));
        }
    }
    Ok(best.expect("nonempty candidate list").1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_points() {
        let x = PointSet::from_ints(&[&[0, 0], &[4, 0], &[0, 4]]);
        let (_, r) = centerpoint(&x).unwrap();
        assert_eq!(r.raw, 1);
    }

    #[test]
    fn grid_ring_reaches_four() {
        let x = PointSet::from_ints(&[
            &[0, 0],
            &[1, 0],
            &[2, 0],
            &[0, 1],
            &[2, 1],
            &[0, 2],
            &[1, 2],
            &[2, 2],
        ]);
        let (_, r) = centerpoint(&x).unwrap();
        assert_eq!(r.raw, 4);
    }

    #[test]
    fn one_dimensional_median() {
        let x = PointSet::from_ints(&[&[5], &[1], &[3], &[9]]);
        let (p, r) = centerpoint(&x).unwrap();
        assert_eq!(r.raw, 2);
        assert!(p == Point::from_ints(&[3]) || p == Point::from_ints(&[5]));
    }

    #[test]
    fn collinear_plane_input() {
        let x = PointSet::from_ints(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3], &[4, 4]]);
        let (p, r) = centerpoint(&x).unwrap();
        assert_eq!(p, Point::from_ints(&[2, 2]));
        assert_eq!(r.raw, 3);
    }

    #[test]
    fn fractional_coordinates_use_scaled_frame() {
        let x = PointSet::new(
            2,
            vec![
                Point::from_ratios(&[(0, 1), (0, 1)]),
                Point::from_ratios(&[(7, 2), (1, 3)]),
                Point::from_ratios(&[(1, 5), (9, 4)]),
                Point::from_ratios(&[(3, 1), (3, 1)]),
                Point::from_ratios(&[(-1, 7), (2, 1)]),
            ],
        )
        .unwrap();
        let (p, r) = centerpoint(&x).unwrap();
        assert_eq!(tukey_depth(&x, &p).unwrap().raw, r.raw);
        assert!(r.raw >= 2);
    }

    #[test]
    fn empty_set_is_an_error() {
        let x = PointSet::new(2, vec![]).unwrap();
        assert!(centerpoint(&x).is_err());
    }
}
