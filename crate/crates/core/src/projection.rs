//! Projection Tukey depth in the plane.
//!
//! For a line `pi` through `q` with normal `nu`, the parallel lines
//! `pi_plus: nu . (y - q) = 1` and `pi_minus: nu . (y - q) = -1` receive the
//! central projections (from `q`) of the points strictly above and below `pi`.
//! A line through `q` meets both; its two intersections are scored by
//! one-dimensional Tukey depth and the smaller score counts.
//!
//! All positions on `pi_plus`/`pi_minus` are measured by the coordinate
//! `t . (y - q)` with `t = (nu_y, -nu_x)`. A line with direction `v` crosses
//! `pi_plus` at coordinate `s = t . v / nu . v` and `pi_minus` at `-s`, so
//! reflecting the lower images through `q` turns the problem into scoring a
//! single coordinate `s` against two sorted lists.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::depth::tukey_depth;
use crate::error::{Error, Result};
use crate::geom::hyperplane::{Line, OrientedHyperplane};
use crate::geom::point::{dot, Point, PointSet};
use crate::geom::rational::{rat, ratio, Rational};

/// Central projection of a planar set onto the two lines parallel to `pi`.
#[derive(Clone, Debug)]
pub struct ProjectionSplit {
    pub pi: OrientedHyperplane,
    pub pi_plus: OrientedHyperplane,
    pub pi_minus: OrientedHyperplane,
    /// Images on `pi_plus`, merged with multiplicities.
    pub x_plus: PointSet,
    pub x_minus: PointSet,
    /// Indices of the data points lying on `pi`; they have no image.
    pub on_pi: Vec<usize>,
    /// Per data point: +1 above `pi`, -1 below, 0 on it.
    pub side: Vec<i8>,
    /// Coordinates `t . (image - q)` of the upper images, sorted, weighted.
    pub plus_coords: Vec<(Rational, u64)>,
    /// Coordinates of the lower images reflected through `q`, sorted, weighted.
    pub minus_reflected: Vec<(Rational, u64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionDepthReport {
    pub value: Rational,
    /// A line through `q` attaining `value`; `None` when some `pi` has an
    /// empty side, which scores 0.
    pub witness_line: Option<Line>,
    pub witness_pi: OrientedHyperplane,
}

pub fn project_split(
    set: &PointSet,
    q: &Point,
    pi: &OrientedHyperplane,
) -> Result<ProjectionSplit> {
    project_split_at(set, q, pi, &rat(1))
}

/// Same as [`project_split`] with `pi_plus`/`pi_minus` at `nu . (y - q) = +-offset`.
pub fn project_split_at(
    set: &PointSet,
    q: &Point,
    pi: &OrientedHyperplane,
    offset: &Rational,
) -> Result<ProjectionSplit> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension(set.dim()));
    }
    set.check_query(q)?;
    if !pi.contains(q) {
        return Err(Error::Precondition("pi must pass through q".into()));
    }
    if !offset.is_positive() {
        return Err(Error::Precondition("offset must be positive".into()));
    }
    if set.position(q).is_some() {
        return Err(Error::Precondition(
            "the query point belongs to the set".into(),
        ));
    }
    let nu = pi.normal().to_vec();
    let t = vec![nu[1].clone(), -nu[0].clone()];
    let (mut plus, mut minus, mut plus_coords, mut minus_reflected) =
        (vec![], vec![], vec![], vec![]);
    let (mut on_pi, mut side) = (vec![], vec![]);
    for (i, (x, w)) in set.iter().enumerate() {
        let v = x - q;
        let s = dot(&nu, &v);
        if s.is_zero() {
            on_pi.push(i);
            side.push(0);
            continue;
        }
        let scale = offset / s.abs();
        let image = q.add(&v.iter().map(|c| c * &scale).collect::<Vec<_>>());
        let coord = dot(&t, &v) * &scale;
        if s.is_positive() {
            side.push(1);
            plus.push((image, w));
            plus_coords.push((coord, w));
        } else {
            side.push(-1);
            minus.push((image, w));
            minus_reflected.push((-coord, w));
        }
    }
    Ok(ProjectionSplit {
        pi: pi.clone(),
        pi_plus: OrientedHyperplane::through(
            &q.add(
                &nu.iter()
                    .map(|c| c * offset / dot(&nu, &nu))
                    .collect::<Vec<_>>(),
            ),
            nu.clone(),
        )?,
        pi_minus: OrientedHyperplane::through(
            &q.add(
                &nu.iter()
                    .map(|c| -(c * offset / dot(&nu, &nu)))
                    .collect::<Vec<_>>(),
            ),
            nu.clone(),
        )?,
        x_plus: merge_points(plus)?,
        x_minus: merge_points(minus)?,
        on_pi,
        side,
        plus_coords: merge_coords(plus_coords),
        minus_reflected: merge_coords(minus_reflected),
    })
}

fn merge_points(mut items: Vec<(Point, u64)>) -> Result<PointSet> {
    items.sort_by(|a, b| a.0.cmp(&b.0));
    let mut pts: Vec<Point> = Vec::new();
    let mut weights: Vec<u64> = Vec::new();
    for (p, w) in items {
        if pts.last() == Some(&p) {
            *weights.last_mut().unwrap() += w;
        } else {
            pts.push(p);
            weights.push(w);
        }
    }
    PointSet::with_weights(2, pts, weights)
}

fn merge_coords(mut items: Vec<(Rational, u64)>) -> Vec<(Rational, u64)> {
    items.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Rational, u64)> = Vec::new();
    for (c, w) in items {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += w,
            _ => out.push((c, w)),
        }
    }
    out
}

/// `min(#{s <= x}, #{s >= x}) / m` over a sorted weighted list.
pub fn depth_1d(sorted: &[(Rational, u64)], x: &Rational) -> Rational {
    let m: u64 = sorted.iter().map(|(_, w)| w).sum();
    if m == 0 {
        return Rational::zero();
    }
    let le: u64 = sorted
        .iter()
        .take_while(|(s, _)| s <= x)
        .map(|(_, w)| w)
        .sum();
    let ge: u64 = sorted
        .iter()
        .rev()
        .take_while(|(s, _)| s >= x)
        .map(|(_, w)| w)
        .sum();
    ratio(le.min(ge) as i64, m as i64)
}

impl ProjectionSplit {
    fn check_sides(&self) -> Result<()> {
        if self.plus_coords.is_empty() || self.minus_reflected.is_empty() {
            return Err(Error::Precondition(
                "one open side of pi holds no points".into(),
            ));
        }
        Ok(())
    }

    /// The line through `q` crossing `pi_plus` at coordinate `s`.
    pub fn line_at(&self, q: &Point, s: &Rational) -> Line {
        let nu = self.pi.normal();
        let t = [nu[1].clone(), -nu[0].clone()];
        let direction = vec![&nu[0] + s * &t[0], &nu[1] + s * &t[1]];
        Line::new(q.clone(), direction).expect("nu and t are independent")
    }

    /// Crossing coordinate of a line through `q`, or `None` if it is parallel to `pi`.
    pub fn coordinate_of(&self, line: &Line) -> Option<Rational> {
        let nu = self.pi.normal();
        let nv = dot(nu, &line.direction);
        if nv.is_zero() {
            return None;
        }
        let tv = &nu[1] * &line.direction[0] - &nu[0] * &line.direction[1];
        Some(tv / nv)
    }

    pub fn score(&self, s: &Rational) -> Rational {
        depth_1d(&self.plus_coords, s).min(depth_1d(&self.minus_reflected, s))
    }
}

/// Projection depth of `q` with respect to a fixed `pi`, maximized over lines.
pub fn projection_depth_wrt(
    set: &PointSet,
    q: &Point,
    pi: &OrientedHyperplane,
) -> Result<ProjectionDepthReport> {
    let split = project_split(set, q, pi)?;
    split.check_sides()?;
    let (value, s) = best_coordinate(&split);
    Ok(ProjectionDepthReport {
        value,
        witness_line: Some(split.line_at(q, &s)),
        witness_pi: pi.clone(),
    })
}

/// Score of one line through `q` (0 when it is parallel to `pi`).
pub fn evaluate_line(
    set: &PointSet,
    q: &Point,
    pi: &OrientedHyperplane,
    line: &Line,
) -> Result<Rational> {
    let split = project_split(set, q, pi)?;
    split.check_sides()?;
    Ok(split
        .coordinate_of(line)
        .map_or_else(Rational::zero, |s| split.score(&s)))
}

/// The scores are step functions of `s` that only change at image
/// coordinates, so the coordinates and the midpoints between them suffice.
fn best_coordinate(split: &ProjectionSplit) -> (Rational, Rational) {
    let mut events: Vec<Rational> = split
        .plus_coords
        .iter()
        .chain(&split.minus_reflected)
        .map(|(c, _)| c.clone())
        .collect();
    events.sort();
    events.dedup();
    let mut candidates = events.clone();
    candidates.extend(events.windows(2).map(|w| (&w[0] + &w[1]) / rat(2)));
    let mut best = (Rational::zero(), events[0].clone());
    for s in candidates {
        let v = split.score(&s);
        if v > best.0 {
            best = (v, s);
        }
    }
    best
}

/// Global projection depth: the minimum over lines `pi` through `q`.
pub fn projection_depth(set: &PointSet, q: &Point) -> Result<ProjectionDepthReport> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension(set.dim()));
    }
    if set.n() < 2 {
        return Err(Error::Precondition(
            "projection depth needs at least two points".into(),
        ));
    }
    set.check_query(q)?;
    let mut best: Option<ProjectionDepthReport> = None;
    for nu in candidate_normals(set, q) {
        let pi = OrientedHyperplane::through(q, nu)?;
        let split = project_split(set, q, &pi)?;
        let report = if split.check_sides().is_err() {
            ProjectionDepthReport {
                value: Rational::zero(),
                witness_line: None,
                witness_pi: pi,
            }
        } else {
            let (value, s) = best_coordinate(&split);
            ProjectionDepthReport {
                value,
                witness_line: Some(split.line_at(q, &s)),
                witness_pi: pi,
            }
        };
        if best.as_ref().is_none_or(|b| report.value < b.value) {
            let done = report.value.is_zero();
            best = Some(report);
            if done {
                break;
            }
        }
    }
    Ok(best.expect("at least two candidate normals"))
}

fn half(v: &[Rational]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn cross(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn by_angle(a: &[Rational], b: &[Rational]) -> Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| Rational::zero().cmp(&cross(a, b)))
}

/// One normal inside every open angular interval between the normals of
/// lines through `q` and a data point. Within such an interval the upper
/// images and the reflected lower images are all central projections of
/// vectors on one side of `pi`, so their order on `pi_plus` is their angular
/// order and the score cannot change.
fn candidate_normals(set: &PointSet, q: &Point) -> Vec<Vec<Rational>> {
    let mut dirs: Vec<Vec<Rational>> = Vec::new();
    for p in set.points() {
        let v = p - q;
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let perp = vec![-v[1].clone(), v[0].clone()];
        dirs.push(perp.iter().map(|c| -c).collect());
        dirs.push(perp);
    }
    if dirs.is_empty() {
        return vec![vec![rat(0), rat(1)]];
    }
    dirs.sort_by(|a, b| by_angle(a, b));
    dirs.dedup_by(|a, b| by_angle(a, b) == Ordering::Equal);
    let k = dirs.len();
    (0..k)
        .map(|i| {
            let (a, b) = (&dirs[i], &dirs[(i + 1) % k]);
            if cross(a, b).is_positive() {
                vec![&a[0] + &b[0], &a[1] + &b[1]]
            } else {
                vec![-a[1].clone(), a[0].clone()]
            }
        })
        .collect()
}

/// A line through `q` whose two projected images both have depth at least
/// `min(tau, 1/2) - epsilon`, built from the median intervals on `pi_plus`
/// of the upper images and of the reflected lower images. `pi` must avoid
/// the data points.
pub fn lemma2_witness(
    set: &PointSet,
    q: &Point,
    pi: &OrientedHyperplane,
    epsilon: &Rational,
) -> Result<Line> {
    if !epsilon.is_positive() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let tau = tukey_depth(set, q)?.normalized;
    if tau.is_zero() {
        return Err(Error::Precondition("q has Tukey depth 0".into()));
    }
    let split = project_split(set, q, pi)?;
    split.check_sides()?;
    if !split.on_pi.is_empty() {
        // The halfplane counting behind the guarantee breaks for points on pi.
        return Err(Error::Precondition("pi passes through a data point".into()));
    }
    let target = tau.min(ratio(1, 2)) - epsilon;
    let (lo_a, hi_a) = depth_interval(&split.plus_coords, &target);
    let (lo_b, hi_b) = depth_interval(&split.minus_reflected, &target);
    let lo = match (lo_a, lo_b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    };
    let hi = match (hi_a, hi_b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let s = match (lo, hi) {
        (Some(l), Some(h)) if l > h => {
            return Err(Error::Internal(format!(
                "median intervals are disjoint ({l} > {h})"
            )));
        }
        (Some(l), Some(h)) => (l + h) / rat(2),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => Rational::zero(),
    };
    Ok(split.line_at(q, &s))
}

/// `{s : depth_1d(sorted, s) >= target}` as a closed interval; `None`
/// endpoints are unbounded (only when `target <= 0`).
fn depth_interval(
    sorted: &[(Rational, u64)],
    target: &Rational,
) -> (Option<Rational>, Option<Rational>) {
    let m: u64 = sorted.iter().map(|(_, w)| w).sum();
    let need = (target * Rational::from_integer(m.into()))
        .ceil()
        .to_integer();
    if !need.is_positive() {
        return (None, None);
    }
    let need: u64 = need.try_into().unwrap_or(u64::MAX);
    let mut acc = 0;
    let lo = sorted.iter().find(|(_, w)| {
        acc += w;
        acc >= need
    });
    acc = 0;
    let hi = sorted.iter().rev().find(|(_, w)| {
        acc += w;
        acc >= need
    });
    (lo.map(|x| x.0.clone()), hi.map(|x| x.0.clone()))
}
