use num_traits::Zero;

use super::{bisecting_directions, certify_partition, Guarantee, Method, TransversalPartition};
use crate::error::{Error, Result};
use crate::geom::hyperplane::Line;
use crate::geom::point::{dot, Point, PointSet};
use crate::geom::predicates::{planar_general_position, IntFrame};
use crate::geom::rational::{harmonic, ln_upper, Rational};

/// An image on `h` of a point above the bisecting line.
#[derive(Clone, Debug, PartialEq)]
pub struct UpImage {
    pub index: usize,
    pub key: Rational,
    /// Lower images strictly left / right of this one.
    pub l: u64,
    pub r: u64,
}

/// Intermediate quantities of the planar construction, for reporting and plots.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarTrace {
    /// Through `q`; its left side is "up".
    pub bisector: Line,
    /// `(index, key)` of the lower points, sorted by key.
    pub down: Vec<(usize, Rational)>,
    /// Upper images sorted by key.
    pub up: Vec<UpImage>,
    /// Keys were negated (left-right mirror) so the left-heavy case applies.
    pub mirrored: bool,
    /// Triangles containing `q` with two vertices below the bisector.
    pub t_count: u64,
    pub sigma: u64,
    /// `|L|`, the upper images with at least as many lower images right as left.
    pub m: usize,
    pub big_m: u64,
    /// 1-based position in `L` attaining `big_m`.
    pub i_star: usize,
    /// `|X_down| >= n/2` held for the chosen bisector.
    pub down_majority: bool,
    pub x3_quarter: bool,
}

struct Sides {
    up: Vec<(usize, Rational)>,
    down: Vec<(usize, Rational)>,
}

/// Position of the central image on a horizontal line far below, measured
/// along `e`: `-(e . v) / (nu . v)` with `nu` the left normal of `e`. The
/// depth of `h` only scales it.
fn project(set: &PointSet, q: &Point, e: &[Rational]) -> Result<Sides> {
    let nu = [-e[1].clone(), e[0].clone()];
    let (mut up, mut down) = (Vec::new(), Vec::new());
    for (i, p) in set.points().iter().enumerate() {
        let v = p - q;
        let s = dot(&nu, &v);
        if s.is_zero() {
            return Err(Error::Degenerate(format!(
                "point {i} lies on the bisecting line"
            )));
        }
        let key = -dot(e, &v) / &s;
        if s > Rational::zero() {
            up.push((i, key));
        } else {
            down.push((i, key));
        }
    }
    up.sort_by(|a, b| a.1.cmp(&b.1));
    down.sort_by(|a, b| a.1.cmp(&b.1));
    let mut keys: Vec<&Rational> = up.iter().chain(&down).map(|(_, k)| k).collect();
    keys.sort();
    if keys.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Degenerate("two points are collinear with q".into()));
    }
    Ok(Sides { up, down })
}

/// `(l, r)` for each key of `up` against the sorted keys of `down`.
fn left_right(up: &[(usize, Rational)], down: &[(usize, Rational)]) -> Vec<(u64, u64)> {
    up.iter()
        .map(|(_, k)| {
            let l = down.partition_point(|(_, d)| d < k) as u64;
            (l, down.len() as u64 - l)
        })
        .collect()
}

fn t_count(up: &[(usize, Rational)], down: &[(usize, Rational)]) -> u64 {
    left_right(up, down).iter().map(|(l, r)| l * r).sum()
}

/// The planar construction with `|X_1||X_2||X_3| >= sigma / (16 ln n)`.
///
/// The bisecting line is turned horizontal, every point is projected
/// through `q` onto a horizontal line far below, and a triangle with two
/// lower vertices contains `q` exactly when the image of its upper vertex
/// lies between the other two images.
pub fn caradepth_partition_planar(set: &PointSet, q: &Point) -> Result<TransversalPartition> {
    if set.dim() != 2 {
        return Err(Error::UnsupportedDimension(set.dim()));
    }
    set.check_query(q)?;
    if !set.is_unit_weighted() {
        return Err(Error::Precondition(
            "the planar method needs distinct points".into(),
        ));
    }
    let n = set.len();
    if n < 3 {
        return Err(Error::Precondition(
            "at least three points are needed".into(),
        ));
    }
    if set.position(q).is_some() {
        return Err(Error::Precondition(
            "the query point belongs to the set".into(),
        ));
    }
    let mut all: Vec<&Point> = set.points().iter().collect();
    all.push(q);
    if !planar_general_position(&all) {
        return Err(Error::Degenerate(
            "X together with q is not in general position".into(),
        ));
    }
    let dirs = bisecting_directions(set, q);
    if dirs.is_empty() {
        return Err(Error::Internal("no bisecting line through q".into()));
    }
    // Orient each bisector so that the heavier triangle class has two lower
    // vertices; prefer a bisector whose lower side holds at least n/2 points.
    let mut chosen: Option<(Vec<Rational>, Sides, u64, u64)> = None;
    for e in dirs {
        let s = project(set, q, &e)?;
        let below = t_count(&s.up, &s.down);
        let above = t_count(&s.down, &s.up);
        let (e, s, t) = if below >= above {
            (e, s, below)
        } else {
            let flipped = vec![-e[0].clone(), -e[1].clone()];
            let s = Sides {
                up: s.down,
                down: s.up,
            };
            (flipped, s, above)
        };
        let majority = 2 * s.down.len() >= n;
        let better = chosen.is_none() || majority;
        if better {
            chosen = Some((e, s, t, below + above));
        }
        if majority {
            break;
        }
    }
    let (e, sides, t, sigma) = chosen.expect("nonempty bisector list");
    if sigma == 0 {
        return Err(Error::Precondition("no triangle of X contains q".into()));
    }
    if n <= 60 {
        let brute = brute_t_count(set, q, &sides)?;
        if brute != t {
            return Err(Error::Internal(format!(
                "|T| = {t} but direct count gives {brute}"
            )));
        }
    }
    let Sides { mut up, mut down } = sides;
    let mut lr = left_right(&up, &down);
    let sum_l: u64 = lr.iter().filter(|(l, r)| r >= l).map(|(l, r)| l * r).sum();
    let mirrored = 2 * sum_l < t;
    if mirrored {
        for (_, k) in up.iter_mut().chain(down.iter_mut()) {
            *k = -k.clone();
        }
        up.reverse();
        down.reverse();
        lr = left_right(&up, &down);
    }
    let images: Vec<UpImage> = up
        .iter()
        .zip(&lr)
        .map(|((index, key), &(l, r))| UpImage {
            index: *index,
            key: key.clone(),
            l,
            r,
        })
        .collect();
    let big_l: Vec<&UpImage> = images.iter().filter(|u| u.r >= u.l).collect();
    let m = big_l.len();
    let (mut big_m, mut i_star) = (0u64, 0usize);
    for (i, u) in big_l.iter().enumerate() {
        let term = u.l * (m - i) as u64;
        if term > big_m {
            big_m = term;
            i_star = i + 1;
        }
    }
    if big_m == 0 {
        return Err(Error::Internal(
            "the left-heavy class carries no triangles".into(),
        ));
    }
    let pivot = &big_l[i_star - 1].key;
    let last = &big_l[m - 1].key;
    let x1: Vec<usize> = down
        .iter()
        .filter(|(_, k)| k < pivot)
        .map(|(i, _)| *i)
        .collect();
    let x2: Vec<usize> = big_l[i_star - 1..].iter().map(|u| u.index).collect();
    let x3: Vec<usize> = down
        .iter()
        .filter(|(_, k)| k > last)
        .map(|(i, _)| *i)
        .collect();
    let product = (x1.len() * x2.len() * x3.len()) as u128;

    // M >= |T| / (2 n H_m)
    let lhs = Rational::from_integer(big_m.into())
        * Rational::from_integer((2 * n as u64).into())
        * harmonic(m as u64);
    if lhs < Rational::from_integer(t.into()) {
        return Err(Error::Internal(format!(
            "M = {big_m} is below |T| / (2n H_m)"
        )));
    }
    let bound = Rational::from_integer(sigma.into())
        / (Rational::from_integer(16.into()) * ln_upper(n as u64));
    if n >= 16 && Rational::from_integer(product.into()) < bound {
        return Err(Error::Internal(format!(
            "product {product} is below sigma / (16 ln n)"
        )));
    }
    let down_majority = 2 * down.len() >= n;
    let trace = PlanarTrace {
        bisector: Line::new(q.clone(), e)?,
        down,
        up: images,
        mirrored,
        t_count: t,
        sigma,
        m,
        big_m,
        i_star,
        down_majority,
        x3_quarter: 4 * x3.len() >= n,
    };
    let indices = vec![x1, x2, x3];
    let parts: Vec<PointSet> = indices.iter().map(|ix| set.subset(ix)).collect();
    let certification = certify_partition(&parts, q)?;
    if !certification.holds {
        return Err(Error::Internal(
            "planar partition failed certification".into(),
        ));
    }
    Ok(TransversalPartition {
        parts,
        indices,
        query: q.clone(),
        guarantee: Guarantee {
            method: Method::PlanarSigma,
            product,
            sigma_raw: Some(sigma),
            bound,
        },
        certification: Some(certification),
        trace: Some(trace),
        lines: vec![],
    })
}

/// Triangles with both lower vertices in `down` and one in `up` that contain `q`.
fn brute_t_count(set: &PointSet, q: &Point, sides: &Sides) -> Result<u64> {
    let pts: Vec<&Point> = set.points().iter().chain(std::iter::once(q)).collect();
    let f = IntFrame::new(pts.iter().copied());
    let qi = set.len();
    let orient = |a: usize, b: usize, c: usize| -> i8 {
        match &f {
            Some(f) => f.orient2(a, b, c),
            None => crate::geom::predicates::orient2d(pts[a], pts[b], pts[c]),
        }
    };
    let mut count = 0;
    for (x, _) in &sides.up {
        for (a, (y, _)) in sides.down.iter().enumerate() {
            for (z, _) in &sides.down[a + 1..] {
                let full = orient(*x, *y, *z);
                let s = [orient(*x, *y, qi), orient(*y, *z, qi), orient(*z, *x, qi)];
                if full != 0 && s.iter().all(|&o| o == full) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clusters() -> PointSet {
        PointSet::from_ints(&[
            &[10, 1],
            &[10, -1],
            &[-10, 9],
            &[-9, 10],
            &[-10, -9],
            &[-9, -10],
        ])
    }

    #[test]
    fn three_clusters() {
        let x = clusters();
        let p = caradepth_partition_planar(&x, &Point::origin(2)).unwrap();
        // X_1 and X_3 share one side of a bisecting line, so the product is at most 2 * 3.
        assert!(p.guarantee.product >= 4, "{:?}", p.sizes());
        assert_eq!(p.guarantee.sigma_raw, Some(8));
        assert!(p.certification.as_ref().unwrap().holds);
    }

    #[test]
    fn triangle_gives_singletons() {
        let x = PointSet::from_ints(&[&[3, 0], &[-1, 3], &[-1, -3]]);
        let p = caradepth_partition_planar(&x, &Point::origin(2)).unwrap();
        assert_eq!(p.sizes(), vec![1, 1, 1]);
        assert_eq!(p.guarantee.product, 1);
    }

    #[test]
    fn outside_query_is_rejected() {
        let x = PointSet::from_ints(&[&[3, 0], &[-1, 3], &[-1, -3]]);
        assert!(matches!(
            caradepth_partition_planar(&x, &Point::from_ints(&[50, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn collinear_with_q_is_degenerate() {
        let x = PointSet::from_ints(&[&[3, 0], &[-3, 0], &[0, 3], &[1, -3]]);
        assert!(matches!(
            caradepth_partition_planar(&x, &Point::origin(2)),
            Err(Error::Degenerate(_))
        ));
    }
}
