//! Halfspaces avoiding a query point, distances to convex bodies, the
//! depth-Helly witness search and the lift used for red/blue separation.

mod kirchberger;
mod witness;

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::geom::hyperplane::{Halfspace, OrientedHyperplane, Side};
use crate::geom::point::{dot, Point, PointSet};
use crate::geom::predicates::{orient2d, solve};
use crate::geom::rational::{ceil_int, Rational};

pub use kirchberger::{kirchberger_lift, kirchberger_witness, Color, KirchbergerWitness, Lifted};
pub use witness::{depth_helly_witness, HellyWitness, HELLY_BUDGET, MAX_HELLY_BODIES};

/// The convex hull of finitely many points.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexBody {
    pub id: String,
    pub vertices: PointSet,
}

impl ConvexBody {
    pub fn new(id: impl Into<String>, vertices: PointSet) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Precondition(
                "a convex body needs at least one vertex".into(),
            ));
        }
        Ok(Self {
            id: id.into(),
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.vertices.dim()
    }

    /// Hull vertices in counterclockwise order (planar bodies only).
    pub fn hull_2d(&self) -> Result<Vec<Point>> {
        if self.dim() != 2 {
            return Err(Error::UnsupportedDimension(self.dim()));
        }
        Ok(convex_hull_2d(self.vertices.points()))
    }

    /// Closed halfplanes whose intersection is the body.
    pub fn halfspaces(&self) -> Result<Vec<Halfspace>> {
        let hull = self.hull_2d()?;
        let geq = |normal: Vec<Rational>, at: &Point| -> Result<Halfspace> {
            Ok(Halfspace::closed(
                OrientedHyperplane::through(at, normal)?,
                Side::Positive,
            ))
        };
        let mut out = Vec::new();
        match hull.len() {
            1 => {
                let p = &hull[0];
                for (a, b) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    out.push(geq(
                        vec![
                            Rational::from_integer(a.into()),
                            Rational::from_integer(b.into()),
                        ],
                        p,
                    )?);
                }
            }
            2 => {
                let (a, b) = (&hull[0], &hull[1]);
                let u = b - a;
                let nu = vec![-u[1].clone(), u[0].clone()];
                out.push(geq(nu.clone(), a)?);
                out.push(geq(nu.iter().map(|c| -c).collect(), a)?);
                out.push(geq(u.clone(), a)?);
                out.push(geq(u.iter().map(|c| -c).collect(), b)?);
            }
            k => {
                for i in 0..k {
                    let (a, b) = (&hull[i], &hull[(i + 1) % k]);
                    let u = b - a;
                    out.push(geq(vec![-u[1].clone(), u[0].clone()], a)?);
                }
            }
        }
        Ok(out)
    }
}

/// An ordered list of convex bodies of one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    bodies: Vec<ConvexBody>,
    dim: usize,
}

impl Family {
    pub fn new(bodies: Vec<ConvexBody>) -> Result<Self> {
        let dim = bodies
            .first()
            .map(ConvexBody::dim)
            .ok_or_else(|| Error::Precondition("the family is empty".into()))?;
        for b in &bodies {
            check_dim(dim, b.dim())?;
        }
        Ok(Self { bodies, dim })
    }

    pub fn bodies(&self) -> &[ConvexBody] {
        &self.bodies
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Intersection point of the selected bodies, if they share one (planar).
    pub fn common_point(&self, selection: &[usize]) -> Result<Option<Point>> {
        let mut hs = Vec::new();
        for &i in selection {
            hs.extend(self.bodies[i].halfspaces()?);
        }
        crate::geom::lp::lp_feasible(&hs, self.dim)
    }
}

/// Monotone chain; collinear boundary points are dropped, and a collinear
/// input reduces to its two extremes.
pub(crate) fn convex_hull_2d(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<&Point> = points.iter().collect();
    pts.sort_by(|a, b| a.coords().cmp(b.coords()));
    pts.dedup();
    if pts.len() <= 2 {
        return pts.into_iter().cloned().collect();
    }
    let mut hull: Vec<&Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &&Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull.into_iter().cloned().collect()
}

/// The closed halfspace `{y : (y - x) . (q - x) <= 0}` for every `x` in `X`.
/// Each avoids `q`, and together they have empty intersection exactly when
/// `q` lies in the convex hull of `X`.
pub fn caratheodory_halfspaces(set: &PointSet, q: &Point) -> Result<Vec<Halfspace>> {
    set.check_query(q)?;
    set.points()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let normal = q - x;
            if normal.iter().all(Zero::is_zero) {
                return Err(Error::Precondition(format!(
                    "point {i} coincides with the query"
                )));
            }
            Ok(Halfspace::closed(
                OrientedHyperplane::through(x, normal)?,
                Side::Negative,
            ))
        })
        .collect()
}

/// Squared Euclidean distance from `x` to the hull of the body's vertices,
/// with the nearest point.
///
/// The nearest point is the orthogonal projection of `x` onto the affine hull
/// of some affinely independent vertex subset, landing inside that simplex;
/// every such candidate is tried.
pub fn dist_to_hull(x: &Point, body: &ConvexBody) -> Result<(Rational, Point)> {
    check_dim(body.dim(), x.dim())?;
    if body.dim() == 2 {
        return nearest_2d(x, &convex_hull_2d(body.vertices.points()));
    }
    let verts: Vec<&Point> = body.vertices.points().iter().collect();
    let d = body.dim();
    let mut best: Option<(Rational, Point)> = None;
    let mut consider = |p: Point| {
        let d2 = p.squared_distance(x);
        if best.as_ref().is_none_or(|(b, _)| &d2 < b) {
            best = Some((d2, p));
        }
    };
    let k = verts.len();
    for size in 1..=(d + 1).min(k) {
        for subset in combinations(k, size) {
            let s: Vec<&Point> = subset.iter().map(|&i| verts[i]).collect();
            if let Some(p) = project_onto_simplex(x, &s) {
                consider(p);
            }
        }
    }
    Ok(best.expect("a nonempty body has a nearest point"))
}

fn nearest_2d(x: &Point, hull: &[Point]) -> Result<(Rational, Point)> {
    let k = hull.len();
    if k >= 3 && (0..k).all(|i| orient2d(&hull[i], &hull[(i + 1) % k], x) >= 0) {
        return Ok((Rational::zero(), x.clone()));
    }
    let mut best: Option<(Rational, Point)> = None;
    let edges: Vec<(usize, usize)> = match k {
        1 => vec![(0, 0)],
        2 => vec![(0, 1)],
        _ => (0..k).map(|i| (i, (i + 1) % k)).collect(),
    };
    for (i, j) in edges {
        let p = nearest_on_segment(x, &hull[i], &hull[j]);
        let d2 = p.squared_distance(x);
        if best.as_ref().is_none_or(|(b, _)| &d2 < b) {
            best = Some((d2, p));
        }
    }
    Ok(best.expect("a nonempty hull"))
}

fn nearest_on_segment(x: &Point, a: &Point, b: &Point) -> Point {
    let u = b - a;
    let uu = dot(&u, &u);
    if uu.is_zero() {
        return a.clone();
    }
    let t = dot(&(x - a), &u) / uu;
    if t <= Rational::zero() {
        a.clone()
    } else if t >= Rational::one() {
        b.clone()
    } else {
        a.lerp(b, &t)
    }
}

/// Projection of `x` onto `aff(s)` if it falls in the closed simplex `s`.
fn project_onto_simplex(x: &Point, s: &[&Point]) -> Option<Point> {
    let base = s[0];
    let edges: Vec<Vec<Rational>> = s[1..].iter().map(|p| *p - base).collect();
    if edges.is_empty() {
        return Some(base.clone());
    }
    let gram: Vec<Vec<Rational>> = edges
        .iter()
        .map(|a| edges.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Rational> = edges.iter().map(|e| dot(e, &(x - base))).collect();
    let lambda = solve(&gram, &rhs)?;
    let sum: Rational = lambda.iter().sum();
    if lambda.iter().any(|l| l < &Rational::zero()) || sum > Rational::one() {
        return None;
    }
    let mut p = base.clone();
    for (l, e) in lambda.iter().zip(&edges) {
        p = p.add(&e.iter().map(|c| c * l).collect::<Vec<_>>());
    }
    Some(p)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `ceil(beta n)`, the size of the subfamilies considered.
pub fn subfamily_size(n: usize, beta: &Rational) -> Result<usize> {
    if beta <= &Rational::zero() || beta > &Rational::one() {
        return Err(Error::Precondition("beta must lie in (0, 1]".into()));
    }
    let k = ceil_int(&(beta * Rational::from_integer(n.into())));
    Ok(k.try_into().unwrap_or(n).max(1))
}

/// `f(x)`: the least, over subfamilies of `ceil(beta n)` bodies, of the
/// largest squared distance from `x` to a member. The minimizing subfamily
/// is the `ceil(beta n)` nearest bodies, returned with the value.
pub fn f_eval(x: &Point, family: &Family, beta: &Rational) -> Result<(Rational, Vec<usize>)> {
    let k = subfamily_size(family.len(), beta)?;
    let mut dists: Vec<(Rational, usize)> = family
        .bodies()
        .iter()
        .enumerate()
        .map(|(i, b)| dist_to_hull(x, b).map(|(d, _)| (d, i)))
        .collect::<Result<_>>()?;
    dists.sort();
    let value = dists[k - 1].0.clone();
    let mut selected: Vec<usize> = dists[..k].iter().map(|(_, i)| *i).collect();
    selected.sort_unstable();
    Ok((value, selected))
}
