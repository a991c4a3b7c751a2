use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{convex_hull_2d, dist_to_hull, f_eval, subfamily_size, Family};
use crate::caradepth::{
    caradepth_partition_general, caradepth_partition_planar, TransversalPartition,
};
use crate::error::{Error, Result};
use crate::geom::point::{Point, PointSet};
use crate::geom::predicates::simplex_contains;
use crate::geom::rational::{from_f64, to_f64, Rational};

pub const MAX_HELLY_BODIES: usize = 40;
/// Colorful triples checked exhaustively up to this many, sampled beyond.
pub const HELLY_BUDGET: u128 = 100_000;

const GRID: usize = 4;
const REL_TOL: f64 = 1e-9;
const MAX_ITER: usize = 4000;

#[derive(Clone, Debug, PartialEq)]
pub enum HellyWitness {
    /// `ceil(beta n)` bodies sharing `common_point`.
    Intersecting {
        subfamily: Vec<usize>,
        common_point: Point,
    },
    /// Every choice of one body per class has empty intersection.
    Colorful {
        color_classes: Vec<Vec<usize>>,
        verified_empty: bool,
        exhaustive: bool,
        checked: u128,
        q_star: Point,
        /// Squared distance value of `f` at `q_star`.
        f_value: Rational,
        /// Nearest point of each body to `q_star`.
        nearest: Vec<Point>,
    },
}

impl HellyWitness {
    pub fn is_intersecting(&self) -> bool {
        matches!(self, HellyWitness::Intersecting { .. })
    }
}

/// Planar bodies as float polygons, for the optimizer only.
struct FloatFamily {
    hulls: Vec<Vec<[f64; 2]>>,
    k: usize,
}

impl FloatFamily {
    fn dist2(hull: &[[f64; 2]], x: [f64; 2]) -> f64 {
        let seg = |a: [f64; 2], b: [f64; 2]| -> f64 {
            let u = [b[0] - a[0], b[1] - a[1]];
            let w = [x[0] - a[0], x[1] - a[1]];
            let uu = u[0] * u[0] + u[1] * u[1];
            let t = if uu > 0.0 {
                ((w[0] * u[0] + w[1] * u[1]) / uu).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let p = [a[0] + t * u[0] - x[0], a[1] + t * u[1] - x[1]];
            p[0] * p[0] + p[1] * p[1]
        };
        let k = hull.len();
        if k == 1 {
            return seg(hull[0], hull[0]);
        }
        if k == 2 {
            return seg(hull[0], hull[1]);
        }
        let inside = (0..k).all(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % k]);
            (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) >= 0.0
        });
        if inside {
            return 0.0;
        }
        (0..k)
            .map(|i| seg(hull[i], hull[(i + 1) % k]))
            .fold(f64::INFINITY, f64::min)
    }

    fn f(&self, x: [f64; 2]) -> f64 {
        let mut d: Vec<f64> = self.hulls.iter().map(|h| Self::dist2(h, x)).collect();
        d.select_nth_unstable_by(self.k - 1, f64::total_cmp);
        d[self.k - 1]
    }
}

struct Descent {
    x: [f64; 2],
    value: f64,
    converged: bool,
}

/// Nelder-Mead on the plane.
fn nelder_mead(f: &dyn Fn([f64; 2]) -> f64, start: [f64; 2], step: f64, scale: f64) -> Descent {
    let mut s: Vec<([f64; 2], f64)> = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ]
    .into_iter()
    .map(|p| (p, f(p)))
    .collect();
    let comb =
        |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for _ in 0..MAX_ITER {
        s.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (s[0].1, s[2].1);
        let size = s[1..]
            .iter()
            .map(|(p, _)| (p[0] - s[0].0[0]).abs().max((p[1] - s[0].0[1]).abs()))
            .fold(0.0, f64::max);
        if lo == 0.0 || (hi - lo <= REL_TOL * lo.abs() && size <= REL_TOL * scale) {
            return Descent {
                x: s[0].0,
                value: lo,
                converged: true,
            };
        }
        let c = [(s[0].0[0] + s[1].0[0]) / 2.0, (s[0].0[1] + s[1].0[1]) / 2.0];
        let r = comb(c, s[2].0, -1.0);
        let fr = f(r);
        if fr < s[0].1 {
            let e = comb(c, s[2].0, -2.0);
            let fe = f(e);
            s[2] = if fe < fr { (e, fe) } else { (r, fr) };
        } else if fr < s[1].1 {
            s[2] = (r, fr);
        } else {
            let k = if fr < s[2].1 {
                comb(c, r, 0.5)
            } else {
                comb(c, s[2].0, 0.5)
            };
            let fk = f(k);
            if fk < fr.min(s[2].1) {
                s[2] = (k, fk);
            } else {
                let best = s[0].0;
                for v in s.iter_mut().skip(1) {
                    v.0 = comb(best, v.0, 0.5);
                    v.1 = f(v.0);
                }
            }
        }
    }
    s.sort_by(|a, b| a.1.total_cmp(&b.1));
    Descent {
        x: s[0].0,
        value: s[0].1,
        converged: false,
    }
}

/// Multi-start minimization of `f` from a 4 x 4 grid over the bounding box.
fn minimize(family: &Family, k: usize) -> Result<Point> {
    let hulls: Vec<Vec<[f64; 2]>> = family
        .bodies()
        .iter()
        .map(|b| {
            convex_hull_2d(b.vertices.points())
                .iter()
                .map(|p| [to_f64(&p[0]), to_f64(&p[1])])
                .collect()
        })
        .collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in hulls.iter().flatten() {
        for j in 0..2 {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    let scale = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
    let ff = FloatFamily { hulls, k };
    let f = |x: [f64; 2]| ff.f(x);
    let starts: Vec<[f64; 2]> = (0..GRID * GRID)
        .map(|i| {
            let (a, b) = ((i % GRID) as f64 + 0.5, (i / GRID) as f64 + 0.5);
            [
                lo[0] + a / GRID as f64 * (hi[0] - lo[0]),
                lo[1] + b / GRID as f64 * (hi[1] - lo[1]),
            ]
        })
        .collect();
    let runs: Vec<Descent> = std::thread::scope(|scope| {
        let handles: Vec<_> = starts
            .iter()
            .map(|&s| scope.spawn(move || nelder_mead(&f, s, scale / 8.0, scale)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("optimizer thread"))
            .collect()
    });
    let best = runs
        .iter()
        .filter(|r| r.converged)
        .min_by(|a, b| a.value.total_cmp(&b.value));
    let Some(best) = best else {
        let any = runs
            .iter()
            .min_by(|a, b| a.value.total_cmp(&b.value))
            .expect("16 starts");
        return Err(Error::Optimization {
            message: format!(
                "no start reached tolerance; best iterate ({}, {})",
                any.x[0], any.x[1]
            ),
            best_value: any.value,
        });
    };
    let coords = best
        .x
        .iter()
        .map(|&c| {
            from_f64(c).ok_or_else(|| Error::Optimization {
                message: "non-finite iterate".into(),
                best_value: best.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Point::new(coords)
}

/// Either `ceil(beta n)` bodies with a common point, or classes
/// `F_1, F_2, F_3` such that no choice of one body from each class
/// intersects.
///
/// `q*` minimizes the `ceil(beta n)`-th smallest distance to the bodies.
/// When that value is positive, the nearest points `x_i` of the bodies not
/// containing `q*` surround it, every body lies in the closed halfspace
/// through `x_i` facing away from `q*`, and a transversal partition of the
/// `x_i` around `q*` yields classes whose halfspaces cannot meet. The
/// emptiness is rechecked by LP for every colorful triple.
pub fn depth_helly_witness(family: &Family, beta: &Rational) -> Result<HellyWitness> {
    if family.dim() != 2 {
        return Err(Error::UnsupportedDimension(family.dim()));
    }
    let n = family.len();
    if n < 3 {
        return Err(Error::Precondition(
            "at least three bodies are needed".into(),
        ));
    }
    if n > MAX_HELLY_BODIES {
        return Err(Error::BudgetExceeded {
            needed: n as u128,
            budget: MAX_HELLY_BODIES as u128,
        });
    }
    let k = subfamily_size(n, beta)?;
    let q = minimize(family, k)?;
    match witness_at(family, beta, &q) {
        Err(e @ Error::Optimization { .. }) => {
            // With only two active bodies the minimizer is the midpoint of
            // their closest pair, which a float iterate never hits exactly.
            for c in closest_pair_midpoints(family)? {
                match witness_at(family, beta, &c) {
                    Ok(w @ HellyWitness::Intersecting { .. }) => return Ok(w),
                    Ok(
                        w @ HellyWitness::Colorful {
                            verified_empty: true,
                            ..
                        },
                    ) => return Ok(w),
                    _ => {}
                }
            }
            Err(e)
        }
        r => r,
    }
}

/// Midpoints of the closest pairs of disjoint bodies, nearest pairs first.
/// For disjoint convex polygons one end of a closest pair is a vertex.
fn closest_pair_midpoints(family: &Family) -> Result<Vec<Point>> {
    let bodies = family.bodies();
    let mut out: Vec<(Rational, Point)> = Vec::new();
    for a in 0..bodies.len() {
        for b in a + 1..bodies.len() {
            let mut best: Option<(Rational, Point, Point)> = None;
            for (from, to) in [(a, b), (b, a)] {
                for v in bodies[from].vertices.points() {
                    let (d2, p) = dist_to_hull(v, &bodies[to])?;
                    if best.as_ref().is_none_or(|(d, _, _)| &d2 < d) {
                        best = Some((d2, v.clone(), p));
                    }
                }
            }
            if let Some((d2, u, v)) = best.filter(|(d2, _, _)| !d2.is_zero()) {
                let half = Rational::new(1.into(), 2.into());
                let mid = u
                    .coords()
                    .iter()
                    .zip(v.coords())
                    .map(|(x, y)| (x + y) * &half)
                    .collect();
                out.push((d2, Point::new(mid)?));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out.into_iter().map(|(_, p)| p).collect())
}

fn witness_at(family: &Family, beta: &Rational, q: &Point) -> Result<HellyWitness> {
    let n = family.len();
    let q = q.clone();
    let (value, selected) = f_eval(&q, family, beta)?;
    if value.is_zero() {
        return Ok(HellyWitness::Intersecting {
            subfamily: selected,
            common_point: q,
        });
    }
    // The float optimizer can miss a lower-dimensional intersection.
    if let Some(p) = family.common_point(&selected)? {
        return Ok(HellyWitness::Intersecting {
            subfamily: selected,
            common_point: p,
        });
    }

    let nearest: Vec<(Rational, Point)> = family
        .bodies()
        .iter()
        .map(|b| dist_to_hull(&q, b))
        .collect::<Result<_>>()?;
    let outside: Vec<usize> = (0..n).filter(|&i| !nearest[i].0.is_zero()).collect();
    let (set, _) =
        PointSet::from_multiset(2, outside.iter().map(|&i| nearest[i].1.clone()).collect())?;
    let classes_of_points = partition_around(&set, &q)?;
    let color_classes: Vec<Vec<usize>> = classes_of_points
        .iter()
        .map(|pts| {
            outside
                .iter()
                .copied()
                .filter(|&i| pts.iter().any(|&j| set.points()[j] == nearest[i].1))
                .collect()
        })
        .collect();
    let (verified_empty, exhaustive, checked) = verify_colorful(family, &color_classes)?;
    Ok(HellyWitness::Colorful {
        color_classes,
        verified_empty,
        exhaustive,
        checked,
        q_star: q,
        f_value: value,
        nearest: nearest.into_iter().map(|(_, p)| p).collect(),
    })
}

/// Three disjoint index sets of `set` with every transversal triangle
/// containing `q`. Degenerate configurations fall back to one triangle.
fn partition_around(set: &PointSet, q: &Point) -> Result<Vec<Vec<usize>>> {
    let attempt = |r: Result<TransversalPartition>| -> Result<Option<Vec<Vec<usize>>>> {
        match r {
            Ok(p) => Ok(Some(p.indices)),
            Err(Error::Degenerate(_) | Error::Precondition(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    if set.is_unit_weighted() && set.len() >= 3 {
        if let Some(ix) = attempt(caradepth_partition_planar(set, q))? {
            return Ok(ix);
        }
    }
    if let Some(ix) = attempt(caradepth_partition_general(set, q))? {
        return Ok(ix);
    }
    let pts = set.points();
    let m = pts.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let inside = match simplex_contains(&[&pts[a], &pts[b], &pts[c]], q) {
                    Some(p) => p.contains(),
                    None => crate::geom::lp::in_convex_hull(&[&pts[a], &pts[b], &pts[c]], q)?,
                };
                if inside {
                    return Ok(vec![vec![a], vec![b], vec![c]]);
                }
            }
        }
    }
    Err(Error::Optimization {
        message: format!("the nearest points do not surround the incumbent {q}"),
        best_value: f64::NAN,
    })
}

/// LP check that no colorful triple of bodies intersects.
fn verify_colorful(family: &Family, classes: &[Vec<usize>]) -> Result<(bool, bool, u128)> {
    if classes.iter().any(Vec::is_empty) {
        return Ok((false, true, 0));
    }
    let total: u128 = classes.iter().map(|c| c.len() as u128).product();
    let empty = |t: [usize; 3]| -> Result<bool> { Ok(family.common_point(&t)?.is_none()) };
    if total <= HELLY_BUDGET {
        let mut checked = 0;
        for &a in &classes[0] {
            for &b in &classes[1] {
                for &c in &classes[2] {
                    checked += 1;
                    if !empty([a, b, c])? {
                        return Ok((false, true, checked));
                    }
                }
            }
        }
        return Ok((true, true, checked));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e11);
    for checked in 1..=HELLY_BUDGET {
        let t = [0, 1, 2].map(|j| classes[j][rng.gen_range(0..classes[j].len())]);
        if !empty(t)? {
            return Ok((false, false, checked));
        }
    }
    Ok((true, false, HELLY_BUDGET))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::ratio;
    use crate::helly::ConvexBody;

    fn body(rows: &[&[i64]]) -> ConvexBody {
        ConvexBody::new("b", PointSet::from_ints(rows)).unwrap()
    }

    #[test]
    fn shared_point_is_found() {
        let f = Family::new(vec![
            body(&[&[-5, -1], &[5, -1], &[5, 1], &[-5, 1]]),
            body(&[&[-1, -5], &[1, -5], &[1, 5], &[-1, 5]]),
            body(&[&[-4, -3], &[3, 4], &[4, 3], &[-3, -4]]),
            body(&[&[0, 0], &[6, 0], &[0, 6]]),
        ])
        .unwrap();
        let w = depth_helly_witness(&f, &ratio(1, 1)).unwrap();
        let HellyWitness::Intersecting {
            subfamily,
            common_point,
        } = w
        else {
            panic!("expected a common point");
        };
        assert_eq!(subfamily, vec![0, 1, 2, 3]);
        for b in f.bodies() {
            assert!(dist_to_hull(&common_point, b).unwrap().0.is_zero());
        }
    }

    #[test]
    fn thin_triangles_give_colorful_witness() {
        // Pairwise intersecting near the corners of a big triangle, no common point.
        let f = Family::new(vec![
            body(&[&[0, 0], &[100, 0], &[50, 2]]),
            body(&[&[100, 0], &[50, 86], &[74, 42]]),
            body(&[&[50, 86], &[0, 0], &[26, 42]]),
        ])
        .unwrap();
        let w = depth_helly_witness(&f, &ratio(1, 1)).unwrap();
        let HellyWitness::Colorful {
            verified_empty,
            color_classes,
            ..
        } = w
        else {
            panic!("expected a colorful witness");
        };
        assert!(verified_empty);
        assert!(color_classes.iter().all(|c| c.len() == 1));
    }
}
