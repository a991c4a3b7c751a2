//! Depth Carathéodory partitions: disjoint parts `X_1, ..., X_{d+1}` of `X`
//! such that every transversal simplex contains the query point.

mod general;
mod planar;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::hyperplane::Line;
use crate::geom::point::{Point, PointSet};
use crate::geom::predicates::{
    signs_around, simplex_contains, triangle_from_signs, SimplexPosition,
};
use crate::geom::rational::Rational;

pub use general::caradepth_partition_general;
pub use planar::{caradepth_partition_planar, PlanarTrace, UpImage};

pub const EXHAUSTIVE_TRANSVERSALS: u128 = 1_000_000;
pub const SAMPLED_TRANSVERSALS: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    General,
    PlanarSigma,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::General => "general",
            Method::PlanarSigma => "planar_sigma",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Guarantee {
    pub method: Method,
    /// `|X_1| ... |X_{d+1}|`.
    pub product: u128,
    /// Number of `(d+1)`-subsets of `X` containing `q`, when known.
    pub sigma_raw: Option<u64>,
    /// The lower bound the construction promises for `product` (planar) or
    /// for the smallest part (general).
    pub bound: Rational,
}

#[derive(Clone, Debug)]
pub struct TransversalPartition {
    pub parts: Vec<PointSet>,
    /// Indices of each part's points in the input set.
    pub indices: Vec<Vec<usize>>,
    pub query: Point,
    pub guarantee: Guarantee,
    pub certification: Option<Certification>,
    pub trace: Option<PlanarTrace>,
    /// General method: the bisecting line and the line from the projection step.
    pub lines: Vec<Line>,
}

impl TransversalPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(PointSet::len).collect()
    }

    /// `min |X_i| / n`.
    pub fn effective_ratio(&self, n: usize) -> Rational {
        let min = self.parts.iter().map(PointSet::len).min().unwrap_or(0);
        Rational::new(min.into(), n.max(1).into())
    }

    pub fn certify(&mut self) -> Result<&Certification> {
        let c = certify_partition(&self.parts, &self.query)?;
        Ok(self.certification.insert(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certification {
    pub holds: bool,
    pub exhaustive: bool,
    pub checked: u128,
    /// Transversals with `q` on the boundary of their simplex (still counted as containing).
    pub boundary: u128,
    /// A transversal (indices into the parts) that misses `q`.
    pub counterexample: Option<Vec<usize>>,
}

/// Whether every transversal simplex of `parts` contains `q` (closed containment).
pub fn certify_partition(parts: &[PointSet], q: &Point) -> Result<Certification> {
    let d = q.dim();
    if parts.len() != d + 1 {
        return Err(Error::Precondition(format!(
            "expected {} parts, got {}",
            d + 1,
            parts.len()
        )));
    }
    for p in parts {
        p.check_query(q)?;
    }
    if parts.iter().any(PointSet::is_empty) {
        return Ok(Certification {
            holds: false,
            exhaustive: true,
            checked: 0,
            boundary: 0,
            counterexample: None,
        });
    }
    let total: u128 = parts.iter().map(|p| p.len() as u128).product();
    let all: Vec<&Point> = parts.iter().flat_map(|p| p.points()).collect();
    let signs = if d == 2 {
        signs_around(&all, q)
    } else {
        Vec::new()
    };
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();
    let position = |choice: &[usize]| -> SimplexPosition {
        if d == 2 {
            let g: Vec<usize> = choice.iter().zip(&offsets).map(|(c, o)| c + o).collect();
            if let Some(p) =
                triangle_from_signs([signs[g[0]][g[1]], signs[g[1]][g[2]], signs[g[2]][g[0]]])
            {
                return p;
            }
        }
        let simplex: Vec<&Point> = choice
            .iter()
            .zip(parts)
            .map(|(&c, p)| &p.points()[c])
            .collect();
        simplex_contains(&simplex, q).unwrap_or_else(|| flat_position(&simplex, q))
    };
    let mut out = Certification {
        holds: true,
        exhaustive: total <= EXHAUSTIVE_TRANSVERSALS,
        checked: 0,
        boundary: 0,
        counterexample: None,
    };
    let visit = |choice: &[usize], out: &mut Certification| -> bool {
        out.checked += 1;
        match position(choice) {
            SimplexPosition::Outside => {
                out.holds = false;
                out.counterexample = Some(choice.to_vec());
                false
            }
            SimplexPosition::Boundary => {
                out.boundary += 1;
                true
            }
            SimplexPosition::Interior => true,
        }
    };
    if out.exhaustive {
        let mut choice = vec![0usize; parts.len()];
        loop {
            if !visit(&choice, &mut out) {
                break;
            }
            let mut t = 0;
            while t < choice.len() {
                choice[t] += 1;
                if choice[t] < parts[t].len() {
                    break;
                }
                choice[t] = 0;
                t += 1;
            }
            if t == choice.len() {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0xce27);
        for _ in 0..SAMPLED_TRANSVERSALS {
            let choice: Vec<usize> = parts.iter().map(|p| rng.gen_range(0..p.len())).collect();
            if !visit(&choice, &mut out) {
                break;
            }
        }
    }
    Ok(out)
}

/// A flat simplex contains `q` only on its boundary.
fn flat_position(simplex: &[&Point], q: &Point) -> SimplexPosition {
    match crate::geom::lp::in_convex_hull(simplex, q) {
        Ok(true) => SimplexPosition::Boundary,
        _ => SimplexPosition::Outside,
    }
}

/// Directions of lines through `q` that avoid the data and leave at least
/// `floor(n/2)` points strictly on each side, one per combinatorial class.
pub(crate) fn bisecting_directions(set: &PointSet, q: &Point) -> Vec<Vec<Rational>> {
    let vs: Vec<(Vec<Rational>, u64)> = set.iter().map(|(p, w)| (p - q, w)).collect();
    let n = set.n();
    let mut dirs: Vec<Vec<Rational>> = vs
        .iter()
        .filter(|(v, _)| !v.iter().all(Zero::is_zero))
        .flat_map(|(v, _)| [v.clone(), v.iter().map(|c| -c).collect()])
        .collect();
    if dirs.is_empty() {
        return vec![];
    }
    dirs.sort_by(|a, b| angle_cmp(a, b));
    dirs.dedup_by(|a, b| angle_cmp(a, b) == std::cmp::Ordering::Equal);
    let k = dirs.len();
    let mut out = Vec::new();
    for i in 0..k {
        let (a, b) = (&dirs[i], &dirs[(i + 1) % k]);
        let e = if cross(a, b) > Rational::zero() {
            vec![&a[0] + &b[0], &a[1] + &b[1]]
        } else {
            vec![-a[1].clone(), a[0].clone()]
        };
        let (mut left, mut right) = (0, 0);
        for (v, w) in &vs {
            let c = cross(&e, v);
            if c > Rational::zero() {
                left += w;
            } else if c < Rational::zero() {
                right += w;
            }
        }
        if left.min(right) >= n / 2 && left + right == n {
            out.push(e);
        }
    }
    out
}

pub(crate) fn cross(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub(crate) fn angle_cmp(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    let half = |v: &[Rational]| -> u8 {
        if v[1] > Rational::zero() || (v[1].is_zero() && v[0] > Rational::zero()) {
            0
        } else {
            1
        }
    };
    half(a)
        .cmp(&half(b))
        .then_with(|| Rational::zero().cmp(&cross(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certify_examples() {
        let q = Point::origin(2);
        let parts = vec![
            PointSet::from_ints(&[&[3, 0]]),
            PointSet::from_ints(&[&[-1, 3]]),
            PointSet::from_ints(&[&[-1, -3]]),
        ];
        let c = certify_partition(&parts, &q).unwrap();
        assert!(c.holds && c.exhaustive);
        assert_eq!(c.checked, 1);
        let bad = vec![
            PointSet::from_ints(&[&[3, 0], &[-5, 1]]),
            PointSet::from_ints(&[&[-1, 3]]),
            PointSet::from_ints(&[&[-1, -3]]),
        ];
        let c = certify_partition(&bad, &q).unwrap();
        assert!(!c.holds);
        assert_eq!(c.counterexample, Some(vec![1, 0, 0]));
    }

    #[test]
    fn bisectors_split_evenly() {
        let x = PointSet::from_ints(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[2, 3]]);
        let dirs = bisecting_directions(&x, &Point::from_ratios(&[(1, 10), (1, 7)]));
        assert!(!dirs.is_empty());
    }
}
