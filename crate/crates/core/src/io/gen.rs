use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal, StandardNormal};

use crate::error::{Error, Result};
use crate::geom::point::{Point, PointSet};
use crate::geom::predicates::{orientation, planar_general_position};
use crate::geom::rational::Rational;

/// Whole-set resamples allowed before giving up on general position.
pub const MAX_RESAMPLES: u32 = 1000;
/// Coordinates are multiples of `1 / GRID`.
const GRID: i64 = 1_000_000;
/// Beyond this many `(d+1)`-tuples, general position in `d >= 3` is not checked.
const TUPLE_CHECK_LIMIT: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution {
    UniformSquare,
    GaussianRounded,
    Clustered(usize),
    ConvexPosition,
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::UniformSquare => f.write_str("uniform-square"),
            Distribution::GaussianRounded => f.write_str("gaussian-rounded"),
            Distribution::Clustered(k) => write!(f, "clustered({k})"),
            Distribution::ConvexPosition => f.write_str("convex-position"),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    /// `uniform-square`, `gaussian-rounded`, `convex-position`, `clustered(k)` or `clustered:k`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "uniform-square" | "uniform" => return Ok(Distribution::UniformSquare),
            "gaussian-rounded" | "gaussian" => return Ok(Distribution::GaussianRounded),
            "convex-position" | "convex" => return Ok(Distribution::ConvexPosition),
            _ => {}
        }
        let k = s
            .strip_prefix("clustered")
            .map(|r| r.trim_start_matches(['(', ':']).trim_end_matches(')'))
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k > 0)
            .ok_or_else(|| Error::Parse(format!("unknown distribution {s:?}")))?;
        Ok(Distribution::Clustered(k))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generated {
    pub points: PointSet,
    /// Whole-set draws rejected for coincident or degenerate points.
    pub resamples: u32,
}

/// A seeded random point set in general position.
pub fn gen_random(n: usize, dim: usize, dist: Distribution, seed: u64) -> Result<Generated> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if dim == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    if dist == Distribution::ConvexPosition && dim != 2 {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for resamples in 0..=MAX_RESAMPLES {
        let pts = draw(&mut rng, n, dim, dist);
        let Ok(set) = PointSet::new(dim, pts) else {
            continue;
        };
        if general_position(&set) {
            return Ok(Generated {
                points: set,
                resamples,
            });
        }
    }
    Err(Error::Degenerate(format!(
        "no {dist} sample in general position after {MAX_RESAMPLES} resamples"
    )))
}

fn grid(k: i64) -> Rational {
    Rational::new(k.into(), GRID.into())
}

fn round(x: f64) -> Rational {
    grid((x * GRID as f64).round() as i64)
}

fn draw(rng: &mut ChaCha8Rng, n: usize, dim: usize, dist: Distribution) -> Vec<Point> {
    let point = |c: Vec<Rational>| Point::new(c).expect("nonempty coordinates");
    match dist {
        Distribution::UniformSquare => (0..n)
            .map(|_| point((0..dim).map(|_| grid(rng.gen_range(0..=GRID))).collect()))
            .collect(),
        Distribution::GaussianRounded => (0..n)
            .map(|_| {
                point(
                    (0..dim)
                        .map(|_| round(rng.sample::<f64, _>(StandardNormal)))
                        .collect(),
                )
            })
            .collect(),
        Distribution::Clustered(k) => {
            let centers: Vec<Vec<f64>> = (0..k)
                .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
                .collect();
            let spread = Normal::new(0.0, 0.02).expect("valid deviation");
            (0..n)
                .map(|i| {
                    point(
                        centers[i % k]
                            .iter()
                            .map(|c| round(c + spread.sample(rng)))
                            .collect(),
                    )
                })
                .collect()
        }
        Distribution::ConvexPosition => (0..n)
            .map(|_| {
                // Rational points on the unit circle: t -> ((1 - t^2), 2t) / (1 + t^2).
                let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                let t = round((theta / 2.0).tan().clamp(-1e3, 1e3));
                let one = Rational::from_integer(1.into());
                let den = &one + &t * &t;
                point(vec![(&one - &t * &t) / &den, (&t + &t) / &den])
            })
            .collect(),
    }
}

fn general_position(set: &PointSet) -> bool {
    let d = set.dim();
    let pts: Vec<&Point> = set.points().iter().collect();
    match d {
        1 => true,
        2 => planar_general_position(&pts),
        _ => {
            let n = pts.len();
            if crate::depth::binomial(n as u64, (d + 1) as u64) > TUPLE_CHECK_LIMIT.into() {
                return true;
            }
            tuples(n, d + 1).all(|t| {
                let tuple: Vec<&Point> = t.iter().map(|&i| pts[i]).collect();
                orientation(&tuple).is_ok_and(|o| o != 0)
            })
        }
    }
}

fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}
