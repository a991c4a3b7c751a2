use num_traits::{ToPrimitive, Zero};

use super::tukey::next_combination;
use super::{binomial, DepthReport, DepthWitness};
use crate::error::{Error, Result};
use crate::geom::lp::in_convex_hull;
use crate::geom::point::{Point, PointSet};
use crate::geom::predicates::{
    signs_around, simplex_contains, triangle_from_signs, IntFrame, SimplexPosition,
};
use crate::geom::rational::Rational;

pub const SIMPLICIAL_BUDGET: u128 = 10_000_000;

/// Number of `(d+1)`-subsets of the (multiplicity-expanded) set whose closed
/// convex hull contains `q`. Subsets with `q` on their boundary are counted
/// and reported in `boundary_tuples`.
pub fn simplicial_depth(set: &PointSet, q: &Point) -> Result<DepthReport> {
    set.check_query(q)?;
    let d = set.dim();
    let owners: Vec<usize> = set
        .iter()
        .enumerate()
        .flat_map(|(i, (_, w))| std::iter::repeat_n(i, w as usize))
        .collect();
    let n = owners.len();
    let total = binomial(n as u64, d as u64 + 1);
    let needed = total.to_u128().unwrap_or(u128::MAX);
    if needed > SIMPLICIAL_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: SIMPLICIAL_BUDGET,
        });
    }
    let mut report = DepthReport {
        raw: 0,
        normalized: Rational::zero(),
        witness: DepthWitness::None,
        boundary_tuples: 0,
    };
    if n < d + 1 {
        return Ok(report);
    }
    let pts: Vec<&Point> = owners.iter().map(|&i| &set.points()[i]).collect();
    let record = |tuple: &[usize], pos: SimplexPosition, report: &mut DepthReport| {
        if pos.contains() {
            report.raw += 1;
            if pos == SimplexPosition::Boundary {
                report.boundary_tuples += 1;
            }
            if matches!(report.witness, DepthWitness::None) {
                report.witness = DepthWitness::Tuple(tuple.iter().map(|&t| owners[t]).collect());
            }
        }
    };
    let frame = if d == 3 {
        IntFrame::new(pts.iter().copied().chain(std::iter::once(q)))
    } else {
        None
    };
    match (d, frame) {
        (2, _) => planar_count(&pts, q, &mut |t, p| record(t, p, &mut report))?,
        (_, frame) => {
            let mut tuple: Vec<usize> = (0..=d).collect();
            let qi = n;
            loop {
                let pos = match &frame {
                    Some(f) if d == 3 => int_simplex3(f, &tuple, qi)
                        .map_or_else(|| flat_position(&pts, &tuple, q), Ok)?,
                    _ => {
                        let s: Vec<&Point> = tuple.iter().map(|&i| pts[i]).collect();
                        match simplex_contains(&s, q) {
                            Some(p) => p,
                            None => flat_position(&pts, &tuple, q)?,
                        }
                    }
                };
                record(&tuple, pos, &mut report);
                if !next_combination(&mut tuple, n) {
                    break;
                }
            }
        }
    }
    report.normalized = Rational::new(report.raw.into(), total.into());
    Ok(report)
}

fn planar_count(
    pts: &[&Point],
    q: &Point,
    record: &mut dyn FnMut(&[usize], SimplexPosition),
) -> Result<()> {
    let n = pts.len();
    let side = signs_around(pts, q);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let pos = match triangle_from_signs([side[i][j], side[j][k], side[k][i]]) {
                    Some(p) => p,
                    None => flat_position(pts, &[i, j, k], q)?,
                };
                record(&[i, j, k], pos);
            }
        }
    }
    Ok(())
}

fn int_simplex3(f: &IntFrame, t: &[usize], qi: usize) -> Option<SimplexPosition> {
    let full = f.orient3(t[0], t[1], t[2], t[3]);
    if full == 0 {
        return None;
    }
    let mut boundary = false;
    for i in 0..4 {
        let mut s = [t[0], t[1], t[2], t[3]];
        s[i] = qi;
        let o = f.orient3(s[0], s[1], s[2], s[3]);
        if o == 0 {
            boundary = true;
        } else if o != full {
            return Some(SimplexPosition::Outside);
        }
    }
    Some(if boundary {
        SimplexPosition::Boundary
    } else {
        SimplexPosition::Interior
    })
}

/// Flat tuples never contain `q` in their interior.
fn flat_position(pts: &[&Point], tuple: &[usize], q: &Point) -> Result<SimplexPosition> {
    let s: Vec<&Point> = tuple.iter().map(|&i| pts[i]).collect();
    Ok(if in_convex_hull(&s, q)? {
        SimplexPosition::Boundary
    } else {
        SimplexPosition::Outside
    })
}
