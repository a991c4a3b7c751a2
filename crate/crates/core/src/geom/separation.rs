use num_traits::{One, Zero};

use super::hyperplane::OrientedHyperplane;
use super::lp::{maximize_in_box, safe_bound, Constraint, LpOutcome};
use super::point::{Point, PointSet};
use super::rational::Rational;
use crate::error::{check_dim, Error, Result};

/// A hyperplane with `a` on its positive side and `b` on its negative side
/// (strictly, when `strict`), or `None` when no such hyperplane exists.
pub fn separable(a: &PointSet, b: &PointSet, strict: bool) -> Result<Option<OrientedHyperplane>> {
    check_dim(a.dim(), b.dim())?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition(
            "both point sets must be nonempty".into(),
        ));
    }
    separate_points(a.points(), b.points(), strict)
}

/// Slice form of [`separable`]; either side may be empty.
pub fn separate_points(
    a: &[Point],
    b: &[Point],
    strict: bool,
) -> Result<Option<OrientedHyperplane>> {
    let Some(dim) = a.first().or(b.first()).map(Point::dim) else {
        return Err(Error::Precondition("nothing to separate".into()));
    };
    for p in a.iter().chain(b) {
        check_dim(dim, p.dim())?;
    }
    let gap = if strict {
        Rational::one()
    } else {
        Rational::zero()
    };
    // Unknowns (w, c): w . p - c >= gap on `a`, c - w . p >= gap on `b`.
    let mut cons = Vec::with_capacity(a.len() + b.len() + 1);
    for p in a {
        let mut row: Vec<Rational> = p.coords().to_vec();
        row.push(-Rational::one());
        cons.push(Constraint::new(row, gap.clone()));
    }
    for p in b {
        let mut row: Vec<Rational> = p.coords().iter().map(|v| -v).collect();
        row.push(Rational::one());
        cons.push(Constraint::new(row, gap.clone()));
    }
    if strict {
        return Ok(solve_for_plane(dim, &cons)?
            .filter(|h| a.iter().all(|p| h.side_of(p) > 0) && b.iter().all(|p| h.side_of(p) < 0)));
    }
    // Weak separation needs w != 0; try each normalization +-w_j >= 1.
    for j in 0..dim {
        for s in [1i64, -1] {
            let mut extra = vec![Rational::zero(); dim + 1];
            extra[j] = Rational::from_integer(s.into());
            let mut all = cons.clone();
            all.push(Constraint::new(extra, Rational::one()));
            if let Some(h) = solve_for_plane(dim, &all)? {
                if a.iter().all(|p| h.side_of(p) >= 0) && b.iter().all(|p| h.side_of(p) <= 0) {
                    return Ok(Some(h));
                }
            }
        }
    }
    Ok(None)
}

fn solve_for_plane(dim: usize, cons: &[Constraint]) -> Result<Option<OrientedHyperplane>> {
    let bound = safe_bound(dim + 1, cons);
    match maximize_in_box(dim + 1, cons, &[], &bound) {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Optimal(mut x) => {
            let c = x.pop().unwrap();
            if x.iter().all(Zero::is_zero) {
                return Ok(None);
            }
            Ok(Some(OrientedHyperplane::new(x, c)?))
        }
    }
}

/// Strict separation of a point from a finite set: `set` on the positive side, `q` on the negative.
pub fn separate_from_point(
    set: &[Point],
    q: &Point,
    strict: bool,
) -> Result<Option<OrientedHyperplane>> {
    separate_points(set, std::slice::from_ref(q), strict)
}
