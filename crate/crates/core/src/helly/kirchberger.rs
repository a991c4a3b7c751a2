use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::depth::{max_separable_subset, tukey_depth};
use crate::error::{check_dim, Error, Result};
use crate::geom::hyperplane::OrientedHyperplane;
use crate::geom::point::{Point, PointSet};
use crate::geom::rational::Rational;

pub const MAX_KIRCHBERGER_POINTS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// Red points lifted to `(x, 1)`, blue points to `(-x, -1)`. A subset of
/// the lift is strictly separable from the origin exactly when its red and
/// blue preimages are strictly separable from each other.
#[derive(Clone, Debug, PartialEq)]
pub struct Lifted {
    pub points: PointSet,
    /// Color and index in the input of each lifted point.
    pub origin: Vec<(Color, usize)>,
}

pub fn kirchberger_lift(red: &PointSet, blue: &PointSet) -> Result<Lifted> {
    check_dim(red.dim(), blue.dim())?;
    let one = Rational::one();
    let mut points = Vec::with_capacity(red.len() + blue.len());
    let mut origin = Vec::with_capacity(points.capacity());
    for (i, p) in red.points().iter().enumerate() {
        let mut c = p.coords().to_vec();
        c.push(one.clone());
        points.push(Point::new(c)?);
        origin.push((Color::Red, i));
    }
    for (i, p) in blue.points().iter().enumerate() {
        let mut c: Vec<Rational> = p.coords().iter().map(|v| -v).collect();
        c.push(-one.clone());
        points.push(Point::new(c)?);
        origin.push((Color::Blue, i));
    }
    Ok(Lifted {
        points: PointSet::new(red.dim() + 1, points)?,
        origin,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KirchbergerWitness {
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
    /// Red strictly on the positive side, blue strictly on the negative side.
    pub plane: OrientedHyperplane,
    /// Tukey depth of the origin in the lift, as a fraction of `n`.
    pub origin_depth: Rational,
}

/// Subsets `R'` of `R` and `B'` of `B` with more than `beta n` points in
/// total and a line strictly separating them, found as the largest subset
/// of the lift avoiding the origin. `None` when the origin has depth at
/// least `1 - beta` in the lift.
pub fn kirchberger_witness(
    red: &PointSet,
    blue: &PointSet,
    beta: &Rational,
) -> Result<Option<KirchbergerWitness>> {
    if beta <= &Rational::zero() || beta > &Rational::one() {
        return Err(Error::Precondition("beta must lie in (0, 1]".into()));
    }
    if red.dim() != 2 {
        return Err(Error::UnsupportedDimension(red.dim()));
    }
    let n = red.len() + blue.len();
    if n == 0 {
        return Err(Error::Precondition("no points given".into()));
    }
    if n > MAX_KIRCHBERGER_POINTS {
        return Err(Error::BudgetExceeded {
            needed: n as u128,
            budget: MAX_KIRCHBERGER_POINTS as u128,
        });
    }
    let lifted = kirchberger_lift(red, blue)?;
    let origin = Point::origin(3);
    let depth = tukey_depth(&lifted.points, &origin)?.normalized;
    if depth >= Rational::one() - beta {
        return Ok(None);
    }
    let (chosen, h) = max_separable_subset(&lifted.points, &origin)?;
    let (mut r, mut b) = (Vec::new(), Vec::new());
    for i in chosen {
        match lifted.origin[i] {
            (Color::Red, j) => r.push(j),
            (Color::Blue, j) => b.push(j),
        }
    }
    // w . (x, 1) > c > 0 on red and w . (-x, -1) > c on blue, so the line
    // w' . x + w_3 = 0 separates them.
    let w = h.normal();
    let normal = w[..2].to_vec();
    let plane = if normal.iter().all(Zero::is_zero) {
        one_sided_plane(red, blue, &r, &b)?
    } else {
        OrientedHyperplane::new(normal, -w[2].clone())?
    };
    let witness = KirchbergerWitness {
        red: r,
        blue: b,
        plane,
        origin_depth: depth,
    };
    if !separates(&witness, red, blue) {
        return Err(Error::Internal(
            "lifted separation does not map back".into(),
        ));
    }
    Ok(Some(witness))
}

/// A line with all chosen points strictly on the side of their color, when
/// only one color was chosen.
fn one_sided_plane(
    red: &PointSet,
    blue: &PointSet,
    r: &[usize],
    b: &[usize],
) -> Result<OrientedHyperplane> {
    let (set, ix, sign) = if b.is_empty() {
        (red, r, 1)
    } else {
        (blue, b, -1)
    };
    let xs = ix.iter().map(|&i| &set.points()[i][0]);
    let normal = vec![Rational::from_integer(sign.into()), Rational::zero()];
    let offset = if sign > 0 {
        xs.min().cloned().unwrap_or_default() - Rational::one()
    } else {
        -(xs.max().cloned().unwrap_or_default() + Rational::one())
    };
    OrientedHyperplane::new(normal, offset)
}

fn separates(w: &KirchbergerWitness, red: &PointSet, blue: &PointSet) -> bool {
    w.red
        .iter()
        .all(|&i| w.plane.eval(&red.points()[i]).is_positive())
        && w.blue
            .iter()
            .all(|&i| w.plane.eval(&blue.points()[i]).is_negative())
}
