//! Randomized incremental (Seidel-style) linear programming over exact rationals.
//!
//! Problems are solved inside an axis-aligned box `|x_j| <= M` where `M` is
//! derived from the constraint coefficients (Cramer + Hadamard), so the box
//! never cuts off the feasible region's minimal faces. Ties are broken by a
//! lexicographic objective, which makes every optimum a unique vertex and is
//! what the incremental step relies on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hyperplane::Halfspace;
use super::point::{dot, Point};
use super::rational::Rational;
use crate::error::{check_dim, Error, Result};

pub const MAX_LP_DIM: usize = 8;

/// `a . x >= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Constraint {
    pub fn new(a: Vec<Rational>, b: Rational) -> Self {
        Self { a, b }
    }

    fn satisfied(&self, x: &[Rational]) -> bool {
        dot(&self.a, x) >= self.b
    }

    /// Eliminates variable `j` using `x_j = (row.b - sum_{l != j} row.a_l x_l) / row.a_j`.
    fn substitute(&self, row: &Constraint, j: usize) -> Constraint {
        let factor = &self.a[j] / &row.a[j];
        let a = (0..self.a.len())
            .filter(|&l| l != j)
            .map(|l| &self.a[l] - &factor * &row.a[l])
            .collect();
        Constraint {
            a,
            b: &self.b - &factor * &row.b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Vec<Rational>),
    Infeasible,
}

/// Lexicographically maximizes `objectives` (then `x_1, x_2, ...`) over the
/// constraints intersected with the box `|x_j| <= bound`.
pub fn maximize_in_box(
    dim: usize,
    constraints: &[Constraint],
    objectives: &[Vec<Rational>],
    bound: &Rational,
) -> LpOutcome {
    let mut order: Vec<Constraint> = constraints.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_1de1_u64 ^ constraints.len() as u64);
    order.shuffle(&mut rng);
    let mut objs: Vec<Vec<Rational>> = objectives.to_vec();
    for j in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[j] = Rational::one();
        objs.push(e);
    }
    let boxes = vec![(-bound.clone(), bound.clone()); dim];
    match solve(&boxes, &order, &objs) {
        Some(x) => LpOutcome::Optimal(x),
        None => LpOutcome::Infeasible,
    }
}

/// A box radius that contains a point of every nonempty face of `{a_i . x >= b_i}`.
pub fn safe_bound(dim: usize, constraints: &[Constraint]) -> Rational {
    let mut delta = BigInt::one();
    for c in constraints {
        let mut lcm = BigInt::one();
        for v in c.a.iter().chain(std::iter::once(&c.b)) {
            lcm = lcm.lcm(v.denom());
        }
        for v in c.a.iter().chain(std::iter::once(&c.b)) {
            let scaled = (v.numer() * (&lcm / v.denom())).abs();
            if scaled > delta {
                delta = scaled;
            }
        }
    }
    let factorial: BigInt = (1..=dim as u64).map(BigInt::from).product();
    Rational::from_integer(factorial * num_traits::pow(delta, dim) + 1)
}

fn box_optimum(boxes: &[(Rational, Rational)], objs: &[Vec<Rational>]) -> Vec<Rational> {
    boxes
        .iter()
        .enumerate()
        .map(|(j, (lo, hi))| {
            let decisive = objs.iter().map(|c| &c[j]).find(|c| !c.is_zero());
            match decisive {
                Some(c) if c.is_positive() => hi.clone(),
                _ => lo.clone(),
            }
        })
        .collect()
}

fn solve(
    boxes: &[(Rational, Rational)],
    constraints: &[Constraint],
    objs: &[Vec<Rational>],
) -> Option<Vec<Rational>> {
    let k = boxes.len();
    if k == 0 {
        return constraints
            .iter()
            .all(|c| !c.b.is_positive())
            .then(Vec::new);
    }
    let mut x = box_optimum(boxes, objs);
    for i in 0..constraints.len() {
        if constraints[i].satisfied(&x) {
            continue;
        }
        let row = &constraints[i];
        let j = row.a.iter().position(|v| !v.is_zero())?;
        // Optimum now lies on a_i . x = b_i.
        let mut sub = Vec::with_capacity(i + 2);
        let mut unit = vec![Rational::zero(); k];
        unit[j] = Rational::one();
        let lower = Constraint::new(unit.clone(), boxes[j].0.clone());
        let upper = Constraint::new(unit.iter().map(|v| -v).collect(), -boxes[j].1.clone());
        sub.push(lower.substitute(row, j));
        sub.push(upper.substitute(row, j));
        sub.extend(constraints[..i].iter().map(|c| c.substitute(row, j)));
        let sub_boxes: Vec<(Rational, Rational)> = boxes
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != j)
            .map(|(_, b)| b.clone())
            .collect();
        let sub_objs: Vec<Vec<Rational>> = objs
            .iter()
            .map(|c| {
                let factor = &c[j] / &row.a[j];
                (0..k)
                    .filter(|&l| l != j)
                    .map(|l| &c[l] - &factor * &row.a[l])
                    .collect()
            })
            .collect();
        let y = solve(&sub_boxes, &sub, &sub_objs)?;
        let mut rest = row.b.clone();
        let mut full = Vec::with_capacity(k);
        let mut it = y.into_iter();
        for l in 0..k {
            if l == j {
                full.push(Rational::zero());
            } else {
                let v = it.next().unwrap();
                rest -= &row.a[l] * &v;
                full.push(v);
            }
        }
        full[j] = rest / &row.a[j];
        x = full;
    }
    Some(x)
}

/// A point in the intersection of the halfspaces, or `None` if it is empty.
///
/// Open halfspaces are handled with a slack variable `t`: the system
/// `a . x >= b + t` is solved maximizing `t <= 1`, and strict feasibility
/// holds iff the optimum has `t > 0`.
pub fn lp_feasible(halfspaces: &[Halfspace], dim: usize) -> Result<Option<Point>> {
    if dim == 0 || dim > MAX_LP_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    for h in halfspaces {
        check_dim(dim, h.dim())?;
    }
    if halfspaces.is_empty() {
        return Ok(Some(Point::origin(dim)));
    }
    let strict = halfspaces.iter().any(|h| !h.closed);
    let k = if strict { dim + 1 } else { dim };
    let mut cons: Vec<Constraint> = halfspaces
        .iter()
        .map(|h| {
            let (mut a, b) = h.as_geq();
            if strict {
                a.push(if h.closed {
                    Rational::zero()
                } else {
                    -Rational::one()
                });
            }
            Constraint::new(a, b)
        })
        .collect();
    let mut objectives = Vec::new();
    if strict {
        let mut cap = vec![Rational::zero(); k];
        cap[dim] = -Rational::one();
        cons.push(Constraint::new(cap, -Rational::one()));
        let mut obj = vec![Rational::zero(); k];
        obj[dim] = Rational::one();
        objectives.push(obj);
    }
    let bound = safe_bound(k, &cons);
    match maximize_in_box(k, &cons, &objectives, &bound) {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Optimal(mut x) => {
            if strict {
                let t = x.pop().unwrap();
                if !t.is_positive() {
                    return Ok(None);
                }
            }
            let p = Point::new(x)?;
            if !halfspaces.iter().all(|h| h.contains(&p)) {
                return Err(Error::Internal("LP witness violates a constraint".into()));
            }
            Ok(Some(p))
        }
    }
}

/// Exact convex-hull membership: `q` in `conv(points)` (closed).
pub fn in_convex_hull(points: &[&Point], q: &Point) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let dim = q.dim();
    for p in points {
        check_dim(dim, p.dim())?;
    }
    // q in conv(P) iff no (w, c) with w.p >= c for all p and w.q <= c - 1
    // (i.e. q strictly separable), solved as a feasibility problem in (w, c).
    let mut cons = Vec::with_capacity(points.len() + 1);
    for p in points {
        let mut a: Vec<Rational> = p.coords().to_vec();
        a.push(-Rational::one());
        cons.push(Constraint::new(a, Rational::zero()));
    }
    let mut a: Vec<Rational> = q.coords().iter().map(|v| -v).collect();
    a.push(Rational::one());
    cons.push(Constraint::new(a, Rational::one()));
    let bound = safe_bound(dim + 1, &cons);
    Ok(matches!(
        maximize_in_box(dim + 1, &cons, &[], &bound),
        LpOutcome::Infeasible
    ))
}
