use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::point::Point;
use super::rational::{sign, Rational};
use crate::error::{check_dim, Error, Result};

/// Determinant of a square matrix by exact Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut result = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            result = -result;
        }
        let p = m[col][col].clone();
        result *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    result
}

/// Sign of `det[(x_1;1), ..., (x_{d+1};1)]`.
pub fn orientation(tuple: &[&Point]) -> Result<i8> {
    let d = tuple.len().saturating_sub(1);
    if d == 0 {
        return Err(Error::Precondition(
            "orientation needs d+1 >= 2 points".into(),
        ));
    }
    for p in tuple {
        check_dim(d, p.dim())?;
    }
    Ok(orientation_unchecked(tuple))
}

pub(crate) fn orientation_unchecked(tuple: &[&Point]) -> i8 {
    if tuple.len() == 3 {
        return orient2d(tuple[0], tuple[1], tuple[2]);
    }
    // Rows (x_i - x_0) have the same determinant sign as the homogeneous matrix.
    let base = tuple[0];
    let rows: Vec<Vec<Rational>> = tuple[1..].iter().map(|p| *p - base).collect();
    sign(&det(rows))
}

/// Planar orientation: +1 when `a, b, c` turn counter-clockwise.
pub fn orient2d(a: &Point, b: &Point, c: &Point) -> i8 {
    let abx = &b[0] - &a[0];
    let aby = &b[1] - &a[1];
    let acx = &c[0] - &a[0];
    let acy = &c[1] - &a[1];
    sign(&(abx * acy - aby * acx))
}

/// Sign of the 2D cross product `u x v`.
pub fn cross_sign(u: &[Rational], v: &[Rational]) -> i8 {
    sign(&(&u[0] * &v[1] - &u[1] * &v[0]))
}

/// Closed containment of `q` in the simplex spanned by `d+1` points.
/// Degenerate (flat) simplices return `None`.
pub fn simplex_contains(simplex: &[&Point], q: &Point) -> Option<SimplexPosition> {
    let full = orientation_unchecked(simplex);
    if full == 0 {
        return None;
    }
    let mut on_boundary = false;
    let mut buf: Vec<&Point> = simplex.to_vec();
    for i in 0..simplex.len() {
        buf[i] = q;
        let s = orientation_unchecked(&buf);
        buf[i] = simplex[i];
        if s == 0 {
            on_boundary = true;
        } else if s != full {
            return Some(SimplexPosition::Outside);
        }
    }
    Some(if on_boundary {
        SimplexPosition::Boundary
    } else {
        SimplexPosition::Interior
    })
}

/// `signs[i][j]` is the orientation of `(p_i, p_j, q)`, computed once so that
/// triangles can be classified by [`triangle_from_signs`].
pub fn signs_around(points: &[&Point], q: &Point) -> Vec<Vec<i8>> {
    let n = points.len();
    let mut out = vec![vec![0i8; n]; n];
    if let Some(f) = IntFrame::new(points.iter().copied().chain(std::iter::once(q))) {
        for i in 0..n {
            for j in i + 1..n {
                out[i][j] = f.orient2(i, j, n);
                out[j][i] = -out[i][j];
            }
        }
        return out;
    }
    let v: Vec<[Rational; 2]> = points
        .iter()
        .map(|p| [&p[0] - &q[0], &p[1] - &q[1]])
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            out[i][j] = cross_sign(&v[i], &v[j]);
            out[j][i] = -out[i][j];
        }
    }
    out
}

/// Position of `q` in triangle `abc` from the orientations of `(a,b,q)`,
/// `(b,c,q)` and `(c,a,q)`. `None` means all three points lie on one line
/// through `q`, where the answer depends on the order along that line.
pub fn triangle_from_signs(s: [i8; 3]) -> Option<SimplexPosition> {
    let pos = s.contains(&1);
    let neg = s.contains(&-1);
    Some(match (pos, neg) {
        (true, true) => SimplexPosition::Outside,
        (false, false) => return None,
        _ if s.contains(&0) => SimplexPosition::Boundary,
        _ => SimplexPosition::Interior,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexPosition {
    Interior,
    Boundary,
    Outside,
}

impl SimplexPosition {
    pub fn contains(self) -> bool {
        !matches!(self, SimplexPosition::Outside)
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn row_reduce(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut m = vectors.to_vec();
    row_reduce(&mut m).len()
}

/// Coordinates (columns) on which the span of `vectors` projects injectively.
pub fn span_coordinates(vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut m = vectors.to_vec();
    row_reduce(&mut m)
}

/// A nonzero vector orthogonal to `k - 1` vectors in `R^k`, or `None` if they are dependent.
///
/// Entry `j` is the signed `(k-1)`-minor with column `j` removed (the generalized cross product).
pub fn orthogonal_complement(vectors: &[&[Rational]], k: usize) -> Option<Vec<Rational>> {
    debug_assert_eq!(vectors.len() + 1, k);
    if k == 1 {
        return Some(vec![Rational::one()]);
    }
    if k == 2 {
        let v = vectors[0];
        let out = vec![-v[1].clone(), v[0].clone()];
        return (!out.iter().all(Zero::is_zero)).then_some(out);
    }
    if k == 3 {
        let (a, b) = (vectors[0], vectors[1]);
        let out = vec![
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ];
        return (!out.iter().all(Zero::is_zero)).then_some(out);
    }
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let minor: Vec<Vec<Rational>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let d = det(minor);
        out.push(if (j + k - 1).is_multiple_of(2) { d } else { -d });
    }
    (!out.iter().all(Zero::is_zero)).then_some(out)
}

/// Solves the square system `a x = b`; `None` if singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Integer image of a planar or spatial point configuration under a common
/// positive scaling, for fast exact predicates on machine integers.
///
/// All orientation signs are preserved because the scaling is a positive
/// multiple of the identity. Built only when every scaled coordinate fits
/// in `LIMIT`, which keeps 3x3 determinants inside `i128`.
#[derive(Clone, Debug)]
pub struct IntFrame {
    pub coords: Vec<Vec<i64>>,
    /// Common positive factor: `coords = scale * original`.
    pub scale: BigInt,
}

impl IntFrame {
    const LIMIT: i64 = 1 << 38;

    pub fn new<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Self> {
        let points: Vec<&Point> = points.into_iter().collect();
        let mut lcm = BigInt::one();
        for p in &points {
            for c in p.coords() {
                lcm = lcm.lcm(c.denom());
                if lcm.bits() > 62 {
                    return None;
                }
            }
        }
        let mut coords = Vec::with_capacity(points.len());
        for p in &points {
            let mut row = Vec::with_capacity(p.dim());
            for c in p.coords() {
                let v = (c.numer() * (&lcm / c.denom())).to_i64()?;
                if v.abs() >= Self::LIMIT {
                    return None;
                }
                row.push(v);
            }
            coords.push(row);
        }
        Some(Self { coords, scale: lcm })
    }

    pub fn orient2(&self, a: usize, b: usize, c: usize) -> i8 {
        orient2_i(&self.coords[a], &self.coords[b], &self.coords[c])
    }

    pub fn orient3(&self, a: usize, b: usize, c: usize, d: usize) -> i8 {
        orient3_i(
            &self.coords[a],
            &self.coords[b],
            &self.coords[c],
            &self.coords[d],
        )
    }
}

pub fn orient2_i(a: &[i64], b: &[i64], c: &[i64]) -> i8 {
    let abx = (b[0] - a[0]) as i128;
    let aby = (b[1] - a[1]) as i128;
    let acx = (c[0] - a[0]) as i128;
    let acy = (c[1] - a[1]) as i128;
    (abx * acy - aby * acx).signum() as i8
}

pub fn orient3_i(a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> i8 {
    let u: [i128; 3] = std::array::from_fn(|i| (b[i] - a[i]) as i128);
    let v: [i128; 3] = std::array::from_fn(|i| (c[i] - a[i]) as i128);
    let w: [i128; 3] = std::array::from_fn(|i| (d[i] - a[i]) as i128);
    let det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0]);
    det.signum() as i8
}

/// `true` if no three points (planar) are collinear.
pub fn planar_general_position(points: &[&Point]) -> bool {
    use std::collections::HashSet;
    // Three points are collinear iff two of them leave the third in the same direction.
    let n = points.len();
    if let Some(frame) = IntFrame::new(points.iter().copied()) {
        let c = &frame.coords;
        for i in 0..n {
            let mut seen = HashSet::with_capacity(n);
            for j in (0..n).filter(|&j| j != i) {
                let (dx, dy) = (c[j][0] - c[i][0], c[j][1] - c[i][1]);
                let g = dx.gcd(&dy).max(1);
                let (dx, dy) = (dx / g, dy / g);
                let key = if dx < 0 || (dx == 0 && dy < 0) {
                    (-dx, -dy)
                } else {
                    (dx, dy)
                };
                if !seen.insert(key) {
                    return false;
                }
            }
        }
        return true;
    }
    for i in 0..n {
        let mut seen = HashSet::with_capacity(n);
        for j in (0..n).filter(|&j| j != i) {
            let dx = &points[j][0] - &points[i][0];
            let dy = &points[j][1] - &points[i][1];
            let key = if dx.is_zero() { None } else { Some(dy / dx) };
            if !seen.insert(key) {
                return false;
            }
        }
    }
    true
}

pub fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}
