//! Brute-force ground truth.
//!
//! Everything here is written against raw rational coordinates with its own
//! arithmetic helpers: nothing is shared with the fast paths except the
//! `Rational` type, so agreement between the two is meaningful.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::rational::Rational;

type Vector = Vec<Rational>;

/// Enumeration limits for the exhaustive/sampled oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_enumerations: u64,
    pub sample_size: u64,
    pub seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_enumerations: 1_000_000,
            sample_size: 100_000,
            seed: 0x0c0ffee,
        }
    }
}

fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn inner(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

fn cross2(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn cross3(a: &[Rational], b: &[Rational]) -> Vector {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Gauss-Jordan on an augmented matrix; `None` when singular.
fn gauss_solve(mut m: Vec<Vector>) -> Option<Vector> {
    let n = m.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let pivot = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=n {
                    let delta = &f * &m[c][k];
                    m[r][k] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Closed containment of `q` in the hull of `verts` via barycentric
/// coordinates over every affinely independent sub-tuple (Carathéodory).
pub fn hull_contains(verts: &[&[Rational]], q: &[Rational]) -> bool {
    let d = q.len();
    let m = verts.len();
    for size in 1..=m.min(d + 1) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if affine_combination(&idx.iter().map(|&i| verts[i]).collect::<Vec<_>>(), q)
                .is_some_and(|l| l.iter().all(|x| !x.is_negative()))
            {
                return true;
            }
            if !advance(&mut idx, m) {
                break;
            }
        }
    }
    false
}

/// Barycentric coefficients of `q` w.r.t. affinely independent `verts`, if `q` is in their affine hull.
fn affine_combination(verts: &[&[Rational]], q: &[Rational]) -> Option<Vector> {
    let base = verts[0];
    let k = verts.len() - 1;
    let target = sub(q, base);
    if k == 0 {
        return is_zero_vec(&target).then(|| vec![Rational::one()]);
    }
    let dirs: Vec<Vector> = verts[1..].iter().map(|v| sub(v, base)).collect();
    // Normal equations G mu = D^T t.
    let rows: Vec<Vector> = (0..k)
        .map(|i| {
            let mut row: Vector = (0..k).map(|j| inner(&dirs[i], &dirs[j])).collect();
            row.push(inner(&dirs[i], &target));
            row
        })
        .collect();
    let mu = gauss_solve(rows)?;
    let mut recon = vec![Rational::zero(); q.len()];
    for (m, dir) in mu.iter().zip(&dirs) {
        for (r, x) in recon.iter_mut().zip(dir) {
            *r += m * x;
        }
    }
    if recon != target {
        return None;
    }
    let mut lambda = vec![Rational::one() - mu.iter().cloned().sum::<Rational>()];
    lambda.extend(mu);
    Some(lambda)
}

fn advance(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn expand(points: &[Vector], weights: &[u64]) -> Vec<Vector> {
    points
        .iter()
        .zip(weights)
        .flat_map(|(p, &w)| std::iter::repeat_n(p.clone(), w as usize))
        .collect()
}

/// Exact Tukey depth for `d <= 3` by direct enumeration of candidate
/// halfspaces bounded by hyperplanes through `q`.
pub fn oracle_tukey(points: &[Vector], weights: &[u64], q: &[Rational]) -> Result<u64> {
    let d = q.len();
    let all = expand(points, weights);
    let vs: Vec<Vector> = all.iter().map(|p| sub(p, q)).collect();
    let zeros = vs.iter().filter(|v| is_zero_vec(v)).count() as u64;
    let nz: Vec<Vector> = vs.into_iter().filter(|v| !is_zero_vec(v)).collect();
    let closed = match d {
        1 => {
            let pos = nz.iter().filter(|v| v[0].is_positive()).count() as u64;
            let neg = nz.len() as u64 - pos;
            pos.min(neg)
        }
        2 => min_closed_2d(&nz),
        3 => min_closed_3d(&nz),
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    Ok(zeros + closed)
}

fn half_plane(v: &[Rational]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    half_plane(a)
        .cmp(&half_plane(b))
        .then_with(|| Rational::zero().cmp(&cross2(a, b)))
}

/// `min_u #{v : u . v >= 0}` over nonzero planar vectors (0 if none).
fn min_closed_2d(vs: &[Vector]) -> u64 {
    if vs.is_empty() {
        return 0;
    }
    let mut cands: Vec<Vector> = Vec::new();
    for v in vs {
        cands.push(vec![-v[1].clone(), v[0].clone()]);
        cands.push(vec![v[1].clone(), -v[0].clone()]);
    }
    cands.sort_by(|a, b| angle_cmp(a, b));
    let m = cands.len();
    let mut tests = cands.clone();
    for i in 0..m {
        let a = &cands[i];
        let b = &cands[(i + 1) % m];
        if cross2(a, b).is_positive() {
            tests.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        } else {
            tests.push(vec![-a[1].clone(), a[0].clone()]);
        }
    }
    tests
        .iter()
        .map(|u| vs.iter().filter(|v| !inner(u, v).is_negative()).count() as u64)
        .min()
        .unwrap()
}

fn min_closed_3d(vs: &[Vector]) -> u64 {
    if vs.is_empty() {
        return 0;
    }
    let mut normals: Vec<Vector> = Vec::new();
    for i in 0..vs.len() {
        normals.push(vs[i].clone());
        for j in i + 1..vs.len() {
            let c = cross3(&vs[i], &vs[j]);
            if !is_zero_vec(&c) {
                normals.push(c);
            }
        }
    }
    let mut best = u64::MAX;
    for u0 in normals {
        for u in [u0.clone(), u0.iter().map(|x| -x).collect::<Vector>()] {
            let mut pos = 0u64;
            let mut plane = Vec::new();
            for v in vs {
                let s = inner(&u, v);
                if s.is_positive() {
                    pos += 1;
                } else if s.is_zero() {
                    plane.push(v.clone());
                }
            }
            // In-plane vectors: drop a coordinate where u is nonzero to get planar coordinates.
            let drop = u.iter().position(|x| !x.is_zero()).unwrap();
            let flat: Vec<Vector> = plane
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != drop)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            best = best.min(pos + min_closed_2d(&flat));
        }
    }
    best
}

/// Number of `(d+1)`-subsets whose closed hull contains `q`, and how many of
/// those contain it only on their boundary.
pub fn oracle_simplicial(points: &[Vector], weights: &[u64], q: &[Rational]) -> Result<(u64, u64)> {
    let d = q.len();
    let all = expand(points, weights);
    let n = all.len();
    if n < d + 1 {
        return Ok((0, 0));
    }
    let combos = binom(n as u64, d as u64 + 1);
    if combos > 10_000_000 {
        return Err(Error::BudgetExceeded {
            needed: combos as u128,
            budget: 10_000_000,
        });
    }
    let (mut count, mut boundary) = (0, 0);
    let mut idx: Vec<usize> = (0..=d).collect();
    loop {
        let verts: Vec<&[Rational]> = idx.iter().map(|&i| all[i].as_slice()).collect();
        let full = simplex_volume_sign(&verts);
        if full != 0 {
            // q is inside iff replacing any vertex by q never flips the orientation.
            let mut zero = false;
            let mut inside = true;
            for j in 0..=d {
                let mut swapped = verts.clone();
                swapped[j] = q;
                let s = simplex_volume_sign(&swapped);
                zero |= s == 0;
                inside &= s == 0 || s == full;
            }
            if inside {
                count += 1;
                boundary += zero as u64;
            }
        } else if hull_contains(&verts, q) {
            count += 1;
            boundary += 1;
        }
        if !advance(&mut idx, n) {
            break;
        }
    }
    Ok((count, boundary))
}

/// Sign of `det[v_1 - v_0, ..., v_d - v_0]`.
fn simplex_volume_sign(verts: &[&[Rational]]) -> i8 {
    let mut m: Vec<Vector> = verts[1..].iter().map(|v| sub(v, verts[0])).collect();
    let k = m.len();
    let mut sign = 1i8;
    let mut det = Rational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        det *= &m[c][c];
        for r in c + 1..k {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[c][c];
                for j in c..k {
                    let delta = &f * &m[c][j];
                    m[r][j] -= delta;
                }
            }
        }
    }
    if det.is_positive() {
        sign
    } else {
        -sign
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

/// Whether every transversal of `parts` spans a closed simplex containing `q`.
/// Returns the verdict and whether sampling (rather than exhaustion) was used.
pub fn oracle_transversal_containment(
    parts: &[Vec<Vector>],
    q: &[Rational],
    budget: OracleBudget,
) -> (bool, bool) {
    if parts.iter().any(Vec::is_empty) {
        return (false, false);
    }
    let total: u128 = parts.iter().map(|p| p.len() as u128).product();
    let check = |choice: &[usize]| {
        let verts: Vec<&[Rational]> = choice
            .iter()
            .zip(parts)
            .map(|(&i, p)| p[i].as_slice())
            .collect();
        hull_contains(&verts, q)
    };
    if total <= budget.max_enumerations as u128 {
        let mut choice = vec![0usize; parts.len()];
        loop {
            if !check(&choice) {
                return (false, false);
            }
            let mut k = 0;
            loop {
                if k == parts.len() {
                    return (true, false);
                }
                choice[k] += 1;
                if choice[k] < parts[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.sample_size {
        let choice: Vec<usize> = parts.iter().map(|p| rng.gen_range(0..p.len())).collect();
        if !check(&choice) {
            return (false, true);
        }
    }
    (true, true)
}

/// Planar Tukey depth of a rational vertex `(x/w, y/w)` on integer data, `n - max open halfplane`.
fn int_vertex_depth(pts: &[[i64; 2]], vx: i128, vy: i128, w: i128) -> u64 {
    // orient(v, a, b) * w = w (a x b) - (V x b) + (V x a), V = (vx, vy).
    let n = pts.len();
    let orient = |a: &[i64; 2], b: &[i64; 2]| -> i128 {
        let (ax, ay, bx, by) = (a[0] as i128, a[1] as i128, b[0] as i128, b[1] as i128);
        (w * (ax * by - ay * bx) - (vx * by - vy * bx) + (vx * ay - vy * ax)).signum()
    };
    // Dot sign of (a - v) and (b - v), times w^2 > 0; used to split collinear rays.
    let same_ray = |a: &[i64; 2], b: &[i64; 2]| -> bool {
        let ax = a[0] as i128 * w - vx;
        let ay = a[1] as i128 * w - vy;
        let bx = b[0] as i128 * w - vx;
        let by = b[1] as i128 * w - vy;
        // signs suffice: collinear vectors point the same way iff components agree in sign
        ax.signum() == bx.signum() && ay.signum() == by.signum()
    };
    let at_v = |a: &[i64; 2]| a[0] as i128 * w == vx && a[1] as i128 * w == vy;
    let mut best_open = 0u64;
    for a in pts.iter().filter(|p| !at_v(p)) {
        let (mut left, mut right, mut fwd, mut back) = (0u64, 0u64, 0u64, 0u64);
        for b in pts.iter().filter(|p| !at_v(p)) {
            match orient(a, b) {
                1 => left += 1,
                -1 => right += 1,
                _ => {
                    if same_ray(a, b) {
                        fwd += 1
                    } else {
                        back += 1
                    }
                }
            }
        }
        best_open = best_open.max(left.max(right) + fwd.max(back));
    }
    n as u64 - best_open
}

/// Maximum Tukey depth over all vertices of the arrangement of lines through
/// pairs of data points (data points included). Planar, distinct points.
pub fn oracle_max_depth_2d(points: &[Vector]) -> Result<u64> {
    let scale = common_scale(points)
        .ok_or_else(|| Error::Precondition("coordinates too large for the oracle".into()))?;
    let pts: Vec<[i64; 2]> = points
        .iter()
        .map(|p| {
            let f = |c: &Rational| {
                (c * Rational::from_integer(scale.into()))
                    .to_integer()
                    .to_i64()
                    .unwrap()
            };
            [f(&p[0]), f(&p[1])]
        })
        .collect();
    let n = pts.len();
    let mut best = 0;
    for p in &pts {
        best = best.max(int_vertex_depth(&pts, p[0] as i128, p[1] as i128, 1));
    }
    let mut lines: Vec<(i128, i128, i128)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = (pts[j][1] - pts[i][1]) as i128;
            let b = (pts[i][0] - pts[j][0]) as i128;
            let c = a * pts[i][0] as i128 + b * pts[i][1] as i128;
            lines.push((a, b, c));
        }
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a1, b1, c1) = lines[i];
            let (a2, b2, c2) = lines[j];
            let mut w = a1 * b2 - a2 * b1;
            if w == 0 {
                continue;
            }
            let mut x = c1 * b2 - c2 * b1;
            let mut y = a1 * c2 - a2 * c1;
            if w < 0 {
                w = -w;
                x = -x;
                y = -y;
            }
            best = best.max(int_vertex_depth(&pts, x, y, w));
        }
    }
    Ok(best)
}

/// Least common denominator when it keeps coordinates below `2^20`.
fn common_scale(points: &[Vector]) -> Option<i64> {
    use num_integer::Integer;
    let mut l = num_bigint::BigInt::one();
    for p in points {
        for c in p {
            l = l.lcm(c.denom());
        }
    }
    let l = l.to_i64()?;
    let limit = Rational::from_integer((1i64 << 20).into());
    let lr = Rational::from_integer(l.into());
    points
        .iter()
        .all(|p| p.iter().all(|c| (c * &lr).abs() < limit))
        .then_some(l)
}

/// Size of the largest subset of `points` whose closed hull misses `q`, by
/// exhaustive subset search (`n <= 20`, `d <= 3`).
pub fn oracle_max_separable_subset(points: &[Vector], q: &[Rational]) -> Result<usize> {
    let n = points.len();
    let d = q.len();
    if n > 20 {
        return Err(Error::BudgetExceeded {
            needed: 1u128 << n,
            budget: 1 << 20,
        });
    }
    // Minimal containing tuples (Carathéodory): subsets of size <= d + 1.
    let mut blockers: Vec<u32> = Vec::new();
    for size in 1..=(d + 1).min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let verts: Vec<&[Rational]> = idx.iter().map(|&i| points[i].as_slice()).collect();
            if hull_contains(&verts, q) {
                blockers.push(idx.iter().map(|&i| 1u32 << i).sum());
            }
            if !advance(&mut idx, n) {
                break;
            }
        }
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > best && blockers.iter().all(|&b| mask & b != b) {
            best = size;
        }
    }
    Ok(best)
}

/// Nonemptiness of `{x : a_i . x >= b_i}` in `d <= 3` by enumerating all
/// vertices of the system augmented with a large bounding box.
pub fn oracle_lp_nonempty(constraints: &[(Vector, Rational)], d: usize, box_radius: i64) -> bool {
    let mut rows: Vec<(Vector, Rational)> = constraints.to_vec();
    for j in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[j] = Rational::one();
        rows.push((e.clone(), Rational::from_integer((-box_radius).into())));
        rows.push((
            e.iter().map(|x| -x).collect(),
            Rational::from_integer((-box_radius).into()),
        ));
    }
    let m = rows.len();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let system: Vec<Vector> = idx
            .iter()
            .map(|&i| {
                let mut r = rows[i].0.clone();
                r.push(rows[i].1.clone());
                r
            })
            .collect();
        if let Some(x) = gauss_solve(system) {
            if rows.iter().all(|(a, b)| &inner(a, &x) >= b) {
                return true;
            }
        }
        if !advance(&mut idx, m) {
            return false;
        }
    }
}

/// Strict planar separability of `a` from `b`, by trying every line through
/// two input points with all admissible tiny rotations/translations.
pub fn oracle_separable_2d(a: &[Vector], b: &[Vector]) -> bool {
    let all: Vec<(&Vector, bool)> = a
        .iter()
        .map(|p| (p, true))
        .chain(b.iter().map(|p| (p, false)))
        .collect();
    if a.is_empty() || b.is_empty() {
        return true;
    }
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let (p, r) = (all[i].0, all[j].0);
            let dir = sub(r, p);
            if is_zero_vec(&dir) {
                continue;
            }
            for a_left in [true, false] {
                let mut ok = true;
                let mut on_a: Vec<Rational> = Vec::new();
                let mut on_b: Vec<Rational> = Vec::new();
                for &(x, is_a) in &all {
                    let rel = sub(x, p);
                    let s = cross2(&dir, &rel);
                    if s.is_zero() {
                        let t = inner(&dir, &rel);
                        if is_a {
                            on_a.push(t)
                        } else {
                            on_b.push(t)
                        }
                    } else if (s.is_positive() == a_left) != is_a {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let split = on_a.is_empty()
                    || on_b.is_empty()
                    || on_a.iter().max() < on_b.iter().min()
                    || on_b.iter().max() < on_a.iter().min();
                if split {
                    return true;
                }
            }
        }
    }
    // Single point per side with nothing else: covered above; all points coincident cannot happen for distinct inputs.
    false
}

/// Indices of the points that are vertices of the planar convex hull
/// (a point is a vertex iff it lies in no triangle or segment of the others).
pub fn oracle_hull_vertices_2d(points: &[Vector]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let others: Vec<&[Rational]> = (0..points.len())
                .filter(|&j| j != i)
                .map(|j| points[j].as_slice())
                .collect();
            !hull_contains(&others, &points[i])
        })
        .collect()
}

/// `min` over all `k`-subsets of the maximum of `values`.
pub fn oracle_min_max_subset(values: &[Rational], k: usize) -> Option<Rational> {
    let n = values.len();
    if k == 0 || k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best: Option<Rational> = None;
    loop {
        let mx = idx.iter().map(|&i| values[i].clone()).max().unwrap();
        if best.as_ref().is_none_or(|b| &mx < b) {
            best = Some(mx);
        }
        if !advance(&mut idx, n) {
            return best;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::{rat, ratio};

    fn pts(rows: &[&[i64]]) -> Vec<Vector> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect()
    }

    fn ring() -> Vec<Vector> {
        pts(&[
            &[0, 0],
            &[1, 0],
            &[2, 0],
            &[0, 1],
            &[2, 1],
            &[0, 2],
            &[1, 2],
            &[2, 2],
        ])
    }

    #[test]
    fn tukey_oracle_examples() {
        let tri = pts(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(
            oracle_tukey(&tri, &[1, 1, 1], &[rat(1), rat(1)]).unwrap(),
            1
        );
        assert_eq!(
            oracle_tukey(&ring(), &[1; 8], &[rat(1), rat(1)]).unwrap(),
            4
        );
        assert_eq!(
            oracle_tukey(&tri, &[1, 1, 1], &[rat(0), rat(0)]).unwrap(),
            1
        );
        let tet = pts(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4]]);
        assert_eq!(
            oracle_tukey(&tet, &[1; 4], &[rat(1), rat(1), rat(1)]).unwrap(),
            1
        );
    }

    #[test]
    fn simplicial_oracle_examples() {
        let quad = pts(&[&[0, 0], &[3, 0], &[3, 3], &[0, 3]]);
        assert_eq!(
            oracle_simplicial(&quad, &[1; 4], &[rat(1), ratio(3, 2)]).unwrap(),
            (2, 0)
        );
        let clusters = pts(&[
            &[10, 1],
            &[10, -1],
            &[-10, 9],
            &[-9, 10],
            &[-10, -9],
            &[-9, -10],
        ]);
        let (count, _) = oracle_simplicial(&clusters, &[1; 6], &[rat(0), rat(0)]).unwrap();
        assert!(count >= 8);
    }

    #[test]
    fn transversal_oracle_examples() {
        let parts = vec![pts(&[&[0, 0]]), pts(&[&[4, 0]]), pts(&[&[0, 4]])];
        assert!(
            oracle_transversal_containment(&parts, &[rat(1), rat(1)], OracleBudget::default()).0
        );
        let bad = vec![pts(&[&[0, 0], &[5, 5]]), pts(&[&[4, 0]]), pts(&[&[0, 4]])];
        assert!(
            !oracle_transversal_containment(&bad, &[rat(1), rat(1)], OracleBudget::default()).0
        );
    }

    #[test]
    fn max_depth_oracle_on_ring() {
        assert_eq!(oracle_max_depth_2d(&ring()).unwrap(), 4);
        let tri = pts(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(oracle_max_depth_2d(&tri).unwrap(), 1);
    }

    #[test]
    fn separable_subset_oracle() {
        assert_eq!(
            oracle_max_separable_subset(&ring(), &[rat(1), rat(1)]).unwrap(),
            4
        );
        let tri = pts(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(
            oracle_max_separable_subset(&tri, &[rat(1), rat(1)]).unwrap(),
            2
        );
    }

    #[test]
    fn lp_and_separation_oracles() {
        let cons = vec![(vec![rat(1)], rat(0)), (vec![rat(-1)], rat(-1))];
        assert!(oracle_lp_nonempty(&cons, 1, 1000));
        let cons = vec![(vec![rat(1)], rat(1)), (vec![rat(-1)], rat(0))];
        assert!(!oracle_lp_nonempty(&cons, 1, 1000));
        assert!(!oracle_separable_2d(
            &pts(&[&[0, 0], &[2, 2]]),
            &pts(&[&[2, 0], &[0, 2]])
        ));
        assert!(oracle_separable_2d(&pts(&[&[0, 0]]), &pts(&[&[2, 0]])));
    }

    #[test]
    fn hull_vertices_of_square_with_center() {
        let p = pts(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1]]);
        assert_eq!(oracle_hull_vertices_2d(&p), vec![0, 1, 2, 3]);
    }
}
