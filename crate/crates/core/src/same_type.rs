//! Planar same-type refinement.
//!
//! A family of planar sets has the same-type property when every
//! transversal has the same order type. It suffices that for all disjoint
//! index sets `I`, `J` with `|I| + |J| <= 3` the unions over `I` and over
//! `J` are strictly separated by a line; the refinement shrinks the sets
//! until that holds, and certification checks the order types directly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::depth::binomial;
use crate::error::{Error, Result};
use crate::geom::hyperplane::Line;
use crate::geom::point::{Point, PointSet};
use crate::geom::predicates::{orient2d, planar_general_position, IntFrame};
use crate::geom::rational::{ratio, Rational};
use crate::geom::separation::separate_points;

pub const MAX_FAMILY: usize = 6;
/// Above this many point triples, certification samples transversals.
pub const EXHAUSTIVE_TRIPLES: u64 = 10_000_000;
pub const SAMPLED_TRANSVERSALS: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct ColoredFamily {
    sets: Vec<PointSet>,
}

impl ColoredFamily {
    pub fn new(sets: Vec<PointSet>) -> Result<Self> {
        if sets.len() > MAX_FAMILY {
            return Err(Error::Precondition(format!(
                "at most {MAX_FAMILY} sets are supported"
            )));
        }
        let mut seen = BTreeMap::new();
        for (i, s) in sets.iter().enumerate() {
            if s.dim() != 2 {
                return Err(Error::UnsupportedDimension(s.dim()));
            }
            if s.is_empty() {
                return Err(Error::Precondition(format!("set {i} is empty")));
            }
            for p in s.points() {
                if let Some(j) = seen.insert(p.clone(), i) {
                    return Err(Error::Precondition(format!(
                        "sets {j} and {i} share the point {p}"
                    )));
                }
            }
        }
        Ok(Self { sets })
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Two disjoint groups of set indices whose unions are not strictly separable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SameTypeCertificate {
    pub subsets: Vec<PointSet>,
    /// For each subset, the indices of its points in the input set.
    pub kept: Vec<Vec<usize>>,
    /// Orientation of every index triple `i < j < k` on any transversal.
    pub reference_orientation: BTreeMap<(usize, usize, usize), i8>,
    /// `(|Y_i|, |X_i|)`.
    pub sizes: Vec<(usize, usize)>,
    /// `3^(-3 C(m-1, 2))`, the guaranteed fraction in the plane.
    pub bound: Rational,
    pub meets_bound: bool,
    pub iterations: usize,
}

impl SameTypeCertificate {
    pub fn ratios(&self) -> Vec<Rational> {
        self.sizes
            .iter()
            .map(|&(y, x)| ratio(y as i64, x as i64))
            .collect()
    }
}

/// A line with at most `floor(|A|/2)` points of `A` and at most
/// `floor(|B|/2)` points of `B` strictly on each side, when one exists
/// through two input points (always, in general position); otherwise the
/// candidate with the smallest excess.
pub fn ham_sandwich_2d(a: &PointSet, b: &PointSet) -> Result<Line> {
    let pts: Vec<(&Point, bool)> = a
        .points()
        .iter()
        .map(|p| (p, true))
        .chain(b.points().iter().map(|p| (p, false)))
        .collect();
    match pts.len() {
        0 => {
            return Err(Error::Precondition(
                "ham sandwich cut of two empty sets".into(),
            ))
        }
        1 => {
            return Line::new(
                pts[0].0.clone(),
                vec![Rational::one(), Rational::from_integer(0.into())],
            )
        }
        _ => {}
    }
    let (half_a, half_b) = (a.len() / 2, b.len() / 2);
    let mut best: Option<(usize, Line)> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (p, r) = (pts[i].0, pts[j].0);
            let mut counts = [0usize; 4];
            for (x, in_a) in &pts {
                let o = orient2d(p, r, x);
                if o != 0 {
                    counts[usize::from(!in_a) * 2 + usize::from(o > 0)] += 1;
                }
            }
            let excess = counts[0].saturating_sub(half_a)
                + counts[1].saturating_sub(half_a)
                + counts[2].saturating_sub(half_b)
                + counts[3].saturating_sub(half_b);
            if best.as_ref().is_none_or(|(e, _)| excess < *e) {
                best = Some((excess, Line::through(p, r)?));
                if excess == 0 {
                    return Ok(best.unwrap().1);
                }
            }
        }
    }
    Ok(best.expect("at least one pair").1)
}

/// Disjoint index groups with `|I| + |J| <= 3`, `I` holding the smallest index.
fn group_pairs(m: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let members: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        if !(2..=3).contains(&members.len()) {
            continue;
        }
        // Split `members` into I (containing members[0]) and nonempty J.
        let rest = &members[1..];
        for sub in 0u32..(1 << rest.len()) - 1 {
            let mut i = vec![members[0]];
            let mut j = Vec::new();
            for (b, &x) in rest.iter().enumerate() {
                if sub >> b & 1 == 1 {
                    i.push(x);
                } else {
                    j.push(x);
                }
            }
            out.push(Violation { i, j });
        }
    }
    out.sort_by_key(|v| (v.i.len() + v.j.len(), v.i.clone(), v.j.clone()));
    out
}

fn union(sets: &[PointSet], idx: &[usize]) -> Vec<Point> {
    idx.iter()
        .flat_map(|&i| sets[i].points().iter().cloned())
        .collect()
}

/// The first pair of index groups whose unions are not strictly separable.
pub fn well_separated(family: &ColoredFamily) -> Result<Option<Violation>> {
    for v in group_pairs(family.len()) {
        let a = union(&family.sets, &v.i);
        let b = union(&family.sets, &v.j);
        if separate_points(&a, &b, true)?.is_none() {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Shrinks the sets until every transversal has the same order type.
///
/// Each violation `(I, J)` is removed by a line through two points of the
/// involved sets, with those two points pushed to either side by an
/// infinitesimal rotation or translation; the line keeping the largest
/// minimum fraction of the involved sets wins. Separated groups stay
/// separated as the sets shrink, and every round drops at least one point.
pub fn same_type_refine(family: &ColoredFamily) -> Result<SameTypeCertificate> {
    let m = family.len();
    let all: Vec<&Point> = family.sets.iter().flat_map(|s| s.points()).collect();
    if !planar_general_position(&all) {
        return Err(Error::Degenerate(
            "the family is not in general position".into(),
        ));
    }
    let frame = IntFrame::new(all.iter().copied());
    let orient = |a: usize, b: usize, c: usize| -> i8 {
        match &frame {
            Some(f) => f.orient2(a, b, c),
            None => orient2d(all[a], all[b], all[c]),
        }
    };
    let offsets: Vec<usize> = family
        .sets
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.len();
            Some(o)
        })
        .collect();
    // kept[i] = local indices of the surviving points of set i.
    let mut kept: Vec<Vec<usize>> = family.sets.iter().map(|s| (0..s.len()).collect()).collect();
    let mut iterations = 0;
    loop {
        let current = ColoredFamily {
            sets: (0..m).map(|i| family.sets[i].subset(&kept[i])).collect(),
        };
        let Some(v) = well_separated(&current)? else {
            break;
        };
        iterations += 1;
        let before: usize = kept.iter().map(Vec::len).sum();
        let involved: Vec<(usize, bool)> =
            v.i.iter()
                .map(|&i| (i, true))
                .chain(v.j.iter().map(|&j| (j, false)))
                .collect();
        let offsets = &offsets;
        let global: Vec<usize> = involved
            .iter()
            .flat_map(|&(s, _)| kept[s].iter().map(move |&k| offsets[s] + k))
            .collect();
        let mut best: Option<((Rational, usize), Vec<Vec<usize>>)> = None;
        for (x, &a) in global.iter().enumerate() {
            for &b in &global[x + 1..] {
                let sides: Vec<Vec<i8>> = involved
                    .iter()
                    .map(|&(s, _)| {
                        kept[s]
                            .iter()
                            .map(|&k| orient(a, b, offsets[s] + k))
                            .collect()
                    })
                    .collect();
                for (sa, sb, side_i) in [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                    .into_iter()
                    .flat_map(|(sa, sb)| [(sa, sb, 1i8), (sa, sb, -1i8)])
                {
                    let mut choice = Vec::with_capacity(involved.len());
                    let mut score: Option<Rational> = None;
                    let mut total = 0;
                    for (t, &(s, in_i)) in involved.iter().enumerate() {
                        let want = if in_i { side_i } else { -side_i };
                        let keep: Vec<usize> = kept[s]
                            .iter()
                            .zip(&sides[t])
                            .filter(|&(&k, &o)| {
                                let g = offsets[s] + k;
                                let o = if g == a {
                                    sa
                                } else if g == b {
                                    sb
                                } else {
                                    o
                                };
                                o == want
                            })
                            .map(|(&k, _)| k)
                            .collect();
                        let frac = ratio(keep.len() as i64, kept[s].len() as i64);
                        score = Some(score.map_or(frac.clone(), |sc: Rational| sc.min(frac)));
                        total += keep.len();
                        choice.push(keep);
                    }
                    if choice.iter().any(Vec::is_empty) {
                        continue;
                    }
                    let key = (score.unwrap(), total);
                    if best.as_ref().is_none_or(|(k, _)| key > *k) {
                        best = Some((key, choice));
                    }
                }
            }
        }
        let Some((_, choice)) = best else {
            return Err(Error::Internal(format!(
                "no separating line for violation {v:?}"
            )));
        };
        for (&(s, _), keep) in involved.iter().zip(choice) {
            kept[s] = keep;
        }
        let after: usize = kept.iter().map(Vec::len).sum();
        if after >= before {
            return Err(Error::Internal("refinement made no progress".into()));
        }
    }
    let subsets: Vec<PointSet> = (0..m).map(|i| family.sets[i].subset(&kept[i])).collect();
    let check = certify_same_type(&subsets)?;
    if !check.holds {
        return Err(Error::Internal(
            "refined family failed same-type certification".into(),
        ));
    }
    let bound = same_type_fraction(m);
    let sizes: Vec<(usize, usize)> = (0..m)
        .map(|i| (kept[i].len(), family.sets[i].len()))
        .collect();
    let meets_bound = sizes.iter().all(|&(y, x)| {
        let need = (&bound * Rational::from_integer(x.into()))
            .ceil()
            .to_integer()
            .to_usize()
            .unwrap_or(usize::MAX);
        y >= need.max(1)
    });
    Ok(SameTypeCertificate {
        subsets,
        kept,
        reference_orientation: check.reference,
        sizes,
        bound,
        meets_bound,
        iterations,
    })
}

/// `3^(-3 C(m-1, 2))`.
pub fn same_type_fraction(m: usize) -> Rational {
    let e = binomial(m.saturating_sub(1) as u64, 2)
        .to_u32()
        .unwrap_or(u32::MAX)
        .saturating_mul(3);
    Rational::new(BigInt::one(), Pow::pow(BigInt::from(3), e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameTypeCheck {
    pub holds: bool,
    /// Every point triple was checked (otherwise transversals were sampled).
    pub exhaustive: bool,
    /// A collinear transversal triple was found.
    pub degenerate: bool,
    pub reference: BTreeMap<(usize, usize, usize), i8>,
}

/// Whether all transversals of `subsets` share one order type.
///
/// The orientation of an index triple on a transversal depends only on the
/// three chosen points, so checking every point triple across every index
/// triple is the same as checking every transversal.
pub fn certify_same_type(subsets: &[PointSet]) -> Result<SameTypeCheck> {
    let m = subsets.len();
    if subsets.iter().any(PointSet::is_empty) {
        return Err(Error::Precondition(
            "certification needs nonempty sets".into(),
        ));
    }
    if let Some(s) = subsets.iter().find(|s| s.dim() != 2) {
        return Err(Error::UnsupportedDimension(s.dim()));
    }
    let mut reference = BTreeMap::new();
    let triples: Vec<(usize, usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| (i, j, k))))
        .collect();
    for &(i, j, k) in &triples {
        let o = orient2d(
            &subsets[i].points()[0],
            &subsets[j].points()[0],
            &subsets[k].points()[0],
        );
        reference.insert((i, j, k), o);
    }
    let fail = |degenerate| SameTypeCheck {
        holds: false,
        exhaustive: true,
        degenerate,
        reference: reference.clone(),
    };
    if reference.values().any(|&o| o == 0) {
        return Ok(fail(true));
    }
    let work: u64 = triples
        .iter()
        .map(|&(i, j, k)| (subsets[i].len() * subsets[j].len() * subsets[k].len()) as u64)
        .sum();
    if work <= EXHAUSTIVE_TRIPLES {
        let all: Vec<&Point> = subsets.iter().flat_map(|s| s.points()).collect();
        let frame = IntFrame::new(all.iter().copied());
        let offsets: Vec<usize> = subsets
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s.len();
                Some(o)
            })
            .collect();
        for &(i, j, k) in &triples {
            let want = reference[&(i, j, k)];
            for a in 0..subsets[i].len() {
                for b in 0..subsets[j].len() {
                    for c in 0..subsets[k].len() {
                        let o = match &frame {
                            Some(f) => f.orient2(offsets[i] + a, offsets[j] + b, offsets[k] + c),
                            None => orient2d(
                                &subsets[i].points()[a],
                                &subsets[j].points()[b],
                                &subsets[k].points()[c],
                            ),
                        };
                        if o != want {
                            return Ok(fail(o == 0));
                        }
                    }
                }
            }
        }
        return Ok(SameTypeCheck {
            holds: true,
            exhaustive: true,
            degenerate: false,
            reference,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a3e7e9e);
    for _ in 0..SAMPLED_TRANSVERSALS {
        let pick: Vec<&Point> = subsets
            .iter()
            .map(|s| &s.points()[rng.gen_range(0..s.len())])
            .collect();
        for &(i, j, k) in &triples {
            let o = orient2d(pick[i], pick[j], pick[k]);
            if o != reference[&(i, j, k)] {
                let mut out = fail(o == 0);
                out.exhaustive = false;
                return Ok(out);
            }
        }
    }
    Ok(SameTypeCheck {
        holds: true,
        exhaustive: false,
        degenerate: false,
        reference,
    })
}
