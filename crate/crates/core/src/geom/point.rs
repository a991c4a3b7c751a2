use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, rat, Rational};
use crate::error::{check_dim, Error, Result};

/// A point in `R^d` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Precondition(
                "a point needs at least one coordinate".into(),
            ));
        }
        Ok(Self { coords })
    }

    /// Integer coordinates; panics on an empty slice.
    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| rat(c)).collect()).expect("non-empty coordinates")
    }

    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&(n, d)| super::rational::ratio(n, d))
                .collect(),
        )
        .expect("non-empty coordinates")
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        dot(&self.coords, other)
    }

    pub fn add(&self, other: &[Rational]) -> Point {
        Point {
            coords: self.coords.iter().zip(other).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scaled(&self, k: &Rational) -> Point {
        Point {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> Point {
        Point {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + (b - a) * t)
                .collect(),
        }
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(super::rational::to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }
}

impl Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.coords[i]
    }
}

impl Sub for &Point {
    type Output = Vec<Rational>;
    fn sub(self, rhs: &Point) -> Vec<Rational> {
        self.coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a - b)
            .collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coords = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Point::new(coords).map_err(serde::de::Error::custom)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A finite multiset of points sharing one dimension.
///
/// Points are distinct; repeated elements are carried by `weights`, so `n`
/// is the weight total rather than the number of stored points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    weights: Vec<u64>,
}

impl PointSet {
    /// Distinct points with unit weights. Coincident points are rejected.
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        let weights = vec![1; points.len()];
        Self::with_weights(dim, points, weights)
    }

    pub fn with_weights(dim: usize, points: Vec<Point>, weights: Vec<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        if weights.len() != points.len() {
            return Err(Error::Precondition(
                "one weight per point is required".into(),
            ));
        }
        if weights.contains(&0) {
            return Err(Error::Precondition("weights must be positive".into()));
        }
        let mut seen = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            check_dim(dim, p.dim())?;
            if let Some(j) = seen.insert(p, i) {
                return Err(Error::Degenerate(format!(
                    "points {j} and {i} coincide at {p}"
                )));
            }
        }
        Ok(Self {
            dim,
            points,
            weights,
        })
    }

    /// Builds a multiset, merging coincident points into weights. Returns the
    /// set and the number of merged duplicates.
    pub fn from_multiset(dim: usize, points: Vec<Point>) -> Result<(Self, usize)> {
        let mut index: HashMap<Point, usize> = HashMap::new();
        let mut unique = Vec::new();
        let mut weights: Vec<u64> = Vec::new();
        let mut merged = 0;
        for p in points {
            check_dim(dim, p.dim())?;
            match index.get(&p) {
                Some(&i) => {
                    weights[i] += 1;
                    merged += 1;
                }
                None => {
                    index.insert(p.clone(), unique.len());
                    unique.push(p);
                    weights.push(1);
                }
            }
        }
        Ok((Self::with_weights(dim, unique, weights)?, merged))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dim = rows.first().map_or(1, |r| r.len());
        Self::new(dim, rows.iter().map(|r| Point::from_ints(r)).collect())
            .expect("valid integer point set")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    /// Number of stored (distinct) points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Multiplicity-weighted size.
    pub fn n(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, u64)> {
        self.points.iter().zip(self.weights.iter().copied())
    }

    /// Sub-multiset at the given indices (weights carried over).
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            weights: indices.iter().map(|&i| self.weights[i]).collect(),
        }
    }

    pub fn position(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|x| x == p)
    }

    /// Points with their multiplicity expanded into repeated entries.
    pub fn expanded(&self) -> Vec<Point> {
        self.iter()
            .flat_map(|(p, w)| std::iter::repeat_n(p.clone(), w as usize))
            .collect()
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<PointSet> {
        let points: Vec<Point> = self.points.iter().map(f).collect();
        let dim = points.first().map_or(self.dim, |p| p.dim());
        PointSet::with_weights(dim, points, self.weights.clone())
    }

    pub fn check_query(&self, q: &Point) -> Result<()> {
        check_dim(self.dim, q.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coincident_points_are_rejected_or_merged() {
        let p = Point::from_ints(&[1, 2]);
        assert!(matches!(
            PointSet::new(2, vec![p.clone(), p.clone()]),
            Err(Error::Degenerate(_))
        ));
        let (set, merged) =
            PointSet::from_multiset(2, vec![p.clone(), p.clone(), Point::from_ints(&[0, 0])])
                .unwrap();
        assert_eq!(merged, 1);
        assert_eq!(set.len(), 2);
        assert_eq!(set.n(), 3);
    }

    #[test]
    fn dimension_checked() {
        let err = PointSet::new(2, vec![Point::from_ints(&[1, 2, 3])]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn serde_uses_rational_strings() {
        let p = Point::from_ratios(&[(1, 2), (3, 1)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["1/2","3"]"#);
        let back: Point = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
