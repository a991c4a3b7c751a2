use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::point::{dot, Point};
use super::rational::{format_rational, sign, Rational};
use crate::error::{check_dim, Error, Result};

/// `{y : normal . y = offset}`; the positive side is `normal . y >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedHyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl OrientedHyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.is_empty() || normal.iter().all(Zero::is_zero) {
            return Err(Error::Degenerate("hyperplane normal is zero".into()));
        }
        Ok(Self { normal, offset })
    }

    /// Hyperplane through `point` with the given normal.
    pub fn through(point: &Point, normal: Vec<Rational>) -> Result<Self> {
        check_dim(point.dim(), normal.len())?;
        let offset = point.dot(&normal);
        Self::new(normal, offset)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `normal . y - offset`.
    pub fn eval(&self, y: &Point) -> Rational {
        dot(&self.normal, y.coords()) - &self.offset
    }

    pub fn side_of(&self, y: &Point) -> i8 {
        sign(&self.eval(y))
    }

    pub fn contains(&self, y: &Point) -> bool {
        self.eval(y).is_zero()
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: self.normal.iter().map(|c| -c).collect(),
            offset: -&self.offset,
        }
    }

    /// Parallel copy shifted so that `eval` changes by `-delta` (i.e. moved towards the positive side).
    pub fn shifted(&self, delta: &Rational) -> Self {
        Self {
            normal: self.normal.clone(),
            offset: &self.offset + delta,
        }
    }

    /// Scales the normal to have integer entries with gcd 1 (offset scaled alike).
    pub fn normalized(&self) -> Self {
        use num_integer::Integer;
        let mut lcm = num_bigint::BigInt::from(1);
        for c in self.normal.iter().chain(std::iter::once(&self.offset)) {
            lcm = lcm.lcm(c.denom());
        }
        let scale = Rational::from_integer(lcm);
        let mut normal: Vec<Rational> = self.normal.iter().map(|c| c * &scale).collect();
        let mut offset = &self.offset * &scale;
        let mut g = num_bigint::BigInt::from(0);
        for c in normal.iter().chain(std::iter::once(&offset)) {
            g = g.gcd(c.numer());
        }
        if !g.is_zero() {
            let g = Rational::from_integer(g.abs());
            normal.iter_mut().for_each(|c| *c = &*c / &g);
            offset /= &g;
        }
        Self { normal, offset }
    }
}

impl Serialize for OrientedHyperplane {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrientedHyperplane", 2)?;
        st.serialize_field(
            "normal",
            &self.normal.iter().map(format_rational).collect::<Vec<_>>(),
        )?;
        st.serialize_field("offset", &format_rational(&self.offset))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for OrientedHyperplane {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            normal: Vec<String>,
            offset: String,
        }
        use super::rational::parse_rational;
        let raw = Raw::deserialize(d)?;
        let normal = raw
            .normal
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let offset = parse_rational(&raw.offset).map_err(serde::de::Error::custom)?;
        OrientedHyperplane::new(normal, offset).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

/// One side of an oriented hyperplane, open or closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    pub boundary: OrientedHyperplane,
    pub closed: bool,
    pub side: Side,
}

impl Halfspace {
    pub fn closed(boundary: OrientedHyperplane, side: Side) -> Self {
        Self {
            boundary,
            closed: true,
            side,
        }
    }

    pub fn open(boundary: OrientedHyperplane, side: Side) -> Self {
        Self {
            boundary,
            closed: false,
            side,
        }
    }

    pub fn dim(&self) -> usize {
        self.boundary.dim()
    }

    /// Signed slack: non-negative exactly on the closed halfspace.
    pub fn slack(&self, y: &Point) -> Rational {
        let v = self.boundary.eval(y);
        match self.side {
            Side::Positive => v,
            Side::Negative => -v,
        }
    }

    pub fn contains(&self, y: &Point) -> bool {
        let s = self.slack(y);
        if self.closed {
            !s.is_negative()
        } else {
            s.is_positive()
        }
    }

    /// Same set written as `a . y >= b` (closed) or `a . y > b` (open).
    pub fn as_geq(&self) -> (Vec<Rational>, Rational) {
        match self.side {
            Side::Positive => (self.boundary.normal.clone(), self.boundary.offset.clone()),
            Side::Negative => (
                self.boundary.normal.iter().map(|c| -c).collect(),
                -&self.boundary.offset,
            ),
        }
    }

    /// The closure of the complementary halfspace.
    pub fn complement(&self) -> Halfspace {
        Halfspace {
            boundary: self.boundary.clone(),
            closed: !self.closed,
            side: match self.side {
                Side::Positive => Side::Negative,
                Side::Negative => Side::Positive,
            },
        }
    }
}

/// The line `point + t * direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub point: Point,
    pub direction: Vec<Rational>,
}

impl Line {
    pub fn new(point: Point, direction: Vec<Rational>) -> Result<Self> {
        check_dim(point.dim(), direction.len())?;
        if direction.iter().all(Zero::is_zero) {
            return Err(Error::Precondition("line direction must be nonzero".into()));
        }
        Ok(Self { point, direction })
    }

    pub fn through(a: &Point, b: &Point) -> Result<Self> {
        Self::new(a.clone(), b - a)
    }

    pub fn at(&self, t: &Rational) -> Point {
        self.point
            .add(&self.direction.iter().map(|c| c * t).collect::<Vec<_>>())
    }

    /// Planar side of `y`: +1 left of the direction, -1 right, 0 on the line.
    pub fn side_of(&self, y: &Point) -> i8 {
        let v = y - &self.point;
        sign(&(&self.direction[0] * &v[1] - &self.direction[1] * &v[0]))
    }

    /// Planar normal form, positive side on the left.
    pub fn to_hyperplane(&self) -> Result<OrientedHyperplane> {
        OrientedHyperplane::through(
            &self.point,
            vec![-self.direction[1].clone(), self.direction[0].clone()],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::rat;

    #[test]
    fn zero_normal_rejected() {
        assert!(OrientedHyperplane::new(vec![rat(0), rat(0)], rat(1)).is_err());
    }

    #[test]
    fn membership_is_exact() {
        let h = OrientedHyperplane::new(vec![rat(1), rat(0)], rat(1)).unwrap();
        let closed = Halfspace::closed(h.clone(), Side::Positive);
        let open = Halfspace::open(h, Side::Positive);
        let on = Point::from_ints(&[1, 5]);
        assert!(closed.contains(&on));
        assert!(!open.contains(&on));
        assert!(open.complement().contains(&on));
        assert!(closed.contains(&Point::from_ints(&[2, 0])));
        assert!(!closed.contains(&Point::from_ints(&[0, 0])));
    }

    #[test]
    fn normalized_keeps_the_set() {
        let h = OrientedHyperplane::new(vec![crate::geom::rational::ratio(2, 3), rat(4)], rat(2))
            .unwrap();
        let n = h.normalized();
        assert_eq!(n.normal(), &[rat(1), rat(6)]);
        assert_eq!(n.offset(), &rat(3));
    }
}
