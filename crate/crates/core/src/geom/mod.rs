//! Exact rational geometry: points, hyperplanes, orientation predicates and
//! low-dimensional linear programming.

pub mod hyperplane;
pub mod lp;
pub mod point;
pub mod predicates;
pub mod rational;
pub mod separation;

pub use hyperplane::{Halfspace, Line, OrientedHyperplane, Side};
pub use lp::{in_convex_hull, lp_feasible};
pub use point::{Point, PointSet};
pub use predicates::{orientation, IntFrame};
pub use rational::Rational;
pub use separation::separable;
