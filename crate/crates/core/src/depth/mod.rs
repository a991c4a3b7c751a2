//! Tukey and simplicial depth, centerpoints, and maximum separable subsets.

mod centerpoint;
mod simplicial;
mod tukey;

use num_bigint::BigUint;
use serde::Serialize;

use crate::geom::hyperplane::Halfspace;
use crate::geom::rational::Rational;

pub use centerpoint::centerpoint;
pub use simplicial::{simplicial_depth, SIMPLICIAL_BUDGET};
pub use tukey::{max_separable_subset, tukey_depth, MAX_TUKEY_DIM};

/// Result of a depth query.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthReport {
    /// Weighted count: points in the witness halfspace, or containing tuples.
    pub raw: u64,
    /// `raw / n` (Tukey) or `raw / C(n, d+1)` (simplicial).
    pub normalized: Rational,
    pub witness: DepthWitness,
    /// Simplicial only: counted tuples with the query on their boundary.
    pub boundary_tuples: u64,
}

impl DepthReport {
    pub fn degenerate(&self) -> bool {
        self.boundary_tuples > 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthWitness {
    /// Closed halfspace containing the query and exactly `raw` points.
    Halfspace(Halfspace),
    /// Indices of one containing `(d+1)`-tuple.
    Tuple(Vec<usize>),
    None,
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
