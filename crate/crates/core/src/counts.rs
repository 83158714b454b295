//! Count records shared by the explicit construction and the analytic pipeline.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::decimal;

/// Vertex, edge and interior-face counts of a disk, plus its interior vertex count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiskCounts {
    #[serde(with = "decimal")]
    pub v: BigInt,
    #[serde(with = "decimal")]
    pub e: BigInt,
    #[serde(with = "decimal")]
    pub f: BigInt,
    #[serde(with = "decimal")]
    pub s: BigInt,
}

impl DiskCounts {
    pub fn new(v: impl Into<BigInt>, e: impl Into<BigInt>, f: impl Into<BigInt>, s: impl Into<BigInt>) -> Self {
        DiskCounts { v: v.into(), e: e.into(), f: f.into(), s: s.into() }
    }

    /// v − e + f, which is 1 for every disk.
    pub fn euler_characteristic(&self) -> BigInt {
        &self.v - &self.e + &self.f
    }

    pub fn satisfies_euler(&self) -> bool {
        self.euler_characteristic().is_one()
    }

    /// Counts after adding one layer whose new boundary has length `t`.
    pub fn advance(&self, delta: &DeltaCounts, t: &BigInt) -> DiskCounts {
        let v = &self.v + &delta.v;
        DiskCounts { s: &v - t, v, e: &self.e + &delta.e, f: &self.f + &delta.f }
    }

    /// Element-wise difference `self − earlier`, ignoring `s`.
    pub fn delta_from(&self, earlier: &DiskCounts) -> DeltaCounts {
        DeltaCounts { v: &self.v - &earlier.v, e: &self.e - &earlier.e, f: &self.f - &earlier.f }
    }

    /// Same (v, e, f) triple; `s` is not compared.
    pub fn same_vef(&self, other: &DiskCounts) -> bool {
        self.v == other.v && self.e == other.e && self.f == other.f
    }
}

/// Degree-3 (`a`) and degree-4 (`b`) vertex counts on a freshly added boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayerCensus {
    #[serde(with = "decimal")]
    pub a: BigInt,
    #[serde(with = "decimal")]
    pub b: BigInt,
}

impl LayerCensus {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        LayerCensus { a: a.into(), b: b.into() }
    }

    /// Length of the boundary cycle carrying this census.
    pub fn boundary_length(&self) -> BigInt {
        &self.a + &self.b
    }

    /// Degree sum of that boundary: 3a + 4b.
    pub fn boundary_degree_sum(&self) -> BigInt {
        &self.a * 3 + &self.b * 4
    }
}

/// Vertices, edges and faces added by one expansion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaCounts {
    #[serde(with = "decimal")]
    pub v: BigInt,
    #[serde(with = "decimal")]
    pub e: BigInt,
    #[serde(with = "decimal")]
    pub f: BigInt,
}

impl DeltaCounts {
    pub fn new(v: impl Into<BigInt>, e: impl Into<BigInt>, f: impl Into<BigInt>) -> Self {
        DeltaCounts { v: v.into(), e: e.into(), f: f.into() }
    }

    /// v − e + f of the increment; zero for every expansion step.
    pub fn euler_increment(&self) -> BigInt {
        &self.v - &self.e + &self.f
    }

    pub fn is_nonnegative(&self) -> bool {
        !(self.v < BigInt::zero() || self.e < BigInt::zero() || self.f < BigInt::zero())
    }
}
