//! Closed forms and recurrences for layered growth, in exact integers.
//!
//! A convex disk is summarized by its boundary length `t` and boundary
//! degree sum `d`. From these the disk's own counts follow by solving the
//! four linear relations
//!
//! ```text
//!   v + f = e + 1      t + s = v      r·s + d = 2e      3f + t = 2e
//! ```
//!
//! and every later layer follows from the census recurrence
//! `a' = (r−5)a + (r−6)b`, `b' = a + b`, started at `a₁ = t(r−2) − d`, `b₁ = t`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counts::{DeltaCounts, DiskCounts, LayerCensus};
use crate::exact::decimal;

/// Deepest layer the analytic pipeline will produce.
pub const MAX_LAYERS: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountComponent {
    Vertices,
    Edges,
    Faces,
    InteriorVertices,
}

impl CountComponent {
    pub fn name(self) -> &'static str {
        match self {
            CountComponent::Vertices => "v",
            CountComponent::Edges => "e",
            CountComponent::Faces => "f",
            CountComponent::InteriorVertices => "s",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("degree {r} is not supported; the analytic pipeline needs r >= 7")]
    DegreeTooSmall { r: u32 },
    #[error("boundary length {t} is shorter than a triangle")]
    BoundaryTooShort { t: BigInt },
    #[error("boundary degree sum {d} is outside [{min}, {max}] for a convex disk")]
    DegreeSumOutOfRange { d: BigInt, min: BigInt, max: BigInt },
    #[error("invalid seed: (r-6) does not divide the {} numerator {value}", .component.name())]
    NotDivisible { component: CountComponent, value: BigInt },
    #[error("invalid seed: {} count would be negative ({value})", .component.name())]
    Negative { component: CountComponent, value: BigInt },
    #[error("invalid seed: initial degree-3 count a1 = {a1} is negative")]
    NegativeInitialCensus { a1: BigInt },
    #[error("layer count {n_max} is outside 1..={MAX_LAYERS}")]
    LayerLimit { n_max: u32 },
    #[error("layer {n}: second-order recurrence disagrees with the census recurrence for {sequence}")]
    RecurrenceMismatch { n: u32, sequence: &'static str },
    #[error("platonic formulas cover r in {{3, 4, 5}}, got {r}")]
    NotPlatonic { r: u32 },
}

/// Sufficient statistics `(r, t, d)` of an initial convex disk.
///
/// Construction checks the degree bounds only; the divisibility conditions
/// are checked by [`counts_from_boundary`] and [`SeedDescriptor::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedDescriptor {
    pub r: u32,
    #[serde(with = "decimal")]
    pub t: BigInt,
    #[serde(with = "decimal")]
    pub d: BigInt,
}

impl SeedDescriptor {
    pub fn new(r: u32, t: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, SeedError> {
        let (t, d) = (t.into(), d.into());
        if r < 7 {
            return Err(SeedError::DegreeTooSmall { r });
        }
        if t < BigInt::from(3) {
            return Err(SeedError::BoundaryTooShort { t });
        }
        let min = &t * 2;
        let max = &t * (1 + r / 2);
        if d < min || d > max {
            return Err(SeedError::DegreeSumOutOfRange { d, min, max });
        }
        Ok(SeedDescriptor { r, t, d })
    }

    /// The single triangle: `t = 3`, `d = 6`.
    pub fn triangle(r: u32) -> Result<Self, SeedError> {
        Self::new(r, 3, 6)
    }

    /// Boundary of the fan of `r` triangles around one vertex: `t = r`, `d = 3r`.
    pub fn fan(r: u32) -> Result<Self, SeedError> {
        Self::new(r, r, 3 * r)
    }

    pub fn validate(&self) -> Result<(), SeedError> {
        counts_from_boundary(self).map(|_| ())
    }

    fn rb(&self) -> BigInt {
        BigInt::from(self.r)
    }
}

fn exact_quotient(numerator: BigInt, divisor: &BigInt, component: CountComponent) -> Result<BigInt, SeedError> {
    let (q, rem) = numerator.div_rem(divisor);
    if !rem.is_zero() {
        return Err(SeedError::NotDivisible { component, value: numerator });
    }
    if q.is_negative() {
        return Err(SeedError::Negative { component, value: q });
    }
    Ok(q)
}

/// Counts `(v, e, f, s)` of a convex disk with boundary statistics `(t, d)`.
pub fn counts_from_boundary(seed: &SeedDescriptor) -> Result<DiskCounts, SeedError> {
    let (t, d, r) = (&seed.t, &seed.d, seed.rb());
    let k = &r - 6;
    let v = exact_quotient(t * &r - t * 2 - d - 6, &k, CountComponent::Vertices)?;
    let e = exact_quotient(t * &r * 2 - d * 3 - &r * 3, &k, CountComponent::Edges)?;
    let f = exact_quotient(t * &r + t * 2 - d * 2 - &r * 2, &k, CountComponent::Faces)?;
    let s = exact_quotient(t * 4 - d - 6, &k, CountComponent::InteriorVertices)?;
    Ok(DiskCounts { v, e, f, s })
}

/// Census of the first added layer: `a₁ = t(r−2) − d`, `b₁ = t`.
pub fn initial_census(seed: &SeedDescriptor) -> Result<LayerCensus, SeedError> {
    let a1: BigInt = &seed.t * (seed.rb() - 2) - &seed.d;
    if a1.is_negative() {
        return Err(SeedError::NegativeInitialCensus { a1 });
    }
    Ok(LayerCensus { a: a1, b: seed.t.clone() })
}

/// One step of the coupled census recurrence.
pub fn census_step(r: u32, census: &LayerCensus) -> LayerCensus {
    let r = BigInt::from(r);
    LayerCensus {
        a: (&r - 5) * &census.a + (&r - 6) * &census.b,
        b: &census.a + &census.b,
    }
}

/// Vertices, edges and faces added along a boundary with the given census.
pub fn deltas_from_census(census: &LayerCensus) -> DeltaCounts {
    let (a, b) = (&census.a, &census.b);
    DeltaCounts { v: a + b, e: a * 2 + b * 3, f: a + b * 2 }
}

/// `x_{n+2} = (r−4)·x_{n+1} − x_n`.
pub fn second_order_step(r: u32, x_n: &BigInt, x_next: &BigInt) -> BigInt {
    (BigInt::from(r) - 4) * x_next - x_n
}

/// Counts `(v, e, f)` of the tetrahedron, octahedron and icosahedron.
pub fn platonic_counts(r: u32) -> Result<(u64, u64, u64), SeedError> {
    if !(3..=5).contains(&r) {
        return Err(SeedError::NotPlatonic { r });
    }
    let r = r as u64;
    let k = 6 - r;
    Ok((12 / k, 6 * r / k, 4 * r / k))
}

/// Where layered growth starts: the seed's own counts and the first census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthStart {
    pub r: u32,
    pub base: DiskCounts,
    pub first: LayerCensus,
}

impl GrowthStart {
    pub fn from_seed(seed: &SeedDescriptor) -> Result<Self, SeedError> {
        Ok(GrowthStart { r: seed.r, base: counts_from_boundary(seed)?, first: initial_census(seed)? })
    }

    /// The lone-vertex seed. Its first expansion is the fan, whose boundary
    /// holds `r` vertices of degree 3 and none of degree 4.
    pub fn single_vertex(r: u32) -> Result<Self, SeedError> {
        if r < 7 {
            return Err(SeedError::DegreeTooSmall { r });
        }
        Ok(GrowthStart { r, base: DiskCounts::new(1, 0, 0, 1), first: LayerCensus::new(r, 0) })
    }

    /// Predicted layers `1..=n_max`.
    ///
    /// The census recurrence is primary; the second-order recurrence is
    /// replayed alongside and any disagreement is an error.
    pub fn predict(&self, n_max: u32) -> Result<Vec<LayerPrediction>, SeedError> {
        if n_max == 0 || n_max > MAX_LAYERS {
            return Err(SeedError::LayerLimit { n_max });
        }
        let mut out: Vec<LayerPrediction> = Vec::with_capacity(n_max as usize);
        let mut census = self.first.clone();
        let mut cumulative = self.base.clone();
        for n in 1..=n_max {
            let deltas = deltas_from_census(&census);
            cumulative = cumulative.advance(&deltas, &census.boundary_length());
            if n >= 3 {
                let (p2, p1) = (&out[n as usize - 3].deltas, &out[n as usize - 2].deltas);
                for (name, x0, x1, x2) in [
                    ("v", &p2.v, &p1.v, &deltas.v),
                    ("e", &p2.e, &p1.e, &deltas.e),
                    ("f", &p2.f, &p1.f, &deltas.f),
                ] {
                    if &second_order_step(self.r, x0, x1) != x2 {
                        return Err(SeedError::RecurrenceMismatch { n, sequence: name });
                    }
                }
            }
            let next = census_step(self.r, &census);
            out.push(LayerPrediction { n, census, deltas, cumulative: cumulative.clone() });
            census = next;
        }
        Ok(out)
    }
}

/// Predicted layers `1..=n_max` grown from a convex seed disk.
pub fn predict_layers(seed: &SeedDescriptor, n_max: u32) -> Result<Vec<LayerPrediction>, SeedError> {
    GrowthStart::from_seed(seed)?.predict(n_max)
}

/// Analytic record of one layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "PredictionDocument", into = "PredictionDocument")]
pub struct LayerPrediction {
    pub n: u32,
    pub census: LayerCensus,
    pub deltas: DeltaCounts,
    /// Counts of the whole disk after layer `n`.
    pub cumulative: DiskCounts,
}

#[derive(Serialize, Deserialize)]
struct PredictionDocument {
    n: u32,
    #[serde(with = "decimal")]
    a: BigInt,
    #[serde(with = "decimal")]
    b: BigInt,
    #[serde(with = "decimal")]
    dv: BigInt,
    #[serde(with = "decimal")]
    de: BigInt,
    #[serde(with = "decimal")]
    df: BigInt,
    cum: DiskCounts,
}

impl From<LayerPrediction> for PredictionDocument {
    fn from(p: LayerPrediction) -> Self {
        PredictionDocument {
            n: p.n,
            a: p.census.a,
            b: p.census.b,
            dv: p.deltas.v,
            de: p.deltas.e,
            df: p.deltas.f,
            cum: p.cumulative,
        }
    }
}

impl From<PredictionDocument> for LayerPrediction {
    fn from(d: PredictionDocument) -> Self {
        LayerPrediction {
            n: d.n,
            census: LayerCensus { a: d.a, b: d.b },
            deltas: DeltaCounts { v: d.dv, e: d.de, f: d.df },
            cumulative: d.cum,
        }
    }
}
