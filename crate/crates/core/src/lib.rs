//! Growth of convex disks in the infinite degree-`r` triangular mesh (`r > 6`)
//! and the Euler-summed vertex, edge and face counts of the mesh.
//!
//! - [`exact`]: exact rationals and decimal-string serialization.
//! - [`mesh`]: explicit disks as rotation systems, expansion and brute-force counts.
//! - [`analytics`]: closed forms and layer recurrences in exact integers.
//! - [`summation`]: Euler sums of second-order recurrences and the mesh invariants.
//! - [`render`]: schematic SVG drawings of grown disks.

pub mod analytics;
pub mod counts;
pub mod exact;
pub mod mesh;
pub mod render;
pub mod summation;

pub use counts::{DeltaCounts, DiskCounts, LayerCensus};
pub use exact::Rational;
