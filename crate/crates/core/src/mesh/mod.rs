//! Explicit convex disks in the degree-`r` triangular mesh.
//!
//! Disks are grown from a vertex or face seed by repeated expansion and
//! counted by brute force, giving an oracle for the closed forms in
//! [`crate::analytics`].

mod census;
mod disk;
mod graph;
mod json;
mod validate;

use thiserror::Error;

pub use census::{count_explicit, delta_counts, layer_census};
pub use disk::{convexity_bound, BoundaryProfile, CombinatorialDisk, SeedKind, DEFAULT_VERTEX_BUDGET, MIN_DEGREE};
pub use graph::{FaceTrace, RotationGraph};
pub use validate::{validate_disk, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("ambient degree r = {r} is not supported; explicit construction needs r >= 7")]
    DegreeTooSmall { r: u32 },
    #[error("operation needs a disk with a boundary cycle, got the single-vertex seed")]
    Degenerate,
    #[error("disk is not convex: boundary vertex {vertex} has degree {degree} > {bound}")]
    NotConvex { vertex: u32, degree: usize, bound: usize },
    #[error("expansion needs {required} vertices, budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },
    #[error("face through vertex {vertex} has length {length}, expected a triangle")]
    NonTriangularFace { vertex: u32, length: usize },
    #[error("boundary vertex {vertex} of an expansion has degree {degree}, expected 3 or 4")]
    Contradiction { vertex: u32, degree: usize },
    #[error("rotation of {u} lists {w}, but the rotation of {w} does not list {u}")]
    Asymmetric { u: u32, w: u32 },
    #[error("second disk is not the expansion of the first")]
    NotAnExpansion,
    #[error("malformed disk: {0}")]
    MalformedDisk(String),
    #[error("invalid disk document: {0}")]
    Json(String),
}
