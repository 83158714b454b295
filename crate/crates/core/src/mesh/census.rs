//! Brute-force counting on explicit disks.
//!
//! Nothing here uses the closed-form disk formulas: vertices come from the
//! vertex table, edges from the handshake sum and faces from tracing the
//! rotation system.

use crate::counts::{DeltaCounts, DiskCounts, LayerCensus};

use super::{CombinatorialDisk, MeshError};

/// Counts `(v, e, f, s)` of a disk by traversal.
pub fn count_explicit(disk: &CombinatorialDisk) -> Result<DiskCounts, MeshError> {
    let graph = disk.graph();
    let v = graph.vertex_count();
    let degree_sum = graph.degree_sum();
    if degree_sum % 2 != 0 {
        return Err(MeshError::MalformedDisk(format!("odd degree sum {degree_sum}")));
    }
    let e = degree_sum / 2;
    let t = disk.boundary().len();

    if disk.is_degenerate() {
        if e != 0 {
            return Err(MeshError::MalformedDisk("degenerate disk has edges".into()));
        }
        return Ok(DiskCounts::new(v as u64, 0u64, 0u64, v as u64));
    }

    let trace = graph.trace_faces()?;
    let boundary = disk.boundary();
    let outer = trace
        .face_of_dart(graph, boundary[1], boundary[0])
        .ok_or_else(|| MeshError::MalformedDisk(format!("boundary edge {}-{} missing", boundary[0], boundary[1])))?;
    if trace.lengths()[outer] as usize != t {
        return Err(MeshError::MalformedDisk(format!(
            "outer face has length {}, boundary has length {t}",
            trace.lengths()[outer]
        )));
    }
    if let Some((face, &len)) = trace.lengths().iter().enumerate().find(|&(i, &len)| i != outer && len != 3) {
        return Err(MeshError::NonTriangularFace { vertex: trace.witness_vertex(face), length: len as usize });
    }
    let f = trace.face_count() - 1;
    Ok(DiskCounts::new(v as u64, e as u64, f as u64, (v - t) as u64))
}

fn check_successor(prev: &CombinatorialDisk, next: &CombinatorialDisk) -> Result<(), MeshError> {
    if next.layer_index() != prev.layer_index() + 1
        || next.ambient_degree() != prev.ambient_degree()
        || next.vertex_count() < prev.vertex_count()
    {
        return Err(MeshError::NotAnExpansion);
    }
    Ok(())
}

/// Degree-3 and degree-4 counts on the boundary of `next = T(prev)`.
///
/// A boundary vertex of any other degree contradicts the layer structure
/// of the mesh and is reported as an error.
pub fn layer_census(prev: &CombinatorialDisk, next: &CombinatorialDisk) -> Result<LayerCensus, MeshError> {
    check_successor(prev, next)?;
    let (mut a, mut b) = (0u64, 0u64);
    for &w in next.boundary() {
        match next.graph().degree(w) {
            3 => a += 1,
            4 => b += 1,
            degree => return Err(MeshError::Contradiction { vertex: w, degree }),
        }
    }
    Ok(LayerCensus::new(a, b))
}

/// Vertices, edges and faces added going from `prev` to `next`.
pub fn delta_counts(prev: &CombinatorialDisk, next: &CombinatorialDisk) -> Result<DeltaCounts, MeshError> {
    check_successor(prev, next)?;
    Ok(count_explicit(next)?.delta_from(&count_explicit(prev)?))
}
