//! Structural checks on disks, reported as data.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::CombinatorialDisk;

/// One broken invariant together with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NeighborOutOfRange { vertex: u32, neighbor: u32 },
    SelfLoop { vertex: u32 },
    DuplicateNeighbor { vertex: u32, neighbor: u32 },
    /// `neighbor` is listed around `vertex` but not the other way round.
    Asymmetric { vertex: u32, neighbor: u32 },
    Disconnected { vertex: u32 },
    DegenerateShape { vertices: usize, edges: usize },
    BoundaryTooShort { length: usize },
    BoundaryVertexOutOfRange { vertex: u32 },
    BoundaryRepeats { vertex: u32 },
    BoundaryEdgeMissing { from: u32, to: u32 },
    BoundaryDegree { vertex: u32, degree: usize },
    InteriorDegree { vertex: u32, degree: usize, expected: u32 },
    NonTriangularFace { vertex: u32, length: usize },
    OuterFace { expected: usize, found: usize },
}

impl Violation {
    /// Short name of the invariant that failed.
    pub fn invariant(&self) -> &'static str {
        match self {
            Violation::NeighborOutOfRange { .. } => "neighbor-range",
            Violation::SelfLoop { .. } => "no-loops",
            Violation::DuplicateNeighbor { .. } => "no-multi-edges",
            Violation::Asymmetric { .. } => "symmetry",
            Violation::Disconnected { .. } => "connected",
            Violation::DegenerateShape { .. } => "degenerate-seed",
            Violation::BoundaryTooShort { .. } => "boundary-length",
            Violation::BoundaryVertexOutOfRange { .. } => "boundary-range",
            Violation::BoundaryRepeats { .. } => "boundary-simple",
            Violation::BoundaryEdgeMissing { .. } => "boundary-cycle",
            Violation::BoundaryDegree { .. } => "boundary-degree",
            Violation::InteriorDegree { .. } => "interior-degree",
            Violation::NonTriangularFace { .. } => "triangular-faces",
            Violation::OuterFace { .. } => "outer-face",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.invariant())?;
        match self {
            Violation::NeighborOutOfRange { vertex, neighbor } => {
                write!(f, "vertex {vertex} lists nonexistent neighbor {neighbor}")
            }
            Violation::SelfLoop { vertex } => write!(f, "vertex {vertex} is its own neighbor"),
            Violation::DuplicateNeighbor { vertex, neighbor } => {
                write!(f, "vertex {vertex} lists neighbor {neighbor} twice")
            }
            Violation::Asymmetric { vertex, neighbor } => {
                write!(f, "edge {vertex}-{neighbor} is missing from the rotation of {neighbor}")
            }
            Violation::Disconnected { vertex } => write!(f, "vertex {vertex} is unreachable from vertex 0"),
            Violation::DegenerateShape { vertices, edges } => {
                write!(f, "boundary-free disk has {vertices} vertices and {edges} edges, expected 1 and 0")
            }
            Violation::BoundaryTooShort { length } => write!(f, "boundary cycle has length {length} < 3"),
            Violation::BoundaryVertexOutOfRange { vertex } => write!(f, "boundary vertex {vertex} does not exist"),
            Violation::BoundaryRepeats { vertex } => write!(f, "vertex {vertex} appears twice on the boundary"),
            Violation::BoundaryEdgeMissing { from, to } => write!(f, "boundary vertices {from} and {to} are not adjacent"),
            Violation::BoundaryDegree { vertex, degree } => {
                write!(f, "boundary vertex {vertex} has degree {degree}")
            }
            Violation::InteriorDegree { vertex, degree, expected } => {
                write!(f, "interior vertex {vertex} has degree {degree}, expected {expected}")
            }
            Violation::NonTriangularFace { vertex, length } => {
                write!(f, "face through vertex {vertex} has length {length}")
            }
            Violation::OuterFace { expected, found } => {
                write!(f, "outer face has length {found}, boundary has length {expected}")
            }
        }
    }
}

/// Checks every rotation-system and disk invariant; an empty result means the disk is valid.
pub fn validate_disk(disk: &CombinatorialDisk) -> Vec<Violation> {
    let graph = disk.graph();
    let n = graph.vertex_count();
    let r = disk.ambient_degree();
    let mut out = Vec::new();

    for (u, rot) in graph.rotation().iter().enumerate() {
        let u = u as u32;
        let mut seen = HashSet::with_capacity(rot.len());
        for &w in rot {
            if w as usize >= n {
                out.push(Violation::NeighborOutOfRange { vertex: u, neighbor: w });
            } else if w == u {
                out.push(Violation::SelfLoop { vertex: u });
            } else if !seen.insert(w) {
                out.push(Violation::DuplicateNeighbor { vertex: u, neighbor: w });
            } else if !graph.contains_edge(w, u) {
                out.push(Violation::Asymmetric { vertex: u, neighbor: w });
            }
        }
    }
    let structurally_sound = out.is_empty();

    if structurally_sound && n > 0 {
        let mut reached = vec![false; n];
        let mut queue = VecDeque::from([0u32]);
        reached[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if !reached[w as usize] {
                    reached[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = reached.iter().position(|&x| !x) {
            out.push(Violation::Disconnected { vertex: v as u32 });
        }
    }

    if disk.is_degenerate() {
        if n != 1 || graph.edge_count() != 0 {
            out.push(Violation::DegenerateShape { vertices: n, edges: graph.edge_count() });
        }
        return out;
    }

    let boundary = disk.boundary();
    let mut on_boundary = vec![false; n];
    let mut boundary_sound = true;
    if boundary.len() < 3 {
        out.push(Violation::BoundaryTooShort { length: boundary.len() });
        boundary_sound = false;
    }
    for &w in boundary {
        if w as usize >= n {
            out.push(Violation::BoundaryVertexOutOfRange { vertex: w });
            boundary_sound = false;
        } else if std::mem::replace(&mut on_boundary[w as usize], true) {
            out.push(Violation::BoundaryRepeats { vertex: w });
            boundary_sound = false;
        }
    }
    if !boundary_sound {
        return out;
    }
    for (j, &w) in boundary.iter().enumerate() {
        let next = boundary[(j + 1) % boundary.len()];
        if !graph.contains_edge(w, next) {
            out.push(Violation::BoundaryEdgeMissing { from: w, to: next });
            boundary_sound = false;
        }
        let degree = graph.degree(w);
        if !(2..=r as usize).contains(&degree) {
            out.push(Violation::BoundaryDegree { vertex: w, degree });
        }
    }
    for v in 0..n {
        let degree = graph.degree(v as u32);
        if !on_boundary[v] && degree != r as usize {
            out.push(Violation::InteriorDegree { vertex: v as u32, degree, expected: r });
        }
    }

    if structurally_sound && boundary_sound {
        match graph.trace_faces() {
            Ok(trace) => {
                let outer = trace.face_of_dart(graph, boundary[1], boundary[0]).expect("boundary edge exists");
                let found = trace.lengths()[outer] as usize;
                if found != boundary.len() {
                    out.push(Violation::OuterFace { expected: boundary.len(), found });
                }
                for (face, &len) in trace.lengths().iter().enumerate() {
                    if face != outer && len != 3 {
                        out.push(Violation::NonTriangularFace { vertex: trace.witness_vertex(face), length: len as usize });
                    }
                }
            }
            Err(err) => unreachable!("rotation checked symmetric and simple: {err}"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{RotationGraph, SeedKind};

    fn disk(r: u32, boundary: Vec<u32>, rotation: Vec<Vec<u32>>) -> CombinatorialDisk {
        CombinatorialDisk::from_parts(r, 0, boundary, RotationGraph::from_rotation(rotation))
    }

    #[test]
    fn grown_disks_are_valid() {
        for kind in [SeedKind::Vertex, SeedKind::Face] {
            let mut g = CombinatorialDisk::seed(kind, 7).unwrap();
            for _ in 0..4 {
                assert_eq!(validate_disk(&g), vec![]);
                g = g.expand().unwrap();
            }
        }
    }

    #[test]
    fn asymmetric_adjacency() {
        let bad = disk(7, vec![0, 1, 2], vec![vec![1, 2], vec![2], vec![0, 1]]);
        let found = validate_disk(&bad);
        assert!(found.contains(&Violation::Asymmetric { vertex: 0, neighbor: 1 }), "{found:?}");
        assert_eq!(found[0].invariant(), "symmetry");
    }

    #[test]
    fn interior_degree_short_by_one() {
        // fan around vertex 0 with r = 8 but only 7 spokes
        let mut rotation = vec![(1..=7).collect::<Vec<u32>>()];
        for i in 1..=7u32 {
            rotation.push(vec![if i == 7 { 1 } else { i + 1 }, 0, if i == 1 { 7 } else { i - 1 }]);
        }
        let bad = disk(8, (1..=7).collect(), rotation);
        assert_eq!(validate_disk(&bad), vec![Violation::InteriorDegree { vertex: 0, degree: 7, expected: 8 }]);
    }

    #[test]
    fn loops_and_duplicates() {
        let bad = disk(7, vec![0, 1, 2], vec![vec![1, 2, 0], vec![2, 0, 0], vec![0, 1]]);
        let names: Vec<_> = validate_disk(&bad).iter().map(Violation::invariant).collect();
        assert!(names.contains(&"no-loops"));
        assert!(names.contains(&"no-multi-edges"));
    }

    #[test]
    fn broken_boundary() {
        let triangle = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
        let repeated = disk(7, vec![0, 1, 1], triangle.clone());
        assert!(validate_disk(&repeated).contains(&Violation::BoundaryRepeats { vertex: 1 }));
        let short = disk(7, vec![0, 1], triangle);
        assert!(validate_disk(&short).contains(&Violation::BoundaryTooShort { length: 2 }));
    }

    #[test]
    fn square_face_reported() {
        let square = disk(7, vec![0, 1, 2, 3], vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]);
        let found = validate_disk(&square);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].invariant(), "triangular-faces");
        assert!(found[0].to_string().contains("length 4"));
    }

    #[test]
    fn degenerate_seed_must_be_a_lone_vertex() {
        let two = disk(7, vec![], vec![vec![], vec![]]);
        assert!(validate_disk(&two).iter().any(|v| v.invariant() == "degenerate-seed"));
    }
}
