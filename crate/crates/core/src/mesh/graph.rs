//! Finite plane graphs stored as rotation systems.
//!
//! Each vertex keeps its neighbors in counterclockwise order. Faces are the
//! orbits of the permutation that sends the dart `u → w` to `w → x`, where
//! `x` is the neighbor immediately preceding `u` in the rotation of `w`.

use std::collections::HashMap;

use super::MeshError;

/// Degree above which twin lookup switches from a linear scan to a hash map.
const LINEAR_SCAN_DEGREE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RotationGraph {
    rotation: Vec<Vec<u32>>,
}

impl RotationGraph {
    /// Wraps a rotation table without checking it; see
    /// [`validate_disk`](super::validate_disk) for the structural checks.
    pub fn from_rotation(rotation: Vec<Vec<u32>>) -> Self {
        RotationGraph { rotation }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.rotation[v as usize].len()
    }

    /// Neighbors of `v` in counterclockwise order.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.rotation[v as usize]
    }

    pub fn rotation(&self) -> &[Vec<u32>] {
        &self.rotation
    }

    pub(crate) fn rotation_mut(&mut self) -> &mut Vec<Vec<u32>> {
        &mut self.rotation
    }

    pub fn into_rotation(self) -> Vec<Vec<u32>> {
        self.rotation
    }

    pub fn degree_sum(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum()
    }

    /// Edge count by the handshake lemma.
    pub fn edge_count(&self) -> usize {
        self.degree_sum() / 2
    }

    pub fn contains_edge(&self, u: u32, w: u32) -> bool {
        self.rotation.get(u as usize).is_some_and(|rot| rot.contains(&w))
    }

    /// Undirected edges as `(u, w)` with `u < w`, ordered by `u` then rotation position.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.rotation
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&w| (u as u32) < w).map(move |&w| (u as u32, w)))
    }

    /// Traces every face of the embedding.
    ///
    /// Fails if some neighbor reference is out of range or not reciprocated,
    /// since the face permutation is undefined then.
    pub fn trace_faces(&self) -> Result<FaceTrace, MeshError> {
        let mut offsets = Vec::with_capacity(self.rotation.len() + 1);
        let mut total = 0usize;
        for rot in &self.rotation {
            offsets.push(total);
            total += rot.len();
        }
        offsets.push(total);

        let twin = self.twins(&offsets)?;

        const UNSEEN: u32 = u32::MAX;
        let mut face_of = vec![UNSEEN; total];
        let mut lengths = Vec::new();
        let mut first_dart = Vec::new();
        for start in 0..total {
            if face_of[start] != UNSEEN {
                continue;
            }
            let face = lengths.len() as u32;
            let mut dart = start;
            let mut len = 0u32;
            while face_of[dart] == UNSEEN {
                face_of[dart] = face;
                len += 1;
                // dart = u → w; step to w → (neighbor before u around w)
                let back = twin[dart];
                let w = tail_of(&offsets, back);
                let base = offsets[w];
                let deg = offsets[w + 1] - base;
                let slot = back - base;
                dart = base + (slot + deg - 1) % deg;
            }
            if dart != start {
                return Err(MeshError::MalformedDisk(format!(
                    "face permutation is not a bijection near dart {start}"
                )));
            }
            lengths.push(len);
            first_dart.push(start);
        }
        Ok(FaceTrace { offsets, face_of, lengths, first_dart })
    }

    fn twins(&self, offsets: &[usize]) -> Result<Vec<usize>, MeshError> {
        let n = self.rotation.len();
        let index: Vec<Option<HashMap<u32, usize>>> = self
            .rotation
            .iter()
            .map(|rot| {
                (rot.len() > LINEAR_SCAN_DEGREE)
                    .then(|| rot.iter().enumerate().map(|(i, &x)| (x, i)).collect())
            })
            .collect();

        let mut twin = vec![0usize; *offsets.last().unwrap_or(&0)];
        for (u, rot) in self.rotation.iter().enumerate() {
            for (i, &w) in rot.iter().enumerate() {
                let wi = w as usize;
                if wi >= n {
                    return Err(MeshError::MalformedDisk(format!(
                        "vertex {u} lists nonexistent neighbor {w}"
                    )));
                }
                let slot = match &index[wi] {
                    Some(map) => map.get(&(u as u32)).copied(),
                    None => self.rotation[wi].iter().position(|&x| x as usize == u),
                };
                let slot = slot.ok_or(MeshError::Asymmetric { u: u as u32, w })?;
                twin[offsets[u] + i] = offsets[wi] + slot;
            }
        }
        Ok(twin)
    }
}

fn tail_of(offsets: &[usize], dart: usize) -> usize {
    offsets.partition_point(|&o| o <= dart) - 1
}

/// Result of face tracing: the face containing each dart, and face lengths.
#[derive(Debug, Clone)]
pub struct FaceTrace {
    offsets: Vec<usize>,
    face_of: Vec<u32>,
    lengths: Vec<u32>,
    first_dart: Vec<usize>,
}

impl FaceTrace {
    /// Number of faces, outer face included.
    pub fn face_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Face containing the dart `u → w`, if that dart exists.
    pub fn face_of_dart(&self, graph: &RotationGraph, u: u32, w: u32) -> Option<usize> {
        let slot = graph.rotation.get(u as usize)?.iter().position(|&x| x == w)?;
        Some(self.face_of[self.offsets[u as usize] + slot] as usize)
    }

    /// A vertex on the given face.
    pub fn witness_vertex(&self, face: usize) -> u32 {
        tail_of(&self.offsets, self.first_dart[face]) as u32
    }
}
