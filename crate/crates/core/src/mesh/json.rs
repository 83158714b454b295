//! JSON form of a disk: `{"r", "layer", "boundary", "rotation"}`.

use serde::{Deserialize, Serialize};

use super::{CombinatorialDisk, MeshError, RotationGraph};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiskDocument {
    r: u32,
    layer: u32,
    boundary: Vec<u32>,
    rotation: Vec<Vec<u32>>,
}

impl CombinatorialDisk {
    pub fn to_json(&self) -> String {
        let doc = DiskDocument {
            r: self.ambient_degree(),
            layer: self.layer_index(),
            boundary: self.boundary().to_vec(),
            rotation: self.graph().rotation().to_vec(),
        };
        serde_json::to_string(&doc).expect("disk document serializes")
    }

    /// Parses a disk document.
    ///
    /// Layer provenance is reconstructed by peeling boundary layers, which
    /// succeeds for disks produced by the growth pipeline. Other disks load
    /// without provenance; use [`validate_disk`](super::validate_disk) to
    /// check their invariants.
    pub fn from_json(text: &str) -> Result<Self, MeshError> {
        let doc: DiskDocument = serde_json::from_str(text).map_err(|e| MeshError::Json(e.to_string()))?;
        let n = doc.rotation.len();
        if n == 0 {
            return Err(MeshError::Json("disk has no vertices".into()));
        }
        let in_range = |v: &u32| (*v as usize) < n;
        if !doc.boundary.iter().all(in_range) || !doc.rotation.iter().flatten().all(in_range) {
            return Err(MeshError::Json("vertex id out of range".into()));
        }
        let graph = RotationGraph::from_rotation(doc.rotation);
        let disk = CombinatorialDisk::from_parts(doc.r, doc.layer, doc.boundary, graph);
        Ok(match peel_layers(&disk) {
            Some(layers) => disk.with_vertex_layers(layers),
            None => disk,
        })
    }
}

/// Recovers per-vertex layer indices of a grown disk.
///
/// Vertices of layer `k − 1` are exactly the not-yet-assigned neighbors of
/// layer `k`; the outermost layer is the boundary. Whatever remains after
/// `layer` peels is the seed. Ids must be dense and increasing by layer.
fn peel_layers(disk: &CombinatorialDisk) -> Option<Vec<u32>> {
    let graph = disk.graph();
    let n = graph.vertex_count();
    const UNSET: u32 = u32::MAX;
    let mut layers = vec![UNSET; n];
    let top = disk.layer_index();
    let mut current: Vec<u32> = disk.boundary().to_vec();
    if top == 0 {
        return (disk.is_degenerate() && n == 1 || current.len() == n).then(|| vec![0; n]);
    }
    for &w in &current {
        layers[w as usize] = top;
    }
    for k in (0..top).rev() {
        let mut inner = Vec::new();
        for &w in &current {
            for &x in graph.neighbors(w) {
                if layers[x as usize] == UNSET {
                    layers[x as usize] = k;
                    inner.push(x);
                }
            }
        }
        if inner.is_empty() {
            return None;
        }
        current = inner;
    }
    // ids grow with the layer index
    let dense = layers.iter().all(|&l| l != UNSET) && layers.windows(2).all(|p| p[0] <= p[1]);
    let seed_size = layers.iter().filter(|&&l| l == 0).count();
    (dense && (seed_size == 1 || seed_size == 3)).then_some(layers)
}
