//! Schematic SVG drawings of grown disks.
//!
//! Layer `k` is placed on a circle of radius proportional to `k`, vertices
//! evenly spaced in boundary-cycle order. Edges are straight segments, so a
//! drawing may show crossings even though the graph is planar.

use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

use crate::mesh::CombinatorialDisk;

pub const CANVAS: f64 = 1000.0;

const PALETTE: [&str; 6] = ["#1b4965", "#c1121f", "#2a9d8f", "#e9c46a", "#6a4c93", "#f4a261"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("disk carries no layer provenance; only disks grown from a vertex or face seed can be laid out")]
    MissingProvenance,
    #[error("layer table covers {found} vertices, disk has {expected}")]
    LayerTableSize { expected: usize, found: usize },
}

/// Coordinates for every vertex, with the ring each vertex sits on.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskLayout {
    pub positions: Vec<(f64, f64)>,
    pub rings: Vec<u32>,
    pub ring_spacing: f64,
}

impl DiskLayout {
    pub fn ring_count(&self) -> u32 {
        self.rings.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Number of vertices on each ring, innermost first.
    pub fn ring_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.ring_count() as usize];
        for &ring in &self.rings {
            sizes[ring as usize] += 1;
        }
        sizes
    }
}

/// Concentric layout: a single-vertex seed sits at the center, a larger
/// seed forms ring 1, and each later layer the next ring out.
pub fn layout_disk(disk: &CombinatorialDisk) -> Result<DiskLayout, LayoutError> {
    let layers = disk.vertex_layers().ok_or(LayoutError::MissingProvenance)?;
    let n = disk.vertex_count();
    if layers.len() != n {
        return Err(LayoutError::LayerTableSize { expected: n, found: layers.len() });
    }
    let seed_size = layers.iter().filter(|&&l| l == 0).count();
    let offset = u32::from(seed_size != 1);
    let rings: Vec<u32> = layers.iter().map(|&l| l + offset).collect();
    let outermost = rings.iter().copied().max().unwrap_or(0);
    let ring_spacing = CANVAS / (2.0 * outermost as f64 + 2.0);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); outermost as usize + 1];
    // ids increase along each layer's boundary cycle
    for (v, &ring) in rings.iter().enumerate() {
        members[ring as usize].push(v);
    }

    let center = CANVAS / 2.0;
    let mut positions = vec![(center, center); n];
    for (ring, vertices) in members.iter().enumerate() {
        if ring == 0 {
            continue;
        }
        let radius = ring as f64 * ring_spacing;
        let m = vertices.len() as f64;
        for (i, &v) in vertices.iter().enumerate() {
            let angle = PI / 2.0 + 2.0 * PI * i as f64 / m;
            positions[v] = (center + radius * angle.cos(), center - radius * angle.sin());
        }
    }
    Ok(DiskLayout { positions, rings, ring_spacing })
}

/// Standalone SVG 1.1 text: one `<line>` per edge and one `<circle>` per vertex.
///
/// # Panics
///
/// If the layout does not cover every vertex of the disk.
pub fn emit_svg(disk: &CombinatorialDisk, layout: &DiskLayout) -> String {
    let n = disk.vertex_count();
    assert_eq!(layout.positions.len(), n, "layout does not match disk");

    let densest = layout.ring_sizes().into_iter().max().unwrap_or(1).max(1) as f64;
    let dot = (layout.ring_spacing * 0.12).min(PI * CANVAS / 2.0 / densest * 0.3).clamp(0.25, 8.0);
    let stroke = (dot / 3.0).max(0.05);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    let _ = writeln!(
        svg,
        "<title>degree-{} disk, layer {}</title>",
        disk.ambient_degree(),
        disk.layer_index()
    );
    let _ = writeln!(svg, "<rect width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"#ffffff\"/>");
    let _ = writeln!(svg, "<g stroke=\"#5c677d\" stroke-width=\"{stroke:.3}\" stroke-linecap=\"round\">");
    for (u, w) in disk.graph().edges() {
        let (x1, y1) = layout.positions[u as usize];
        let (x2, y2) = layout.positions[w as usize];
        let _ = writeln!(svg, "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\"/>");
    }
    svg.push_str("</g>\n<g stroke=\"none\">\n");
    for (v, &(x, y)) in layout.positions.iter().enumerate() {
        let color = PALETTE[layout.rings[v] as usize % PALETTE.len()];
        let _ = writeln!(svg, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{dot:.3}\" fill=\"{color}\"/>");
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}

/// Lays out and draws a disk in one step.
pub fn render_disk(disk: &CombinatorialDisk) -> Result<String, LayoutError> {
    Ok(emit_svg(disk, &layout_disk(disk)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{RotationGraph, SeedKind};

    fn grown(kind: SeedKind, r: u32, n: u32) -> CombinatorialDisk {
        (0..n).fold(CombinatorialDisk::seed(kind, r).unwrap(), |g, _| g.expand().unwrap())
    }

    fn count(svg: &str, tag: &str) -> usize {
        svg.matches(tag).count()
    }

    #[test]
    fn fan_layout() {
        let layout = layout_disk(&grown(SeedKind::Vertex, 7, 1)).unwrap();
        assert_eq!(layout.ring_sizes(), vec![1, 7]);
        assert_eq!(layout.positions[0], (500.0, 500.0));
    }

    #[test]
    fn triangle_sits_on_first_ring() {
        let layout = layout_disk(&grown(SeedKind::Face, 7, 0)).unwrap();
        assert_eq!(layout.ring_sizes(), vec![0, 3]);
        for &(x, y) in &layout.positions {
            let radius = ((x - 500.0).powi(2) + (y - 500.0).powi(2)).sqrt();
            assert!((radius - layout.ring_spacing).abs() < 1e-9);
        }
    }

    #[test]
    fn two_layers_around_a_vertex() {
        let layout = layout_disk(&grown(SeedKind::Vertex, 7, 2)).unwrap();
        assert_eq!(layout.ring_sizes(), vec![1, 7, 21]);
        assert_eq!(layout.ring_spacing, 1000.0 / 6.0);
    }

    #[test]
    fn vertices_never_coincide() {
        let layout = layout_disk(&grown(SeedKind::Face, 8, 3)).unwrap();
        let mut keys: Vec<(i64, i64)> =
            layout.positions.iter().map(|&(x, y)| ((x * 1e6) as i64, (y * 1e6) as i64)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), layout.positions.len());
    }

    #[test]
    fn element_counts() {
        let fan = render_disk(&grown(SeedKind::Vertex, 7, 1)).unwrap();
        assert_eq!((count(&fan, "<circle"), count(&fan, "<line")), (8, 14));
        let two = render_disk(&grown(SeedKind::Face, 7, 2)).unwrap();
        assert_eq!((count(&two, "<circle"), count(&two, "<line")), (48, 108));
        let lone = render_disk(&grown(SeedKind::Vertex, 7, 0)).unwrap();
        assert_eq!((count(&lone, "<circle"), count(&lone, "<line")), (1, 0));
    }

    #[test]
    fn output_is_deterministic() {
        let disk = grown(SeedKind::Face, 9, 2);
        assert_eq!(render_disk(&disk).unwrap(), render_disk(&disk.clone()).unwrap());
    }

    #[test]
    fn disk_without_provenance() {
        let bare = CombinatorialDisk::from_parts(
            7,
            0,
            vec![0, 1, 2],
            RotationGraph::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]]),
        );
        assert_eq!(layout_disk(&bare), Err(LayoutError::MissingProvenance));
    }
}
