use super::{MeshError, RotationGraph};

/// Smallest ambient degree for which the mesh is hyperbolic.
pub const MIN_DEGREE: u32 = 7;

/// Default cap on the total vertex count of an explicitly constructed disk.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

/// The largest boundary degree allowed in a convex disk: `floor(1 + r/2)`.
pub fn convexity_bound(r: u32) -> usize {
    1 + (r / 2) as usize
}

pub(crate) fn check_degree(r: u32) -> Result<(), MeshError> {
    if r < MIN_DEGREE {
        return Err(MeshError::DegreeTooSmall { r });
    }
    Ok(())
}

/// How an explicitly grown disk started.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedKind {
    /// A lone vertex; its first expansion is the fan of `r` triangles.
    Vertex,
    /// A single triangular face.
    Face,
}

impl SeedKind {
    pub fn name(self) -> &'static str {
        match self {
            SeedKind::Vertex => "vertex",
            SeedKind::Face => "face",
        }
    }
}

/// A combinatorial disk inside the degree-`r` mesh.
///
/// The boundary cycle is stored counterclockwise, so the disk lies to the
/// left of each boundary edge `w_j → w_{j+1}`. Around a boundary vertex the
/// rotation reads `[w_{j+1}, interior…, w_{j−1}]`. A disk with an empty
/// boundary is the degenerate single-vertex seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialDisk {
    graph: RotationGraph,
    r: u32,
    boundary: Vec<u32>,
    layer: u32,
    vertex_layers: Option<Vec<u32>>,
}

/// Boundary length, boundary degree sum and the individual boundary degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryProfile {
    pub t: usize,
    pub d: u64,
    /// Degrees in boundary order.
    pub degrees: Vec<usize>,
}

impl CombinatorialDisk {
    /// Assembles a disk from raw parts without validation.
    pub fn from_parts(r: u32, layer: u32, boundary: Vec<u32>, graph: RotationGraph) -> Self {
        CombinatorialDisk { graph, r, boundary, layer, vertex_layers: None }
    }

    /// Attaches per-vertex layer indices (the growth provenance used for layout).
    pub fn with_vertex_layers(mut self, layers: Vec<u32>) -> Self {
        self.vertex_layers = Some(layers);
        self
    }

    pub fn seed(kind: SeedKind, r: u32) -> Result<Self, MeshError> {
        match kind {
            SeedKind::Vertex => Self::seed_vertex(r),
            SeedKind::Face => Self::seed_face(r),
        }
    }

    /// A single triangle `0, 1, 2`, counterclockwise.
    pub fn seed_face(r: u32) -> Result<Self, MeshError> {
        check_degree(r)?;
        let graph = RotationGraph::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]]);
        Ok(Self::from_parts(r, 0, vec![0, 1, 2], graph).with_vertex_layers(vec![0; 3]))
    }

    /// A lone vertex with no boundary cycle.
    pub fn seed_vertex(r: u32) -> Result<Self, MeshError> {
        check_degree(r)?;
        let graph = RotationGraph::from_rotation(vec![Vec::new()]);
        Ok(Self::from_parts(r, 0, Vec::new(), graph).with_vertex_layers(vec![0]))
    }

    pub fn graph(&self) -> &RotationGraph {
        &self.graph
    }

    pub fn ambient_degree(&self) -> u32 {
        self.r
    }

    pub fn boundary(&self) -> &[u32] {
        &self.boundary
    }

    /// Number of expansions applied to the seed.
    pub fn layer_index(&self) -> u32 {
        self.layer
    }

    pub fn vertex_layers(&self) -> Option<&[u32]> {
        self.vertex_layers.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_degenerate(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn boundary_profile(&self) -> Result<BoundaryProfile, MeshError> {
        if self.is_degenerate() {
            return Err(MeshError::Degenerate);
        }
        let degrees: Vec<usize> = self.boundary.iter().map(|&w| self.graph.degree(w)).collect();
        Ok(BoundaryProfile {
            t: degrees.len(),
            d: degrees.iter().map(|&x| x as u64).sum(),
            degrees,
        })
    }

    /// Whether every boundary vertex has degree at most `floor(1 + r/2)`.
    ///
    /// The degenerate seed has no boundary and counts as convex.
    pub fn is_convex(&self) -> bool {
        self.convexity_witness().is_none()
    }

    /// First boundary vertex violating the convexity bound.
    pub fn convexity_witness(&self) -> Option<u32> {
        let bound = convexity_bound(self.r);
        self.boundary.iter().copied().find(|&w| self.graph.degree(w) > bound)
    }

    /// `T(G)` under the default vertex budget.
    pub fn expand(&self) -> Result<Self, MeshError> {
        self.expand_within(DEFAULT_VERTEX_BUDGET)
    }

    /// Adds every face of the mesh that touches the disk, returning a new disk.
    ///
    /// Fails if the disk is not convex or if the result would have more than
    /// `budget` vertices.
    pub fn expand_within(&self, budget: usize) -> Result<Self, MeshError> {
        if self.is_degenerate() {
            return self.fan(budget);
        }
        if let Some(w) = self.convexity_witness() {
            return Err(MeshError::NotConvex {
                vertex: w,
                degree: self.graph.degree(w),
                bound: convexity_bound(self.r),
            });
        }

        let r = self.r as usize;
        let t = self.boundary.len();
        let old_count = self.vertex_count();
        // each boundary vertex gets r − 2 − deg private neighbors, each boundary edge one shared
        let private_counts: Vec<usize> =
            self.boundary.iter().map(|&w| r - 2 - self.graph.degree(w)).collect();
        let required = old_count + private_counts.iter().sum::<usize>() + t;
        if required > budget {
            return Err(MeshError::BudgetExceeded { required, budget });
        }
        if required > u32::MAX as usize {
            return Err(MeshError::BudgetExceeded { required, budget: u32::MAX as usize });
        }

        // New boundary cycle D, in creation order: privates of w_j, then the
        // vertex shared by w_j and w_{j+1}.
        let mut next_id = old_count as u32;
        let mut private_start = Vec::with_capacity(t);
        let mut shared = Vec::with_capacity(t);
        let mut new_boundary = Vec::with_capacity(required - old_count);
        for &k in &private_counts {
            private_start.push(next_id);
            new_boundary.extend(next_id..next_id + k as u32);
            next_id += k as u32;
            shared.push(next_id);
            new_boundary.push(next_id);
            next_id += 1;
        }

        let mut graph = self.graph.clone();
        let rotation = graph.rotation_mut();
        rotation.reserve(new_boundary.len());

        // Old boundary: the exterior gap after w_{j−1} fills with
        // [shared_{j−1}, privates_j…, shared_j].
        for j in 0..t {
            let w = self.boundary[j];
            let prev_j = (j + t - 1) % t;
            let pred = self.boundary[prev_j];
            let rot = &mut rotation[w as usize];
            let at = rot
                .iter()
                .position(|&x| x == pred)
                .ok_or_else(|| MeshError::MalformedDisk(format!("boundary edge {pred}-{w} missing")))?;
            let start = private_start[j];
            let fill = std::iter::once(shared[prev_j])
                .chain(start..start + private_counts[j] as u32)
                .chain(std::iter::once(shared[j]));
            rot.splice(at + 1..at + 1, fill);
        }

        // New boundary vertices: [D-successor, interior…, D-predecessor].
        let m = new_boundary.len();
        let mut vertex_layers = self.vertex_layers.clone();
        for j in 0..t {
            let w = self.boundary[j];
            let w_next = self.boundary[(j + 1) % t];
            let start = private_start[j];
            for id in (start..start + private_counts[j] as u32).chain(std::iter::once(shared[j])) {
                let pos = (id as usize) - old_count;
                let succ = new_boundary[(pos + 1) % m];
                let pred = new_boundary[(pos + m - 1) % m];
                let rot = if id == shared[j] { vec![succ, w_next, w, pred] } else { vec![succ, w, pred] };
                debug_assert_eq!(rotation.len(), id as usize);
                rotation.push(rot);
            }
        }
        if let Some(layers) = vertex_layers.as_mut() {
            layers.resize(required, self.layer + 1);
        }

        Ok(CombinatorialDisk { graph, r: self.r, boundary: new_boundary, layer: self.layer + 1, vertex_layers })
    }

    /// First expansion of the single-vertex seed: a hub surrounded by `r` triangles.
    fn fan(&self, budget: usize) -> Result<Self, MeshError> {
        let r = self.r;
        let required = self.vertex_count() + r as usize;
        if required > budget {
            return Err(MeshError::BudgetExceeded { required, budget });
        }
        if self.vertex_count() != 1 {
            return Err(MeshError::MalformedDisk("degenerate disk must be a single vertex".into()));
        }
        let mut rotation = vec![(1..=r).collect::<Vec<u32>>()];
        for i in 1..=r {
            let succ = if i == r { 1 } else { i + 1 };
            let pred = if i == 1 { r } else { i - 1 };
            rotation.push(vec![succ, 0, pred]);
        }
        let vertex_layers = self.vertex_layers.as_ref().map(|layers| {
            let mut layers = layers.clone();
            layers.resize(required, self.layer + 1);
            layers
        });
        Ok(CombinatorialDisk {
            graph: RotationGraph::from_rotation(rotation),
            r,
            boundary: (1..=r).collect(),
            layer: self.layer + 1,
            vertex_layers,
        })
    }
}
