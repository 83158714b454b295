//! `grow`: explicit construction side by side with the analytic predictions.

use std::fmt::Write as _;

use meshsum_core::analytics::{GrowthStart, LayerPrediction};
use meshsum_core::mesh::{count_explicit, delta_counts, layer_census, CombinatorialDisk, MeshError, SeedKind};
use meshsum_core::summation::{euler_formula_check, mesh_invariants, mesh_invariants_from_start, MeshInvariants};
use meshsum_core::{DeltaCounts, DiskCounts, LayerCensus, Rational};
use serde::{Deserialize, Serialize};

use crate::options::SeedArg;
use crate::{CliError, SCHEMA_VERSION};

#[derive(Debug, Clone)]
pub struct GrowOptions {
    pub r: u32,
    pub seed: SeedArg,
    pub layers: u32,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthReport {
    pub schema_version: String,
    pub config: GrowConfig,
    pub layers: Vec<LayerRecord>,
    pub invariants: InvariantsReport,
    /// True iff every explicitly built layer matches its prediction.
    pub all_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowConfig {
    pub r: u32,
    pub seed: String,
    pub n_max: u32,
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerStatus {
    Explicit,
    AnalyticOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerRecord {
    pub n: u32,
    pub status: LayerStatus,
    pub predicted: DiskCounts,
    pub explicit: Option<DiskCounts>,
    pub census: Option<LayerCensus>,
    pub explicit_census: Option<LayerCensus>,
    pub deltas: Option<DeltaCounts>,
    pub explicit_deltas: Option<DeltaCounts>,
    pub matches: Option<MatchFlags>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchFlags {
    pub counts: bool,
    pub census: bool,
    pub deltas: bool,
}

impl MatchFlags {
    pub fn all(&self) -> bool {
        self.counts && self.census && self.deltas
    }
}

/// Formal mesh counts for one degree, optionally re-derived from a seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsReport {
    pub r: u32,
    #[serde(rename = "vM")]
    pub v: Rational,
    #[serde(rename = "eM")]
    pub e: Rational,
    #[serde(rename = "fM")]
    pub f: Rational,
    pub euler_check: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from_seed: Option<MeshInvariants>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_independent: Option<bool>,
}

impl InvariantsReport {
    pub fn for_degree(r: u32) -> Result<Self, CliError> {
        let m = mesh_invariants(r)?;
        Ok(InvariantsReport {
            r,
            euler_check: euler_formula_check(&m),
            v: m.v,
            e: m.e,
            f: m.f,
            seed: None,
            from_seed: None,
            seed_independent: None,
        })
    }

    /// Adds the seed pipeline's values and whether they equal the closed form.
    pub fn with_seed(mut self, seed: &SeedArg, start: &GrowthStart) -> Result<Self, CliError> {
        let from_seed = mesh_invariants_from_start(start)?;
        self.seed_independent = Some(from_seed.v == self.v && from_seed.e == self.e && from_seed.f == self.f);
        self.seed = Some(seed.to_string());
        self.from_seed = Some(from_seed);
        Ok(self)
    }

    /// Euler check and, when a seed was given, seed independence.
    pub fn passes(&self) -> bool {
        self.euler_check && self.seed_independent.unwrap_or(true)
    }
}

struct ExplicitLayer {
    counts: DiskCounts,
    census: Option<LayerCensus>,
    deltas: Option<DeltaCounts>,
}

/// Builds layers `0..=n` explicitly until the budget stops growth.
fn grow_explicit(
    kind: SeedKind,
    r: u32,
    layers: u32,
    budget: usize,
) -> Result<(Vec<ExplicitLayer>, CombinatorialDisk), CliError> {
    let mut disk = CombinatorialDisk::seed(kind, r)?;
    let mut out = vec![ExplicitLayer { counts: count_explicit(&disk)?, census: None, deltas: None }];
    for _ in 0..layers {
        let next = match disk.expand_within(budget) {
            Ok(next) => next,
            Err(MeshError::BudgetExceeded { .. }) => break,
            Err(err) => return Err(err.into()),
        };
        out.push(ExplicitLayer {
            counts: count_explicit(&next)?,
            census: Some(layer_census(&disk, &next)?),
            deltas: Some(delta_counts(&disk, &next)?),
        });
        disk = next;
    }
    Ok((out, disk))
}

/// Runs `grow`. Also returns the last explicitly built disk.
pub fn cmd_grow(opts: &GrowOptions) -> Result<(GrowthReport, CombinatorialDisk), CliError> {
    let kind = opts.seed.kind().ok_or_else(|| {
        CliError::Usage(format!(
            "explicit growth supports only vertex and face seeds, got {}; use `predict` for t:d seeds",
            opts.seed
        ))
    })?;
    let start = opts.seed.growth_start(opts.r)?;

    let (explicit, predicted) = rayon::join(
        || grow_explicit(kind, opts.r, opts.layers, opts.budget),
        || -> Result<Vec<LayerPrediction>, CliError> {
            if opts.layers == 0 {
                Ok(Vec::new())
            } else {
                Ok(start.predict(opts.layers)?)
            }
        },
    );
    let ((explicit, last_disk), predicted) = (explicit?, predicted?);

    let mut layers = Vec::with_capacity(opts.layers as usize + 1);
    for n in 0..=opts.layers {
        let (pred_counts, pred_census, pred_deltas) = if n == 0 {
            (start.base.clone(), None, None)
        } else {
            let p = &predicted[n as usize - 1];
            (p.cumulative.clone(), Some(p.census.clone()), Some(p.deltas.clone()))
        };
        let record = match explicit.get(n as usize) {
            Some(x) => LayerRecord {
                n,
                status: LayerStatus::Explicit,
                matches: Some(MatchFlags {
                    counts: x.counts == pred_counts,
                    census: x.census == pred_census,
                    deltas: x.deltas == pred_deltas,
                }),
                predicted: pred_counts,
                explicit: Some(x.counts.clone()),
                census: pred_census,
                explicit_census: x.census.clone(),
                deltas: pred_deltas,
                explicit_deltas: x.deltas.clone(),
            },
            None => LayerRecord {
                n,
                status: LayerStatus::AnalyticOnly,
                predicted: pred_counts,
                explicit: None,
                census: pred_census,
                explicit_census: None,
                deltas: pred_deltas,
                explicit_deltas: None,
                matches: None,
            },
        };
        layers.push(record);
    }

    let invariants = InvariantsReport::for_degree(opts.r)?.with_seed(&opts.seed, &start)?;
    let all_match = layers.iter().filter_map(|l| l.matches).all(|m| m.all());
    let report = GrowthReport {
        schema_version: SCHEMA_VERSION.to_string(),
        config: GrowConfig { r: opts.r, seed: opts.seed.to_string(), n_max: opts.layers, budget: opts.budget },
        layers,
        invariants,
        all_match,
    };
    Ok((report, last_disk))
}

impl GrowthReport {
    /// Exit-worthy verdict: all explicit layers match and the invariants check out.
    pub fn passes(&self) -> bool {
        self.all_match && self.invariants.passes()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "grow: r={} seed={} layers=0..{} budget={}", c.r, c.seed, c.n_max, c.budget);
        let _ = writeln!(
            out,
            "{:>4}  {:<9} {:>14} {:>14} {:>14} {:>12} {:>12}  match",
            "n", "status", "v", "e", "f", "a", "b"
        );
        for l in &self.layers {
            let (a, b) = l
                .census
                .as_ref()
                .map_or(("-".to_string(), "-".to_string()), |c| (c.a.to_string(), c.b.to_string()));
            let status = match l.status {
                LayerStatus::Explicit => "explicit",
                LayerStatus::AnalyticOnly => "analytic",
            };
            let verdict = match l.matches {
                Some(m) if m.all() => "yes",
                Some(_) => "NO",
                None => "-",
            };
            let p = &l.predicted;
            let _ = writeln!(out, "{:>4}  {:<9} {:>14} {:>14} {:>14} {:>12} {:>12}  {verdict}", l.n, status, p.v, p.e, p.f, a, b);
        }
        let i = &self.invariants;
        let _ = writeln!(
            out,
            "invariants: vM={} eM={} fM={} euler_check={} seed_independent={}",
            i.v,
            i.e,
            i.f,
            i.euler_check,
            i.seed_independent.map_or("-".to_string(), |x| x.to_string())
        );
        let _ = writeln!(out, "all layers match: {}", self.all_match);
        out
    }
}
