//! `predict` and `sum`: analytic reports that need no explicit disk.

use std::fmt::Write as _;

use meshsum_core::analytics::LayerPrediction;
use serde::{Deserialize, Serialize};

use crate::grow::InvariantsReport;
use crate::options::{DegreeRange, SeedArg};
use crate::{CliError, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictReport {
    pub schema_version: String,
    pub r: u32,
    pub seed: String,
    pub layers: Vec<LayerPrediction>,
}

pub fn cmd_predict(r: u32, seed: &SeedArg, layers: u32) -> Result<PredictReport, CliError> {
    let start = seed.growth_start(r)?;
    Ok(PredictReport {
        schema_version: SCHEMA_VERSION.to_string(),
        r,
        seed: seed.to_string(),
        layers: start.predict(layers)?,
    })
}

impl PredictReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "predict: r={} seed={}", self.r, self.seed);
        let _ = writeln!(
            out,
            "{:>4} {:>14} {:>14} {:>14} {:>14} {:>14} {:>16} {:>16} {:>16}",
            "n", "a", "b", "dv", "de", "df", "v", "e", "f"
        );
        for p in &self.layers {
            let _ = writeln!(
                out,
                "{:>4} {:>14} {:>14} {:>14} {:>14} {:>14} {:>16} {:>16} {:>16}",
                p.n, p.census.a, p.census.b, p.deltas.v, p.deltas.e, p.deltas.f, p.cumulative.v, p.cumulative.e, p.cumulative.f
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumReport {
    pub schema_version: String,
    pub results: Vec<InvariantsReport>,
}

pub fn cmd_sum(degrees: DegreeRange, seed: Option<&SeedArg>) -> Result<SumReport, CliError> {
    let results = degrees
        .degrees()
        .map(|r| {
            let report = InvariantsReport::for_degree(r)?;
            match seed {
                Some(seed) => report.with_seed(seed, &seed.growth_start(r)?),
                None => Ok(report),
            }
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SumReport { schema_version: SCHEMA_VERSION.to_string(), results })
}

impl SumReport {
    pub fn passes(&self) -> bool {
        self.results.iter().all(InvariantsReport::passes)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>5} {:>10} {:>12} {:>12}  euler  seed", "r", "vM", "eM", "fM");
        for i in &self.results {
            let seed = match (&i.seed, i.seed_independent) {
                (Some(seed), Some(same)) => format!("{seed} {}", if same { "agrees" } else { "DIFFERS" }),
                _ => "-".to_string(),
            };
            let _ = writeln!(
                out,
                "{:>5} {:>10} {:>12} {:>12}  {:<5}  {seed}",
                i.r,
                i.v.to_string(),
                i.e.to_string(),
                i.f.to_string(),
                i.euler_check
            );
        }
        out
    }
}
