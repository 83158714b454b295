//! `verify`: the whole property suite over a range of degrees.
//!
//! Work is split into independent jobs (one per degree for the analytic
//! checks, one per degree and seed for explicit growth) which run on the
//! rayon pool and are merged in job order, so the report does not depend on
//! scheduling.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use meshsum_core::analytics::{census_step, counts_from_boundary, deltas_from_census, GrowthStart, SeedDescriptor};
use meshsum_core::mesh::{
    count_explicit, delta_counts, layer_census, validate_disk, CombinatorialDisk, MeshError, SeedKind,
};
use meshsum_core::summation::{
    euler_formula_check, euler_sum, euler_sum_by_lemma, generating_value, mesh_invariants, mesh_invariants_from_seed,
    partial_sum, MeshInvariants, RecurrenceSeries,
};
use meshsum_core::{DiskCounts, LayerCensus, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::options::DegreeRange;
use crate::{CliError, SCHEMA_VERSION};

pub const MIN_VERIFY_DEGREE: u32 = 7;
pub const MAX_VERIFY_DEGREE: u32 = 1000;
pub const DEFAULT_RNG_SEED: u64 = 0x6d65_7368_7375_6d31;
pub const LEMMA_TRIALS: usize = 1000;
pub const LINEARITY_TRIALS: usize = 100;
pub const RECURRENCE_HORIZON: u32 = 50;
pub const CONVERGENT_TERMS: usize = 60;
/// Relative gap allowed between the partial sum and the generating function.
pub const CONVERGENT_GAP: (i64, i64) = (1, 1_000_000_000_000);

/// Deliberately corrupted measurement, used to check that the harness notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    Census,
    Counts,
    Deltas,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "census" => Ok(Fault::Census),
            "counts" => Ok(Fault::Counts),
            "deltas" => Ok(Fault::Deltas),
            _ => Err(format!("unknown fault {s:?}; expected census, counts or deltas")),
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fault::Census => "census",
            Fault::Counts => "counts",
            Fault::Deltas => "deltas",
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub degrees: DegreeRange,
    pub layers: u32,
    pub seeds: Vec<SeedKind>,
    pub budget: usize,
    pub rng_seed: u64,
    pub inject_fault: Option<Fault>,
}

impl VerifyOptions {
    pub fn new(degrees: DegreeRange, layers: u32, budget: usize) -> Self {
        VerifyOptions {
            degrees,
            layers,
            seeds: vec![SeedKind::Vertex, SeedKind::Face],
            budget,
            rng_seed: DEFAULT_RNG_SEED,
            inject_fault: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationRecord {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer: Option<u32>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthCoverage {
    pub r: u32,
    pub seed: String,
    /// Last layer built explicitly; later layers were checked analytically only.
    pub explicit_layers: u32,
    pub vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub degrees: String,
    pub layers: u32,
    pub seeds: Vec<String>,
    pub budget: usize,
    pub rng_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub schema_version: String,
    pub config: VerifyConfig,
    pub checks: BTreeMap<String, Tally>,
    pub coverage: Vec<GrowthCoverage>,
    pub violations: Vec<ViolationRecord>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy)]
struct Context {
    r: Option<u32>,
    seed: Option<SeedKind>,
    layer: Option<u32>,
}

impl Context {
    fn global() -> Self {
        Context { r: None, seed: None, layer: None }
    }

    fn degree(r: u32) -> Self {
        Context { r: Some(r), seed: None, layer: None }
    }

    fn at(self, layer: u32) -> Self {
        Context { layer: Some(layer), ..self }
    }
}

/// Results of one job.
#[derive(Default)]
struct Ledger {
    checks: BTreeMap<String, Tally>,
    violations: Vec<ViolationRecord>,
    coverage: Vec<GrowthCoverage>,
}

impl Ledger {
    fn record(&mut self, check: &str, ctx: Context, ok: bool, detail: impl FnOnce() -> String) {
        let tally = self.checks.entry(check.to_string()).or_default();
        if ok {
            tally.passed += 1;
        } else {
            tally.failed += 1;
            self.violations.push(ViolationRecord {
                check: check.to_string(),
                r: ctx.r,
                seed: ctx.seed.map(|s| s.name().to_string()),
                layer: ctx.layer,
                detail: detail(),
            });
        }
    }

    /// Records the outcome of a fallible step; an error is a failure of `check`.
    fn attempt<T, E: fmt::Display>(&mut self, check: &str, ctx: Context, result: Result<T, E>) -> Option<T> {
        match result {
            Ok(value) => Some(value),
            Err(err) => {
                self.record(check, ctx, false, || err.to_string());
                None
            }
        }
    }

    fn merge(&mut self, other: Ledger) {
        for (name, t) in other.checks {
            let tally = self.checks.entry(name).or_default();
            tally.passed += t.passed;
            tally.failed += t.failed;
        }
        self.violations.extend(other.violations);
        self.coverage.extend(other.coverage);
    }
}

#[derive(Debug, Clone, Copy)]
enum Job {
    Global,
    Degree(u32),
    Explicit(u32, SeedKind),
}

pub fn cmd_verify(opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    let DegreeRange { lo, hi } = opts.degrees;
    if lo < MIN_VERIFY_DEGREE || hi > MAX_VERIFY_DEGREE {
        return Err(CliError::Usage(format!(
            "verify degrees must lie in {MIN_VERIFY_DEGREE}..{MAX_VERIFY_DEGREE}, got {}",
            opts.degrees
        )));
    }
    if opts.layers > meshsum_core::analytics::MAX_LAYERS {
        return Err(CliError::Usage(format!(
            "at most {} layers can be verified, got {}",
            meshsum_core::analytics::MAX_LAYERS,
            opts.layers
        )));
    }

    let mut jobs = vec![Job::Global];
    for r in opts.degrees.degrees() {
        jobs.push(Job::Degree(r));
        jobs.extend(opts.seeds.iter().map(|&kind| Job::Explicit(r, kind)));
    }
    let ledgers: Vec<Ledger> = jobs
        .par_iter()
        .map(|job| match *job {
            Job::Global => global_checks(opts.rng_seed),
            Job::Degree(r) => degree_checks(r, opts.rng_seed),
            Job::Explicit(r, kind) => explicit_checks(r, kind, opts),
        })
        .collect();

    let mut total = Ledger::default();
    for ledger in ledgers {
        total.merge(ledger);
    }
    let passed = total.violations.is_empty();
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION.to_string(),
        config: VerifyConfig {
            degrees: opts.degrees.to_string(),
            layers: opts.layers,
            seeds: opts.seeds.iter().map(|s| s.name().to_string()).collect(),
            budget: opts.budget,
            rng_seed: opts.rng_seed,
            inject_fault: opts.inject_fault,
        },
        checks: total.checks,
        coverage: total.coverage,
        violations: total.violations,
        passed,
    })
}

/// Randomized agreement of the two Euler-sum formulas.
fn global_checks(rng_seed: u64) -> Ledger {
    let mut ledger = Ledger::default();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..LEMMA_TRIALS {
        let r = loop {
            let r: i64 = rng.gen_range(MIN_VERIFY_DEGREE as i64..=MAX_VERIFY_DEGREE as i64);
            if r != 6 {
                break r;
            }
        };
        let x1 = BigInt::from(rng.gen_range(-1_000_000_000_000i64..=1_000_000_000_000));
        let x2 = BigInt::from(rng.gen_range(-1_000_000_000_000i64..=1_000_000_000_000));
        let lemma = euler_sum_by_lemma(r, &x1, &x2);
        let direct = euler_sum(&RecurrenceSeries::new(r - 4, x1.clone(), x2.clone()));
        let ok = matches!((&lemma, &direct), (Ok(a), Ok(b)) if a == b);
        ledger.record("lemma-vs-direct-sum", Context::global(), ok, || {
            format!("r={r} x1={x1} x2={x2}: {lemma:?} vs {direct:?}")
        });
    }
    ledger
}

fn seed_starts(r: u32) -> Vec<(&'static str, Result<GrowthStart, String>)> {
    vec![
        ("vertex", GrowthStart::single_vertex(r).map_err(|e| e.to_string())),
        ("face", SeedDescriptor::triangle(r).and_then(|s| GrowthStart::from_seed(&s)).map_err(|e| e.to_string())),
    ]
}

/// Checks that need no explicit disk.
fn degree_checks(r: u32, rng_seed: u64) -> Ledger {
    let mut ledger = Ledger::default();
    let ctx = Context::degree(r);
    let Some(closed) = ledger.attempt("closed-form-invariants", ctx, mesh_invariants(r)) else {
        return ledger;
    };
    let expected = {
        let k = r as i64 - 6;
        let q = |n: i64| Rational::new(n, k).expect("r > 6");
        MeshInvariants { v: q(-6), e: q(-3 * r as i64), f: q(-2 * r as i64) }
    };
    ledger.record("closed-form-invariants", ctx, closed == expected, || {
        format!("got {closed:?}, expected {expected:?}")
    });
    ledger.record("corollary", ctx, euler_formula_check(&closed), || {
        format!("vM - eM + fM = {}", &closed.v - &closed.e + &closed.f)
    });

    // Seed independence over the fan and triangle boundary profiles.
    for (t, d) in [(r as i64, 3 * r as i64), (3, 6)] {
        let from_seed = SeedDescriptor::new(r, t, d).map_err(|e| e.to_string()).and_then(|s| {
            mesh_invariants_from_seed(&s).map_err(|e| e.to_string())
        });
        ledger.record("seed-independence", ctx, from_seed.as_ref() == Ok(&closed), || {
            format!("profile t={t} d={d}: {from_seed:?}")
        });
    }

    for (name, start) in seed_starts(r) {
        let Some(start) = ledger.attempt("recurrence-equivalence", ctx, start) else { continue };
        recurrence_equivalence(&mut ledger, ctx, name, &start);
        convergent_regime(&mut ledger, ctx, name, &start);
        growth_rate(&mut ledger, ctx, name, &start);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed ^ u64::from(r).rotate_left(32));
    for _ in 0..LINEARITY_TRIALS {
        let mut pick = || BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000));
        let (x, y, a, b) = (
            RecurrenceSeries::for_degree(r, pick(), pick()),
            RecurrenceSeries::for_degree(r, pick(), pick()),
            pick(),
            pick(),
        );
        let combined = RecurrenceSeries::for_degree(r, &a * &x.x1 + &b * &y.x1, &a * &x.x2 + &b * &y.x2);
        let lhs = euler_sum(&combined);
        let rhs = euler_sum(&x).and_then(|sx| {
            euler_sum(&y).map(|sy| Rational::from(a.clone()) * sx + Rational::from(b.clone()) * sy)
        });
        ledger.record("euler-linearity", ctx, matches!((&lhs, &rhs), (Ok(p), Ok(q)) if p == q), || {
            format!("a={a} b={b}: {lhs:?} vs {rhs:?}")
        });
    }
    ledger
}

/// The second-order recurrence replays the census-driven increments.
fn recurrence_equivalence(ledger: &mut Ledger, ctx: Context, seed: &str, start: &GrowthStart) {
    let mut census = start.first.clone();
    let mut coupled = Vec::with_capacity(RECURRENCE_HORIZON as usize);
    for _ in 0..RECURRENCE_HORIZON {
        coupled.push(deltas_from_census(&census));
        census = census_step(start.r, &census);
    }
    type Pick = fn(&meshsum_core::DeltaCounts) -> &BigInt;
    let components: [(&str, Pick); 3] = [("v", |d| &d.v), ("e", |d| &d.e), ("f", |d| &d.f)];
    for (name, pick) in components {
        let series = RecurrenceSeries::for_degree(start.r, pick(&coupled[0]).clone(), pick(&coupled[1]).clone());
        let mismatch = series.terms().zip(&coupled).position(|(x, d)| &x != pick(d));
        ledger.record("recurrence-equivalence", ctx, mismatch.is_none(), || {
            format!("{seed} seed: {name}-increments diverge at layer {}", mismatch.unwrap_or(0) + 1)
        });
    }
}

/// Inside the radius of convergence the power series matches the rational function.
fn convergent_regime(ledger: &mut Ledger, ctx: Context, seed: &str, start: &GrowthStart) {
    let first = deltas_from_census(&start.first);
    let second = deltas_from_census(&census_step(start.r, &start.first));
    let series = RecurrenceSeries::for_degree(start.r, first.v, second.v);
    let t = Rational::new(1, 2 * (start.r as i64 - 4)).expect("r > 4");
    let bound = Rational::new(CONVERGENT_GAP.0, CONVERGENT_GAP.1).expect("nonzero");
    let Some(exact) = ledger.attempt("convergent-regime", ctx, generating_value(&series, &t)) else { return };
    let partial = partial_sum(&series, &t, CONVERGENT_TERMS);
    let gap = (&partial - &exact).abs().checked_div(&exact.abs());
    ledger.record("convergent-regime", ctx, matches!(&gap, Ok(g) if *g < bound), || {
        format!("{seed} seed: relative gap {gap:?} at t={t}")
    });
}

/// Consecutive first-census entries grow by a factor between `r − 5` and `r − 4`.
fn growth_rate(ledger: &mut Ledger, ctx: Context, seed: &str, start: &GrowthStart) {
    let mut census = census_step(start.r, &start.first);
    for n in 2..=30u32 {
        let next = census_step(start.r, &census);
        let ok = &census.a * (start.r - 5) <= next.a && next.a <= &census.a * (start.r - 4);
        ledger.record("growth-rate", ctx, ok, || format!("{seed} seed: a_{n}={} a_{}={}", census.a, n + 1, next.a));
        census = next;
    }
}

fn perturb(value: &mut BigInt) {
    *value += 1;
}

/// Explicit growth checked against itself, the closed forms and the predictions.
fn explicit_checks(r: u32, kind: SeedKind, opts: &VerifyOptions) -> Ledger {
    let mut ledger = Ledger::default();
    let ctx = Context { r: Some(r), seed: Some(kind), layer: None };
    let start = match kind {
        SeedKind::Vertex => GrowthStart::single_vertex(r),
        SeedKind::Face => SeedDescriptor::triangle(r).and_then(|s| GrowthStart::from_seed(&s)),
    };
    let Some(start) = ledger.attempt("oracle-prediction", ctx, start) else { return ledger };
    let predictions = if opts.layers == 0 { Ok(Vec::new()) } else { start.predict(opts.layers) };
    let Some(predictions) = ledger.attempt("oracle-prediction", ctx, predictions) else { return ledger };
    let Some(mut disk) = ledger.attempt("disk-valid", ctx.at(0), CombinatorialDisk::seed(kind, r)) else {
        return ledger;
    };
    let invariants = mesh_invariants(r).ok();

    let mut prev_counts = check_disk(&mut ledger, ctx.at(0), &disk, &start.base, invariants.as_ref(), None);
    let mut built = 0;
    for n in 1..=opts.layers {
        let next = match disk.expand_within(opts.budget) {
            Ok(next) => next,
            Err(MeshError::BudgetExceeded { .. }) => break,
            Err(err) => {
                ledger.record("disk-valid", ctx.at(n), false, || err.to_string());
                break;
            }
        };
        let here = ctx.at(n);
        let fault = if n == 1 { opts.inject_fault } else { None };
        let predicted = &predictions[n as usize - 1];

        let census = ledger.attempt("census-degrees", here, layer_census(&disk, &next)).map(|mut c| {
            if fault == Some(Fault::Census) {
                perturb(&mut c.a);
            }
            c
        });
        if let Some(census) = &census {
            ledger.record("census-degrees", here, true, String::new);
            check_census(&mut ledger, here, &disk, census, &predicted.census);
        }

        if let Some(mut deltas) = ledger.attempt("delta-linear", here, delta_counts(&disk, &next)) {
            if fault == Some(Fault::Deltas) {
                perturb(&mut deltas.v);
            }
            if let Some(census) = &census {
                let linear = deltas_from_census(census);
                ledger.record("delta-linear", here, deltas == linear, || {
                    format!("explicit {deltas:?}, from census {linear:?}")
                });
            }
            ledger.record("delta-euler", here, deltas.euler_increment() == BigInt::from(0), || {
                format!("dv - de + df = {}", deltas.euler_increment())
            });
            ledger.record("oracle-deltas", here, deltas == predicted.deltas, || {
                format!("explicit {deltas:?}, predicted {:?}", predicted.deltas)
            });
        }

        let counts = check_disk(
            &mut ledger,
            here,
            &next,
            &predicted.cumulative,
            invariants.as_ref(),
            (fault == Some(Fault::Counts)).then_some(()),
        );
        if let (Some(before), Some(after)) = (&prev_counts, &counts) {
            ledger.record("monotone-growth", here, after.v > before.v, || {
                format!("v went from {} to {}", before.v, after.v)
            });
        }
        prev_counts = counts;
        disk = next;
        built = n;
    }
    ledger.coverage.push(GrowthCoverage {
        r,
        seed: kind.name().to_string(),
        explicit_layers: built,
        vertices: disk.vertex_count(),
    });
    ledger
}

/// `b` equals the previous boundary length, `a = t(r−2) − d`, and both match the prediction.
fn check_census(ledger: &mut Ledger, ctx: Context, prev: &CombinatorialDisk, census: &LayerCensus, predicted: &LayerCensus) {
    if !prev.is_degenerate() {
        if let Some(profile) = ledger.attempt("census-lemma", ctx, prev.boundary_profile()) {
            let r = BigInt::from(prev.ambient_degree());
            let t = BigInt::from(profile.t);
            let a = &t * (r - 2) - BigInt::from(profile.d);
            let ok = census.b == t && census.a == a;
            ledger.record("census-lemma", ctx, ok, || {
                format!("census ({}, {}), expected ({a}, {t})", census.a, census.b)
            });
        }
    }
    ledger.record("oracle-census", ctx, census == predicted, || {
        format!("explicit ({}, {}), predicted ({}, {})", census.a, census.b, predicted.a, predicted.b)
    });
}

/// Structural and counting checks on one disk. Returns its explicit counts.
fn check_disk(
    ledger: &mut Ledger,
    ctx: Context,
    disk: &CombinatorialDisk,
    predicted: &DiskCounts,
    invariants: Option<&MeshInvariants>,
    corrupt: Option<()>,
) -> Option<DiskCounts> {
    let violations = validate_disk(disk);
    ledger.record("disk-valid", ctx, violations.is_empty(), || {
        violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    });
    ledger.record("convex", ctx, disk.is_convex(), || {
        format!("vertex {:?} exceeds the convexity bound", disk.convexity_witness())
    });

    let mut counts = ledger.attempt("euler", ctx, count_explicit(disk))?;
    if corrupt.is_some() {
        perturb(&mut counts.v);
    }
    ledger.record("euler", ctx, counts.satisfies_euler(), || {
        format!("v - e + f = {}", counts.euler_characteristic())
    });
    let graph = disk.graph();
    let edges = graph.edges().count();
    ledger.record("handshake", ctx, graph.degree_sum() == 2 * edges && counts.e == BigInt::from(edges), || {
        format!("degree sum {}, {} edges, counted e = {}", graph.degree_sum(), edges, counts.e)
    });
    let t = BigInt::from(disk.boundary().len());
    ledger.record("triangulation", ctx, &counts.f * 3 + &t == &counts.e * 2, || {
        format!("3f + t = {}, 2e = {}", &counts.f * 3 + &t, &counts.e * 2)
    });
    ledger.record("oracle-prediction", ctx, counts == *predicted, || {
        format!("explicit {counts:?}, predicted {predicted:?}")
    });

    if !disk.is_degenerate() {
        if let Some(profile) = ledger.attempt("closed-form", ctx, disk.boundary_profile()) {
            let seed = SeedDescriptor::new(disk.ambient_degree(), profile.t as u64, profile.d);
            if let Some(seed) = ledger.attempt("closed-form", ctx, seed) {
                let closed = counts_from_boundary(&seed);
                ledger.record("closed-form", ctx, closed.as_ref() == Ok(&counts), || {
                    format!("closed form {closed:?}, explicit {counts:?}")
                });
                if let Some(expected) = invariants {
                    let from_seed = mesh_invariants_from_seed(&seed);
                    ledger.record("seed-independence", ctx, from_seed.as_ref() == Ok(expected), || {
                        format!("boundary profile t={} d={}: {from_seed:?}", profile.t, profile.d)
                    });
                }
            }
        }
    }
    Some(counts)
}

impl VerifyReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "verify: r={} layers={} seeds={} budget={} rng_seed={}{}",
            c.degrees,
            c.layers,
            c.seeds.join(","),
            c.budget,
            c.rng_seed,
            c.inject_fault.map_or(String::new(), |f| format!(" inject_fault={f}"))
        );
        let _ = writeln!(out, "{:<26} {:>10} {:>8}", "check", "passed", "failed");
        for (name, t) in &self.checks {
            let _ = writeln!(out, "{name:<26} {:>10} {:>8}", t.passed, t.failed);
        }
        for g in &self.coverage {
            let _ = writeln!(
                out,
                "explicit: r={} seed={} layers 0..{} ({} vertices)",
                g.r, g.seed, g.explicit_layers, g.vertices
            );
        }
        for v in &self.violations {
            let mut at = String::new();
            if let Some(r) = v.r {
                let _ = write!(at, " r={r}");
            }
            if let Some(seed) = &v.seed {
                let _ = write!(at, " seed={seed}");
            }
            if let Some(layer) = v.layer {
                let _ = write!(at, " layer={layer}");
            }
            let _ = writeln!(out, "VIOLATION {}{at}: {}", v.check, v.detail);
        }
        let _ = writeln!(out, "{}", if self.passed { "all checks passed" } else { "verification FAILED" });
        out
    }
}
