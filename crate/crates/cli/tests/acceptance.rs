//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p meshsum --test acceptance`.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use meshsum::SumReport;
use meshsum_core::analytics::{census_step, deltas_from_census, platonic_counts, GrowthStart, SeedDescriptor};
use meshsum_core::mesh::{
    count_explicit, delta_counts, layer_census, CombinatorialDisk, MeshError, SeedKind, DEFAULT_VERTEX_BUDGET,
};
use meshsum_core::summation::{
    euler_sum, euler_sum_by_lemma, generating_value, mesh_invariants, mesh_invariants_from_seed, partial_sum,
    MeshInvariants, RecurrenceSeries,
};
use meshsum_core::{DeltaCounts, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUM_TIME_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(30);
const SWEEP_DEGREES: std::ops::RangeInclusive<u32> = 7..=12;
const LEMMA_TRIALS: usize = 1000;
const LEMMA_RNG_SEED: u64 = 20_240_617;
const RECURRENCE_HORIZON: usize = 50;
const CONVERGENT_TERMS: usize = 60;
/// Relative gap bound, compared as an exact rational.
const CONVERGENT_GAP: (i64, i64) = (1, 1_000_000_000_000);

type Verdict = Result<String, String>;

fn meshsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meshsum")).args(args).output().expect("meshsum runs")
}

fn expected_invariants(r: u32) -> MeshInvariants {
    let (r, k) = (r as i64, r as i64 - 6);
    MeshInvariants {
        v: Rational::new(-6, k).unwrap(),
        e: Rational::new(-3 * r, k).unwrap(),
        f: Rational::new(-2 * r, k).unwrap(),
    }
}

/// Criteria 1 and 2 share one `sum` run over the whole range.
fn sum_range() -> Result<(SumReport, Duration), String> {
    let start = Instant::now();
    let out = meshsum(&["sum", "-r", "7:1000", "--json"]);
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("sum exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let report = serde_json::from_slice(&out.stdout).map_err(|e| format!("unparsable report: {e}"))?;
    Ok((report, elapsed))
}

fn criterion_1(sum: &Result<(SumReport, Duration), String>) -> Verdict {
    let (report, elapsed) = sum.as_ref().map_err(Clone::clone)?;
    let degrees: Vec<u32> = report.results.iter().map(|i| i.r).collect();
    if degrees != (7..=1000).collect::<Vec<_>>() {
        return Err("report does not cover 7..1000".into());
    }
    for i in &report.results {
        let want = expected_invariants(i.r);
        if (&i.v, &i.e, &i.f) != (&want.v, &want.e, &want.f) {
            return Err(format!("r={}: got ({}, {}, {})", i.r, i.v, i.e, i.f));
        }
    }
    if *elapsed >= SUM_TIME_LIMIT {
        return Err(format!("took {elapsed:?}, limit {SUM_TIME_LIMIT:?}"));
    }
    Ok(format!("994 degrees exact in {elapsed:?}"))
}

fn criterion_2(sum: &Result<(SumReport, Duration), String>) -> Verdict {
    let (report, _) = sum.as_ref().map_err(Clone::clone)?;
    for i in &report.results {
        if &i.v - &i.e + &i.f != Rational::one() {
            return Err(format!("r={}: vM - eM + fM = {}", i.r, &i.v - &i.e + &i.f));
        }
        if !i.euler_check {
            return Err(format!("r={}: report flags euler_check=false", i.r));
        }
    }
    Ok(format!("v - e + f = 1 for {} degrees", report.results.len()))
}

/// Everything the explicit sweep measured, for criteria 3, 4 and 5.
#[derive(Default)]
struct Sweep {
    layers: usize,
    max_vertices: usize,
    seed_profiles: usize,
    census_checks: usize,
    seed_failures: Vec<String>,
    oracle_failures: Vec<String>,
    census_failures: Vec<String>,
    elapsed: Duration,
}

fn sweep_one(r: u32, kind: SeedKind, sweep: &mut Sweep) -> Result<(), MeshError> {
    let expected = mesh_invariants(r).unwrap();
    let start = match kind {
        SeedKind::Vertex => GrowthStart::single_vertex(r).unwrap(),
        SeedKind::Face => GrowthStart::from_seed(&SeedDescriptor::triangle(r).unwrap()).unwrap(),
    };
    let predictions = start.predict(40).unwrap();
    let mut disk = CombinatorialDisk::seed(kind, r)?;
    let mut n = 0usize;
    loop {
        let tag = format!("r={r} seed={} layer={n}", kind.name());
        let counts = count_explicit(&disk)?;
        let predicted = if n == 0 { &start.base } else { &predictions[n - 1].cumulative };
        let graph = disk.graph();
        let edges = graph.edges().count();
        let t = BigInt::from(disk.boundary().len());
        if !counts.same_vef(predicted) {
            sweep.oracle_failures.push(format!("{tag}: explicit {counts:?}, predicted {predicted:?}"));
        }
        if !counts.satisfies_euler() {
            sweep.oracle_failures.push(format!("{tag}: v - e + f = {}", counts.euler_characteristic()));
        }
        if graph.degree_sum() != 2 * edges || counts.e != BigInt::from(edges) {
            sweep.oracle_failures.push(format!("{tag}: degree sum {} vs {edges} edges", graph.degree_sum()));
        }
        if &counts.f * 3 + &t != &counts.e * 2 {
            sweep.oracle_failures.push(format!("{tag}: 3f + t != 2e"));
        }
        if !disk.is_degenerate() {
            let profile = disk.boundary_profile()?;
            let seed = SeedDescriptor::new(r, profile.t as u64, profile.d);
            match seed.map_err(|e| e.to_string()).and_then(|s| mesh_invariants_from_seed(&s).map_err(|e| e.to_string())) {
                Ok(m) if m == expected => {}
                other => sweep.seed_failures.push(format!("{tag}: {other:?}")),
            }
            sweep.seed_profiles += 1;
        }
        sweep.layers += 1;
        sweep.max_vertices = sweep.max_vertices.max(disk.vertex_count());

        let next = match disk.expand_within(DEFAULT_VERTEX_BUDGET) {
            Ok(next) => next,
            Err(MeshError::BudgetExceeded { .. }) => return Ok(()),
            Err(err) => return Err(err),
        };
        n += 1;
        let tag = format!("r={r} seed={} layer={n}", kind.name());
        match layer_census(&disk, &next) {
            Ok(census) => {
                sweep.census_checks += 1;
                if next.boundary()[..].iter().any(|&v| !(3..=4).contains(&next.graph().degree(v))) {
                    sweep.census_failures.push(format!("{tag}: boundary degree outside {{3, 4}}"));
                }
                if !disk.is_degenerate() {
                    let profile = disk.boundary_profile()?;
                    let t = BigInt::from(profile.t);
                    let a = &t * (r - 2) - BigInt::from(profile.d);
                    if census.b != t || census.a != a {
                        sweep.census_failures.push(format!("{tag}: census ({}, {}), expected ({a}, {t})", census.a, census.b));
                    }
                }
                if census != predictions[n - 1].census {
                    sweep.oracle_failures.push(format!("{tag}: census differs from prediction"));
                }
            }
            Err(err) => sweep.census_failures.push(format!("{tag}: {err}")),
        }
        if delta_counts(&disk, &next)? != predictions[n - 1].deltas {
            sweep.oracle_failures.push(format!("{tag}: deltas differ from prediction"));
        }
        disk = next;
    }
}

fn explicit_sweep() -> Result<Sweep, String> {
    let mut sweep = Sweep::default();
    let start = Instant::now();
    for r in SWEEP_DEGREES {
        for kind in [SeedKind::Vertex, SeedKind::Face] {
            sweep_one(r, kind, &mut sweep).map_err(|e| format!("r={r} seed={}: {e}", kind.name()))?;
        }
    }
    sweep.elapsed = start.elapsed();
    Ok(sweep)
}

fn criterion_3(sweep: &Result<Sweep, String>) -> Verdict {
    let sweep = sweep.as_ref().map_err(Clone::clone)?;
    for r in SWEEP_DEGREES {
        let expected = mesh_invariants(r).unwrap();
        for (t, d) in [(r as u64, 3 * r as u64), (3, 6)] {
            let got = mesh_invariants_from_seed(&SeedDescriptor::new(r, t, d).map_err(|e| e.to_string())?);
            if got.as_ref() != Ok(&expected) {
                return Err(format!("r={r} profile t={t} d={d}: {got:?}"));
            }
        }
    }
    if let Some(first) = sweep.seed_failures.first() {
        return Err(format!("{} grown profiles disagree, first {first}", sweep.seed_failures.len()));
    }
    Ok(format!("12 seed profiles and {} grown boundary profiles agree", sweep.seed_profiles))
}

fn criterion_4(sweep: &Result<Sweep, String>) -> Verdict {
    let sweep = sweep.as_ref().map_err(Clone::clone)?;
    if let Some(first) = sweep.oracle_failures.first() {
        return Err(format!("{} mismatches, first {first}", sweep.oracle_failures.len()));
    }
    if sweep.elapsed >= SWEEP_TIME_LIMIT {
        return Err(format!("sweep took {:?}, limit {SWEEP_TIME_LIMIT:?}", sweep.elapsed));
    }
    Ok(format!(
        "{} layers up to {} vertices match, {:?}",
        sweep.layers, sweep.max_vertices, sweep.elapsed
    ))
}

fn criterion_5(sweep: &Result<Sweep, String>) -> Verdict {
    let sweep = sweep.as_ref().map_err(Clone::clone)?;
    if let Some(first) = sweep.census_failures.first() {
        return Err(format!("{} exceptions, first {first}", sweep.census_failures.len()));
    }
    Ok(format!("{} expansions, zero exceptions", sweep.census_checks))
}

fn criterion_6() -> Verdict {
    type Pick = fn(&DeltaCounts) -> &BigInt;
    let components: [(&str, Pick); 3] = [("v", |d| &d.v), ("e", |d| &d.e), ("f", |d| &d.f)];
    for r in SWEEP_DEGREES {
        let starts = [
            GrowthStart::single_vertex(r).unwrap(),
            GrowthStart::from_seed(&SeedDescriptor::triangle(r).unwrap()).unwrap(),
        ];
        for start in starts {
            let mut census = start.first.clone();
            let mut coupled = Vec::new();
            for _ in 0..RECURRENCE_HORIZON {
                coupled.push(deltas_from_census(&census));
                census = census_step(r, &census);
            }
            for (name, pick) in components {
                let series = RecurrenceSeries::for_degree(r, pick(&coupled[0]).clone(), pick(&coupled[1]).clone());
                let second_order: Vec<BigInt> = series.terms().take(RECURRENCE_HORIZON).collect();
                let from_census: Vec<BigInt> = coupled.iter().map(|d| pick(d).clone()).collect();
                if second_order != from_census {
                    return Err(format!("r={r}: {name}-sequence differs"));
                }
            }
        }
    }
    Ok(format!("v/e/f agree for n <= {RECURRENCE_HORIZON}, 2 seeds x 6 degrees"))
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(LEMMA_RNG_SEED);
    for _ in 0..LEMMA_TRIALS {
        let r: i64 = rng.gen_range(7..=1000);
        let x1 = BigInt::from(rng.gen::<i64>());
        let x2 = BigInt::from(rng.gen::<i64>());
        let lemma = euler_sum_by_lemma(r, &x1, &x2).map_err(|e| e.to_string())?;
        let direct = euler_sum(&RecurrenceSeries::new(r - 4, x1.clone(), x2.clone())).map_err(|e| e.to_string())?;
        if lemma != direct {
            return Err(format!("r={r} x1={x1} x2={x2}: {lemma} vs {direct}"));
        }
    }
    Ok(format!("{LEMMA_TRIALS} random triples (rng seed {LEMMA_RNG_SEED})"))
}

fn criterion_8() -> Verdict {
    let bound = Rational::new(CONVERGENT_GAP.0, CONVERGENT_GAP.1).unwrap();
    let mut worst = Rational::zero();
    for r in SWEEP_DEGREES {
        let start = GrowthStart::from_seed(&SeedDescriptor::triangle(r).unwrap()).unwrap();
        let x1 = deltas_from_census(&start.first).v;
        let x2 = deltas_from_census(&census_step(r, &start.first)).v;
        let series = RecurrenceSeries::for_degree(r, x1, x2);
        let t = Rational::new(1, 2 * (r as i64 - 4)).unwrap();
        let exact = generating_value(&series, &t).map_err(|e| e.to_string())?;
        let partial = partial_sum(&series, &t, CONVERGENT_TERMS);
        let gap = (&partial - &exact).abs().checked_div(&exact.abs()).map_err(|e| e.to_string())?;
        if gap >= bound {
            return Err(format!("r={r}: relative gap {gap} not below 1e-12"));
        }
        worst = worst.max(gap);
    }
    let digits = worst.denom().to_string().len() as i64 - worst.numer().to_string().len() as i64;
    Ok(format!("largest relative gap ~1e-{digits} at N={CONVERGENT_TERMS}"))
}

fn criterion_9() -> Verdict {
    let got: Vec<_> = (3..=5).map(platonic_counts).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let want = vec![(4, 6, 4), (6, 12, 8), (12, 30, 20)];
    if got != want {
        return Err(format!("got {got:?}"));
    }
    Ok("tetrahedron, octahedron, icosahedron".into())
}

fn criterion_10() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let disk = dir.path().join("disk.json");
    let disk_arg = disk.to_str().unwrap();
    let grow = || meshsum(&["grow", "-r", "7", "--seed", "face", "-n", "4", "--json", "--emit-disk", disk_arg]);
    let (first, second) = (grow(), grow());
    if !first.status.success() || first.stdout.is_empty() {
        return Err(format!("grow exited with {:?}", first.status.code()));
    }
    if first.stdout != second.stdout {
        return Err("grow reports differ between runs".into());
    }
    let render = || meshsum(&["render", disk_arg]);
    let (a, b) = (render(), render());
    if !a.status.success() || a.stdout.is_empty() || a.stdout != b.stdout {
        return Err("render output differs or failed".into());
    }
    Ok(format!("{} report bytes, {} SVG bytes identical", first.stdout.len(), a.stdout.len()))
}

fn main() {
    let sum = sum_range();
    let sweep = explicit_sweep();
    let verdicts: [(&str, Verdict); 10] = [
        ("mesh invariants for r = 7..1000", criterion_1(&sum)),
        ("Euler formula for the invariants", criterion_2(&sum)),
        ("seed independence", criterion_3(&sweep)),
        ("explicit growth equals prediction", criterion_4(&sweep)),
        ("boundary census structure", criterion_5(&sweep)),
        ("second-order recurrence", criterion_6()),
        ("lemma form of the Euler sum", criterion_7()),
        ("convergent regime", criterion_8()),
        ("platonic reference counts", criterion_9()),
        ("determinism", criterion_10()),
    ];
    let mut failed = 0;
    for (i, (name, verdict)) in verdicts.iter().enumerate() {
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
