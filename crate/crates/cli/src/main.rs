use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use meshsum::{
    cmd_grow, cmd_predict, cmd_render, cmd_sum, cmd_verify, CliError, DegreeRange, ExitStatus, Fault, GrowOptions,
    SeedArg, VerifyOptions,
};
use meshsum_core::mesh::{SeedKind, DEFAULT_VERTEX_BUDGET};
use serde::Serialize;

/// Layered growth and Euler-summed counts of degree-r triangular meshes.
#[derive(Parser)]
#[command(name = "meshsum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report to this file instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Emit the JSON report instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Budget {
    /// Largest number of vertices an explicit disk may have.
    #[arg(long, env = "MESHSUM_BUDGET", default_value_t = DEFAULT_VERTEX_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a disk explicitly and compare every layer with the prediction.
    Grow {
        #[arg(short = 'r', long = "degree")]
        degree: u32,
        /// vertex or face
        #[arg(long, default_value = "face")]
        seed: SeedArg,
        #[arg(short = 'n', long = "layers", default_value_t = 3)]
        layers: u32,
        #[command(flatten)]
        budget: Budget,
        /// Write the last explicitly built disk as JSON.
        #[arg(long)]
        emit_disk: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Predict layer censuses and counts from the recurrences alone.
    Predict {
        #[arg(short = 'r', long = "degree")]
        degree: u32,
        /// vertex, face or a boundary profile t:d
        #[arg(long, default_value = "face")]
        seed: SeedArg,
        #[arg(short = 'n', long = "layers", default_value_t = 6)]
        layers: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Euler-summed vertex, edge and face counts of the mesh.
    Sum {
        /// A degree such as 7 or an inclusive range such as 7:1000.
        #[arg(short = 'r', long = "degree")]
        degree: DegreeRange,
        /// Also sum the layers grown from this seed (vertex, face or t:d).
        #[arg(long)]
        seed: Option<SeedArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the whole property suite over a range of degrees.
    Verify {
        #[arg(short = 'r', long = "degree")]
        degree: DegreeRange,
        #[arg(short = 'n', long = "layers", default_value_t = 6)]
        layers: u32,
        /// Seeds grown explicitly (vertex, face); defaults to both.
        #[arg(long, value_delimiter = ',')]
        seed: Vec<String>,
        #[command(flatten)]
        budget: Budget,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = meshsum::verify::DEFAULT_RNG_SEED)]
        rng_seed: u64,
        /// Corrupt one measurement (census, counts or deltas) to exercise the harness.
        #[arg(long)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        output: Output,
    },
    /// Draw a disk saved with `grow --emit-disk` as SVG.
    Render {
        disk: PathBuf,
        /// SVG destination; standard output if omitted.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn to_json(report: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

fn emit(output: &Output, json: String, table: String) -> Result<(), CliError> {
    let text = if output.json { json } else { table };
    match &output.output {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_kind(name: &str) -> Result<SeedKind, CliError> {
    match name {
        "vertex" => Ok(SeedKind::Vertex),
        "face" => Ok(SeedKind::Face),
        _ => Err(CliError::Usage(format!("verify grows only vertex and face seeds, got {name:?}"))),
    }
}

fn run(cli: Cli) -> Result<ExitStatus, CliError> {
    match cli.command {
        Command::Grow { degree, seed, layers, budget, emit_disk, output } => {
            let opts = GrowOptions { r: degree, seed, layers, budget: budget.budget };
            let (report, disk) = cmd_grow(&opts)?;
            if let Some(path) = emit_disk {
                write(&path, &disk.to_json())?;
            }
            emit(&output, to_json(&report), report.to_table())?;
            Ok(ExitStatus::from_pass(report.passes()))
        }
        Command::Predict { degree, seed, layers, output } => {
            let report = cmd_predict(degree, &seed, layers)?;
            emit(&output, to_json(&report), report.to_table())?;
            Ok(ExitStatus::Success)
        }
        Command::Sum { degree, seed, output } => {
            let report = cmd_sum(degree, seed.as_ref())?;
            emit(&output, to_json(&report), report.to_table())?;
            Ok(ExitStatus::from_pass(report.passes()))
        }
        Command::Verify { degree, layers, seed, budget, rng_seed, inject_fault, output } => {
            let mut opts = VerifyOptions::new(degree, layers, budget.budget);
            if !seed.is_empty() {
                opts.seeds = seed.iter().map(|s| parse_kind(s)).collect::<Result<_, _>>()?;
            }
            opts.rng_seed = rng_seed;
            opts.inject_fault = inject_fault;
            let report = cmd_verify(&opts)?;
            emit(&output, to_json(&report), report.to_table())?;
            Ok(ExitStatus::from_pass(report.passed))
        }
        Command::Render { disk, output } => {
            let svg = cmd_render(&read(&disk)?)?;
            match output {
                Some(path) => write(&path, &svg)?,
                None => print!("{svg}"),
            }
            Ok(ExitStatus::Success)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(err) => {
            eprintln!("meshsum: {err}");
            ExitCode::from(err.exit_status().code() as u8)
        }
    }
}
