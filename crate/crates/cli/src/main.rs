//! `gausslat`: batch verification runs with JSON reports.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 for
//! usage or I/O errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gausslat::enumtau::mirrors_within_d0;
use gausslat::fingeom::diagram_dot;
use gausslat::reduction::{prove_generation, thirteen_generator_check, verify_paths};
use gausslat::verify::{diagram_report, distance_report, lattice_report, property_report, SampleSizes, SCHEMA_VERSION};
use gausslat::Error;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "gausslat", version, about = "Exact verification runs for the p-modular Gaussian lattice of signature (9,1)")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for cached short-vector lists; GAUSSLAT_CACHE takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// p-modularity, discriminant groups, BW16 short vectors and the frame isomorphism.
    VerifyLattices,
    /// Gram matrix, linear relations, symmetry groups, pair relations and distances to τ.
    Diagram {
        /// Export the diagram in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Mirrors within d0 of τ, by exhaustive enumeration.
    NearTau,
    /// Membership words for S0 ∪ S1 ∪ S2, or replay of a path file.
    Generate {
        /// Write the path file (one JSON record per line).
        #[arg(long)]
        emit_paths: Option<PathBuf>,
        /// Re-verify an existing path file instead of generating.
        #[arg(long, conflicts_with = "emit_paths")]
        verify_paths: Option<PathBuf>,
    },
    /// The five octagon deflations and words for the 19 remaining reflections.
    Thirteen,
    /// Sampled Heisenberg, ideal-triangle and covering checks.
    Properties {
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = 10_000)]
        triples: usize,
        #[arg(long, default_value_t = 100_000)]
        points: usize,
    },
}

fn file_sha256(path: &Path) -> Result<String, Error> {
    Ok(hex::encode(Sha256::digest(std::fs::read(path)?)))
}

/// Runs one subcommand, returning `(passed, report, input hashes)`.
fn run(cli: &Cli) -> Result<(bool, Value, Value), Error> {
    match &cli.command {
        Command::VerifyLattices => {
            let dir = std::env::var_os("GAUSSLAT_CACHE").map(PathBuf::from).or_else(|| cli.cache_dir.clone());
            let r = lattice_report(dir.as_deref())?;
            Ok((r.passed(), json!(r), json!({})))
        }
        Command::Diagram { dot } => {
            let r = diagram_report()?;
            let d = distance_report()?;
            if let Some(p) = dot {
                std::fs::write(p, diagram_dot())?;
            }
            let mut v = json!(r);
            v["relation_pairs"] = json!(r.relations.pairs);
            v["distances"] = json!(d);
            Ok((r.passed() && d.passed(), v, json!({})))
        }
        Command::NearTau => {
            let r = mirrors_within_d0()?;
            let mut v = json!(r);
            v["mirrors_found"] = json!(r.within_d0);
            Ok((r.passed(), v, json!({})))
        }
        Command::Generate { verify_paths: Some(path), .. } => {
            let r = verify_paths(path)?;
            Ok((r.passed(), json!(r), json!({ "path_file_sha256": file_sha256(path)? })))
        }
        Command::Generate { emit_paths, verify_paths: None } => {
            let (r, _) = prove_generation(emit_paths.as_deref())?;
            let mut v = json!(r);
            v["roots_total"] = json!(r.counts.total);
            v["stuck_all_in_S2"] = json!(r.stuck_all_in_s2);
            Ok((r.passed(), v, json!({ "path_sha256": r.path_sha256 })))
        }
        Command::Thirteen => {
            let r = thirteen_generator_check()?;
            Ok((r.passed(), json!(r), json!({})))
        }
        Command::Properties { pairs, triples, points } => {
            let r = property_report(cli.seed, SampleSizes { pairs: *pairs, triples: *triples, points: *points })?;
            Ok((r.passed(), json!(r), json!({})))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyLattices => "verify-lattices",
        Command::Diagram { .. } => "diagram",
        Command::NearTau => "near-tau",
        Command::Generate { .. } => "generate",
        Command::Thirteen => "thirteen",
        Command::Properties { .. } => "properties",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("gausslat: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let (passed, report, inputs) = match run(&cli) {
        Ok(r) => r,
        Err(e @ Error::Io(_)) => {
            eprintln!("gausslat: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("gausslat: {e}");
            return ExitCode::from(1);
        }
    };
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.command),
        "seed": cli.seed,
        "inputs": inputs,
        "passed": passed,
        "report": report,
    });
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("gausslat: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
