//! Thin command-line front end over the library: classification documents,
//! frontier sweeps, the all-configuration report, the verification suites,
//! and an index-coding round-trip demo.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage
//! errors (bad flags, malformed config file, invalid channel parameters).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gbc3::config::{RoutingMatrix, WeaknessScope};
use gbc3::gaussian::{Channel, LogBase};
use gbc3::index_coding::{IndexCase, MessageSpace};
use gbc3::report::{
    bounds_csv, bounds_rows, classify_document, directions, inner_sweep, outer_sweep,
    report_all_csv, report_all_rows, run_verify_suites, sweep_csv,
};

#[derive(Parser, Debug)]
#[command(
    name = "gbc3",
    version,
    about = "Inner and outer bounds for 3-receiver Gaussian broadcast channels \
             with receiver message side information"
)]
struct Cli {
    /// Key=value file supplying any long flag below; explicit flags win.
    #[arg(long = "config-file", global = true, value_name = "PATH")]
    config_file: Option<PathBuf>,

    /// Side-information configuration: decimal id 0-63 or a 6-bit string
    /// (least significant bit first).
    #[arg(long = "config", global = true, default_value = "0")]
    config: String,

    /// Transmit power.
    #[arg(long = "P", global = true, default_value_t = 10.0)]
    p: f64,

    /// Noise variance at receiver 1 (must satisfy 0 < N1 < N2 < N3).
    #[arg(long = "N1", global = true, default_value_t = 0.2)]
    n1: f64,

    /// Noise variance at receiver 2.
    #[arg(long = "N2", global = true, default_value_t = 0.5)]
    n2: f64,

    /// Noise variance at receiver 3.
    #[arg(long = "N3", global = true, default_value_t = 1.0)]
    n3: f64,

    /// Rate unit: logarithm base 2 (bits) or e (nats).
    #[arg(long = "base", global = true, default_value = "2")]
    base: String,

    /// Simplex grid divisions per axis for inner-bound power sweeps.
    #[arg(long = "grid", global = true, default_value_t = 200)]
    grid: usize,

    /// Number of lattice directions; the three axes are always appended.
    #[arg(long = "directions", global = true, default_value_t = 64)]
    directions: usize,

    /// Seed for the randomized verification suites and the index demo.
    #[arg(long = "seed", global = true, default_value_t = 17)]
    seed: u64,

    /// Write output to this file instead of stdout.
    #[arg(long = "out", global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Degraded-sequence reading: "all-predecessors" (sound default) or
    /// "immediate-predecessor" (sensitivity analysis only).
    #[arg(long = "weakness", global = true, default_value = "all-predecessors")]
    weakness: String,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Combinatorial classification of one configuration, as JSON.
    Classify,
    /// Frontier sweep CSV: inner optimum, outer radial, and gap per direction.
    Bounds,
    /// Grid inner-bound radial per direction, as CSV.
    Inner,
    /// Outer-bound radial per direction, as CSV.
    Outer,
    /// Summary CSV across all 64 configurations.
    ReportAll,
    /// Run the five self-check suites; exit 1 if any fails.
    Verify,
    /// Index-coding round-trip demo on seeded message tuples.
    Index,
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let mut cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&mut cli, &matches) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Applies `key=value` lines from the config file to every flag the command
/// line did not set explicitly. Keys use the long flag names.
fn apply_config_file(cli: &mut Cli, matches: &ArgMatches, path: &PathBuf) -> Result<(), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    let from_cli = |id: &str| matches.value_source(id) == Some(ValueSource::CommandLine);
    fn set<T: FromStr>(slot: &mut T, key: &str, value: &str) -> Result<(), String>
    where
        T::Err: std::fmt::Display,
    {
        *slot = value
            .parse()
            .map_err(|e| format!("config file: bad value for {key}: {e}"))?;
        Ok(())
    }
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or(format!("config file line {}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "config" if !from_cli("config") => cli.config = value.to_string(),
            "P" if !from_cli("p") => set(&mut cli.p, key, value)?,
            "N1" if !from_cli("n1") => set(&mut cli.n1, key, value)?,
            "N2" if !from_cli("n2") => set(&mut cli.n2, key, value)?,
            "N3" if !from_cli("n3") => set(&mut cli.n3, key, value)?,
            "base" if !from_cli("base") => cli.base = value.to_string(),
            "grid" if !from_cli("grid") => set(&mut cli.grid, key, value)?,
            "directions" if !from_cli("directions") => set(&mut cli.directions, key, value)?,
            "seed" if !from_cli("seed") => set(&mut cli.seed, key, value)?,
            "out" if !from_cli("out") => cli.out = Some(PathBuf::from(value)),
            "weakness" if !from_cli("weakness") => cli.weakness = value.to_string(),
            "config" | "P" | "N1" | "N2" | "N3" | "base" | "grid" | "directions" | "seed"
            | "out" | "weakness" => {} // flag given explicitly: flag wins
            other => return Err(format!("config file: unknown key {other:?}")),
        }
    }
    Ok(())
}

fn parse_scope(s: &str) -> Result<WeaknessScope, String> {
    match s {
        "all-predecessors" => Ok(WeaknessScope::AllPredecessors),
        "immediate-predecessor" => Ok(WeaknessScope::ImmediatePredecessor),
        other => Err(format!(
            "unknown weakness scope {other:?} (expected all-predecessors or immediate-predecessor)"
        )),
    }
}

fn run(cli: &mut Cli, matches: &ArgMatches) -> Result<ExitCode, String> {
    if let Some(path) = cli.config_file.clone() {
        apply_config_file(cli, matches, &path)?;
    }
    let a = RoutingMatrix::parse(&cli.config).map_err(|e| e.to_string())?;
    let base = LogBase::from_str(&cli.base).map_err(|e| e.to_string())?;
    let ch = Channel::new(cli.p, [cli.n1, cli.n2, cli.n3], base).map_err(|e| e.to_string())?;
    let scope = parse_scope(&cli.weakness)?;
    if cli.grid == 0 {
        return Err("grid must be at least 1".into());
    }
    let dirs = directions(cli.directions);

    let mut exit = ExitCode::SUCCESS;
    let output = match cli.command {
        Cmd::Classify => {
            let doc = classify_document(&a, scope);
            let mut json =
                serde_json::to_string_pretty(&doc).map_err(|e| format!("serialize: {e}"))?;
            json.push('\n');
            json
        }
        Cmd::Bounds => {
            let rows =
                bounds_rows(&a, &ch, cli.grid, &dirs, scope).map_err(|e| e.to_string())?;
            bounds_csv(&rows)
        }
        Cmd::Inner => {
            let rows = inner_sweep(&a, &ch, cli.grid, &dirs).map_err(|e| e.to_string())?;
            sweep_csv(&rows, "inner_t")
        }
        Cmd::Outer => sweep_csv(&outer_sweep(&a, &ch, &dirs, scope), "outer_t"),
        Cmd::ReportAll => {
            let rows =
                report_all_rows(&ch, cli.grid, &dirs, scope).map_err(|e| e.to_string())?;
            report_all_csv(&rows)
        }
        Cmd::Verify => {
            let mut text = String::new();
            for suite in run_verify_suites(&ch, cli.seed, scope) {
                let status = if suite.passed { "PASS" } else { "FAIL" };
                writeln!(text, "suite {}: {status} — {}", suite.name, suite.detail)
                    .expect("writing to a String cannot fail");
                if !suite.passed {
                    exit = ExitCode::from(1);
                }
            }
            text
        }
        Cmd::Index => {
            let (text, clean) = index_demo(&a, cli.seed)?;
            if !clean {
                exit = ExitCode::from(1);
            }
            text
        }
    };

    match &cli.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{output}"),
    }
    Ok(exit)
}

/// Round-trip demo: seeded random message tuples through the configuration's
/// index map, each receiver recovering its own message from the index and
/// its required side information.
fn index_demo(a: &RoutingMatrix, seed: u64) -> Result<(String, bool), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    let mut clean = true;
    writeln!(text, "index-coding round-trip demo, config {} (bits {})", a.id(), a.bit_string())
        .unwrap();
    for sizes in [[4u64, 4, 2], [3, 4, 5], [8, 2, 16]] {
        let space = MessageSpace::for_config(a, sizes).map_err(|e| e.to_string())?;
        let case = match space.case() {
            IndexCase::MutualPair { first, second } => {
                format!("mutual pair {{{first},{second}}}")
            }
            IndexCase::Distinct => "distinct".to_string(),
        };
        writeln!(
            text,
            "sizes {:?}: case {case}, {} subcodebooks",
            sizes,
            space.subcodebook_count()
        )
        .unwrap();
        for _ in 0..4 {
            let w = [
                rng.gen_range(0..sizes[0]),
                rng.gen_range(0..sizes[1]),
                rng.gen_range(0..sizes[2]),
            ];
            let k = space.index(w).map_err(|e| e.to_string())?;
            let mut recovered = [0u64; 3];
            for receiver in 1..=3 {
                let mut side = [None; 3];
                if let Some(partner) = space.required_side_information(receiver) {
                    side[partner - 1] = Some(w[partner - 1]);
                }
                recovered[receiver - 1] =
                    space.recover(receiver, k, side).map_err(|e| e.to_string())?;
            }
            let ok = recovered == w;
            clean &= ok;
            writeln!(
                text,
                "  w={w:?} -> k={k}; recovered {recovered:?} {}",
                if ok { "OK" } else { "MISMATCH" }
            )
            .unwrap();
        }
    }
    writeln!(text, "result: {}", if clean { "all round trips OK" } else { "MISMATCHES" }).unwrap();
    Ok((text, clean))
}
