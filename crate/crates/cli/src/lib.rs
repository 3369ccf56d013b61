//! Command-line front end: ingest, check, simplify, render, generate and
//! benchmark drawings.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use kplane::algo::{algorithm1, algorithm2, f_bound};
use kplane::gen::{gen_random_kplane, GenConfig};
use kplane::io::{
    ingest_geometric, parse_drawing, render_svg, serialize_combinatorial, serialize_geometric, serialize_state,
    DrawingFile, RenderOptions,
};
use kplane::model::{is_simple, measures, validate_state, DrawingState};
use kplane::report::experiment_report;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "kplane", version, about = "Simplify k-plane topological drawings by removing lenses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Reroute lenses until none is left (any k).
    General,
    /// Three-phase simplification of 4-plane drawings into 8-plane ones.
    #[value(name = "4planar")]
    FourPlanar,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Planarize a geometric drawing into a combinatorial file.
    Ingest {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Validate a drawing; exit 1 if any check fails.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also require the drawing to be simple.
        #[arg(long)]
        simple: bool,
    },
    /// Remove all lenses.
    Simplify {
        #[arg(long, value_enum)]
        algo: Algo,
        /// Local crossing bound of the input; defaults to its largest
        /// per-edge crossing count.
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Summary of the run as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Step-by-step trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Draw the current planarization as SVG.
    Render {
        #[arg(long, required = true)]
        svg: bool,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        labels: bool,
    },
    /// Generate a random k-plane polyline drawing.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run both algorithms on every .json file of a directory and write a
    /// CSV report.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave the wall time column empty.
        #[arg(long)]
        no_timing: bool,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<kplane::Error> for Failure {
    fn from(err: kplane::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: err.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|err| Failure::usage(format!("cannot read {}: {err}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|err| Failure::usage(format!("cannot write {}: {err}", path.display())))
}

fn load_state(path: &Path) -> Result<DrawingState, Failure> {
    Ok(parse_drawing(&read(path)?)?.into_state()?)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Failure> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("serializable");
    bytes.push(b'\n');
    write(path, &bytes)
}

fn summary(state: &DrawingState) -> serde_json::Value {
    let m = measures(state);
    json!({
        "max_crossings": m.max_crossings(),
        "total_crossings": m.total_crossings,
        "max_length": m.max_length(),
        "total_length": m.total_length,
        "simple": is_simple(state),
        "valid": validate_state(state).passed(),
    })
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Ingest { input, out } => {
            let network = match parse_drawing(&read(&input)?)? {
                DrawingFile::Geometric(gd) => ingest_geometric(&gd)?,
                DrawingFile::Combinatorial { network, .. } => network,
            };
            write(&out, &serialize_combinatorial(&network, None))?;
            println!(
                "{} vertices, {} edges, {} crossings",
                network.graph.vertex_count,
                network.graph.edge_count(),
                network.crossing_count()
            );
            Ok(EXIT_OK)
        }
        Command::Check { input, simple } => {
            let state = load_state(&input)?;
            let report = validate_state(&state);
            print!("{report}");
            let mut ok = report.passed();
            if simple {
                let is = is_simple(&state);
                println!("simple: {}", if is { "yes" } else { "no" });
                ok &= is;
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Simplify {
            algo,
            k,
            input,
            out,
            report,
            trace,
        } => {
            let state = load_state(&input)?;
            let before = summary(&state);
            let k = k.unwrap_or_else(|| measures(&state).max_crossings().max(1));
            let (result, trace_json, iterations) = match algo {
                Algo::General => {
                    let (s, t) = algorithm1(state, k)?;
                    let n = t.steps.len();
                    (s, serde_json::to_value(&t).expect("serializable"), n)
                }
                Algo::FourPlanar => {
                    let (s, t) = algorithm2(state)?;
                    let n = t.phase1.len() + t.phase2.len() + t.phase3.len();
                    (s, serde_json::to_value(&t).expect("serializable"), n)
                }
            };
            write(&out, &serialize_state(&result))?;
            let after = summary(&result);
            if let Some(path) = report {
                let ceiling = match algo {
                    Algo::General => f_bound(k)?,
                    Algo::FourPlanar => 8.0,
                };
                write_json(
                    &path,
                    &json!({
                        "algo": match algo { Algo::General => "general", Algo::FourPlanar => "4planar" },
                        "k": k,
                        "iterations": iterations,
                        "bound": ceiling,
                        "before": before,
                        "after": after,
                    }),
                )?;
            }
            if let Some(path) = trace {
                write_json(&path, &trace_json)?;
            }
            println!(
                "{iterations} iterations; max crossings per edge {} -> {}",
                before["max_crossings"], after["max_crossings"]
            );
            Ok(EXIT_OK)
        }
        Command::Render {
            svg: _,
            input,
            out,
            labels,
        } => {
            let state = load_state(&input)?;
            let options = RenderOptions {
                labels,
                ..RenderOptions::default()
            };
            write(&out, &render_svg(&state, &options)?)?;
            Ok(EXIT_OK)
        }
        Command::Gen { n, m, k, seed, out } => {
            let gd = gen_random_kplane(&GenConfig::new(n, m, k, seed))?;
            write(&out, &serialize_geometric(&gd))?;
            Ok(EXIT_OK)
        }
        Command::Bench { dir, k, out, no_timing } => {
            let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                .map_err(|err| Failure::usage(format!("cannot read {}: {err}", dir.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            let inputs = paths
                .iter()
                .map(|p| {
                    let name = p.file_name().unwrap_or_default().to_string_lossy().into_owned();
                    read(p).map(|bytes| (name, bytes))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let csv = experiment_report(&inputs, k, !no_timing)?;
            match out {
                Some(path) => write(&path, &csv)?,
                None => print!("{}", String::from_utf8_lossy(&csv)),
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code: 0 on success, 1 when a check or the input fails, 2 on usage errors.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}
