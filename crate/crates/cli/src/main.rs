use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use ccdim::audit::{run_audit, Suite};
use ccdim::colouring::colour;
use ccdim::contraction::{contract_pipeline, ContractionReport, Tracking};
use ccdim::generate::{generate, product, GeneratorSpec};
use ccdim::io::{complex_to_json, complex_to_text, parse_complex};
use ccdim::rank::{control_bound, flatness, rank_vectors};
use ccdim::rational;
use ccdim::CubeComplex;
use clap::{Parser, Subcommand};
use serde_json::json;

/// Finite CAT(0) cube complexes: ranks, colourings and contractions.
#[derive(Parser)]
#[command(name = "ccdim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a complex file describes a valid cube complex.
    Validate { file: PathBuf },
    /// Rank vectors, flatness and dimension.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The controlled colouring and its measured control.
    Colour {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Iterate the contraction until the composite factor reaches epsilon.
    Contract {
        file: PathBuf,
        /// Target Lipschitz factor, as p/q.
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = 20)]
        max_rounds: usize,
        /// `all`, or `sample:K` to follow K seeded vertices.
        #[arg(long, default_value = "all")]
        track: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a generated complex. Kinds: path N, tripod, tree P1 P2 …,
    /// grid D1 D2 …, product LEFT RIGHT (complex files), ell_grid,
    /// random_median D1 D2 … (with --samples and --seed).
    Gen {
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        samples: usize,
        /// Output file; a `.json` extension selects the JSON form.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run invariant checks for one module, or all of them.
    Audit {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Prints a line, ignoring a closed stdout so piping into `head` is quiet.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

/// A bad command line that clap itself cannot catch.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    Usage(message.into()).into()
}

fn load(path: &Path) -> Result<CubeComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_complex(&text).with_context(|| format!("invalid complex in {}", path.display()))
}

fn write_complex(path: &Path, x: &CubeComplex) -> Result<()> {
    let body = if path.extension().is_some_and(|e| e == "json") { complex_to_json(x) } else { complex_to_text(x) };
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("CCDIM_THREADS") {
        let n: usize = value.parse().map_err(|_| usage(format!("CCDIM_THREADS must be a positive integer, got `{value}`")))?;
        if n == 0 {
            return Err(usage("CCDIM_THREADS must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Runs one subcommand; `Ok(false)` means a check failed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Validate { file } => {
            let x = load(&file)?;
            say!("valid: {} hyperplanes, {} vertices, dimension {}", x.hyperplane_count(), x.vertex_count(), x.dimension());
            Ok(true)
        }
        Command::Analyze { file, json } => analyze(&load(&file)?, json),
        Command::Colour { file, json } => colour_cmd(&load(&file)?, json),
        Command::Contract { file, epsilon, max_rounds, track, seed, out } => {
            let epsilon = rational::parse(&epsilon).map_err(|_| usage(format!("invalid epsilon `{epsilon}`")))?;
            let tracking = parse_tracking(&track, seed)?;
            let x = load(&file)?;
            let report = contract_pipeline(&x, &epsilon, max_rounds, tracking).map_err(|e| usage(e.to_string()))?;
            write_contraction(&out, &report)?;
            say!("{}", contraction_text(&report).trim_end());
            Ok(report.pass)
        }
        Command::Gen { kind, params, seed, samples, out } => {
            let x = match kind.as_str() {
                "product" => match params.as_slice() {
                    [left, right] => product(&load(Path::new(left))?, &load(Path::new(right))?),
                    _ => return Err(usage("product takes two complex files")),
                },
                _ => generate(&generator_spec(&kind, &params, samples, seed)?).map_err(|e| usage(e.to_string()))?,
            };
            write_complex(&out, &x)?;
            say!("wrote {}: {} hyperplanes, {} vertices", out.display(), x.hyperplane_count(), x.vertex_count());
            Ok(true)
        }
        Command::Audit { file, suite, samples, seed, json } => {
            let suite: Suite = suite.parse().map_err(|e: ccdim::Error| usage(e.to_string()))?;
            let report = run_audit(&load(&file)?, suite, samples, seed)?;
            if json {
                say!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                say!("{report}");
            }
            Ok(report.pass)
        }
    }
}

fn numbers(params: &[String]) -> Result<Vec<usize>> {
    params
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| usage(format!("expected a non-negative integer, got `{p}`"))))
        .collect()
}

fn generator_spec(kind: &str, params: &[String], samples: usize, seed: u64) -> Result<GeneratorSpec> {
    let nums = numbers(params)?;
    let spec = match (kind, nums.as_slice()) {
        ("path", [edges]) => GeneratorSpec::Path { edges: *edges },
        ("tripod", []) => GeneratorSpec::Tripod,
        ("tree", _) => GeneratorSpec::Tree { parents: nums },
        ("grid", [_, ..]) => GeneratorSpec::Grid { dims: nums },
        ("ell_grid", []) => GeneratorSpec::EllGrid,
        ("random_median", [_, ..]) => GeneratorSpec::RandomMedian { dims: nums, samples, seed },
        ("path" | "tripod" | "grid" | "ell_grid" | "random_median", _) => {
            return Err(usage(format!("wrong parameters for `{kind}`")))
        }
        _ => return Err(usage(format!("unknown generator `{kind}`"))),
    };
    Ok(spec)
}

fn parse_tracking(track: &str, seed: u64) -> Result<Tracking> {
    if track == "all" {
        return Ok(Tracking::All);
    }
    match track.strip_prefix("sample:").and_then(|k| k.parse::<usize>().ok()) {
        Some(count) if count > 0 => Ok(Tracking::Sample { count, seed }),
        _ => Err(usage(format!("--track must be `all` or `sample:K`, got `{track}`"))),
    }
}

fn analyze(x: &CubeComplex, json: bool) -> Result<bool> {
    let ranks = rank_vectors(x)?;
    let f = flatness(x);
    if json {
        let rows: Vec<_> = x.hyperplanes().map(|h| json!({ "id": h, "rank_vector": ranks.get(h).entries() })).collect();
        let doc = json!({
            "hyperplanes": x.hyperplane_count(),
            "vertices": x.vertex_count(),
            "dimension": x.dimension(),
            "flatness": f,
            "ranks": rows,
        });
        say!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        say!("hyperplanes {}  vertices {}  dimension {}  flatness {f}", x.hyperplane_count(), x.vertex_count(), x.dimension());
        say!("{:>4}  rank vector", "id");
        for h in x.hyperplanes() {
            say!("{h:>4}  {}", ranks.get(h));
        }
    }
    Ok(true)
}

fn colour_cmd(x: &CubeComplex, json: bool) -> Result<bool> {
    let ranks = rank_vectors(x)?;
    let c = colour(x, &ranks);
    let bound = control_bound(x);
    let pass = c.control() <= bound;
    if json {
        let doc = json!({
            "colours": c.colours(),
            "control": c.control(),
            "bound": bound,
            "pass": pass,
        });
        say!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        say!("{}", colouring_text(x, c.colours()).trim_end());
        say!("control {}  bound {bound}", c.control());
        say!("{}", if pass { "pass: control within bound" } else { "FAIL: control exceeds bound" });
    }
    Ok(pass)
}

fn colouring_text(x: &CubeComplex, colours: &[u8]) -> String {
    let mut out = format!("{:>4}  colour\n", "id");
    for h in x.hyperplanes() {
        let _ = writeln!(out, "{h:>4}  {}", colours[h]);
    }
    out
}

fn contraction_text(r: &ContractionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "epsilon {}", rational::format(&r.epsilon));
    for t in &r.rounds {
        let _ = writeln!(
            out,
            "round {}: {} hyperplanes, dimension {}, flatness {}, control {} (bound {}), factor {}, measured {}, quotient {} hyperplanes of dimension {}",
            t.round,
            t.hyperplane_count,
            t.dimension,
            t.flatness,
            t.control,
            t.control_bound,
            rational::format(&t.factor),
            rational::format(&t.measured_max_ratio),
            t.quotient_hyperplanes,
            t.quotient_dimension,
        );
    }
    let _ = writeln!(out, "composite factor {}", rational::format(&r.composite_factor));
    let _ = writeln!(out, "composite measured {}", rational::format(&r.composite_measured));
    let _ = writeln!(out, "tracked vertices {}", r.tracked.len());
    let _ = writeln!(out, "stop {:?}", r.stop);
    let _ = writeln!(out, "{}", if r.pass { "pass" } else { "FAIL" });
    out
}

fn write_contraction(dir: &Path, r: &ContractionReport) -> Result<()> {
    if dir.exists() && !dir.is_dir() {
        bail!("{} exists and is not a directory", dir.display());
    }
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (i, stage) in r.stages.iter().enumerate() {
        let round = i + 1;
        write_complex(&dir.join(format!("round{round}.complex")), &stage.complex)?;
        let colouring = json!({
            "colours": stage.colouring.colours(),
            "control": stage.colouring.control(),
            "rank_vectors": stage.ranks.iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>(),
        });
        fs::write(dir.join(format!("round{round}.colouring.json")), serde_json::to_string_pretty(&colouring)?)?;
        fs::write(dir.join(format!("round{round}.colouring.txt")), colouring_text(&stage.complex, stage.colouring.colours()))?;
    }
    write_complex(&dir.join("final.complex"), &r.final_complex)?;
    fs::write(dir.join("report.json"), serde_json::to_string_pretty(r)?)?;
    fs::write(dir.join("report.txt"), contraction_text(r))?;
    Ok(())
}
