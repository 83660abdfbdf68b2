//! `rectcon`: rectangular constants of normed planes from the command line.
//!
//! Every subcommand prints a single JSON report (or writes it to `--out`).
//! Exit codes: 0 success, 2 bad norm/vector input, 3 computation failure,
//! 4 invariant violations found by `verify`.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use rectcon::{
    configure_threads, ips_test, is_bj_orthogonal, max_segment_length, modulus_curve, mu_estimate,
    mu_polyhedral_exact, random_polygons, standard_fixtures, verify_suite, Norm, NormSpec,
    SearchConfig, Vector,
};

use report::{modulus_csv, CommandResult, RunReport};

/// Trial count for the `verify` invariant suites.
const VERIFY_TRIALS: usize = 1000;

#[derive(Parser)]
#[command(version, about = "Rectangular constant, modulus and orthogonality of normed planes")]
struct Cli {
    /// JSON norm descriptor; defaults to the Euclidean plane.
    #[arg(long, global = true, value_name = "PATH")]
    norm: Option<PathBuf>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Base directions scanned on the unit sphere.
    #[arg(long, global = true, default_value_t = 4096)]
    theta_res: usize,

    /// Directions sampled inside each orthogonality arc.
    #[arg(long, global = true, default_value_t = 512)]
    phi_res: usize,

    /// Half-width of the parameter range scanned along each direction.
    #[arg(long, global = true, default_value_t = 6.0)]
    t_max: f64,

    /// Width at which the golden-section polish stops.
    #[arg(long, global = true, default_value_t = 1e-6)]
    refine_tol: f64,

    /// Slack allowed in the orthogonality derivative bracket.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Worker threads for the sweeps (requires the `parallel` feature).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rectangular constant of the norm (exact on polytopes, swept otherwise).
    Mu,
    /// Rectangular modulus over a grid of lambda values.
    Modulus {
        /// Comma-separated lambda values; an empty list is allowed.
        #[arg(long, default_value = "0.5,1,2", value_delimiter = ',', num_args = 0..)]
        lambda_grid: Vec<String>,
        /// Also write the curve as CSV to this path.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Decide Birkhoff-James orthogonality of two vectors.
    Ortho {
        /// First vector, comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Second vector, comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Longest straight segment contained in the unit sphere.
    Segments,
    /// Inner-product test: windowed supremum against sqrt(2).
    Ips,
    /// Run the invariant suites over the standard fixtures (plus `--norm`
    /// and generated polygons, when given).
    Verify {
        /// Additionally generate this many random polygon norms from --seed.
        #[arg(long, value_name = "N")]
        random_polygons: Option<usize>,
    },
}

/// Where a failed run maps in the exit-code contract.
enum Failure {
    /// Unusable input: norm descriptor, vectors, parameters.
    Spec(anyhow::Error),
    /// The computation itself errored.
    Compute(anyhow::Error),
    /// `verify` completed and found violations; the report was written.
    Invariant,
}

fn spec(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Spec(e.into())
}

fn compute(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Compute(e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Spec(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
        Err(Failure::Invariant) => {
            eprintln!("error: invariant violations found, see the report");
            ExitCode::from(4)
        }
    }
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let started = Instant::now();

    if let Some(n) = cli.threads {
        configure_threads(n).map_err(spec)?;
    }

    let config = SearchConfig {
        theta_resolution: cli.theta_res,
        phi_resolution: cli.phi_res,
        t_max: cli.t_max,
        refine_tol: cli.refine_tol,
        tol: cli.tol,
        seed: cli.seed,
        ..SearchConfig::default()
    };
    config.validate().map_err(spec)?;

    let explicit_norm = match &cli.norm {
        Some(path) => Some(load_norm(path).map_err(Failure::Spec)?),
        None => None,
    };
    let norm = match &explicit_norm {
        Some(n) => n.clone(),
        None => Norm::euclidean(2).expect("the Euclidean plane is a valid norm"),
    };

    let (command, result) = match cli.command {
        Command::Mu => {
            let witness = if norm.to_polytope().is_some() {
                mu_polyhedral_exact(&norm, &config)
            } else {
                mu_estimate(&norm, &config)
            }
            .map_err(compute)?;
            ("mu", CommandResult::Mu(witness))
        }
        Command::Modulus { lambda_grid, csv } => {
            let lambdas = parse_lambda_grid(&lambda_grid).map_err(Failure::Spec)?;
            let curve = modulus_curve(&norm, &lambdas, &config);
            if let Some(f) = curve.failures.first() {
                return Err(compute(anyhow!("lambda = {}: {}", f.lambda, f.error)));
            }
            if let Some(path) = &csv {
                let doc = modulus_csv(&curve.points).map_err(Failure::Compute)?;
                fs::write(path, doc)
                    .with_context(|| format!("writing CSV to {}", path.display()))
                    .map_err(compute)?;
            }
            ("modulus", CommandResult::Modulus(curve.points))
        }
        Command::Ortho { x, y } => {
            let x = parse_vector(&x).map_err(Failure::Spec)?;
            let y = parse_vector(&y).map_err(Failure::Spec)?;
            let (orthogonal, certificate) =
                is_bj_orthogonal(&norm, &x, &y, config.tol).map_err(compute)?;
            (
                "ortho",
                CommandResult::Ortho {
                    orthogonal,
                    certificate,
                },
            )
        }
        Command::Segments => {
            let segment = max_segment_length(&norm).map_err(compute)?;
            ("segments", CommandResult::Segments(segment))
        }
        Command::Ips => {
            let ips = ips_test(&norm, &config).map_err(compute)?;
            ("ips", CommandResult::Ips(ips))
        }
        Command::Verify { random_polygons: n } => {
            let mut norms = standard_fixtures();
            if let Some(extra) = &explicit_norm {
                norms.push(extra.clone());
            }
            if let Some(count) = n {
                norms.extend(random_polygons(count, config.seed).map_err(compute)?);
            }
            let report = verify_suite(&norms, &config, VERIFY_TRIALS, config.seed).map_err(compute)?;
            ("verify", CommandResult::Verify(report))
        }
    };

    // `verify` reports are written before the run is failed on violations.
    let violations_found = matches!(&result, CommandResult::Verify(r) if !r.passed);

    let report = RunReport {
        command: command.to_string(),
        norm: explicit_norm
            .as_ref()
            .map(Norm::to_spec)
            .or_else(|| (command != "verify").then(|| norm.to_spec())),
        config,
        result,
        elapsed_s: started.elapsed().as_secs_f64(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let json = report.to_json().map_err(Failure::Compute)?;
    match &cli.out {
        Some(path) => fs::write(path, &json)
            .with_context(|| format!("writing report to {}", path.display()))
            .map_err(compute)?,
        None => print!("{json}"),
    }

    if violations_found {
        return Err(Failure::Invariant);
    }
    Ok(())
}

/// Reads and validates a JSON norm descriptor.
fn load_norm(path: &PathBuf) -> Result<Norm> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading norm descriptor {}", path.display()))?;
    let parsed: NormSpec = serde_json::from_str(&text)
        .with_context(|| format!("parsing norm descriptor {}", path.display()))?;
    Norm::from_spec(&parsed).with_context(|| format!("invalid norm in {}", path.display()))
}

/// Parses "a,b,..." into a vector.
fn parse_vector(text: &str) -> Result<Vector> {
    let coords = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .with_context(|| format!("bad coordinate {part:?} in {text:?}"))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Vector::new(coords)?)
}

/// Parses the comma-split lambda grid; empty entries are dropped so that an
/// explicitly empty grid (`--lambda-grid ''`) is a valid request.
fn parse_lambda_grid(parts: &[String]) -> Result<Vec<f64>> {
    parts
        .iter()
        .map(|p| p.trim())
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .with_context(|| format!("bad lambda value {p:?}"))
        })
        .collect()
}
