use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hcara::experiment::{run_suite, Execution, ExperimentConfig, ExperimentReport};
use hcara::{
    caratheodory_number, cone_number, cone_witness_points, h_hull_contains, helly_number,
    helly_witness_points, strong_hull_contains, validate_witness, Error, NormalSet, PointSet,
    Polytope, RVector, Rational, WitnessKind, WitnessReport,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "hcara",
    version,
    about = "Exact Carathéodory, Helly and cone numbers for H-convexity"
)]
struct Cli {
    /// Print the raw JSON document instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Helly number of a normal set.
    Helly { normals: PathBuf },
    /// Cone number of a normal set.
    Cone { normals: PathBuf },
    /// Carathéodory number with its Helly and cone components.
    Cara { normals: PathBuf },
    /// Is the point in the H-convex hull of the point set?
    HMember {
        normals: PathBuf,
        points: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Is the point in the K-strongly convex hull of the point set?
    StrongMember {
        polytope: PathBuf,
        points: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Build an extremal witness point set.
    Witness {
        normals: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Comma-separated normal indices; defaults to the extremal set found by search.
        #[arg(long)]
        basis: Option<String>,
    },
    /// Check covering and drop-one minimality of a candidate witness.
    Validate { normals: PathBuf, points: PathBuf },
    /// Run the seeded random experiment suite.
    Experiment {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        depth: Option<u32>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Helly,
    Cone,
}

enum Failure {
    Input(String),
    Precondition(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_) => Failure::Input(e.to_string()),
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Parses `"1/2,-3,0"` into an exact vector. Floats are rejected.
fn parse_point(text: &str) -> CliResult<RVector> {
    if text.trim().is_empty() {
        return Err(Failure::Input("empty point".into()));
    }
    text.split(',')
        .map(|s| s.trim().parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()
        .map(RVector::new)
        .map_err(|e| Failure::Input(format!("point {text:?}: {e}")))
}

fn parse_indices(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Input(format!("basis {text:?}: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn check_point_dim(dim: usize, p: &RVector) -> CliResult<()> {
    if p.dim() != dim {
        return Err(Failure::Input(format!(
            "point has dimension {}, expected {dim}",
            p.dim()
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct NumberDoc {
    value: usize,
    witness: Vec<usize>,
}

fn witness_summary(r: &WitnessReport) -> String {
    let pts: Vec<String> = r.points.points().iter().map(|p| p.to_string()).collect();
    format!(
        "{:?} witness, {} points: {}\ncovering: {}  drop-one minimal: {}",
        r.kind,
        r.points.len(),
        pts.join(" "),
        r.covering_ok,
        r.drop_one_ok
    )
}

fn experiment_summary(r: &ExperimentReport) -> String {
    let s = &r.summary;
    let mut out = format!(
        "trials: {}\nviolations: {}\ncounterexample candidates: {}\nmax witness size: {}\n\
         witness size histogram: {:?}\nscaling certified: {}  inconclusive: {}\n\
         instances with w = |H|-1: {}",
        s.trials,
        s.violations,
        s.counterexample_candidates,
        s.max_witness_size,
        s.witness_size_histogram,
        s.scaling_certified,
        s.scaling_inconclusive,
        s.near_simplex_instances
    );
    for v in &r.violations {
        out.push_str(&format!("\nVIOLATION {:?} in trial {}", v.kind, v.trial));
    }
    for c in &r.counterexample_candidates {
        out.push_str(&format!(
            "\n{} trial {}: w = {} > {}",
            c.tag, c.trial, c.witness_size, c.conjectured_bound
        ));
    }
    out
}

/// Returns the text for stdout and whether a finding should set exit 1.
fn dispatch(cli: Cli) -> CliResult<(String, bool)> {
    let json = cli.json;
    let out = match cli.command {
        Command::Helly { normals } => {
            let h: NormalSet = read_json(&normals)?;
            let (value, witness) = helly_number(&h)?;
            if json {
                to_json(&NumberDoc { value, witness })
            } else {
                format!("helly: {value} (normals {witness:?})")
            }
        }
        Command::Cone { normals } => {
            let h: NormalSet = read_json(&normals)?;
            let (value, witness) = cone_number(&h)?;
            if json {
                to_json(&NumberDoc { value, witness })
            } else {
                format!("cone: {value} (normals {witness:?})")
            }
        }
        Command::Cara { normals } => {
            let h: NormalSet = read_json(&normals)?;
            let r = caratheodory_number(&h)?;
            if json {
                to_json(&r)
            } else {
                format!(
                    "caratheodory: {}\nhelly: {} (normals {:?})\ncone: {} (normals {:?})\nrelaxed cone: {}\none-sided: {}",
                    r.caratheodory, r.helly, r.helly_witness, r.cone, r.cone_witness, r.relaxed_cone, r.one_sided
                )
            }
        }
        Command::HMember {
            normals,
            points,
            point,
        } => {
            let h: NormalSet = read_json(&normals)?;
            let x: PointSet = read_json(&points)?;
            let p = parse_point(&point)?;
            check_point_dim(h.dim(), &p)?;
            h_hull_contains(&h, &x, &p)?.to_string()
        }
        Command::StrongMember {
            polytope,
            points,
            point,
        } => {
            let k: Polytope = read_json(&polytope)?;
            let x: PointSet = read_json(&points)?;
            let p = parse_point(&point)?;
            check_point_dim(k.dim(), &p)?;
            strong_hull_contains(&k, &x, &p)?.to_string()
        }
        Command::Witness {
            normals,
            kind,
            basis,
        } => {
            let h: NormalSet = read_json(&normals)?;
            let basis = match basis {
                Some(b) => parse_indices(&b)?,
                None => {
                    let r = caratheodory_number(&h)?;
                    match kind {
                        KindArg::Helly => r.helly_witness,
                        KindArg::Cone => r.cone_witness,
                    }
                }
            };
            let r = match kind {
                KindArg::Helly => helly_witness_points(&h, &basis)?,
                KindArg::Cone => cone_witness_points(&h, &basis)?,
            };
            if json {
                to_json(&r)
            } else {
                witness_summary(&r)
            }
        }
        Command::Validate { normals, points } => {
            let h: NormalSet = read_json(&normals)?;
            let x: PointSet = read_json(&points)?;
            let r = validate_witness(&h, &x, WitnessKind::Unspecified)?;
            if json {
                to_json(&r)
            } else {
                witness_summary(&r)
            }
        }
        Command::Experiment {
            config,
            seed,
            trials,
            depth,
            out,
        } => {
            let mut cfg: ExperimentConfig = match config {
                Some(path) => read_json(&path)?,
                None => ExperimentConfig::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(d) = depth {
                cfg.scaling_depth = d;
            }
            let execution = match std::env::var("HCARA_NO_PARALLEL").as_deref() {
                Ok("1") => Execution::Serial,
                _ => Execution::Parallel,
            };
            let report = run_suite(&cfg, execution)?;
            let doc = to_json(&report);
            if let Some(path) = out {
                fs::write(&path, format!("{doc}\n"))
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            let text = if json {
                doc
            } else {
                experiment_summary(&report)
            };
            return Ok((text, report.has_findings()));
        }
    };
    Ok((out, false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok((text, findings)) => {
            println!("{text}");
            if findings {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (2, m),
                Failure::Precondition(m) => (3, m),
                Failure::Internal(m) => (4, m),
            };
            eprintln!("hcara: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_point_examples() {
        assert_eq!(
            parse_point("1/2,-3,0").ok().unwrap(),
            RVector::new(vec![
                Rational::new(1, 2),
                Rational::from_int(-3),
                Rational::zero()
            ])
        );
        assert!(matches!(parse_point("0.5,1"), Err(Failure::Input(m)) if m.contains("fraction")));
        assert!(parse_point("").is_err());
        assert!(parse_point("1,,2").is_err());
    }
}
