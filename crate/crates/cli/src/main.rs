use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use odlcalc::homog::{bott_cohomology, BundleSummand, Grassmannian, HomogeneousBundle};
use odlcalc::k3::{chi_on_surface, end0, full_sweep, structure_sheaf_invariants};
use odlcalc::localize::{integrate, scenes, LocalizeError, Scene};
use odlcalc::resolution::{Conclusion, Resolution};
use odlcalc::strata::{build_representative, stratum_dims, IncidencePattern, StrataError};
use odlcalc::trivector::TrivectorExpr;
use odlcalc::verify::{self, VerifyOptions, DEFAULT_SEED};

const EXIT_VERIFY: u8 = 1;
const EXIT_JSON: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_DEGREE: u8 = 4;
const EXIT_OTHER: u8 = 5;

#[derive(Parser)]
#[command(name = "odlcalc", version, about = "Exact Bott cohomology, trivector calculus and torus localization on G(3,9)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every acceptance check and print a pass/fail table.
    VerifyPaper {
        /// Comma-separated criterion numbers or tags.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Print the full report as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Resolution data to check in place of the built-in one.
        #[arg(long)]
        resolution: Option<PathBuf>,
        /// Record wall time per check.
        #[arg(long)]
        timings: bool,
    },
    /// Cohomology of one irreducible bundle on G(k,n).
    Bott {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        q: Vec<i64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Dimension of a monomial subspace of ∧³V₉.
    Dim {
        /// Expression file, or inline JSON.
        #[arg(long)]
        expr: String,
    },
    /// Generic representative and orbit dimensions of a relative position.
    Stratum {
        /// Pattern file, or inline JSON.
        #[arg(long)]
        pattern: String,
    },
    /// Localization integral over a named or user-supplied scene.
    Integrate {
        #[arg(long, conflicts_with = "file")]
        scene: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// List the built-in scenes.
        #[arg(long)]
        list: bool,
        /// Print the scene as JSON instead of integrating it.
        #[arg(long)]
        emit: bool,
    },
    /// Hilbert polynomial of the eightfold from the resolution.
    Hilbert {
        #[arg(long)]
        resolution: Option<PathBuf>,
    },
    /// Cohomology of the twisted resolution terms and the conclusions read off by position.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        resolution: Option<PathBuf>,
    },
    /// Invariants of the surface cut by two sections of U^∨.
    Invariants {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        resolution: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, e: impl Display) -> Self {
        Failure { code, message: e.to_string() }
    }
}

impl From<LocalizeError> for Failure {
    fn from(e: LocalizeError) -> Self {
        let code = match e {
            LocalizeError::DegreeMismatch { .. } => EXIT_DEGREE,
            _ => EXIT_OTHER,
        };
        Failure::new(code, e)
    }
}

impl From<StrataError> for Failure {
    fn from(e: StrataError) -> Self {
        let code = match e {
            StrataError::Infeasible => EXIT_INFEASIBLE,
            _ => EXIT_OTHER,
        };
        Failure::new(code, e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_OTHER, format!("{}: {e}", path.display())))
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
fn json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let text = match arg.trim_start().chars().next() {
        Some('{' | '[') => arg.to_string(),
        _ => read(Path::new(arg))?,
    };
    serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_JSON, e))
}

fn load_resolution(path: Option<&Path>) -> Result<Resolution, Failure> {
    match path {
        None => Ok(Resolution::standard()),
        Some(p) => Resolution::from_json(&read(p)?).map_err(|e| Failure::new(EXIT_JSON, e)),
    }
}

fn conclusion(c: &Conclusion) -> Value {
    match c.value() {
        Some(v) => json!(v.to_string()),
        None => json!("inconclusive"),
    }
}

fn count(v: &impl Display) -> Value {
    let s = v.to_string();
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}

fn print(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("values serialize"));
}

/// Writes a line to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::VerifyPaper { only, seed, json, resolution, timings } => {
            let res = load_resolution(resolution.as_deref())?;
            let report = verify::run(&res, &VerifyOptions { seed, only, timings });
            if json {
                print(&serde_json::to_value(&report).expect("report serializes"));
            } else {
                emit(&report.to_string());
            }
            Ok(if report.all_pass() { 0 } else { EXIT_VERIFY })
        }
        Command::Bott { k, n, u, q, twist } => {
            if k == 0 || k >= n {
                return Err(Failure::new(EXIT_OTHER, format!("need 0 < k < n, got k = {k}, n = {n}")));
            }
            let s = BundleSummand::from_parts(Grassmannian::new(k, n), &u, &q, twist).map_err(|e| Failure::new(EXIT_OTHER, e))?;
            let dims = bott_cohomology(&s).dims();
            let out = match dims.as_slice() {
                [] => json!({ "h": null, "dim": 0 }),
                [(h, d)] => json!({ "h": h, "dim": count(d) }),
                _ => json!(dims.iter().map(|(h, d)| json!({ "h": h, "dim": count(d) })).collect::<Vec<_>>()),
            };
            print(&out);
            Ok(0)
        }
        Command::Dim { expr } => {
            let e: TrivectorExpr = json_arg(&expr)?;
            print(&json!({ "dim": e.dim() }));
            Ok(0)
        }
        Command::Stratum { pattern } => {
            let p: IncidencePattern = json_arg(&pattern)?;
            p.validate()?;
            let rep = build_representative(&p)?;
            let dims = stratum_dims(&rep);
            print(&json!({ "representative": rep, "dims": dims }));
            Ok(0)
        }
        Command::Integrate { scene, file, seed, list, emit } => {
            if list {
                print(&json!(scenes::names()));
                return Ok(0);
            }
            let scene: Scene = match (scene, file) {
                (Some(name), None) => scenes::by_name(&name)?,
                (None, Some(path)) => serde_json::from_str(&read(&path)?).map_err(|e| Failure::new(EXIT_JSON, e))?,
                _ => return Err(Failure::new(EXIT_OTHER, "give exactly one of --scene or --file")),
            };
            if emit {
                print(&serde_json::to_value(&scene).expect("scene serializes"));
                return Ok(0);
            }
            let r = integrate(&scene.tower, &scene.integrand, seed)?;
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["scene"] = json!(scene.name);
            print(&v);
            Ok(0)
        }
        Command::Hilbert { resolution } => {
            let res = load_resolution(resolution.as_deref())?;
            let p = res.hilbert_polynomial().map_err(|e| Failure::new(EXIT_OTHER, e))?;
            let values: serde_json::Map<String, Value> =
                (0..=3).map(|m| (m.to_string(), json!(p.eval_int(m).to_string()))).collect();
            print(&json!({
                "descending": p.descending().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "display": p.to_string(),
                "values": values,
                "degree": p.projective_degree().to_string(),
            }));
            Ok(0)
        }
        Command::Sweep { m, resolution } => {
            let res = load_resolution(resolution.as_deref())?;
            let sw = res.twisted_cohomology_sweep(m);
            let entries: Vec<Value> = sw
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "j": e.j,
                        "u": e.summand.u().entries(),
                        "q": e.summand.q().entries(),
                        "twist": e.summand.twist(),
                        "h": e.q,
                        "dim": e.dim.to_string(),
                    })
                })
                .collect();
            let table = |map: &std::collections::BTreeMap<i64, Conclusion>| -> serde_json::Map<String, Value> {
                map.iter().map(|(p, c)| (p.to_string(), conclusion(c))).collect()
            };
            print(&json!({
                "m": m,
                "entries": entries,
                "structure_sheaf": table(&sw.structure_sheaf),
                "ideal": table(&sw.ideal),
            }));
            Ok(0)
        }
        Command::Invariants { seed, resolution } => {
            let res = load_resolution(resolution.as_deref())?;
            let sweep = full_sweep(&res).map_err(|e| Failure::new(EXIT_OTHER, e))?;
            let deg = scenes::surface_degree();
            let degree = integrate(&deg.tower, &deg.integrand, seed)?.value;
            let inv = structure_sheaf_invariants(&sweep, degree);
            let g = res.grassmannian();
            let chi = |b: &HomogeneousBundle| -> Result<String, Failure> {
                chi_on_surface(&res, b).map(|x| x.to_string()).map_err(|e| Failure::new(EXIT_OTHER, e))
            };
            print(&json!({
                "nonzero_groups": sweep.nonzero(),
                "surface": inv,
                "k3": inv.is_k3(),
                "chi": {
                    "structure_sheaf": chi(&HomogeneousBundle::structure_sheaf(g))?,
                    "dual_tautological": chi(&HomogeneousBundle::dual_tautological(g))?,
                    "end0": chi(&end0(g))?,
                },
                "seed": seed,
            }));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("ODLCALC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
