//! The `nondegen` command line.
//!
//! [`dispatch`] runs one command and returns its exit code and output
//! instead of printing, so tests drive it in-process.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse error, 3 the model is
//! infeasible, unbounded or improper.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nondegen::exact::{parse_rational, parse_rational_list};
use nondegen::genericity::{
    construct_degenerate_bounded, run_genericity, run_larman, AdversarialStatus, SamplerConfig,
};
use nondegen::problem::{parse_problem, ProblemFile};
use nondegen::prox::{find_critical_points_bounded, prox_bounded, DEFAULT_ENUM_BOUND};
use nondegen::subdiff::{certify, minimize_perturbed, CertificationResult, Perturbed};
use nondegen::{Error, RatVector};

mod render;

pub use render::{Format, Table};
use render::{field, hint, hint_scalar, opt_field};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_MODEL: u8 = 3;

/// Overrides the default enumeration bound of `prox`, `critical` and
/// `adversarial`. An explicit `--enum-bound` wins.
pub const ENUM_BOUND_VAR: &str = "GENERIC_NONDEGEN_ENUM_BOUND";

#[derive(Parser, Debug)]
#[command(name = "nondegen", version, about = "Exact nondegeneracy certificates for polyhedral functions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Append approximate decimals as comments to text output.
    #[arg(long, global = true)]
    decimal_hint: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimize f - <v, .> exactly.
    Minimize {
        file: PathBuf,
        /// Perturbation, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Decide whether x is a nondegenerate critical point of f - <v, .>.
    Certify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Point to certify; defaults to the computed minimizer.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Sample perturbations and classify each minimizer.
    Genericity {
        file: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        bits: u32,
        #[arg(long, default_value = "1")]
        radius: String,
        /// Also write the per-trial CSV here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Construct perturbations with degenerate critical points.
    Adversarial {
        file: PathBuf,
        #[arg(long)]
        enum_bound: Option<usize>,
    },
    /// Sample directions and record the faces of a polytope they expose.
    Larman {
        /// Problem file with a `vertices` section.
        #[arg(long)]
        vertices: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        bits: u32,
        #[arg(long, default_value = "1")]
        radius: String,
        /// Extra direction to evaluate, reported apart from the tallies.
        #[arg(long, allow_hyphen_values = true)]
        force: Vec<String>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Proximal point of f at c.
    Prox {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        enum_bound: Option<usize>,
    },
    /// Critical points of g - (rho/2)|.|^2 - <v, .>.
    Critical {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        enum_bound: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Model(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Model(_) => EXIT_MODEL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Model(m) => m,
        }
    }

    /// Maps a library error raised while computing on well-formed input.
    fn from_model(e: Error) -> Self {
        match e {
            Error::EnumerationBound { generators, bound } => Failure::Usage(format!(
                "{generators} generators exceed the enumeration bound {bound}; raise --enum-bound or {ENUM_BOUND_VAR}"
            )),
            Error::Config(m) => Failure::Usage(m),
            Error::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
            Error::Parse { .. } | Error::BadRational { .. } => Failure::Parse(e.to_string()),
            other => Failure::Model(other.to_string()),
        }
    }
}

/// Successful command result: the exit code is 0 or, for unbounded and
/// infeasible outcomes, 3.
struct Report {
    code: u8,
    table: Table,
    text: String,
}

impl Report {
    fn ok(table: Table, text: String) -> Self {
        Report {
            code: EXIT_OK,
            table,
            text,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Csv => self.table.to_csv(),
            Format::Json => self.table.to_json(),
        }
    }
}

/// Runs one command line (`argv[0]` is the program name), reading
/// [`ENUM_BOUND_VAR`] from the process environment.
pub fn dispatch<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch_with_env(argv, std::env::var(ENUM_BOUND_VAR).ok())
}

/// [`dispatch`] with the enumeration-bound override passed explicitly.
pub fn dispatch_with_env<I, T>(argv: I, enum_bound_env: Option<String>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match run(&cli, enum_bound_env.as_deref()) {
        Ok(report) => Output {
            code: report.code,
            stdout: report.render(cli.format),
            stderr: String::new(),
        },
        Err(f) => Output {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

fn load(path: &Path) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn flag_vector(flag: &str, text: &str, dim: usize) -> Result<RatVector, Failure> {
    let v = parse_rational_list(text, ',').map_err(|e| Failure::Usage(format!("{flag}: {e}")))?;
    if v.dim() != dim {
        return Err(Failure::Usage(format!(
            "{flag}: expected {dim} comma-separated rationals, found {}",
            v.dim()
        )));
    }
    Ok(v)
}

fn function_of(file: &ProblemFile, path: &Path) -> Result<nondegen::subdiff::PolyhedralFunction, Failure> {
    if file.pieces.is_none() && file.constraints.is_none() {
        return Err(Failure::Usage(format!(
            "{} has no `pieces` or `constraints` section",
            path.display()
        )));
    }
    file.function().map_err(Failure::from_model)
}

fn enum_bound(flag: Option<usize>, env: Option<&str>) -> Result<usize, Failure> {
    if let Some(k) = flag {
        return Ok(k);
    }
    match env {
        None => Ok(DEFAULT_ENUM_BOUND),
        Some(s) => s.trim().parse().map_err(|_| {
            Failure::Usage(format!("{ENUM_BOUND_VAR} must be a nonnegative integer, got {s:?}"))
        }),
    }
}

fn sampler(seed: u64, bits: u32, radius: &str) -> Result<SamplerConfig, Failure> {
    let box_radius = parse_rational(radius).map_err(|e| Failure::Usage(format!("--radius: {e}")))?;
    let cfg = SamplerConfig { seed, bits, box_radius };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn write_report(path: &Path, csv: &str) -> Result<(), Failure> {
    std::fs::write(path, csv).map_err(|e| Failure::Usage(format!("--report: cannot write {}: {e}", path.display())))
}

fn run(cli: &Cli, env: Option<&str>) -> Result<Report, Failure> {
    let h = cli.decimal_hint;
    match &cli.command {
        Command::Minimize { file, v } => {
            let pf = load(file)?;
            let f = function_of(&pf, file)?;
            let v = flag_vector("--v", v, f.dim())?;
            let mut table = Table::new(&["status", "x", "value"]);
            let outcome = minimize_perturbed(&f, &v).map_err(Failure::from_model)?;
            Ok(match outcome {
                Perturbed::Minimizer { x, value } => {
                    table.push(vec!["minimum".into(), field(&x), value.to_string()]);
                    let text = format!("MINIMUM at {x}; value {value}{}{}\n", hint(h, &x), hint_scalar(h, &value));
                    Report::ok(table, text)
                }
                Perturbed::Unbounded | Perturbed::Infeasible => {
                    let (label, text) = if outcome == Perturbed::Unbounded {
                        ("unbounded", "UNBOUNDED\n")
                    } else {
                        ("infeasible", "INFEASIBLE\n")
                    };
                    table.push(vec![label.into(), String::new(), String::new()]);
                    Report {
                        code: EXIT_MODEL,
                        table,
                        text: text.into(),
                    }
                }
            })
        }
        Command::Certify { file, v, x } => {
            let pf = load(file)?;
            let f = function_of(&pf, file)?;
            let v = flag_vector("--v", v, f.dim())?;
            let mut table = Table::new(&["result", "x", "witness"]);
            let x = match x {
                Some(x) => flag_vector("--x", x, f.dim())?,
                None => match minimize_perturbed(&f, &v).map_err(Failure::from_model)? {
                    Perturbed::Minimizer { x, .. } => x,
                    other => {
                        let label = if other == Perturbed::Unbounded { "unbounded" } else { "infeasible" };
                        table.push(vec![label.into(), String::new(), String::new()]);
                        return Ok(Report {
                            code: EXIT_MODEL,
                            table,
                            text: format!("{}\n", label.to_uppercase()),
                        });
                    }
                },
            };
            if let Some(i) = f.domain().first_violated(&x) {
                return Err(Failure::Model(format!(
                    "--x: {x} lies outside dom f (constraint {i} is violated)"
                )));
            }
            let result = certify(&f, &v, &x).map_err(Failure::from_model)?;
            let (witness, text) = match &result {
                CertificationResult::Nondegenerate { multipliers, .. } => {
                    let w = multipliers.concatenated();
                    let text = format!("NONDEGENERATE at {x}; witness {}{}\n", w.tokens(","), hint(h, &x));
                    (field(&w), text)
                }
                CertificationResult::DegenerateCritical => (
                    String::new(),
                    format!(
                        "DEGENERATE at {x}: v lies on rb ∂f; no strictly complementary dual exists{}\n",
                        hint(h, &x)
                    ),
                ),
                CertificationResult::NotCritical => (
                    String::new(),
                    format!("NOT CRITICAL at {x}: v is not a subgradient of f there{}\n", hint(h, &x)),
                ),
            };
            table.push(vec![result.label().into(), field(&x), witness]);
            Ok(Report::ok(table, text))
        }
        Command::Genericity {
            file,
            trials,
            seed,
            bits,
            radius,
            report,
        } => {
            let pf = load(file)?;
            let f = function_of(&pf, file)?;
            let cfg = sampler(*seed, *bits, radius)?;
            let rep = run_genericity(&f, &cfg, *trials).map_err(Failure::from_model)?;
            let csv = rep.to_csv();
            if let Some(path) = report {
                write_report(path, &csv)?;
            }
            let mut table = Table::new(&["trial_index", "v", "outcome", "minimizer", "min_witness_coeff"]);
            for r in &rep.records {
                table.push(vec![
                    r.trial_index.to_string(),
                    field(&r.v),
                    r.outcome.as_str().into(),
                    opt_field(r.minimizer.as_ref()),
                    r.min_witness_coeff.as_ref().map(|c| c.to_string()).unwrap_or_default(),
                ]);
            }
            debug_assert_eq!(table.to_csv(), csv);
            let mut text = format!(
                "trials {} seed {}: unique_nondegenerate {}, degenerate {}, non_unique {}, unbounded {}\n",
                rep.trials, rep.seed, rep.unique_nondegenerate, rep.degenerate, rep.non_unique, rep.unbounded
            );
            for r in rep.offending() {
                text.push_str(&format!(
                    "{} trial {}: v {} minimizer {}{}\n",
                    r.outcome.as_str(),
                    r.trial_index,
                    r.v,
                    r.minimizer.as_ref().map(|x| x.to_string()).unwrap_or_default(),
                    hint(h, &r.v)
                ));
            }
            Ok(Report::ok(table, text))
        }
        Command::Adversarial { file, enum_bound: k } => {
            let pf = load(file)?;
            let f = function_of(&pf, file)?;
            let bound = enum_bound(*k, env)?;
            let rep = construct_degenerate_bounded(&f, bound).map_err(Failure::from_model)?;
            let mut table = Table::new(&["v", "x"]);
            let mut text = String::new();
            for p in &rep.pairs {
                table.push(vec![field(&p.v), field(&p.x)]);
                text.push_str(&format!("DEGENERATE v {} at x {}{}\n", p.v, p.x, hint(h, &p.v)));
            }
            if rep.status == AdversarialStatus::NoRelativeBoundary {
                text.push_str(&format!(
                    "NO RELATIVE BOUNDARY: all {} candidate subdifferentials are affine\n",
                    rep.candidates_examined
                ));
            }
            Ok(Report::ok(table, text))
        }
        Command::Larman {
            vertices,
            trials,
            seed,
            bits,
            radius,
            force,
            report,
        } => {
            let pf = load(vertices)?;
            if pf.vertices.is_none() {
                return Err(Failure::Usage(format!(
                    "--vertices: {} has no `vertices` section",
                    vertices.display()
                )));
            }
            let poly = pf.polytope().map_err(Failure::from_model)?;
            let cfg = sampler(*seed, *bits, radius)?;
            let forced = force
                .iter()
                .map(|s| {
                    let c = flag_vector("--force", s, pf.dim)?;
                    if c.is_zero() {
                        return Err(Failure::Usage("--force: direction must be nonzero".into()));
                    }
                    Ok(c)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let rep = run_larman(&poly, &cfg, *trials, &forced).map_err(Failure::from_model)?;
            let csv = rep.to_csv();
            if let Some(path) = report {
                write_report(path, &csv)?;
            }
            let mut table = Table::new(&["trial_index", "direction", "forced", "face_size", "face"]);
            for r in rep.records.iter().chain(&rep.forced) {
                table.push(vec![
                    r.trial_index.to_string(),
                    field(&r.direction),
                    r.forced.to_string(),
                    r.face.len().to_string(),
                    r.face.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";"),
                ]);
            }
            debug_assert_eq!(table.to_csv(), csv);
            let mut text = format!(
                "trials {} seed {}: singleton_faces {}, multi_vertex_faces {}\n",
                rep.trials, rep.seed, rep.singleton_faces, rep.multi_vertex_faces
            );
            for c in &rep.multi_vertex_directions {
                text.push_str(&format!("multi-vertex direction {c}{}\n", hint(h, c)));
            }
            for r in &rep.forced {
                let face: Vec<String> = r.face.iter().map(|i| i.to_string()).collect();
                text.push_str(&format!(
                    "forced {}: face {{{}}}{}\n",
                    r.direction,
                    face.join(", "),
                    if r.multi_vertex { " (multi-vertex)" } else { "" }
                ));
            }
            Ok(Report::ok(table, text))
        }
        Command::Prox { file, c, enum_bound: k } => {
            let pf = load(file)?;
            let f = function_of(&pf, file)?;
            let c = flag_vector("--c", c, f.dim())?;
            let bound = enum_bound(*k, env)?;
            let x = prox_bounded(&f, &c, bound).map_err(Failure::from_model)?;
            let mut table = Table::new(&["x"]);
            table.push(vec![field(&x)]);
            Ok(Report::ok(table, format!("PROX {x}{}\n", hint(h, &x))))
        }
        Command::Critical { file, v, enum_bound: k } => {
            let pf = load(file)?;
            let inst = match pf.lower_c2() {
                Some(inst) => inst.map_err(Failure::from_model)?,
                None => {
                    return Err(Failure::Usage(format!(
                        "critical needs a lower-C² instance; {} has no `rho` directive",
                        file.display()
                    )))
                }
            };
            let v = flag_vector("--v", v, pf.dim)?;
            let bound = enum_bound(*k, env)?;
            let points = find_critical_points_bounded(&inst, &v, bound).map_err(Failure::from_model)?;
            let mut table = Table::new(&["x", "certification"]);
            let mut text = String::new();
            for p in &points {
                table.push(vec![field(&p.x), p.certification.label().into()]);
                text.push_str(&format!(
                    "CRITICAL at {}: {}{}\n",
                    p.x,
                    p.certification.label(),
                    hint(h, &p.x)
                ));
            }
            if points.is_empty() {
                text.push_str("NO CRITICAL POINTS\n");
            }
            Ok(Report::ok(table, text))
        }
    }
}
