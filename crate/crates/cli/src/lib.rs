//! Command implementations behind the `qk` binary. Each command returns its
//! complete stdout text so nothing is printed when it fails.

pub mod args;
pub mod bounds;
pub mod table;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use qkernel::detect::ClassCertificate;
use qkernel::exact::{smallest_kernel, smallest_quasi_kernel, OracleBudget, OracleError};
use qkernel::format::{parse_instance, write_instance, ParseError};
use qkernel::generate::{generate, Family, GenError, GenSpec};
use qkernel::solver::{SolveError, SolveResult, Strategy};
use qkernel::{certify, Digraph, Rational, VertexSet};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use args::{Command, DetectArgs, ExactArgs, FamilyName, GenArgs, SolveArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("digraph has a source at vertex {vertex}")]
    NotSourceless { vertex: usize },
    #[error("{0}")]
    BudgetExceeded(String),
    #[error("not in class {0}")]
    ClassViolation(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Generation(#[from] GenError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::NotSourceless { .. } => 4,
            CliError::BudgetExceeded(_) => 5,
            CliError::ClassViolation(_) => 6,
            _ => 1,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NotSourceless { vertex } => CliError::NotSourceless { vertex },
            SolveError::Oracle(o) => o.into(),
            SolveError::InvalidStrategy(msg) => CliError::Usage(msg),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::BudgetExceeded(e.to_string())
    }
}

/// Stdout text plus the exit code to finish with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Solve(a) => cmd_solve(a).map(Output::ok),
        Command::Exact(a) => cmd_exact(a).map(Output::ok),
        Command::Verify(a) => cmd_verify(a).map(Output::ok),
        Command::Detect(a) => cmd_detect(a),
        Command::Gen(a) => cmd_gen(a).map(Output::ok),
        Command::Bounds(a) => cmd_bounds(a),
        Command::BoundTable(a) => Ok(Output::ok(table::render(
            &table::bound_table_rows(a.max_d),
            a.format,
        ))),
    }
}

pub fn read_instance(path: &Path) -> Result<Digraph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    parse_instance(&text).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.into(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("result types serialize");
    s.push('\n');
    s
}

/// Writes `json` to `<dir>/<sha256(instance, flags)>.json` and returns the path.
fn store_result(dir: &Path, g: &Digraph, flags: &str, json: &str) -> Result<PathBuf, CliError> {
    let mut hasher = Sha256::new();
    hasher.update(write_instance(g, &[]).as_bytes());
    hasher.update(b"\0");
    hasher.update(flags.as_bytes());
    let path = dir.join(format!("{}.json", hex::encode(hasher.finalize())));
    write_file(&path, json)?;
    Ok(path)
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub m: usize,
    pub size: usize,
    pub verified: bool,
    pub bound_factor: Option<Rational>,
    pub within_bound: Option<bool>,
    #[serde(flatten)]
    pub result: SolveResult,
}

pub fn solve_report(g: &Digraph, strategy: &Strategy) -> Result<SolveReport, CliError> {
    let result = qkernel::solve(g, strategy)?;
    Ok(SolveReport {
        m: g.m(),
        size: result.size(),
        verified: g.is_quasi_kernel(&result.quasi_kernel),
        bound_factor: result.threshold.map(|t| t.bound_factor()),
        within_bound: result.within_bound(),
        result,
    })
}

fn cmd_solve(a: &SolveArgs) -> Result<String, CliError> {
    let g = read_instance(&a.path)?;
    let strategy = a.strategy.strategy()?;
    let report = solve_report(&g, &strategy)?;
    let json = to_json(&report);
    if let Some(dot) = &a.dot {
        write_file(dot, &g.to_dot(Some(&report.result.quasi_kernel)))?;
    }
    if let Some(dir) = &a.results_dir {
        let flags = serde_json::to_string(&strategy).expect("strategy serializes");
        store_result(dir, &g, &format!("solve {flags}"), &json)?;
    }
    Ok(json)
}

#[derive(Debug, Serialize)]
struct ExactReport {
    n: usize,
    m: usize,
    size: usize,
    quasi_kernel: VertexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel: Option<Option<VertexSet>>,
}

fn cmd_exact(a: &ExactArgs) -> Result<String, CliError> {
    let g = read_instance(&a.path)?;
    let budget = OracleBudget {
        max_n: a.max_n,
        max_nodes: a.max_nodes,
        time_limit: a.time_limit_ms.map(Duration::from_millis),
    };
    let q = smallest_quasi_kernel(&g, &budget)?;
    let kernel = if a.kernel {
        Some(smallest_kernel(&g, &budget)?)
    } else {
        None
    };
    let json = to_json(&ExactReport {
        n: g.n(),
        m: g.m(),
        size: q.len(),
        quasi_kernel: q,
        kernel,
    });
    if let Some(dir) = &a.results_dir {
        store_result(dir, &g, &format!("exact kernel={}", a.kernel), &json)?;
    }
    Ok(json)
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    set: Vec<usize>,
    independent: bool,
    quasi_kernel: bool,
    kernel: bool,
    /// Vertices more than two steps from the set.
    uncovered: VertexSet,
}

fn cmd_verify(a: &VerifyArgs) -> Result<String, CliError> {
    let g = read_instance(&a.path)?;
    let set = VertexSet::from_vertices(g.n(), a.set.iter().copied())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(to_json(&VerifyReport {
        set: set.to_vec(),
        independent: g.is_independent(&set),
        quasi_kernel: g.is_quasi_kernel(&set),
        kernel: g.is_kernel(&set),
        uncovered: g.uncovered_by(&set),
    }))
}

fn cmd_detect(a: &DetectArgs) -> Result<Output, CliError> {
    let g = read_instance(&a.path)?;
    let cert: ClassCertificate = certify(&g, a.class()?);
    let code = if cert.holds {
        0
    } else {
        CliError::ClassViolation(String::new()).exit_code()
    };
    Ok(Output {
        stdout: to_json(&cert),
        code,
    })
}

pub fn gen_spec(a: &GenArgs) -> Result<GenSpec, CliError> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {:?}", a.family)))
    };
    let family = match a.family {
        FamilyName::Cycle => Family::Cycle { n: need(a.n, "n")? },
        FamilyName::DisjointC4s => Family::DisjointC4s { m: need(a.m, "m")? },
        FamilyName::Rotational => Family::Rotational {
            q: need(a.q, "q")?,
            residues: a.residues.clone(),
        },
        FamilyName::Paley => Family::Paley { q: need(a.q, "q")? },
        FamilyName::PaleySinks => Family::PaleySinks {
            q: a.q.unwrap_or(7),
            k: need(a.k, "k")?,
        },
        FamilyName::RandomSourceless => Family::RandomSourceless {
            n: need(a.n, "n")?,
            d: need(a.d, "d")?,
            oriented: a.oriented,
        },
        FamilyName::RandomShortCycleFree => Family::RandomShortCycleFree {
            n: need(a.n, "n")?,
            d: need(a.d, "d")?,
        },
        FamilyName::RandomStarFree => Family::RandomStarFree {
            n: need(a.n, "n")?,
            d: need(a.d, "d")?,
        },
    };
    Ok(GenSpec::new(family, a.seed))
}

fn cmd_gen(a: &GenArgs) -> Result<String, CliError> {
    let spec = gen_spec(a)?;
    let g = generate(&spec)?;
    let text = write_instance(&g, &[spec.describe()]);
    match &a.output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_bounds(a: &args::BoundsArgs) -> Result<Output, CliError> {
    let rows = bounds::run_bounds(a)?;
    let mut csv_bytes = Vec::new();
    bounds::write_csv(&rows, &mut csv_bytes)?;
    let csv_text = String::from_utf8(csv_bytes).expect("csv output is utf-8");
    let summary = bounds::BoundsSummary::of(&rows);
    eprintln!(
        "rows={} bound_satisfied={} bound_guaranteed={} max_ratio={:.6}",
        summary.rows, summary.satisfied, summary.guaranteed, summary.max_ratio
    );
    match &a.csv {
        Some(path) => {
            write_file(path, &csv_text)?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(csv_text)),
    }
}
