//! `fischer`: command-line front end for `fischer-core`.
//!
//! The primary artifact (JSON, CSV or a text table) goes to `--output` or
//! stdout. A one-line JSON envelope with the status and exit code always
//! goes to stderr. Exit codes: 0 success, 1 certificate or check failure,
//! 2 unreadable or invalid input, 3 singular Fischer operator.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use fischer_core::dirichlet::{boundary_csv, solve_request, to_fischer_problem, DirichletRequest, DirichletResponse, DomainSpec};
use fischer_core::entire::{
    decompose_entire, order_estimate_with, tail_report_csv, EntireDecompositionJson, EntireSeries, NormSource, OrderGate,
};
use fischer_core::fischer::{decompose_recursive, decompose_series_formula, DecompositionJson, FischerProblem};
use fischer_core::random::DEFAULT_SEED;
use fischer_core::spectral::{chebyshev_identity_check, reports_to_csv, verify_main_inequality};
use fischer_core::verify::{run_suite, VerifyConfig};
use fischer_core::{Error, Polynomial};

#[derive(Parser, Debug)]
#[command(name = "fischer", version, about = "Fischer decompositions, spectral bounds and harmonic extension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose data f = P·q + h with Δᵏh = 0.
    Decompose {
        /// Problem JSON: {"k", "polynomial"} or {"domain"}.
        #[arg(long)]
        problem: PathBuf,
        /// Polynomial or series JSON.
        #[arg(long)]
        data: PathBuf,
        /// Treat the data as a series truncated at N.
        #[arg(long)]
        truncation: Option<u32>,
        /// Also evaluate the quotient by the series formula and compare.
        #[arg(long)]
        cross_check: bool,
        /// Tail report CSV (series data only).
        #[arg(long)]
        tail_csv: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Harmonic extension of boundary data on a catalogued domain.
    Dirichlet {
        /// Request JSON: {"domain", "data", "truncation"}.
        #[arg(long)]
        request: PathBuf,
        /// Boundary samples CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Minimal eigenvalues for multiplication by x₂² on the circle, as CSV.
    BoundScan {
        #[arg(long, default_value_t = 200)]
        m_max: u32,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Order and type of a truncated series.
    Order {
        #[arg(long)]
        data: PathBuf,
        /// Use the certified norm bound instead of sampling.
        #[arg(long)]
        certified: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the full invariant suite and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest degree for the spectral inequality.
        #[arg(long, default_value_t = 200)]
        m_max: u32,
        /// Number of random decompositions in the exactness check.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Exact check of det(A_n − λI) = 2T_n(−λ/2).
    ChebyshevCheck {
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u16).range(1..=64))]
        n: u16,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::Dirichlet { .. } => "dirichlet",
            Command::BoundScan { .. } => "bound-scan",
            Command::Order { .. } => "order",
            Command::Verify { .. } => "verify",
            Command::ChebyshevCheck { .. } => "chebyshev-check",
        }
    }
}

#[derive(Debug)]
enum Failure {
    Certificate(String),
    Input(String),
    Singular(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Certificate(_) => 1,
            Failure::Input(_) => 2,
            Failure::Singular(_) => 3,
        }
    }

    fn status(&self) -> &'static str {
        match self {
            Failure::Certificate(_) => "certificate_failure",
            Failure::Input(_) => "input_error",
            Failure::Singular(_) => "singular",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Certificate(m) | Failure::Input(m) | Failure::Singular(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularFischerOperator { .. } => Failure::Singular(e.to_string()),
            Error::BoundViolated(_) | Error::IllConditionedGram { .. } => Failure::Certificate(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    status: &'a str,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<&'a str>,
}

/// Problem file: an explicit `P` of degree `2k`, or a catalogued domain.
#[derive(Deserialize)]
#[serde(untagged)]
enum ProblemFile {
    Explicit(ExplicitProblem),
    Domain(DomainProblem),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitProblem {
    k: u32,
    polynomial: Polynomial,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainProblem {
    domain: DomainSpec,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DataFile {
    Series(EntireSeries),
    Polynomial(Polynomial),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_side(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn load_problem(path: &Path) -> Result<(FischerProblem, Option<OrderGate>), Failure> {
    match read_json::<ProblemFile>(path)? {
        ProblemFile::Explicit(p) => Ok((FischerProblem::from_polynomial(&p.polynomial, p.k)?, None)),
        ProblemFile::Domain(d) => {
            let inst = to_fischer_problem(&d.domain)?;
            Ok((inst.problem, Some(inst.gate)))
        }
    }
}

fn decompose(
    problem: &Path,
    data: &Path,
    truncation: Option<u32>,
    cross_check: bool,
    tail_csv: &Option<PathBuf>,
    output: &Option<PathBuf>,
) -> Result<(), Failure> {
    let (problem, gate) = load_problem(problem)?;
    let data = read_json::<DataFile>(data)?;
    let series = match (data, truncation) {
        (DataFile::Polynomial(f), None) => {
            let result = decompose_recursive(&problem, &f)?;
            if cross_check {
                let mut q = Polynomial::zero(f.dim());
                for part in f.graded_parts().values() {
                    q = q.add(&decompose_series_formula(&problem, part)?.quotient)?;
                }
                if q != result.quotient {
                    return Err(Failure::Certificate("series formula and recursion disagree".into()));
                }
            }
            emit(output, &to_json(&DecompositionJson::from(&result)))?;
            return if result.is_exact() { Ok(()) } else { Err(Failure::Certificate("residual is not zero".into())) };
        }
        (DataFile::Polynomial(f), Some(n)) => EntireSeries::from_polynomial(&f, n)?,
        (DataFile::Series(s), Some(n)) => s.with_truncation(n)?,
        (DataFile::Series(s), None) => s,
    };
    let dec = decompose_entire(&problem, &series, gate)?;
    if let Some(w) = &dec.warning {
        log::warn!("{w}");
    }
    write_side(tail_csv, &tail_report_csv(&dec.tail))?;
    emit(output, &to_json(&EntireDecompositionJson::from(&dec)))?;
    if dec.is_exact() {
        Ok(())
    } else {
        Err(Failure::Certificate("residual is not zero".into()))
    }
}

fn dirichlet(request: &Path, csv: &Option<PathBuf>, output: &Option<PathBuf>) -> Result<(), Failure> {
    let req: DirichletRequest = read_json(request)?;
    let sol = solve_request(&req)?;
    if let Some(w) = &sol.warning {
        log::warn!("{w}");
    }
    write_side(csv, &boundary_csv(&sol.boundary))?;
    emit(output, &to_json(&DirichletResponse::from(&sol)))?;
    if sol.is_exact() {
        Ok(())
    } else {
        Err(Failure::Certificate("residual is not zero".into()))
    }
}

fn order(data: &Path, certified: bool, output: &Option<PathBuf>) -> Result<(), Failure> {
    let series = match read_json::<DataFile>(data)? {
        DataFile::Series(s) => s,
        DataFile::Polynomial(p) => EntireSeries::from_polynomial(&p, p.degree().unwrap_or(0))?,
    };
    let source = if certified { NormSource::Certified } else { NormSource::Sampled };
    let est = order_estimate_with(&series, source)?;
    emit(output, &to_json(&est))
}

fn verify(seed: u64, m_max: u32, samples: usize, output: &Option<PathBuf>) -> Result<(), Failure> {
    let cfg = VerifyConfig { seed, spectral_m_max: m_max, exactness_samples: samples, ..VerifyConfig::default() };
    let outcomes = run_suite(&cfg);
    let mut table = String::new();
    for o in &outcomes {
        let _ = writeln!(table, "{o}");
    }
    emit(output, &table)?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Certificate(format!("{failed} of {} checks failed", outcomes.len())))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Decompose { problem, data, truncation, cross_check, tail_csv, output } => {
            decompose(problem, data, *truncation, *cross_check, tail_csv, output)
        }
        Command::Dirichlet { request, csv, output } => dirichlet(request, csv, output),
        Command::BoundScan { m_max, output } => {
            let reports = verify_main_inequality(*m_max)?;
            emit(output, &reports_to_csv(&reports))
        }
        Command::Order { data, certified, output } => order(data, *certified, output),
        Command::Verify { seed, m_max, samples, output } => verify(*seed, *m_max, *samples, output),
        Command::ChebyshevCheck { n, output } => {
            let n = *n as usize;
            let ok = chebyshev_identity_check(n);
            emit(output, &format!("{} det(A_n−λI) = 2T_n(−λ/2) (n = {n})\n", if ok { "PASS" } else { "FAIL" }))?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Certificate(format!("identity fails at n = {n}")))
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FISCHER_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = run(&cli);
    let (status, code, message) = match &result {
        Ok(()) => ("ok", 0, None),
        Err(f) => (f.status(), f.exit_code(), Some(f.message())),
    };
    let envelope = Envelope { command: cli.command.name(), status, exit_code: code, message };
    eprintln!("{}", serde_json::to_string(&envelope).expect("serializable"));
    ExitCode::from(code)
}
