//! Command-line surface. Every invocation ends with exit code 0 (success or
//! feasible), 1 (infeasible or no common solution) or 2 (input or usage
//! error).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::approx::{approx_check_feasibility, approx_g1_inverse, approx_realize, FloatMat, Tolerance};
use crate::error::{Error, Result};
use crate::exact_field::{g1_inverse, Mat};
use crate::io::{
    input_hash, parse_matrix, parse_problem, parse_system, to_json, MatrixDocument, ProblemDocument,
    ScalarKind, SystemDocument,
};
use crate::pair_solver::{certificate, solution_family, PairProblem};
use crate::realization::{check_feasibility, realize_family, Triple};
use crate::report::{FamilyDoc, FeasibilityDoc, PairReport, PairVerificationDoc, RealizeReport, VerificationDoc};
use crate::sampling::random_matrix;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "reachobs",
    version,
    about = "Decide whether (V, W) are reachability/observability matrices of a common (A, B, C) and recover all such triples"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the kernel, image and interlock conditions for a problem file.
    Check {
        problem: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Recover (A, B, C) and the full family of admissible A.
    Realize {
        problem: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        z: ZArgs,
    },
    /// Write the problem file (R_k(A, B), O_m(A, C)) for a system file.
    Build {
        system: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the canonical {1}-inverse of a matrix.
    Ginverse { matrix: PathBuf },
    /// Solve the pair F·X = C, X·H = D.
    SolvePair {
        #[arg(long = "f")]
        f: PathBuf,
        #[arg(long = "c")]
        c: PathBuf,
        #[arg(long = "h")]
        h: PathBuf,
        #[arg(long = "d")]
        d: PathBuf,
        #[command(flatten)]
        z: ZArgs,
    },
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Use the floating-point path with tolerance-based decisions.
    #[arg(long)]
    pub float: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub tol_rank: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZMode {
    Zero,
    Random,
}

#[derive(Debug, Args)]
pub struct ZArgs {
    /// Free parameter: all zeros, or seeded integers in [-9, 9].
    #[arg(long = "z", value_enum, default_value_t = ZMode::Zero)]
    pub z: ZMode,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Read the free parameter from a matrix file instead.
    #[arg(long, conflicts_with_all = ["z", "seed"])]
    pub z_file: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn input_error(err: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: EXIT_INPUT,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_INPUT,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cmd: &Command) -> Outcome {
    let result = match cmd {
        Command::Check { problem, tol } => cmd_check(problem, tol),
        Command::Realize { problem, tol, z } => cmd_realize(problem, tol, z),
        Command::Build { system, k, m, out } => cmd_build(system, *k as usize, *m as usize, out.as_deref()),
        Command::Ginverse { matrix } => cmd_ginverse(matrix),
        Command::SolvePair { f, c, h, d, z } => cmd_solve_pair([f, c, h, d], z),
    };
    result.unwrap_or_else(|e| Outcome::input_error(&e))
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::doc(path.display().to_string(), e.to_string()))
}

fn utf8<'a>(path: &Path, bytes: &'a [u8]) -> Result<&'a str> {
    std::str::from_utf8(bytes).map_err(|e| Error::doc(path.display().to_string(), e.to_string()))
}

fn tolerance(args: &TolArgs) -> Result<Tolerance> {
    Tolerance::new(args.tol_rank, args.tol_residual)
}

/// Free parameter of the given shape and the seed that produced it.
fn choose_z(args: &ZArgs, rows: usize, cols: usize) -> Result<(Mat, MatrixDocument, Option<u64>)> {
    if let Some(path) = &args.z_file {
        let bytes = read(path)?;
        let doc = parse_matrix(utf8(path, &bytes)?)?;
        if (doc.rows, doc.cols) != (rows, cols) {
            return Err(Error::dim(
                "z-file",
                format!("Z is {}x{}, expected {rows}x{cols}", doc.rows, doc.cols),
            ));
        }
        let exact = match doc.scalar_kind {
            ScalarKind::Rational => doc.to_exact()?,
            // Float Z is only meaningful on the float path; keep the document.
            ScalarKind::Float => Mat::zeros(rows, cols),
        };
        return Ok((exact, doc, None));
    }
    let (z, seed) = match args.z {
        ZMode::Zero => (Mat::zeros(rows, cols), None),
        ZMode::Random => {
            let seed = args.seed.unwrap_or(0);
            (random_matrix(rows, cols, seed), Some(seed))
        }
    };
    let doc = MatrixDocument::from_exact(&z);
    Ok((z, doc, seed))
}

fn infeasible(stdout: String, failed: &[&str]) -> Outcome {
    Outcome {
        stdout,
        stderr: format!("infeasible: {}\n", failed.join(", ")),
        code: EXIT_INFEASIBLE,
    }
}

pub fn cmd_check(problem: &Path, tol: &TolArgs) -> Result<Outcome> {
    let bytes = read(problem)?;
    let doc = parse_problem(utf8(problem, &bytes)?)?;
    let hash = input_hash([bytes.as_slice()]);
    let (feasibility, mode) = if tol.float {
        let report = approx_check_feasibility(&doc.to_float()?, &tolerance(tol)?);
        (FeasibilityDoc::from(&report), "float")
    } else {
        (FeasibilityDoc::from(&check_feasibility(&doc.to_exact()?)), "exact")
    };
    let feasible = feasibility.feasible;
    let failed = feasibility.failed_conditions.clone();
    let report = RealizeReport {
        input_sha256: hash,
        mode,
        feasibility,
        triple: None,
        family: None,
        z_used: None,
        seed: None,
        verification: None,
    };
    let text = to_json(&report);
    Ok(if feasible { Outcome::ok(text) } else { infeasible(text, &failed) })
}

pub fn cmd_realize(problem: &Path, tol: &TolArgs, zargs: &ZArgs) -> Result<Outcome> {
    let bytes = read(problem)?;
    let doc = parse_problem(utf8(problem, &bytes)?)?;
    let hash = input_hash([bytes.as_slice()]);
    if tol.float {
        realize_float(&doc, hash, tol, zargs)
    } else {
        realize_exact(&doc, hash, zargs)
    }
}

fn realize_exact(doc: &ProblemDocument, hash: String, zargs: &ZArgs) -> Result<Outcome> {
    let prob = doc.to_exact()?;
    let n = prob.n();
    let (z, z_doc, seed) = choose_z(zargs, n, n)?;
    if z_doc.scalar_kind == ScalarKind::Float {
        return Err(Error::doc("z-file", "float Z requires --float"));
    }
    let report = check_feasibility(&prob);
    let mut out = RealizeReport {
        input_sha256: hash,
        mode: "exact",
        feasibility: FeasibilityDoc::from(&report),
        triple: None,
        family: None,
        z_used: Some(z_doc),
        seed,
        verification: None,
    };
    if !report.feasible {
        return Ok(infeasible(to_json(&out), &report.failed_conditions()));
    }
    let family = realize_family(&prob)?;
    let triple = Triple {
        a: family.instantiate(&z)?,
        b: prob.v_block(0)?,
        c: prob.w_block(0)?,
    };
    let reach = crate::realization::reachability_matrix(&triple.a, &triple.b, prob.k())? == *prob.v();
    let obs = crate::realization::observability_matrix(&triple.a, &triple.c, prob.m())? == *prob.w();
    out.triple = Some(SystemDocument::from_triple(&triple));
    out.family = Some(FamilyDoc::from(&family));
    out.verification = Some(VerificationDoc {
        reachability_matches: reach,
        observability_matches: obs,
        reachability_residual: None,
        observability_residual: None,
    });
    let text = to_json(&out);
    if reach && obs {
        Ok(Outcome::ok(text))
    } else {
        Ok(infeasible(text, &["self-verification failed"]))
    }
}

fn realize_float(doc: &ProblemDocument, hash: String, tol: &TolArgs, zargs: &ZArgs) -> Result<Outcome> {
    let prob = doc.to_float()?;
    let tol = tolerance(tol)?;
    let n = prob.n();
    let (z, z_doc, seed) = choose_z(zargs, n, n)?;
    let z = match z_doc.scalar_kind {
        ScalarKind::Float => z_doc.to_float()?,
        ScalarKind::Rational => FloatMat::from_exact(&z),
    };
    let report = approx_check_feasibility(&prob, &tol);
    let mut out = RealizeReport {
        input_sha256: hash,
        mode: "float",
        feasibility: FeasibilityDoc::from(&report),
        triple: None,
        family: None,
        z_used: Some(z_doc),
        seed,
        verification: None,
    };
    if !report.feasible {
        return Ok(infeasible(to_json(&out), &report.failed_conditions()));
    }
    let r = approx_realize(&prob, &z, &tol)?;
    out.triple = Some(SystemDocument {
        a: MatrixDocument::from_float(&r.a),
        b: MatrixDocument::from_float(&r.b),
        c: MatrixDocument::from_float(&r.c),
    });
    out.family = Some(FamilyDoc::from(&r));
    out.verification = Some(VerificationDoc {
        reachability_matches: r.reachability_residual <= crate::approx::RECONSTRUCTION_BOUND,
        observability_matches: r.observability_residual <= crate::approx::RECONSTRUCTION_BOUND,
        reachability_residual: Some(r.reachability_residual),
        observability_residual: Some(r.observability_residual),
    });
    let text = to_json(&out);
    if r.within_bound() {
        Ok(Outcome::ok(text))
    } else {
        Ok(infeasible(text, &["reconstruction residual above bound"]))
    }
}

pub fn cmd_build(system: &Path, k: usize, m: usize, out: Option<&Path>) -> Result<Outcome> {
    let bytes = read(system)?;
    let triple = parse_system(utf8(system, &bytes)?)?.to_triple()?;
    let text = to_json(&ProblemDocument::from_problem(&triple.problem(k, m)?));
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::doc(path.display().to_string(), e.to_string()))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

pub fn cmd_ginverse(matrix: &Path) -> Result<Outcome> {
    let bytes = read(matrix)?;
    let doc = parse_matrix(utf8(matrix, &bytes)?)?;
    let y = match doc.scalar_kind {
        ScalarKind::Rational => MatrixDocument::from_exact(&g1_inverse(&doc.to_exact()?)),
        ScalarKind::Float => MatrixDocument::from_float(&approx_g1_inverse(&doc.to_float()?, &Tolerance::default())),
    };
    Ok(Outcome::ok(to_json(&y)))
}

pub fn cmd_solve_pair(paths: [&PathBuf; 4], zargs: &ZArgs) -> Result<Outcome> {
    let mut raw = Vec::with_capacity(4);
    let mut mats = Vec::with_capacity(4);
    for path in paths {
        let bytes = read(path)?;
        let doc = parse_matrix(utf8(path, &bytes)?)?;
        mats.push(doc.to_exact().map_err(|e| Error::doc(path.display().to_string(), e.to_string()))?);
        raw.push(bytes);
    }
    let hash = input_hash(raw.iter().map(Vec::as_slice));
    let [f, c, h, d]: [Mat; 4] = mats.try_into().expect("four matrices read");
    let prob = PairProblem::new(f, c, h, d)?;
    let (t, p) = prob.unknown_shape();
    let (z, z_doc, seed) = choose_z(zargs, t, p)?;
    if z_doc.scalar_kind == ScalarKind::Float {
        return Err(Error::doc("z-file", "Z must be rational"));
    }

    let cert = certificate(&prob);
    let (conditions, residuals) = PairReport::conditions_from(&cert);
    let mut out = PairReport {
        input_sha256: hash,
        conditions,
        failed_conditions: cert.failed_conditions(),
        residuals,
        solution: None,
        family: None,
        z_used: Some(z_doc),
        seed,
        verification: None,
    };
    if !cert.feasible() {
        return Ok(infeasible(to_json(&out), &cert.failed_conditions()));
    }
    let family = solution_family(&prob, None, None)?;
    let x = family.instantiate(&z)?;
    out.verification = Some(PairVerificationDoc {
        left_equation_holds: prob.f().matmul(&x)? == *prob.c(),
        right_equation_holds: x.matmul(prob.h())? == *prob.d(),
    });
    out.solution = Some(MatrixDocument::from_exact(&x));
    out.family = Some(FamilyDoc::from(&family));
    Ok(Outcome::ok(to_json(&out)))
}
