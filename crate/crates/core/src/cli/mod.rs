//! Command-line surface: every check and sweep, with JSON reports and CSV tables.

mod suite;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::baxter::{baxter_eigen_check, gamma_identity_check, lemma1_check, BaxterIdentity, TestFunction};
use crate::error::{Error, Result};
use crate::limits::{convergence_sweep, eq_exp_limit_check, sweep_csv, term_limit_checks, DEFAULT_LADDER, DEFAULT_PRECISION};
use crate::noumi::{macdonald_d1_check, verify_noumi};
use crate::qcore::parse_rational;
use crate::report::{ReportDocument, VerificationReport};
use crate::symfunc::{
    eval_symmetric, macdonald_gram_schmidt, macdonald_triangular_eigen, qwhittaker_branch_eval, Partition, Signature,
};
use crate::whittaker::{stade_check, whittaker_eval, QuadratureConfig, StadeIdentity};

pub use suite::{
    euler_reflection_check, gamma_decay_check, kappa_check, macdonald_cross_check, run_criterion,
    whittaker_reflection_check, CRITERIA,
};

#[derive(Debug, Parser)]
#[command(name = "baxterlab", version, about = "Verification of q-difference and Whittaker identities")]
struct Cli {
    /// Write the report (or CSV table) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every sampled point.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Noumi's operator on P_λ against its eigenvalue series, exactly.
    VerifyNoumi(ExactArgs),
    /// The first Macdonald operator on P_λ against its eigenvalue, exactly.
    VerifyD1(ExactArgs),
    /// The Gamma-function identity behind the dual Baxter operator.
    VerifyGammaIdentity {
        #[arg(long, value_parser = complex_list)]
        r: ComplexList,
        #[arg(long, value_delimiter = ',')]
        nu: Vec<u32>,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Residue sum against contour integral for the operator on a test function.
    VerifyLemma1 {
        #[arg(long, value_parser = complex_list)]
        w: ComplexList,
        #[arg(long, default_value_t = 1.0)]
        u: f64,
        /// Abscissa of the integration contours.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, value_enum, default_value_t = TestKind::Pole)]
        test_function: TestKind,
        /// Location of the test function's pole.
        #[arg(long, default_value_t = 3.0)]
        b: f64,
        /// Order of the test function's pole.
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// Largest |ν| summed in the residue form.
        #[arg(long, default_value_t = 40)]
        truncation: u32,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Stade's integral identities.
    VerifyStade {
        #[arg(long, default_value_t = 1.0)]
        u: f64,
        #[arg(long, value_parser = complex_list)]
        lambda: ComplexList,
        #[arg(long, value_parser = complex_list)]
        nu: ComplexList,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// The dual Baxter operator acting on Whittaker functions.
    VerifyBaxter {
        #[arg(long, value_parser = complex_list)]
        w: ComplexList,
        #[arg(long, default_value_t = 1.0)]
        u: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// The q-exponential factor along an ε ladder.
    LimitExp {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_LADDER)]
        eps_list: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        u: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x_n: f64,
        /// Number of variables of the underlying scaling.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// The two factors of each operator term along an ε ladder.
    LimitTerms {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_LADDER)]
        eps_list: Vec<f64>,
        #[arg(long, value_delimiter = ',', num_args = 1)]
        nu: Vec<u32>,
        #[arg(long, value_parser = complex_list)]
        w: ComplexList,
    },
    /// Scaled q-Whittaker values against the Whittaker function; writes a CSV table.
    LimitSweep {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_LADDER)]
        eps_list: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, value_parser = complex_list)]
        w: ComplexList,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        prec_bits: u32,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// P_λ(z; q, t) at a rational point.
    EvalMacdonald {
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<u32>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<String>,
        #[arg(long)]
        q: String,
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value_t = Route::GramSchmidt)]
        route: Route,
    },
    /// ψ_λ(x) by the pattern integral.
    EvalWhittaker {
        #[arg(long, value_parser = complex_list)]
        lambda: ComplexList,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Every acceptance criterion in turn.
    Suite {
        /// Smaller grids and fewer high-rank cases.
        #[arg(long)]
        quick: bool,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<u32>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: String,
    #[arg(long)]
    t: String,
    /// ζ-order of the series (ignored by verify-d1).
    #[arg(long, default_value_t = 3)]
    order: usize,
    #[arg(long, default_value_t = 5)]
    samples: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TestKind {
    Constant,
    Pole,
    Exp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    First,
    Second,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Route {
    GramSchmidt,
    Eigen,
    Branching,
}

type ComplexList = Vec<Complex64>;

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let s = s.trim();
    let bad = || format!("not a complex number: {s:?}");
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn complex_list(s: &str) -> std::result::Result<ComplexList, String> {
    s.split(',').map(parse_complex).collect()
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s)
}

fn quad(tol: f64) -> QuadratureConfig {
    QuadratureConfig::default().with_tol(tol, tol * 1e-3)
}

fn baxter_which(w: Which) -> Vec<BaxterIdentity> {
    match w {
        Which::First => vec![BaxterIdentity::First],
        Which::Second => vec![BaxterIdentity::Second],
        Which::Both => vec![BaxterIdentity::First, BaxterIdentity::Second],
    }
}

fn stade_which(w: Which) -> Vec<StadeIdentity> {
    match w {
        Which::First => vec![StadeIdentity::First],
        Which::Second => vec![StadeIdentity::Second],
        Which::Both => vec![StadeIdentity::First, StadeIdentity::Second],
    }
}

/// What a subcommand produced: reports to judge, or a plain value to print.
enum Output {
    Reports(Vec<VerificationReport>),
    Table { csv: String, report: VerificationReport, report_path: Option<PathBuf> },
    Value(serde_json::Value),
}

#[derive(Serialize)]
struct Complexish {
    re: f64,
    im: f64,
}

fn execute(command: Command, seed: u64) -> Result<Output> {
    use Command::*;
    Ok(match command {
        VerifyNoumi(a) => {
            let lam = Partition::new(a.lambda)?;
            let (q, t) = (rational(&a.q)?, rational(&a.t)?);
            Output::Reports(vec![verify_noumi(&lam, a.n, &q, &t, a.order, a.samples, seed)?])
        }
        VerifyD1(a) => {
            let lam = Partition::new(a.lambda)?;
            let (q, t) = (rational(&a.q)?, rational(&a.t)?);
            Output::Reports(vec![macdonald_d1_check(&lam, a.n, &q, &t, a.samples, seed)?])
        }
        VerifyGammaIdentity { r, nu, tolerance } => {
            if r.len() != nu.len() {
                return Err(Error::Arity {
                    expected: r.len(),
                    got: nu.len(),
                });
            }
            Output::Reports(vec![gamma_identity_check(&r, &nu, tolerance)?])
        }
        VerifyLemma1 {
            w,
            u,
            a,
            test_function,
            b,
            order,
            tau,
            truncation,
            tolerance,
        } => {
            let f = match test_function {
                TestKind::Constant => TestFunction::Constant,
                TestKind::Pole => TestFunction::ProductPole { b, order },
                TestKind::Exp => TestFunction::ExpCutoff { b, tau, order },
            };
            let cfg = quad((tolerance * 1e-2).max(1e-13));
            Output::Reports(vec![lemma1_check(&f, &w, u, a, truncation, &cfg, tolerance)?])
        }
        VerifyStade {
            u,
            lambda,
            nu,
            which,
            tolerance,
        } => {
            let cfg = quad(if lambda.len() > 1 { 1e-7 } else { 1e-11 });
            let mut out = Vec::new();
            for which in stade_which(which) {
                out.push(stade_check(u, &lambda, &nu, which, &cfg, tolerance)?);
            }
            Output::Reports(out)
        }
        VerifyBaxter {
            w,
            u,
            x,
            which,
            tolerance,
        } => {
            let cfg = quad(if w.len() > 1 { 1e-4 } else { 1e-9 });
            let mut out = Vec::new();
            for which in baxter_which(which) {
                out.push(baxter_eigen_check(&w, u, &x, which, &cfg, tolerance)?);
            }
            Output::Reports(out)
        }
        LimitExp { eps_list, u, x_n, n } => Output::Reports(vec![eq_exp_limit_check(&eps_list, u, x_n, n)?]),
        LimitTerms { eps_list, nu, w } => {
            let nu: [u32; 2] = nu.try_into().map_err(|v: Vec<u32>| Error::Arity {
                expected: 2,
                got: v.len(),
            })?;
            let w: [Complex64; 2] = w.try_into().map_err(|v: Vec<Complex64>| Error::Arity {
                expected: 2,
                got: v.len(),
            })?;
            Output::Reports(vec![term_limit_checks(&eps_list, nu, w)?])
        }
        LimitSweep {
            eps_list,
            x,
            w,
            prec_bits,
            report,
        } => {
            let (r, rows) = convergence_sweep(&eps_list, &x, &w, prec_bits, &quad(1e-11))?;
            Output::Table {
                csv: sweep_csv(&rows)?,
                report: r,
                report_path: report,
            }
        }
        EvalMacdonald { lambda, z, q, t, route } => {
            let lam = Partition::new(lambda)?;
            let z: Vec<BigRational> = z.iter().map(|s| rational(s)).collect::<Result<_>>()?;
            let (q, t) = (rational(&q)?, rational(&t)?);
            let n = z.len();
            let value = match route {
                Route::GramSchmidt => eval_symmetric(&macdonald_gram_schmidt(&lam, &q, &t)?.restrict(n), &z)?,
                Route::Eigen => eval_symmetric(&macdonald_triangular_eigen(&lam, n, &q, &t)?, &z)?,
                Route::Branching => {
                    if !crate::qcore::Scalar::is_zero(&t) {
                        return Err(Error::Precondition("the branching route needs t = 0".into()));
                    }
                    qwhittaker_branch_eval(&Signature::from_partition(&lam, n)?, &z, &q)?
                }
            };
            Output::Value(serde_json::json!({
                "lambda": lam.to_string(),
                "z": z.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "q": q.to_string(),
                "t": t.to_string(),
                "route": format!("{route:?}"),
                "value": value.to_string(),
            }))
        }
        EvalWhittaker { lambda, x, tolerance } => {
            let r = whittaker_eval(&lambda, &x, &quad(tolerance))?;
            Output::Value(serde_json::json!({
                "lambda": lambda.iter().map(|z| Complexish { re: z.re, im: z.im }).collect::<Vec<_>>(),
                "x": x,
                "value": Complexish { re: r.value.re, im: r.value.im },
                "error": r.error,
                "evals": r.evals,
            }))
        }
        Suite { quick, only } => {
            let mut out = Vec::new();
            for (id, _) in CRITERIA {
                if only.is_empty() || only.contains(&id) {
                    out.extend(run_criterion(id, quick, seed)?);
                }
            }
            Output::Reports(out)
        }
    })
}

/// Malformed input, as opposed to a failed or unconverged computation.
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Precondition(_)
            | Error::Arity { .. }
            | Error::NotWeaklyDecreasing(_)
            | Error::Coincident(..)
            | Error::CapExceeded { .. }
            | Error::SizeMismatch { .. }
            | Error::ZeroCoordinate(_)
            | Error::NotContracting(_)
    )
}

fn emit(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

/// Runs the command line `args` (program name first). Returns 0 when every check passes, 1 when a
/// check fails or a computation does not converge, 2 on malformed input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let output = match execute(cli.command, cli.seed) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_usage_error(&e) { 2 } else { 1 };
        }
    };
    let (text, pass) = match output {
        Output::Reports(reports) => {
            let doc = ReportDocument::new(reports);
            let pass = doc.all_pass();
            eprintln!("{} of {} checks passed", doc.summary.passed, doc.summary.total);
            (doc.to_json() + "\n", pass)
        }
        Output::Table {
            csv,
            report,
            report_path,
        } => {
            let pass = report.pass;
            if let Some(p) = report_path {
                let doc = ReportDocument::new(vec![report]);
                if let Err(e) = fs::write(&p, doc.to_json() + "\n") {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return 2;
                }
            }
            (csv, pass)
        }
        Output::Value(v) => (serde_json::to_string_pretty(&v).expect("values serialize") + "\n", true),
    };
    if let Err(e) = emit(cli.out.as_ref(), &text) {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }
    if pass {
        0
    } else {
        1
    }
}
