//! `thetakit` command line: evaluate, tabulate, reduce and verify.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 any other
//! failure (convergence, I/O, a failed verification sweep).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Number, Value};

use thetakit::hypergeo::{hyper_f, hyper_f_deriv, hyper_f_stieltjes};
use thetakit::measure::{sigma_cdf, sigma_density};
use thetakit::modular::{classify, log_theta3_global_with, reduce_to_fundamental, GlobalRoute};
use thetakit::quad::QuadratureSpec;
use thetakit::theta::{lambda, log_theta, theta, ThetaIndex};
use thetakit::triangle::triangle;
use thetakit::verify::{all_pass, run_suite, Suite};
use thetakit::{Complex64, Error, EvalResult, Method};

#[derive(Parser, Debug)]
#[command(name = "thetakit", version, about = "Theta functions, F(1/2,1/2;1;z), tau and lambda")]
struct Cli {
    /// absolute error target
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// evaluation route: auto, series, integral or stieltjes
    #[arg(long, global = true, default_value = "auto")]
    method: String,
    /// sweep seed when not given positionally (verify)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON lines instead of a text table (verify)
    #[arg(long, global = true)]
    json: bool,
    /// output file (table); stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate one function at z = re + i im
    Eval {
        function: Function,
        #[arg(allow_hyphen_values = true)]
        re: f64,
        #[arg(allow_hyphen_values = true)]
        im: f64,
    },
    /// Reduce z into |Re w| <= 1, |w| >= 1 and print the certificate
    Reduce {
        #[arg(allow_hyphen_values = true)]
        re: f64,
        #[arg(allow_hyphen_values = true)]
        im: f64,
    },
    /// Run an identity sweep: jacobi, wirtinger, wronskian, transforms,
    /// lambda_prime, integral_reprs, reduction, bounds or all
    Verify {
        suite: String,
        #[arg(default_value_t = 100)]
        n: usize,
        #[arg(value_name = "SEED")]
        sweep_seed: Option<u64>,
        /// residual tolerance, or "default"
        #[arg(value_name = "TOL")]
        sweep_tol: Option<String>,
    },
    /// Tabulate a function on a grid as CSV
    Table {
        function: Function,
        /// real range and count, e.g. 0.01..0.99:99
        #[arg(long, default_value = "0..0:1", allow_hyphen_values = true)]
        re: String,
        /// imaginary range and count
        #[arg(long, default_value = "0..0:1", allow_hyphen_values = true)]
        im: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Function {
    #[value(name = "F")]
    F,
    #[value(name = "Fprime")]
    Fprime,
    Tau,
    Lambda,
    Theta2,
    Theta3,
    Theta4,
    #[value(name = "logtheta3")]
    LogTheta3,
    #[value(name = "sigma_cdf")]
    SigmaCdf,
    #[value(name = "sigma_density")]
    SigmaDensity,
}

/// Failure tagged with its exit code.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::Domain(_)) => 2,
            Some(Error::InvalidArgument(_)) => 1,
            _ => 3,
        };
        Failure { code, err }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 1, err: anyhow!(msg.into()) }
}

/// 17 significant digits; non-finite values become null.
fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let s = format!("{x:.16e}");
    s.parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

fn cnum(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn evaluate(f: Function, z: Complex64, tol: f64, method: &str) -> Result<EvalResult, Failure> {
    let real_arg = || -> Result<f64, Failure> {
        if z.im != 0.0 {
            return Err(Error::Domain(format!("{f:?} takes a real argument, got Im = {}", z.im)).into_failure());
        }
        Ok(z.re)
    };
    let only_auto = |allowed: &[&str]| -> Result<(), Failure> {
        if method == "auto" || allowed.contains(&method) {
            Ok(())
        } else {
            Err(usage(format!("method '{method}' is not available for {f:?}")))
        }
    };
    let r = match f {
        Function::F => {
            only_auto(&["series", "stieltjes"])?;
            if method == "stieltjes" {
                let spec = QuadratureSpec::with_tol(tol).map_err(Error::into_failure)?;
                hyper_f_stieltjes(z, &spec)
            } else {
                hyper_f(z, tol)
            }
        }
        Function::Fprime => {
            only_auto(&["series"])?;
            hyper_f_deriv(z, tol)
        }
        Function::Tau => {
            only_auto(&[])?;
            triangle(z, tol)
        }
        Function::Lambda => {
            only_auto(&["series"])?;
            lambda(z, tol)
        }
        Function::Theta2 | Function::Theta3 | Function::Theta4 => {
            only_auto(&["series"])?;
            let k = match f {
                Function::Theta2 => ThetaIndex::Two,
                Function::Theta3 => ThetaIndex::Three,
                _ => ThetaIndex::Four,
            };
            theta(k, z, tol)
        }
        Function::LogTheta3 => {
            only_auto(&["series", "integral"])?;
            match method {
                "series" => log_theta(ThetaIndex::Three, z, tol),
                "integral" => log_theta3_global_with(z, tol, GlobalRoute::Integral),
                _ => log_theta3_global_with(z, tol, GlobalRoute::Series),
            }
        }
        Function::SigmaCdf => {
            only_auto(&[])?;
            sigma_cdf(real_arg()?).map(|v| EvalResult { value: Complex64::new(v, 0.0), abs_err: 4e-16, method: Method::ClosedForm })
        }
        Function::SigmaDensity => {
            only_auto(&[])?;
            let x = real_arg()?;
            sigma_density(x).map(|v| EvalResult {
                value: Complex64::new(v, 0.0),
                abs_err: 8.0 * f64::EPSILON * v,
                method: Method::ClosedForm,
            })
        }
    };
    r.map_err(Error::into_failure)
}

trait IntoFailure {
    fn into_failure(self) -> Failure;
}

impl IntoFailure for Error {
    fn into_failure(self) -> Failure {
        Failure::from(anyhow::Error::new(self))
    }
}

fn cmd_eval(cli: &Cli, f: Function, re: f64, im: f64) -> Result<(), Failure> {
    let tol = cli.tol.unwrap_or(1e-8);
    let r = evaluate(f, Complex64::new(re, im), tol, &cli.method)?;
    let rec = json!({ "value": cnum(r.value), "abs_err": num(r.abs_err), "method": r.method.name() });
    println!("{rec}");
    Ok(())
}

fn cmd_reduce(re: f64, im: f64) -> Result<(), Failure> {
    let cert = reduce_to_fundamental(Complex64::new(re, im)).map_err(Error::into_failure)?;
    cert.check().map_err(Error::into_failure)?;
    let class = classify(&cert.matrix).map_err(Error::into_failure)?;
    let rec = json!({
        "input": cnum(cert.input),
        "matrix": cert.matrix.entries(),
        "class": format!("{class:?}"),
        "word_length": cert.steps,
        "reduced": cnum(cert.reduced),
        "berndt_phase": cnum(cert.berndt_phase),
        "applied_phase": cnum(cert.applied_phase),
    });
    println!("{rec}");
    Ok(())
}

fn cmd_verify(cli: &Cli, suite: &str, n: usize, seed: Option<u64>, tol: Option<&str>) -> Result<(), Failure> {
    let suite: Suite = suite.parse().map_err(|e: Error| usage(e.to_string()))?;
    let seed = seed.or(cli.seed).unwrap_or(1);
    let tol = match tol {
        None | Some("default") => cli.tol,
        Some(t) => Some(t.parse::<f64>().map_err(|_| usage(format!("tolerance '{t}' is not a number")))?),
    };
    let reports = run_suite(suite, n, seed, tol);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for r in &reports {
        let line = if cli.json {
            json!({
                "suite": suite.name(),
                "identity": r.name,
                "points": r.points,
                "max_residual": num(r.max_residual),
                "tolerance": num(r.tolerance),
                "pass": r.pass,
            })
            .to_string()
        } else {
            r.to_string()
        };
        writeln!(out, "{line}").map_err(|e| Failure::from(anyhow!(e)))?;
    }
    if all_pass(&reports) {
        Ok(())
    } else {
        let failed = reports.iter().filter(|r| !r.pass).count();
        Err(Failure { code: 3, err: anyhow!("{failed} of {} identities failed", reports.len()) })
    }
}

/// `lo..hi:count`
fn parse_axis(spec: &str) -> anyhow::Result<Vec<f64>> {
    let (range, count) = spec.rsplit_once(':').unwrap_or((spec, "1"));
    let (lo, hi) = range.split_once("..").with_context(|| format!("range '{range}' must look like lo..hi"))?;
    let lo: f64 = lo.trim().parse().with_context(|| format!("bad number '{lo}'"))?;
    let hi: f64 = hi.trim().parse().with_context(|| format!("bad number '{hi}'"))?;
    let n: usize = count.trim().parse().with_context(|| format!("bad count '{count}'"))?;
    if n == 0 {
        bail!("grid count must be positive");
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect())
}

fn cmd_table(cli: &Cli, f: Function, re: &str, im: &str) -> Result<(), Failure> {
    let xs = parse_axis(re).map_err(|e| usage(e.to_string()))?;
    let ys = parse_axis(im).map_err(|e| usage(e.to_string()))?;
    let tol = cli.tol.unwrap_or(1e-8);
    let sink: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("cannot write {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    let io_err = |e: io::Error| Failure::from(anyhow!(e));
    writeln!(w, "re_z,im_z,re_val,im_val,abs_err").map_err(io_err)?;
    for &y in &ys {
        for &x in &xs {
            let z = Complex64::new(x, y);
            let (v, e) = match evaluate(f, z, tol, &cli.method) {
                Ok(r) => (r.value, r.abs_err),
                Err(fail) if fail.code == 1 => return Err(fail),
                Err(_) => (Complex64::new(f64::NAN, f64::NAN), f64::NAN),
            };
            writeln!(w, "{},{},{},{},{}", fmt17(x), fmt17(y), fmt17(v.re), fmt17(v.im), fmt17(e)).map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(usage(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.cmd {
        Cmd::Eval { function, re, im } => cmd_eval(cli, *function, *re, *im),
        Cmd::Reduce { re, im } => cmd_reduce(*re, *im),
        Cmd::Verify { suite, n, sweep_seed, sweep_tol } => cmd_verify(cli, suite, *n, *sweep_seed, sweep_tol.as_deref()),
        Cmd::Table { function, re, im } => cmd_table(cli, *function, re, im),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
