use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fourier_lab::dirichlet::{cot_sweep, limit_sweep, riemann_lebesgue, LimitEstimate, RangeSpec};
use fourier_lab::fourier::{closed_form_coefficients, fourier_coefficients, KernelOrder, Method};
use fourier_lab::poisson::{poisson_finite, poisson_infinite, PoissonReport};
use fourier_lab::report::{emit_csv, fit_loglog, format_float, parse_n_list, partial_sum, run_sweep, Target};
use fourier_lab::{parse_function, parse_scalar, Error, Exact, PiecewiseFunction};

/// Fourier partial sums, Dirichlet integrals and Poisson summation, measured.
#[derive(Parser)]
#[command(name = "fourier-lab", version)]
struct Cli {
    /// Write the table to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FuncArg {
    /// Function spec, e.g. "[0,1pi): 1 ; [1pi,2pi]: 0" or "exp(-x)".
    #[arg(long = "func")]
    func: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Series,
    Kernel,
    Split,
    Periodic,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => Method::Series,
            MethodArg::Kernel => Method::KernelRaw,
            MethodArg::Split => Method::KernelSplit,
            MethodArg::Periodic => Method::Periodic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Quadrature,
    ClosedForm,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficients a_k, b_k for k = 0..max-k.
    Coeffs {
        #[command(flatten)]
        func: FuncArg,
        #[arg(long, default_value_t = 32)]
        max_k: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "quadrature")]
        source: SourceArg,
    },
    /// One partial sum s_n(x).
    PartialSum {
        #[command(flatten)]
        func: FuncArg,
        #[arg(long)]
        n: u32,
        /// Evaluation point, e.g. 1/2pi or 0.75.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value = "series")]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Partial sums over a list of orders against a target.
    Sweep {
        #[command(flatten)]
        func: FuncArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// lo:hi:step or a comma list.
        #[arg(long, default_value = "1:500:1")]
        n_list: String,
        #[arg(long, value_enum, default_value = "series")]
        method: MethodArg,
        /// "auto" or a number.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Windowed Dirichlet integrals against their predicted limit.
    Dirichlet {
        #[command(flatten)]
        func: FuncArg,
        /// interior:A | fullpi | multipi:M | nodes:M
        #[arg(long)]
        range: String,
        #[arg(long = "N-start", default_value_t = 200)]
        n_start: u32,
        #[arg(long, default_value_t = 8)]
        window: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Both sides of the finite or infinite Poisson summation identity.
    Poisson {
        #[command(flatten)]
        func: FuncArg,
        #[arg(long, required_unless_present = "infinite", conflicts_with = "infinite")]
        m: Option<u32>,
        #[arg(long)]
        infinite: bool,
        #[arg(long, default_value_t = 40.0, requires = "infinite")]
        cut: f64,
        #[arg(long, default_value_t = 64)]
        modes: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Decay of the integral of f(x) cos(2Nx) over [0, a].
    RlCheck {
        #[command(flatten)]
        func: FuncArg,
        #[arg(long)]
        a: String,
        #[arg(long = "N-list", default_value = "5,10,20,40")]
        n_list: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Windowed integrals of f(x) cot(x) sin(2Nx) over [0, a].
    Cot {
        #[command(flatten)]
        func: FuncArg,
        #[arg(long)]
        a: String,
        #[arg(long = "N-start", default_value_t = 200)]
        n_start: u32,
        #[arg(long, default_value_t = 8)]
        window: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

enum Failure {
    Usage(String),
    Lab(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lab(e)
    }
}

fn function(arg: &FuncArg) -> Result<PiecewiseFunction, Failure> {
    parse_function(&arg.func).map_err(|e| Failure::Usage(format!("--func: {e}")))
}

fn scalar(flag: &str, text: &str) -> Result<Exact, Failure> {
    parse_scalar(text).map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn parse_range(text: &str) -> Result<RangeSpec, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "--range: expected interior:A, fullpi, multipi:M or nodes:M, got {text:?}"
        ))
    };
    let count = |s: &str| s.parse::<u32>().map_err(|_| bad());
    let range = match text.split_once(':') {
        None if text == "fullpi" => Ok(RangeSpec::FullPi),
        Some(("interior", a)) => RangeSpec::interior(scalar("--range", a)?.to_f64()),
        Some(("multipi", m)) => RangeSpec::multi_pi(count(m)?),
        Some(("nodes", m)) => RangeSpec::unit_nodes(count(m)?),
        _ => return Err(bad()),
    };
    range.map_err(|e| Failure::Usage(format!("--range: {e}")))
}

fn window_csv(out: &mut String, est: &LimitEstimate) {
    out.push_str("N,value\n");
    for (n, v) in &est.window_values {
        let _ = writeln!(out, "{n},{}", format_float(*v));
    }
    let _ = writeln!(out, "# predicted={}", format_float(est.predicted));
    let _ = writeln!(out, "# estimate={}", format_float(est.estimate));
    let _ = writeln!(
        out,
        "# deviation={}",
        format_float((est.estimate - est.predicted).abs())
    );
    let _ = writeln!(out, "# spread={}", format_float(est.spread));
    let _ = writeln!(out, "# window={}", est.window);
}

fn poisson_csv(out: &mut String, r: &PoissonReport) {
    out.push_str("lhs,rhs,residual,modes,last_mode,quadrature_error\n");
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        format_float(r.lhs),
        format_float(r.rhs),
        format_float(r.residual),
        r.modes_used,
        format_float(r.last_mode),
        format_float(r.quadrature_error)
    );
    if let Some(cut) = r.tail_cutoff {
        let _ = writeln!(out, "# tail_cutoff={}", format_float(cut));
    }
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Coeffs {
            func,
            max_k,
            tol,
            source,
        } => {
            let f = function(&func)?;
            let c = match source {
                SourceArg::Quadrature => fourier_coefficients(&f, max_k, tol)?,
                SourceArg::ClosedForm => closed_form_coefficients(&f, max_k)?,
            };
            out.push_str("k,a_k,b_k\n");
            for k in 0..=c.order() {
                let b = if k == 0 { 0.0 } else { c.b(k) };
                let _ = writeln!(out, "{k},{},{}", format_float(c.a(k)), format_float(b));
            }
        }
        Command::PartialSum {
            func,
            n,
            x,
            method,
            tol,
        } => {
            let f = function(&func)?;
            let x = scalar("--x", &x)?;
            let r = partial_sum(&f, method.into(), KernelOrder::new(n)?, x, tol)?;
            out.push_str("n,x,method,value,error_estimate\n");
            let _ = writeln!(
                out,
                "{n},{},{},{},{}",
                format_float(r.x),
                r.method,
                format_float(r.value),
                format_float(r.error_estimate)
            );
        }
        Command::Sweep {
            func,
            x,
            n_list,
            method,
            target,
            tol,
        } => {
            let f = function(&func)?;
            let x = scalar("--x", &x)?;
            let n_list = parse_n_list(&n_list).map_err(|e| Failure::Usage(format!("--n-list: {e}")))?;
            let target = if target == "auto" {
                Target::Auto
            } else {
                Target::Explicit(scalar("--target", &target)?.to_f64())
            };
            out = emit_csv(&run_sweep(&f, x, &n_list, method.into(), target, tol)?);
        }
        Command::Dirichlet {
            func,
            range,
            n_start,
            window,
            tol,
        } => {
            let f = function(&func)?;
            let est = limit_sweep(&f, parse_range(&range)?, n_start, window, tol)?;
            window_csv(&mut out, &est);
        }
        Command::Poisson {
            func,
            m,
            infinite,
            cut,
            modes,
            tol,
        } => {
            let f = function(&func)?;
            let r = match m {
                Some(m) if !infinite => poisson_finite(&f, m, modes, tol)?,
                _ => poisson_infinite(&f, modes, cut, tol)?,
            };
            poisson_csv(&mut out, &r);
        }
        Command::RlCheck { func, a, n_list, tol } => {
            let f = function(&func)?;
            let a = scalar("--a", &a)?.to_f64();
            let n_list = parse_n_list(&n_list).map_err(|e| Failure::Usage(format!("--N-list: {e}")))?;
            out.push_str("N,value,abs_value,error_estimate\n");
            let mut points = Vec::new();
            for n in n_list {
                let r = riemann_lebesgue(&f, a, n, tol)?;
                points.push((n as f64, r.value.abs()));
                let _ = writeln!(
                    out,
                    "{n},{},{},{}",
                    format_float(r.value),
                    format_float(r.value.abs()),
                    format_float(r.error_estimate)
                );
            }
            let exponent = fit_loglog(&points).map_or(f64::NAN, |(s, _)| s);
            let _ = writeln!(out, "# fitted_exponent={}", format_float(exponent));
        }
        Command::Cot {
            func,
            a,
            n_start,
            window,
            tol,
        } => {
            let f = function(&func)?;
            let a = scalar("--a", &a)?.to_f64();
            let est = cot_sweep(&f, a, n_start, window, tol)?;
            window_csv(&mut out, &est);
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(text) => match cli.out {
            Some(path) => match std::fs::write(&path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    ExitCode::from(1)
                }
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lab(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
