//! Convergence sweeps and their CSV form.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::fourier::{
    closed_form_coefficients, endpoint_sum, jump_midpoint, partial_sum_kernel_raw, partial_sum_kernel_split,
    partial_sum_periodic, partial_sum_series_exact, End, KernelOrder, Method, PartialSumResult,
};
use crate::piecewise::PiecewiseFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    /// `½[f(x−0) + f(x+0)]`, or `½[f(0+) + f(2π−)]` at the ends.
    Auto,
    Explicit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: u32,
    pub value: f64,
    pub target: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Slope of `log|error|` against `log n` over the top decade of `n`.
    pub fitted_rate: f64,
    pub method: Method,
    pub x: Exact,
}

/// `s_n(x)` by any route. `KernelSplit` at `x = 0` or `x = 2π` is the
/// endpoint form.
pub fn partial_sum(
    f: &PiecewiseFunction,
    method: Method,
    n: KernelOrder,
    x: Exact,
    tol: f64,
) -> Result<PartialSumResult> {
    let xf = x.to_f64();
    match method {
        Method::Series => {
            let c = closed_form_coefficients(f, n.get().max(1) as usize)?;
            partial_sum_series_exact(&c, n, x)
        }
        Method::KernelRaw => partial_sum_kernel_raw(f, n, xf, tol),
        Method::KernelSplit if x.is_zero() => endpoint_sum(f, n, End::Left, tol),
        Method::KernelSplit if xf == std::f64::consts::TAU => endpoint_sum(f, n, End::Right, tol),
        Method::KernelSplit => partial_sum_kernel_split(f, n, xf, tol),
        Method::Periodic => partial_sum_periodic(f, n, xf, tol),
    }
}

/// One row per `n`, all at the same point and by the same route.
pub fn run_sweep(
    f: &PiecewiseFunction,
    x: Exact,
    n_list: &[u32],
    method: Method,
    target: Target,
    tol: f64,
) -> Result<ConvergenceReport> {
    if n_list.is_empty() {
        return Err(Error::Argument("n list is empty".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument("n list must be strictly ascending".into()));
    }
    let xf = x.to_f64();
    let target = match target {
        Target::Auto => jump_midpoint(f, xf)?,
        Target::Explicit(t) => t,
    };
    let orders = n_list
        .iter()
        .map(|&n| KernelOrder::new(n))
        .collect::<Result<Vec<_>>>()?;
    let coefficients = match method {
        Method::Series => Some(closed_form_coefficients(f, n_list[n_list.len() - 1].max(1) as usize)?),
        _ => None,
    };
    let rows = orders
        .into_iter()
        .map(|n| {
            let r = match &coefficients {
                Some(c) => partial_sum_series_exact(c, n, x)?,
                None => partial_sum(f, method, n, x, tol)?,
            };
            Ok(ConvergenceRow {
                n: n.get(),
                value: r.value,
                target,
                abs_error: (r.value - target).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fitted_rate = top_decade_rate(&rows);
    Ok(ConvergenceReport {
        rows,
        fitted_rate,
        method,
        x,
    })
}

fn top_decade_rate(rows: &[ConvergenceRow]) -> f64 {
    let Some(last) = rows.last() else {
        return f64::NAN;
    };
    let floor = last.n as f64 / 10.0;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n as f64 >= floor && r.n > 0 && r.abs_error > 0.0)
        .map(|r| (r.n as f64, r.abs_error))
        .collect();
    fit_loglog(&points).map_or(f64::NAN, |(slope, _)| slope)
}

/// Least-squares line through `(ln x, ln y)`, returned as `(slope, intercept)`.
///
/// `None` unless there are at least two points with distinct positive `x`
/// and every `y` is positive.
pub fn fit_loglog(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx = logs.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    if sxx == 0.0 {
        return None;
    }
    let sxy = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Shortest decimal that parses back to the same `f64` (at most 17
/// significant digits).
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// `n,value,target,abs_error` rows followed by `#` metadata lines.
pub fn emit_csv(report: &ConvergenceReport) -> String {
    let mut out = String::from("n,value,target,abs_error\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.n,
            format_float(r.value),
            format_float(r.target),
            format_float(r.abs_error)
        );
    }
    let _ = writeln!(out, "# method={}", report.method);
    let _ = writeln!(out, "# x={}", report.x);
    let _ = writeln!(out, "# fitted_rate={}", format_float(report.fitted_rate));
    out
}

/// `lo:hi:step`, `lo:hi` or a comma list such as `10,20,50`.
pub fn parse_n_list(text: &str) -> Result<Vec<u32>> {
    let bad = |why: &str| Error::Argument(format!("bad n list {text:?}: {why}"));
    let int = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| bad("expected a non-negative integer"))
    };
    let list: Vec<u32> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let (lo, hi, step) = match parts.as_slice() {
            [lo, hi] => (int(lo)?, int(hi)?, 1),
            [lo, hi, step] => (int(lo)?, int(hi)?, int(step)?),
            _ => return Err(bad("expected lo:hi or lo:hi:step")),
        };
        if step == 0 {
            return Err(bad("step must be positive"));
        }
        (lo..=hi).step_by(step as usize).collect()
    } else {
        text.split(',').map(int).collect::<Result<_>>()?
    };
    if list.is_empty() {
        return Err(bad("empty"));
    }
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("must be strictly ascending"));
    }
    Ok(list)
}
