//! Poisson summation as a two-sided computation.
//!
//! Finite form on `[0, m]`:
//!
//! ```text
//! Σ_{n=0}^m f(n) = ∫_0^m f + ½[f(0) + f(m)] + 2 Σ_{n=1}^K ∫_0^m f(x) cos(2nπx) dx
//! ```
//!
//! and its `m → ∞` limit, realised with a hard cutoff `X_cut`:
//!
//! ```text
//! ½f(0) + Σ_{n≥1} f(n) = ∫_0^∞ f + 2 Σ_{n≥1} ∫_0^∞ f(x) cos(2πnx) dx
//! ```

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::piecewise::PiecewiseFunction;
use crate::quadrature::{integrate, OscillationHint, QuadratureResult};

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonReport {
    /// Node-sum side.
    pub lhs: f64,
    /// Integral plus cosine-mode side.
    pub rhs: f64,
    pub modes_used: u32,
    /// `X_cut` for the infinite form.
    pub tail_cutoff: Option<f64>,
    /// `|lhs − rhs|`
    pub residual: f64,
    /// `2·|∫ f cos(2πKx)|`, a proxy for the truncated mode tail.
    pub last_mode: f64,
    /// Summed quadrature error estimates.
    pub quadrature_error: f64,
}

struct Modes {
    /// `∫ f + 2Σ ∫ f cos(2πnx)`
    total: f64,
    last_mode: f64,
    error: f64,
}

fn mode_sum(f: &PiecewiseFunction, hi: f64, modes: u32, tol: f64) -> Result<Modes> {
    let splits: Vec<f64> = f.breakpoints().into_iter().filter(|&c| c > 0.0 && c < hi).collect();
    let run = |omega: f64| -> Result<QuadratureResult> {
        integrate(
            |x| f.eval_clamped(x) * (omega * x).cos(),
            0.0,
            hi,
            tol,
            OscillationHint::new(omega)?,
            &splits,
        )
    };
    let base = run(0.0).map_err(|e| e.within(|| format!("mean integral over [0, {hi}]")))?;
    let mut total = base.value;
    let mut error = base.error_estimate;
    let mut last_mode = 0.0;
    for n in 1..=modes {
        let r = run(TAU * n as f64).map_err(|e| e.within(|| format!("mode n = {n} over [0, {hi}]")))?;
        total += 2.0 * r.value;
        error += 2.0 * r.error_estimate;
        last_mode = 2.0 * r.value.abs();
    }
    Ok(Modes {
        total,
        last_mode,
        error,
    })
}

fn check_modes(modes: u32) -> Result<()> {
    if modes == 0 {
        Err(Error::Argument("at least one mode is required".into()))
    } else {
        Ok(())
    }
}

fn check_covers(f: &PiecewiseFunction, hi: f64) -> Result<()> {
    let (lo, top) = f.domain();
    if lo <= 0.0 && top >= hi {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "function domain [{lo}, {top}] does not cover [0, {hi}]"
        )))
    }
}

/// Finite form on `[0, m]` truncated at `modes` cosine modes.
pub fn poisson_finite(f: &PiecewiseFunction, m: u32, modes: u32, tol: f64) -> Result<PoissonReport> {
    if m == 0 {
        return Err(Error::Argument("m must be positive".into()));
    }
    check_modes(modes)?;
    let hi = m as f64;
    check_covers(f, hi)?;
    let jumps = f.jumps_in(0.0, hi);
    if !jumps.is_empty() {
        return Err(Error::Precondition(format!(
            "f must be continuous on [0, {m}]; jumps at {jumps:?}"
        )));
    }
    let lhs = (0..=m).map(|n| f.eval_clamped(n as f64)).sum::<f64>();
    let s = mode_sum(f, hi, modes, tol)?;
    let rhs = s.total + 0.5 * (f.eval_clamped(0.0) + f.eval_clamped(hi));
    Ok(PoissonReport {
        lhs,
        rhs,
        modes_used: modes,
        tail_cutoff: None,
        residual: (lhs - rhs).abs(),
        last_mode: s.last_mode,
        quadrature_error: s.error,
    })
}

/// Infinite form with every integral cut at `x_cut`.
///
/// `|f(x_cut)|` must not exceed `tol`.
pub fn poisson_infinite(f: &PiecewiseFunction, modes: u32, x_cut: f64, tol: f64) -> Result<PoissonReport> {
    check_modes(modes)?;
    if !(x_cut >= 1.0 && x_cut.is_finite()) {
        return Err(Error::Argument(format!("cutoff must be at least 1, got {x_cut}")));
    }
    check_covers(f, x_cut)?;
    let tail = f.eval_clamped(x_cut);
    if tail.is_nan() || tail.abs() > tol {
        return Err(Error::Precondition(format!(
            "f({x_cut}) = {tail} does not decay below {tol}"
        )));
    }
    let jumps = f.jumps_in(0.0, x_cut);
    if !jumps.is_empty() {
        return Err(Error::Precondition(format!(
            "f must be continuous on [0, {x_cut}]; jumps at {jumps:?}"
        )));
    }
    let last = x_cut.floor() as u64;
    let lhs = 0.5 * f.eval_clamped(0.0) + (1..=last).map(|n| f.eval_clamped(n as f64)).sum::<f64>();
    let s = mode_sum(f, x_cut, modes, tol)?;
    Ok(PoissonReport {
        lhs,
        rhs: s.total,
        modes_used: modes,
        tail_cutoff: Some(x_cut),
        residual: (lhs - s.total).abs(),
        last_mode: s.last_mode,
        quadrature_error: s.error,
    })
}
