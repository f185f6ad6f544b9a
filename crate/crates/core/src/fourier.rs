//! Dirichlet kernel, Fourier coefficients and partial sums on `[0, 2π]`.
//!
//! The partial sum `s_n(x)` is available through four routes:
//!
//! * `series`: `a_0/2 + Σ (a_k cos kx + b_k sin kx)` from stored coefficients;
//! * `kernel_raw`: `(1/π) ∫_0^{2π} f(t) D_n(t − x) dt`;
//! * `kernel_split`: the same integral cut at `t = x` and folded onto
//!   `D_n(2v)`, with no reference to values of `f` outside `[0, 2π]`;
//! * `periodic`: the symmetric form over `[0, π]` applied to the 2π-periodic
//!   extension of `f`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_rational::Ratio;
use num_traits::CheckedMul;

use crate::closed_form::{cos_sin_pi, moments};
use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::piecewise::PiecewiseFunction;
use crate::quadrature::{integrate, OscillationHint};

pub const MAX_ORDER: u32 = 100_000;

/// Half-width of the neighbourhood of a removable point where ratios switch to
/// their Taylor expansion.
pub const SINGULAR_EPS: f64 = 1e-8;

// π = PI + PI_LO to about 2^-107
const PI_LO: f64 = 1.224_646_799_147_353_2e-16;

/// Partial-sum order `n`; the associated odd frequency is `2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelOrder(u32);

impl KernelOrder {
    pub fn new(n: u32) -> Result<Self> {
        if n <= MAX_ORDER {
            Ok(KernelOrder(n))
        } else {
            Err(Error::Argument(format!("order {n} exceeds the cap {MAX_ORDER}")))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `2n + 1`
    pub fn odd_frequency(self) -> f64 {
        2.0 * self.0 as f64 + 1.0
    }
}

impl fmt::Display for KernelOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `x = kπ + h` with `|h| ≤ π/2`.
#[inline]
fn reduce_pi(x: f64) -> (f64, f64) {
    let k = (x / PI).round();
    let h = (-k).mul_add(PI, x) - k * PI_LO;
    (k, h)
}

/// `sin(μh)/sin(h)` near and away from `h = 0`.
#[inline]
fn centred_ratio(mu: f64, h: f64) -> f64 {
    if h.abs() < SINGULAR_EPS {
        let mh2 = (mu * h) * (mu * h);
        let h2 = h * h;
        let num = 1.0 - mh2 / 6.0 + mh2 * mh2 / 120.0;
        let den = 1.0 - h2 / 6.0 + h2 * h2 / 120.0;
        mu * num / den
    } else {
        (mu * h).sin() / h.sin()
    }
}

/// `sin(μx)/sin(x)` for integer-valued `μ`, continuous at every multiple of π.
#[inline]
pub(crate) fn integer_ratio(mu: f64, x: f64) -> f64 {
    let (k, h) = reduce_pi(x);
    // sin(μ(kπ + h)) / sin(kπ + h) = (−1)^{k(μ−1)} sin(μh)/sin(h)
    let flip = k % 2.0 != 0.0 && mu % 2.0 == 0.0;
    let r = centred_ratio(mu, h);
    if flip {
        -r
    } else {
        r
    }
}

/// `sin(μx)/sin(x)` extended continuously through its removable points.
///
/// Every multiple of π is removable when `μ` is an integer; otherwise only
/// `x = 0` is, and points within [`SINGULAR_EPS`] of another multiple of π
/// are rejected.
pub fn dirichlet_ratio(mu: f64, x: f64) -> Result<f64> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Argument(format!("μ must be positive and finite, got {mu}")));
    }
    if !x.is_finite() {
        return Err(Error::Argument(format!("x must be finite, got {x}")));
    }
    if mu.fract() == 0.0 {
        return Ok(integer_ratio(mu, x));
    }
    let (k, h) = reduce_pi(x);
    if k == 0.0 {
        Ok(centred_ratio(mu, x))
    } else if h.abs() < SINGULAR_EPS {
        Err(Error::NonRemovable { mu, x })
    } else {
        Ok((mu * x).sin() / x.sin())
    }
}

/// `D_n(u) = sin((2n+1)u/2) / (2 sin(u/2))`, equal to `(2n+1)/2` at multiples
/// of 2π.
#[inline]
pub fn dirichlet_kernel(n: KernelOrder, u: f64) -> f64 {
    0.5 * integer_ratio(n.odd_frequency(), 0.5 * u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientSource {
    Quadrature,
    ClosedForm,
}

/// `a_0..a_K` and `b_1..b_K` of a function on `[0, 2π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    a: Vec<f64>,
    b: Vec<f64>,
    coefficient_tol: f64,
    source: CoefficientSource,
}

impl FourierCoefficients {
    /// `K`
    pub fn order(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self, k: usize) -> f64 {
        self.a[k]
    }

    /// `b_k` for `k ≥ 1`.
    pub fn b(&self, k: usize) -> f64 {
        assert!(k >= 1, "b_0 is not defined");
        self.b[k - 1]
    }

    pub fn a_all(&self) -> &[f64] {
        &self.a
    }

    pub fn b_all(&self) -> &[f64] {
        &self.b
    }

    /// Quadrature tolerance per coefficient; zero for closed-form coefficients.
    pub fn coefficient_tol(&self) -> f64 {
        self.coefficient_tol
    }

    pub fn source(&self) -> CoefficientSource {
        self.source
    }
}

fn require_full_period(f: &PiecewiseFunction) -> Result<()> {
    if f.domain_exact() == (Exact::ZERO, Exact::pi_multiple(2, 1)) {
        Ok(())
    } else {
        let (lo, hi) = f.domain_exact();
        Err(Error::Argument(format!(
            "function must be defined on [0, 2pi], not [{lo}, {hi}]"
        )))
    }
}

fn require_k(k_max: usize) -> Result<()> {
    if k_max == 0 || k_max > MAX_ORDER as usize {
        Err(Error::Argument(format!("K must be in 1..={MAX_ORDER}, got {k_max}")))
    } else {
        Ok(())
    }
}

/// Coefficients by adaptive quadrature, each within `tol`.
pub fn fourier_coefficients(f: &PiecewiseFunction, k_max: usize, tol: f64) -> Result<FourierCoefficients> {
    require_full_period(f)?;
    require_k(k_max)?;
    let splits = f.breakpoints();
    let coefficient = |k: usize, trig: fn(f64) -> f64, name: &str| -> Result<f64> {
        let kf = k as f64;
        integrate(
            |t| f.eval_clamped(t) * trig(kf * t),
            0.0,
            TAU,
            tol * PI,
            OscillationHint::new(kf)?,
            &splits,
        )
        .map(|r| r.value / PI)
        .map_err(|e| e.within(|| format!("{name}_{k}")))
    };
    let a = (0..=k_max)
        .map(|k| coefficient(k, f64::cos, "a"))
        .collect::<Result<Vec<_>>>()?;
    let b = (1..=k_max)
        .map(|k| coefficient(k, f64::sin, "b"))
        .collect::<Result<Vec<_>>>()?;
    Ok(FourierCoefficients {
        a,
        b,
        coefficient_tol: tol,
        source: CoefficientSource::Quadrature,
    })
}

/// Coefficients from closed-form antiderivatives of the term basis. Exact
/// whenever the arithmetic allows it, e.g. every `a_k` of `f(x) = x` is `0.0`.
pub fn closed_form_coefficients(f: &PiecewiseFunction, k_max: usize) -> Result<FourierCoefficients> {
    require_full_period(f)?;
    require_k(k_max)?;
    let mut a = Vec::with_capacity(k_max + 1);
    let mut b = Vec::with_capacity(k_max);
    for k in 0..=k_max {
        let (ak, bk) = moments(f, k as u32);
        a.push(ak);
        if k > 0 {
            b.push(bk);
        }
    }
    Ok(FourierCoefficients {
        a,
        b,
        coefficient_tol: 0.0,
        source: CoefficientSource::ClosedForm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    KernelRaw,
    KernelSplit,
    Periodic,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::KernelRaw => "kernel_raw",
            Method::KernelSplit => "kernel_split",
            Method::Periodic => "periodic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSumResult {
    pub x: f64,
    pub n: KernelOrder,
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
}

fn series_sum(c: &FourierCoefficients, n: KernelOrder, trig: impl Fn(usize) -> (f64, f64)) -> Result<f64> {
    let n = n.get() as usize;
    if n > c.order() {
        return Err(Error::Argument(format!(
            "order {n} exceeds the {} stored coefficients",
            c.order()
        )));
    }
    let mut s = 0.5 * c.a(0);
    for k in 1..=n {
        let (cos, sin) = trig(k);
        s += c.a(k) * cos + c.b(k) * sin;
    }
    Ok(s)
}

/// `a_0/2 + Σ_{k ≤ n} (a_k cos kx + b_k sin kx)`.
pub fn partial_sum_series(c: &FourierCoefficients, n: KernelOrder, x: f64) -> Result<PartialSumResult> {
    let value = series_sum(c, n, |k| {
        let kx = k as f64 * x;
        (kx.cos(), kx.sin())
    })?;
    Ok(PartialSumResult {
        x,
        n,
        value,
        method: Method::Series,
        error_estimate: 0.0,
    })
}

/// Series partial sum at an exact point; `cos kx` and `sin kx` are exact at
/// multiples of π/2.
pub fn partial_sum_series_exact(c: &FourierCoefficients, n: KernelOrder, x: Exact) -> Result<PartialSumResult> {
    let xf = x.to_f64();
    let value = series_sum(c, n, |k| {
        if x.has_pi() {
            if let Some(m) = x.ratio().checked_mul(&Ratio::from_integer(k as i64)) {
                return cos_sin_pi(m);
            }
        }
        let kx = k as f64 * xf;
        (kx.cos(), kx.sin())
    })?;
    Ok(PartialSumResult {
        x: xf,
        n,
        value,
        method: Method::Series,
        error_estimate: 0.0,
    })
}

fn require_in_period(x: f64) -> Result<()> {
    if (0.0..=TAU).contains(&x) {
        Ok(())
    } else {
        Err(Error::Argument(format!("x = {x} is outside [0, 2pi]")))
    }
}

fn kernel_context(method: Method, n: KernelOrder, x: f64) -> impl FnOnce() -> String {
    move || format!("{method} partial sum (n = {n}, x = {x})")
}

/// `(1/π) ∫_0^{2π} f(t) D_n(t − x) dt` as one quadrature, no extension of `f`.
pub fn partial_sum_kernel_raw(f: &PiecewiseFunction, n: KernelOrder, x: f64, tol: f64) -> Result<PartialSumResult> {
    require_full_period(f)?;
    require_in_period(x)?;
    let mut splits = f.breakpoints();
    splits.push(x);
    let r = integrate(
        |t| f.eval_clamped(t) * dirichlet_kernel(n, t - x),
        0.0,
        TAU,
        tol * PI,
        OscillationHint::new(0.5 * n.odd_frequency())?,
        &splits,
    )
    .map_err(|e| e.within(kernel_context(Method::KernelRaw, n, x)))?;
    Ok(PartialSumResult {
        x,
        n,
        value: r.value / PI,
        method: Method::KernelRaw,
        error_estimate: r.error_estimate / PI,
    })
}

/// `(2/π) ∫_0^{x/2} f(x − 2v) D_n(2v) dv + (2/π) ∫_0^{(2π−x)/2} f(x + 2v) D_n(2v) dv`.
pub fn partial_sum_kernel_split(f: &PiecewiseFunction, n: KernelOrder, x: f64, tol: f64) -> Result<PartialSumResult> {
    require_full_period(f)?;
    if !(x > 0.0 && x < TAU) {
        return Err(Error::Argument(format!(
            "split form needs 0 < x < 2pi (got {x}); use endpoint_sum at the ends"
        )));
    }
    let hint = OscillationHint::new(n.odd_frequency())?;
    let left_end = 0.5 * x;
    let right_end = 0.5 * (TAU - x);
    let breaks = f.breakpoints();
    let left_splits: Vec<f64> = breaks.iter().filter(|&&c| c < x).map(|&c| 0.5 * (x - c)).collect();
    let right_splits: Vec<f64> = breaks.iter().filter(|&&c| c > x).map(|&c| 0.5 * (c - x)).collect();
    // each half gets half the budget; the 2/π prefactor is folded into the tolerance
    let qtol = 0.25 * PI * tol;
    let ctx = kernel_context(Method::KernelSplit, n, x);
    let left = integrate(
        |v| f.eval_clamped(x - 2.0 * v) * dirichlet_kernel(n, 2.0 * v),
        0.0,
        left_end,
        qtol,
        hint,
        &left_splits,
    )
    .map_err(|e| e.within(ctx))?;
    let ctx = kernel_context(Method::KernelSplit, n, x);
    let right = integrate(
        |v| f.eval_clamped(x + 2.0 * v) * dirichlet_kernel(n, 2.0 * v),
        0.0,
        right_end,
        qtol,
        hint,
        &right_splits,
    )
    .map_err(|e| e.within(ctx))?;
    Ok(PartialSumResult {
        x,
        n,
        value: 2.0 / PI * (left.value + right.value),
        method: Method::KernelSplit,
        error_estimate: 2.0 / PI * (left.error_estimate + right.error_estimate),
    })
}

/// Points `t ∈ [0, π]` where `x ± t` meets a jump of the periodic extension.
fn periodic_splits(f: &PiecewiseFunction, x: f64) -> Vec<f64> {
    let mut points = f.breakpoints();
    points.push(0.0);
    let mut out = Vec::new();
    for c in points {
        for t in [(c - x).rem_euclid(TAU), (x - c).rem_euclid(TAU)] {
            if t > 0.0 && t < PI {
                out.push(t);
            }
        }
    }
    out
}

/// `(2/π) ∫_0^π ½[g(x+t) + g(x−t)] D_n(t) dt` where `g` is the 2π-periodic
/// extension of `f`. Defined for every real `x`.
pub fn partial_sum_periodic(f: &PiecewiseFunction, n: KernelOrder, x: f64, tol: f64) -> Result<PartialSumResult> {
    require_full_period(f)?;
    if !x.is_finite() {
        return Err(Error::Argument(format!("x must be finite, got {x}")));
    }
    let g = f.periodic_extension(TAU)?;
    let r = integrate(
        |t| 0.5 * (g.eval(x + t) + g.eval(x - t)) * dirichlet_kernel(n, t),
        0.0,
        PI,
        0.5 * PI * tol,
        OscillationHint::new(0.5 * n.odd_frequency())?,
        &periodic_splits(f, x),
    )
    .map_err(|e| e.within(kernel_context(Method::Periodic, n, x)))?;
    Ok(PartialSumResult {
        x,
        n,
        value: 2.0 / PI * r.value,
        method: Method::Periodic,
        error_estimate: 2.0 / PI * r.error_estimate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

/// `s_n(0) = (2/π) ∫_0^π f(2v) D_n(2v) dv` or
/// `s_n(2π) = (2/π) ∫_0^π f(2π − 2v) D_n(2v) dv`.
pub fn endpoint_sum(f: &PiecewiseFunction, n: KernelOrder, end: End, tol: f64) -> Result<PartialSumResult> {
    require_full_period(f)?;
    let (x, sign) = match end {
        End::Left => (0.0, 1.0),
        End::Right => (TAU, -1.0),
    };
    let splits: Vec<f64> = f
        .breakpoints()
        .iter()
        .map(|&c| if sign > 0.0 { 0.5 * c } else { 0.5 * (TAU - c) })
        .collect();
    let r = integrate(
        |v| f.eval_clamped(x + sign * 2.0 * v) * dirichlet_kernel(n, 2.0 * v),
        0.0,
        PI,
        0.5 * PI * tol,
        OscillationHint::new(n.odd_frequency())?,
        &splits,
    )
    .map_err(|e| e.within(move || format!("endpoint sum (n = {n}, x = {x})")))?;
    Ok(PartialSumResult {
        x,
        n,
        value: 2.0 / PI * r.value,
        method: Method::KernelSplit,
        error_estimate: 2.0 / PI * r.error_estimate,
    })
}

/// `½[f(x−0) + f(x+0)]` inside the period and `½[f(0+) + f(2π−)]` at either end.
pub fn jump_midpoint(f: &PiecewiseFunction, x: f64) -> Result<f64> {
    require_full_period(f)?;
    if x == 0.0 || x == TAU {
        return Ok(0.5 * (f.right_limit(0.0)? + f.left_limit(TAU)?));
    }
    Ok(0.5 * (f.left_limit(x)? + f.right_limit(x)?))
}
