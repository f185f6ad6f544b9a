//! C ABI for `fourier-lab`.
//!
//! Functions and coefficient tables live behind opaque handles. Every call
//! returns an [`FlStatus`]; on failure [`fl_last_error_message`] describes the
//! error for the calling thread. The header is generated into
//! `include/fourier_lab.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fourier_lab::dirichlet::{dirichlet_integral, limit_sweep, RangeSpec};
use fourier_lab::fourier::{
    closed_form_coefficients, endpoint_sum, fourier_coefficients, partial_sum_kernel_raw, partial_sum_kernel_split,
    partial_sum_periodic, partial_sum_series, End, FourierCoefficients, KernelOrder,
};
use fourier_lab::poisson::{poisson_finite, poisson_infinite, PoissonReport};
use fourier_lab::{format_function, parse_function, Error, PiecewiseFunction};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Argument = 4,
    Domain = 5,
    Precondition = 6,
    /// A quadrature missed its tolerance or met a non-finite value.
    Numerical = 7,
    Panic = 8,
}

/// Partial-sum route.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlMethod {
    Series = 0,
    KernelRaw = 1,
    KernelSplit = 2,
    Periodic = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlRangeKind {
    /// `[0, a]` with `0 < a < π`
    Interior = 0,
    /// `[0, π]`
    FullPi = 1,
    /// `[0, mπ]`
    MultiPi = 2,
    /// `[0, m]`, node-scaled kernel
    UnitNodes = 3,
}

/// Integration range for the Dirichlet integrals. `a` is read for
/// `Interior`, `m` for `MultiPi` and `UnitNodes`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FlRange {
    pub kind: FlRangeKind,
    pub a: f64,
    pub m: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FlEstimate {
    pub value: f64,
    pub error_estimate: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FlLimit {
    pub estimate: f64,
    pub spread: f64,
    pub predicted: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FlPoisson {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub last_mode: f64,
    pub quadrature_error: f64,
    pub modes_used: u32,
}

/// Opaque piecewise function.
pub struct FlFunction(PiecewiseFunction);

/// Opaque table of Fourier coefficients.
pub struct FlCoefficients(FourierCoefficients);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(FlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } | Error::Tiling(_) | Error::UnsupportedExponent(_) => FlStatus::Syntax,
            Error::Domain { .. } => FlStatus::Domain,
            Error::Precondition(_) => FlStatus::Precondition,
            e if e.is_numerical() => FlStatus::Numerical,
            _ => FlStatus::Argument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FlStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            FlStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("panic inside fourier-lab".into());
            FlStatus::Panic
        }
    }
}

unsafe fn function<'a>(f: *const FlFunction) -> Result<&'a PiecewiseFunction, Failure> {
    f.as_ref().map(|f| &f.0).ok_or_else(|| null("function"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn range(r: FlRange) -> Result<RangeSpec, Failure> {
    Ok(match r.kind {
        FlRangeKind::Interior => RangeSpec::interior(r.a)?,
        FlRangeKind::FullPi => RangeSpec::FullPi,
        FlRangeKind::MultiPi => RangeSpec::multi_pi(r.m)?,
        FlRangeKind::UnitNodes => RangeSpec::unit_nodes(r.m)?,
    })
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a function spec such as `"[0,1pi): 1 ; [1pi,2pi]: 0"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_function_parse(spec: *const c_char, out: *mut *mut FlFunction) -> FlStatus {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|e| Failure(FlStatus::InvalidUtf8, e.to_string()))?;
        let f = parse_function(text)?;
        write(out, Box::into_raw(Box::new(FlFunction(f))))
    })
}

/// # Safety
/// `f` must come from [`fl_function_parse`] and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fl_function_free(f: *mut FlFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical text of `f`; release it with [`fl_string_free`].
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_function_format(f: *const FlFunction, out: *mut *mut c_char) -> FlStatus {
    guard(|| {
        let text = format_function(function(f)?);
        let c = CString::new(text).map_err(|e| Failure(FlStatus::Argument, e.to_string()))?;
        write(out, c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_function_eval(f: *const FlFunction, x: f64, out: *mut f64) -> FlStatus {
    guard(|| write(out, function(f)?.eval(x)?))
}

/// # Safety
/// `f` must be a live handle; `lo` and `hi` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_function_domain(f: *const FlFunction, lo: *mut f64, hi: *mut f64) -> FlStatus {
    guard(|| {
        let (a, b) = function(f)?.domain();
        write(lo, a)?;
        write(hi, b)
    })
}

/// `a_k`, `b_k` for `k ≤ k_max` by quadrature (`closed_form == false`) or
/// from antiderivatives.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_coefficients_new(
    f: *const FlFunction,
    k_max: usize,
    tol: f64,
    closed_form: bool,
    out: *mut *mut FlCoefficients,
) -> FlStatus {
    guard(|| {
        let f = function(f)?;
        let c = if closed_form {
            closed_form_coefficients(f, k_max)?
        } else {
            fourier_coefficients(f, k_max, tol)?
        };
        write(out, Box::into_raw(Box::new(FlCoefficients(c))))
    })
}

/// # Safety
/// `c` must come from [`fl_coefficients_new`] and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fl_coefficients_free(c: *mut FlCoefficients) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Highest stored index; zero for a null handle.
///
/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fl_coefficients_order(c: *const FlCoefficients) -> usize {
    c.as_ref().map_or(0, |c| c.0.order())
}

/// `a_k` and `b_k`; `b_0` is reported as zero.
///
/// # Safety
/// `c` must be a live handle; `a` and `b` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_coefficients_get(c: *const FlCoefficients, k: usize, a: *mut f64, b: *mut f64) -> FlStatus {
    guard(|| {
        let c = &c.as_ref().ok_or_else(|| null("coefficients"))?.0;
        if k > c.order() {
            return Err(Failure(
                FlStatus::Argument,
                format!("k = {k} exceeds order {}", c.order()),
            ));
        }
        write(a, c.a(k))?;
        write(b, if k == 0 { 0.0 } else { c.b(k) })
    })
}

/// `s_n(x)`. The split route at `x = 0` or `x = 2π` uses the endpoint form.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_partial_sum(
    f: *const FlFunction,
    method: FlMethod,
    n: u32,
    x: f64,
    tol: f64,
    out: *mut FlEstimate,
) -> FlStatus {
    guard(|| {
        let f = function(f)?;
        let n = KernelOrder::new(n)?;
        let r = match method {
            FlMethod::Series => partial_sum_series(&closed_form_coefficients(f, n.get().max(1) as usize)?, n, x)?,
            FlMethod::KernelRaw => partial_sum_kernel_raw(f, n, x, tol)?,
            FlMethod::KernelSplit if x == 0.0 => endpoint_sum(f, n, End::Left, tol)?,
            FlMethod::KernelSplit if x == std::f64::consts::TAU => endpoint_sum(f, n, End::Right, tol)?,
            FlMethod::KernelSplit => partial_sum_kernel_split(f, n, x, tol)?,
            FlMethod::Periodic => partial_sum_periodic(f, n, x, tol)?,
        };
        write(
            out,
            FlEstimate {
                value: r.value,
                error_estimate: r.error_estimate,
            },
        )
    })
}

/// `∫ f(x) sin((2N+1)x)/sin x dx` over `range_spec`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_dirichlet_integral(
    f: *const FlFunction,
    range_spec: FlRange,
    big_n: u32,
    tol: f64,
    out: *mut FlEstimate,
) -> FlStatus {
    guard(|| {
        let r = dirichlet_integral(function(f)?, range(range_spec)?, big_n, tol)?;
        write(
            out,
            FlEstimate {
                value: r.value,
                error_estimate: r.error_estimate,
            },
        )
    })
}

/// Window mean of the Dirichlet integral over `N = n_start .. n_start + window − 1`
/// together with its predicted limit.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_dirichlet_limit(
    f: *const FlFunction,
    range_spec: FlRange,
    n_start: u32,
    window: usize,
    tol: f64,
    out: *mut FlLimit,
) -> FlStatus {
    guard(|| {
        let e = limit_sweep(function(f)?, range(range_spec)?, n_start, window, tol)?;
        write(
            out,
            FlLimit {
                estimate: e.estimate,
                spread: e.spread,
                predicted: e.predicted,
            },
        )
    })
}

fn poisson(r: PoissonReport) -> FlPoisson {
    FlPoisson {
        lhs: r.lhs,
        rhs: r.rhs,
        residual: r.residual,
        last_mode: r.last_mode,
        quadrature_error: r.quadrature_error,
        modes_used: r.modes_used,
    }
}

/// Finite Poisson summation on `[0, m]` with `modes` cosine modes.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_poisson_finite(
    f: *const FlFunction,
    m: u32,
    modes: u32,
    tol: f64,
    out: *mut FlPoisson,
) -> FlStatus {
    guard(|| write(out, poisson(poisson_finite(function(f)?, m, modes, tol)?)))
}

/// Infinite Poisson summation with every integral cut at `x_cut`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fl_poisson_infinite(
    f: *const FlFunction,
    modes: u32,
    x_cut: f64,
    tol: f64,
    out: *mut FlPoisson,
) -> FlStatus {
    guard(|| write(out, poisson(poisson_infinite(function(f)?, modes, x_cut, tol)?)))
}
