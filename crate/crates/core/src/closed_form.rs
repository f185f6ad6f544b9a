//! Closed-form trigonometric moments of the term basis.
//!
//! `(1/π) ∫ T(t) cos(kt) dt` and the sine counterpart are evaluated from
//! antiderivatives. When both ends of a segment are multiples of π the
//! integral is taken in `s = t/π`, so `cos(kπs)` at the ends is evaluated
//! exactly and no factor of π is multiplied in only to be divided out again.

use num_rational::Ratio;
use num_traits::{CheckedMul, ToPrimitive, Zero};

use crate::exact::Exact;
use crate::piecewise::{Atom, PiecewiseFunction, Segment, Term};

/// `cos(π m)` and `sin(π m)`, exact when `2m` is an integer.
pub fn cos_sin_pi(m: Ratio<i64>) -> (f64, f64) {
    let two = Ratio::from_integer(2);
    let mut r = m % two;
    if r < Ratio::zero() {
        r += two;
    }
    let twice = r * two;
    if twice.is_integer() {
        return match twice.to_integer() {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
    }
    let theta = std::f64::consts::PI * r.to_f64().unwrap_or(f64::NAN);
    (theta.cos(), theta.sin())
}

/// Integration frame `t = σ·u` for one segment.
#[derive(Clone, Copy)]
enum Frame {
    /// σ = π, ends are rationals.
    Pi { lo: Ratio<i64>, hi: Ratio<i64> },
    /// σ = 1.
    Plain { lo: f64, hi: f64 },
}

impl Frame {
    fn of(segment: &Segment) -> Self {
        let (lo, hi) = (segment.lo(), segment.hi());
        let aligned = |e: Exact| e.has_pi() || e.is_zero();
        if aligned(lo) && aligned(hi) {
            Frame::Pi {
                lo: lo.ratio(),
                hi: hi.ratio(),
            }
        } else {
            let (lo, hi) = segment.bounds();
            Frame::Plain { lo, hi }
        }
    }

    fn sigma(&self) -> f64 {
        match self {
            Frame::Pi { .. } => std::f64::consts::PI,
            Frame::Plain { .. } => 1.0,
        }
    }

    fn ends(&self) -> [f64; 2] {
        match *self {
            Frame::Pi { lo, hi } => [ratio_f64(lo), ratio_f64(hi)],
            Frame::Plain { lo, hi } => [lo, hi],
        }
    }

    /// `(cos(kσu), sin(kσu))` at both ends.
    fn kernel_trig(&self, k: u32) -> [(f64, f64); 2] {
        match *self {
            Frame::Pi { lo, hi } => {
                let at = |r: Ratio<i64>| match r.checked_mul(&Ratio::from_integer(k as i64)) {
                    Some(m) => cos_sin_pi(m),
                    None => {
                        let theta = std::f64::consts::PI * ratio_f64(r) * k as f64;
                        (theta.cos(), theta.sin())
                    }
                };
                [at(lo), at(hi)]
            }
            Frame::Plain { lo, hi } => {
                let k = k as f64;
                [((k * lo).cos(), (k * lo).sin()), ((k * hi).cos(), (k * hi).sin())]
            }
        }
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    if r.is_integer() {
        *r.numer() as f64
    } else {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

/// `∫ u^p (cos ωu, sin ωu) du` between the frame ends.
fn power_moments(p: u32, omega: f64, ends: [f64; 2], trig: [(f64, f64); 2]) -> (f64, f64) {
    if omega == 0.0 {
        let q = (p + 1) as f64;
        return ((ends[1].powi(p as i32 + 1) - ends[0].powi(p as i32 + 1)) / q, 0.0);
    }
    // ∫ u^p e^{iωu} du = e^{iωu} Σ_j (−1)^j p!/(p−j)! u^{p−j} (iω)^{−(j+1)}
    let antiderivative = |u: f64, (c, s): (f64, f64)| {
        let (mut fr, mut fi) = (0.0, 0.0);
        let mut falling = 1.0;
        for j in 0..=p {
            if j > 0 {
                falling *= (p - j + 1) as f64;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let mag = sign * falling * u.powi((p - j) as i32) / omega.powi(j as i32 + 1);
            // i^{−(j+1)}
            match (j + 1) % 4 {
                0 => fr += mag,
                1 => fi -= mag,
                2 => fr -= mag,
                _ => fi += mag,
            }
        }
        (c * fr - s * fi, s * fr + c * fi)
    };
    let (c1, s1) = antiderivative(ends[1], trig[1]);
    let (c0, s0) = antiderivative(ends[0], trig[0]);
    (c1 - c0, s1 - s0)
}

/// `∫ e^{βu} (cos ωu, sin ωu) du` between the frame ends.
fn exp_moments(beta: f64, omega: f64, ends: [f64; 2], trig: [(f64, f64); 2]) -> (f64, f64) {
    if beta == 0.0 && omega == 0.0 {
        return (ends[1] - ends[0], 0.0);
    }
    let d = beta * beta + omega * omega;
    let at = |u: f64, (c, s): (f64, f64)| {
        let e = (beta * u).exp();
        (e * (beta * c + omega * s) / d, e * (beta * s - omega * c) / d)
    };
    let (c1, s1) = at(ends[1], trig[1]);
    let (c0, s0) = at(ends[0], trig[0]);
    (c1 - c0, s1 - s0)
}

/// `∫ cos(λu + φ) du` and `∫ sin(λu + φ) du`.
fn shifted_trig_integrals(lambda: f64, phi: f64, ends: [f64; 2]) -> (f64, f64) {
    if lambda == 0.0 {
        let w = ends[1] - ends[0];
        return (w * phi.cos(), w * phi.sin());
    }
    let at = |u: f64| {
        let theta = lambda.mul_add(u, phi);
        (theta.sin() / lambda, -theta.cos() / lambda)
    };
    let (c1, s1) = at(ends[1]);
    let (c0, s0) = at(ends[0]);
    (c1 - c0, s1 - s0)
}

/// `(1/π) ∫ T(t) (cos kt, sin kt) dt` over one segment.
fn term_moments(term: &Term, frame: Frame, k: u32) -> (f64, f64) {
    let sigma = frame.sigma();
    let ends = frame.ends();
    let omega = k as f64 * sigma;
    let c = term.coefficient().to_f64();
    // (σ/π) from dt = σ du and the 1/π normalisation
    let scale = match frame {
        Frame::Pi { .. } => 1.0,
        Frame::Plain { .. } => std::f64::consts::FRAC_1_PI,
    };
    let (cm, sm) = match term.atom() {
        Atom::Power(p) => {
            let (cm, sm) = power_moments(p, omega, ends, frame.kernel_trig(k));
            let lift = sigma.powi(p as i32);
            (cm * lift, sm * lift)
        }
        Atom::Exp { rate } => exp_moments(rate.to_f64() * sigma, omega, ends, frame.kernel_trig(k)),
        Atom::Cos { freq, phase } | Atom::Sin { freq, phase } => {
            let nu = freq.to_f64() * sigma;
            let phi = phase.to_f64();
            // A = νu + φ, B = ωu
            let (sum_c, sum_s) = shifted_trig_integrals(nu + omega, phi, ends);
            let (diff_c, diff_s) = shifted_trig_integrals(nu - omega, phi, ends);
            if matches!(term.atom(), Atom::Cos { .. }) {
                // cos A cos B, cos A sin B
                (0.5 * (sum_c + diff_c), 0.5 * (sum_s - diff_s))
            } else {
                // sin A cos B, sin A sin B
                (0.5 * (sum_s + diff_s), 0.5 * (diff_c - sum_c))
            }
        }
    };
    (c * scale * cm, c * scale * sm)
}

/// `(a_k, b_k)` of `f` over its own domain, normalised by `1/π`.
pub fn moments(f: &PiecewiseFunction, k: u32) -> (f64, f64) {
    let mut a = 0.0;
    let mut b = 0.0;
    for segment in f.segments() {
        let frame = Frame::of(segment);
        for term in segment.terms() {
            let (cm, sm) = term_moments(term, frame, k);
            a += cm;
            b += sm;
        }
    }
    (a, b)
}
