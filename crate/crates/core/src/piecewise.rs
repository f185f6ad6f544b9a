//! Piecewise-smooth functions built from closed-form terms.
//!
//! Every segment is a finite sum of `c·x^k`, `c·e^{a x}`, `c·cos(a x + b)` and
//! `c·sin(a x + b)`, so values and one-sided limits at breakpoints come from
//! closed forms, never from numerical limiting.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::Exact;

pub const MAX_POWER: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `x^k`; `k = 0` is a constant.
    Power(u32),
    /// `e^{rate·x}`
    Exp { rate: Exact },
    /// `cos(freq·x + phase)`
    Cos { freq: Exact, phase: Exact },
    /// `sin(freq·x + phase)`
    Sin { freq: Exact, phase: Exact },
}

#[derive(Debug, Clone, Copy)]
pub struct Term {
    coefficient: Exact,
    atom: Atom,
    // f64 images of the exact parameters
    c: f64,
    p: f64,
    q: f64,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.coefficient == other.coefficient && self.atom == other.atom
    }
}

impl Term {
    pub fn new(coefficient: Exact, atom: Atom) -> Result<Self> {
        let (p, q) = match atom {
            Atom::Power(k) => {
                if k > MAX_POWER {
                    return Err(Error::UnsupportedExponent(k));
                }
                (k as f64, 0.0)
            }
            Atom::Exp { rate } => (rate.to_f64(), 0.0),
            Atom::Cos { freq, phase } | Atom::Sin { freq, phase } => (freq.to_f64(), phase.to_f64()),
        };
        let c = coefficient.to_f64();
        if !c.is_finite() || !p.is_finite() || !q.is_finite() {
            return Err(Error::Argument(format!(
                "term parameters must be finite: {coefficient} {atom:?}"
            )));
        }
        Ok(Term {
            coefficient,
            atom,
            c,
            p,
            q,
        })
    }

    pub fn constant(c: Exact) -> Self {
        Term::new(c, Atom::Power(0)).expect("constant term is always valid")
    }

    pub fn coefficient(&self) -> Exact {
        self.coefficient
    }

    pub fn atom(&self) -> Atom {
        self.atom
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let v = match self.atom {
            Atom::Power(0) => 1.0,
            Atom::Power(1) => x,
            Atom::Power(k) => x.powi(k as i32),
            Atom::Exp { .. } => (self.p * x).exp(),
            Atom::Cos { .. } => self.p.mul_add(x, self.q).cos(),
            Atom::Sin { .. } => self.p.mul_add(x, self.q).sin(),
        };
        self.c * v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    lo: Exact,
    hi: Exact,
    lo_f: f64,
    hi_f: f64,
    terms: Vec<Term>,
}

impl Segment {
    pub fn new(lo: Exact, hi: Exact, terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Argument("segment needs at least one term".into()));
        }
        if lo.cmp_value(&hi) != Ordering::Less {
            return Err(Error::Tiling(format!("empty interval [{lo}, {hi})")));
        }
        let (lo_f, hi_f) = (lo.to_f64(), hi.to_f64());
        if !(lo_f.is_finite() && hi_f.is_finite()) {
            return Err(Error::Argument(format!("non-finite bound in [{lo}, {hi})")));
        }
        Ok(Segment {
            lo,
            hi,
            lo_f,
            hi_f,
            terms,
        })
    }

    pub fn lo(&self) -> Exact {
        self.lo
    }

    pub fn hi(&self) -> Exact {
        self.hi
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lo_f, self.hi_f)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Closed-form value, valid on the closed interval.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }
}

/// A function on `[x_lo, x_hi]` tiled by half-open segments; the last segment
/// also owns `x_hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFunction {
    segments: Vec<Segment>,
}

impl PiecewiseFunction {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Tiling("a function needs at least one segment".into()));
        }
        for pair in segments.windows(2) {
            let (left, right) = (&pair[0], &pair[1]);
            match left.hi.cmp_value(&right.lo) {
                Ordering::Equal if left.hi == right.lo => {}
                Ordering::Less => return Err(Error::Tiling(format!("gap between {} and {}", left.hi, right.lo))),
                _ => {
                    return Err(Error::Tiling(format!(
                        "overlap: segment ending at {} meets segment starting at {}",
                        left.hi, right.lo
                    )))
                }
            }
        }
        Ok(PiecewiseFunction { segments })
    }

    /// One segment on `[lo, hi]`.
    pub fn single(lo: Exact, hi: Exact, terms: Vec<Term>) -> Result<Self> {
        Self::new(vec![Segment::new(lo, hi, terms)?])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.segments[0].lo_f, self.segments[self.segments.len() - 1].hi_f)
    }

    pub fn domain_exact(&self) -> (Exact, Exact) {
        (self.segments[0].lo, self.segments[self.segments.len() - 1].hi)
    }

    /// Interior breakpoints in ascending order.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments[1..].iter().map(|s| s.lo_f).collect()
    }

    pub fn has_domain(&self, lo: f64, hi: f64) -> bool {
        let (a, b) = self.domain();
        a == lo && b == hi
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if x >= lo && x <= hi {
            Ok(())
        } else {
            Err(Error::Domain { x, lo, hi })
        }
    }

    fn owner(&self, x: f64) -> &Segment {
        let idx = self.segments.partition_point(|s| s.hi_f <= x);
        &self.segments[idx.min(self.segments.len() - 1)]
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.owner(x).eval(x))
    }

    /// Evaluation for quadrature nodes that may sit an ulp outside the domain.
    #[inline]
    pub(crate) fn eval_clamped(&self, x: f64) -> f64 {
        let (lo, hi) = self.domain();
        let x = x.clamp(lo, hi);
        self.owner(x).eval(x)
    }

    /// `(f(x0−0), f(x0+0))`; the left limit is absent at `x_lo` and the right
    /// one at `x_hi`.
    pub fn one_sided_limits(&self, x0: f64) -> Result<(Option<f64>, Option<f64>)> {
        self.check_domain(x0)?;
        let (lo, hi) = self.domain();
        let left = (x0 > lo).then(|| {
            let idx = self.segments.partition_point(|s| s.lo_f < x0);
            self.segments[idx - 1].eval(x0)
        });
        let right = (x0 < hi).then(|| self.owner(x0).eval(x0));
        Ok((left, right))
    }

    /// `f(x0+0)`, failing at the right end of the domain.
    pub fn right_limit(&self, x0: f64) -> Result<f64> {
        self.one_sided_limits(x0)?.1.ok_or_else(|| Error::Domain {
            x: x0,
            lo: self.domain().0,
            hi: self.domain().1,
        })
    }

    /// `f(x0−0)`, failing at the left end of the domain.
    pub fn left_limit(&self, x0: f64) -> Result<f64> {
        self.one_sided_limits(x0)?.0.ok_or_else(|| Error::Domain {
            x: x0,
            lo: self.domain().0,
            hi: self.domain().1,
        })
    }

    /// Interior breakpoints in the open interval `(a, b)` where the one-sided
    /// limits disagree.
    pub fn jumps_in(&self, a: f64, b: f64) -> Vec<f64> {
        self.breakpoints()
            .into_iter()
            .filter(|&c| c > a && c < b)
            .filter(|&c| match self.one_sided_limits(c) {
                Ok((Some(l), Some(r))) => (l - r).abs() > 1e-12 * (1.0 + l.abs().max(r.abs())),
                _ => false,
            })
            .collect()
    }

    pub fn periodic_extension(&self, period: f64) -> Result<PeriodicView<'_>> {
        let (lo, hi) = self.domain();
        let width = hi - lo;
        if !(period.is_finite() && (period - width).abs() <= 1e-12 * width.abs().max(1.0)) {
            return Err(Error::Argument(format!(
                "period {period} does not match domain width {width}"
            )));
        }
        Ok(PeriodicView {
            f: self,
            lo,
            period: width,
        })
    }
}

/// Read-only 2π-style periodic view `g(x) = f(x_lo + ((x − x_lo) mod p))`.
#[derive(Debug, Clone, Copy)]
pub struct PeriodicView<'a> {
    f: &'a PiecewiseFunction,
    lo: f64,
    period: f64,
}

impl PeriodicView<'_> {
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let mut r = (x - self.lo).rem_euclid(self.period);
        if r >= self.period {
            r = 0.0;
        }
        self.f.eval_clamped(self.lo + r)
    }

    pub fn period(&self) -> f64 {
        self.period
    }
}
