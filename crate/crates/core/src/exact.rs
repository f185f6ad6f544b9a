//! Exact scalars of the form `p/q` or `p/q·π`.
//!
//! Breakpoints and term parameters are kept in this form so that a bound
//! written as `1pi` is the same value everywhere it appears, and converts to
//! the same `f64` every time.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exact {
    ratio: Ratio<i64>,
    pi: bool,
}

impl Exact {
    pub const ZERO: Exact = Exact {
        ratio: Ratio::new_raw(0, 1),
        pi: false,
    };

    pub fn rational(numer: i64, denom: i64) -> Self {
        Self::from_ratio(Ratio::new(numer, denom), false)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(n, 1)
    }

    /// `numer/denom · π`.
    pub fn pi_multiple(numer: i64, denom: i64) -> Self {
        Self::from_ratio(Ratio::new(numer, denom), true)
    }

    pub fn from_ratio(ratio: Ratio<i64>, pi: bool) -> Self {
        // zero carries no π so that `0` and `0pi` compare equal
        let pi = pi && !ratio.is_zero();
        Exact { ratio, pi }
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.ratio
    }

    pub fn has_pi(&self) -> bool {
        self.pi
    }

    pub fn is_zero(&self) -> bool {
        self.ratio.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.ratio.is_negative()
    }

    pub fn is_integer_valued(&self) -> bool {
        !self.pi && self.ratio.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        let r = if self.ratio.is_integer() {
            *self.ratio.numer() as f64
        } else {
            self.ratio.to_f64().unwrap_or(f64::NAN)
        };
        if self.pi {
            r * PI
        } else {
            r
        }
    }

    /// Ordering on the real line. Exact when both sides share the π flag.
    pub fn cmp_value(&self, other: &Exact) -> Ordering {
        // a zero on either side compares by sign alone
        if self.pi == other.pi || self.is_zero() || other.is_zero() {
            self.ratio.cmp(&other.ratio)
        } else {
            self.to_f64().partial_cmp(&other.to_f64()).unwrap_or(Ordering::Equal)
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.ratio.is_integer() {
            write!(f, "{}", self.ratio.numer())?;
        } else {
            write!(f, "{}/{}", self.ratio.numer(), self.ratio.denom())?;
        }
        if self.pi {
            f.write_str("pi")?;
        }
        Ok(())
    }
}

impl std::ops::Neg for Exact {
    type Output = Exact;

    fn neg(self) -> Exact {
        Exact {
            ratio: -self.ratio,
            pi: self.pi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_multiples_convert_consistently() {
        assert_eq!(Exact::pi_multiple(1, 1).to_f64(), PI);
        assert_eq!(Exact::pi_multiple(2, 1).to_f64(), 2.0 * PI);
        assert_eq!(Exact::pi_multiple(1, 2).to_f64(), 0.5 * PI);
        assert_eq!(Exact::pi_multiple(2, 4), Exact::pi_multiple(1, 2));
    }

    #[test]
    fn zero_has_no_pi() {
        assert_eq!(Exact::pi_multiple(0, 1), Exact::ZERO);
        assert_eq!(Exact::pi_multiple(0, 3).to_string(), "0");
    }

    #[test]
    fn display() {
        assert_eq!(Exact::pi_multiple(3, 2).to_string(), "3/2pi");
        assert_eq!(Exact::rational(-1, 3).to_string(), "-1/3");
        assert_eq!(Exact::integer(7).to_string(), "7");
        assert_eq!(Exact::pi_multiple(1, 1).to_string(), "1pi");
    }

    #[test]
    fn ordering_mixed() {
        let three = Exact::integer(3);
        let pi = Exact::pi_multiple(1, 1);
        assert_eq!(three.cmp_value(&pi), Ordering::Less);
        assert_eq!(Exact::ZERO.cmp_value(&pi), Ordering::Less);
        assert_eq!(pi.cmp_value(&Exact::pi_multiple(2, 1)), Ordering::Less);
    }
}
