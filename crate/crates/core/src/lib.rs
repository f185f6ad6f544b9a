//! Numerical laboratory for Dirichlet-kernel Fourier partial sums.
//!
//! Functions are piecewise-smooth closed forms on a finite interval (see
//! [`funcdsl`] for the text format). On top of them the crate evaluates
//! Fourier coefficients and partial sums by several independent routes,
//! Dirichlet integrals and their limits, the Riemann–Lebesgue and cotangent
//! variants, and a finite and an infinite Poisson summation identity.

pub mod closed_form;
pub mod dirichlet;
pub mod error;
pub mod exact;
pub mod fourier;
pub mod funcdsl;
pub mod piecewise;
pub mod poisson;
pub mod quadrature;
pub mod report;

pub use error::{Error, Result};
pub use exact::Exact;
pub use funcdsl::{format_function, parse_corpus, parse_function, parse_scalar};
pub use piecewise::{Atom, PiecewiseFunction, Segment, Term};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
