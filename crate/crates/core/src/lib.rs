//! Exact machinery behind Niven-style irrationality arguments.
//!
//! * [`bigmath`]: GMP-backed integers and rationals, certified enclosures of
//!   `e^x`, `sin`, `cos` and `pi`.
//! * [`poly`]: dense integer and rational polynomials.
//! * [`foperator`]: the alternating-derivative sums `F` and the exact
//!   integral identities they give for `f(x) e^x` and `f(x) sin x`.
//! * [`legendre`]: shifted Legendre polynomials built three ways, inner
//!   products, and the coefficient-decay bound for `e^x`.
//! * [`witness`]: contradiction certificates for `e` and for rational
//!   candidates of `pi`, together with the minimal-`n` solvers.
//! * [`approx`]: the rational approximations to `e^r` that fall out of the
//!   integral identity.

pub mod approx;
pub mod bigmath;
pub mod error;
pub mod foperator;
pub mod legendre;
pub mod poly;
mod search;
pub mod witness;

pub use bigmath::{Enclosure, Integer, Rational};
pub use error::{Error, Result};
