//! Exact enumeration and rigorous bound verification for self-avoiding walks
//! and self-avoiding bridges on the d-dimensional hypercubic lattice.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`walk`] — lattice geometry and the SAW/SAB predicates,
//! * [`census`] — exact counts `c_n`, `b_n`, `b_{n,h}` up to a length cutoff,
//!   with an unpruned brute-force oracle and a checksummed file format,
//! * [`genfun`] — truncated generating functions, geometric tail bounds, the
//!   two-sided bracket for the connective constant, and Fekete-rate tables,
//! * [`bounds`] — sub-ballisticity rate models and the quantitative
//!   `phi -> Phi -> psi -> Psi` pipeline yielding log-bounds on `c_n`,
//! * [`verify`] — a three-valued inequality harness producing machine-readable
//!   reports.
//!
//! All counts are exact big integers; series evaluations are exact rationals;
//! anything transcendental goes through [`interval::EvalValue`] enclosures so
//! that a verdict of "holds" or "fails" can never be an artifact of rounding.

pub mod bounds;
pub mod census;
pub mod genfun;
pub mod interval;
pub mod verify;
pub mod walk;

/// Version string stamped into reports.
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
