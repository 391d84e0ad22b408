//! Configurable-precision toolkit for the Riemann zeta / Dirichlet eta functions.
//!
//! The crate provides:
//!
//! * a precision context and arbitrary-precision complex arithmetic on top of MPFR
//!   ([`PrecisionContext`], [`Complex`]);
//! * a complex gamma function with a log variant ([`gamma::gamma`], [`gamma::lgamma`]);
//! * two independent reference evaluators for eta/zeta — an accelerated alternating
//!   series ([`refs::eta_ref`], [`refs::zeta_ref`]) and an adaptive double-exponential
//!   quadrature ([`quad::zeta_quad_oracle`]);
//! * the coefficient sequences chi/psi with cached tables ([`chi`]);
//! * every series scheme exposed by the CLI: plain Dirichlet partial sums, the
//!   binomial/interpolation family, the generalized Euler product, the fast
//!   periodic-coefficient schemes and their exactly-solved combinations
//!   ([`schemes`], [`euler`], [`fast`]);
//! * the Melzak transform, its admissibility residual, and the factorial identities
//!   that produce the all-positive coefficient decomposition ([`melzak`]);
//! * critical-line root machinery for symmetrized factorials: closed-form and
//!   arctan-sum root solving, combined-polynomial roots, shift extraction,
//!   interlacing reports, and the reconstruction of eta(s)+eta(1-s) from quadratic
//!   factors ([`symfact`], [`shifts`], [`interlace`]);
//! * seeded verification suites used by the CLI `verify` subcommand ([`verify`]).
//!
//! All public operations are pure functions of their inputs and the context; the
//! cached tables ([`chi::ChiTable`], [`chi::PsiTable`], [`euler::PrimeList`]) are
//! build-once/read-many values that are safe to share across threads.

pub mod chi;
pub mod complex;
pub mod error;
pub mod euler;
pub mod eval;
pub mod fast;
pub mod functional;
pub mod gamma;
pub mod interlace;
pub mod melzak;
pub mod precision;
pub mod quad;
pub mod refs;
pub mod schemes;
pub mod shifts;
pub mod symfact;
pub mod verify;

pub use complex::Complex;
pub use error::Error;
pub use eval::EvalResult;
pub use precision::PrecisionContext;

/// Convenience alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;
