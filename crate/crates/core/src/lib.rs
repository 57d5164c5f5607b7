//! Deterministic primality certificates for special integer families from
//! the arithmetic of elliptic curves and a genus-2 Jacobian.
//!
//! * [`classic`]: Lucas's theorem, Lucas-Lehmer and its Pell-conic picture.
//! * [`supersingular`]: `m*2^n - 1` via `y^2 = x^3 - (t^2 + 1)x`.
//! * [`cm`]: `p^2 * 16^n + 1` via complex multiplication on `30y^2 = x^3 - x`.
//! * [`genus2`]: `4*5^n - 1` via `sqrt(5)` acting on the Jacobian of
//!   `y^2 = x^5 + h`.
//! * [`oracle`]: independent primality and point-count oracles for tests.
//!
//! Every test returns a [`TestOutcome`]: a certificate of primality, a proof
//! of compositeness (often with a factor), or no verdict.

pub mod classic;
pub mod cm;
pub mod ec;
pub mod genus2;
pub mod oracle;
pub mod outcome;
pub mod ring;
pub mod supersingular;

pub use outcome::{CompositeReason, HypothesisError, NotCertifiedReason, TestOutcome, TestRun};
