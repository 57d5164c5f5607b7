//! The Jacobian of `y^2 = x^5 + h`, the real-multiplication endomorphism
//! `sqrt(5) = 2(zeta + zeta^4) + 1`, and the primality test for
//! `lambda_n = 4*5^n - 1` built on it.

mod closed_form;
mod endo;
mod lambda;
mod mumford;
pub mod oracle;
mod poly;

pub use closed_form::{sqrt5_closed_form, sqrt5_closed_form_translated, Sqrt5Maps};
pub use endo::{eta_action, sqrt5_action, zeta_twist, JacContext};
pub use lambda::{parse_divisor, test_lambda, test_lambda_run, RationalDivisor};
pub use mumford::{HyperellipticModel, MumfordDivisor};
pub use poly::{xgcd, Poly};

use num_bigint::BigUint;
use thiserror::Error;

use crate::ring::Obstruction;

/// `y^2 = x^5 + h` with `h != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Genus2Curve {
    h: i64,
}

impl Genus2Curve {
    pub fn new(h: i64) -> Result<Self, JacobianError> {
        if h == 0 {
            return Err(JacobianError::ZeroH);
        }
        Ok(Genus2Curve { h })
    }

    pub fn h(&self) -> i64 {
        self.h
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error("proper factor {0} of the modulus")]
    Factor(BigUint),
    #[error("nonzero non-unit in the extension ring")]
    NonUnit,
    #[error("division by zero inside Cantor's algorithm")]
    ZeroDenominator,
    #[error("eta action produced coefficients outside the base ring")]
    GaloisStabilityViolated,
    #[error("divisor outside the domain of the closed-form map")]
    DomainExcluded,
    #[error("h must be nonzero")]
    ZeroH,
    #[error("gcd(h, N) = {0}: the curve has bad reduction")]
    BadReduction(BigUint),
}

impl From<Obstruction> for JacobianError {
    fn from(o: Obstruction) -> Self {
        match o {
            Obstruction::Factor(g) => JacobianError::Factor(g),
            Obstruction::NonUnit => JacobianError::NonUnit,
            Obstruction::ZeroDenominator => JacobianError::ZeroDenominator,
        }
    }
}

/// Result of one Jacobian operation over a residue ring.
pub type StepResult<R> = Result<MumfordDivisor<R>, JacobianError>;

/// Divisor serialization: modulus and coefficient lists as decimal strings,
/// low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerializedDivisor {
    pub modulus: String,
    pub u: Vec<String>,
    pub v: Vec<String>,
}

impl SerializedDivisor {
    pub fn from_divisor(d: &MumfordDivisor<crate::ring::Residue>, modulus: &crate::ring::Modulus) -> Self {
        SerializedDivisor {
            modulus: modulus.value().to_string(),
            u: d.u().coeffs().iter().map(|c| c.value().to_string()).collect(),
            v: d.v().coeffs().iter().map(|c| c.value().to_string()).collect(),
        }
    }

    /// `{"modulus":"...","u":[...],"v":[...]}` without pulling in a JSON
    /// library.
    pub fn to_json(&self) -> String {
        let list = |xs: &[String]| xs.iter().map(|x| format!("\"{x}\"")).collect::<Vec<_>>().join(",");
        format!(
            "{{\"modulus\":\"{}\",\"u\":[{}],\"v\":[{}]}}",
            self.modulus,
            list(&self.u),
            list(&self.v)
        )
    }
}
