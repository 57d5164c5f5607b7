use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

/// Why a candidate was proven composite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompositeReason {
    /// A non-invertible element exposed `gcd(x, N)`.
    FactorFound,
    /// Small-prime residue table (`3` or `5` divides the candidate).
    SmallDivisor(u32),
    /// A Fermat-type congruence `a^(N-1) = 1` failed.
    FermatFailure,
    LucasLehmerResidueNonzero,
    /// A recurrence term could not be formed because its denominator was zero.
    UndefinedTerm { step: u64 },
    /// The final term of the recurrence was not the expected 2-torsion value.
    FinalTermNonzero,
    /// The iteration hit the 2-torsion point before the last step.
    EarlyTorsion { step: u64 },
    /// The multiple of the base point collapsed to the point at infinity.
    PointAtInfinity,
    /// A nonzero element of `(Z/N)[zeta]` has no inverse, which cannot
    /// happen when `N = 4*5^n - 1` is prime.
    ExtensionZeroDivisor,
}

impl fmt::Display for CompositeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositeReason::FactorFound => write!(f, "non-invertible denominator exposed a factor"),
            CompositeReason::SmallDivisor(p) => write!(f, "divisible by {p} (residue table)"),
            CompositeReason::FermatFailure => write!(f, "a^(n-1) != 1"),
            CompositeReason::LucasLehmerResidueNonzero => write!(f, "Lucas-Lehmer residue nonzero"),
            CompositeReason::UndefinedTerm { step } => write!(f, "term {step} undefined (zero denominator)"),
            CompositeReason::FinalTermNonzero => write!(f, "final term is not 0"),
            CompositeReason::EarlyTorsion { step } => write!(f, "term {step} is 0 before the last step"),
            CompositeReason::PointAtInfinity => write!(f, "base multiple is the point at infinity"),
            CompositeReason::ExtensionZeroDivisor => write!(f, "zero divisor in Z/N[zeta]"),
        }
    }
}

/// Why a one-directional test stopped without a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotCertifiedReason {
    NotPrimitiveRoot,
    /// `D_j` reached the identity at step `j <= 2n - 1`.
    EarlyIdentity { step: u64 },
    /// `D_{2n}` is not the identity.
    NoIdentityAtEnd,
    /// The chosen divisor has a denominator divisible by the candidate.
    DivisorDoesNotReduce,
    /// No twist parameter found in the search window.
    NoTwistParameter,
}

impl fmt::Display for NotCertifiedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotCertifiedReason::NotPrimitiveRoot => write!(f, "a is not a primitive root"),
            NotCertifiedReason::EarlyIdentity { step } => write!(f, "D_{step} is the identity before step 2n"),
            NotCertifiedReason::NoIdentityAtEnd => write!(f, "D_2n is not the identity"),
            NotCertifiedReason::DivisorDoesNotReduce => write!(f, "divisor does not reduce modulo N"),
            NotCertifiedReason::NoTwistParameter => write!(f, "no twist parameter t found"),
        }
    }
}

/// The tri-state verdict of every test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestOutcome {
    CertifiedPrime,
    CompositeWitness {
        /// A proper factor `1 < g < N`, when one was exposed.
        factor: Option<BigUint>,
        reason: CompositeReason,
    },
    NotCertified(NotCertifiedReason),
}

impl TestOutcome {
    pub fn composite(reason: CompositeReason) -> Self {
        TestOutcome::CompositeWitness { factor: None, reason }
    }

    pub fn factor(g: BigUint) -> Self {
        TestOutcome::CompositeWitness {
            factor: Some(g),
            reason: CompositeReason::FactorFound,
        }
    }

    pub fn is_certified_prime(&self) -> bool {
        matches!(self, TestOutcome::CertifiedPrime)
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, TestOutcome::CompositeWitness { .. })
    }

    pub fn witness(&self) -> Option<&BigUint> {
        match self {
            TestOutcome::CompositeWitness { factor, .. } => factor.as_ref(),
            _ => None,
        }
    }

    /// Stable outcome label: `certified_prime`, `composite` or `not_certified`.
    pub fn label(&self) -> &'static str {
        match self {
            TestOutcome::CertifiedPrime => "certified_prime",
            TestOutcome::CompositeWitness { .. } => "composite",
            TestOutcome::NotCertified(_) => "not_certified",
        }
    }

    pub fn reason(&self) -> Option<String> {
        match self {
            TestOutcome::CertifiedPrime => None,
            TestOutcome::CompositeWitness { reason, .. } => Some(reason.to_string()),
            TestOutcome::NotCertified(r) => Some(r.to_string()),
        }
    }
}

impl fmt::Display for TestOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestOutcome::CertifiedPrime => write!(f, "certified_prime"),
            TestOutcome::CompositeWitness { factor: Some(g), reason } => write!(f, "composite ({reason}; factor {g})"),
            TestOutcome::CompositeWitness { factor: None, reason } => write!(f, "composite ({reason})"),
            TestOutcome::NotCertified(r) => write!(f, "not_certified ({r})"),
        }
    }
}

/// A test's verdict together with how far the recurrence got and,
/// optionally, the sequence of terms it produced.
#[derive(Debug, Clone)]
pub struct TestRun {
    pub outcome: TestOutcome,
    pub steps: u64,
    pub trace: Vec<String>,
}

impl TestRun {
    pub(crate) fn new(outcome: TestOutcome, steps: u64, trace: Vec<String>) -> Self {
        TestRun { outcome, steps, trace }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("hypothesis violated: {0}")]
    Violated(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl HypothesisError {
    pub(crate) fn violated(msg: impl Into<String>) -> Self {
        HypothesisError::Violated(msg.into())
    }
}
