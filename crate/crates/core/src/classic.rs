//! Lucas's certificate theorem, the Lucas-Lehmer test, and the group law on
//! the Pell conic `x^2 - 3y^2 = 1` that explains the Lucas-Lehmer recurrence.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::outcome::{CompositeReason, NotCertifiedReason, TestOutcome};
use crate::ring::{is_prime_u64, Modulus, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicError {
    #[error("n must be at least 3")]
    TooSmall,
    #[error("{0} does not divide n - 1")]
    NotADivisor(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("factor list does not account for all of n - 1 (cofactor {0})")]
    IncompleteFactorization(BigUint),
    #[error("Lucas-Lehmer needs p > 2")]
    ExponentTooSmall,
    #[error("({0}, {1}) is not on x^2 - 3y^2 = 1")]
    NotOnConic(BigUint, BigUint),
}

/// Lucas's theorem: `a^(n-1) = 1` and `a^((n-1)/q) != 1` for every prime
/// `q | n - 1` proves `n` prime.
///
/// The caller supplies the distinct prime factors of `n - 1`; they are
/// checked for primality, divisibility and completeness.
pub fn lucas_certify(n: &BigUint, a: &BigUint, prime_factors: &[u64]) -> Result<TestOutcome, ClassicError> {
    if *n < BigUint::from(3u32) {
        return Err(ClassicError::TooSmall);
    }
    let nm1 = n - 1u32;
    let mut cofactor = nm1.clone();
    for &q in prime_factors {
        if !is_prime_u64(q) {
            return Err(ClassicError::NotPrime(q));
        }
        if !(&nm1 % q).is_zero() {
            return Err(ClassicError::NotADivisor(q));
        }
        while (&cofactor % q).is_zero() {
            cofactor /= q;
        }
    }
    if !cofactor.is_one() {
        return Err(ClassicError::IncompleteFactorization(cofactor));
    }

    let modulus = Modulus::new(n.clone()).expect("n >= 3");
    let base = modulus.residue(a);
    if !base.pow(&nm1).value().is_one() {
        return Ok(TestOutcome::composite(CompositeReason::FermatFailure));
    }
    for &q in prime_factors {
        if base.pow(&(&nm1 / q)).value().is_one() {
            return Ok(TestOutcome::NotCertified(NotCertifiedReason::NotPrimitiveRoot));
        }
    }
    Ok(TestOutcome::CertifiedPrime)
}

/// `M_p = 2^p - 1`.
pub fn mersenne(p: u64) -> BigUint {
    (BigUint::one() << p as usize) - 1u32
}

/// The Lucas-Lehmer residues `a_0 = 4, a_{i+1} = a_i^2 - 2 (mod M_p)` for
/// `i = 0..=p-2`.
pub fn lucas_lehmer_sequence(p: u64) -> Result<Vec<Residue>, ClassicError> {
    if p <= 2 {
        return Err(ClassicError::ExponentTooSmall);
    }
    let modulus = Modulus::new(mersenne(p)).expect("p > 2");
    let two = modulus.from_i64(2);
    let mut a = modulus.from_i64(4);
    let mut seq = Vec::with_capacity(p as usize - 1);
    seq.push(a.clone());
    for _ in 0..p - 2 {
        a = a.square().sub(&two);
        seq.push(a.clone());
    }
    Ok(seq)
}

/// `M_p` is prime iff `a_{p-2} = 0 (mod M_p)`.
pub fn lucas_lehmer(p: u64) -> Result<TestOutcome, ClassicError> {
    let seq = lucas_lehmer_sequence(p)?;
    Ok(if seq.last().is_some_and(Residue::is_zero) {
        TestOutcome::CertifiedPrime
    } else {
        TestOutcome::composite(CompositeReason::LucasLehmerResidueNonzero)
    })
}

/// A point on `x^2 - 3y^2 = 1` over `Z/N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellPoint {
    x: Residue,
    y: Residue,
}

impl PellPoint {
    pub fn new(x: Residue, y: Residue) -> Result<Self, ClassicError> {
        let lhs = x.square().sub(&y.square().mul_small(3));
        if !lhs.value().is_one() {
            return Err(ClassicError::NotOnConic(x.value().clone(), y.value().clone()));
        }
        Ok(PellPoint { x, y })
    }

    pub fn identity(modulus: &Modulus) -> Self {
        PellPoint {
            x: modulus.one(),
            y: modulus.zero(),
        }
    }

    pub fn x(&self) -> &Residue {
        &self.x
    }

    pub fn y(&self) -> &Residue {
        &self.y
    }

    /// `(x1, y1) + (x2, y2) = (x1 x2 + 3 y1 y2, x1 y2 + x2 y1)`.
    pub fn add(&self, other: &PellPoint) -> PellPoint {
        let x = self.x.mul(&other.x).add(&self.y.mul(&other.y).mul_small(3));
        let y = self.x.mul(&other.y).add(&other.x.mul(&self.y));
        let r = PellPoint { x, y };
        debug_assert!(PellPoint::new(r.x.clone(), r.y.clone()).is_ok());
        r
    }

    pub fn double(&self) -> PellPoint {
        self.add(self)
    }
}
