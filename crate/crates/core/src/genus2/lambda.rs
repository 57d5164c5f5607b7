//! Primality of `lambda_n = 4*5^n - 1` through the action of `sqrt(5)` on the
//! Jacobian of `y^2 = x^5 + h`.
//!
//! If `lambda_n` is prime the Jacobian over `F_lambda` is
//! `(Z/4*5^n)^2`, on which `4J` is a module over `Z[sqrt5]/(sqrt5^(2n))`.
//! Starting from `D_0 = 4F` and applying `sqrt(5)` reaches the identity
//! after exactly `2n` steps when `F` is not itself divisible by `sqrt(5)`;
//! seeing that behavior modulo `lambda_n` proves primality.

use num_bigint::BigInt;

use super::{
    sqrt5_action, HyperellipticModel, JacContext, JacobianError, MumfordDivisor, Poly, SerializedDivisor,
};
use crate::outcome::{CompositeReason, HypothesisError, NotCertifiedReason, TestOutcome, TestRun};
use crate::ring::{ExactRational, InverseOutcome, Residue};

/// A divisor over the rationals.
pub type RationalDivisor = MumfordDivisor<ExactRational>;

fn parse_rational(s: &str) -> Result<ExactRational, String> {
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| format!("bad number {t:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err("zero denominator".into());
            }
            Ok(ExactRational::new(parse_int(n)?, d))
        }
        None => Ok(ExactRational::from_integer(parse_int(s)?)),
    }
}

/// Parse a polynomial in `x` such as `x^2 - 3/2*x + 7`.
fn parse_x_poly(text: &str) -> Result<Poly<ExactRational>, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut coeffs: Vec<ExactRational> = Vec::new();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let (coeff, power) = match body.find('x') {
            None => (parse_rational(body)?, 0usize),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let coeff = if head.is_empty() {
                    ExactRational::from_integer(1.into())
                } else {
                    parse_rational(head)?
                };
                let tail = &body[pos + 1..];
                let power = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| format!("bad power in {term:?}"))?
                };
                (coeff, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, ExactRational::from_integer(0.into()));
        }
        let signed = if sign < 0 { -coeff } else { coeff };
        coeffs[power] += signed;
    }
    Ok(Poly::new(coeffs))
}

/// Parse `"u;v"`, e.g. `"x+1;3"` for `<x + 1, 3>`. The pair is not checked
/// against any curve here.
pub fn parse_divisor(text: &str) -> Result<RationalDivisor, String> {
    let (u, v) = text.split_once(';').ok_or("expected \"u;v\"")?;
    let u = parse_x_poly(u)?;
    let v = if v.trim() == "0" { Poly::zero() } else { parse_x_poly(v)? };
    if !u.is_monic() {
        return Err("u must be monic".into());
    }
    Ok(MumfordDivisor::from_parts(u, v))
}

fn failure_outcome(err: JacobianError) -> Result<TestOutcome, HypothesisError> {
    match err {
        JacobianError::Factor(g) => Ok(TestOutcome::factor(g)),
        JacobianError::NonUnit => Ok(TestOutcome::composite(CompositeReason::ExtensionZeroDivisor)),
        other => Err(HypothesisError::Internal(other.to_string())),
    }
}

pub fn test_lambda(n: u64, h: i64, f: &RationalDivisor) -> Result<TestOutcome, HypothesisError> {
    test_lambda_run(n, h, f, false).map(|r| r.outcome)
}

/// Run the test on `lambda_n` with starting divisor `F`, optionally
/// recording every `D_i` as serialized JSON.
pub fn test_lambda_run(n: u64, h: i64, f: &RationalDivisor, trace: bool) -> Result<TestRun, HypothesisError> {
    if n <= 1 || n % 2 == 0 {
        return Err(HypothesisError::violated(format!("n must be odd and > 1, got {n}")));
    }
    let ctx = JacContext::for_lambda(n, h).map_err(|e| HypothesisError::violated(e.to_string()))?;
    let over_q = HyperellipticModel::quintic(ExactRational::from_integer(h.into()));
    if !over_q.is_valid(f) {
        return Err(HypothesisError::violated("F is not a divisor on y^2 = x^5 + h"));
    }
    let md = ctx.modulus().clone();
    let mut log = Vec::new();
    let record = |d: &MumfordDivisor<Residue>, log: &mut Vec<String>| {
        if trace {
            log.push(SerializedDivisor::from_divisor(d, &md).to_json());
        }
    };

    let mut reduced = Vec::new();
    for c in f.u().coeffs().iter().chain(f.v().coeffs()) {
        match md.reduce_rational(c) {
            InverseOutcome::Inverse(r) => reduced.push(r),
            InverseOutcome::ProperFactor(g) => return Ok(TestRun::new(TestOutcome::factor(g), 0, log)),
            _ => {
                return Ok(TestRun::new(
                    TestOutcome::NotCertified(NotCertifiedReason::DivisorDoesNotReduce),
                    0,
                    log,
                ))
            }
        }
    }
    let split = f.u().coeffs().len();
    let f_bar = MumfordDivisor::from_parts(
        Poly::new(reduced[..split].to_vec()),
        Poly::new(reduced[split..].to_vec()),
    );
    if !ctx.base().is_valid(&f_bar) {
        return Ok(TestRun::new(
            TestOutcome::NotCertified(NotCertifiedReason::DivisorDoesNotReduce),
            0,
            log,
        ));
    }

    let mut d = match ctx.base().mul_u64(4, &f_bar) {
        Ok(d) => d,
        Err(e) => return failure_outcome(e.into()).map(|o| TestRun::new(o, 0, Vec::new())),
    };
    record(&d, &mut log);
    if d.is_identity() {
        return Ok(TestRun::new(
            TestOutcome::NotCertified(NotCertifiedReason::EarlyIdentity { step: 0 }),
            0,
            log,
        ));
    }
    let last = 2 * n;
    for i in 1..=last {
        d = match sqrt5_action(&d, &ctx) {
            Ok(next) => next,
            Err(e) => return failure_outcome(e).map(|o| TestRun::new(o, i - 1, log)),
        };
        record(&d, &mut log);
        if d.is_identity() && i < last {
            return Ok(TestRun::new(
                TestOutcome::NotCertified(NotCertifiedReason::EarlyIdentity { step: i }),
                i,
                log,
            ));
        }
    }
    let outcome = if d.is_identity() {
        TestOutcome::CertifiedPrime
    } else {
        TestOutcome::NotCertified(NotCertifiedReason::NoIdentityAtEnd)
    };
    Ok(TestRun::new(outcome, last, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_f() -> RationalDivisor {
        parse_divisor("x+1;3").unwrap()
    }

    #[test]
    fn parse_examples() {
        let d = base_f();
        assert_eq!(d.u().degree(), Some(1));
        assert_eq!(d.v().coeffs(), &[ExactRational::from_integer(3.into())][..]);
        let e = parse_divisor("x^2 - 3/2*x + 7; 2x - 1").unwrap();
        assert_eq!(e.u().coeffs()[1], ExactRational::new((-3).into(), 2.into()));
        assert_eq!(e.v().coeffs()[1], ExactRational::from_integer(2.into()));
        assert!(parse_divisor("2x+1;3").is_err());
        assert!(parse_divisor("x+1").is_err());
    }

    #[test]
    fn hypotheses() {
        assert!(test_lambda(4, 10, &base_f()).is_err());
        assert!(test_lambda(1, 10, &base_f()).is_err());
        assert!(test_lambda(3, 499, &base_f()).is_err());
        assert!(test_lambda(3, 11, &base_f()).is_err());
    }

    #[test]
    fn small_examples() {
        assert_eq!(test_lambda(3, 10, &base_f()).unwrap(), TestOutcome::CertifiedPrime);
        assert!(!test_lambda(5, 10, &base_f()).unwrap().is_certified_prime());
        assert_eq!(test_lambda(9, 10, &base_f()).unwrap(), TestOutcome::CertifiedPrime);
    }

    #[test]
    fn trace_records_every_divisor() {
        let run = test_lambda_run(3, 10, &base_f(), true).unwrap();
        assert_eq!(run.steps, 6);
        assert_eq!(run.trace.len(), 7);
        assert!(run.trace[6].contains("\"u\":[\"1\"]"));
    }
}
