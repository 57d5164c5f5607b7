//! Primality of `S = p^2 * 16^n + 1` through complex multiplication by
//! `Z[i]` on `E_30: 30y^2 = x^3 - x`.
//!
//! Everything happens in `Z/S`, where `i = p*4^n` squares to `-1`. The map
//! `x -> i(1 - x^2)/(2x)` is the x-coordinate of multiplication by `1 + i`;
//! for prime `S` the point `Q = p(5, 2)` reaches the 2-torsion point `(0, 0)`
//! after exactly `4n - 1` applications.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::ec::{Point, Weierstrass};
use crate::oracle::{enumerate_curve_points, isqrt_exact, is_prime_small, CurveSpec};
use crate::outcome::{CompositeReason, HypothesisError, TestOutcome, TestRun};
use crate::ring::{is_prime_u64, ExactRational, InverseOutcome, Modulus, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CmError {
    #[error("{0} is not a prime congruent to 1 mod 4 below 10^4")]
    BadPrime(u64),
    #[error("point count {count} differs from q + 1 - 2*alpha = {expected}")]
    CountMismatch { count: u64, expected: i64 },
}

/// `S = p^2 * 16^n + 1` together with the square root `i = p*4^n` of `-1`.
#[derive(Debug, Clone)]
pub struct CmContext {
    p: u64,
    n: u64,
    modulus: Modulus,
    i_val: Residue,
}

/// `p^2 * 16^n + 1`.
pub fn s_number(p: u64, n: u64) -> BigUint {
    ((BigUint::from(p) * BigUint::from(p)) << (4 * n) as usize) + 1u32
}

impl CmContext {
    /// Checks `p` prime, `p = +-1 mod 10` and `p < 2^n`.
    pub fn new(p: u64, n: u64) -> Result<Self, HypothesisError> {
        if !is_prime_u64(p) {
            return Err(HypothesisError::violated(format!("p = {p} is not prime")));
        }
        if p % 10 != 1 && p % 10 != 9 {
            return Err(HypothesisError::violated(format!("p = {p} is not +-1 mod 10")));
        }
        if n < 64 && (1u64 << n) <= p {
            return Err(HypothesisError::violated(format!("p < 2^n fails for p = {p}, n = {n}")));
        }
        Ok(Self::unchecked(p, n))
    }

    /// No hypothesis checks; used by tests that explore outside the theorem.
    pub fn unchecked(p: u64, n: u64) -> Self {
        let modulus = Modulus::new(s_number(p, n)).expect("S >= 2");
        let i_val = modulus.residue(&(BigUint::from(p) << (2 * n) as usize));
        assert!(i_val.square().add(&modulus.one()).is_zero(), "(p 4^n)^2 = -1 mod S");
        CmContext { p, n, modulus, i_val }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn i_val(&self) -> &Residue {
        &self.i_val
    }
}

fn q_x_cache() -> &'static RwLock<HashMap<u64, Arc<ExactRational>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<ExactRational>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// x-coordinate of `p(5, 2)` on `E_30`, computed as `p(150, 1800)` on the
/// isomorphic `y^2 = x^3 - 900x` and divided by 30. Cached per `p`.
pub fn compute_q_x(p: u64) -> Arc<ExactRational> {
    if let Some(x) = q_x_cache().read().expect("cache lock").get(&p) {
        return x.clone();
    }
    let curve = Weierstrass::new(ExactRational::from_integer(BigInt::from(-900)), ExactRational::zero());
    let base = Point::affine(
        ExactRational::from_integer(BigInt::from(150)),
        ExactRational::from_integer(BigInt::from(1800)),
    );
    let multiple = curve.mul(&BigUint::from(p), &base).expect("the rationals are a field");
    let x = match multiple {
        Point::Affine { x, .. } => x / ExactRational::from_integer(BigInt::from(30)),
        Point::Infinity => panic!("(5, 2) has infinite order on E_30"),
    };
    let x = Arc::new(x);
    q_x_cache().write().expect("cache lock").insert(p, x.clone());
    x
}

/// `x -> i(1 - x^2)/(2x)`.
pub fn one_plus_i_step(x: &Residue, ctx: &CmContext) -> InverseOutcome<Residue> {
    match x.mul_small(2).inv_witnessed() {
        InverseOutcome::Inverse(inv) => {
            InverseOutcome::Inverse(ctx.i_val.mul(&ctx.modulus.one().sub(&x.square())).mul(&inv))
        }
        other => other,
    }
}

pub fn test_s(p: u64, n: u64) -> Result<TestOutcome, HypothesisError> {
    test_s_run(p, n, false).map(|r| r.outcome)
}

/// Run the test on `S = p^2 16^n + 1`, optionally recording every `x_j`.
pub fn test_s_run(p: u64, n: u64, trace: bool) -> Result<TestRun, HypothesisError> {
    let ctx = CmContext::new(p, n)?;
    Ok(run_with_context(&ctx, trace))
}

pub fn run_with_context(ctx: &CmContext, trace: bool) -> TestRun {
    let mut log = Vec::new();
    let mut x = match ctx.modulus.reduce_rational(&compute_q_x(ctx.p)) {
        InverseOutcome::Inverse(x) => x,
        InverseOutcome::ProperFactor(g) => return TestRun::new(TestOutcome::factor(g), 0, log),
        _ => return TestRun::new(TestOutcome::composite(CompositeReason::PointAtInfinity), 0, log),
    };
    if trace {
        log.push(x.to_string());
    }
    let last = 4 * ctx.n - 1;
    for j in 1..=last {
        x = match one_plus_i_step(&x, ctx) {
            InverseOutcome::Inverse(next) => next,
            InverseOutcome::ProperFactor(g) => return TestRun::new(TestOutcome::factor(g), j - 1, log),
            _ => {
                return TestRun::new(
                    TestOutcome::composite(CompositeReason::EarlyTorsion { step: j - 1 }),
                    j - 1,
                    log,
                )
            }
        };
        if trace {
            log.push(x.to_string());
        }
    }
    let outcome = if x.is_zero() {
        TestOutcome::CertifiedPrime
    } else {
        TestOutcome::composite(CompositeReason::FinalTermNonzero)
    };
    TestRun::new(outcome, last, log)
}

/// `(count, alpha)` for `y^2 = x^3 - x` over `F_q`, `q = 1 mod 4`, where
/// `q = alpha^2 + beta^2` with `alpha` odd, `alpha = 1 mod 4` if
/// `q = 1 mod 8` and `alpha = 3 mod 4` otherwise. Fails unless the
/// enumerated count equals `q + 1 - 2*alpha`.
pub fn gauss_count_check(q: u64) -> Result<(u64, i64), CmError> {
    if q > 10_000 || q % 4 != 1 || !is_prime_small(q) {
        return Err(CmError::BadPrime(q));
    }
    let want = if q % 8 == 1 { 1 } else { 3 };
    let mut alpha = None;
    let mut a = 1i64;
    while a * a < q as i64 {
        if isqrt_exact(q - (a * a) as u64).is_some() {
            for cand in [a, -a] {
                if cand.rem_euclid(4) == want {
                    alpha = Some(cand);
                }
            }
        }
        a += 2;
    }
    let alpha = alpha.expect("q = 1 mod 4 is a sum of two squares with one odd");
    let count = enumerate_curve_points(q, &CurveSpec::weierstrass(-1, 0))
        .expect("q checked above")
        .count;
    let expected = q as i64 + 1 - 2 * alpha;
    if count as i64 != expected {
        return Err(CmError::CountMismatch { count, expected });
    }
    Ok((count, alpha))
}

/// Whether `(5, 2)` lies in `(1 + i)E_30(F_q)` for a prime `q = 1 mod 4`
/// in which 30 is a square (so `E_30` is isomorphic to `y^2 = x^3 - x`).
///
/// Returns `None` when the hypotheses on `q` fail.
pub fn five_two_in_image_of_one_plus_i(q: u64) -> Option<bool> {
    use crate::oracle::{mulmod, powmod};
    if q % 4 != 1 || !is_prime_small(q) || q <= 5 {
        return None;
    }
    let thirty = 30 % q;
    if powmod(thirty, (q - 1) / 2, q) != 1 {
        return None;
    }
    let i = (2..q).map(|g| powmod(g, (q - 1) / 4, q)).find(|&r| mulmod(r, r, q) == q - 1)?;
    // 30y^2 = x^3 - x. (1 + i)R = R + [i]R with [i](x, y) = (-x, i*y).
    let pts = enumerate_curve_points(q, &CurveSpec { y2_coeff: 30, f: vec![0, q as i64 - 1, 0, 1] }).ok()?;
    let inv = |v: u64| powmod(v, q - 2, q);
    let add = |p1: Option<(u64, u64)>, p2: Option<(u64, u64)>| -> Option<(u64, u64)> {
        let ((x1, y1), (x2, y2)) = match (p1, p2) {
            (None, _) => return p2,
            (_, None) => return p1,
            (Some(a), Some(b)) => (a, b),
        };
        // On 30y^2 = x^3 - x the slope l satisfies x3 = 30 l^2 - x1 - x2.
        let l = if x1 != x2 {
            mulmod((y2 + q - y1) % q, inv((x2 + q - x1) % q), q)
        } else if (y1 + y2) % q == 0 {
            return None;
        } else {
            let num = (3 * mulmod(x1, x1, q) + q - 1) % q;
            mulmod(num, inv(mulmod(60, y1, q)), q)
        };
        let x3 = (mulmod(thirty, mulmod(l, l, q), q) + 2 * q - x1 - x2) % q;
        let y3 = (mulmod(l, (x1 + q - x3) % q, q) + q - y1) % q;
        Some((x3, y3))
    };
    let target = Some((5 % q, 2 % q));
    Some(pts.points.iter().any(|&(x, y)| {
        let r = Some((x, y));
        let ir = Some(((q - x) % q, mulmod(i, y, q)));
        add(r, ir) == target
    }))
}
