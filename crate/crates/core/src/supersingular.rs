//! Primality of `A = m*2^n - 1` through the supersingular curves
//! `E_t: y^2 = x^3 - (t^2 + 1)x`.
//!
//! For prime `A` the point `(-1, t)` generates a cyclic group of order
//! `A + 1 = m*2^n` that it is not twice of anything, so doubling `m(-1, t)`
//! `n - 1` times lands on the 2-torsion point `(0, 0)`. Conversely that
//! behavior modulo `A` forces `A` to be prime.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::ec::{Point, Weierstrass};
use crate::oracle::{enumerate_curve_points, is_prime_small, CurveSpec};
use crate::outcome::{CompositeReason, HypothesisError, NotCertifiedReason, TestOutcome, TestRun};
use crate::ring::{invert, jacobi, ExactRational, InverseOutcome, Modulus, Obstruction, Residue};

/// Largest `m` for which `x_0` is computed over the rationals before
/// reduction; beyond it the multiple is taken modulo `A` directly.
pub const RATIONAL_X0_MAX_M: u64 = 64;

/// Upper end of the search window for the twist parameter.
pub const T_SEARCH_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefilter {
    DivisibleBy3,
    DivisibleBy5,
    Clean,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupersingularError {
    #[error("no t < {0} with jacobi(t^2 + 1, A) = -1")]
    SearchExhausted(u64),
    #[error("m must be odd, got {0}")]
    EvenM(u64),
    #[error("{0} is not a prime congruent to 3 mod 4 below 10^4")]
    BadPrime(u64),
    #[error("t^2 + 1 vanishes modulo {0}")]
    DegenerateCurve(u64),
}

/// `A_{m,n} = m*2^n - 1`.
pub fn a_number(m: u64, n: u64) -> BigUint {
    (BigUint::from(m) << n as usize) - 1u32
}

/// Residue table deciding whether 3 or 5 divides `m*2^n - 1`.
///
/// Since `2^2 = 1 mod 3` and `2^4 = 1 mod 5`, divisibility depends on
/// `(m mod 3, n mod 2)` and `(m mod 5, n mod 4)` only.
pub fn prefilter_35(m: u64, n: u64) -> Prefilter {
    let by3 = matches!((m % 3, n % 2), (2, 1) | (1, 0));
    if by3 {
        return Prefilter::DivisibleBy3;
    }
    let by5 = matches!((m % 5, n % 4), (1, 0) | (2, 3) | (3, 1) | (4, 2));
    if by5 {
        return Prefilter::DivisibleBy5;
    }
    Prefilter::Clean
}

/// Rows of the `(m mod 5, n mod 4)` table for which 5 is a non-square
/// modulo `A`, so `t = 2` is always a valid twist.
fn five_is_nonsquare(m: u64, n: u64) -> bool {
    matches!((m % 5, n % 4), (1, 3) | (1, 2) | (2, 2) | (2, 1) | (3, 0) | (3, 3) | (4, 1) | (4, 0))
}

/// The least `t >= 1` with `jacobi(t^2 + 1, A) = -1`, taking `t = 2` at once
/// when the residue table guarantees it.
pub fn select_t(m: u64, n: u64) -> Result<u64, SupersingularError> {
    if five_is_nonsquare(m, n) {
        return Ok(2);
    }
    let a = a_number(m, n);
    if a < BigUint::from(3u32) {
        return Err(SupersingularError::SearchExhausted(T_SEARCH_LIMIT));
    }
    for t in 1..T_SEARCH_LIMIT {
        let c = BigInt::from(t) * BigInt::from(t) + 1;
        if jacobi(&c, &a).expect("A is odd and at least 3") == -1 {
            return Ok(t);
        }
    }
    Err(SupersingularError::SearchExhausted(T_SEARCH_LIMIT))
}

fn rational(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

/// A point on `y^2 = x^3 - c*x` over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPoint {
    point: Point<ExactRational>,
}

impl RationalPoint {
    pub fn new(x: ExactRational, y: ExactRational) -> Self {
        RationalPoint {
            point: Point::affine(x, y),
        }
    }

    pub fn from_integers(x: i64, y: i64) -> Self {
        Self::new(rational(x), rational(y))
    }

    pub fn infinity() -> Self {
        RationalPoint { point: Point::Infinity }
    }

    pub fn at_infinity(&self) -> bool {
        self.point.is_infinity()
    }

    pub fn x(&self) -> Option<&ExactRational> {
        self.point.x()
    }

    pub fn y(&self) -> Option<&ExactRational> {
        self.point.y()
    }

    pub fn on_curve(&self, c: &BigInt) -> bool {
        curve_over_q(c).contains(&self.point)
    }
}

fn curve_over_q(c: &BigInt) -> Weierstrass<ExactRational> {
    Weierstrass::new(ExactRational::from_integer(-c), ExactRational::zero())
}

/// `k*P` on `y^2 = x^3 - c*x` by exact chord-tangent arithmetic.
pub fn rational_multiple(c: &BigInt, p: &RationalPoint, k: &BigUint) -> RationalPoint {
    debug_assert!(p.on_curve(c));
    let point = curve_over_q(c)
        .mul(k, &p.point)
        .expect("the rationals are a field");
    RationalPoint { point }
}

/// x-coordinate of `m(-1, t)` on `E_t` modulo `A`, or the reason it does
/// not exist there.
fn initial_x(m: u64, t: u64, modulus: &Modulus) -> Result<Residue, Obstruction> {
    let c: BigInt = BigInt::from(t) * BigInt::from(t) + 1;
    if m <= RATIONAL_X0_MAX_M {
        let p = rational_multiple(&c, &RationalPoint::from_integers(-1, t as i64), &BigUint::from(m));
        let x = p.x().ok_or(Obstruction::ZeroDenominator)?;
        return match modulus.reduce_rational(x) {
            InverseOutcome::Inverse(r) => Ok(r),
            InverseOutcome::ProperFactor(g) => Err(Obstruction::Factor(g)),
            _ => Err(Obstruction::ZeroDenominator),
        };
    }
    let curve = Weierstrass::new(modulus.from_bigint(&-c), modulus.zero());
    let base = Point::affine(modulus.from_i64(-1), modulus.from_i64(t as i64));
    match curve.mul(&BigUint::from(m), &base)? {
        Point::Infinity => Err(Obstruction::ZeroDenominator),
        Point::Affine { x, .. } => Ok(x),
    }
}

/// One step `x -> (x^2 + c)^2 / (4(x^3 - c*x))`, the x-coordinate of the
/// double on `y^2 = x^3 - c*x`.
pub fn x_double(x: &Residue, c: &Residue) -> Result<Residue, Obstruction> {
    let x2 = x.square();
    let num = x2.add(c).square();
    let den = x2.sub(c).mul(x).mul_small(4);
    Ok(num.mul(&invert(&den)?))
}

/// Run the test on `A = m*2^n - 1`.
pub fn test_a(m: u64, n: u64) -> Result<TestOutcome, HypothesisError> {
    test_a_run(m, n, false).map(|r| r.outcome)
}

/// Run the test on `A = m*2^n - 1`, optionally recording `x_0, x_1, ...`.
pub fn test_a_run(m: u64, n: u64, trace: bool) -> Result<TestRun, HypothesisError> {
    if m % 2 == 0 {
        return Err(HypothesisError::violated(format!("m must be odd, got {m}")));
    }
    let a = a_number(m, n);
    if a == BigUint::from(3u32) || a == BigUint::from(5u32) {
        return Ok(TestRun::new(TestOutcome::CertifiedPrime, 0, Vec::new()));
    }
    if n < 2 {
        return Err(HypothesisError::violated("n must be at least 2"));
    }
    if BigUint::from(4 * m as u128).cmp(&(BigUint::one() << n as usize)).is_ge() {
        return Err(HypothesisError::violated(format!("4m < 2^n fails for m = {m}, n = {n}")));
    }
    match prefilter_35(m, n) {
        Prefilter::DivisibleBy3 => return Err(HypothesisError::violated("A is divisible by 3")),
        Prefilter::DivisibleBy5 => return Err(HypothesisError::violated("A is divisible by 5")),
        Prefilter::Clean => {}
    }
    let t = match select_t(m, n) {
        Ok(t) => t,
        Err(_) => {
            return Ok(TestRun::new(
                TestOutcome::NotCertified(NotCertifiedReason::NoTwistParameter),
                0,
                Vec::new(),
            ))
        }
    };
    let modulus = Modulus::new(a).expect("A > 5");
    let mut log = Vec::new();
    let mut x = match initial_x(m, t, &modulus) {
        Ok(x) => x,
        Err(Obstruction::Factor(g)) => return Ok(TestRun::new(TestOutcome::factor(g), 0, log)),
        Err(_) => {
            return Ok(TestRun::new(
                TestOutcome::composite(CompositeReason::PointAtInfinity),
                0,
                log,
            ))
        }
    };
    if trace {
        log.push(x.to_string());
    }
    let c = modulus.from_i64((t * t + 1) as i64);
    for i in 1..n {
        x = match x_double(&x, &c) {
            Ok(next) => next,
            Err(Obstruction::Factor(g)) => return Ok(TestRun::new(TestOutcome::factor(g), i - 1, log)),
            Err(_) => {
                return Ok(TestRun::new(
                    TestOutcome::composite(CompositeReason::UndefinedTerm { step: i }),
                    i - 1,
                    log,
                ))
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
    Ok(TestRun::new(outcome, n - 1, log))
}

/// Structure of `E_t(F_p)` found by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub order: u64,
    pub is_cyclic: bool,
    /// `(-1, t)` is not of the form `2Q`.
    pub point_not_divisible_by_2: bool,
}

type SmallPoint = Option<(u64, u64)>;

fn small_add(p: SmallPoint, q: SmallPoint, a: u64, modp: u64) -> SmallPoint {
    use crate::oracle::{mulmod, powmod};
    let ((x1, y1), (x2, y2)) = match (p, q) {
        (None, _) => return q,
        (_, None) => return p,
        (Some(p), Some(q)) => (p, q),
    };
    let inv = |v: u64| powmod(v, modp - 2, modp);
    let lambda = if x1 != x2 {
        mulmod((y2 + modp - y1) % modp, inv((x2 + modp - x1) % modp), modp)
    } else if (y1 + y2) % modp == 0 {
        return None;
    } else {
        let num = (3 * mulmod(x1, x1, modp) + a) % modp;
        mulmod(num, inv(2 * y1 % modp), modp)
    };
    let x3 = (mulmod(lambda, lambda, modp) + 2 * modp - x1 - x2) % modp;
    let y3 = (mulmod(lambda, (x1 + modp - x3) % modp, modp) + modp - y1) % modp;
    Some((x3, y3))
}

fn small_mul(mut k: u64, p: SmallPoint, a: u64, modp: u64) -> SmallPoint {
    let mut acc = None;
    let mut base = p;
    while k > 0 {
        if k & 1 == 1 {
            acc = small_add(acc, base, a, modp);
        }
        base = small_add(base, base, a, modp);
        k >>= 1;
    }
    acc
}

/// Enumerate `E_t(F_p)` for a prime `p = 3 mod 4` and read off its order,
/// whether it is cyclic, and whether `(-1, t)` is divisible by 2.
pub fn brute_group_structure(p: u64, t: u64) -> Result<GroupStructure, SupersingularError> {
    if p > 10_000 || p % 4 != 3 || !is_prime_small(p) {
        return Err(SupersingularError::BadPrime(p));
    }
    let c = (t % p) * (t % p) % p + 1;
    if c % p == 0 {
        return Err(SupersingularError::DegenerateCurve(p));
    }
    let a_coeff = (p - c % p) % p;
    let pts = enumerate_curve_points(p, &CurveSpec::weierstrass(-((c % p) as i64), 0)).expect("p checked above");
    let order = pts.count;
    let all: Vec<SmallPoint> = std::iter::once(None).chain(pts.points.iter().map(|&q| Some(q))).collect();

    // Cyclic iff for every prime l | order some point has (order/l)P != 0.
    let is_cyclic = crate::oracle::small_prime_factors(order)
        .into_iter()
        .all(|l| all.iter().any(|&q| small_mul(order / l, q, a_coeff, p).is_some()));

    let target = Some((p - 1, t % p));
    let point_not_divisible_by_2 = all.iter().all(|&q| small_add(q, q, a_coeff, p) != target);

    Ok(GroupStructure {
        order,
        is_cyclic,
        point_not_divisible_by_2,
    })
}

/// x-coordinate of `2^i m(-1, t)` for `i = 0..n-1` via full point arithmetic
/// modulo `A`, for cross-checking the x-only recurrence.
pub fn point_doubling_sequence(m: u64, n: u64, t: u64) -> Result<Vec<Residue>, Obstruction> {
    let modulus = Modulus::new(a_number(m, n)).map_err(|_| Obstruction::ZeroDenominator)?;
    let c: BigInt = BigInt::from(t) * BigInt::from(t) + 1;
    let curve = Weierstrass::new(modulus.from_bigint(&-c), modulus.zero());
    let mut p = curve.mul(
        &BigUint::from(m),
        &Point::affine(modulus.from_i64(-1), modulus.from_i64(t as i64)),
    )?;
    let mut xs = Vec::new();
    for _ in 0..n {
        match &p {
            Point::Infinity => break,
            Point::Affine { x, .. } => xs.push(x.clone()),
        }
        p = curve.double(&p)?;
    }
    Ok(xs)
}

/// `A` as a `u64` when it fits, for small-case checks.
pub fn a_number_u64(m: u64, n: u64) -> Option<u64> {
    a_number(m, n).to_u64()
}
