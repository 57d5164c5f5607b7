//! Independent ground truth for tests and the CLI's cross-check mode:
//! primality by trial division / Miller-Rabin and exhaustive point counts
//! over small prime fields.
//!
//! Nothing in here is used by a certificate path.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

/// Seed for the random Miller-Rabin bases used above the deterministic range.
pub const ORACLE_SEED: u64 = 0x5eed_c0de_2024;

/// Number of random Miller-Rabin rounds above the deterministic range.
pub const PROBABLE_ROUNDS: u32 = 64;

/// Largest q accepted by the enumeration oracles.
pub const ENUMERATION_BOUND: u64 = 10_000;

const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

/// The first 13 primes are a deterministic Miller-Rabin base set below
/// 3.317e24.
const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Prime,
    Composite(Option<BigUint>),
    ProbablePrime(u32),
}

impl OracleVerdict {
    /// Prime or probable prime.
    pub fn says_prime(&self) -> bool {
        !matches!(self, OracleVerdict::Composite(_))
    }

    pub fn label(&self) -> String {
        match self {
            OracleVerdict::Prime => "prime".into(),
            OracleVerdict::Composite(Some(g)) => format!("composite (factor {g})"),
            OracleVerdict::Composite(None) => "composite".into(),
            OracleVerdict::ProbablePrime(r) => format!("probable prime ({r} rounds, seed {ORACLE_SEED:#x})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is outside the enumeration range")]
    OutOfRange(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

fn trial_division(n: u64) -> OracleVerdict {
    if n < 2 {
        return OracleVerdict::Composite(None);
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return if d == n {
                OracleVerdict::Prime
            } else {
                OracleVerdict::Composite(Some(BigUint::from(d)))
            };
        }
        d += if d == 2 { 1 } else { 2 };
    }
    OracleVerdict::Prime
}

/// One Miller-Rabin round with base `a`; true when `n` passes.
fn miller_rabin_round(n: &BigUint, nm1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || x == *nm1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == *nm1 {
            return true;
        }
    }
    false
}

/// Primality verdict for `n >= 2`: trial division below 2^40, deterministic
/// Miller-Rabin below 3.3e24, seeded random Miller-Rabin above.
pub fn is_prime_oracle(n: &BigUint) -> OracleVerdict {
    if let Some(small) = n.to_u64() {
        if small < TRIAL_DIVISION_LIMIT {
            return trial_division(small);
        }
    }
    for p in (3u32..1000).step_by(2).chain(std::iter::once(2)) {
        if (n % p).is_zero() {
            return OracleVerdict::Composite(Some(BigUint::from(p)));
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().expect("n > 1");
    let d = &nm1 >> s;
    let limit: BigUint = DETERMINISTIC_LIMIT.parse().expect("constant");
    if *n < limit {
        for a in DETERMINISTIC_BASES {
            if !miller_rabin_round(n, &nm1, &d, s, &BigUint::from(a)) {
                return OracleVerdict::Composite(None);
            }
        }
        return OracleVerdict::Prime;
    }
    let mut rng = ChaCha20Rng::seed_from_u64(ORACLE_SEED);
    let two = BigUint::from(2u32);
    for _ in 0..PROBABLE_ROUNDS {
        let a = rng.gen_biguint_range(&two, &nm1);
        if !miller_rabin_round(n, &nm1, &d, s, &a) {
            return OracleVerdict::Composite(None);
        }
    }
    OracleVerdict::ProbablePrime(PROBABLE_ROUNDS)
}

pub fn is_prime_small(n: u64) -> bool {
    matches!(trial_division(n), OracleVerdict::Prime)
}

pub(crate) fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, q);
        }
        a = mulmod(a, a, q);
        e >>= 1;
    }
    r
}

/// `a mod q` for signed `a`.
pub(crate) fn reduce_i64(a: i64, q: u64) -> u64 {
    a.rem_euclid(q as i64) as u64
}

/// A plane curve `k*y^2 = f(x)` with integer coefficients, `f` given low
/// degree first. Models have odd degree, so a single point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub y2_coeff: i64,
    pub f: Vec<i64>,
}

impl CurveSpec {
    /// `y^2 = x^3 + a*x + b`.
    pub fn weierstrass(a: i64, b: i64) -> Self {
        CurveSpec {
            y2_coeff: 1,
            f: vec![b, a, 0, 1],
        }
    }

    /// `y^2 = x^5 + h`.
    pub fn quintic(h: i64) -> Self {
        CurveSpec {
            y2_coeff: 1,
            f: vec![h, 0, 0, 0, 0, 1],
        }
    }

    fn eval(&self, x: u64, q: u64) -> u64 {
        self.f
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, q) + reduce_i64(c, q)) % q)
    }
}

/// Point count including the point at infinity, with the affine points in
/// order of ascending x, then ascending y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCount {
    pub count: u64,
    pub points: Vec<(u64, u64)>,
}

/// `sqrt_table[a]` lists the square roots of `a` in `F_q`, ascending.
fn sqrt_table(q: u64) -> Vec<Vec<u64>> {
    let mut table = vec![Vec::new(); q as usize];
    for y in 0..q {
        table[mulmod(y, y, q) as usize].push(y);
    }
    table
}

pub fn enumerate_curve_points(q: u64, curve: &CurveSpec) -> Result<PointCount, OracleError> {
    if q > ENUMERATION_BOUND {
        return Err(OracleError::OutOfRange(q));
    }
    if !is_prime_small(q) {
        return Err(OracleError::NotPrime(q));
    }
    let k = reduce_i64(curve.y2_coeff, q);
    let kinv = powmod(k, q - 2, q);
    let roots = sqrt_table(q);
    let mut points = Vec::new();
    for x in 0..q {
        let rhs = mulmod(curve.eval(x, q), kinv, q);
        for &y in &roots[rhs as usize] {
            points.push((x, y));
        }
    }
    Ok(PointCount {
        count: points.len() as u64 + 1,
        points,
    })
}

/// Number of points (with infinity) of `y^2 = f(x)` over `F_{q^2}`, counted
/// by evaluating `f` on every element and testing squareness through the norm.
pub fn count_points_quadratic(q: u64, curve: &CurveSpec) -> Result<u64, OracleError> {
    if q > ENUMERATION_BOUND || curve.y2_coeff != 1 {
        return Err(OracleError::OutOfRange(q));
    }
    if !is_prime_small(q) || q == 2 {
        return Err(OracleError::NotPrime(q));
    }
    let field = SmallQuadField::new(q);
    // In F_{q^2}, z != 0 is a square iff its norm is a square in F_q.
    let norm_is_square: Vec<bool> = {
        let t = sqrt_table(q);
        t.iter().map(|r| !r.is_empty()).collect()
    };
    let mut count = 1u64;
    for a in 0..q {
        for b in 0..q {
            let x = (a, b);
            let v = curve
                .f
                .iter()
                .rev()
                .fold((0, 0), |acc, &c| field.add(field.mul(acc, x), (reduce_i64(c, q), 0)));
            if v == (0, 0) {
                count += 1;
            } else if norm_is_square[field.norm(v) as usize] {
                count += 2;
            }
        }
    }
    Ok(count)
}

/// `F_q[s]/(s^2 - r)` for the least quadratic non-residue `r`, elements as
/// `(a, b) = a + b*s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallQuadField {
    pub q: u64,
    pub r: u64,
}

impl SmallQuadField {
    pub fn new(q: u64) -> Self {
        let r = (2..q)
            .find(|&r| powmod(r, (q - 1) / 2, q) == q - 1)
            .expect("odd prime has a non-residue");
        SmallQuadField { q, r }
    }

    pub fn add(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        ((x.0 + y.0) % self.q, (x.1 + y.1) % self.q)
    }

    pub fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        let q = self.q;
        let a = (mulmod(x.0, y.0, q) + mulmod(mulmod(x.1, y.1, q), self.r, q)) % q;
        let b = (mulmod(x.0, y.1, q) + mulmod(x.1, y.0, q)) % q;
        (a, b)
    }

    pub fn norm(&self, x: (u64, u64)) -> u64 {
        let q = self.q;
        (mulmod(x.0, x.0, q) + q - mulmod(mulmod(x.1, x.1, q), self.r, q)) % q
    }
}

/// Exact integer square root test, used when checking sums of two squares.
pub fn isqrt_exact(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == n)
}

/// Distinct prime factors of a small integer, ascending.
pub fn small_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `1 < g < n` and `g | n`: what every factor witness must satisfy.
pub fn is_proper_divisor(g: &BigUint, n: &BigUint) -> bool {
    !g.is_one() && !g.is_zero() && g < n && (n % g).is_zero()
}
