//! Residue rings `Z/N`, exact rationals, and the quadratic extension
//! `(Z/N)[T]/(T^2 - eta*T + 1)` that carries a primitive fifth root of unity.
//!
//! Every division in this module is *witnessed*: instead of failing, an
//! inversion reports either the inverse, a proper factor of the modulus, or
//! that the element was zero. The primality tests built on top treat a
//! proper factor as a compositeness certificate.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(BigUint),
    #[error("jacobi symbol needs an odd modulus >= 3, got {0}")]
    JacobiModulus(BigUint),
    #[error("{0} is not a square root of 5 modulo {1}")]
    NotSqrtFive(BigUint, BigUint),
    #[error("2 is not invertible modulo {0}")]
    EvenModulus(BigUint),
    #[error("exponent must be odd and positive, got {0}")]
    BadExponent(u64),
}

/// Result of a witnessed inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseOutcome<T> {
    Inverse(T),
    /// `gcd(x, N)` with `1 < g < N`.
    ProperFactor(BigUint),
    /// The element is exactly zero.
    ZeroDivisorIsZero,
    /// Nonzero and not a unit, but no integer factor of `N` fell out.
    /// Only reachable in the quadratic extension over a modulus whose prime
    /// factors are all `1 mod 5`.
    NonUnit,
}

impl<T> InverseOutcome<T> {
    pub fn into_inverse(self) -> Option<T> {
        match self {
            InverseOutcome::Inverse(x) => Some(x),
            _ => None,
        }
    }
}

/// Why a division inside a larger computation could not be carried out.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Obstruction {
    /// A proper factor of the modulus.
    #[error("proper factor {0} of the modulus")]
    Factor(BigUint),
    /// The denominator was exactly zero.
    #[error("zero denominator")]
    ZeroDenominator,
    /// A nonzero non-unit with no integer factor attached.
    #[error("non-invertible element")]
    NonUnit,
}

/// Invert `x`, turning every failure into an [`Obstruction`].
pub fn invert<R: RingElement>(x: &R) -> Result<R, Obstruction> {
    if x.is_one() {
        return Ok(x.clone());
    }
    match x.inv_witnessed() {
        InverseOutcome::Inverse(y) => Ok(y),
        InverseOutcome::ProperFactor(g) => Err(Obstruction::Factor(g)),
        InverseOutcome::ZeroDivisorIsZero => Err(Obstruction::ZeroDenominator),
        InverseOutcome::NonUnit => Err(Obstruction::NonUnit),
    }
}

/// Operations shared by every coefficient ring the curve code runs over.
///
/// Elements know their own ring, so constants are produced from an existing
/// element (`zero_like`, `from_i64_like`).
pub trait RingElement: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv_witnessed(&self) -> InverseOutcome<Self>;

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// The modulus `N >= 2` of a residue ring. Cheap to clone.
#[derive(Clone)]
pub struct Modulus(Arc<BigUint>);

impl Modulus {
    pub fn new(n: BigUint) -> Result<Self, RingError> {
        if n < BigUint::from(2u32) {
            return Err(RingError::ModulusTooSmall(n));
        }
        Ok(Modulus(Arc::new(n)))
    }

    pub fn from_u64(n: u64) -> Result<Self, RingError> {
        Self::new(BigUint::from(n))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn residue(&self, v: &BigUint) -> Residue {
        Residue {
            value: v % self.value(),
            modulus: self.clone(),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Residue {
        let n = BigInt::from_biguint(Sign::Plus, self.value().clone());
        let r = v.mod_floor(&n);
        Residue {
            value: r.magnitude().clone(),
            modulus: self.clone(),
        }
    }

    pub fn from_i64(&self, v: i64) -> Residue {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn zero(&self) -> Residue {
        Residue {
            value: BigUint::zero(),
            modulus: self.clone(),
        }
    }

    pub fn one(&self) -> Residue {
        self.residue(&BigUint::one())
    }

    /// Reduce `num/den` modulo `N`, inverting the denominator with a witness.
    pub fn reduce_rational(&self, q: &ExactRational) -> InverseOutcome<Residue> {
        let den = self.from_bigint(q.denom());
        match den.inv_witnessed() {
            InverseOutcome::Inverse(inv) => InverseOutcome::Inverse(self.from_bigint(q.numer()).mul(&inv)),
            other => other,
        }
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Modulus {}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Modulus({})", self.0)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z/N` in canonical form `0 <= value < N`.
#[derive(Clone, PartialEq, Eq)]
pub struct Residue {
    value: BigUint,
    modulus: Modulus,
}

impl Residue {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    #[inline]
    fn check_same(&self, rhs: &Residue) {
        assert!(
            self.modulus == rhs.modulus,
            "residue arithmetic across moduli {} and {}",
            self.modulus,
            rhs.modulus
        );
    }

    fn wrap(&self, value: BigUint) -> Residue {
        Residue {
            value,
            modulus: self.modulus.clone(),
        }
    }

    pub fn add(&self, rhs: &Residue) -> Residue {
        self.check_same(rhs);
        let mut v = &self.value + &rhs.value;
        if &v >= self.modulus.value() {
            v -= self.modulus.value();
        }
        self.wrap(v)
    }

    pub fn sub(&self, rhs: &Residue) -> Residue {
        self.check_same(rhs);
        if self.value >= rhs.value {
            self.wrap(&self.value - &rhs.value)
        } else {
            self.wrap(self.modulus.value() - &rhs.value + &self.value)
        }
    }

    pub fn mul(&self, rhs: &Residue) -> Residue {
        self.check_same(rhs);
        self.wrap((&self.value * &rhs.value) % self.modulus.value())
    }

    pub fn mul_small(&self, k: u64) -> Residue {
        self.wrap((&self.value * k) % self.modulus.value())
    }

    pub fn neg(&self) -> Residue {
        if self.value.is_zero() {
            self.clone()
        } else {
            self.wrap(self.modulus.value() - &self.value)
        }
    }

    pub fn square(&self) -> Residue {
        self.wrap((&self.value * &self.value) % self.modulus.value())
    }

    pub fn pow(&self, e: &BigUint) -> Residue {
        self.wrap(self.value.modpow(e, self.modulus.value()))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Witnessed inverse: the inverse, a proper factor `gcd(x, N)`, or zero.
    pub fn inv_witnessed(&self) -> InverseOutcome<Residue> {
        if self.value.is_zero() {
            return InverseOutcome::ZeroDivisorIsZero;
        }
        match self.value.modinv(self.modulus.value()) {
            Some(inv) => InverseOutcome::Inverse(self.wrap(inv)),
            None => InverseOutcome::ProperFactor(self.value.gcd(self.modulus.value())),
        }
    }

    /// Signed integer in `(-N/2, N/2]`, handy for display.
    pub fn centered(&self) -> BigInt {
        let n = self.modulus.value();
        let v = BigInt::from(self.value.clone());
        if &self.value * 2u32 > *n {
            v - BigInt::from(n.clone())
        } else {
            v
        }
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl RingElement for Residue {
    fn zero_like(&self) -> Self {
        self.modulus.zero()
    }
    fn one_like(&self) -> Self {
        self.modulus.one()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        self.modulus.from_i64(v)
    }
    fn is_zero(&self) -> bool {
        Residue::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Residue::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Residue::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Residue::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Residue::neg(self)
    }
    fn inv_witnessed(&self) -> InverseOutcome<Self> {
        Residue::inv_witnessed(self)
    }
    fn square(&self) -> Self {
        Residue::square(self)
    }
}

impl RingElement for ExactRational {
    fn zero_like(&self) -> Self {
        ExactRational::zero()
    }
    fn one_like(&self) -> Self {
        ExactRational::one()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        ExactRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv_witnessed(&self) -> InverseOutcome<Self> {
        if Zero::is_zero(self) {
            InverseOutcome::ZeroDivisorIsZero
        } else {
            InverseOutcome::Inverse(self.recip())
        }
    }
}

/// Jacobi symbol `(a / n)` for odd `n >= 3`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> Result<i8, RingError> {
    if n.is_even() || *n < BigUint::from(3u32) {
        return Err(RingError::JacobiModulus(n.clone()));
    }
    let nn = BigInt::from(n.clone());
    let mut a = a.mod_floor(&nn).magnitude().clone();
    let mut n = n.clone();
    let mut sign = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let n8 = (&n % 8u32).to_u32_digits().first().copied().unwrap_or(0);
            if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
                sign = -sign;
            }
        }
        // reciprocity
        let a4 = (&a % 4u32).to_u32_digits().first().copied().unwrap_or(0);
        let n4 = (&n % 4u32).to_u32_digits().first().copied().unwrap_or(0);
        if a4 == 3 && n4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    Ok(if n.is_one() { sign } else { 0 })
}

/// Jacobi symbol for machine-size arguments.
pub fn jacobi_u64(a: i64, n: u64) -> Result<i8, RingError> {
    jacobi(&BigInt::from(a), &BigUint::from(n))
}

/// Deterministic primality for 64-bit integers (Miller-Rabin with the
/// first twelve prime bases, which is exact below `3.3 * 10^24`).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Parameters of the ring `(Z/N)[T]/(T^2 - eta*T + 1)` where `d^2 = 5` and
/// `eta = (d - 1)/2`. `T` plays the role of a primitive fifth root of unity
/// `zeta`, with `eta = zeta + zeta^4` and `d = 2*eta + 1 = sqrt(5)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExtContext {
    modulus: Modulus,
    d: Residue,
    eta: Residue,
}

impl QuadExtContext {
    /// Build the context from an explicit square root of 5 modulo `N`.
    pub fn with_sqrt5(modulus: &Modulus, d: Residue) -> Result<Self, RingError> {
        if d.square() != modulus.from_i64(5) {
            return Err(RingError::NotSqrtFive(d.value().clone(), modulus.value().clone()));
        }
        let half = match modulus.from_i64(2).inv_witnessed() {
            InverseOutcome::Inverse(h) => h,
            _ => return Err(RingError::EvenModulus(modulus.value().clone())),
        };
        let eta = d.sub(&modulus.one()).mul(&half);
        debug_assert!(eta.square().add(&eta).sub(&modulus.one()).is_zero());
        Ok(QuadExtContext {
            modulus: modulus.clone(),
            d,
            eta,
        })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn sqrt5(&self) -> &Residue {
        &self.d
    }

    pub fn eta(&self) -> &Residue {
        &self.eta
    }

    pub fn lift(&self, a: &Residue) -> QuadExtElement {
        QuadExtElement {
            a: a.clone(),
            b: self.modulus.zero(),
            ctx: Arc::new(self.clone()),
        }
    }

    /// The generator `T` (that is, `zeta`).
    pub fn zeta(&self) -> QuadExtElement {
        QuadExtElement {
            a: self.modulus.zero(),
            b: self.modulus.one(),
            ctx: Arc::new(self.clone()),
        }
    }

    pub fn element(&self, a: Residue, b: Residue) -> QuadExtElement {
        QuadExtElement {
            a,
            b,
            ctx: Arc::new(self.clone()),
        }
    }
}

/// `lambda_n = 4*5^n - 1`.
pub fn lambda(n: u64) -> BigUint {
    BigUint::from(4u32) * BigUint::from(5u32).pow(n as u32) - 1u32
}

/// The context for `Z/lambda_n` with `d = 2*5^((n+1)/2)`.
///
/// Since `4*5^n = 1` modulo `lambda_n`, `d^2 = 4*5^(n+1) = 5`.
pub fn sqrt5_mod_lambda(n: u64) -> Result<QuadExtContext, RingError> {
    if n == 0 || n % 2 == 0 {
        return Err(RingError::BadExponent(n));
    }
    let modulus = Modulus::new(lambda(n))?;
    let d = modulus.residue(&(BigUint::from(2u32) * BigUint::from(5u32).pow(((n + 1) / 2) as u32)));
    QuadExtContext::with_sqrt5(&modulus, d)
}

/// `a + b*T` in `(Z/N)[T]/(T^2 - eta*T + 1)`.
#[derive(Clone)]
pub struct QuadExtElement {
    a: Residue,
    b: Residue,
    ctx: Arc<QuadExtContext>,
}

impl PartialEq for QuadExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl fmt::Debug for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*T mod {})", self.a, self.b, self.ctx.modulus)
    }
}

impl QuadExtElement {
    pub fn a(&self) -> &Residue {
        &self.a
    }

    pub fn b(&self) -> &Residue {
        &self.b
    }

    pub fn context(&self) -> &QuadExtContext {
        &self.ctx
    }

    fn with(&self, a: Residue, b: Residue) -> QuadExtElement {
        QuadExtElement {
            a,
            b,
            ctx: self.ctx.clone(),
        }
    }

    /// `Some(a)` when the `T`-component vanishes.
    pub fn to_base(&self) -> Option<Residue> {
        self.b.is_zero().then(|| self.a.clone())
    }

    /// The nontrivial automorphism `T -> eta - T`.
    pub fn conj(&self) -> QuadExtElement {
        self.with(self.a.add(&self.b.mul(&self.ctx.eta)), self.b.neg())
    }

    /// `x * conj(x) = a^2 + a*b*eta + b^2`.
    pub fn norm(&self) -> Residue {
        self.a
            .square()
            .add(&self.a.mul(&self.b).mul(&self.ctx.eta))
            .add(&self.b.square())
    }

    pub fn pow(&self, mut e: u64) -> QuadExtElement {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl RingElement for QuadExtElement {
    fn zero_like(&self) -> Self {
        let z = self.ctx.modulus.zero();
        self.with(z.clone(), z)
    }
    fn one_like(&self) -> Self {
        self.with(self.ctx.modulus.one(), self.ctx.modulus.zero())
    }
    fn from_i64_like(&self, v: i64) -> Self {
        self.with(self.ctx.modulus.from_i64(v), self.ctx.modulus.zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.with(self.a.add(&rhs.a), self.b.add(&rhs.b))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.with(self.a.sub(&rhs.a), self.b.sub(&rhs.b))
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (a1 + b1 T)(a2 + b2 T) with T^2 = eta T - 1
        let bb = self.b.mul(&rhs.b);
        let a = self.a.mul(&rhs.a).sub(&bb);
        let b = self
            .a
            .mul(&rhs.b)
            .add(&self.b.mul(&rhs.a))
            .add(&bb.mul(&self.ctx.eta));
        self.with(a, b)
    }
    fn neg(&self) -> Self {
        self.with(self.a.neg(), self.b.neg())
    }
    fn inv_witnessed(&self) -> InverseOutcome<Self> {
        if RingElement::is_zero(self) {
            return InverseOutcome::ZeroDivisorIsZero;
        }
        match self.norm().inv_witnessed() {
            InverseOutcome::Inverse(ninv) => {
                let c = self.conj();
                InverseOutcome::Inverse(self.with(c.a.mul(&ninv), c.b.mul(&ninv)))
            }
            InverseOutcome::ProperFactor(g) => InverseOutcome::ProperFactor(g),
            InverseOutcome::ZeroDivisorIsZero | InverseOutcome::NonUnit => {
                // Norm vanishes although x does not: look for a factor in the
                // components before giving up.
                for part in [&self.b, &self.a] {
                    if !part.is_zero() {
                        if let InverseOutcome::ProperFactor(g) = part.inv_witnessed() {
                            return InverseOutcome::ProperFactor(g);
                        }
                    }
                }
                InverseOutcome::NonUnit
            }
        }
    }
}

/// Render a signed big integer as a decimal string.
pub fn decimal(v: &BigInt) -> String {
    if v.is_negative() {
        format!("-{}", v.magnitude())
    } else {
        v.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn m(n: u64) -> Modulus {
        Modulus::from_u64(n).unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(m(7).from_i64(3).inv_witnessed(), InverseOutcome::Inverse(m(7).from_i64(5)));
        assert_eq!(
            m(15).from_i64(6).inv_witnessed(),
            InverseOutcome::ProperFactor(BigUint::from(3u32))
        );
        assert_eq!(m(11).zero().inv_witnessed(), InverseOutcome::ZeroDivisorIsZero);
    }

    #[test]
    fn modulus_rejects_small() {
        assert!(Modulus::from_u64(1).is_err());
        assert!(Modulus::from_u64(0).is_err());
        assert!(Modulus::from_u64(2).is_ok());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_u64(1, 9).unwrap(), 1);
        assert_eq!(jacobi_u64(5, 1663).unwrap(), -1);
        assert_eq!(jacobi_u64(6, 15).unwrap(), 0);
        assert!(jacobi_u64(3, 8).is_err());
        assert!(jacobi_u64(3, 1).is_err());
    }

    #[test]
    fn jacobi_of_five_mod_1663_matches_euler() {
        // 5^831 mod 1663 by repeated squaring
        let r = BigUint::from(5u32).modpow(&BigUint::from(831u32), &BigUint::from(1663u32));
        assert_eq!(r, BigUint::from(1662u32));
    }

    #[test]
    fn jacobi_thirty_mod_s_11_11() {
        let s = BigUint::from(121u32) * BigUint::from(16u32).pow(11) + 1u32;
        assert_eq!(jacobi(&BigInt::from(30), &s).unwrap(), 1);
    }

    #[test]
    fn sqrt5_contexts() {
        let c3 = sqrt5_mod_lambda(3).unwrap();
        assert_eq!(c3.modulus().value(), &BigUint::from(499u32));
        assert_eq!(c3.sqrt5().value(), &BigUint::from(50u32));
        // eta = 49 * 250 mod 499
        assert_eq!(c3.eta().value().to_u64().unwrap(), 49 * 250 % 499);
        let c9 = sqrt5_mod_lambda(9).unwrap();
        assert_eq!(c9.sqrt5().value(), &BigUint::from(6250u32));
        assert_eq!(c9.sqrt5().square().value(), &BigUint::from(5u32));
        assert!(sqrt5_mod_lambda(4).is_err());
    }

    #[test]
    fn conj_examples() {
        let c = sqrt5_mod_lambda(3).unwrap();
        let base = c.lift(&c.modulus().from_i64(17));
        assert_eq!(base.conj(), base);
        let t = c.zeta();
        let ct = t.conj();
        assert_eq!(ct, c.lift(c.eta()).sub(&t));
        assert_eq!(ct.conj(), t);
        assert!(t.mul(&ct).is_one());
        // zeta has order five
        assert!(t.pow(5).is_one());
        assert!(!t.pow(1).is_one());
        assert_eq!(t.pow(4), ct);
    }

    #[test]
    fn ext_inverse_is_inverse() {
        let c = sqrt5_mod_lambda(3).unwrap();
        let md = c.modulus().clone();
        let x = c.element(md.from_i64(123), md.from_i64(45));
        let inv = x.inv_witnessed().into_inverse().unwrap();
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn rational_reduction() {
        let q = ExactRational::new(BigInt::from(3), BigInt::from(4));
        let r = m(7).reduce_rational(&q).into_inverse().unwrap();
        assert_eq!(r.mul(&m(7).from_i64(4)), m(7).from_i64(3));
        let q = ExactRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(
            m(15).reduce_rational(&q),
            InverseOutcome::ProperFactor(BigUint::from(3u32))
        );
    }

    #[test]
    fn small_primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751));
    }
}
