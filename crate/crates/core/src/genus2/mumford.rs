//! Mumford representation `<u, v>` of divisor classes on `y^2 = f(x)` with
//! `deg f = 5`, and Cantor's composition and reduction.

use num_bigint::BigUint;
use num_traits::Zero;

use super::poly::{xgcd, Poly};
use crate::ring::{Obstruction, RingElement};

/// `y^2 = f(x)` with `f` monic of degree 5, over a fixed coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperellipticModel<R> {
    f: Poly<R>,
    one: R,
}

impl<R: RingElement> HyperellipticModel<R> {
    pub fn new(f: Poly<R>) -> Self {
        assert_eq!(f.degree(), Some(5), "genus 2 imaginary model needs deg f = 5");
        let one = f.lead().expect("nonzero").one_like();
        HyperellipticModel { f, one }
    }

    /// `y^2 = x^5 + h` with `h` given in the coefficient ring.
    pub fn quintic(h: R) -> Self {
        let one = h.one_like();
        let mut c = vec![h.zero_like(); 6];
        c[0] = h;
        c[5] = one;
        Self::new(Poly::new(c))
    }

    pub fn f(&self) -> &Poly<R> {
        &self.f
    }

    pub fn one(&self) -> &R {
        &self.one
    }

    pub fn zero(&self) -> R {
        self.one.zero_like()
    }

    pub fn identity(&self) -> MumfordDivisor<R> {
        MumfordDivisor {
            u: Poly::constant(self.one.clone()),
            v: Poly::zero(),
        }
    }

    /// Whether `D` is a well-formed Mumford pair for this curve.
    pub fn is_valid(&self, d: &MumfordDivisor<R>) -> bool {
        let du = match d.u.degree() {
            Some(k) if k <= 2 => k,
            _ => return false,
        };
        if !d.u.is_monic() || d.v.degree().is_some_and(|k| k >= du) {
            return false;
        }
        if du == 0 {
            return d.v.is_zero();
        }
        d.v.square().sub(&self.f).rem(&d.u).is_ok_and(|r| r.is_zero())
    }

    /// `<u, v>` after checking the Mumford conditions.
    pub fn divisor(&self, u: Poly<R>, v: Poly<R>) -> Option<MumfordDivisor<R>> {
        let d = MumfordDivisor { u, v };
        self.is_valid(&d).then_some(d)
    }

    /// The class of `P - infinity` for an affine point `P = (x0, y0)`.
    pub fn point(&self, x0: &R, y0: &R) -> Option<MumfordDivisor<R>> {
        self.divisor(Poly::new(vec![x0.neg(), self.one.clone()]), Poly::constant(y0.clone()))
    }

    pub fn neg(&self, d: &MumfordDivisor<R>) -> MumfordDivisor<R> {
        MumfordDivisor {
            u: d.u.clone(),
            v: d.v.neg(),
        }
    }

    /// Cantor composition followed by reduction.
    pub fn add(&self, d1: &MumfordDivisor<R>, d2: &MumfordDivisor<R>) -> Result<MumfordDivisor<R>, Obstruction> {
        if d1.is_identity() {
            return Ok(d2.clone());
        }
        if d2.is_identity() {
            return Ok(d1.clone());
        }
        let (u1, v1, u2, v2) = (&d1.u, &d1.v, &d2.u, &d2.v);
        let (e, e1, e2) = xgcd(u1, u2, &self.one)?;
        let w = v1.add(v2);
        let (u, v) = if e.degree() == Some(0) {
            let u = u1.mul(u2);
            let v = e1.mul(u1).mul(v2).add(&e2.mul(u2).mul(v1)).rem(&u)?;
            (u, v)
        } else {
            let (d, c1, c2) = xgcd(&e, &w, &self.one)?;
            let s1 = c1.mul(&e1);
            let s2 = c1.mul(&e2);
            let s3 = c2;
            let u = u1.mul(u2).exact_div(&d.square())?;
            let num = s1
                .mul(u1)
                .mul(v2)
                .add(&s2.mul(u2).mul(v1))
                .add(&s3.mul(&v1.mul(v2).add(&self.f)));
            let v = num.exact_div(&d)?.rem(&u)?;
            (u, v)
        };
        let r = self.reduce(u, v)?;
        debug_assert!(self.is_valid(&r), "Mumford congruence broken by addition");
        Ok(r)
    }

    pub fn double(&self, d: &MumfordDivisor<R>) -> Result<MumfordDivisor<R>, Obstruction> {
        self.add(d, d)
    }

    /// Reduce a semi-reduced pair `v^2 = f mod u` to `deg u <= 2`.
    pub fn reduce(&self, mut u: Poly<R>, mut v: Poly<R>) -> Result<MumfordDivisor<R>, Obstruction> {
        while u.degree().is_some_and(|k| k > 2) {
            let next = self.f.sub(&v.square()).exact_div(&u)?.make_monic()?;
            v = v.neg().rem(&next)?;
            u = next;
        }
        let u = u.make_monic()?;
        let v = v.rem(&u)?;
        Ok(MumfordDivisor { u, v })
    }

    /// `k*D` by left-to-right double-and-add.
    pub fn mul(&self, k: &BigUint, d: &MumfordDivisor<R>) -> Result<MumfordDivisor<R>, Obstruction> {
        if k.is_zero() {
            return Ok(self.identity());
        }
        let mut acc = d.clone();
        for i in (0..k.bits() - 1).rev() {
            acc = self.double(&acc)?;
            if k.bit(i) {
                acc = self.add(&acc, d)?;
            }
        }
        Ok(acc)
    }

    pub fn mul_u64(&self, k: u64, d: &MumfordDivisor<R>) -> Result<MumfordDivisor<R>, Obstruction> {
        self.mul(&BigUint::from(k), d)
    }
}

/// A reduced divisor class `<u, v>`: `u` monic of degree at most 2,
/// `deg v < deg u`, `v^2 = f mod u`. The identity is `<1, 0>`.
#[derive(Debug, Clone, PartialEq)]
pub struct MumfordDivisor<R> {
    u: Poly<R>,
    v: Poly<R>,
}

impl<R: RingElement> MumfordDivisor<R> {
    /// Build without validation; callers check with
    /// [`HyperellipticModel::is_valid`].
    pub fn from_parts(u: Poly<R>, v: Poly<R>) -> Self {
        MumfordDivisor { u, v }
    }

    pub fn u(&self) -> &Poly<R> {
        &self.u
    }

    pub fn v(&self) -> &Poly<R> {
        &self.v
    }

    pub fn weight(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.u.degree() == Some(0)
    }

    pub fn map<S: RingElement>(&self, f: impl Fn(&R) -> S) -> MumfordDivisor<S> {
        MumfordDivisor {
            u: self.u.map(&f),
            v: self.v.map(&f),
        }
    }

    /// `(u coefficients, v coefficients)`, low degree first.
    pub fn coefficient_lists(&self) -> (Vec<R>, Vec<R>) {
        (self.u.coeffs().to_vec(), self.v.coeffs().to_vec())
    }
}
