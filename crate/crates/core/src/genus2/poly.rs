//! Dense univariate polynomials over a [`RingElement`] ring, stored low
//! degree first with no trailing zeros.
//!
//! Division only ever inverts a leading coefficient, and does so through a
//! witnessed inversion, so over `Z/N` a failed division reports a factor.

use crate::ring::{invert, Obstruction, RingElement};

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: RingElement> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, or `None` past the degree.
    pub fn coeff(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    /// Coefficient of `x^i`, with `zero` past the degree.
    pub fn coeff_or(&self, i: usize, zero: &R) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| zero.clone())
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add(s);
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn eval(&self, x: &R) -> Option<R> {
        let mut it = self.coeffs.iter().rev();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, c| acc.mul(x).add(c)))
    }

    /// Quotient and remainder by `d`, inverting `lead(d)` with a witness.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), Obstruction> {
        let dd = d.degree().ok_or(Obstruction::ZeroDenominator)?;
        let inv_lead = invert(d.lead().expect("nonzero"))?;
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let zero = inv_lead.zero_like();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![zero; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].mul(&inv_lead);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, Obstruction> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Self) -> Result<Self, Obstruction> {
        let (q, r) = self.divrem(d)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    pub fn make_monic(&self) -> Result<Self, Obstruction> {
        match self.lead() {
            None => Ok(Self::zero()),
            Some(l) if l.is_one() => Ok(self.clone()),
            Some(l) => Ok(self.scale(&invert(l)?)),
        }
    }

    pub fn map<S: RingElement>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

/// Extended gcd: `(g, s, t)` with `g = s*a + t*b` and `g` monic (or zero
/// when both inputs are zero). `one` fixes the coefficient ring.
pub fn xgcd<R: RingElement>(a: &Poly<R>, b: &Poly<R>, one: &R) -> Result<(Poly<R>, Poly<R>, Poly<R>), Obstruction> {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = Poly::constant(one.clone());
    let mut s1 = Poly::zero();
    let mut t0 = Poly::zero();
    let mut t1 = Poly::constant(one.clone());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.lead() {
        None => Ok((r0, s0, t0)),
        Some(l) => {
            let inv = invert(l)?;
            Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Modulus;

    fn p(md: &Modulus, c: &[i64]) -> Poly<crate::ring::Residue> {
        Poly::new(c.iter().map(|&v| md.from_i64(v)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        let md = Modulus::from_u64(7).unwrap();
        assert_eq!(p(&md, &[1, 2, 0, 7]).degree(), Some(1));
        assert!(p(&md, &[0, 7]).is_zero());
    }

    #[test]
    fn divrem_reconstructs() {
        let md = Modulus::from_u64(19).unwrap();
        let a = p(&md, &[3, 1, 4, 1, 5, 9]);
        let d = p(&md, &[2, 7, 3]);
        let (q, r) = a.divrem(&d).unwrap();
        assert!(r.degree().map_or(true, |k| k < 2));
        assert_eq!(q.mul(&d).add(&r), a);
    }

    #[test]
    fn xgcd_bezout() {
        let md = Modulus::from_u64(19).unwrap();
        let a = p(&md, &[1, 0, 1]).mul(&p(&md, &[2, 1]));
        let b = p(&md, &[2, 1]).mul(&p(&md, &[5, 1]));
        let (g, s, t) = xgcd(&a, &b, &md.one()).unwrap();
        assert_eq!(g, p(&md, &[2, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn non_unit_leading_coefficient_gives_factor() {
        let md = Modulus::from_u64(35).unwrap();
        let a = p(&md, &[1, 1, 1]);
        let d = p(&md, &[1, 5]);
        assert_eq!(a.divrem(&d), Err(Obstruction::Factor(5u32.into())));
    }
}
