//! Affine chord-tangent arithmetic on `y^2 = x^3 + a*x + b` over any
//! [`RingElement`] coefficient ring.
//!
//! Over `Z/N` the group law is only partially defined; every slope
//! denominator goes through a witnessed inversion, so a failure comes back as
//! an [`Obstruction`] carrying a factor of `N` when one exists.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::ring::{invert, Obstruction, RingElement};

#[derive(Debug, Clone, PartialEq)]
pub enum Point<R> {
    Infinity,
    Affine { x: R, y: R },
}

impl<R: RingElement> Point<R> {
    pub fn affine(x: R, y: R) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&R> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&R> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }
}

/// `y^2 = x^3 + a*x + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weierstrass<R> {
    pub a: R,
    pub b: R,
}

impl<R: RingElement> Weierstrass<R> {
    pub fn new(a: R, b: R) -> Self {
        Weierstrass { a, b }
    }

    pub fn contains(&self, p: &Point<R>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    pub fn rhs(&self, x: &R) -> R {
        x.square().add(&self.a).mul(x).add(&self.b)
    }

    pub fn neg(&self, p: &Point<R>) -> Point<R> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::affine(x.clone(), y.neg()),
        }
    }

    fn point_from_slope(&self, lambda: R, x1: &R, y1: &R, x2: &R) -> Point<R> {
        let x3 = lambda.square().sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        Point::affine(x3, y3)
    }

    pub fn add(&self, p: &Point<R>, q: &Point<R>) -> Result<Point<R>, Obstruction> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return Ok(q.clone()),
            (_, Point::Infinity) => return Ok(p.clone()),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        if x1 != x2 {
            let lambda = y2.sub(y1).mul(&invert(&x2.sub(x1))?);
            return Ok(self.point_from_slope(lambda, x1, y1, x2));
        }
        let ysum = y1.add(y2);
        if ysum.is_zero() {
            return Ok(Point::Infinity);
        }
        // Tangent slope written with y1 + y2 in the denominator: equal to
        // (3x^2 + a)/(2y) when y1 = y2, and over Z/N it still exposes a
        // factor when y1 != +-y2.
        let three = x1.from_i64_like(3);
        let num = three.mul(&x1.square()).add(&self.a);
        let lambda = num.mul(&invert(&ysum)?);
        Ok(self.point_from_slope(lambda, x1, y1, x2))
    }

    pub fn double(&self, p: &Point<R>) -> Result<Point<R>, Obstruction> {
        self.add(p, p)
    }

    /// `k*P` by left-to-right double-and-add.
    pub fn mul(&self, k: &BigUint, p: &Point<R>) -> Result<Point<R>, Obstruction> {
        if k.is_zero() {
            return Ok(Point::Infinity);
        }
        let mut acc = p.clone();
        for i in (0..k.bits() - 1).rev() {
            acc = self.double(&acc)?;
            if k.bit(i) {
                acc = self.add(&acc, p)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ExactRational, Modulus};
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn doubling_over_rationals() {
        let e = Weierstrass::new(q(-5, 1), q(0, 1));
        let p = Point::affine(q(-1, 1), q(2, 1));
        let d = e.double(&p).unwrap();
        assert_eq!(d.x(), Some(&q(9, 4)));
        assert!(e.contains(&d));
    }

    #[test]
    fn scalar_mul_matches_repeated_addition() {
        let e = Weierstrass::new(q(-5, 1), q(0, 1));
        let p = Point::affine(q(-1, 1), q(2, 1));
        let mut acc = Point::Infinity;
        for k in 1u32..8 {
            acc = e.add(&acc, &p).unwrap();
            assert_eq!(e.mul(&BigUint::from(k), &p).unwrap(), acc);
        }
    }

    #[test]
    fn composite_modulus_exposes_factor() {
        // y^2 = x^3 + 3 mod 35: (1, 2) has order 6 mod 5 and 13 mod 7, so
        // the multiples of (1, 2) hit a non-invertible slope.
        let md = Modulus::from_u64(35).unwrap();
        let e = Weierstrass::new(md.zero(), md.from_i64(3));
        let p = Point::affine(md.from_i64(1), md.from_i64(2));
        assert!(e.contains(&p));
        let mut acc = p.clone();
        let mut found = None;
        for _ in 0..40 {
            match e.add(&acc, &p) {
                Ok(r) => acc = r,
                Err(Obstruction::Factor(g)) => {
                    found = Some(g);
                    break;
                }
                Err(other) => panic!("{other:?}"),
            }
            if acc.is_infinity() {
                break;
            }
        }
        let g = found.expect("orders mod 5 and mod 7 differ");
        assert!(g == BigUint::from(5u32) || g == BigUint::from(7u32));
    }
}
