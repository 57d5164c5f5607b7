//! Brute-force facts about `J(F_q)` for `y^2 = x^5 + h` and small primes
//! `q`: group order, 2-torsion, full enumeration, and an independent
//! evaluation of `eta` by moving to `F_{q^2}` and twisting point by point.
//!
//! Test and cross-check use only.

use rand::Rng;

use super::{HyperellipticModel, MumfordDivisor, Poly};
use crate::oracle::{
    count_points_quadratic, enumerate_curve_points, is_prime_small, mulmod, powmod, reduce_i64, CurveSpec,
    OracleError, SmallQuadField,
};
use crate::ring::{InverseOutcome, Modulus, Residue, RingElement};

/// Largest `q` for which [`jacobian_order_oracle`] runs.
pub const JACOBIAN_ORACLE_BOUND: u64 = 500;

fn check_prime(q: u64, bound: u64, h: i64) -> Result<(), OracleError> {
    if q > bound || q < 3 {
        return Err(OracleError::OutOfRange(q));
    }
    if !is_prime_small(q) {
        return Err(OracleError::NotPrime(q));
    }
    if reduce_i64(h, q) == 0 {
        return Err(OracleError::OutOfRange(q));
    }
    Ok(())
}

/// `#J(F_q) = (N1^2 + N2)/2 - q` from the point counts over `F_q` and
/// `F_{q^2}`.
///
/// With `L(T) = 1 + a1 T + a2 T^2 + q a1 T^3 + q^2 T^4`, `N1 = q + 1 + a1`,
/// `N2 = q^2 + 1 + 2 a2 - a1^2`, and `#J = L(1) = 1 + q^2 + (1 + q) a1 + a2`;
/// eliminating `a1, a2` gives the formula.
pub fn jacobian_order_oracle(q: u64, h: i64) -> Result<u64, OracleError> {
    check_prime(q, JACOBIAN_ORACLE_BOUND, h)?;
    let n1 = enumerate_curve_points(q, &CurveSpec::quintic(h))?.count;
    let n2 = count_points_quadratic(q, &CurveSpec::quintic(h))?;
    let twice = n1 * n1 + n2;
    debug_assert!(twice % 2 == 0);
    Ok(twice / 2 - q)
}

/// `x^5 + h mod (x^2 + a x + b)` as `(r1, r0)`.
fn quintic_mod_quadratic(a: u64, b: u64, h: u64, q: u64) -> (u64, u64) {
    // x^k mod u = (c1, c0); x^(k+1) = c1 x^2 + c0 x = (c0 - a c1) x - b c1.
    let (mut c1, mut c0) = (1u64, 0u64);
    for _ in 1..5 {
        let n1 = (c0 + q - mulmod(a, c1, q)) % q;
        let n0 = (q - mulmod(b, c1, q)) % q;
        c1 = n1;
        c0 = n0;
    }
    (c1, (c0 + h) % q)
}

/// Every element of `J(F_q)` in Mumford form, ordered by weight, then by the
/// coefficient tuples.
pub fn enumerate_jacobian(q: u64, h: i64) -> Result<Vec<MumfordDivisor<Residue>>, OracleError> {
    check_prime(q, 100, h)?;
    let md = Modulus::from_u64(q).expect("q >= 3");
    let hq = reduce_i64(h, q);
    let c = |v: u64| md.from_i64(v as i64);
    let model = HyperellipticModel::quintic(c(hq));
    let mut out = vec![model.identity()];
    for (x, y) in enumerate_curve_points(q, &CurveSpec::quintic(h))?.points {
        out.push(model.point(&c(x), &c(y)).expect("point on curve"));
    }
    for a in 0..q {
        for b in 0..q {
            let (r1, r0) = quintic_mod_quadratic(a, b, hq, q);
            for v1 in 0..q {
                for v0 in 0..q {
                    // v^2 mod u = (2 v1 v0 - a v1^2) x + (v0^2 - b v1^2).
                    let s1 = (2 * mulmod(v1, v0, q) + q - mulmod(a, mulmod(v1, v1, q), q)) % q;
                    let s0 = (mulmod(v0, v0, q) + q - mulmod(b, mulmod(v1, v1, q), q)) % q;
                    if s1 == r1 && s0 == r0 {
                        let u = Poly::new(vec![c(b), c(a), md.one()]);
                        let v = Poly::new(vec![c(v0), c(v1)]);
                        out.push(MumfordDivisor::from_parts(u, v));
                    }
                }
            }
        }
    }
    debug_assert!(out.iter().all(|d| model.is_valid(d)));
    Ok(out)
}

/// The 2-torsion of `J(F_q)` and the rational roots of `x^5 + h`.
#[derive(Debug, Clone)]
pub struct TwoTorsion {
    pub elements: Vec<MumfordDivisor<Residue>>,
    pub rational_roots: Vec<u64>,
    /// Every element doubles to the identity.
    pub exponent_two: bool,
}

impl TwoTorsion {
    /// `(Z/2)^2`: four elements of exponent 2.
    pub fn is_klein_four(&self) -> bool {
        self.elements.len() == 4 && self.exponent_two
    }
}

/// 2-torsion classes are exactly `<u, 0>` with `u | x^5 + h` monic of degree
/// at most 2.
pub fn two_torsion_oracle(q: u64, h: i64) -> Result<TwoTorsion, OracleError> {
    check_prime(q, crate::oracle::ENUMERATION_BOUND, h)?;
    let md = Modulus::from_u64(q).expect("q >= 3");
    let hq = reduce_i64(h, q);
    let c = |v: u64| md.from_i64(v as i64);
    let model = HyperellipticModel::quintic(c(hq));
    let rational_roots: Vec<u64> = (0..q).filter(|&x| (powmod(x, 5, q) + hq) % q == 0).collect();
    let mut elements = vec![model.identity()];
    for &r in &rational_roots {
        elements.push(MumfordDivisor::from_parts(Poly::new(vec![c((q - r) % q), md.one()]), Poly::zero()));
    }
    for a in 0..q {
        for b in 0..q {
            if quintic_mod_quadratic(a, b, hq, q) == (0, 0) {
                elements.push(MumfordDivisor::from_parts(Poly::new(vec![c(b), c(a), md.one()]), Poly::zero()));
            }
        }
    }
    let exponent_two = elements
        .iter()
        .all(|d| model.is_valid(d) && model.double(d).is_ok_and(|e| e.is_identity()));
    Ok(TwoTorsion {
        elements,
        rational_roots,
        exponent_two,
    })
}

/// An element of `F_q[s]/(s^2 - r)` usable as a Cantor coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fq2 {
    a: u64,
    b: u64,
    field: SmallQuadField,
}

impl Fq2 {
    pub fn new(field: SmallQuadField, a: u64, b: u64) -> Self {
        Fq2 {
            a: a % field.q,
            b: b % field.q,
            field,
        }
    }

    pub fn parts(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = *self;
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

impl RingElement for Fq2 {
    fn zero_like(&self) -> Self {
        Fq2::new(self.field, 0, 0)
    }
    fn one_like(&self) -> Self {
        Fq2::new(self.field, 1, 0)
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Fq2::new(self.field, reduce_i64(v, self.field.q), 0)
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let (a, b) = self.field.add((self.a, self.b), (rhs.a, rhs.b));
        Fq2::new(self.field, a, b)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.field.mul((self.a, self.b), (rhs.a, rhs.b));
        Fq2::new(self.field, a, b)
    }
    fn neg(&self) -> Self {
        let q = self.field.q;
        Fq2::new(self.field, (q - self.a) % q, (q - self.b) % q)
    }
    fn inv_witnessed(&self) -> InverseOutcome<Self> {
        if self.is_zero() {
            return InverseOutcome::ZeroDivisorIsZero;
        }
        let q = self.field.q;
        let ninv = powmod(self.field.norm((self.a, self.b)), q - 2, q);
        InverseOutcome::Inverse(Fq2::new(self.field, mulmod(self.a, ninv, q), mulmod(q - self.b, ninv, q)))
    }
}

/// `eta(D)` for `D` over `F_q`, computed by finding the points of `D` in
/// `F_{q^2}`, applying `(x, y) -> (zeta x, y)` and `(zeta^4 x, y)` to each,
/// and summing point divisors. `eta` fixes which fifth root of unity is
/// `zeta` (`zeta + zeta^-1 = eta`).
pub fn eta_by_points(q: u64, h: i64, eta: u64, d: &MumfordDivisor<Residue>) -> Option<MumfordDivisor<Residue>> {
    let field = SmallQuadField::new(q);
    let el = |a: u64, b: u64| Fq2::new(field, a, b);
    let zeta = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .map(|(a, b)| el(a, b))
        .find(|z| {
            !z.is_one() && z.pow(5).is_one() && z.add(&z.pow(4)) == el(eta, 0)
        })?;
    let model = HyperellipticModel::quintic(el(reduce_i64(h, q), 0));
    let lift = |r: &Residue| el(r.value().to_u64_digits().first().copied().unwrap_or(0), 0);
    let u = d.u().map(lift);
    let v = d.v().map(lift);
    let mut roots = Vec::new();
    for a in 0..q {
        for b in 0..q {
            let x = el(a, b);
            if u.eval(&x).is_some_and(|r| r.is_zero()) {
                roots.push(x);
            }
        }
    }
    let mut points = Vec::new();
    match (d.weight(), roots.len()) {
        (0, _) => {}
        (1, 1) => points.push((roots[0], v.eval(&roots[0]).unwrap_or_else(|| el(0, 0)))),
        (2, 2) => {
            for x in &roots {
                points.push((*x, v.eval(x).unwrap_or_else(|| el(0, 0))));
            }
        }
        (2, 1) => {
            let y = v.eval(&roots[0]).unwrap_or_else(|| el(0, 0));
            points.push((roots[0], y));
            points.push((roots[0], y));
        }
        _ => return None,
    }
    let mut acc = model.identity();
    for k in [1u64, 4] {
        let zk = zeta.pow(k);
        for (x, y) in &points {
            let p = model.point(&zk.mul(x), y)?;
            acc = model.add(&acc, &p).ok()?;
        }
    }
    let md = Modulus::from_u64(q).ok()?;
    let down = |p: &Poly<Fq2>| -> Option<Poly<Residue>> {
        p.coeffs()
            .iter()
            .map(|c| (c.b == 0).then(|| md.from_i64(c.a as i64)))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    };
    Some(MumfordDivisor::from_parts(down(acc.u())?, down(acc.v())?))
}

/// Draws random divisors on `y^2 = x^5 + h` modulo a small `N` (prime or
/// not) by adding random affine points, finding square roots by table.
pub struct SmallDivisorSampler {
    modulus: Modulus,
    n: u64,
    h: u64,
    roots: Vec<Vec<u64>>,
}

impl SmallDivisorSampler {
    pub fn new(n: u64, h: i64) -> Self {
        assert!(n <= 1 << 20, "table-based sampler needs a small modulus");
        let mut roots = vec![Vec::new(); n as usize];
        for y in 0..n {
            roots[mulmod(y, y, n) as usize].push(y);
        }
        SmallDivisorSampler {
            modulus: Modulus::from_u64(n).expect("n >= 2"),
            n,
            h: reduce_i64(h, n),
            roots,
        }
    }

    /// A uniformly random affine point; the curve must have one modulo `n`.
    pub fn random_point<R: Rng>(&self, model: &HyperellipticModel<Residue>, rng: &mut R) -> MumfordDivisor<Residue> {
        loop {
            let x = rng.gen_range(0..self.n);
            let rhs = (powmod(x, 5, self.n) + self.h) % self.n;
            let ys = &self.roots[rhs as usize];
            if ys.is_empty() {
                continue;
            }
            let y = ys[rng.gen_range(0..ys.len())];
            let c = |v: u64| self.modulus.from_i64(v as i64);
            return model.point(&c(x), &c(y)).expect("point on curve");
        }
    }

    /// The sum of two random points; `Err` carries a factor when the
    /// addition fails modulo a composite.
    pub fn random_divisor<R: Rng>(
        &self,
        model: &HyperellipticModel<Residue>,
        rng: &mut R,
    ) -> Result<MumfordDivisor<Residue>, crate::ring::Obstruction> {
        let p1 = self.random_point(model, rng);
        let p2 = self.random_point(model, rng);
        model.add(&p1, &p2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_order_at_19() {
        assert_eq!(jacobian_order_oracle(19, 10).unwrap(), 400);
        assert!(jacobian_order_oracle(503, 10).is_err());
        assert!(jacobian_order_oracle(19, 38).is_err());
    }

    #[test]
    fn formula_agrees_with_enumeration() {
        for (q, h) in [(7u64, 10i64), (11, 3), (13, 1), (19, 10)] {
            let listed = enumerate_jacobian(q, h).unwrap().len() as u64;
            assert_eq!(listed, jacobian_order_oracle(q, h).unwrap(), "q = {q}, h = {h}");
        }
    }

    #[test]
    fn two_torsion_at_19() {
        for h in [10, 1] {
            let t = two_torsion_oracle(19, h).unwrap();
            assert!(t.is_klein_four());
            assert_eq!(t.rational_roots.len(), 1);
        }
    }
}
