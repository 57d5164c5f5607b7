//! The automorphism `zeta: (x, y) -> (zeta*x, y)` of `y^2 = x^5 + h` and the
//! endomorphisms `eta = zeta + zeta^4` and `sqrt(5) = 2*eta + 1` it induces
//! on the Jacobian.
//!
//! `zeta` lives in `(Z/N)[T]/(T^2 - eta*T + 1)`; `eta(D)` is computed there
//! and projected back, since its coefficients are fixed by `T -> eta - T`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::{Genus2Curve, HyperellipticModel, JacobianError, MumfordDivisor, Poly, StepResult};
use crate::ring::{lambda, sqrt5_mod_lambda, Modulus, QuadExtContext, QuadExtElement, Residue};

/// Everything needed to act on the Jacobian of `y^2 = x^5 + h` over `Z/N`.
#[derive(Debug, Clone)]
pub struct JacContext {
    curve: Genus2Curve,
    ext: QuadExtContext,
    base: HyperellipticModel<Residue>,
    ext_model: HyperellipticModel<QuadExtElement>,
    /// `zeta^0, ..., zeta^4`.
    zeta_pows: Vec<QuadExtElement>,
}

impl JacContext {
    /// Requires `gcd(h, N) = 1`.
    pub fn new(curve: Genus2Curve, ext: QuadExtContext) -> Result<Self, JacobianError> {
        let modulus = ext.modulus().clone();
        let g = BigUint::from(curve.h().unsigned_abs()).gcd(modulus.value());
        if !g.is_one() {
            return Err(JacobianError::BadReduction(g));
        }
        let h = modulus.from_i64(curve.h());
        let base = HyperellipticModel::quintic(h.clone());
        let ext_model = HyperellipticModel::quintic(ext.lift(&h));
        let zeta = ext.zeta();
        let mut zeta_pows = vec![ext.lift(&modulus.one())];
        for k in 1..5 {
            let next = crate::ring::RingElement::mul(&zeta_pows[k - 1], &zeta);
            zeta_pows.push(next);
        }
        Ok(JacContext {
            curve,
            ext,
            base,
            ext_model,
            zeta_pows,
        })
    }

    /// Context for `lambda_n` with `sqrt(5) = 2*5^((n+1)/2)`.
    pub fn for_lambda(n: u64, h: i64) -> Result<Self, JacobianError> {
        let ext = sqrt5_mod_lambda(n).map_err(|_| JacobianError::BadReduction(lambda(n)))?;
        Self::new(Genus2Curve::new(h)?, ext)
    }

    pub fn curve(&self) -> Genus2Curve {
        self.curve
    }

    pub fn modulus(&self) -> &Modulus {
        self.ext.modulus()
    }

    pub fn ext(&self) -> &QuadExtContext {
        &self.ext
    }

    pub fn base(&self) -> &HyperellipticModel<Residue> {
        &self.base
    }

    pub fn ext_model(&self) -> &HyperellipticModel<QuadExtElement> {
        &self.ext_model
    }

    pub fn h(&self) -> Residue {
        self.modulus().from_i64(self.curve.h())
    }

    pub fn lift(&self, d: &MumfordDivisor<Residue>) -> MumfordDivisor<QuadExtElement> {
        d.map(|c| self.ext.lift(c))
    }

    fn zeta_pow(&self, k: i64) -> &QuadExtElement {
        &self.zeta_pows[k.rem_euclid(5) as usize]
    }
}

/// Apply `(x, y) -> (zeta^k x, y)` to every point of `D`.
///
/// With `u = prod (x - x_i)` and `v(x_i) = y_i`, the image has
/// `u'_j = zeta^(k(deg u - j)) u_j` and `v'_j = zeta^(-kj) v_j`.
pub fn zeta_twist(d: &MumfordDivisor<QuadExtElement>, k: u32, ctx: &JacContext) -> MumfordDivisor<QuadExtElement> {
    use crate::ring::RingElement;
    let k = k as i64;
    let deg = d.u().degree().unwrap_or(0) as i64;
    let u = d
        .u()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c.mul(ctx.zeta_pow(k * (deg - j as i64))))
        .collect();
    let v = d
        .v()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c.mul(ctx.zeta_pow(-k * j as i64)))
        .collect();
    let out = MumfordDivisor::from_parts(Poly::new(u), Poly::new(v));
    debug_assert!(ctx.ext_model.is_valid(&out), "twist broke the Mumford congruence");
    out
}

fn project(p: &Poly<QuadExtElement>) -> Result<Poly<Residue>, JacobianError> {
    p.coeffs()
        .iter()
        .map(|c| c.to_base().ok_or(JacobianError::GaloisStabilityViolated))
        .collect::<Result<Vec<_>, _>>()
        .map(Poly::new)
}

/// `eta(D) = zeta(D) + zeta^4(D)`.
pub fn eta_action(d: &MumfordDivisor<Residue>, ctx: &JacContext) -> StepResult<Residue> {
    match d.weight() {
        0 => Ok(d.clone()),
        1 => {
            // <x - x0, y0> goes to <x^2 - eta x0 x + x0^2, y0>, and u0 = -x0.
            let u0 = &d.u().coeffs()[0];
            let u = Poly::new(vec![u0.square(), ctx.ext.eta().mul(u0), ctx.modulus().one()]);
            let out = MumfordDivisor::from_parts(u, d.v().clone());
            debug_assert!(ctx.base.is_valid(&out));
            Ok(out)
        }
        _ => {
            let lifted = ctx.lift(d);
            let sum = ctx
                .ext_model
                .add(&zeta_twist(&lifted, 1, ctx), &zeta_twist(&lifted, 4, ctx))?;
            let out = MumfordDivisor::from_parts(project(sum.u())?, project(sum.v())?);
            debug_assert!(ctx.base.is_valid(&out));
            Ok(out)
        }
    }
}

/// `sqrt(5) D = 2 eta(D) + D`.
pub fn sqrt5_action(d: &MumfordDivisor<Residue>, ctx: &JacContext) -> StepResult<Residue> {
    let e = eta_action(d, ctx)?;
    let out = ctx.base.add(&ctx.base.double(&e)?, d)?;
    Ok(out)
}
