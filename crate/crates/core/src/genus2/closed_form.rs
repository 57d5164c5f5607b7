//! `sqrt(5)` on generic divisors as explicit rational maps in the Mumford
//! coordinates.
//!
//! For `D = <x^2 - A x + B, C x + D>` the image is
//! `<x^2 + (An/Ad) x + Bn/Bd, (Cn/Cd) x + D'>`, where the six polynomials in
//! `A, B, C, h, d` are kept as text in `sqrt5_maps.txt` and parsed once, and
//! `D'` follows from the congruence `v^2 = x^5 + h mod u`. Note the sign: the
//! maps read `A` as the sum of the roots of `u` but return the linear
//! coefficient of the image. `d` is the square root of 5 fixed by the
//! context (`2*5^((n+1)/2)` modulo `lambda_n`).

use std::sync::OnceLock;

use num_bigint::BigInt;

use super::{JacContext, JacobianError, MumfordDivisor, Poly, StepResult};
use crate::ring::{invert, ExactRational, InverseOutcome, Obstruction, Residue, RingElement};

const MAPS_SOURCE: &str = include_str!("sqrt5_maps.txt");

/// Variables of the maps, in exponent-vector order.
const VARIABLES: [&str; 5] = ["A", "B", "C", "h", "d"];

#[derive(Debug, Clone, PartialEq)]
struct Term {
    coeff: ExactRational,
    exps: [u32; 5],
}

/// A polynomial with rational coefficients in `A, B, C, h, d`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapPolynomial {
    terms: Vec<Term>,
}

/// The six polynomials `An, Ad, Bn, Bd, Cn, Cd`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sqrt5Maps {
    pub an: MapPolynomial,
    pub ad: MapPolynomial,
    pub bn: MapPolynomial,
    pub bd: MapPolynomial,
    pub cn: MapPolynomial,
    pub cd: MapPolynomial,
}

fn parse_term(text: &str) -> Result<Term, String> {
    let mut coeff = ExactRational::from_integer(BigInt::from(1));
    let mut exps = [0u32; 5];
    for factor in text.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(format!("empty factor in {text:?}"));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            let value = match factor.split_once('/') {
                Some((n, d)) => ExactRational::new(
                    n.parse::<BigInt>().map_err(|e| e.to_string())?,
                    d.parse::<BigInt>().map_err(|e| e.to_string())?,
                ),
                None => ExactRational::from_integer(factor.parse::<BigInt>().map_err(|e| e.to_string())?),
            };
            coeff *= value;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|e| e.to_string())?),
            None => (factor, 1),
        };
        let slot = VARIABLES
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| format!("unknown variable {name:?}"))?;
        exps[slot] += exp;
    }
    Ok(Term { coeff, exps })
}

fn parse_polynomial(body: &str) -> Result<MapPolynomial, String> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1i32;
    let flush = |current: &mut String, sign: i32, terms: &mut Vec<Term>| -> Result<(), String> {
        let t = current.trim();
        if !t.is_empty() {
            let mut term = parse_term(t)?;
            if sign < 0 {
                term.coeff = -term.coeff;
            }
            terms.push(term);
        }
        current.clear();
        Ok(())
    };
    for ch in body.chars() {
        match ch {
            // Exponents and denominators are unsigned, so every sign starts
            // a new term.
            '+' | '-' => {
                flush(&mut current, sign, &mut terms)?;
                sign = if ch == '-' { -1 } else { 1 };
            }
            c if c.is_whitespace() => {}
            c => current.push(c),
        }
    }
    flush(&mut current, sign, &mut terms)?;
    Ok(MapPolynomial { terms })
}

impl Sqrt5Maps {
    pub fn parse(source: &str) -> Result<Self, String> {
        let mut found: Vec<(String, MapPolynomial)> = Vec::new();
        for stmt in source.split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let (name, body) = stmt.split_once(":=").ok_or_else(|| format!("missing ':=' in {stmt:.40}"))?;
            found.push((name.trim().to_string(), parse_polynomial(body)?));
        }
        let mut take = |name: &str| {
            found
                .iter()
                .position(|(n, _)| n == name)
                .map(|i| found.swap_remove(i).1)
                .ok_or_else(|| format!("map {name} missing"))
        };
        Ok(Sqrt5Maps {
            an: take("An")?,
            ad: take("Ad")?,
            bn: take("Bn")?,
            bd: take("Bd")?,
            cn: take("Cn")?,
            cd: take("Cd")?,
        })
    }

    /// The maps bundled with the crate.
    pub fn bundled() -> &'static Sqrt5Maps {
        static MAPS: OnceLock<Sqrt5Maps> = OnceLock::new();
        MAPS.get_or_init(|| Sqrt5Maps::parse(MAPS_SOURCE).expect("bundled maps parse"))
    }
}

impl MapPolynomial {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Evaluate at `vars = [A, B, C, h, d]` modulo `N`.
    fn eval(&self, vars: &[Residue; 5]) -> Result<Residue, Obstruction> {
        let md = vars[0].modulus();
        let mut pows: Vec<Vec<Residue>> = Vec::with_capacity(5);
        for (slot, v) in vars.iter().enumerate() {
            let max = self.terms.iter().map(|t| t.exps[slot]).max().unwrap_or(0) as usize;
            let mut p = vec![md.one()];
            for k in 1..=max {
                let next = p[k - 1].mul(v);
                p.push(next);
            }
            pows.push(p);
        }
        let mut acc = md.zero();
        for t in &self.terms {
            let c = match md.reduce_rational(&t.coeff) {
                InverseOutcome::Inverse(c) => c,
                InverseOutcome::ProperFactor(g) => return Err(Obstruction::Factor(g)),
                _ => return Err(Obstruction::ZeroDenominator),
            };
            let mut term = c;
            for slot in 0..5 {
                let e = t.exps[slot] as usize;
                if e > 0 {
                    term = term.mul(&pows[slot][e]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// The constant coefficient `D'` of `v = cc x + D'` for `u = x^2 + aa x + bb`.
///
/// Uses `sigma1 = (2h - aa^5 - 5 aa bb^2 + 5 aa^3 bb - cc^2(aa^2 - 4bb))/2`
/// and `D' = cc(h - aa^5 - 5 aa bb^2 + 5 aa^3 bb + sigma1
/// + aa(aa^2 - 3bb)(aa^2 - bb)) / (aa^4 - bb(3aa^2 - bb))`; when that
/// denominator vanishes, falls back to the x-coefficient of
/// `v^2 - x^5 - h mod u`, which gives
/// `2 cc D' = aa^4 - 3 aa^2 bb + bb^2 + aa cc^2`.
fn constant_coefficient(aa: &Residue, bb: &Residue, cc: &Residue, h: &Residue) -> Result<Residue, JacobianError> {
    let aa2 = aa.square();
    let aa3 = aa2.mul(aa);
    let aa5 = aa3.mul(&aa2);
    let bb2 = bb.square();
    let common = aa5
        .neg()
        .sub(&aa.mul(&bb2).mul_small(5))
        .add(&aa3.mul(bb).mul_small(5));
    let half = invert(&aa.from_i64_like(2)).map_err(excluded_on_zero)?;
    let sigma1 = h
        .mul_small(2)
        .add(&common)
        .sub(&cc.square().mul(&aa2.sub(&bb.mul_small(4))))
        .mul(&half);
    let r1 = aa2.square().sub(&aa2.mul(bb).mul_small(3)).add(&bb2);
    match invert(&r1) {
        Ok(inv) => {
            let twist = aa.mul(&aa2.sub(&bb.mul_small(3))).mul(&aa2.sub(bb));
            Ok(cc.mul(&h.add(&common).add(&sigma1).add(&twist)).mul(&inv))
        }
        Err(Obstruction::ZeroDenominator) => {
            let inv = invert(&cc.mul_small(2)).map_err(excluded_on_zero)?;
            Ok(r1.add(&aa.mul(&cc.square())).mul(&inv))
        }
        Err(other) => Err(other.into()),
    }
}

fn excluded_on_zero(o: Obstruction) -> JacobianError {
    match o {
        Obstruction::ZeroDenominator => JacobianError::DomainExcluded,
        other => other.into(),
    }
}

/// `sqrt(5) D` through the explicit maps. Defined for weight-2 divisors whose
/// image also has weight 2 and for which every denominator is a unit.
pub fn sqrt5_closed_form(d: &MumfordDivisor<Residue>, ctx: &JacContext) -> StepResult<Residue> {
    if d.weight() != 2 {
        return Err(JacobianError::DomainExcluded);
    }
    let md = ctx.modulus();
    let zero = md.zero();
    // The maps take the negated linear coefficient of u as input but return
    // the linear coefficient of the image's u as is.
    let a = d.u().coeff_or(1, &zero).neg();
    let b = d.u().coeff_or(0, &zero);
    let c = d.v().coeff_or(1, &zero);
    let h = ctx.h();
    let vars = [a, b, c, h.clone(), ctx.ext().sqrt5().clone()];
    let maps = Sqrt5Maps::bundled();
    let ratio = |num: &MapPolynomial, den: &MapPolynomial| -> Result<Residue, JacobianError> {
        let n = num.eval(&vars).map_err(excluded_on_zero)?;
        let dv = den.eval(&vars).map_err(excluded_on_zero)?;
        Ok(n.mul(&invert(&dv).map_err(excluded_on_zero)?))
    };
    let aa = ratio(&maps.an, &maps.ad)?;
    let bb = ratio(&maps.bn, &maps.bd)?;
    let cc = ratio(&maps.cn, &maps.cd)?;
    let dd = constant_coefficient(&aa, &bb, &cc, &h)?;

    let u = Poly::new(vec![bb, aa, md.one()]);
    let v = Poly::new(vec![dd, cc]);
    let out = MumfordDivisor::from_parts(u, v);
    if !ctx.base().is_valid(&out) {
        return Err(JacobianError::DomainExcluded);
    }
    Ok(out)
}

/// The closed form with the translation trick: if `D` or its image is
/// outside the domain, use `sqrt(5)(D + D_c) - sqrt(5)(D_c)` for
/// `D_c = k<x+1, 3>`, `k = 2, 3, 5` in turn.
pub fn sqrt5_closed_form_translated(d: &MumfordDivisor<Residue>, ctx: &JacContext) -> StepResult<Residue> {
    match sqrt5_closed_form(d, ctx) {
        Err(JacobianError::DomainExcluded) => {}
        other => return other,
    }
    let md = ctx.modulus();
    let base = ctx
        .base()
        .point(&md.from_i64(-1), &md.from_i64(3))
        .ok_or(JacobianError::DomainExcluded)?;
    for k in [2u64, 3, 5] {
        let dc = ctx.base().mul_u64(k, &base)?;
        let shifted = ctx.base().add(d, &dc)?;
        let (Ok(s1), Ok(s2)) = (sqrt5_closed_form(&shifted, ctx), sqrt5_closed_form(&dc, ctx)) else {
            continue;
        };
        return Ok(ctx.base().add(&s1, &ctx.base().neg(&s2))?);
    }
    Err(JacobianError::DomainExcluded)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_maps_parse() {
        let m = Sqrt5Maps::bundled();
        for p in [&m.an, &m.ad, &m.bn, &m.bd, &m.cn, &m.cd] {
            assert!(p.term_count() > 20);
        }
        // The two denominators of the u-coefficients are the same polynomial.
        assert_eq!(m.ad, m.bd);
        assert!(m.cn.terms.iter().all(|t| t.exps[4] == 1 && t.exps[2] % 2 == 1));
    }

    #[test]
    fn parse_small_polynomial() {
        let p = parse_polynomial(" -2*A^2*B + 3/4*h - C + d*A").unwrap();
        assert_eq!(p.term_count(), 4);
        assert_eq!(p.terms[0].coeff, ExactRational::from_integer((-2).into()));
        assert_eq!(p.terms[0].exps, [2, 1, 0, 0, 0]);
        assert_eq!(p.terms[1].coeff, ExactRational::new(3.into(), 4.into()));
        assert_eq!(p.terms[2].coeff, ExactRational::from_integer((-1).into()));
        assert_eq!(p.terms[3].exps, [1, 0, 0, 0, 1]);
    }

    #[test]
    fn identity_and_points_are_excluded() {
        let ctx = JacContext::for_lambda(3, 10).unwrap();
        let id = ctx.base().identity();
        assert_eq!(sqrt5_closed_form(&id, &ctx), Err(JacobianError::DomainExcluded));
        let p = ctx.base().point(&ctx.modulus().from_i64(-1), &ctx.modulus().from_i64(3)).unwrap();
        assert_eq!(sqrt5_closed_form(&p, &ctx), Err(JacobianError::DomainExcluded));
    }
}
