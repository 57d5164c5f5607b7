//! Built-in self-test: reference values and property checks, one line per
//! check. `--quick` drops the enumeration oracles above `F_499` and shortens
//! the sweeps.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::search::{cmd_search, SearchSpec};
use crate::{Family, RunOptions};
use curveprime::classic::lucas_lehmer;
use curveprime::cm::{gauss_count_check, test_s};
use curveprime::genus2::oracle::{
    enumerate_jacobian, eta_by_points, jacobian_order_oracle, two_torsion_oracle, SmallDivisorSampler,
};
use curveprime::genus2::{eta_action, parse_divisor, sqrt5_action, sqrt5_closed_form, HyperellipticModel, JacContext};
use curveprime::oracle::{is_prime_oracle, is_prime_small};
use curveprime::ring::{ExactRational, Modulus};
use curveprime::supersingular::{a_number, brute_group_structure, rational_multiple, test_a, RationalPoint};

/// Reference values the self-test compares against.
#[derive(Debug, Clone)]
pub struct Fixtures {
    /// x-coordinate of `13(-1, 2)` on `y^2 = x^3 - 5x`.
    pub x0: String,
    /// `4<x + 1, 3>` on `y^2 = x^5 + 10` over Q, coefficients low to high.
    pub d0_u: Vec<String>,
    pub d0_v: Vec<String>,
    /// `#E(F_37)` for `y^2 = x^3 - x`.
    pub gauss_37: u64,
    pub j19: u64,
    pub j499: u64,
    /// Mersenne prime exponents up to 127.
    pub mersenne_exponents: Vec<u64>,
    /// `(p, max n, certified n)` for the S family.
    pub s_rows: Vec<(u64, u64, Vec<u64>)>,
    /// Certified `n` for `4*5^n - 1` with `h = 10`, `F = <x + 1, 3>`, `n <= 250`.
    pub lambda_list: Vec<u64>,
}

impl Fixtures {
    pub fn builtin() -> Self {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect();
        Fixtures {
            x0: "-38867230505264472384304448711791072932034380121/20648248720215880190543854206835397627372795209"
                .into(),
            d0_u: s(&["117106201/70644025", "9678206/70644025", "1"]),
            d0_v: s(&["22033622417431/7125156361500", "3088313263561/7125156361500"]),
            gauss_37: 40,
            j19: 400,
            j499: 250_000,
            mersenne_exponents: vec![3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127],
            s_rows: vec![
                (11, 300, vec![11, 21, 24, 57, 66, 80, 183, 197]),
                (19, 300, vec![7, 9, 25, 78, 142]),
                (29, 300, vec![6, 19, 33, 36, 86, 103]),
                (31, 300, vec![5, 65, 142, 148, 196]),
                (41, 300, vec![12, 18, 48, 81, 113]),
            ],
            lambda_list: vec![3, 9, 13, 15, 25, 39, 69, 165, 171, 209],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub ms: u64,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            format!("{tag} {} ({} ms)", self.name, self.ms)
        } else {
            format!("{tag} {}: {} ({} ms)", self.name, self.detail, self.ms)
        }
    }
}

type Check<'a> = (&'static str, Box<dyn Fn() -> Result<(), String> + 'a>);

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn checks<'a>(fx: &'a Fixtures, quick: bool, jobs: usize) -> Vec<Check<'a>> {
    let big_bound = if quick { 499 } else { 2000 };
    let gauss_bound = if quick { 499 } else { 10_000 };
    let s_cap = if quick { 80 } else { 200 };
    let lambda_cap = if quick { 69 } else { 171 };
    let a_cap = if quick { 24 } else { 40 };
    vec![
        (
            "13(-1,2) on y^2 = x^3 - 5x",
            Box::new(|| {
                let r = rational_multiple(&BigInt::from(5), &RationalPoint::from_integers(-1, 2), &BigUint::from(13u32));
                expect_eq("x", r.x().map(|x| x.to_string()), Some(fx.x0.clone()))
            }),
        ),
        (
            "4<x+1,3> on y^2 = x^5 + 10 over Q",
            Box::new(|| {
                let model = HyperellipticModel::quintic(ExactRational::from_integer(10.into()));
                let f = parse_divisor("x+1;3").map_err(|e| e.to_string())?;
                let d0 = model.mul_u64(4, &f).map_err(|e| e.to_string())?;
                let text = |c: &[ExactRational]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>();
                expect_eq("u", text(d0.u().coeffs()), fx.d0_u.clone())?;
                expect_eq("v", text(d0.v().coeffs()), fx.d0_v.clone())
            }),
        ),
        (
            "Lucas-Lehmer exponents up to 127",
            Box::new(|| {
                let got: Vec<u64> = (3..=127)
                    .filter(|&p| lucas_lehmer(p).is_ok_and(|o| o.is_certified_prime()))
                    .collect();
                expect_eq("exponents", got, fx.mersenne_exponents.clone())
            }),
        ),
        (
            "Gauss count on y^2 = x^3 - x",
            Box::new(move || {
                expect_eq("#E(F_37)", gauss_count_check(37).map(|c| c.0).ok(), Some(fx.gauss_37))?;
                for q in (5..=gauss_bound).filter(|q| q % 4 == 1 && is_prime_small(*q)) {
                    gauss_count_check(q).map_err(|e| format!("q = {q}: {e}"))?;
                }
                Ok(())
            }),
        ),
        (
            "#E_t(F_p) = p + 1 for p = 3 mod 4",
            Box::new(move || {
                for p in (3..=big_bound).filter(|p| p % 4 == 3 && is_prime_small(*p)) {
                    let g = brute_group_structure(p, 2).map_err(|e| e.to_string())?;
                    expect_eq(&format!("order at p = {p}"), g.order, p + 1)?;
                }
                Ok(())
            }),
        ),
        (
            "Jacobian orders and 2-torsion",
            Box::new(|| {
                expect_eq("#J(F_19)", jacobian_order_oracle(19, 10).ok(), Some(fx.j19))?;
                expect_eq("#J(F_499)", jacobian_order_oracle(499, 10).ok(), Some(fx.j499))?;
                for q in [19, 499] {
                    let t = two_torsion_oracle(q, 10).map_err(|e| e.to_string())?;
                    expect_eq(&format!("J[2] at {q} is (Z/2)^2"), t.is_klein_four(), true)?;
                }
                Ok(())
            }),
        ),
        (
            "sqrt5 and eta on all of J(F_19)",
            Box::new(|| {
                let ctx = JacContext::for_lambda(1, 10).map_err(|e| e.to_string())?;
                let eta = ctx.ext().eta().value().to_u64_digits().first().copied().unwrap_or(0);
                let all = enumerate_jacobian(19, 10).map_err(|e| e.to_string())?;
                expect_eq("#J(F_19) by enumeration", all.len() as u64, fx.j19)?;
                for d in &all {
                    let once = sqrt5_action(d, &ctx).map_err(|e| e.to_string())?;
                    let twice = sqrt5_action(&once, &ctx).map_err(|e| e.to_string())?;
                    let five = ctx.base().mul_u64(5, d).map_err(|e| e.to_string())?;
                    expect_eq("sqrt5^2 D = 5D", &twice, &five)?;
                    let pointwise = eta_by_points(19, 10, eta, d);
                    expect_eq("eta(D)", eta_action(d, &ctx).ok(), pointwise)?;
                }
                Ok(())
            }),
        ),
        (
            "closed form against the action mod 499",
            Box::new(|| {
                let ctx = JacContext::for_lambda(3, 10).map_err(|e| e.to_string())?;
                let sampler = SmallDivisorSampler::new(499, 10);
                let mut rng = ChaCha20Rng::seed_from_u64(499);
                let mut agreed = 0;
                for _ in 0..400 {
                    let d = sampler.random_divisor(ctx.base(), &mut rng).map_err(|e| e.to_string())?;
                    let want = sqrt5_action(&d, &ctx).map_err(|e| e.to_string())?;
                    if let Ok(got) = sqrt5_closed_form(&d, &ctx) {
                        expect_eq("closed form", &got, &want)?;
                        agreed += 1;
                    }
                }
                if agreed < 300 {
                    return Err(format!("only {agreed} of 400 divisors in the closed-form domain"));
                }
                Ok(())
            }),
        ),
        (
            "Mumford congruence under random additions",
            Box::new(|| {
                let mut rng = ChaCha20Rng::seed_from_u64(5);
                for (q, h) in [(19u64, 10i64), (101, 3), (499, 10), (1009, 7)] {
                    let md = Modulus::from_u64(q).map_err(|e| e.to_string())?;
                    let model = HyperellipticModel::quintic(md.from_i64(h));
                    let sampler = SmallDivisorSampler::new(q, h);
                    let mut acc = model.identity();
                    for _ in 0..200 {
                        let d = sampler.random_divisor(&model, &mut rng).map_err(|e| e.to_string())?;
                        acc = model.add(&acc, &d).map_err(|e| e.to_string())?;
                        if !model.is_valid(&acc) {
                            return Err(format!("invalid sum mod {q}: {acc:?}"));
                        }
                    }
                }
                Ok(())
            }),
        ),
        (
            "A-family verdicts against the oracle",
            Box::new(move || {
                for m in (1..=25u64).step_by(2) {
                    for n in 2..=a_cap {
                        if let Ok(o) = test_a(m, n) {
                            let truth = is_prime_oracle(&a_number(m, n)).says_prime();
                            expect_eq(&format!("m = {m}, n = {n}"), o.is_certified_prime(), truth)?;
                        }
                    }
                }
                Ok(())
            }),
        ),
        (
            "S-family rows",
            Box::new(move || {
                for (p, max_n, want) in &fx.s_rows {
                    let cap = (*max_n).min(s_cap);
                    let spec = SearchSpec {
                        family: Family::S,
                        m: None,
                        p: Some(*p),
                        h: crate::DEFAULT_H,
                        f: crate::DEFAULT_F.into(),
                        min_n: None,
                        max_n: cap,
                    };
                    let got = cmd_search(&spec, RunOptions::default(), jobs, |_| {}).map_err(|e| e.to_string())?;
                    let want: Vec<u64> = want.iter().copied().filter(|&n| n <= cap).collect();
                    expect_eq(&format!("p = {p}, n <= {cap}"), got.certified, want)?;
                    if quick {
                        break;
                    }
                }
                // One negative case straight through the module.
                expect_eq("test_s(11, 12) composite", test_s(11, 12).map(|o| o.is_composite()), Ok(true))
            }),
        ),
        (
            "lambda_n list",
            Box::new(move || {
                let spec = SearchSpec {
                    family: Family::L,
                    m: None,
                    p: None,
                    h: 10,
                    f: crate::DEFAULT_F.into(),
                    min_n: None,
                    max_n: lambda_cap,
                };
                let got = cmd_search(&spec, RunOptions::default(), jobs, |_| {}).map_err(|e| e.to_string())?;
                let want: Vec<u64> = fx.lambda_list.iter().copied().filter(|&n| n <= lambda_cap).collect();
                expect_eq(&format!("n <= {lambda_cap}"), got.certified, want)
            }),
        ),
    ]
}

/// Run every check, reporting each to `sink`. Returns the process exit code:
/// 0 when all pass, 1 otherwise.
pub fn cmd_selftest(fixtures: &Fixtures, quick: bool, jobs: usize, mut sink: impl FnMut(&CheckResult)) -> i32 {
    let mut failed = 0;
    for (name, check) in checks(fixtures, quick, jobs) {
        let start = Instant::now();
        let outcome = check();
        let result = CheckResult {
            name: name.to_string(),
            passed: outcome.is_ok(),
            detail: outcome.err().unwrap_or_default(),
            ms: start.elapsed().as_millis() as u64,
        };
        if !result.passed {
            failed += 1;
        }
        sink(&result);
    }
    i32::from(failed > 0)
}
