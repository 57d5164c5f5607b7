use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use curveprime::classic::{lucas_certify, lucas_lehmer, lucas_lehmer_sequence, mersenne, PellPoint};
use curveprime::cm::test_s;
use curveprime::ec::{Point, Weierstrass};
use curveprime::genus2::oracle::SmallDivisorSampler;
use curveprime::genus2::HyperellipticModel;
use curveprime::oracle::{enumerate_curve_points, is_prime_oracle, CurveSpec, is_prime_small, is_proper_divisor, small_prime_factors};
use curveprime::ring::Modulus;
use curveprime::supersingular::{a_number, brute_group_structure, rational_multiple, test_a, RationalPoint};
use curveprime::TestOutcome;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

const X0: &str = "-38867230505264472384304448711791072932034380121/20648248720215880190543854206835397627372795209";

fn pell_multiple(p: &PellPoint, k: u64, md: &Modulus) -> PellPoint {
    let mut acc = PellPoint::identity(md);
    for _ in 0..k {
        acc = acc.add(p);
    }
    acc
}

fn small_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi).filter(|&q| is_prime_small(q)).collect()
}

#[test]
fn thirteen_times_minus_one_two() {
    let p = RationalPoint::from_integers(-1, 2);
    let r = rational_multiple(&BigInt::from(5), &p, &BigUint::from(13u32));
    assert_eq!(r.x().unwrap().to_string(), X0);
    assert!(r.on_curve(&BigInt::from(5)));
}

#[test]
fn lucas_lehmer_matches_pell_doubling() {
    for p in 3..=31u64 {
        let md = Modulus::new(mersenne(p)).unwrap();
        let mut pt = PellPoint::new(md.from_i64(2), md.from_i64(1)).unwrap();
        for (j, a) in lucas_lehmer_sequence(p).unwrap().iter().enumerate() {
            assert_eq!(*a, pt.x().mul_small(2), "p = {p}, j = {j}");
            pt = pt.double();
        }
    }
}

#[test]
fn lucas_lehmer_agrees_with_oracle() {
    for p in 3..=61u64 {
        let certified = lucas_lehmer(p).unwrap().is_certified_prime();
        assert_eq!(certified, is_prime_oracle(&mersenne(p)).says_prime(), "p = {p}");
    }
}

#[test]
fn lucas_certificates_are_sound_and_complete() {
    for n in 3..3000u64 {
        let factors = small_prime_factors(n - 1);
        let certified = (2..n.min(50))
            .any(|a| lucas_certify(&BigUint::from(n), &BigUint::from(a), &factors).unwrap().is_certified_prime());
        assert_eq!(certified, is_prime_small(n), "n = {n}");
    }
}

#[test]
fn supersingular_orders_small() {
    for p in small_primes(3, 400).into_iter().filter(|p| p % 4 == 3) {
        for t in [1u64, 2, 3] {
            if (t * t + 1) % p == 0 {
                continue;
            }
            assert_eq!(brute_group_structure(p, t).unwrap().order, p + 1);
        }
    }
}

#[test]
fn witnesses_divide_n() {
    for m in (1..=15u64).step_by(2) {
        for n in 2..=30u64 {
            if let Ok(TestOutcome::CompositeWitness { factor: Some(g), .. }) = test_a(m, n) {
                assert!(is_proper_divisor(&g, &a_number(m, n)));
            }
        }
    }
    for n in 4..=40u64 {
        if let Ok(TestOutcome::CompositeWitness { factor: Some(g), .. }) = test_s(11, n) {
            assert!(is_proper_divisor(&g, &curveprime::cm::s_number(11, n)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pell_group_law(qi in 0usize..40, a in 0u64..60, b in 0u64..60, c in 0u64..60) {
        let q = small_primes(5, 400)[qi];
        let md = Modulus::from_u64(q).unwrap();
        let g = PellPoint::new(md.from_i64(2), md.from_i64(1)).unwrap();
        let (pa, pb, pc) = (pell_multiple(&g, a, &md), pell_multiple(&g, b, &md), pell_multiple(&g, c, &md));
        prop_assert_eq!(pa.add(&pb), pb.add(&pa));
        prop_assert_eq!(pa.add(&pb).add(&pc), pa.add(&pb.add(&pc)));
        prop_assert_eq!(pa.add(&pb), pell_multiple(&g, a + b, &md));
    }

    #[test]
    fn weierstrass_group_law(qi in 0usize..30, t in 1u64..5, k1 in 1u64..50, k2 in 1u64..50) {
        let p = small_primes(7, 500).into_iter().filter(|p| p % 4 == 3).nth(qi).unwrap();
        prop_assume!((t * t + 1) % p != 0);
        let md = Modulus::from_u64(p).unwrap();
        let curve = Weierstrass::new(md.from_i64(-((t * t + 1) as i64)), md.zero());
        let base = Point::affine(md.from_i64(-1), md.from_i64(t as i64));
        prop_assert!(curve.contains(&base));
        let a = curve.mul(&BigUint::from(k1), &base).unwrap();
        let b = curve.mul(&BigUint::from(k2), &base).unwrap();
        prop_assert_eq!(curve.add(&a, &b).unwrap(), curve.mul(&BigUint::from(k1 + k2), &base).unwrap());
        prop_assert_eq!(curve.add(&a, &b).unwrap(), curve.add(&b, &a).unwrap());
        prop_assert!(curve.mul(&BigUint::from(p + 1), &base).unwrap().is_infinity());
    }

    #[test]
    fn mumford_group_law(qi in 0usize..40, h in 1i64..30, seed in any::<u64>()) {
        let q = small_primes(11, 600)[qi];
        prop_assume!(h as u64 % q != 0);
        // For q = 1 mod 5 some x^5 + h take no square value at all.
        let affine = enumerate_curve_points(q, &CurveSpec::quintic(h)).unwrap().points.len();
        prop_assume!(affine > 0);
        let md = Modulus::from_u64(q).unwrap();
        let model = HyperellipticModel::quintic(md.from_i64(h));
        let sampler = SmallDivisorSampler::new(q, h);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let d1 = sampler.random_divisor(&model, &mut rng).unwrap();
        let d2 = sampler.random_divisor(&model, &mut rng).unwrap();
        let d3 = sampler.random_point(&model, &mut rng);
        for d in [&d1, &d2, &d3] {
            prop_assert!(model.is_valid(d));
        }
        let s12 = model.add(&d1, &d2).unwrap();
        prop_assert!(model.is_valid(&s12));
        prop_assert_eq!(&s12, &model.add(&d2, &d1).unwrap());
        let left = model.add(&s12, &d3).unwrap();
        let right = model.add(&d1, &model.add(&d2, &d3).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(model.add(&d1, &model.neg(&d1)).unwrap().is_identity());
        prop_assert_eq!(model.double(&d1).unwrap(), model.add(&d1, &d1).unwrap());
    }

    #[test]
    fn test_a_agrees_with_oracle(mi in 0u64..13, n in 2u64..40) {
        let m = 2 * mi + 1;
        if let Ok(outcome) = test_a(m, n) {
            let truth = is_prime_oracle(&a_number(m, n)).says_prime();
            prop_assert_eq!(outcome.is_certified_prime(), truth, "m = {}, n = {}", m, n);
        }
    }
}
