use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use quartic_fermat::arith::{
    congruent_above_p, gaussian_factor_split_prime, legendre, primes_up_to, Gaussian, Rt2,
};
use quartic_fermat::frey::{build_frey, f2_model, trace_split, Variant};
use quartic_fermat::newforms::{eigenvalue, record, verify_two_squares_law, CmField, Eigenvalue, Label};
use quartic_fermat::obstruction::{
    cartan_type, first_case_constraint, level_raising_rhs, theorem1_verdict, Branch, CartanType, Verdict,
};
use quartic_fermat::two_squares::{compose, TwoSquares};
use quartic_fermat::{Int, Rt2Int};

fn b(n: i64) -> Int {
    Int::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gaussian_norm_is_multiplicative(a in -10_000i64..10_000, c in -10_000i64..10_000, d in -10_000i64..10_000, e in -10_000i64..10_000) {
        let x = Gaussian::new(b(a), b(c));
        let y = Gaussian::new(b(d), b(e));
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.conj() * x.clone(), Gaussian::from_int(x.norm()));
    }

    #[test]
    fn rt2_norm_is_multiplicative(a in -10_000i64..10_000, c in -10_000i64..10_000, d in -10_000i64..10_000, e in -10_000i64..10_000) {
        let x = Rt2::new(b(a), b(c));
        let y = Rt2::new(b(d), b(e));
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
    }

    #[test]
    fn composition_represents_product(a in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000, e in -1000i64..1000) {
        let r = compose(&TwoSquares::new(b(a), b(c)), &TwoSquares::new(b(d), b(e)));
        prop_assert!(r.holds());
        prop_assert_eq!(r.n, b((a * a + c * c) * (d * d + e * e)));
    }

    #[test]
    fn i64_and_bigint_gaussians_agree(a in -3000i64..3000, c in -3000i64..3000, d in -3000i64..3000, e in -3000i64..3000) {
        let small = Gaussian::new(a, c) * Gaussian::new(d, e);
        let big = Gaussian::new(b(a), b(c)) * Gaussian::new(b(d), b(e));
        prop_assert_eq!((b(small.re), b(small.im)), (big.re, big.im));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn congruence_is_an_equivalence_compatible_with_p_multiples(
        pi in 1usize..40, a in -50i64..50, c in -50i64..50, d in -50i64..50, e in -50i64..50, k in -5i64..5, m in -5i64..5
    ) {
        let p = b(primes_up_to(200)[pi] as i64);
        let x = Rt2::new(b(a), b(c));
        let y = Rt2::new(b(d), b(e));
        prop_assert!(congruent_above_p(&x, &x, &p).unwrap());
        prop_assert_eq!(congruent_above_p(&x, &y, &p).unwrap(), congruent_above_p(&y, &x, &p).unwrap());
        let shift = Rt2::new(&p * k, &p * m);
        prop_assert_eq!(
            congruent_above_p(&x, &(y.clone() + shift), &p).unwrap(),
            congruent_above_p(&x, &y, &p).unwrap()
        );
    }
}

#[test]
fn split_primes_round_trip() {
    for q in primes_up_to(10_000).into_iter().filter(|q| q % 4 == 1) {
        let (pi, pibar) = gaussian_factor_split_prime(&b(q as i64)).unwrap();
        assert_eq!(pi.clone() * pibar.clone(), Gaussian::from_int(b(q as i64)));
        assert_eq!(pibar, pi.conj());
        assert!(pi.re.is_odd() && pi.re > b(0) && pi.im.is_even() && pi.im > b(0));
    }
    assert!(gaussian_factor_split_prime(&b(3)).is_err());
    assert!(gaussian_factor_split_prime(&b(2)).is_err());
}

#[test]
fn level_raising_dichotomy_on_random_pairs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let primes = primes_up_to(5000);
    let mut checked = 0;
    while checked < 1000 {
        let p = b(primes[rng.gen_range(1..primes.len())] as i64);
        let k: i64 = rng.gen_range(1..2000);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let q = &p * k + sign;
        if q == p || q < b(2) {
            continue;
        }
        let v = level_raising_rhs(&q, &p).unwrap();
        assert_eq!(v, if sign == 1 { b(4) % &p } else { b(0) }, "q={q} p={p}");
        checked += 1;
    }
}

#[test]
fn cartan_type_matches_residue_classes() {
    for p in primes_up_to(10_000).into_iter().skip(1) {
        let pb = b(p as i64);
        assert_eq!(cartan_type(CmField::QI, &pb).unwrap() == CartanType::NonSplit, p % 4 == 3);
        assert_eq!(cartan_type(CmField::QSqrtMinus2, &pb).unwrap() == CartanType::NonSplit, p % 8 == 5 || p % 8 == 7);
    }
}

#[test]
fn theorem1_sweep_below_ten_thousand() {
    for p in primes_up_to(10_000) {
        let v = theorem1_verdict(&b(p as i64)).unwrap().verdict;
        let expect = p > 13 && [1, 3, 5].contains(&(p % 8));
        assert_eq!(v == Verdict::Eliminated, expect, "p = {p}");
        if !expect {
            assert_eq!(v, Verdict::NotCovered);
        }
    }
}

#[test]
fn first_case_constraint_is_total() {
    let qs: Vec<u64> = primes_up_to(100_000).into_iter().filter(|q| q % 4 == 1).collect();
    for p in [19i64, 23, 31] {
        let pb = b(p);
        let mut minus = 0;
        for &q in &qs {
            let a = first_case_constraint(&b(q as i64), &pb).unwrap();
            let qm = q as i64 % p;
            let expected_excluded = (qm * qm) % p != 1;
            assert_eq!(a.branch == Branch::ExcludedBy33, expected_excluded);
            if qm == p - 1 {
                minus += 1;
                assert_eq!(a.branch, Branch::MinusOneBranchContradiction, "q={q} p={p}");
            }
        }
        assert!(minus > 0);
        assert_eq!(legendre(&b(-1), &pb).unwrap(), -1);
    }
}

#[test]
fn cm_vanishing() {
    for q in primes_up_to(500).into_iter().skip(1) {
        let qb = b(q as i64);
        if q % 4 == 3 {
            assert_eq!(eigenvalue(Label::F1, &qb).unwrap(), Eigenvalue::Rational(0), "f1 at {q}");
        }
        if legendre(&b(-2), &qb).unwrap() == -1 {
            assert_eq!(eigenvalue(Label::F5, &qb).unwrap(), Eigenvalue::Rational(0), "f5 at {q}");
            assert_eq!(eigenvalue(Label::F6, &qb).unwrap(), Eigenvalue::Rational(0), "f6 at {q}");
            assert!(eigenvalue(Label::F2, &qb).unwrap().matches(&Rt2::rational(b(0))), "f2 at {q}");
        }
    }
}

#[test]
fn two_squares_law_up_to_ten_thousand() {
    for q in primes_up_to(10_000).into_iter().filter(|q| q % 4 == 1) {
        let law = verify_two_squares_law(&b(q as i64)).unwrap();
        assert_eq!(law.a_q, b(2) * &law.alpha);
        assert_eq!(&law.alpha * &law.alpha + &law.beta * &law.beta, b(q as i64));
    }
}

#[test]
fn f2_table_and_conjugate_match() {
    let rec = record(Label::F2).unwrap();
    let conj: Vec<Rt2Int> = rec.table.values().map(|v| v.conj()).collect();
    for ((p, entry), c) in rec.table.iter().zip(&conj) {
        let e = eigenvalue(Label::F2, &b(*p as i64)).unwrap();
        assert!(e.matches(entry) && e.matches(c), "f2 at {p}: {e} vs {entry}");
        if entry.irr == b(0) {
            assert_eq!(entry, c);
        }
    }
}

#[test]
fn split_traces_agree_on_conjugate_primes() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(100);
    let mut pairs = BTreeSet::new();
    while pairs.len() < 50 {
        let (x, y): (i64, i64) = (rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        if x.gcd(&y) == 1 {
            pairs.insert((x, y));
        }
    }
    for (x, y) in pairs {
        for v in [Variant::AB, Variant::BA] {
            let e = build_frey(&b(x), &b(y), v).unwrap();
            for q in primes_up_to(100).into_iter().filter(|q| q % 4 == 1) {
                if e.has_good_reduction(&b(q as i64)) {
                    let t = trace_split(&e.curve, &b(q as i64)).unwrap();
                    assert!(t * t <= 4 * q as i64);
                }
            }
        }
    }
    assert_eq!(trace_split(&f2_model(), &b(17)).unwrap(), 6);
}
