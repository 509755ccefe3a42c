//! Brute-force search for primitive solutions, and the side claims about
//! the prime factors of `A^4 + B^4`.

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{factorize_u64, is_perfect_kth_power};
use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub a: u64,
    pub b: u64,
    pub c: Int,
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideClaimViolation {
    /// `gcd(6, A^4 + B^4) != 1`.
    SharesFactorWithSix { a: u64, b: u64, n: u64 },
    /// A prime factor `3 mod 4`.
    PrimeFactorNotOneModFour { a: u64, b: u64, prime: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    pub bound: u64,
    pub primes_tested: Vec<u32>,
    pub pairs_checked: u64,
    pub solutions_found: Vec<Solution>,
    pub side_claim_violations: Vec<SideClaimViolation>,
}

fn quartic_sum(a: u64, b: u64) -> u64 {
    a.pow(4) + b.pow(4)
}

fn solutions_for_a(a: u64, primes: &[u32]) -> (u64, Vec<Solution>) {
    let mut found = Vec::new();
    let mut checked = 0;
    let bs = if a == 1 { 1..=1 } else { 1..=a - 1 };
    for b in bs {
        if a.gcd(&b) != 1 {
            continue;
        }
        checked += 1;
        let n = Int::from(quartic_sum(a, b));
        for &p in primes {
            if let Some(c) = is_perfect_kth_power(&n, p) {
                found.push(Solution { a, b, c, p });
            }
        }
    }
    (checked, found)
}

/// Checks `A^4 + B^4 = C^p` over coprime `1 <= B < A <= max_ab`, plus
/// `A = B = 1`. Results are sorted by `(A, B)`.
pub fn search_solutions(max_ab: u64, primes: &[u32]) -> SearchReport {
    let per_a: Vec<(u64, Vec<Solution>)> =
        (1..=max_ab).into_par_iter().map(|a| solutions_for_a(a, primes)).collect();
    merge_search(max_ab, primes, per_a)
}

/// Single-threaded variant, for checking partition independence.
pub fn search_solutions_sequential(max_ab: u64, primes: &[u32]) -> SearchReport {
    let per_a: Vec<_> = (1..=max_ab).map(|a| solutions_for_a(a, primes)).collect();
    merge_search(max_ab, primes, per_a)
}

fn merge_search(max_ab: u64, primes: &[u32], per_a: Vec<(u64, Vec<Solution>)>) -> SearchReport {
    let mut report = SearchReport { bound: max_ab, primes_tested: primes.to_vec(), ..Default::default() };
    for (checked, found) in per_a {
        report.pairs_checked += checked;
        report.solutions_found.extend(found);
    }
    report.solutions_found.sort_by_key(|s| (s.a, s.b, s.p));
    report
}

fn side_claims_for_a(a: u64, max_ab: u64) -> (u64, Vec<SideClaimViolation>) {
    let mut out = Vec::new();
    let mut checked = 0;
    for b in 1..=max_ab {
        if a.gcd(&b) != 1 {
            continue;
        }
        checked += 1;
        let n = quartic_sum(a, b);
        if n.gcd(&6) != 1 {
            out.push(SideClaimViolation::SharesFactorWithSix { a, b, n });
        }
        for (prime, _) in factorize_u64(n).expect("n > 1") {
            if prime % 4 != 1 {
                out.push(SideClaimViolation::PrimeFactorNotOneModFour { a, b, prime });
            }
        }
    }
    (checked, out)
}

/// For every coprime pair with `A` even and `A, B <= max_ab`: `gcd(6, C) = 1`
/// and every prime factor of `C = A^4 + B^4` is `1 mod 4`.
pub fn verify_side_claims(max_ab: u64) -> SearchReport {
    let per_a: Vec<_> = (2..=max_ab)
        .into_par_iter()
        .filter(|a| a % 2 == 0)
        .map(|a| side_claims_for_a(a, max_ab))
        .collect();
    let mut report = SearchReport { bound: max_ab, ..Default::default() };
    for (checked, v) in per_a {
        report.pairs_checked += checked;
        report.side_claim_violations.extend(v);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_search_is_empty() {
        let r = search_solutions(100, &[5, 7]);
        assert!(r.solutions_found.is_empty());
        assert!(r.pairs_checked > 0);
    }

    #[test]
    fn one_one_is_checked_and_fails() {
        let r = search_solutions(1, &[3, 5, 7]);
        assert_eq!(r.pairs_checked, 1);
        assert!(r.solutions_found.is_empty());
    }

    #[test]
    fn non_coprime_pairs_skipped() {
        // pairs with B < A <= 4: (2,1) (3,1) (3,2) (4,1) (4,3) plus (1,1); (4,2) skipped
        assert_eq!(search_solutions(4, &[5]).pairs_checked, 6);
    }

    #[test]
    fn side_claim_examples() {
        assert_eq!(quartic_sum(2, 1), 17);
        assert_eq!(quartic_sum(2, 3), 97);
        assert_eq!(quartic_sum(4, 1), 257);
        let r = verify_side_claims(4);
        assert!(r.side_claim_violations.is_empty());
        // A = 2: B = 1, 3; A = 4: B = 1, 3
        assert_eq!(r.pairs_checked, 4);
    }

    #[test]
    fn parallel_matches_sequential() {
        assert_eq!(search_solutions(60, &[3, 5, 7]), search_solutions_sequential(60, &[3, 5, 7]));
    }
}
