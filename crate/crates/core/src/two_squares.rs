//! Sums of two squares: prime decomposition, the composition law, and
//! enumeration of every representation of `n`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, gaussian_factor_split_prime, is_prime, Gaussian, Scalar};
use crate::error::{domain, Error, Result};
use crate::GaussianInt;

/// `alpha^2 + beta^2 = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoSquares<T> {
    pub alpha: T,
    pub beta: T,
    pub n: T,
}

impl<T: Scalar> TwoSquares<T> {
    /// Builds a representation, computing `n` from the pair.
    pub fn new(alpha: T, beta: T) -> Self {
        let n = alpha.clone() * alpha.clone() + beta.clone() * beta.clone();
        TwoSquares { alpha, beta, n }
    }

    pub fn holds(&self) -> bool {
        self.alpha.clone() * self.alpha.clone() + self.beta.clone() * self.beta.clone() == self.n
    }

    /// `(|alpha|, |beta|)` sorted so that `alpha <= beta`.
    pub fn canonical(&self) -> Self {
        let (a, b) = (self.alpha.abs(), self.beta.abs());
        if a <= b {
            TwoSquares { alpha: a, beta: b, n: self.n.clone() }
        } else {
            TwoSquares { alpha: b, beta: a, n: self.n.clone() }
        }
    }

    pub fn is_canonical(&self) -> bool {
        !self.alpha.is_negative() && self.alpha <= self.beta
    }

    /// Signs dropped, odd member first. `None` unless exactly one member is odd.
    pub fn parity_normalized(&self) -> Option<Self> {
        let (a, b) = (self.alpha.abs(), self.beta.abs());
        match (a.is_odd(), b.is_odd()) {
            (true, false) => Some(TwoSquares { alpha: a, beta: b, n: self.n.clone() }),
            (false, true) => Some(TwoSquares { alpha: b, beta: a, n: self.n.clone() }),
            _ => None,
        }
    }
}

/// Brahmagupta-Fibonacci composition:
/// `(a1 a2 - b1 b2)^2 + (a1 b2 + a2 b1)^2 = n1 n2`.
pub fn compose<T: Scalar>(r1: &TwoSquares<T>, r2: &TwoSquares<T>) -> TwoSquares<T> {
    let alpha = r1.alpha.clone() * r2.alpha.clone() - r1.beta.clone() * r2.beta.clone();
    let beta = r1.alpha.clone() * r2.beta.clone() + r2.alpha.clone() * r1.beta.clone();
    let out = TwoSquares { alpha, beta, n: r1.n.clone() * r2.n.clone() };
    debug_assert!(out.holds());
    out
}

/// The unique representation of a prime `q = 1 mod 4` with `alpha` odd and
/// `beta` even, both positive. `q = 2` gives `(1, 1)`.
pub fn decompose_prime(q: &BigInt) -> Result<TwoSquares<BigInt>> {
    if *q == BigInt::from(2) {
        return Ok(TwoSquares::new(BigInt::one(), BigInt::one()));
    }
    if !is_prime(q) {
        return Err(domain(format!("{q} is not prime")));
    }
    match gaussian_factor_split_prime(q) {
        Ok((pi, _)) => Ok(TwoSquares { alpha: pi.re, beta: pi.im, n: q.clone() }),
        Err(Error::InertPrime(_)) => Err(Error::NoRepresentation(q.to_string())),
        Err(e) => Err(e),
    }
}

/// Every canonical representation `0 <= R <= S`, `R^2 + S^2 = n`, by a
/// direct loop over `R`.
pub fn all_representations_naive(n: u64) -> BTreeSet<TwoSquares<BigInt>> {
    let mut out = BTreeSet::new();
    let mut r = 0u64;
    while 2 * r * r <= n {
        let rest = n - r * r;
        let s = rest.sqrt();
        if s * s == rest {
            out.insert(TwoSquares::new(BigInt::from(r), BigInt::from(s)));
        }
        r += 1;
    }
    out
}

/// Every product `constant * prod pi_j^k_j * conj(pi_j)^(e_j - k_j)` with
/// `0 <= k_j <= e_j`; the norms of these are the same `n`, and up to units they
/// are all Gaussian integers of norm `n`.
pub fn gaussian_splittings(constant: &GaussianInt, split: &[(GaussianInt, u64)]) -> Vec<GaussianInt> {
    let mut acc = vec![constant.clone()];
    for (pi, e) in split {
        let pibar = pi.conj();
        let pows: Vec<GaussianInt> = (0..=*e).map(|k| pi.pow(k)).collect();
        let bars: Vec<GaussianInt> = (0..=*e).map(|k| pibar.pow(k)).collect();
        let mut next = Vec::with_capacity(acc.len() * (*e as usize + 1));
        for g in &acc {
            for k in 0..=*e as usize {
                next.push(g.clone() * pows[k].clone() * bars[*e as usize - k].clone());
            }
        }
        acc = next;
    }
    acc
}

fn canonical_of(g: &GaussianInt) -> TwoSquares<BigInt> {
    TwoSquares::new(g.re.clone(), g.im.clone()).canonical()
}

/// Canonical representations from a factorization of `n` given as
/// `(prime, exponent)` pairs.
pub fn representations_from_factors(factors: &[(BigInt, u64)]) -> Result<BTreeSet<TwoSquares<BigInt>>> {
    let four = BigInt::from(4);
    let mut constant = GaussianInt::one();
    let mut split = Vec::new();
    for (p, e) in factors {
        let r = (p % &four).to_u8().unwrap_or(0);
        if *p == BigInt::from(2) {
            constant = constant * Gaussian::new(BigInt::one(), BigInt::one()).pow(*e);
        } else if r == 3 {
            if e % 2 == 1 {
                return Ok(BTreeSet::new());
            }
            constant = constant.scale(&p.pow((*e / 2) as u32));
        } else if r == 1 {
            let (pi, _) = gaussian_factor_split_prime(p)?;
            split.push((pi, *e));
        } else {
            return Err(domain(format!("{p} is not a positive prime")));
        }
    }
    Ok(gaussian_splittings(&constant, &split).iter().map(canonical_of).collect())
}

/// Every canonical representation of `n >= 1`, through the factorization of
/// `n` in `Z[i]`.
pub fn all_representations(n: &BigInt) -> Result<BTreeSet<TwoSquares<BigInt>>> {
    if *n < BigInt::one() {
        return Err(domain(format!("n = {n} must be positive")));
    }
    if n.is_one() {
        return Ok([TwoSquares::new(BigInt::zero(), BigInt::one())].into_iter().collect());
    }
    let f: Vec<(BigInt, u64)> = factorize(n)?.into_iter().map(|(p, e)| (p, e as u64)).collect();
    representations_from_factors(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rep(a: i64, c: i64) -> TwoSquares<BigInt> {
        TwoSquares::new(b(a), b(c))
    }

    fn brute_prime(q: u64) -> (u64, u64) {
        // odd alpha, even beta, both positive
        let mut found = None;
        for a in (1..).step_by(2).take_while(|a| a * a < q) {
            let rest = q - a * a;
            let s = rest.sqrt();
            if s * s == rest && s.is_multiple_of(2) && s > 0 {
                assert!(found.is_none(), "two normalized representations of {q}");
                found = Some((a, s));
            }
        }
        found.expect("no representation")
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(brute_prime(13), (3, 2));
        assert_eq!(brute_prime(113), (7, 8));
        assert_eq!(decompose_prime(&b(5)).unwrap(), rep(1, 2));
        assert_eq!(decompose_prime(&b(13)).unwrap(), rep(3, 2));
        assert_eq!(decompose_prime(&b(113)).unwrap(), rep(7, 8));
        assert_eq!(decompose_prime(&b(2)).unwrap(), rep(1, 1));
        assert!(matches!(decompose_prime(&b(7)), Err(Error::NoRepresentation(_))));
        assert!(decompose_prime(&b(25)).is_err());
    }

    #[test]
    fn decompose_matches_brute_force() {
        for q in crate::arith::primes_up_to(10_000).into_iter().filter(|q| q % 4 == 1) {
            let (a, c) = brute_prime(q);
            assert_eq!(decompose_prime(&b(q as i64)).unwrap(), rep(a as i64, c as i64));
        }
    }

    #[test]
    fn decompose_large_prime() {
        let q = BigInt::parse_bytes(b"1000000000000000000000000000057", 10).unwrap();
        assert!(is_prime(&q));
        let r = decompose_prime(&q).unwrap();
        assert!(r.holds());
        assert!(r.alpha.is_odd() && r.beta.is_even());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&rep(1, 0), &rep(3, 2)), rep(3, 2));
        let r = compose(&rep(1, 2), &rep(2, 3));
        assert_eq!((r.alpha.clone(), r.beta.clone(), r.n.clone()), (b(-4), b(7), b(65)));
        assert_eq!(compose(&rep(2, 1), &rep(2, 1)), rep(3, 4));
    }

    #[test]
    fn enumeration_examples() {
        let want: BTreeSet<_> = [rep(0, 5), rep(3, 4)].into_iter().collect();
        assert_eq!(all_representations_naive(25), want);
        assert_eq!(all_representations(&b(25)).unwrap(), want);
        let want: BTreeSet<_> = [rep(1, 8), rep(4, 7)].into_iter().collect();
        assert_eq!(all_representations_naive(65), want);
        assert_eq!(all_representations(&b(65)).unwrap(), want);
        assert!(all_representations(&b(21)).unwrap().is_empty());
        assert!(all_representations_naive(21).is_empty());
        assert_eq!(all_representations(&b(1)).unwrap().len(), 1);
        assert!(all_representations(&b(0)).is_err());
    }

    #[test]
    fn fermat_criterion() {
        for n in 1..=10_000u64 {
            let reps = all_representations(&b(n as i64)).unwrap();
            let criterion = n == 1
                || factorize(&b(n as i64))
                    .unwrap()
                    .iter()
                    .all(|(p, e)| (p % 4u32) != b(3) || e % 2 == 0);
            assert_eq!(!reps.is_empty(), criterion, "{n}");
        }
    }

    #[test]
    fn parity_normalization() {
        assert_eq!(rep(-2, 3).parity_normalized(), Some(rep(3, 2)));
        assert_eq!(rep(1, 1).parity_normalized(), None);
        assert!(rep(2, 3).is_canonical());
        assert!(!rep(3, 2).is_canonical());
    }
}
