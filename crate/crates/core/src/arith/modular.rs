use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_prime, Rt2};
use crate::error::{domain, Error, Result};

/// Least non-negative residue of `a` modulo `m`.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn require_odd_prime(p: &BigInt) -> Result<()> {
    if p.is_even() || !is_prime(p) {
        return Err(domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Jacobi symbol `(a|n)` for odd positive `n`, by binary reciprocity.
pub(crate) fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1i8;
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % &eight).to_u8();
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % &four).to_u8() == 3 && (&n % &four).to_u8() == 3 {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

trait SmallRem {
    fn to_u8(&self) -> u8;
}

impl SmallRem for BigInt {
    fn to_u8(&self) -> u8 {
        num_traits::ToPrimitive::to_u8(self).expect("small remainder")
    }
}

/// Legendre symbol `(a|p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    require_odd_prime(p)?;
    Ok(jacobi(a, p))
}

/// A square root of `-1` modulo a prime `q = 1 mod 4`, taken as `c^((q-1)/4)`
/// for the least quadratic non-residue `c`.
pub fn sqrt_minus_one(q: &BigInt) -> Result<BigInt> {
    require_odd_prime(q)?;
    if (q % BigInt::from(4)).to_u8() != 1 {
        return Err(Error::InertPrime(q.to_string()));
    }
    let mut c = BigInt::from(2);
    while jacobi(&c, q) != -1 {
        c += 1;
    }
    let e: BigInt = (q - 1u32) / 4u32;
    Ok(c.modpow(&e, q))
}

/// `p | N(x)` with no oddness requirement on `p`.
pub(crate) fn p_divides_norm(x: &Rt2<BigInt>, p: &BigInt) -> bool {
    x.norm().mod_floor(p).is_zero()
}

/// Whether `x = y` modulo some prime of `Z[sqrt 2]` above the odd prime `p`.
///
/// For odd `p` the primes above `p` are exactly the prime ideals containing
/// `p`, and one of them divides `x - y` iff `p | N(x - y)`.
pub fn congruent_above_p(x: &Rt2<BigInt>, y: &Rt2<BigInt>, p: &BigInt) -> Result<bool> {
    require_odd_prime(p)?;
    Ok(p_divides_norm(&(x.clone() - y.clone()), p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn euler(a: i64, p: i64) -> i8 {
        let r = b(a).mod_floor(&b(p)).modpow(&b((p - 1) / 2), &b(p));
        if r.is_zero() {
            0
        } else if r.is_one() {
            1
        } else {
            -1
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&b(-1), &b(19)).unwrap(), -1);
        assert_eq!(legendre(&b(1), &b(97)).unwrap(), 1);
        // 7^2 = 49 = -2 mod 17
        assert_eq!((49 + 2) % 17, 0);
        assert_eq!(legendre(&b(-2), &b(17)).unwrap(), 1);
    }

    #[test]
    fn legendre_rejects_non_odd_primes() {
        assert!(legendre(&b(3), &b(2)).is_err());
        assert!(legendre(&b(3), &b(15)).is_err());
        assert!(legendre(&b(3), &b(1)).is_err());
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97, 101] {
            for a in -60..60 {
                assert_eq!(legendre(&b(a), &b(p)).unwrap(), euler(a, p), "({a}|{p})");
            }
        }
    }

    #[test]
    fn supplementary_laws() {
        for p in super::super::primes_up_to(2000).into_iter().skip(1) {
            let pb = b(p as i64);
            assert_eq!(legendre(&b(-1), &pb).unwrap() == 1, p % 4 == 1);
            assert_eq!(legendre(&b(-2), &pb).unwrap() == 1, p % 8 == 1 || p % 8 == 3);
        }
    }

    #[test]
    fn sqrt_minus_one_squares_to_minus_one() {
        for q in [5i64, 13, 17, 29, 37, 41, 1_000_000_009] {
            let r = sqrt_minus_one(&b(q)).unwrap();
            let sq: BigInt = &r * &r + 1;
            assert!(sq.mod_floor(&b(q)).is_zero());
        }
        assert!(matches!(sqrt_minus_one(&b(7)), Err(Error::InertPrime(_))));
    }

    #[test]
    fn congruence_examples() {
        let x = Rt2::new(b(5), b(-3));
        assert!(congruent_above_p(&x, &x, &b(7)).unwrap());
        assert!(!congruent_above_p(&Rt2::surd(b(2)), &Rt2::rational(b(0)), &b(7)).unwrap());
        assert!(!congruent_above_p(&Rt2::surd(b(1)), &Rt2::rational(b(2)), &b(17)).unwrap());
        // 3 + rt2 has norm 7
        assert!(congruent_above_p(&Rt2::new(b(3), b(1)), &Rt2::rational(b(0)), &b(7)).unwrap());
        assert!(congruent_above_p(&x, &x, &b(2)).is_err());
    }
}
