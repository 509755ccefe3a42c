use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;
use crate::error::{domain, Result};

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
/// Extra bases used above 2^64, where the test is probabilistic.
const EXTRA_WITNESSES: [u64; 8] = [41, 43, 47, 53, 59, 61, 67, 71];
const TRIAL_LIMIT: u64 = 1000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases suffice below 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigInt) -> bool {
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in WITNESSES.iter().chain(EXTRA_WITNESSES.iter()) {
        let a = BigInt::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality. Exact below 2^64; a strong probable-prime test to twenty bases
/// above that.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for p in primes_up_to(TRIAL_LIMIT) {
        if (n % p).is_zero() {
            return false;
        }
    }
    is_prime_big(n)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn rho_u64(n: u64) -> u64 {
    // Brent's cycle finding with batched gcds
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut q) = (2u64, 2u64, 1u64, 1u64);
        let mut ys = 2u64;
        let mut r = 1u64;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn collect(mut primes: Vec<BigInt>) -> Vec<(BigInt, u32)> {
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((last, e)) if *last == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Prime factorization of `n > 1` as sorted `(prime, exponent)` pairs.
pub fn factorize_u64(mut n: u64) -> Result<Vec<(u64, u32)>> {
    if n <= 1 {
        return Err(domain(format!("cannot factor {n}")));
    }
    let mut primes = Vec::new();
    for p in primes_up_to(TRIAL_LIMIT) {
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    split_u64(n, &mut primes);
    Ok(collect(primes.into_iter().map(BigInt::from).collect())
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of u64"), e))
        .collect())
}

fn rho_big(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut g = BigInt::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            g = (&x - &y).abs().gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn split_big(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut v = Vec::new();
        split_u64(small, &mut v);
        out.extend(v.into_iter().map(BigInt::from));
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

/// Prime factorization of `n > 1`: trial division, then Pollard rho.
pub fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if *n <= BigInt::one() {
        return Err(domain(format!("cannot factor {n}")));
    }
    let mut n = n.clone();
    let mut primes = Vec::new();
    for p in primes_up_to(TRIAL_LIMIT) {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            primes.push(bp.clone());
            n /= &bp;
        }
    }
    split_big(n, &mut primes);
    Ok(collect(primes))
}

/// The exact `k`-th root of `n`, if there is one. Returns `None` when `n < 1`
/// or `k < 2`.
pub fn is_perfect_kth_power<T: Scalar>(n: &T, k: u32) -> Option<T> {
    if k < 2 || *n < T::one() {
        return None;
    }
    let r = n.nth_root(k);
    let mut back = T::one();
    for _ in 0..k {
        back = back * r.clone();
    }
    (back == *n).then_some(r)
}
