use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{is_prime, sqrt_minus_one, Ring, Scalar};
use crate::error::{domain, Error, Result};

/// `re + im*i` in `Z[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Gaussian<T> {
    pub fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }

    pub fn from_int(re: T) -> Self {
        Gaussian { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Gaussian { re: T::zero(), im: T::one() }
    }

    pub fn norm(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            exp >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &T) -> Self {
        Gaussian { re: self.re.clone() * k.clone(), im: self.im.clone() * k.clone() }
    }
}

impl<T: Scalar> Add for Gaussian<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gaussian { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Scalar> Sub for Gaussian<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gaussian { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T: Scalar> Mul for Gaussian<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<T: Scalar> Neg for Gaussian<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian { re: -self.re, im: -self.im }
    }
}

impl<T: Scalar> Zero for Gaussian<T> {
    fn zero() -> Self {
        Gaussian { re: T::zero(), im: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: Scalar> One for Gaussian<T> {
    fn one() -> Self {
        Gaussian { re: T::one(), im: T::zero() }
    }
}

impl<T: Scalar> Ring for Gaussian<T> {
    fn integer(&self, n: i64) -> Self {
        Gaussian::from_int(T::from_i64(n).expect("constant fits scalar"))
    }
}

impl<T: Scalar> fmt::Display for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Splits a prime `q = 1 mod 4` as `pi * conj(pi)` with `pi = re + im*i`,
/// `re` odd positive and `im` even positive.
pub fn gaussian_factor_split_prime(q: &BigInt) -> Result<(Gaussian<BigInt>, Gaussian<BigInt>)> {
    if !is_prime(q) {
        return Err(domain(format!("{q} is not prime")));
    }
    let four = BigInt::from(4);
    match (q % &four).to_string().as_str() {
        "2" => return Err(Error::Ramified),
        "3" => return Err(Error::InertPrime(q.to_string())),
        _ => {}
    }
    let (a, b) = cornacchia(q)?;
    // one of a, b is odd and the other even
    let (re, im) = if a.is_odd() { (a, b) } else { (b, a) };
    let pi = Gaussian::new(re, im);
    let pibar = pi.conj();
    Ok((pi, pibar))
}

/// Positive `(a, b)` with `a^2 + b^2 = q` for a prime `q = 1 mod 4`, via the
/// Euclidean descent on `(q, sqrt(-1) mod q)`.
pub(crate) fn cornacchia(q: &BigInt) -> Result<(BigInt, BigInt)> {
    let root = sqrt_minus_one(q)?;
    let x0 = if &root * 2 > *q { q - &root } else { root };
    let limit = q.sqrt();
    let mut a = q.clone();
    let mut b = x0;
    while b > limit {
        let r = a.mod_floor(&b);
        a = b;
        b = r;
    }
    let rest = q - &b * &b;
    let c = rest.sqrt();
    if &c * &c != rest {
        return Err(Error::NoRepresentation(q.to_string()));
    }
    Ok((b, c))
}
