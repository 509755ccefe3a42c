//! Prime fields `F_q` and `F_{q^2} = F_q[i]` for `q = 3 mod 4`, the residue
//! fields of `Z[i]` at split and inert primes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{is_prime_u64, Ring};
use crate::error::{domain, Error, Result};
use crate::GaussianInt;

/// A finite field element that knows its field.
pub trait FiniteField: Ring + fmt::Display {
    /// Number of elements of the field.
    fn order(&self) -> u64;
    /// Every element of the field, in [`FiniteField::index`] order.
    fn elements(&self) -> Vec<Self>;
    /// Position of `self` in [`FiniteField::elements`].
    fn index(&self) -> usize;

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.integer(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            exp >>= 1;
        }
        acc
    }

    /// Euler's criterion.
    fn is_square(&self) -> bool {
        self.is_zero_elem() || self.pow((self.order() - 1) / 2) == self.integer(1)
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero_elem() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.order() - 2))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Element of `F_q`, `q` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqElem {
    value: u64,
    modulus: u64,
}

impl FqElem {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        FqElem { value: (value as i128).rem_euclid(m) as u64, modulus }
    }

    pub fn from_big(value: &BigInt, modulus: u64) -> Self {
        let v = value.mod_floor(&BigInt::from(modulus)).to_u64().expect("reduced");
        FqElem { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Add for FqElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        FqElem { value: if s >= self.modulus { s - self.modulus } else { s }, modulus: self.modulus }
    }
}

impl Sub for FqElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FqElem {
    type Output = Self;
    fn neg(self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        FqElem { value: v, modulus: self.modulus }
    }
}

impl Mul for FqElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FqElem { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Ring for FqElem {
    fn integer(&self, n: i64) -> Self {
        FqElem::new(n, self.modulus)
    }
}

impl FiniteField for FqElem {
    fn order(&self) -> u64 {
        self.modulus
    }

    fn elements(&self) -> Vec<Self> {
        (0..self.modulus).map(|v| FqElem { value: v, modulus: self.modulus }).collect()
    }

    fn index(&self) -> usize {
        self.value as usize
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Element `a + b*i` of `F_q[i]`, `i^2 = -1`, for a prime `q = 3 mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq2Elem {
    pub a: FqElem,
    pub b: FqElem,
}

impl Fq2Elem {
    /// Fails unless `q` is a prime congruent to 3 mod 4.
    pub fn new(a: i64, b: i64, q: u64) -> Result<Self> {
        if q % 4 != 3 || !is_prime_u64(q) {
            return Err(domain(format!("F_q[i] needs a prime q = 3 mod 4, got {q}")));
        }
        Ok(Fq2Elem { a: FqElem::new(a, q), b: FqElem::new(b, q) })
    }

    pub fn modulus(&self) -> u64 {
        self.a.modulus
    }

    /// `x -> x^q`, which is conjugation `a + bi -> a - bi`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.modulus())
    }
}

impl Add for Fq2Elem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fq2Elem { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Fq2Elem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fq2Elem { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Neg for Fq2Elem {
    type Output = Self;
    fn neg(self) -> Self {
        Fq2Elem { a: -self.a, b: -self.b }
    }
}

impl Mul for Fq2Elem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fq2Elem { a: self.a * rhs.a - self.b * rhs.b, b: self.a * rhs.b + self.b * rhs.a }
    }
}

impl Ring for Fq2Elem {
    fn integer(&self, n: i64) -> Self {
        let q = self.modulus();
        Fq2Elem { a: FqElem::new(n, q), b: FqElem::new(0, q) }
    }
}

impl FiniteField for Fq2Elem {
    fn order(&self) -> u64 {
        self.modulus() * self.modulus()
    }

    fn elements(&self) -> Vec<Self> {
        let q = self.modulus();
        let mut out = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                out.push(Fq2Elem { a: FqElem { value: a, modulus: q }, b: FqElem { value: b, modulus: q } });
            }
        }
        out
    }

    fn index(&self) -> usize {
        (self.a.value * self.modulus() + self.b.value) as usize
    }
}

impl fmt::Display for Fq2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.a, self.b)
    }
}

/// Reduction `Z[i] -> Z[i]/(q) = F_q[i]` at an inert prime `q`.
pub fn reduce_inert(g: &GaussianInt, q: u64) -> Result<Fq2Elem> {
    let zero = Fq2Elem::new(0, 0, q)?;
    Ok(Fq2Elem { a: FqElem::from_big(&g.re, q), b: FqElem::from_big(&g.im, q) } + zero)
}

/// Reduction `Z[i] -> Z[i]/(pi) = F_q` at `pi = alpha + beta*i` of prime norm
/// `q`, sending `i` to `-alpha / beta`.
pub fn reduce_split(g: &GaussianInt, pi: &GaussianInt) -> Result<FqElem> {
    let q = pi.norm().to_u64().ok_or_else(|| domain("residue field too large"))?;
    let beta = FqElem::from_big(&pi.im, q);
    let i_image = -FqElem::from_big(&pi.re, q) * beta.inv()?;
    Ok(FqElem::from_big(&g.re, q) + FqElem::from_big(&g.im, q) * i_image)
}
