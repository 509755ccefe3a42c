use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Ring, Scalar};

/// `rat + irr*sqrt(2)` in `Z[sqrt 2]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rt2<T> {
    pub rat: T,
    pub irr: T,
}

impl<T: Scalar> Rt2<T> {
    pub fn new(rat: T, irr: T) -> Self {
        Rt2 { rat, irr }
    }

    pub fn rational(rat: T) -> Self {
        Rt2 { rat, irr: T::zero() }
    }

    /// `z * sqrt(2)`.
    pub fn surd(irr: T) -> Self {
        Rt2 { rat: T::zero(), irr }
    }

    /// Field norm `rat^2 - 2 irr^2`.
    pub fn norm(&self) -> T {
        let two = T::one() + T::one();
        self.rat.clone() * self.rat.clone() - two * self.irr.clone() * self.irr.clone()
    }

    /// Galois conjugate `sqrt 2 -> -sqrt 2`.
    pub fn conj(&self) -> Self {
        Rt2 { rat: self.rat.clone(), irr: -self.irr.clone() }
    }

    /// Value under the real embedding with `sqrt 2 > 0`.
    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        let k = self.irr.to_f64().unwrap_or(f64::NAN);
        r + k * std::f64::consts::SQRT_2
    }
}

impl<T: Scalar> Add for Rt2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Rt2 { rat: self.rat + rhs.rat, irr: self.irr + rhs.irr }
    }
}

impl<T: Scalar> Sub for Rt2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Rt2 { rat: self.rat - rhs.rat, irr: self.irr - rhs.irr }
    }
}

impl<T: Scalar> Mul for Rt2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let two = T::one() + T::one();
        Rt2 {
            rat: self.rat.clone() * rhs.rat.clone() + two * self.irr.clone() * rhs.irr.clone(),
            irr: self.rat * rhs.irr + self.irr * rhs.rat,
        }
    }
}

impl<T: Scalar> Neg for Rt2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Rt2 { rat: -self.rat, irr: -self.irr }
    }
}

impl<T: Scalar> Zero for Rt2<T> {
    fn zero() -> Self {
        Rt2 { rat: T::zero(), irr: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl<T: Scalar> One for Rt2<T> {
    fn one() -> Self {
        Rt2::rational(T::one())
    }
}

impl<T: Scalar> Ring for Rt2<T> {
    fn integer(&self, n: i64) -> Self {
        Rt2::rational(T::from_i64(n).expect("constant fits scalar"))
    }
}

/// Renders as `r`, `k*rt2` or `r+k*rt2`.
impl<T: Scalar> fmt::Display for Rt2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}*rt2", self.irr)
        } else if self.irr.is_negative() {
            write!(f, "{}-{}*rt2", self.rat, self.irr.abs())
        } else {
            write!(f, "{}+{}*rt2", self.rat, self.irr)
        }
    }
}

pub fn rt2_norm<T: Scalar>(x: &Rt2<T>) -> T {
    x.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        assert_eq!(rt2_norm(&Rt2::new(3i64, 0)), 9);
        assert_eq!(rt2_norm(&Rt2::new(0i64, 2)), -8);
        assert_eq!(rt2_norm(&Rt2::new(-2i64, 1)), 2);
    }

    #[test]
    fn conjugate_product_is_norm() {
        let x = Rt2::new(-2i64, 1);
        assert_eq!(x.clone() * x.conj(), Rt2::rational(2));
    }

    #[test]
    fn display() {
        assert_eq!(Rt2::new(0i64, -2).to_string(), "-2*rt2");
        assert_eq!(Rt2::new(6i64, 0).to_string(), "6");
        assert_eq!(Rt2::new(1i64, -1).to_string(), "1-1*rt2");
    }
}
