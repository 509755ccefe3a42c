//! Exact integer, Gaussian-integer and `Z[sqrt 2]` arithmetic.

mod gaussian;
pub(crate) mod modular;
mod primes;
mod rt2;

pub use gaussian::{gaussian_factor_split_prime, Gaussian};
pub use modular::{congruent_above_p, legendre, mod_floor, sqrt_minus_one};
pub use primes::{
    factorize, factorize_u64, is_perfect_kth_power, is_prime, is_prime_u64, primes_up_to,
};
pub use rt2::{rt2_norm, Rt2};

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer scalar the ring types are generic over.
pub trait Scalar:
    Integer + Signed + Roots + Clone + Debug + Display + FromPrimitive + ToPrimitive
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Roots + Clone + Debug + Display + FromPrimitive + ToPrimitive
{
}

/// Commutative ring with a unit, where integer constants can be produced from
/// any element (finite-field elements carry their modulus at runtime, so there
/// is no context-free `one()`).
pub trait Ring:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Image of `n` under `Z -> R`, in the same ring as `self`.
    fn integer(&self, n: i64) -> Self;

    fn is_zero_elem(&self) -> bool {
        *self == self.integer(0)
    }
}

macro_rules! int_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn integer(&self, n: i64) -> Self {
                <$t>::from_i64(n).expect("constant fits scalar")
            }
        }
    )*};
}

int_ring!(i64, i128, BigInt);
