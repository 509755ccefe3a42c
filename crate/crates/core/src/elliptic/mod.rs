//! Short Weierstrass models `y^2 = x^3 + a2 x^2 + a4 x + a6`, discriminants,
//! exhaustive point counts and traces of Frobenius.

mod cache;

pub use cache::{curve_hash, PointCounter};

use std::fmt;

use crate::arith::Ring;
use crate::error::{Error, Result};
use crate::finite_field::FiniteField;

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` over the ring `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve<R> {
    pub a2: R,
    pub a4: R,
    pub a6: R,
}

impl<R: Ring> WeierstrassCurve<R> {
    pub fn new(a2: R, a4: R, a6: R) -> Self {
        WeierstrassCurve { a2, a4, a6 }
    }

    /// `-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6` with `a1 = a3 = 0`; equals
    /// `16 a4^2 (a2^2 - 4 a4)` when `a6 = 0`.
    pub fn discriminant(&self) -> R {
        let k = |n: i64| self.a2.integer(n);
        let b2 = k(4) * self.a2.clone();
        let b4 = k(2) * self.a4.clone();
        let b6 = k(4) * self.a6.clone();
        let b8 = k(4) * self.a2.clone() * self.a6.clone() - self.a4.clone() * self.a4.clone();
        -(b2.clone() * b2.clone() * b8) - k(8) * b4.clone() * b4.clone() * b4.clone()
            - k(27) * b6.clone() * b6.clone()
            + k(9) * b2 * b4 * b6
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.discriminant().is_zero_elem()
    }

    /// Coefficient-wise image under a ring map.
    pub fn map<S, F>(&self, mut f: F) -> Result<WeierstrassCurve<S>>
    where
        F: FnMut(&R) -> Result<S>,
    {
        Ok(WeierstrassCurve { a2: f(&self.a2)?, a4: f(&self.a4)?, a6: f(&self.a6)? })
    }

    /// Twist `y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6`.
    pub fn quadratic_twist(&self, d: &R) -> Self {
        let d2 = d.clone() * d.clone();
        WeierstrassCurve {
            a2: d.clone() * self.a2.clone(),
            a4: d2.clone() * self.a4.clone(),
            a6: d2 * d.clone() * self.a6.clone(),
        }
    }

    pub fn rhs(&self, x: &R) -> R {
        ((x.clone() + self.a2.clone()) * x.clone() + self.a4.clone()) * x.clone() + self.a6.clone()
    }
}

impl<R: fmt::Display> fmt::Display for WeierstrassCurve<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x^2 + ({})x + ({})", self.a2, self.a4, self.a6)
    }
}

/// `trace = n + 1 - point_count` over a field with `n` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusTrace {
    pub field_size: u64,
    pub trace: i64,
    pub point_count: u64,
}

impl FrobeniusTrace {
    pub fn within_weil_bound(&self) -> bool {
        (self.trace as i128) * (self.trace as i128) <= 4 * self.field_size as i128
    }
}

/// The field the coefficients of `curve` live in, represented by one element.
fn field_of<F: FiniteField>(curve: &WeierstrassCurve<F>) -> F {
    curve.a2.integer(0)
}

/// Quadratic character of every field element, indexed by [`FiniteField::index`].
fn quadratic_character<F: FiniteField>(zero: &F) -> (Vec<F>, Vec<i8>) {
    let elements = zero.elements();
    let mut chi = vec![-1i8; elements.len()];
    for y in &elements {
        chi[(y.clone() * y.clone()).index()] = 1;
    }
    chi[zero.index()] = 0;
    (elements, chi)
}

/// Projective point count `1 + sum_x (1 + chi(f(x)))`.
pub fn count_points<F: FiniteField>(curve: &WeierstrassCurve<F>) -> Result<u64> {
    if !curve.is_nonsingular() {
        return Err(Error::SingularCurve);
    }
    let zero = field_of(curve);
    let (elements, chi) = quadratic_character(&zero);
    let affine: i64 = elements
        .iter()
        .map(|x| 1 + chi[curve.rhs(x).index()] as i64)
        .sum();
    Ok(1 + affine as u64)
}

/// Fails with [`Error::LawViolation`] outside the Weil bound, which only a
/// corrupted cache record can produce.
pub(crate) fn trace_from_count(field_size: u64, point_count: u64) -> Result<FrobeniusTrace> {
    let t = FrobeniusTrace {
        field_size,
        trace: field_size as i64 + 1 - point_count as i64,
        point_count,
    };
    if !t.within_weil_bound() {
        return Err(Error::LawViolation(format!(
            "{point_count} points over F_{field_size} violates the Weil bound"
        )));
    }
    Ok(t)
}

pub fn trace_of_frobenius<F: FiniteField>(curve: &WeierstrassCurve<F>) -> Result<FrobeniusTrace> {
    let n = field_of(curve).order();
    trace_from_count(n, count_points(curve)?)
}
