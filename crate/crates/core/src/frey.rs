//! The Frey Q-curves `E_{A,B}` and `E_{B,A}` over `Q(i)` and the Frobenius
//! traces of their attached representation at inert and split primes.

use std::fmt;

use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gaussian_factor_split_prime, is_prime, Ring};
use crate::elliptic::{PointCounter, WeierstrassCurve};
use crate::error::{domain, Error, Result};
use crate::finite_field::{reduce_inert, reduce_split};
use crate::{GaussianInt, Int, Rt2Int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `y^2 = x^3 + 2(1+i)A x^2 + (-B^2 + i A^2) x`
    AB,
    /// `y^2 = x^3 + 2(1+i)B x^2 + (A^2 + i B^2) x`
    BA,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::AB => "AB",
            Variant::BA => "BA",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreyCurve {
    pub a: Int,
    pub b: Int,
    pub variant: Variant,
    pub curve: WeierstrassCurve<GaussianInt>,
}

impl FreyCurve {
    /// `A^4 + B^4`.
    pub fn quartic_sum(&self) -> Int {
        self.a.pow(4) + self.b.pow(4)
    }

    /// Good reduction at the primes above an odd prime `q`.
    pub fn has_good_reduction(&self, q: &Int) -> bool {
        !(self.quartic_sum() % q).is_zero()
    }
}

/// Attaches `E_{A,B}` or `E_{B,A}` to a coprime pair.
pub fn build_frey(a: &Int, b: &Int, variant: Variant) -> Result<FreyCurve> {
    let g = a.gcd(b);
    if !g.is_one() {
        return Err(Error::NotPrimitive(g.to_string()));
    }
    let one_plus_i = GaussianInt::new(Int::one(), Int::one());
    let two = Int::from(2);
    let (lead, a4) = match variant {
        Variant::AB => (a, GaussianInt::new(-(b * b), a * a)),
        Variant::BA => (b, GaussianInt::new(a * a, b * b)),
    };
    let a2 = one_plus_i.scale(&(&two * lead));
    let curve = WeierstrassCurve::new(a2, a4, GaussianInt::zero());
    let frey = FreyCurve { a: a.clone(), b: b.clone(), variant, curve };
    let expected = Int::from(4096) * frey.quartic_sum().pow(3);
    if frey.curve.discriminant().norm() != expected {
        return Err(Error::StructureViolation(format!(
            "|N(disc)| != 2^12 (A^4+B^4)^3 for (A, B) = ({a}, {b})"
        )));
    }
    Ok(frey)
}

/// Trace at an inert prime, known as `z*sqrt(2)` up to sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcurveTrace {
    pub value: Rt2Int,
    pub sign_determined: bool,
    pub q: Int,
}

impl QcurveTrace {
    /// `2 z^2 <= 4 q`.
    pub fn within_weil_bound(&self) -> bool {
        let t = &self.value;
        let sq = &t.rat * &t.rat + Int::from(2) * &t.irr * &t.irr;
        t.rat.is_zero() && sq <= Int::from(4) * &self.q
    }

    /// Whether `other` is this trace or its negative.
    pub fn matches_up_to_sign(&self, other: &Rt2Int) -> bool {
        self.value == *other || self.value == -other.clone()
    }
}

impl fmt::Display for QcurveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.sign_determined && !self.value.irr.is_zero() {
            write!(f, "+-{}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

fn small_odd_prime(q: &Int, residue: u8) -> Result<u64> {
    if !is_prime(q) || q.is_even() {
        return Err(domain(format!("{q} is not an odd prime")));
    }
    let qs = q.to_u64().ok_or_else(|| domain(format!("{q} is too large for point counting")))?;
    if qs % 4 != residue as u64 {
        return Err(domain(format!("{q} is not {residue} mod 4")));
    }
    Ok(qs)
}

pub fn trace_inert(curve: &WeierstrassCurve<GaussianInt>, q: &Int) -> Result<QcurveTrace> {
    trace_inert_with(&PointCounter::direct(), curve, q)
}

/// `a_q` at an inert prime `q = 3 mod 4`, from the point count of the
/// reduction over `F_{q^2}`: `a_q^2 = a_{q^2} + 2q` (determinant `q`), and
/// `a_q = z sqrt 2` with `z >= 0` reported.
pub fn trace_inert_with(
    counter: &PointCounter,
    curve: &WeierstrassCurve<GaussianInt>,
    q: &Int,
) -> Result<QcurveTrace> {
    let qs = small_odd_prime(q, 3)?;
    let reduced = curve.map(|c| reduce_inert(c, qs))?;
    if !reduced.is_nonsingular() {
        return Err(Error::BadReduction(q.to_string()));
    }
    let t = counter.trace(&reduced)?;
    let square = t.trace + 2 * qs as i64;
    let z = if square >= 0 && square % 2 == 0 {
        let half = (square / 2) as u64;
        let z = half.sqrt();
        (z * z == half).then_some(z)
    } else {
        None
    };
    let z = z.ok_or_else(|| {
        Error::StructureViolation(format!("a_(q^2) + 2q = {square} is not 2z^2 at q = {q}"))
    })?;
    let out = QcurveTrace { value: Rt2Int::surd(Int::from(z)), sign_determined: false, q: q.clone() };
    debug_assert!(out.within_weil_bound());
    Ok(out)
}

pub fn trace_split(curve: &WeierstrassCurve<GaussianInt>, q: &Int) -> Result<i64> {
    trace_split_with(&PointCounter::direct(), curve, q)
}

/// `a_q` at a split prime `q = pi * conj(pi)`: the common trace of the
/// reductions at `pi` and `conj(pi)`.
pub fn trace_split_with(
    counter: &PointCounter,
    curve: &WeierstrassCurve<GaussianInt>,
    q: &Int,
) -> Result<i64> {
    small_odd_prime(q, 1)?;
    let (pi, pibar) = gaussian_factor_split_prime(q)?;
    let mut traces = [0i64; 2];
    for (slot, prime) in traces.iter_mut().zip([&pi, &pibar]) {
        let reduced = curve.map(|c| reduce_split(c, prime))?;
        if !reduced.is_nonsingular() {
            return Err(Error::BadReduction(format!("{q} (at {prime})")));
        }
        *slot = counter.trace(&reduced)?.trace;
    }
    if traces[0] != traces[1] {
        return Err(Error::ConjugacyViolation { q: q.to_string(), left: traces[0], right: traces[1] });
    }
    Ok(traces[0])
}

/// Every `z sqrt 2` with `2 z^2 <= 4 q`, ordered by `z`.
pub fn weil_candidates(q: &Int) -> Result<Vec<Rt2Int>> {
    if !is_prime(q) || (q % 4u32) != Int::from(3) {
        return Err(domain(format!("{q} is not a prime = 3 mod 4")));
    }
    let zmax: Int = (Int::from(2) * q).sqrt();
    let mut out = Vec::new();
    let mut z = -zmax.clone();
    while z <= zmax {
        out.push(Rt2Int::surd(z.clone()));
        z += 1;
    }
    Ok(out)
}

/// One coprime residue class of `(A, B)` mod 3 with the traces at 3 of both
/// Frey curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Row {
    pub a_mod3: u8,
    pub b_mod3: u8,
    /// Representative pair actually used.
    pub representative: (Int, Int),
    pub ab: QcurveTrace,
    pub ba: QcurveTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Table {
    pub rows: Vec<A3Row>,
}

impl A3Table {
    /// `a_3(E_{A,B}) = 0` exactly on the classes `A = 0, B != 0`, and
    /// `|a_3(E_{B,A})| = 2 sqrt 2` on those classes.
    pub fn classification_holds(&self) -> bool {
        self.rows.len() == 8
            && self.rows.iter().all(|r| {
                let zero_class = r.a_mod3 == 0 && r.b_mod3 != 0;
                let ab_zero = r.ab.value.is_zero_elem();
                ab_zero == zero_class && (!zero_class || r.ba.value == Rt2Int::surd(Int::from(2)))
            })
    }

    pub fn row(&self, a_mod3: u8, b_mod3: u8) -> Option<&A3Row> {
        self.rows.iter().find(|r| r.a_mod3 == a_mod3 && r.b_mod3 == b_mod3)
    }
}

fn coprime_representative(a: u8, b: u8) -> (Int, Int) {
    for x in (a as i64..).step_by(3) {
        for y in (b as i64..).step_by(3).take(4) {
            if num_integer::gcd(x, y) == 1 {
                return (Int::from(x), Int::from(y));
            }
        }
    }
    unreachable!()
}

pub fn a3_table() -> Result<A3Table> {
    a3_table_with(&PointCounter::direct())
}

/// Traces at 3 over the eight coprime classes of `(A, B)` mod 3.
pub fn a3_table_with(counter: &PointCounter) -> Result<A3Table> {
    let three = Int::from(3);
    let mut rows = Vec::with_capacity(8);
    for a in 0..3u8 {
        for b in 0..3u8 {
            if a == 0 && b == 0 {
                continue;
            }
            let (x, y) = coprime_representative(a, b);
            let ab = trace_inert_with(counter, &build_frey(&x, &y, Variant::AB)?.curve, &three)?;
            let ba = trace_inert_with(counter, &build_frey(&x, &y, Variant::BA)?.curve, &three)?;
            rows.push(A3Row { a_mod3: a, b_mod3: b, representative: (x, y), ab, ba });
        }
    }
    Ok(A3Table { rows })
}

/// `y^2 = x^3 + 2(1+i)x^2 + ix`, the model of the level-256 form with
/// coefficients in `Q(sqrt 2)`; it is `E_{B,A}` at `(A, B) = (0, 1)`.
pub fn f2_model() -> WeierstrassCurve<GaussianInt> {
    build_frey(&Int::zero(), &Int::one(), Variant::BA).expect("(0, 1) is primitive").curve
}
