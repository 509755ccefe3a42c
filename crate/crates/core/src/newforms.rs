//! The six CM newforms of levels 32 and 256: the embedded eigenvalue table,
//! model curves, and recomputation of the eigenvalues from point counts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::elliptic::{PointCounter, WeierstrassCurve};
use crate::error::{domain, Error, Result};
use crate::finite_field::FqElem;
use crate::frey::{f2_model, trace_inert_with, trace_split_with, QcurveTrace};
use crate::two_squares::decompose_prime;
use crate::{GaussianInt, Int, Rt2Int};

/// The embedded table, one line per form.
pub const EMBEDDED_TABLE: &str = include_str!("../data/newforms.txt");

/// Primes indexing the table columns.
pub const TABLE_PRIMES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

impl Label {
    pub const ALL: [Label; 6] = [Label::F1, Label::F2, Label::F3, Label::F4, Label::F5, Label::F6];
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = Label::ALL.iter().position(|l| l == self).expect("listed") + 1;
        write!(f, "f{n}")
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f1" => Ok(Label::F1),
            "f2" => Ok(Label::F2),
            "f3" => Ok(Label::F3),
            "f4" => Ok(Label::F4),
            "f5" => Ok(Label::F5),
            "f6" => Ok(Label::F6),
            _ => Err(Error::Parse(format!("unknown newform label {s:?}"))),
        }
    }
}

/// Imaginary quadratic field of complex multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CmField {
    /// `Q(i)`, discriminant -4.
    QI,
    /// `Q(sqrt -2)`, discriminant -8.
    QSqrtMinus2,
}

impl CmField {
    pub fn discriminant(self) -> i64 {
        match self {
            CmField::QI => -4,
            CmField::QSqrtMinus2 => -8,
        }
    }

    /// The `d` in `Q(sqrt d)`.
    pub fn radicand(self) -> i64 {
        match self {
            CmField::QI => -1,
            CmField::QSqrtMinus2 => -2,
        }
    }

    fn from_discriminant(d: i64) -> Result<Self> {
        match d {
            -4 => Ok(CmField::QI),
            -8 => Ok(CmField::QSqrtMinus2),
            _ => Err(Error::Parse(format!("unexpected CM discriminant {d}"))),
        }
    }
}

impl fmt::Display for CmField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmField::QI => "Q(i)",
            CmField::QSqrtMinus2 => "Q(sqrt-2)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientField {
    Q,
    QSqrt2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    /// Elliptic curve over `Q`.
    Rational(WeierstrassCurve<Int>),
    /// Q-curve over `Q(i)`.
    Gaussian(WeierstrassCurve<GaussianInt>),
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Rational(c) => write!(f, "{c}"),
            Model::Gaussian(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformRecord {
    pub label: Label,
    pub level: u64,
    pub coefficient_field: CoefficientField,
    pub cm_field: CmField,
    pub model: Option<Model>,
    pub table: BTreeMap<u64, Rt2Int>,
}

/// A recomputed Hecke eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigenvalue {
    Rational(i64),
    /// `z sqrt 2`, known up to sign.
    Surd(QcurveTrace),
}

impl Eigenvalue {
    /// Equality with a table entry, up to `sqrt 2 -> -sqrt 2` for surds.
    pub fn matches(&self, entry: &Rt2Int) -> bool {
        match self {
            Eigenvalue::Rational(v) => *entry == Rt2Int::rational(Int::from(*v)),
            Eigenvalue::Surd(t) => t.matches_up_to_sign(entry),
        }
    }

    pub fn as_rational(&self) -> Option<i64> {
        match self {
            Eigenvalue::Rational(v) => Some(*v),
            Eigenvalue::Surd(_) => None,
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Rational(v) => write!(f, "{v}"),
            Eigenvalue::Surd(t) => write!(f, "{t}"),
        }
    }
}

fn parse_entry(s: &str) -> Result<Rt2Int> {
    let bad = || Error::Parse(format!("bad eigenvalue entry {s:?}"));
    match s.strip_suffix("*rt2") {
        Some(k) => Ok(Rt2Int::surd(k.parse::<Int>().map_err(|_| bad())?)),
        None => Ok(Rt2Int::rational(s.parse::<Int>().map_err(|_| bad())?)),
    }
}

/// Parses the table format: `label level cm_disc a2 a3 a5 a7 a11 a13 a17`,
/// `#` comments. Models are left unset.
pub fn parse_table(text: &str) -> Result<Vec<NewformRecord>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 3 + TABLE_PRIMES.len() {
            return Err(Error::Parse(format!("expected 10 columns: {line:?}")));
        }
        let label: Label = cols[0].parse()?;
        let level: u64 = cols[1].parse().map_err(|_| Error::Parse(format!("bad level in {line:?}")))?;
        let disc: i64 = cols[2].parse().map_err(|_| Error::Parse(format!("bad discriminant in {line:?}")))?;
        let table = TABLE_PRIMES
            .iter()
            .zip(&cols[3..])
            .map(|(&p, s)| Ok((p, parse_entry(s)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let coefficient_field =
            if table.values().any(|v| !v.irr.is_zero()) { CoefficientField::QSqrt2 } else { CoefficientField::Q };
        out.push(NewformRecord {
            label,
            level,
            coefficient_field,
            cm_field: CmField::from_discriminant(disc)?,
            model: None,
            table,
        });
    }
    Ok(out)
}

/// Renders records back into the table format (without the header comment).
pub fn render_rows(records: &[NewformRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&format!("{} {} {}", r.label, r.level, r.cm_field.discriminant()));
        for v in r.table.values() {
            s.push_str(&format!(" {v}"));
        }
        s.push('\n');
    }
    s
}

fn rational_trace(counter: &PointCounter, curve: &WeierstrassCurve<Int>, q: u64) -> Result<i64> {
    let reduced = curve.map(|c| Ok(FqElem::from_big(c, q)))?;
    if !reduced.is_nonsingular() {
        return Err(Error::BadReduction(q.to_string()));
    }
    Ok(counter.trace(&reduced)?.trace)
}

/// A candidate model tried during identification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub curve: WeierstrassCurve<Int>,
    pub cm_field: CmField,
}

/// `y^2 = x^3 + d x` for `d` in `{+-1, +-2, +-4, +-8}` (CM by `Q(i)`), then
/// `y^2 = x^3 +- 4x^2 + 2x` (CM by `Q(sqrt -2)`).
pub fn candidate_models() -> Vec<Candidate> {
    let c = |a2: i64, a4: i64| WeierstrassCurve::new(Int::from(a2), Int::from(a4), Int::zero());
    let mut out: Vec<Candidate> = [1, -1, 2, -2, 4, -4, 8, -8]
        .into_iter()
        .map(|d| Candidate { curve: c(0, d), cm_field: CmField::QI })
        .collect();
    out.push(Candidate { curve: c(4, 2), cm_field: CmField::QSqrtMinus2 });
    out.push(Candidate { curve: c(-4, 2), cm_field: CmField::QSqrtMinus2 });
    out
}

/// Outcome of matching one table row against the candidate models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub label: Label,
    /// Every candidate with the row's odd-prime eigenvalues; isogenous curves
    /// come in pairs here.
    pub matching: Vec<Candidate>,
}

impl Identification {
    pub fn chosen(&self) -> Option<&Candidate> {
        self.matching.first()
    }
}

/// Binds a table row with rational entries to the candidates whose traces
/// agree with it at every odd table prime.
pub fn identify(counter: &PointCounter, record: &NewformRecord) -> Result<Identification> {
    let mut matching = Vec::new();
    for cand in candidate_models() {
        if cand.cm_field != record.cm_field {
            continue;
        }
        let mut ok = true;
        for &p in TABLE_PRIMES.iter().skip(1) {
            let t = rational_trace(counter, &cand.curve, p)?;
            if record.table[&p] != Rt2Int::rational(Int::from(t)) {
                ok = false;
                break;
            }
        }
        if ok {
            matching.push(cand);
        }
    }
    if matching.is_empty() {
        return Err(Error::Identification(format!("no candidate model matches {}", record.label)));
    }
    Ok(Identification { label: record.label, matching })
}

struct Registry {
    records: Vec<NewformRecord>,
    identifications: Vec<Identification>,
}

fn build_registry() -> Result<Registry> {
    let counter = PointCounter::direct();
    let mut records = parse_table(EMBEDDED_TABLE)?;
    let mut identifications = Vec::new();
    for r in records.iter_mut() {
        r.model = match r.label {
            Label::F1 => Some(Model::Rational(WeierstrassCurve::new(Int::zero(), Int::from(-1), Int::zero()))),
            Label::F2 => Some(Model::Gaussian(f2_model())),
            _ => {
                let id = identify(&counter, r)?;
                let model = id.chosen().map(|c| Model::Rational(c.curve.clone()));
                identifications.push(id);
                model
            }
        };
    }
    Ok(Registry { records, identifications })
}

fn registry() -> Result<&'static Registry> {
    static REGISTRY: OnceLock<std::result::Result<Registry, Error>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry).as_ref().map_err(Clone::clone)
}

/// The six records with their models bound.
pub fn records() -> Result<&'static [NewformRecord]> {
    Ok(&registry()?.records)
}

pub fn record(label: Label) -> Result<&'static NewformRecord> {
    Ok(records()?.iter().find(|r| r.label == label).expect("all labels in table"))
}

/// How f3..f6 were bound to models.
pub fn identifications() -> Result<&'static [Identification]> {
    Ok(&registry()?.identifications)
}

pub fn eigenvalue(label: Label, q: &Int) -> Result<Eigenvalue> {
    eigenvalue_with(&PointCounter::direct(), label, q)
}

/// `a_q` recomputed from the model. For `q` dividing the level, `q^2 | N`
/// forces `a_q = 0`.
pub fn eigenvalue_with(counter: &PointCounter, label: Label, q: &Int) -> Result<Eigenvalue> {
    if !is_prime(q) {
        return Err(domain(format!("{q} is not prime")));
    }
    let rec = record(label)?;
    let qs = q.to_u64().ok_or_else(|| domain(format!("{q} is too large")))?;
    if rec.level % qs == 0 {
        if rec.level % (qs * qs) == 0 {
            return Ok(Eigenvalue::Rational(0));
        }
        return Err(domain(format!("{q} exactly divides the level")));
    }
    match &rec.model {
        Some(Model::Rational(c)) => Ok(Eigenvalue::Rational(rational_trace(counter, c, qs)?)),
        Some(Model::Gaussian(c)) => {
            if qs % 4 == 1 {
                Ok(Eigenvalue::Rational(trace_split_with(counter, c, q)?))
            } else {
                Ok(Eigenvalue::Surd(trace_inert_with(counter, c, q)?))
            }
        }
        None => match rec.table.get(&qs) {
            Some(v) if v.irr.is_zero() => Ok(Eigenvalue::Rational(v.rat.to_i64().expect("small"))),
            Some(v) => Ok(Eigenvalue::Surd(QcurveTrace { value: v.clone(), sign_determined: true, q: q.clone() })),
            None => Err(Error::ModelUnavailable(label.to_string())),
        },
    }
}

/// Recomputed row next to the table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub label: Label,
    pub computed: Vec<(u64, Eigenvalue)>,
    pub ok: bool,
}

/// Recomputes every form at the table primes (and beyond, up to `max_prime`,
/// where only the computed values are reported).
pub fn verify_table(counter: &PointCounter, max_prime: u64) -> Result<Vec<TableCheck>> {
    let mut out = Vec::new();
    for rec in records()? {
        let mut computed = Vec::new();
        let mut ok = true;
        for p in crate::arith::primes_up_to(max_prime.max(17)) {
            let e = eigenvalue_with(counter, rec.label, &Int::from(p))?;
            if let Some(entry) = rec.table.get(&p) {
                ok &= e.matches(entry);
            }
            if p <= max_prime || rec.table.contains_key(&p) {
                computed.push((p, e));
            }
        }
        out.push(TableCheck { label: rec.label, computed, ok });
    }
    Ok(out)
}

/// `a_q = 2 alpha` with `alpha^2 + beta^2 = q` for `f1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSquaresLaw {
    pub a_q: Int,
    pub alpha: Int,
    pub beta: Int,
}

/// Checks the two-squares law for `f1` at a prime `q = 1 mod 4`.
pub fn verify_two_squares_law(q: &Int) -> Result<TwoSquaresLaw> {
    if !is_prime(q) || q % 4u32 != Int::from(1) {
        return Err(domain(format!("{q} is not a prime = 1 mod 4")));
    }
    let a_q = eigenvalue(Label::F1, q)?
        .as_rational()
        .ok_or_else(|| Error::LawViolation(q.to_string()))?;
    let rep = decompose_prime(q)?;
    let violation = || Error::LawViolation(q.to_string());
    if a_q % 2 != 0 {
        return Err(violation());
    }
    let alpha = Int::from(a_q / 2);
    let beta = rep.beta;
    if &alpha * &alpha + &beta * &beta != *q || num_traits::Signed::abs(&alpha) != rep.alpha {
        return Err(violation());
    }
    Ok(TwoSquaresLaw { a_q: Int::from(a_q), alpha, beta })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn table_parses_and_renders() {
        let recs = parse_table(EMBEDDED_TABLE).unwrap();
        assert_eq!(recs.len(), 6);
        let body: String = EMBEDDED_TABLE.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(render_rows(&recs), body);
        assert_eq!(recs[1].coefficient_field, CoefficientField::QSqrt2);
        assert_eq!(recs[1].table[&3], Rt2Int::surd(b(2)));
        assert_eq!(recs[1].table[&11], Rt2Int::surd(b(-2)));
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(parse_table("f7 32 -4 0 0 0 0 0 0 0").is_err());
        assert!(parse_table("f1 32 -4 0 0 0").is_err());
        assert!(parse_table("f1 32 -3 0 0 0 0 0 0 0").is_err());
        assert!(parse_table("f1 32 -4 0 0 x*rt2 0 0 0 0").is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue(Label::F1, &b(13)).unwrap(), Eigenvalue::Rational(6));
        assert_eq!(eigenvalue(Label::F4, &b(5)).unwrap(), Eigenvalue::Rational(4));
        assert_eq!(eigenvalue(Label::F1, &b(19)).unwrap(), Eigenvalue::Rational(0));
        assert_eq!(eigenvalue(Label::F3, &b(2)).unwrap(), Eigenvalue::Rational(0));
        assert!(eigenvalue(Label::F1, &b(15)).is_err());
    }

    #[test]
    fn identification_binds_every_form() {
        let ids = identifications().unwrap();
        assert_eq!(ids.len(), 4);
        for id in ids {
            assert!(!id.matching.is_empty());
            // every match shares the row's CM field
            let cm = record(id.label).unwrap().cm_field;
            assert!(id.matching.iter().all(|c| c.cm_field == cm));
        }
    }

    #[test]
    fn table_reproduced() {
        for check in verify_table(&PointCounter::direct(), 17).unwrap() {
            assert!(check.ok, "{} mismatched: {:?}", check.label, check.computed);
        }
    }

    #[test]
    fn two_squares_law_examples() {
        let law = |q| verify_two_squares_law(&b(q)).unwrap();
        assert_eq!(law(13), TwoSquaresLaw { a_q: b(6), alpha: b(3), beta: b(2) });
        assert_eq!(law(17), TwoSquaresLaw { a_q: b(2), alpha: b(1), beta: b(4) });
        assert_eq!(law(5), TwoSquaresLaw { a_q: b(-2), alpha: b(-1), beta: b(2) });
        assert!(verify_two_squares_law(&b(7)).is_err());
    }
}
