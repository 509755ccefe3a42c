//! Proof traces: ordered computed facts and labelled external axioms.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{Int, Rt2Int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    Theorem1,
    Theorem2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Eliminated,
    FirstCaseProved,
    NotCovered,
    ExternalClassical,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Eliminated | Verdict::FirstCaseProved)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Computed,
    Axiom,
}

/// External facts the trace relies on without computing them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Modularity,
    IrreducibilityAbove13,
    LevelLowering,
    SplitCartanImpossible,
    CuspFieldOfDefinition,
    FourKPlusOneDivisors,
    ClassicalSmallPrimes,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::Modularity => "Modularity",
            Axiom::IrreducibilityAbove13 => "IrreducibilityAbove13",
            Axiom::LevelLowering => "LevelLowering",
            Axiom::SplitCartanImpossible => "SplitCartanImpossible",
            Axiom::CuspFieldOfDefinition => "CuspFieldOfDefinition",
            Axiom::FourKPlusOneDivisors => "FourKPlusOneDivisors",
            Axiom::ClassicalSmallPrimes => "ClassicalSmallPrimes",
        }
    }

    /// Statement of the cited fact.
    pub fn statement(self) -> &'static str {
        match self {
            Axiom::Modularity => {
                "E_{A,B} and E_{B,A} are modular degree-2 Q-curves, with good reduction away from 2C"
            }
            Axiom::IrreducibilityAbove13 => {
                "for p > 13 the mod-P representations of degree-2 Q-curves over Q(i) are irreducible"
            }
            Axiom::LevelLowering => {
                "the mod-P representations of E_{A,B} and E_{B,A} arise from newforms of level 32 and 256"
            }
            Axiom::SplitCartanImpossible => {
                "for p > 13 the projective image cannot lie in the normalizer of a split Cartan subgroup"
            }
            Axiom::CuspFieldOfDefinition => {
                "multiplicative reduction at q | C with non-split Cartan image forces q^2 = 1 mod p"
            }
            Axiom::FourKPlusOneDivisors => {
                "every prime factor of A^4 + B^4 with gcd(A, B) = 1 is 1 mod 4"
            }
            Axiom::ClassicalSmallPrimes => {
                "the First Case for primes p != +-1 mod 8 is settled by classical Kummer-type arguments"
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub label: String,
    pub inputs: Value,
    pub outputs: Value,
    /// Statement of the fact this step establishes or cites.
    pub statement: String,
}

impl Step {
    pub fn computed(label: &str, inputs: Value, outputs: Value, statement: &str) -> Self {
        Step { kind: StepKind::Computed, label: label.into(), inputs, outputs, statement: statement.into() }
    }

    pub fn axiom(axiom: Axiom) -> Self {
        Step {
            kind: StepKind::Axiom,
            label: axiom.label().into(),
            inputs: json!({}),
            outputs: json!({}),
            statement: axiom.statement().into(),
        }
    }

    /// A computed step fails when its outputs carry `"holds": false`.
    pub fn holds(&self) -> bool {
        self.kind == StepKind::Axiom || self.outputs.get("holds").and_then(Value::as_bool).unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub p: Value,
    pub target: Target,
    pub verdict: Verdict,
    pub steps: Vec<Step>,
}

impl VerdictReport {
    pub fn all_computed_hold(&self) -> bool {
        self.steps.iter().all(Step::holds)
    }

    /// Pretty JSON with keys in sorted order, so that parsing and
    /// re-serializing reproduces the text.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| s.kind == StepKind::Axiom)
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} p = {}", self.target, self.p)?;
        for (i, s) in self.steps.iter().enumerate() {
            match s.kind {
                StepKind::Axiom => writeln!(f, "  {:>2}. [axiom]    {}: {}", i + 1, s.label, s.statement)?,
                StepKind::Computed => {
                    let mark = if s.holds() { "ok" } else { "FAILED" };
                    writeln!(f, "  {:>2}. [computed] {} {} -> {} ({mark})", i + 1, s.label, s.inputs, s.outputs)?
                }
            }
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Integers as JSON numbers when they fit in `i64`, decimal strings otherwise.
pub fn int_json(n: &Int) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn json_int(v: &Value) -> Option<Int> {
    match v {
        Value::Number(n) => n.as_i64().map(Int::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// `{"rat": r, "irr": k}`.
pub fn rt2_json(x: &Rt2Int) -> Value {
    json!({"rat": int_json(&x.rat), "irr": int_json(&x.irr)})
}

pub fn json_rt2(v: &Value) -> Option<Rt2Int> {
    Some(Rt2Int::new(json_int(v.get("rat")?)?, json_int(v.get("irr")?)?))
}
