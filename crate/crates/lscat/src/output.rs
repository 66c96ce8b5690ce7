//! Report assembly and rendering.

use lscat_core::bar_models::HomologyResult;
use lscat_core::field::{Field, PrimeField, Rationals};
use lscat_core::rational::format_rational;
use lscat_core::RationalVector;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// The outcome of one command: human lines, a structured result, and whether
/// every check passed.
pub struct Report {
    pub passed: bool,
    pub lines: Vec<String>,
    pub result: Value,
}

impl Report {
    pub fn ok(lines: Vec<String>, result: Value) -> Self {
        Self { passed: true, lines, result }
    }

    pub fn checked(passed: bool, lines: Vec<String>, result: Value) -> Self {
        Self { passed, lines, result }
    }
}

pub fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn point(v: &RationalVector) -> Value {
    json!(v.to_strings())
}

pub fn point_text(v: &RationalVector) -> String {
    format!("({})", v.to_strings().join(", "))
}

pub fn bigints(v: &[BigInt]) -> Value {
    json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn homology(h: &HomologyResult) -> Value {
    json!(h
        .groups
        .iter()
        .map(|g| json!({"degree": g.degree, "rank": g.rank, "torsion": bigints(&g.torsion)}))
        .collect::<Vec<_>>())
}

/// Coefficients in structured output: `"p/q"` over `Q`, residues over `F_p`.
pub trait Coefficient: Field {
    fn serialize(&self, e: &Self::Elem) -> String;
}

impl Coefficient for Rationals {
    fn serialize(&self, e: &Self::Elem) -> String {
        format_rational(e)
    }
}

impl Coefficient for PrimeField {
    fn serialize(&self, e: &Self::Elem) -> String {
        self.format(e)
    }
}
