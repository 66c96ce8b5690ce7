//! File and argument formats.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use lscat_core::bar_models::{augmentation_ideal, GModule};
use lscat_core::field::{Field, PrimeField, Rationals};
use lscat_core::group::{FiniteGroup, FiniteMonoid};
use lscat_core::linalg::IntMatrix;
use lscat_core::ls_invariants::{GradedAlgebra, ProductEntry};
use lscat_core::polytopes::BoundaryIndex;
use lscat_core::RationalVector;
use serde::{Deserialize, Serialize};

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("malformed {}: {e}", path.display())))
}

/// An integer written either as a JSON number or a decimal string.
#[derive(Deserialize)]
#[serde(untagged)]
enum IntLike {
    Int(i64),
    Str(String),
}

impl IntLike {
    fn value(&self) -> Result<i64, CliError> {
        match self {
            IntLike::Int(v) => Ok(*v),
            IntLike::Str(s) => s.trim().parse().map_err(|_| CliError::Input(format!("malformed integer {s:?}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidFile {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

pub fn load_monoid(path: &Path) -> Result<FiniteMonoid, CliError> {
    let f: MonoidFile = parse_json(path)?;
    Ok(FiniteMonoid::new(f.elements, f.table, f.unit)?)
}

pub fn load_group(path: &Path) -> Result<FiniteGroup, CliError> {
    Ok(FiniteGroup::new(load_monoid(path)?)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    rank: usize,
    action: Vec<Vec<Vec<IntLike>>>,
}

/// `trivial`, `ideal`, or the path of a module file.
pub fn load_module(g: &FiniteGroup, coeff: &str) -> Result<GModule, CliError> {
    match coeff {
        "trivial" => Ok(GModule::trivial(g, 1)),
        "ideal" => Ok(augmentation_ideal(g)?),
        path => {
            let f: ModuleFile = parse_json(Path::new(path))?;
            let action = f
                .action
                .iter()
                .map(|m| {
                    let rows = m.iter().map(|r| r.iter().map(IntLike::value).collect()).collect::<Result<Vec<Vec<i64>>, _>>()?;
                    Ok(IntMatrix::from_rows(rows, f.rank)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(GModule::new(g, f.rank, action)?)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    field: String,
    top_degree: usize,
    basis: Vec<Vec<String>>,
    #[serde(default)]
    products: Vec<(String, String, BTreeMap<String, serde_json::Value>)>,
}

/// An algebra over whichever field its file names.
pub enum AnyAlgebra {
    Q(GradedAlgebra<Rationals>),
    Fp(GradedAlgebra<PrimeField>),
}

fn coefficient_text(v: &serde_json::Value) -> Result<String, CliError> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        other => Err(CliError::Input(format!("coefficient {other} must be an integer or a \"p/q\" string"))),
    }
}

fn build_algebra<F: Field>(field: F, f: AlgebraFile) -> Result<GradedAlgebra<F>, CliError> {
    let mut products = Vec::with_capacity(f.products.len());
    for (left, right, combo) in f.products {
        let result = combo
            .iter()
            .map(|(label, c)| Ok((label.clone(), field.parse(&coefficient_text(c)?)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        products.push(ProductEntry { left, right, result });
    }
    Ok(GradedAlgebra::new(field, f.top_degree, f.basis, products)?)
}

pub fn load_algebra(path: &Path) -> Result<AnyAlgebra, CliError> {
    let f: AlgebraFile = parse_json(path)?;
    let name = f.field.trim().to_string();
    if name == "Q" {
        return Ok(AnyAlgebra::Q(build_algebra(Rationals, f)?));
    }
    let p = name
        .strip_prefix('F')
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::Input(format!("unknown field {name:?}; expected \"Q\" or \"F<p>\"")))?;
    Ok(AnyAlgebra::Fp(build_algebra(PrimeField::new(p)?, f)?))
}

/// A point given as `0,1/2` or as a JSON array such as `["0/1","1/2"]`.
pub fn parse_point(text: &str) -> Result<RationalVector, CliError> {
    let text = text.trim();
    if text.starts_with('[') {
        let items: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed point: {e}")))?;
        let parts = items.iter().map(coefficient_text).collect::<Result<Vec<_>, _>>()?;
        Ok(RationalVector::parse(&parts.join(","))?)
    } else {
        Ok(RationalVector::parse(text)?)
    }
}

/// Tagged record form of a boundary cell.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "face", rename_all = "snake_case", deny_unknown_fields)]
pub enum CellRecord {
    Assoc { k: usize, r: usize, s: usize },
    MultK { k: usize, r: usize, s: usize },
    MultJoin { blocks: Vec<usize> },
}

impl From<&BoundaryIndex> for CellRecord {
    fn from(b: &BoundaryIndex) -> Self {
        match b {
            BoundaryIndex::Assoc { k, r, s } => CellRecord::Assoc { k: *k, r: *r, s: *s },
            BoundaryIndex::MultK { k, r, s } => CellRecord::MultK { k: *k, r: *r, s: *s },
            BoundaryIndex::MultJ { blocks } => CellRecord::MultJoin { blocks: blocks.clone() },
        }
    }
}

impl From<CellRecord> for BoundaryIndex {
    fn from(c: CellRecord) -> Self {
        match c {
            CellRecord::Assoc { k, r, s } => BoundaryIndex::Assoc { k, r, s },
            CellRecord::MultK { k, r, s } => BoundaryIndex::MultK { k, r, s },
            CellRecord::MultJoin { blocks } => BoundaryIndex::MultJ { blocks },
        }
    }
}

pub fn parse_cell(text: &str) -> Result<BoundaryIndex, CliError> {
    let record: CellRecord =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed boundary cell: {e}")))?;
    let cell = BoundaryIndex::from(record);
    cell.validate()?;
    Ok(cell)
}

pub fn parse_images(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Input(format!("malformed element index {s:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse_in_both_forms() {
        let a = parse_point("0, 1/2, 3").unwrap();
        let b = parse_point(r#"["0/1", "2/4", 3]"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_strings(), ["0/1", "1/2", "3/1"]);
        assert!(parse_point("[1, true]").is_err());
        assert!(parse_point("1/0").is_err());
    }

    #[test]
    fn cell_records_round_trip() {
        for cell in [
            BoundaryIndex::Assoc { k: 1, r: 2, s: 3 },
            BoundaryIndex::MultK { k: 2, r: 3, s: 2 },
            BoundaryIndex::MultJ { blocks: vec![1, 2] },
        ] {
            let text = serde_json::to_string(&CellRecord::from(&cell)).unwrap();
            assert_eq!(parse_cell(&text).unwrap(), cell);
        }
        assert_eq!(
            serde_json::to_string(&CellRecord::from(&BoundaryIndex::Assoc { k: 1, r: 2, s: 3 })).unwrap(),
            r#"{"face":"assoc","k":1,"r":2,"s":3}"#
        );
        assert!(parse_cell(r#"{"face":"assoc","k":9,"r":2,"s":3}"#).is_err());
        assert!(parse_cell(r#"{"face":"cube"}"#).is_err());
    }

    #[test]
    fn images_and_integers() {
        assert_eq!(parse_images("0, 1,2").unwrap(), [0, 1, 2]);
        assert!(parse_images("0,-1").is_err());
        assert_eq!(IntLike::Str(" -3 ".into()).value().unwrap(), -3);
        assert!(IntLike::Str("x".into()).value().is_err());
    }
}
