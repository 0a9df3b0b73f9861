//! Structured output records.
//!
//! Records mode emits one self-describing JSON object per line. Field names
//! and their order are frozen: serialization follows struct declaration
//! order, so the declarations below are the output contract. Every record
//! carries the same envelope — `record` (the kind), `command`, `pair` (the
//! resolved pair name, null before one exists), and `normalization`
//! (always "long-root-2").
//!
//! Exact scalars are decimal or "p/q" strings; cyclotomic values are
//! `{conductor, coefficients}` over the power basis ζ⁰ … ζ^{φ(n)−1}.
//! No floating-point value appears anywhere.

use gindex_core::cyclo::Cyclotomic;
use gindex_core::Rational;
use serde::Serialize;

pub const NORMALIZATION: &str = "long-root-2";

pub fn rat_str(r: &Rational) -> String {
    r.to_string()
}

pub fn coords_str(coords: &[Rational]) -> Vec<String> {
    coords.iter().map(rat_str).collect()
}

/// Exact cyclotomic value over the power basis of its conductor.
#[derive(Debug, Clone, Serialize)]
pub struct CycloValue {
    pub conductor: u64,
    pub coefficients: Vec<String>,
}

impl CycloValue {
    pub fn of(c: &Cyclotomic) -> CycloValue {
        CycloValue {
            conductor: c.conductor(),
            coefficients: coords_str(c.coeffs()),
        }
    }
}

/// Normalization constants that actually entered an orbital value.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsValue {
    pub c_g: String,
    pub component_index: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: Option<String>,
    pub normalization: &'static str,
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootsysInfoRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub cartan_type: String,
    pub rank: u64,
    pub positive_roots: u64,
    pub compact_positive_roots: u64,
    pub noncompact_positive_roots: u64,
    pub weyl_order: String,
    pub compact_weyl_order: String,
    pub dual_euler_characteristic: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeylOrderRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub cartan_type: String,
    pub order: String,
    pub enumerated: Option<String>,
    pub cap: u64,
    pub cap_exceeded: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharDimRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub weight: Vec<String>,
    pub dimension: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchTermRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub weight: Vec<String>,
    pub multiplicity: String,
    pub k_dimension: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSummaryRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub cartan_type: String,
    pub rank: u64,
    pub compact_positive: Vec<Vec<i64>>,
    pub noncompact_positive: Vec<Vec<i64>>,
    pub dual_euler_characteristic: String,
    pub rerender: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexGRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub tau_weight: Vec<String>,
    pub lambda: Vec<String>,
    pub regular: bool,
    pub dominant: Vec<String>,
    pub sign: i64,
    pub dim_w: String,
    pub chi: String,
    pub unsigned: String,
    pub signed: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexEulerRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub tau_weight: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexArithRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub operator: String,
    pub tau_weight: Vec<String>,
    pub chi_gamma: String,
    pub error_term: String,
    pub main_term: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitalRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub kind: String,
    pub element: Vec<String>,
    pub order: u64,
    pub regular: bool,
    pub value: Option<CycloValue>,
    pub vanishes: Option<bool>,
    pub constants: Option<ConstantsValue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntryRecord {
    pub record: &'static str,
    pub command: String,
    pub pair: String,
    pub normalization: &'static str,
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone)]
pub enum Record {
    Error(ErrorRecord),
    RootsysInfo(RootsysInfoRecord),
    WeylOrder(WeylOrderRecord),
    CharDim(CharDimRecord),
    BranchTerm(BranchTermRecord),
    PairSummary(PairSummaryRecord),
    IndexG(IndexGRecord),
    IndexEuler(IndexEulerRecord),
    IndexArith(IndexArithRecord),
    Orbital(OrbitalRecord),
    SuiteEntry(SuiteEntryRecord),
}

impl Record {
    pub fn is_error(&self) -> bool {
        matches!(self, Record::Error(_))
    }

    /// One NDJSON line, fields in declaration order.
    pub fn to_json(&self) -> String {
        fn ser<T: Serialize>(v: &T) -> String {
            serde_json::to_string(v).expect("record serializes")
        }
        match self {
            Record::Error(r) => ser(r),
            Record::RootsysInfo(r) => ser(r),
            Record::WeylOrder(r) => ser(r),
            Record::CharDim(r) => ser(r),
            Record::BranchTerm(r) => ser(r),
            Record::PairSummary(r) => ser(r),
            Record::IndexG(r) => ser(r),
            Record::IndexEuler(r) => ser(r),
            Record::IndexArith(r) => ser(r),
            Record::Orbital(r) => ser(r),
            Record::SuiteEntry(r) => ser(r),
        }
    }

    /// Human table block: `[kind]` header plus aligned `key = value` lines,
    /// in the same field order as the JSON form.
    pub fn table_block(&self) -> Vec<String> {
        let value: serde_json::Value =
            serde_json::from_str(&self.to_json()).expect("record round-trips");
        let map = value.as_object().expect("record is an object");
        let kind = map["record"].as_str().expect("record kind is a string");
        let fields: Vec<(&String, &serde_json::Value)> =
            map.iter().filter(|(k, _)| *k != "record").collect();
        let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut lines = vec![format!("[{kind}]")];
        for (k, v) in fields {
            lines.push(format!("{k:<width$} = {}", render_cell(v)));
        }
        lines
    }
}

fn render_cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => "-".to_string(),
        serde_json::Value::Bool(b) => b.to_string(),
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("cell serializes"),
    }
}
