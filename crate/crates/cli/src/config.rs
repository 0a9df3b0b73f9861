//! Config ingestion: an INI-like grammar with exact rationals, resolved
//! into a validated symmetric pair plus job parameters, and a canonical
//! re-renderer whose output is a parse fixpoint.
//!
//! Grammar (UTF-8, line oriented; `#` and `;` start comments):
//!
//! ```text
//! [pair]
//! name = "su21"          # optional; defaults to preset or Cartan type
//! preset = "su21"        # exclusive with [factor] sections
//!
//! [factor]               # repeatable; one per simple factor
//! type = "A2"
//! compact = [[1, 0]]     # compact positive roots, factor-local simple-root coords
//!
//! [tau]
//! weight = [0, 1]        # fundamental-weight coords; "p/q" strings allowed
//!
//! [element]
//! x = ["1/3", "0"]       # torsion element, simple-coroot coords
//! c_g = "1"              # centralizer constant (orbital-eval)
//! component_index = 1
//!
//! [arith]
//! chi_gamma = -2
//! error_term = "0"
//! operator = "euler"     # or "dirac"
//! ```
//!
//! All rationals are exact `p/q` strings or bare integers; floating-point
//! literals are rejected.

use gindex_core::diracindex::OperatorKind;
use gindex_core::presets::preset_pair;
use gindex_core::rootdata::{build_root_system, CartanType};
use gindex_core::sympair::{validate_pair, SymmetricPair};
use gindex_core::{Int, Rational};
use num::{One, Zero};

use crate::errors::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
enum RawValue {
    Int(i64),
    Str(String),
    List(Vec<RawValue>),
}

#[derive(Debug)]
struct RawEntry {
    key: String,
    value: RawValue,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct RawSection {
    name: String,
    line: usize,
    entries: Vec<RawEntry>,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> CliError {
    CliError::Config {
        line,
        col,
        message: message.into(),
    }
}

/// Character scanner for one line.
struct Scan {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Scan {
    fn new(text: &str, line: usize) -> Scan {
        Scan {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t') {
            self.pos += 1;
        }
    }

    fn at_end_or_comment(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), None | Some('#') | Some(';'))
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(err(
                self.line,
                self.pos,
                format!("expected '{want}', found '{c}'"),
            )),
            None => Err(err(
                self.line,
                self.col(),
                format!("expected '{want}', found end of line"),
            )),
        }
    }

    fn value(&mut self) -> Result<RawValue> {
        self.skip_ws();
        match self.peek() {
            Some('"') => self.string(),
            Some('[') => self.list(),
            Some(c) if c == '-' || c.is_ascii_digit() => self.integer(),
            Some(c) => Err(err(
                self.line,
                self.col(),
                format!("expected a value, found '{c}' (strings are quoted; rationals are \"p/q\")"),
            )),
            None => Err(err(self.line, self.col(), "expected a value")),
        }
    }

    fn string(&mut self) -> Result<RawValue> {
        let start = self.col();
        self.expect('"')?;
        let mut s = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(RawValue::Str(s)),
                Some(c) => s.push(c),
                None => return Err(err(self.line, start, "unterminated string")),
            }
        }
    }

    fn integer(&mut self) -> Result<RawValue> {
        let start = self.col();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push(self.bump().unwrap());
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().unwrap());
        }
        if self.peek() == Some('.') {
            return Err(err(
                self.line,
                start,
                "floating-point literals are rejected; write exact rationals as \"p/q\"",
            ));
        }
        if self.peek() == Some('/') {
            return Err(err(
                self.line,
                start,
                "quote rationals as strings: \"p/q\"",
            ));
        }
        s.parse::<i64>()
            .map(RawValue::Int)
            .map_err(|_| err(self.line, start, format!("invalid integer '{s}'")))
    }

    fn list(&mut self) -> Result<RawValue> {
        self.expect('[')?;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(RawValue::List(items));
        }
        loop {
            items.push(self.value()?);
            self.skip_ws();
            match self.bump() {
                Some(',') => continue,
                Some(']') => return Ok(RawValue::List(items)),
                Some(c) => {
                    return Err(err(
                        self.line,
                        self.pos,
                        format!("expected ',' or ']' in list, found '{c}'"),
                    ))
                }
                None => return Err(err(self.line, self.col(), "unterminated list")),
            }
        }
    }

    fn key(&mut self) -> Result<String> {
        let start = self.col();
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            s.push(self.bump().unwrap());
        }
        if s.is_empty() {
            return Err(err(self.line, start, "expected a key"));
        }
        Ok(s)
    }

    fn rest_is_clean(&mut self) -> Result<()> {
        if self.at_end_or_comment() {
            Ok(())
        } else {
            let rest: String = self.chars[self.pos..].iter().collect();
            Err(err(
                self.line,
                self.col(),
                format!("trailing content: '{}'", rest.trim_end()),
            ))
        }
    }
}

fn scan_sections(text: &str) -> Result<Vec<RawSection>> {
    let mut sections: Vec<RawSection> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut s = Scan::new(raw_line, line_no);
        if s.at_end_or_comment() {
            continue;
        }
        if s.peek() == Some('[') {
            s.bump();
            let name = s.key()?;
            s.expect(']')?;
            s.rest_is_clean()?;
            sections.push(RawSection {
                name,
                line: line_no,
                entries: Vec::new(),
            });
            continue;
        }
        let col = s.col();
        let key = s.key()?;
        s.skip_ws();
        s.expect('=')?;
        let value = s.value()?;
        s.rest_is_clean()?;
        let section = sections
            .last_mut()
            .ok_or_else(|| err(line_no, col, format!("key '{key}' before any [section]")))?;
        if section.entries.iter().any(|e| e.key == key) {
            return Err(err(
                line_no,
                col,
                format!("duplicate key '{key}' in [{}]", section.name),
            ));
        }
        section.entries.push(RawEntry {
            key,
            value,
            line: line_no,
            col,
        });
    }
    Ok(sections)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorSpec {
    pub type_name: String,
    pub compact: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauConfig {
    pub weight: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementConfig {
    pub x: Vec<Rational>,
    pub c_g: Rational,
    pub component_index: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArithConfig {
    pub chi_gamma: Int,
    pub error_term: Rational,
    pub operator: OperatorKind,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Config {
    pub name: Option<String>,
    pub preset: Option<String>,
    pub factors: Vec<FactorSpec>,
    pub tau: Option<TauConfig>,
    pub element: Option<ElementConfig>,
    pub arith: Option<ArithConfig>,
}

/// "p/q" or "p"; no floats, no whitespace tricks.
fn parse_rational(s: &str, line: usize, col: usize) -> Result<Rational> {
    if s.contains('.') {
        return Err(err(
            line,
            col,
            format!("'{s}': floating-point values are rejected; write exact rationals as \"p/q\""),
        ));
    }
    let bad = || err(line, col, format!("'{s}' is not an exact rational \"p/q\""));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: Int = num.parse().map_err(|_| bad())?;
    let d: Int = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(err(line, col, format!("'{s}' divides by zero")));
    }
    Ok(Rational::new(n, d))
}

fn rational_value(v: &RawValue, e: &RawEntry) -> Result<Rational> {
    match v {
        RawValue::Int(n) => Ok(Rational::from_integer(Int::from(*n))),
        RawValue::Str(s) => parse_rational(s, e.line, e.col),
        RawValue::List(_) => Err(err(e.line, e.col, "expected a rational, found a list")),
    }
}

fn rational_list(e: &RawEntry) -> Result<Vec<Rational>> {
    match &e.value {
        RawValue::List(items) => items.iter().map(|v| rational_value(v, e)).collect(),
        _ => Err(err(e.line, e.col, format!("'{}' must be a list", e.key))),
    }
}

fn string_value(e: &RawEntry) -> Result<String> {
    match &e.value {
        RawValue::Str(s) => Ok(s.clone()),
        _ => Err(err(e.line, e.col, format!("'{}' must be a quoted string", e.key))),
    }
}

fn int_value(e: &RawEntry) -> Result<i64> {
    match &e.value {
        RawValue::Int(n) => Ok(*n),
        _ => Err(err(e.line, e.col, format!("'{}' must be an integer", e.key))),
    }
}

fn int_matrix(e: &RawEntry) -> Result<Vec<Vec<i64>>> {
    let rows = match &e.value {
        RawValue::List(rows) => rows,
        _ => Err(err(
            e.line,
            e.col,
            format!("'{}' must be a list of integer vectors", e.key),
        ))?,
    };
    rows.iter()
        .map(|row| match row {
            RawValue::List(cells) => cells
                .iter()
                .map(|c| match c {
                    RawValue::Int(n) => Ok(*n),
                    _ => Err(err(e.line, e.col, "matrix entries must be integers")),
                })
                .collect(),
            _ => Err(err(
                e.line,
                e.col,
                format!("'{}' rows must be integer vectors like [1, 0]", e.key),
            )),
        })
        .collect()
}

fn unknown_key(section: &str, e: &RawEntry) -> CliError {
    err(
        e.line,
        e.col,
        format!("unknown key '{}' in [{section}]", e.key),
    )
}

pub fn parse_config(text: &str) -> Result<Config> {
    let mut cfg = Config::default();
    let mut seen_pair = false;
    for section in scan_sections(text)? {
        match section.name.as_str() {
            "pair" => {
                if seen_pair {
                    return Err(err(section.line, 1, "duplicate [pair] section"));
                }
                seen_pair = true;
                for e in &section.entries {
                    match e.key.as_str() {
                        "name" => cfg.name = Some(string_value(e)?),
                        "preset" => cfg.preset = Some(string_value(e)?),
                        _ => return Err(unknown_key("pair", e)),
                    }
                }
            }
            "factor" => {
                let mut type_name = None;
                let mut compact = Vec::new();
                for e in &section.entries {
                    match e.key.as_str() {
                        "type" => type_name = Some(string_value(e)?),
                        "compact" => compact = int_matrix(e)?,
                        _ => return Err(unknown_key("factor", e)),
                    }
                }
                let type_name = type_name.ok_or_else(|| {
                    err(section.line, 1, "[factor] requires a 'type' key")
                })?;
                cfg.factors.push(FactorSpec { type_name, compact });
            }
            "tau" => {
                let mut weight = None;
                for e in &section.entries {
                    match e.key.as_str() {
                        "weight" => weight = Some(rational_list(e)?),
                        _ => return Err(unknown_key("tau", e)),
                    }
                }
                let weight = weight
                    .ok_or_else(|| err(section.line, 1, "[tau] requires a 'weight' key"))?;
                cfg.tau = Some(TauConfig { weight });
            }
            "element" => {
                let mut x = None;
                let mut c_g = Rational::one();
                let mut component_index = 1u64;
                for e in &section.entries {
                    match e.key.as_str() {
                        "x" => x = Some(rational_list(e)?),
                        "c_g" => c_g = rational_value(&e.value, e)?,
                        "component_index" => {
                            let n = int_value(e)?;
                            if n < 1 {
                                return Err(err(e.line, e.col, "component_index must be ≥ 1"));
                            }
                            component_index = n as u64;
                        }
                        _ => return Err(unknown_key("element", e)),
                    }
                }
                let x =
                    x.ok_or_else(|| err(section.line, 1, "[element] requires an 'x' key"))?;
                cfg.element = Some(ElementConfig {
                    x,
                    c_g,
                    component_index,
                });
            }
            "arith" => {
                let mut chi_gamma = None;
                let mut error_term = Rational::zero();
                let mut operator = OperatorKind::Euler;
                for e in &section.entries {
                    match e.key.as_str() {
                        "chi_gamma" => chi_gamma = Some(Int::from(int_value(e)?)),
                        "error_term" => error_term = rational_value(&e.value, e)?,
                        "operator" => {
                            operator = match string_value(e)?.as_str() {
                                "euler" => OperatorKind::Euler,
                                "dirac" => OperatorKind::Dirac,
                                other => {
                                    return Err(err(
                                        e.line,
                                        e.col,
                                        format!("unknown operator \"{other}\" (euler | dirac)"),
                                    ))
                                }
                            }
                        }
                        _ => return Err(unknown_key("arith", e)),
                    }
                }
                let chi_gamma = chi_gamma.ok_or_else(|| {
                    err(section.line, 1, "[arith] requires a 'chi_gamma' key")
                })?;
                cfg.arith = Some(ArithConfig {
                    chi_gamma,
                    error_term,
                    operator,
                });
            }
            other => {
                return Err(err(
                    section.line,
                    1,
                    format!("unknown section [{other}]"),
                ))
            }
        }
    }
    if cfg.preset.is_some() && !cfg.factors.is_empty() {
        return Err(CliError::Usage(
            "config sets both a preset and explicit [factor] sections".into(),
        ));
    }
    if cfg.preset.is_none() && cfg.factors.is_empty() {
        return Err(CliError::Usage(
            "config needs a preset or at least one [factor] section".into(),
        ));
    }
    Ok(cfg)
}

/// Resolve the configured pair: preset lookup or factor assembly plus
/// grading validation. Returns the pair with its display name.
pub fn resolve_pair(cfg: &Config) -> Result<(SymmetricPair, String)> {
    if let Some(preset) = &cfg.preset {
        let pair = preset_pair(preset)
            .ok_or_else(|| CliError::UnknownPreset(preset.clone()))?;
        let name = cfg.name.clone().unwrap_or_else(|| preset.clone());
        return Ok((pair, name));
    }
    let type_string = cfg
        .factors
        .iter()
        .map(|f| f.type_name.as_str())
        .collect::<Vec<_>>()
        .join("x");
    let ty = CartanType::parse(&type_string)?;
    let rs = build_root_system(&ty);
    let rank = rs.rank();
    let mut compact: Vec<Vec<i64>> = Vec::new();
    let mut offset = 0usize;
    for (i, f) in cfg.factors.iter().enumerate() {
        let fr = ty.factors()[i].rank;
        for row in &f.compact {
            if row.len() != fr {
                return Err(CliError::Usage(format!(
                    "factor {} ({}) expects compact roots of length {fr}, found {}",
                    i + 1,
                    f.type_name,
                    row.len()
                )));
            }
            let mut global = vec![0i64; rank];
            global[offset..offset + fr].copy_from_slice(row);
            compact.push(global);
        }
        offset += fr;
    }
    let pair = validate_pair(rs, &compact)?;
    let name = cfg.name.clone().unwrap_or(type_string);
    Ok((pair, name))
}

fn render_weight_item(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\"{r}\"")
    }
}

/// Canonical config text for a resolved pair and job parameters. Presets
/// are expanded to explicit factors; defaults are materialized; rendering
/// the parse of this text reproduces it byte for byte.
pub fn render_config(
    pair: &SymmetricPair,
    name: &str,
    tau: &TauConfig,
    element: &ElementConfig,
    arith: Option<&ArithConfig>,
) -> String {
    let rs = pair.root_system();
    let ty = rs.cartan_type();
    let mut out = String::new();
    out.push_str("[pair]\n");
    out.push_str(&format!("name = \"{name}\"\n"));
    let mut offset = 0usize;
    for f in ty.factors() {
        out.push_str(&format!("\n[factor]\ntype = \"{f}\"\n"));
        let rows: Vec<String> = pair
            .compact_subsystem()
            .roots()
            .iter()
            .filter(|r| {
                r.sr_coords()[offset..offset + f.rank]
                    .iter()
                    .any(|&c| c != 0)
            })
            .map(|r| {
                let cells: Vec<String> = r.sr_coords()[offset..offset + f.rank]
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        out.push_str(&format!("compact = [{}]\n", rows.join(", ")));
        offset += f.rank;
    }
    out.push_str("\n[tau]\n");
    let w: Vec<String> = tau.weight.iter().map(render_weight_item).collect();
    out.push_str(&format!("weight = [{}]\n", w.join(", ")));
    out.push_str("\n[element]\n");
    let x: Vec<String> = element.x.iter().map(|r| format!("\"{r}\"")).collect();
    out.push_str(&format!("x = [{}]\n", x.join(", ")));
    out.push_str(&format!("c_g = \"{}\"\n", element.c_g));
    out.push_str(&format!("component_index = {}\n", element.component_index));
    if let Some(a) = arith {
        out.push_str("\n[arith]\n");
        out.push_str(&format!("chi_gamma = {}\n", a.chi_gamma));
        out.push_str(&format!("error_term = \"{}\"\n", a.error_term));
        let op = match a.operator {
            OperatorKind::Euler => "euler",
            OperatorKind::Dirac => "dirac",
        };
        out.push_str(&format!("operator = \"{op}\"\n"));
    }
    out
}

/// The job parameters with defaults filled in for the resolved pair.
pub fn materialize(cfg: &Config, rank: usize) -> (TauConfig, ElementConfig) {
    let tau = cfg.tau.clone().unwrap_or_else(|| TauConfig {
        weight: vec![Rational::zero(); rank],
    });
    let element = cfg.element.clone().unwrap_or_else(|| ElementConfig {
        x: vec![Rational::zero(); rank],
        c_g: Rational::one(),
        component_index: 1,
    });
    (tau, element)
}
