//! Triple and basis files: pretty-printed JSON with an explicit schema
//! version, p-adic values as literals `u * p^v + O(p^k)`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hida::{DegeneracyData, FormSpaceBasis};
use crate::linalg::PMatrix;
use crate::localfield::{EisensteinPoly, LocalField, LocalFieldElement};
use crate::period::{FormRecord, PeriodReport, Reduction, TripleConfig};
use crate::qexp::{DirichletCharacter, QExpansion};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PRECISION: i64 = 30;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawField {
    pub p: u64,
    #[serde(default = "one")]
    pub unramified_degree: usize,
    /// `E_0, …, E_{e−1}` of the Eisenstein polynomial `π^e + … + E_0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eisenstein: Option<Vec<i64>>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCharacter {
    pub modulus: u64,
    pub generator_values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawForm {
    pub weight: i64,
    pub level: u64,
    /// Coefficients are known for `n ≤ qprec`; unlisted ones are zero.
    pub qprec: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<RawCharacter>,
    pub coeffs: Vec<(usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ap: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hecke: BTreeMap<u64, String>,
    #[serde(default, rename = "lambda_M1", skip_serializing_if = "Option::is_none")]
    pub lambda_m1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawForms {
    pub f: RawForm,
    pub g: RawForm,
    pub h: RawForm,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPrecision {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_adic: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTriple {
    pub schema_version: u32,
    pub field: RawField,
    #[serde(rename = "M")]
    pub level: u64,
    #[serde(rename = "M1")]
    pub level_f: u64,
    pub t: u32,
    pub s: u32,
    pub weights: [i64; 3],
    #[serde(default)]
    pub teichmuller: [i64; 3],
    /// Defaults to trivial characters modulo `M`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tame: Option<[RawCharacter; 3]>,
    /// Defaults to trivial characters modulo `p^t`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wild: Option<[RawCharacter; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt: Option<RawCharacter>,
    #[serde(default)]
    pub reduction: Reduction,
    #[serde(default)]
    pub precision: RawPrecision,
    /// Path of the basis file, relative to the triple file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub forms: RawForms,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBasisSpace {
    pub sturm_bound: usize,
    pub forms: Vec<RawForm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDegeneracy {
    pub from_level: u64,
    pub to_level: u64,
    pub source: RawBasisSpace,
    pub target: RawBasisSpace,
    /// Row-major, `dim target × dim source`.
    pub trace: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBasis {
    pub schema_version: u32,
    pub sturm_bound: usize,
    pub forms: Vec<RawForm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degeneracy: Vec<RawDegeneracy>,
}

/// Command-line overrides of the file's precision settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub p_adic: Option<i64>,
    pub q: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct TripleInput {
    pub config: TripleConfig,
    pub p_adic_precision: i64,
    pub q_precision: usize,
    pub basis: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BasisInput {
    pub basis: FormSpaceBasis,
    pub degeneracy: Vec<DegeneracyData>,
}

/// A schema violation located in the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaViolation {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn schema_error(v: Vec<SchemaViolation>) -> Error {
    let lines: Vec<String> = v
        .iter()
        .map(|v| format!("line {}, column {}: {}", v.line, v.column, v.message))
        .collect();
    Error::Schema(lines.join("\n"))
}

/// 1-based position of the first occurrence of `needle`, or of the start.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let Some(offset) = text.find(needle) else {
        return (1, 1);
    };
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(offset, |i| offset - i - 1) + 1;
    (line, column)
}

/// Collects violations, each located by a search string in the source.
struct Checker<'a> {
    text: &'a str,
    found: Vec<SchemaViolation>,
}

impl<'a> Checker<'a> {
    fn new(text: &'a str) -> Self {
        Checker { text, found: Vec::new() }
    }

    fn push(&mut self, anchor: &str, message: impl Into<String>) {
        let (line, column) = locate(self.text, anchor);
        self.found.push(SchemaViolation {
            line,
            column,
            message: message.into(),
        });
    }

    fn literal(&mut self, field: &LocalField, text: &str) -> Option<LocalFieldElement> {
        match LocalFieldElement::parse_truncating(field, text) {
            Ok(x) => Some(x),
            Err(e) => {
                self.push(&format!("\"{text}\""), e.to_string());
                None
            }
        }
    }

    fn character(&mut self, field: &LocalField, raw: &RawCharacter, name: &str) -> Option<DirichletCharacter> {
        let vals: Option<Vec<_>> = raw.generator_values.iter().map(|v| self.literal(field, v)).collect();
        let chi = match DirichletCharacter::from_generator_values(field, raw.modulus, vals?) {
            Ok(c) => c,
            Err(e) => {
                self.push(&format!("\"modulus\": {}", raw.modulus), format!("{name}: {e}"));
                return None;
            }
        };
        if let Err(e) = chi.check_multiplicative() {
            self.push(&format!("\"modulus\": {}", raw.modulus), format!("{name}: {e}"));
            return None;
        }
        Some(chi)
    }

    fn form(&mut self, field: &LocalField, raw: &RawForm, qprec: usize, name: &str) -> Option<QExpansion> {
        let n = raw.qprec.min(qprec);
        let mut coeffs = vec![LocalFieldElement::zero(field); n + 1];
        let mut ok = true;
        for (i, lit) in &raw.coeffs {
            if *i > raw.qprec {
                self.push(&format!("\"{lit}\""), format!("{name}: index {i} beyond qprec {}", raw.qprec));
                ok = false;
                continue;
            }
            match self.literal(field, lit) {
                Some(c) if *i <= n => coeffs[*i] = c,
                Some(_) => {}
                None => ok = false,
            }
        }
        let chi = match &raw.character {
            Some(c) => self.character(field, c, name),
            None => Some(DirichletCharacter::trivial(field, 1)),
        };
        if !ok {
            return None;
        }
        QExpansion::new(coeffs, raw.weight, raw.level, chi?).ok()
    }

    fn record(&mut self, field: &LocalField, raw: &RawForm, qprec: usize, name: &str) -> Option<FormRecord> {
        let form = self.form(field, raw, qprec, name)?;
        let mut rec = FormRecord::new(form);
        let opt = |this: &mut Self, s: &Option<String>| s.as_ref().map(|s| this.literal(field, s));
        rec.a_p = opt(self, &raw.ap).flatten();
        rec.lambda_m1 = opt(self, &raw.lambda_m1).flatten();
        rec.mu = opt(self, &raw.mu).flatten();
        for (ell, lit) in &raw.hecke {
            if let Some(a) = self.literal(field, lit) {
                rec.hecke.insert(*ell, a);
            }
        }
        Some(rec)
    }

    fn finish<T>(self, value: Option<T>) -> Result<T> {
        match value {
            Some(v) if self.found.is_empty() => Ok(v),
            _ if !self.found.is_empty() => Err(schema_error(self.found)),
            _ => Err(Error::Schema("incomplete record".into())),
        }
    }
}

fn syntax<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn check_version(text: &str, v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        let (line, column) = locate(text, "\"schema_version\"");
        return Err(schema_error(vec![SchemaViolation {
            line,
            column,
            message: format!("schema version {v} is not supported (expected {SCHEMA_VERSION})"),
        }]));
    }
    Ok(())
}

/// `⌊k·[SL₂(Z) : Γ₀(N)]/12⌋ + 1`.
pub fn sturm_bound(k: i64, n: u64) -> usize {
    let mut index = n;
    let mut m = n;
    let mut ell = 2;
    while ell * ell <= m {
        if m % ell == 0 {
            index = index / ell * (ell + 1);
            while m % ell == 0 {
                m /= ell;
            }
        }
        ell += 1;
    }
    if m > 1 {
        index = index / m * (m + 1);
    }
    (k.max(0) as u64 * index / 12) as usize + 1
}

pub fn build_field(raw: &RawField, cap: i64) -> Result<LocalField> {
    let eis = raw.eisenstein.as_ref().map(|c| EisensteinPoly::from_integers(c));
    LocalField::new(raw.p, raw.unramified_degree, eis, cap)
}

/// Parses and validates a triple file. `field` reuses an existing field
/// (with the same parameters) so that several files share elements.
pub fn parse_triple_str(text: &str, overrides: Overrides, field: Option<&LocalField>) -> Result<TripleInput> {
    let raw: RawTriple = syntax(text)?;
    check_version(text, raw.schema_version)?;
    let cap = overrides.p_adic.or(raw.precision.p_adic).unwrap_or(DEFAULT_PRECISION);
    let field = match field {
        Some(f) => f.clone(),
        None => build_field(&raw.field, cap).map_err(|e| {
            let (line, column) = locate(text, "\"field\"");
            schema_error(vec![SchemaViolation {
                line,
                column,
                message: e.to_string(),
            }])
        })?,
    };
    let [k, ..] = raw.weights;
    let p = raw.field.p;
    let default_q = sturm_bound(k, raw.level_f * p.saturating_pow(raw.t)).max(2 * p as usize * k.max(0) as usize);
    let qprec = overrides.q.or(raw.precision.q).unwrap_or(default_q);

    let mut c = Checker::new(text);
    let pt = p.saturating_pow(raw.t);
    for (name, form) in [("g", &raw.forms.g), ("h", &raw.forms.h)] {
        if (raw.level * pt) % form.level.max(1) != 0 {
            c.push(&format!("\"{name}\""), format!("{name} has level {} not dividing Mp^t = {}", form.level, raw.level * pt));
        }
    }
    let chars = |c: &mut Checker, raws: &Option<[RawCharacter; 3]>, modulus: u64, names: [&str; 3]| -> Option<[DirichletCharacter; 3]> {
        match raws {
            None => Some([0, 1, 2].map(|_| DirichletCharacter::trivial(&field, modulus.max(1)))),
            Some(r) => {
                let v: Vec<Option<DirichletCharacter>> = r.iter().zip(names).map(|(x, n)| c.character(&field, x, n)).collect();
                let v: Option<Vec<_>> = v.into_iter().collect();
                v.and_then(|v| v.try_into().ok())
            }
        }
    };
    let tame = chars(&mut c, &raw.tame, raw.level, ["χ_f", "χ_g", "χ_h"]);
    let wild = chars(&mut c, &raw.wild, pt, ["ε_f", "ε_g", "ε_h"]);
    let sqrt = raw.sqrt.as_ref().map(|s| c.character(&field, s, "sqrt"));
    let f = c.record(&field, &raw.forms.f, qprec, "f");
    let g = c.record(&field, &raw.forms.g, qprec, "g");
    let h = c.record(&field, &raw.forms.h, qprec, "h");

    let config = match (tame, wild, f, g, h) {
        (Some(tame), Some(wild), Some(f), Some(g), Some(h)) if !matches!(sqrt, Some(None)) => Some(TripleConfig {
            p,
            level: raw.level,
            level_f: raw.level_f,
            t: raw.t,
            s: raw.s,
            weights: raw.weights,
            teichmuller: raw.teichmuller,
            tame,
            wild,
            sqrt: sqrt.flatten(),
            reduction: raw.reduction,
            f,
            g,
            h,
        }),
        _ => None,
    };
    if let Some(tc) = &config {
        for v in tc.validate() {
            let anchor = match v.clause.as_str() {
                "balanced" | "weights" => "\"weights\"",
                "self-duality" => "\"teichmuller\"",
                "square-root" => "\"sqrt\"",
                "f-ord" => "\"ap\"",
                "levels" => "\"M\"",
                _ => "\"field\"",
            };
            c.push(anchor, format!("{}: {}", v.clause, v.detail));
        }
    }
    let config = c.finish(config)?;
    Ok(TripleInput {
        config,
        p_adic_precision: cap,
        q_precision: qprec,
        basis: raw.basis,
    })
}

pub fn parse_triple(path: &Path, overrides: Overrides) -> Result<TripleInput> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_triple_str(&text, overrides, None)
}

fn basis_space(c: &mut Checker, field: &LocalField, forms: &[RawForm], sturm: usize, qprec: usize) -> Option<FormSpaceBasis> {
    let parsed: Vec<Option<QExpansion>> = forms
        .iter()
        .enumerate()
        .map(|(i, f)| c.form(field, f, qprec, &format!("basis form {i}")))
        .collect();
    let parsed: Option<Vec<_>> = parsed.into_iter().collect();
    match FormSpaceBasis::new(parsed?, sturm) {
        Ok(b) => Some(b),
        Err(e) => {
            c.push("\"sturm_bound\"", e.to_string());
            None
        }
    }
}

pub fn parse_basis_str(text: &str, field: &LocalField, qprec: Option<usize>) -> Result<BasisInput> {
    let raw: RawBasis = syntax(text)?;
    check_version(text, raw.schema_version)?;
    let q = qprec.unwrap_or(usize::MAX);
    let mut c = Checker::new(text);
    let basis = basis_space(&mut c, field, &raw.forms, raw.sturm_bound, q);
    let mut degeneracy = Vec::new();
    for d in &raw.degeneracy {
        let source = basis_space(&mut c, field, &d.source.forms, d.source.sturm_bound, q);
        let target = basis_space(&mut c, field, &d.target.forms, d.target.sturm_bound, q);
        let rows: Option<Vec<Vec<LocalFieldElement>>> = d
            .trace
            .iter()
            .map(|row| row.iter().map(|x| c.literal(field, x)).collect())
            .collect();
        if let (Some(s), Some(t), Some(rows)) = (source, target, rows) {
            match PMatrix::from_rows(field, rows).and_then(|m| DegeneracyData::new(s, t, d.from_level, d.to_level, m)) {
                Ok(dd) => degeneracy.push(dd),
                Err(e) => c.push("\"trace\"", e.to_string()),
            }
        }
    }
    let basis = c.finish(basis)?;
    Ok(BasisInput { basis, degeneracy })
}

pub fn parse_basis(path: &Path, field: &LocalField, qprec: Option<usize>) -> Result<BasisInput> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_basis_str(&text, field, qprec)
}

/// Sparse record of a q-expansion: nonzero coefficients only.
pub fn raw_form(xi: &QExpansion) -> RawForm {
    let coeffs = xi
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n, c.to_literal()))
        .collect();
    RawForm {
        weight: xi.weight,
        level: xi.level,
        qprec: xi.q_precision(),
        character: (!xi.character.is_trivial() || xi.character.modulus() != 1).then(|| raw_character(&xi.character)),
        coeffs,
        ap: None,
        hecke: BTreeMap::new(),
        lambda_m1: None,
        mu: None,
    }
}

pub fn raw_character(chi: &DirichletCharacter) -> RawCharacter {
    RawCharacter {
        modulus: chi.modulus(),
        generator_values: chi.generator_values().iter().map(|v| v.to_literal()).collect(),
    }
}

fn raw_record(rec: &FormRecord) -> RawForm {
    let mut r = raw_form(&rec.form);
    r.ap = rec.a_p.as_ref().map(|x| x.to_literal());
    r.lambda_m1 = rec.lambda_m1.as_ref().map(|x| x.to_literal());
    r.mu = rec.mu.as_ref().map(|x| x.to_literal());
    r.hecke = rec.hecke.iter().map(|(l, a)| (*l, a.to_literal())).collect();
    r
}

/// The file form of a configuration over a field built from `field`.
pub fn raw_triple(tc: &TripleConfig, field: RawField, precision: RawPrecision, basis: Option<String>) -> RawTriple {
    RawTriple {
        schema_version: SCHEMA_VERSION,
        field,
        level: tc.level,
        level_f: tc.level_f,
        t: tc.t,
        s: tc.s,
        weights: tc.weights,
        teichmuller: tc.teichmuller,
        tame: Some(tc.tame.clone().map(|c| raw_character(&c))),
        wild: Some(tc.wild.clone().map(|c| raw_character(&c))),
        sqrt: tc.sqrt.as_ref().map(raw_character),
        reduction: tc.reduction,
        precision,
        basis,
        forms: RawForms {
            f: raw_record(&tc.f),
            g: raw_record(&tc.g),
            h: raw_record(&tc.h),
        },
    }
}

pub fn raw_basis(b: &FormSpaceBasis) -> RawBasis {
    RawBasis {
        schema_version: SCHEMA_VERSION,
        sturm_bound: b.sturm_bound(),
        forms: b.forms().iter().map(raw_form).collect(),
        degeneracy: Vec::new(),
    }
}

pub fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Structured,
}

/// Deterministic serialization of a report.
pub fn emit_report(r: &PeriodReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Text => r.to_text().into_bytes(),
        ReportFormat::Structured => {
            let mut s = r.to_json();
            s.push('\n');
            s.into_bytes()
        }
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<PeriodReport> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?;
    PeriodReport::from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::{compute_period, planted_triple, PeriodOptions};

    fn ramified_raw() -> RawField {
        RawField {
            p: 5,
            unramified_degree: 1,
            eisenstein: Some(vec![-5, 0]),
        }
    }

    fn planted_text(seed: u64) -> (LocalField, String, String) {
        let k = build_field(&ramified_raw(), 20).unwrap();
        let u = LocalFieldElement::from_int(&k, 4);
        let pt = planted_triple(&k, &u, 100, seed).unwrap();
        let prec = RawPrecision {
            p_adic: Some(20),
            q: Some(100),
        };
        let triple = to_text(&raw_triple(&pt.config, ramified_raw(), prec, Some("basis.json".into())));
        let basis = to_text(&raw_basis(&pt.basis));
        (k, triple, basis)
    }

    #[test]
    fn minimal_file_parses_with_r_zero() {
        let (_, triple, _) = planted_text(1);
        let input = parse_triple_str(&triple, Overrides::default(), None).unwrap();
        assert_eq!(input.config.r(), 0);
        assert_eq!(input.q_precision, 100);
        assert_eq!(input.basis.as_deref(), Some("basis.json"));
    }

    #[test]
    fn parsed_files_reproduce_the_planted_period() {
        let (_, triple, basis) = planted_text(2);
        let input = parse_triple_str(&triple, Overrides::default(), None).unwrap();
        let b = parse_basis_str(&basis, input.config.field(), Some(input.q_precision)).unwrap();
        let rep = compute_period(&input.config, &b.basis, &b.degeneracy, PeriodOptions::default()).unwrap();
        let got = LocalFieldElement::parse(input.config.field(), &rep.period).unwrap();
        assert!(got.eq_at_precision(&LocalFieldElement::from_int(input.config.field(), 4)));
        // determinism
        let rep2 = compute_period(&input.config, &b.basis, &b.degeneracy, PeriodOptions::default()).unwrap();
        assert_eq!(emit_report(&rep, ReportFormat::Structured), emit_report(&rep2, ReportFormat::Structured));
        assert_eq!(parse_report(&emit_report(&rep, ReportFormat::Structured)).unwrap(), rep);
    }

    #[test]
    fn file_round_trip_is_byte_exact() {
        let (_, triple, _) = planted_text(3);
        let input = parse_triple_str(&triple, Overrides::default(), None).unwrap();
        let prec = RawPrecision {
            p_adic: Some(20),
            q: Some(100),
        };
        let again = to_text(&raw_triple(&input.config, ramified_raw(), prec, Some("basis.json".into())));
        assert_eq!(again, triple);
    }

    #[test]
    fn odd_weight_sum_is_rejected() {
        let (_, triple, _) = planted_text(4);
        let bad = triple.replacen("\"weights\": [\n    2,\n    2,\n    2\n  ]", "\"weights\": [\n    2,\n    2,\n    3\n  ]", 1);
        assert_ne!(bad, triple);
        let err = parse_triple_str(&bad, Overrides::default(), None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("odd total weight"), "{msg}");
        let (line, _) = locate(&bad, "\"weights\"");
        assert!(msg.contains(&format!("line {line},")), "{msg}");
    }

    #[test]
    fn truncated_file_reports_position() {
        let (_, triple, _) = planted_text(5);
        let cut = &triple[..triple.len() / 2];
        match parse_triple_str(cut, Overrides::default(), None) {
            Err(Error::Parse { line, column, .. }) => assert!(line > 1 && column >= 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_literal_is_located() {
        let (_, triple, _) = planted_text(6);
        let bad = triple.replacen("\"ap\": \"[2 * 5^0", "\"ap\": \"[2 * 7^0", 1);
        assert_ne!(bad, triple);
        let err = parse_triple_str(&bad, Overrides::default(), None).unwrap_err();
        let (line, column) = locate(&bad, "\"[2 * 7^0");
        assert!(err.to_string().contains(&format!("line {line}, column {column}")), "{err}");
    }

    #[test]
    fn missing_precision_field_and_bad_version() {
        let (_, triple, _) = planted_text(7);
        let no_q = triple.replacen("\"qprec\": 100,", "", 1);
        assert!(matches!(parse_triple_str(&no_q, Overrides::default(), None), Err(Error::Parse { .. })));
        let v2 = triple.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
        assert!(matches!(parse_triple_str(&v2, Overrides::default(), None), Err(Error::Schema(_))));
    }

    #[test]
    fn defaults_apply() {
        let (_, triple, _) = planted_text(8);
        let bare = triple.replacen("\"p_adic\": 20,", "", 1).replacen("\"q\": 100", "", 1);
        let bare = bare.replacen("\"precision\": {\n    \n  }", "\"precision\": {}", 1);
        let input = parse_triple_str(&bare, Overrides::default(), None).unwrap();
        assert_eq!(input.p_adic_precision, DEFAULT_PRECISION);
        // max(Sturm(2, 5) = 2, 2·5·2 = 20); records are truncated to it
        assert_eq!(input.q_precision, 20);
        assert_eq!(input.config.f.form.q_precision(), 20);
        let o = Overrides {
            p_adic: Some(12),
            q: Some(50),
        };
        let input = parse_triple_str(&bare, o, None).unwrap();
        assert_eq!((input.p_adic_precision, input.q_precision), (12, 50));
    }

    #[test]
    fn inconsistent_levels_are_reported() {
        let (_, triple, _) = planted_text(9);
        // g is the second record with level 5
        let idx = triple.find("\"g\": {").unwrap();
        let (head, tail) = triple.split_at(idx);
        let bad = format!("{head}{}", tail.replacen("\"level\": 5", "\"level\": 7", 1));
        let err = parse_triple_str(&bad, Overrides::default(), None).unwrap_err();
        assert!(err.to_string().contains("g has level 7"), "{err}");
    }

    #[test]
    fn sturm_bounds() {
        assert_eq!(sturm_bound(12, 1), 2);
        assert_eq!(sturm_bound(2, 11), 3);
        assert_eq!(sturm_bound(2, 5), 2);
        assert_eq!(sturm_bound(4, 25), 11);
    }

    #[test]
    fn literals_round_trip() {
        let k = build_field(&ramified_raw(), 20).unwrap();
        for text in ["[3 * 5^0 + O(5^20), 1 * 5^1 + O(5^20)]", "[0 * 5^0 + O(5^20), 0 * 5^0 + O(5^20)]"] {
            let x = LocalFieldElement::parse(&k, text).unwrap();
            assert_eq!(x.to_literal(), text);
        }
        let q = LocalField::qp(7, 10).unwrap();
        for text in ["3 * 7^-2 + O(7^10)", "1 * 7^0 + O(7^4)"] {
            let x = LocalFieldElement::parse(&q, text).unwrap();
            assert_eq!(x.to_literal(), text);
        }
    }
}
