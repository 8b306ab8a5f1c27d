//! The right-hand side of the reciprocity law for one triple: twists,
//! lifting polynomials, convenience certificates and the value
//! `(−1)^{k−2}(r−k+2)!·a₁(e_f̆(Tr(d^{(k−l−m)/2}g × h')))`.

mod planted;

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use planted::{planted_triple, PlantedTriple};

use crate::cusp::{expected_constant, symbolic_constant};
use crate::error::{Error, Result};
use crate::hida::{isotypic_a1, trace_level, DegeneracyData, EigenformRecord, FormSpaceBasis};
use crate::localfield::{FpPolynomial, LocalField, LocalFieldElement};
use crate::phin::{build_dfgh, check_balanced, convenient_check, FLeg, SupercuspidalLeg, Verdict};
use crate::qexp::{DirichletCharacter, QExpansion};

/// One ingested form with its optional local data at p.
#[derive(Clone, Debug)]
pub struct FormRecord {
    pub form: QExpansion,
    pub a_p: Option<LocalFieldElement>,
    /// `ℓ ↦ a_ℓ`, used to isolate the eigensystem.
    pub hecke: BTreeMap<u64, LocalFieldElement>,
    pub lambda_m1: Option<LocalFieldElement>,
    /// Frobenius scalar of a leg supercuspidal at p.
    pub mu: Option<LocalFieldElement>,
}

impl FormRecord {
    pub fn new(form: QExpansion) -> Self {
        FormRecord {
            form,
            a_p: None,
            hecke: BTreeMap::new(),
            lambda_m1: None,
            mu: None,
        }
    }
}

/// Reduction type of f at p.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    #[default]
    Good,
    Multiplicative,
}

#[derive(Clone, Debug)]
pub struct TripleConfig {
    pub p: u64,
    /// `M`.
    pub level: u64,
    /// `M₁`.
    pub level_f: u64,
    pub t: u32,
    pub s: u32,
    pub weights: [i64; 3],
    /// `(k₀, l₀, m₀)`.
    pub teichmuller: [i64; 3],
    /// `χ_f, χ_g, χ_h` modulo `M`.
    pub tame: [DirichletCharacter; 3],
    /// `ε_f, ε_g, ε_h` modulo `p^t`.
    pub wild: [DirichletCharacter; 3],
    /// The designated `(ε_f^{−1}ε_gε_h)^{−1/2}` modulo `p^t`.
    pub sqrt: Option<DirichletCharacter>,
    pub reduction: Reduction,
    pub f: FormRecord,
    pub g: FormRecord,
    pub h: FormRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

fn violation(clause: &str, detail: impl Into<String>) -> Violation {
    Violation {
        clause: clause.into(),
        detail: detail.into(),
    }
}

impl TripleConfig {
    pub fn field(&self) -> &LocalField {
        self.f.form.field()
    }

    /// `r = (k+l+m−6)/2`.
    pub fn r(&self) -> i64 {
        let [k, l, m] = self.weights;
        (k + l + m - 6) / 2
    }

    pub fn r_vector(&self) -> [i64; 3] {
        self.weights.map(|w| w - 2)
    }

    /// `(k−l−m)/2`.
    pub fn derivative_exponent(&self) -> i64 {
        let [k, l, m] = self.weights;
        (k - l - m) / 2
    }

    fn p_power_t(&self) -> u64 {
        self.p.pow(self.t)
    }

    /// Every violated assumption; an empty list means the triple is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let [k, l, m] = self.weights;
        let p = self.p;
        if self.field().p() != p {
            out.push(violation("field", format!("forms live over a field of residue characteristic {}", self.field().p())));
        }
        if let Err(e) = check_balanced(k, l, m) {
            out.push(violation("balanced", e.to_string()));
        }
        for (name, rec, w) in [("f", &self.f, k), ("g", &self.g, l), ("h", &self.h, m)] {
            if rec.form.weight != w {
                out.push(violation("weights", format!("{name} has weight {}, expected {w}", rec.form.weight)));
            }
        }
        if self.level == 0 || self.level_f == 0 || self.level % self.level_f != 0 {
            out.push(violation("levels", format!("M₁ = {} does not divide M = {}", self.level_f, self.level)));
        }
        if self.level % p == 0 {
            out.push(violation("levels", format!("p divides M = {}", self.level)));
        }
        if self.s > self.t {
            out.push(violation("levels", format!("s = {} exceeds t = {}", self.s, self.t)));
        }
        if self.t == 0 {
            out.push(violation("levels", "t must be at least 1"));
        } else if self.level * self.p_power_t() < 5 {
            out.push(violation("levels", format!("Mp^t = {} is below 5", self.level * self.p_power_t())));
        }
        let f_level = self.level_f * p.pow(self.s);
        if self.s > 0 && f_level % self.f.form.level != 0 {
            out.push(violation("levels", format!("f has level {}, not dividing M₁p^s = {f_level}", self.f.form.level)));
        }
        for (name, chi) in ["χ_f", "χ_g", "χ_h"].iter().zip(&self.tame) {
            if self.level % chi.modulus() != 0 {
                out.push(violation("characters", format!("{name} has modulus {} not dividing M", chi.modulus())));
            }
        }
        for (name, eps) in ["ε_f", "ε_g", "ε_h"].iter().zip(&self.wild) {
            if self.t > 0 && self.p_power_t() % eps.modulus() != 0 {
                out.push(violation("characters", format!("{name} has modulus {} not dividing p^t", eps.modulus())));
            }
        }
        match self.tame[0].mul(&self.tame[1]).and_then(|c| c.mul(&self.tame[2])) {
            Ok(c) if c.is_trivial() => {}
            Ok(_) => out.push(violation("self-duality", "χ_fχ_gχ_h is not trivial")),
            Err(e) => out.push(violation("self-duality", e.to_string())),
        }
        let [k0, l0, m0] = self.teichmuller;
        if (k0 + l0 + m0).rem_euclid(p as i64 - 1) != 0 {
            out.push(violation("self-duality", format!("k₀+l₀+m₀ = {} is not divisible by p−1", k0 + l0 + m0)));
        }
        if let Some(root) = &self.sqrt {
            match self.sqrt_target().and_then(|target| Ok(root.pow(2)?.mul(&target)?)) {
                Ok(c) if c.is_trivial() => {}
                Ok(_) => out.push(violation("square-root", "ψ² does not equal (ε_f^{−1}ε_gε_h)^{−1}")),
                Err(e) => out.push(violation("square-root", e.to_string())),
            }
        }
        match &self.f.a_p {
            Some(a) if a.is_unit() => {}
            Some(a) => out.push(violation("f-ord", format!("a_p(f) = {} is not a unit", a.to_literal()))),
            None => out.push(violation("f-ord", "a_p(f) is missing")),
        }
        out
    }

    /// `ε_f^{−1}ε_gε_h`.
    fn sqrt_target(&self) -> Result<DirichletCharacter> {
        self.wild[0].conj()?.mul(&self.wild[1])?.mul(&self.wild[2])
    }
}

fn ensure_valid(tc: &TripleConfig) -> Result<()> {
    let v = tc.validate();
    if v.is_empty() {
        return Ok(());
    }
    let list: Vec<String> = v.iter().map(|v| format!("{}: {}", v.clause, v.detail)).collect();
    Err(Error::Precondition(list.join("; ")))
}

/// `f' = f ⊗ ω^{k−2−k₀}ε_f^{−1}`, `h' = h ⊗ ψ_fgh` and
/// `ψ_fgh = ω^{(r₂+r₃−r₁−2k₀)/2}·(ε_f^{−1}ε_gε_h)^{−1/2}`. A trivial twisting
/// character gives the p-depletion.
#[derive(Clone, Debug)]
pub struct Twists {
    pub f_prime: QExpansion,
    pub h_prime: QExpansion,
    pub psi: DirichletCharacter,
}

fn twist_or_deplete(xi: &QExpansion, chi: &DirichletCharacter) -> Result<QExpansion> {
    if chi.is_trivial() {
        xi.deplete()
    } else {
        xi.twist(chi)
    }
}

pub fn build_twists(tc: &TripleConfig) -> Result<Twists> {
    ensure_valid(tc)?;
    let field = tc.field();
    let pt = tc.p_power_t();
    let [k, l, m] = tc.weights;
    let k0 = tc.teichmuller[0];
    let root = tc
        .sqrt
        .as_ref()
        .ok_or_else(|| Error::Precondition("no square root of (ε_f^{−1}ε_gε_h)^{−1} designated".into()))?;
    let omega = |e: i64| DirichletCharacter::teichmuller_power(field, e)?.extend(pt);
    let f_char = omega(k - 2 - k0)?.mul(&tc.wild[0].conj()?.extend(pt)?)?;
    let psi = omega((l + m - k - 2) / 2 - k0)?.mul(&root.extend(pt)?)?;
    Ok(Twists {
        f_prime: twist_or_deplete(&tc.f.form, &f_char)?,
        h_prime: twist_or_deplete(&tc.h.form, &psi)?,
        psi,
    })
}

/// The lifting polynomials and the nonvanishing certificates for `P_fgh`.
#[derive(Clone, Debug)]
pub struct LiftingPolynomials {
    pub p_f: FpPolynomial,
    pub p_g: FpPolynomial,
    pub p_h: FpPolynomial,
    pub p_fgh: FpPolynomial,
    pub at_one: LocalFieldElement,
    pub at_inverse_q: LocalFieldElement,
}

impl LiftingPolynomials {
    pub fn certified(&self) -> bool {
        !self.at_one.is_zero() && !self.at_inverse_q.is_zero()
    }
}

/// `P_ξ = 1 − μ^d p^{d(ν−1)}T` after checking `ord_p(μ) = (1−ν)/2`.
fn supercuspidal_poly(mu: &LocalFieldElement, nu: i64, d: usize, name: &str) -> Result<FpPolynomial> {
    let want = num_rational::Ratio::new(1 - nu, 2);
    let have = mu.valuation()?;
    if have != want {
        return Err(Error::Precondition(format!("ord_p(μ_{name}) = {have}, expected {want}")));
    }
    let p = LocalFieldElement::from_int(mu.field(), mu.field().p() as i64);
    let rho = &mu.pow_u(d as u64) * &p.pow_u(d as u64 * (nu - 1) as u64);
    Ok(FpPolynomial::linear(&rho))
}

/// `P_f = 1 − a_p^{−d}T`, `P_g`, `P_{h'}` and `P_fgh = P_f ⋆ (1 − p^{−dr}T) ⋆ P_g ⋆ P_{h'}`,
/// with `d` the unramified degree of the coefficient field.
pub fn build_polynomials(tc: &TripleConfig) -> Result<LiftingPolynomials> {
    let field = tc.field();
    let d = field.unram_degree();
    let [_, l, m] = tc.weights;
    let a = tc.f.a_p.as_ref().ok_or_else(|| Error::Precondition("a_p(f) is missing".into()))?;
    let p_f = FpPolynomial::linear(&a.pow(-(d as i64))?);
    let mu = |rec: &FormRecord, name: &str| {
        rec.mu
            .clone()
            .ok_or_else(|| Error::Precondition(format!("μ_{name} is missing")))
    };
    let p_g = supercuspidal_poly(&mu(&tc.g, "g")?, l, d, "g")?;
    let p_h = supercuspidal_poly(&mu(&tc.h, "h")?, m, d, "h")?;
    let p = LocalFieldElement::from_int(field, tc.p as i64);
    let twist = FpPolynomial::linear(&p.pow(-(d as i64) * tc.r())?);
    let p_fgh = p_f.star(&twist)?.star(&p_g)?.star(&p_h)?;
    let q = p.pow_u(d as u64);
    Ok(LiftingPolynomials {
        at_one: p_fgh.eval(&LocalFieldElement::one(field)),
        at_inverse_q: p_fgh.eval(&q.inv()?),
        p_f,
        p_g,
        p_h,
        p_fgh,
    })
}

/// Which leg of the product carries the derivative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductForm {
    /// `d^{(k−l−m)/2}g × h'`.
    #[default]
    MainText,
    /// `g × d^{(k−l−m)/2}h'`.
    Intro,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PeriodOptions {
    pub form: ProductForm,
    pub allow_inconvenient: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub label: String,
    pub valuation: String,
    pub abs_exponent: String,
    pub n_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialData {
    pub p_f: Vec<String>,
    pub p_g: Vec<String>,
    pub p_h: Vec<String>,
    pub p_fgh: Vec<String>,
    pub at_one: String,
    pub at_inverse_q: String,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub p: u64,
    pub weights: [i64; 3],
    pub r: i64,
    pub derivative_exponent: i64,
    pub form: ProductForm,
    pub constant: String,
    /// The symbolic cusp computation reproduces `constant`.
    pub constant_agrees: bool,
    pub a1: String,
    pub period: String,
    /// Absolute precision of `period` in powers of the uniformizer.
    pub period_precision: i64,
    pub verdict: Option<Verdict>,
    pub audit: Vec<AuditRow>,
    pub polynomials: Option<PolynomialData>,
    pub warnings: Vec<String>,
    /// `e_ord` of the traced product, `a_0 … a_B` with B the Sturm bound.
    pub xi_ord: Vec<String>,
}

impl PeriodReport {
    /// Every certificate held without an override.
    pub fn fully_certified(&self) -> bool {
        self.verdict == Some(Verdict::Convenient)
            && self.polynomials.as_ref().is_some_and(|p| p.certified)
            && self.constant_agrees
            && self.warnings.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let [k, l, m] = self.weights;
        s.push_str(&format!("triple        ({k}, {l}, {m}) at p = {}\n", self.p));
        s.push_str(&format!("r             {}\n", self.r));
        s.push_str(&format!("product       {:?}, d^{}\n", self.form, self.derivative_exponent));
        s.push_str(&format!("constant      {} (symbolic check {})\n", self.constant, ok(self.constant_agrees)));
        s.push_str(&format!("a1            {}\n", self.a1));
        s.push_str(&format!("I_p           {} (precision π^{})\n", self.period, self.period_precision));
        match self.verdict {
            Some(v) => s.push_str(&format!("convenience   {v:?}\n")),
            None => s.push_str("convenience   not certified\n"),
        }
        if !self.audit.is_empty() {
            s.push_str("audit         label  ord_p  |.|-exp  N=0\n");
            for row in &self.audit {
                s.push_str(&format!(
                    "              {:<6} {:<6} {:<8} {}\n",
                    row.label, row.valuation, row.abs_exponent, row.n_zero
                ));
            }
        }
        if let Some(pd) = &self.polynomials {
            s.push_str(&format!("P_fgh(1)      {}\n", pd.at_one));
            s.push_str(&format!("P_fgh(1/q)    {}\n", pd.at_inverse_q));
            s.push_str(&format!("nonvanishing  {}\n", ok(pd.certified)));
        }
        for w in &self.warnings {
            s.push_str(&format!("warning       {w}\n"));
        }
        s
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn f_leg(tc: &TripleConfig, a_p: &LocalFieldElement) -> FLeg {
    match tc.reduction {
        Reduction::Good => FLeg::Crystalline {
            weight: tc.weights[0],
            a_p: a_p.clone(),
            chi_p: tc.tame[0].value(tc.p as i64),
        },
        Reduction::Multiplicative => FLeg::Semistable { a_p: a_p.clone() },
    }
}

fn convenience(tc: &TripleConfig) -> Result<Option<(Verdict, Vec<AuditRow>)>> {
    let (Some(mu_g), Some(mu_h), Some(a_p)) = (&tc.g.mu, &tc.h.mu, &tc.f.a_p) else {
        return Ok(None);
    };
    let field = tc.field();
    let g = SupercuspidalLeg {
        weight: tc.weights[1],
        mu: mu_g.clone(),
    };
    let h = SupercuspidalLeg {
        weight: tc.weights[2],
        mu: mu_h.clone(),
    };
    let module = build_dfgh(field, field.unram_degree(), &f_leg(tc, a_p), &g, &h)?;
    let report = convenient_check(&module, &FpPolynomial::linear(&LocalFieldElement::one(field)))?;
    let rows = report
        .audit
        .entries
        .iter()
        .map(|e| AuditRow {
            label: e.label.clone(),
            valuation: e.valuation.to_string(),
            abs_exponent: e.abs_exponent.to_string(),
            n_zero: e.n_zero,
        })
        .collect();
    Ok(Some((report.verdict, rows)))
}

/// Evaluates `I_p(f,g,h)` through the explicit formula on the basis `b` of the
/// level-`M₁p^t` space containing the traced product.
pub fn compute_period(tc: &TripleConfig, b: &FormSpaceBasis, degeneracy: &[DegeneracyData], opts: PeriodOptions) -> Result<PeriodReport> {
    ensure_valid(tc).map_err(Error::at("validate"))?;
    let twists = build_twists(tc).map_err(Error::at("twists"))?;
    let g = &tc.g.form;
    let h = &twists.h_prime;
    for (name, xi) in [("g", g), ("h'", h)] {
        if let Some(n) = xi.first_undepleted_index() {
            return Err(Error::at("depletion")(Error::Precondition(format!("{name} is not p-depleted at index {n}"))));
        }
    }
    let mut warnings = Vec::new();

    let polynomials = if tc.g.mu.is_some() && tc.h.mu.is_some() {
        let lp = build_polynomials(tc).map_err(Error::at("polynomials"))?;
        if !lp.certified() {
            return Err(Error::at("polynomials")(Error::Precondition("P_fgh vanishes at 1 or at 1/q".into())));
        }
        Some(PolynomialData {
            p_f: lp.p_f.to_literals(),
            p_g: lp.p_g.to_literals(),
            p_h: lp.p_h.to_literals(),
            p_fgh: lp.p_fgh.to_literals(),
            at_one: lp.at_one.to_literal(),
            at_inverse_q: lp.at_inverse_q.to_literal(),
            certified: lp.certified(),
        })
    } else {
        None
    };

    let conv = convenience(tc).map_err(Error::at("convenience"))?;
    let (verdict, audit) = match conv {
        Some((v, rows)) => (Some(v), rows),
        None => (None, Vec::new()),
    };
    if verdict != Some(Verdict::Convenient) {
        let what = match verdict {
            Some(v) => format!("convenience verdict {v:?}"),
            None => "convenience not certified (μ_g, μ_h or a_p missing)".to_string(),
        };
        if !opts.allow_inconvenient {
            return Err(Error::at("convenience")(Error::Precondition(what)));
        }
        warnings.push(format!("{what}; continuing by override"));
    }

    let t = tc.derivative_exponent();
    let product = match opts.form {
        ProductForm::MainText => g.serre_d(t)?.multiply(h),
        ProductForm::Intro => g.multiply(&h.serre_d(t)?),
    }
    .map_err(Error::at("product"))?;
    let pt = tc.p_power_t();
    let traced = trace_level(&product, tc.level * pt, tc.level_f * pt, degeneracy).map_err(Error::at("trace"))?;

    let a_p = tc.f.a_p.clone().expect("validated");
    let mut rec = EigenformRecord::new(tc.f.form.clone(), a_p, tc.f.hecke.clone());
    rec.lambda_m1 = tc.f.lambda_m1.clone();
    rec.level_m1 = tc.level_f;
    rec.s = tc.s;
    let a1 = isotypic_a1(&traced, &rec, b).map_err(Error::at("projection"))?;
    let xi_ord = b.e_ord(&traced).map_err(Error::at("projection"))?;

    let [k, l, m] = tc.weights;
    let constant = expected_constant(k, l, m);
    let constant_agrees = symbolic_constant(tc.weights).map_err(Error::at("constant"))? == constant;
    let c = LocalFieldElement::from_ratio(tc.field(), &constant)?;
    let period = &c * &a1;
    let upto = b.sturm_bound().min(xi_ord.q_precision());
    Ok(PeriodReport {
        p: tc.p,
        weights: tc.weights,
        r: tc.r(),
        derivative_exponent: t,
        form: opts.form,
        constant: constant.to_string(),
        constant_agrees,
        a1: a1.to_literal(),
        period: period.to_literal(),
        period_precision: period.precision(),
        verdict,
        audit,
        polynomials,
        warnings,
        xi_ord: (0..=upto).map(|n| xi_ord.a(n).to_literal()).collect(),
    })
}

/// `lcm` of the levels of the three forms, for level-consistency checks.
pub fn common_level(tc: &TripleConfig) -> u64 {
    tc.f.form.level.lcm(&tc.g.form.level).lcm(&tc.h.form.level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::EisensteinPoly;

    fn ramified() -> LocalField {
        LocalField::new(5, 1, Some(EisensteinPoly::from_integers(&[-5, 0])), 20).unwrap()
    }

    #[test]
    fn planted_period_is_recovered() {
        let k = ramified();
        let u = LocalFieldElement::from_int(&k, 7);
        let pt = planted_triple(&k, &u, 100, 11).unwrap();
        assert!(pt.config.validate().is_empty(), "{:?}", pt.config.validate());
        let rep = compute_period(&pt.config, &pt.basis, &[], PeriodOptions::default()).unwrap();
        assert_eq!(rep.verdict, Some(Verdict::Convenient));
        assert!(rep.fully_certified(), "{}", rep.to_text());
        let got = LocalFieldElement::parse(&k, &rep.period).unwrap();
        assert!(got.eq_at_precision(&u), "{}", rep.period);
        assert!(rep.period_precision >= 2 * 20 - 4, "{}", rep.period_precision);
    }

    #[test]
    fn intro_form_differs_by_the_sign_of_d() {
        // g × d^{−1}h' + d^{−1}g × h' = d(d^{−1}g · d^{−1}h'), which e_ord kills
        let k = ramified();
        let u = LocalFieldElement::from_int(&k, -3);
        let pt = planted_triple(&k, &u, 100, 5).unwrap();
        let opts = PeriodOptions {
            form: ProductForm::Intro,
            allow_inconvenient: false,
        };
        let main = compute_period(&pt.config, &pt.basis, &[], PeriodOptions::default()).unwrap();
        let intro = compute_period(&pt.config, &pt.basis, &[], opts).unwrap();
        let got = |r: &PeriodReport| LocalFieldElement::parse(&k, &r.period).unwrap();
        assert!(got(&main).eq_at_precision(&u));
        assert!(got(&intro).eq_at_precision(&-&u));
        assert_eq!(intro.form, ProductForm::Intro);
        assert_eq!(intro.constant, main.constant);
    }

    #[test]
    fn validation_catches_each_clause() {
        let k = ramified();
        let pt = planted_triple(&k, &LocalFieldElement::one(&k), 100, 1).unwrap();
        let mut tc = pt.config.clone();
        tc.weights = [2, 2, 6];
        let clauses: Vec<String> = tc.validate().into_iter().map(|v| v.clause).collect();
        assert!(clauses.contains(&"balanced".to_string()));

        let mut tc = pt.config.clone();
        tc.teichmuller = [1, 0, 0];
        assert!(tc.validate().iter().any(|v| v.clause == "self-duality"));

        let mut tc = pt.config.clone();
        tc.f.a_p = Some(LocalFieldElement::from_int(&k, 5));
        assert!(tc.validate().iter().any(|v| v.clause == "f-ord"));

        let mut tc = pt.config.clone();
        tc.s = 3;
        assert!(tc.validate().iter().any(|v| v.clause == "levels"));
    }

    #[test]
    fn nontrivial_tame_product_is_rejected() {
        let k = LocalField::qp(5, 10).unwrap();
        let pt = planted_triple(&k, &LocalFieldElement::one(&k), 100, 1).unwrap();
        let mut tc = pt.config.clone();
        let minus = DirichletCharacter::from_generator_values(&k, 4, vec![LocalFieldElement::from_int(&k, -1)]).unwrap();
        tc.level = 4;
        tc.tame[0] = minus;
        assert!(tc.validate().iter().any(|v| v.clause == "self-duality"));
    }

    #[test]
    fn trivial_twists_deplete() {
        let k = ramified();
        let pt = planted_triple(&k, &LocalFieldElement::one(&k), 100, 2).unwrap();
        let tw = build_twists(&pt.config).unwrap();
        assert!(tw.f_prime.eq_at_precision(&pt.config.f.form.deplete().unwrap()));
        assert!(tw.h_prime.eq_at_precision(&pt.config.h.form));
        assert!(tw.psi.is_trivial());
        let mut tc = pt.config.clone();
        tc.sqrt = None;
        assert!(build_twists(&tc).is_err());
    }

    #[test]
    fn nontrivial_psi_twists_h() {
        // p = 5, t = 1: ψ = ω^{(l+m−k−2)/2 − k₀} with (k,l,m) = (2,4,4), k₀ = 0 gives ω²
        let k = LocalField::qp(5, 10).unwrap();
        let pt = planted_triple(&k, &LocalFieldElement::one(&k), 100, 3).unwrap();
        let mut tc = pt.config.clone();
        tc.weights = [2, 4, 4];
        tc.g.form.weight = 4;
        tc.h.form.weight = 4;
        tc.h.form = QExpansion::from_ints(&k, &[0, 1, 1, 1, 1, 1, 1, 1], 4, 5);
        let tw = build_twists(&tc).unwrap();
        let omega2 = DirichletCharacter::teichmuller_power(&k, 2).unwrap();
        assert!(tw.psi.agrees_with(&omega2));
        assert!(tw.h_prime.is_depleted());
        for n in 1..8 {
            assert!(tw.h_prime.a(n).eq_at_precision(&omega2.value(n as i64)));
        }
        // character of h' is that of h times ψ²
        let want = tc.h.form.character.mul(&omega2.pow(2).unwrap()).unwrap();
        assert!(tw.h_prime.character.agrees_with(&want));
    }

    #[test]
    fn lifting_polynomials() {
        let k = ramified();
        let pt = planted_triple(&k, &LocalFieldElement::one(&k), 100, 4).unwrap();
        let lp = build_polynomials(&pt.config).unwrap();
        // root of P_f is a_p
        let a = pt.config.f.a_p.clone().unwrap();
        assert!(lp.p_f.eval(&a).is_zero());
        // P_g = 1 − μ p T with ord_p(μp) = 1/2
        assert_eq!(lp.p_g.coeff(1).valuation().unwrap(), num_rational::Ratio::new(1, 2));
        assert!(lp.certified());
        assert_eq!(lp.p_fgh.degree(), 1);

        let mut tc = pt.config.clone();
        tc.g.mu = Some(LocalFieldElement::one(&k));
        assert!(build_polynomials(&tc).is_err());
    }

    #[test]
    fn undepleted_g_is_rejected() {
        let k = ramified();
        let pt = planted_triple(&k, &LocalFieldElement::one(&k), 100, 6).unwrap();
        let mut tc = pt.config.clone();
        tc.g.form.set(5, LocalFieldElement::one(&k));
        let err = compute_period(&tc, &pt.basis, &[], PeriodOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Stage { stage: "depletion", .. }), "{err}");
    }

    #[test]
    fn report_round_trips() {
        let k = ramified();
        let pt = planted_triple(&k, &LocalFieldElement::from_int(&k, 2), 100, 8).unwrap();
        let rep = compute_period(&pt.config, &pt.basis, &[], PeriodOptions::default()).unwrap();
        let back = PeriodReport::from_json(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        assert!(PeriodReport::from_json("{\"p\": 5,").is_err());
    }
}
