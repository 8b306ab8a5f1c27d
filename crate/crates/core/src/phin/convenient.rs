use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::complex::{StComplex, StCochain, Variant};
use super::module::PhiNModuleData;
use crate::error::{Error, Result};
use crate::linalg::{in_span, NewtonPolygon, PMatrix};
use crate::localfield::{FpPolynomial, LocalFieldElement};

/// Outcome of a bijectivity test at working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Convenient,
    NotConvenient,
    /// A determinant vanished to a precision too low to trust.
    Inconclusive,
    NotCrystalline,
}

/// One Φ-eigenvalue of the audit. `valuation` is `ord_p` of the φ-eigenvalue
/// (`ord_p(Φ-eigenvalue)/d`), and `abs_exponent = −valuation`, so that
/// `|λ|_p = p^{abs_exponent}`.
#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub component: usize,
    pub label: String,
    #[serde(serialize_with = "ser_opt_elem")]
    pub phi_eigenvalue: Option<LocalFieldElement>,
    #[serde(serialize_with = "ser_opt_elem")]
    pub big_phi_eigenvalue: Option<LocalFieldElement>,
    #[serde(serialize_with = "ser_ratio")]
    pub valuation: Ratio<i64>,
    #[serde(serialize_with = "ser_ratio")]
    pub abs_exponent: Ratio<i64>,
    /// Whether the basis vector is killed by N.
    pub n_zero: bool,
}

fn ser_opt_elem<S: serde::Serializer>(x: &Option<LocalFieldElement>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_literal()),
        None => s.serialize_none(),
    }
}

fn ser_ratio<S: serde::Serializer>(x: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueAudit {
    pub entries: Vec<AuditEntry>,
    /// `None` when undecided at precision.
    pub one_is_eigenvalue: Option<bool>,
    pub q_inverse_is_eigenvalue: Option<bool>,
    /// Every valuation differs from 0 and −1, which excludes both on its own.
    pub valuation_certificate: bool,
}

impl EigenvalueAudit {
    /// Distinct `|·|` exponents, ascending.
    pub fn exponents(&self) -> Vec<Ratio<i64>> {
        let mut v: Vec<Ratio<i64>> = self.entries.iter().map(|e| e.abs_exponent).collect();
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvenienceReport {
    pub verdict: Verdict,
    #[serde(serialize_with = "ser_opt_elem")]
    pub det_q_phi: Option<LocalFieldElement>,
    #[serde(serialize_with = "ser_opt_elem")]
    pub det_q_q_phi: Option<LocalFieldElement>,
    pub audit: EigenvalueAudit,
}

/// `Some(true)` for a certified unit-or-nonzero determinant, `Some(false)` when
/// it vanishes to at least half the precision cap, `None` otherwise.
fn nonzero_certified(det: &LocalFieldElement) -> Option<bool> {
    if !det.is_zero() {
        return Some(true);
    }
    if det.precision() * 2 >= det.field().cap_pi() {
        Some(false)
    } else {
        None
    }
}

fn is_diagonal(m: &PMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()))
}

/// Eigenvalue table of Φ on every component of `D_{st,F₀}`.
pub fn eigenvalue_audit(module: &PhiNModuleData) -> Result<EigenvalueAudit> {
    let field = module.field().clone();
    let d = module.d() as i64;
    let n = module.rank();
    let mut entries = Vec::new();
    let phi_diag = module.phi_components().iter().all(is_diagonal)
        && module.phi_components().windows(2).all(|w| w[0].eq_at_precision(&w[1]));
    for comp in 0..module.d() {
        let block = module.big_phi_block(comp)?;
        let ncomp = &module.n_components()[comp];
        let n_zero = |k: usize| (0..n).all(|i| ncomp.get(i, k).is_zero());
        if is_diagonal(&block) {
            for k in 0..n {
                let ev = block.get(k, k).clone();
                let v = ev.valuation()? / Ratio::from_integer(d);
                let phi_ev = phi_diag.then(|| module.phi_components()[0].get(k, k).clone());
                entries.push(AuditEntry {
                    component: comp,
                    label: module.labels()[k].clone(),
                    phi_eigenvalue: phi_ev,
                    big_phi_eigenvalue: Some(ev),
                    valuation: v,
                    abs_exponent: -v,
                    n_zero: n_zero(k),
                });
            }
        } else {
            let np = NewtonPolygon::of(&block.char_poly()?)?;
            for (k, v) in np.root_valuations().into_iter().enumerate() {
                let v = v / Ratio::from_integer(d);
                entries.push(AuditEntry {
                    component: comp,
                    label: format!("root{k}"),
                    phi_eigenvalue: None,
                    big_phi_eigenvalue: None,
                    valuation: v,
                    abs_exponent: -v,
                    n_zero: false,
                });
            }
        }
    }
    let big = module.big_phi()?;
    let id = PMatrix::identity(&field, big.rows());
    let q = LocalFieldElement::from_int(&field, field.p() as i64).pow_u(module.d() as u64);
    let one_det = id.sub(&big)?.determinant()?;
    let q_det = id.sub(&big.scale(&q))?.determinant()?;
    let one_is_eigenvalue = nonzero_certified(&one_det).map(|nz| !nz);
    let q_inverse_is_eigenvalue = nonzero_certified(&q_det).map(|nz| !nz);
    let zero = Ratio::from_integer(0);
    let minus_one = Ratio::from_integer(-1);
    let valuation_certificate = entries.iter().all(|e| e.valuation != zero && e.valuation != minus_one);
    Ok(EigenvalueAudit {
        entries,
        one_is_eigenvalue,
        q_inverse_is_eigenvalue,
        valuation_certificate,
    })
}

/// `(F, Q)`-convenience: F-crystalline, and `Q(Φ)`, `Q(qΦ)` bijective on `D_{st,F}`.
pub fn convenient_check(module: &PhiNModuleData, poly: &FpPolynomial) -> Result<ConvenienceReport> {
    let audit = eigenvalue_audit(module)?;
    if !module.is_crystalline() {
        return Ok(ConvenienceReport {
            verdict: Verdict::NotCrystalline,
            det_q_phi: None,
            det_q_q_phi: None,
            audit,
        });
    }
    let field = module.field();
    let big = module.big_phi_f()?;
    let q = LocalFieldElement::from_int(field, field.p() as i64).pow_u(module.d() as u64);
    let det1 = big.eval_poly(poly.as_poly())?.determinant()?;
    let det2 = big.scale(&q).eval_poly(poly.as_poly())?.determinant()?;
    let verdict = match (nonzero_certified(&det1), nonzero_certified(&det2)) {
        (Some(true), Some(true)) => Verdict::Convenient,
        (Some(false), _) | (_, Some(false)) => Verdict::NotConvenient,
        _ => Verdict::Inconclusive,
    };
    Ok(ConvenienceReport {
        verdict,
        det_q_phi: Some(det1),
        det_q_q_phi: Some(det2),
        audit,
    })
}

/// The isomorphism `D_dR/Fil⁰ → H̃¹` and its inverse
/// `[(w,x,y)] ↦ y − Q(Φ)^{−1}w mod Fil⁰`, for a convenient module.
pub struct FilQuotient {
    complex: StComplex,
    q_phi_inv: PMatrix,
    fil0: PMatrix,
}

impl FilQuotient {
    pub fn new(module: &PhiNModuleData, poly: &FpPolynomial) -> Result<Self> {
        let report = convenient_check(module, poly)?;
        if report.verdict != Verdict::Convenient {
            return Err(Error::Precondition(format!("module is not convenient: {:?}", report.verdict)));
        }
        let complex = StComplex::new(module, poly, Variant::Linearized)?;
        let q_phi_inv = complex.frobenius().eval_poly(poly.as_poly())?.inverse()?;
        let fil0 = module.fil0();
        Ok(FilQuotient {
            complex,
            q_phi_inv,
            fil0,
        })
    }

    pub fn complex(&self) -> &StComplex {
        &self.complex
    }

    /// `y ↦ [(0, 0, y)]`.
    pub fn forward(&self, y: &[LocalFieldElement]) -> StCochain {
        let zero = vec![LocalFieldElement::zero(self.complex.field()); self.complex.st_dim()];
        StCochain::One {
            w: zero.clone(),
            x: zero,
            y: y.to_vec(),
        }
    }

    /// `y − Q(Φ)^{−1}w`, a representative modulo `Fil⁰`.
    pub fn inverse(&self, c: &StCochain) -> Result<Vec<LocalFieldElement>> {
        let StCochain::One { w, y, .. } = c else {
            return Err(Error::Dimension("the quotient map takes degree-1 cochains".into()));
        };
        let t = self.q_phi_inv.mul_vec(w)?;
        Ok(y.iter().zip(&t).map(|(a, b)| a - b).collect())
    }

    /// Whether two de Rham vectors agree modulo `Fil⁰`.
    pub fn equal_mod_fil0(&self, a: &[LocalFieldElement], b: &[LocalFieldElement]) -> bool {
        let diff: Vec<LocalFieldElement> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        in_span(&self.fil0, &diff)
    }

    /// `dim D_dR − dim Fil⁰`.
    pub fn quotient_dim(&self) -> usize {
        self.complex.dr_dim() - self.fil0.cols()
    }
}
