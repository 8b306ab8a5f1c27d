use super::complex::{StComplex, StCochain, Variant};
use super::module::{Filtration, PhiNModuleData};
use crate::error::{Error, Result};
use crate::linalg::PMatrix;
use crate::localfield::{FpPolynomial, LocalField, LocalFieldElement};

/// Rank-2 module with `φ(e₁) = χ(p)p^{k−1}a_p^{−1}e₁`, `φ(e₂) = a_p e₂`,
/// `N = 0` and `Fil¹ = L(x e₁ + y e₂)`.
pub fn crystalline_f_module(
    field: &LocalField,
    k: i64,
    a_p: &LocalFieldElement,
    chi_p: &LocalFieldElement,
    x: &LocalFieldElement,
    y: &LocalFieldElement,
) -> Result<PhiNModuleData> {
    let p = LocalFieldElement::from_int(field, field.p() as i64);
    let e1 = &(chi_p * &p.pow_u((k - 1) as u64)) * &a_p.inv()?;
    let phi = PMatrix::diagonal(field, &[e1, a_p.clone()]);
    let line = PMatrix::from_columns(field, 2, &[vec![x.clone(), y.clone()]])?;
    let fil = Filtration::new(2, vec![(0, PMatrix::identity(field, 2)), (k - 1, line)])?;
    PhiNModuleData::constant(field, 1, 1, &phi, &PMatrix::zeros(field, 2, 2), fil)
}

/// Weight-2 semistable module: `φ(e₁) = p·a_p e₁`, `φ(e₂) = a_p e₂`,
/// `N e₁ = e₂`, `Fil¹ = L(e₁ − 𝔏 e₂)`.
pub fn semistable_f_module(field: &LocalField, a_p: &LocalFieldElement, l_invariant: &LocalFieldElement) -> Result<PhiNModuleData> {
    let p = LocalFieldElement::from_int(field, field.p() as i64);
    let phi = PMatrix::diagonal(field, &[&p * a_p, a_p.clone()]);
    let mut n = PMatrix::zeros(field, 2, 2);
    n.set(1, 0, LocalFieldElement::one(field));
    let line = PMatrix::from_columns(field, 2, &[vec![LocalFieldElement::one(field), -l_invariant]])?;
    let fil = Filtration::new(2, vec![(0, PMatrix::identity(field, 2)), (1, line)])?;
    PhiNModuleData::constant(field, 1, 1, &phi, &n, fil)
}

#[derive(Clone, Debug)]
pub struct UnitRootSplitting {
    pub eigenline: Vec<LocalFieldElement>,
    pub fil1: Vec<LocalFieldElement>,
    /// `det[eigenline | Fil¹ generator]`; nonzero certifies transversality.
    pub certificate: LocalFieldElement,
}

/// `D = Fil¹ ⊕ D^{φ=a_p}` for the rank-2 module of an ordinary form.
pub fn unit_root_splitting(module: &PhiNModuleData, a_p: &LocalFieldElement) -> Result<UnitRootSplitting> {
    if module.rank() != 2 || module.d() != 1 || module.e() != 1 {
        return Err(Error::Splitting("expected a rank-2 module over Q_p".into()));
    }
    let field = module.field();
    let phi = module.phi_linear();
    let shifted = phi.sub(&PMatrix::identity(field, 2).scale(a_p))?;
    let ker = shifted.kernel();
    if ker.cols() != 1 {
        return Err(Error::Splitting(format!("the a_p-eigenspace has dimension {}", ker.cols())));
    }
    let fil1 = module.filtration().fil(1);
    if fil1.cols() != 1 {
        return Err(Error::Splitting(format!("Fil¹ has dimension {}", fil1.cols())));
    }
    let eigenline = ker.col(0);
    let line = fil1.col(0);
    let certificate = ker.hstack(&fil1)?.determinant()?;
    if certificate.is_zero() {
        return Err(Error::Splitting("Fil¹ meets the unit-root line".into()));
    }
    Ok(UnitRootSplitting {
        eigenline,
        fil1: line,
        certificate,
    })
}

/// `y − ι(P(φ)^{−1}w)` on a degree-1 representative for a rank-one unit
/// twist (`P(1/q)` for `Q_p(1)` in the linearized variant), as coordinates of
/// `D_dR`. Defined when `P(φ)` and `P(pφ)` (or `P(qΦ)`) are bijective.
pub fn trace_eval(module: &PhiNModuleData, c: &StCochain, poly: &FpPolynomial, variant: Variant) -> Result<Vec<LocalFieldElement>> {
    if module.rank() != 1 {
        return Err(Error::TraceUndefined("trace evaluation needs a rank-one module".into()));
    }
    let complex = StComplex::new(module, poly, variant)?;
    let p_phi = complex.frobenius().eval_poly(poly.as_poly())?;
    let p_qphi = complex.frobenius().scale(complex.scale()).eval_poly(poly.as_poly())?;
    for (name, m) in [("P(φ)", &p_phi), ("P(pφ)", &p_qphi)] {
        if m.determinant()?.is_zero() {
            return Err(Error::TraceUndefined(format!("{name} is not invertible")));
        }
    }
    let StCochain::One { w, y, .. } = c else {
        return Err(Error::Dimension("trace evaluation takes degree-1 cochains".into()));
    };
    let t = complex.iota().mul_vec(&p_phi.inverse()?.mul_vec(w)?)?;
    Ok(y.iter().zip(&t).map(|(a, b)| a - b).collect())
}
