use std::collections::BTreeMap;

use super::basis::FormSpaceBasis;
use crate::error::{Error, Result};
use crate::linalg::{unit_root_projector, PMatrix};
use crate::localfield::{LocalFieldElement, Poly};
use crate::qexp::QExpansion;

/// An ordinary eigenform with its Hecke data.
#[derive(Clone, Debug)]
pub struct EigenformRecord {
    pub form: QExpansion,
    pub a_p: LocalFieldElement,
    /// `ℓ ↦ a_ℓ` for good primes used to separate eigensystems.
    pub hecke: BTreeMap<u64, LocalFieldElement>,
    pub lambda_m1: Option<LocalFieldElement>,
    pub level_m1: u64,
    pub s: u32,
}

impl EigenformRecord {
    pub fn new(form: QExpansion, a_p: LocalFieldElement, hecke: BTreeMap<u64, LocalFieldElement>) -> Self {
        let level_m1 = form.level;
        EigenformRecord {
            form,
            a_p,
            hecke,
            lambda_m1: None,
            level_m1,
            s: 1,
        }
    }

    /// p-ordinarity plus `T_ℓ f = a_ℓ f` for every supplied ℓ.
    pub fn validate(&self) -> Result<()> {
        if !self.a_p.is_unit() {
            return Err(Error::Precondition(format!("a_p = {} is not a p-adic unit", self.a_p)));
        }
        for (&ell, a) in &self.hecke {
            let t = self.form.hecke_t_ell(ell)?;
            let expect = self.form.scale(a);
            if !t.eq_at_precision(&expect) {
                return Err(Error::Eigensystem(format!("T_{ell} f ≠ a_{ell} f")));
            }
        }
        Ok(())
    }
}

/// `h(x) = χ(x)/(x − a)^m` with `m` maximal, so that `h(a) ≠ 0`.
fn remove_root(chi: &Poly, a: &LocalFieldElement) -> Result<Poly> {
    let field = chi.field().clone();
    let lin = Poly::new(&field, vec![-a, LocalFieldElement::one(&field)]);
    let mut h = chi.clone();
    let mut removed = 0;
    loop {
        let (q, r) = h.div_rem(&lin)?;
        if !r.trimmed().is_zero() {
            break;
        }
        h = q;
        removed += 1;
        if h.degree().unwrap_or(0) == 0 {
            break;
        }
    }
    if removed == 0 {
        return Err(Error::Eigensystem(format!("{a} is not an eigenvalue")));
    }
    Ok(h)
}

/// Idempotent onto the f̆-eigenline of the ordinary part of `B`: the ordinary
/// projector times `h_T(T)/h_T(a_T)` for U_p and each supplied `T_ℓ`, where
/// `h_T` is the characteristic polynomial of `T` with the roots `a_T` removed.
pub fn isotypic_projector(f: &EigenformRecord, b: &FormSpaceBasis) -> Result<PMatrix> {
    let up = b.up_matrix()?;
    let mut e = unit_root_projector(&up)?;
    let mut ops = vec![(up, f.a_p.clone())];
    for (&ell, a) in &f.hecke {
        ops.push((b.hecke_matrix(ell)?, a.clone()));
    }
    for (t, a) in ops {
        let h = remove_root(&t.char_poly()?, &a)?;
        let scale = h.eval(&a).inv().map_err(|_| Error::Eigensystem("eigenvalue not separated".into()))?;
        e = e.mul(&t.eval_poly(&h)?.scale(&scale))?;
    }
    let rank = e.rank();
    if rank != 1 {
        return Err(Error::Eigensystem(format!(
            "the eigensystem has multiplicity {rank} in the ordinary part"
        )));
    }
    Ok(e)
}

/// `a_1` of the projection of `e_ord(ξ)` onto the f̆-isotypic line.
pub fn isotypic_a1(xi: &QExpansion, f: &EigenformRecord, b: &FormSpaceBasis) -> Result<LocalFieldElement> {
    let e = isotypic_projector(f, b)?;
    let c = b.coordinates(xi)?;
    let proj = b.expand(&e.mul_vec(&c)?)?;
    Ok(proj.a(1).clone())
}
