use serde::Serialize;

use super::complex::{Cohomology, StComplex, Variant};
use super::module::PhiNModuleData;
use crate::error::Result;
use crate::linalg::PMatrix;
use crate::localfield::{FpPolynomial, LocalFieldElement};

/// Maps induced by `c_{P₂}: C_{P₁} → C_{P₁P₂}` and the dimension bookkeeping of
/// the sequence `D^{P₂(φ)=0, N=0} → Ker(H¹_{P₁} → H¹_{P₁P₂}) → 0`.
#[derive(Clone, Debug)]
pub struct ChangeOfPolynomial {
    pub source: StComplex,
    pub target: StComplex,
    pub source_cohomology: Cohomology,
    pub target_cohomology: Cohomology,
    /// Matrix of `H¹_{P₁} → H¹_{P₁P₂}` in the representative bases.
    pub h1_map: PMatrix,
    /// Matrix of `H⁰_{P₁} → H⁰_{P₁P₂}`.
    pub h0_map: PMatrix,
    pub report: ExactnessReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub dim_h0_p2: usize,
    pub dim_h0_p1: usize,
    pub dim_h0_p1p2: usize,
    /// `dim D^{P₂(φ)=0, N=0}`.
    pub dim_kernel_space: usize,
    /// `dim Ker(H¹_{P₁} → H¹_{P₁P₂})`.
    pub dim_h1_kernel: usize,
    /// Rank of `w ↦ [(w,0,0)]` into `H¹_{P₁}`.
    pub rank_w_map: usize,
    /// Every `[(w,0,0)]` dies in `H¹_{P₁P₂}`.
    pub image_in_kernel: bool,
    /// `w ↦ [(w,0,0)]` is onto the kernel.
    pub onto_kernel: bool,
    /// `dim D^{P₂=0,N=0} = dim(H⁰_{P₁P₂}/H⁰_{P₁}) + dim Ker`.
    pub dimension_count: bool,
    /// The same count with `H⁰_{P₂}` on the left, as in the displayed sequence.
    pub dimension_count_with_h0_p2: bool,
}

fn matrix_from_cols(field: &crate::localfield::LocalField, rows: usize, cols: Vec<Vec<LocalFieldElement>>) -> Result<PMatrix> {
    PMatrix::from_columns(field, rows, &cols)
}

/// Cochain map `(id ⊕ id, P₂(φ) ⊕ id ⊕ id, P₂(pφ))` on cohomology plus the
/// exactness report.
pub fn change_poly(module: &PhiNModuleData, p1: &FpPolynomial, p2: &FpPolynomial, variant: Variant) -> Result<ChangeOfPolynomial> {
    let field = module.field().clone();
    let p12 = p1.mul(p2);
    let source = StComplex::new(module, p1, variant)?;
    let target = StComplex::new(module, &p12, variant)?;
    let only_p2 = StComplex::new(module, p2, variant)?;
    let hs = source.cohomology()?;
    let ht = target.cohomology()?;
    let h2 = only_p2.cohomology()?;
    let a = source.st_dim();
    let b = source.dr_dim();

    let p2_phi = source.frobenius().eval_poly(p2.as_poly())?;
    let c1 = PMatrix::block_diag(&field, &[p2_phi.clone(), PMatrix::identity(&field, a), PMatrix::identity(&field, b)]);

    // H⁰: the identity on C⁰, so a class maps to its own coordinates
    let h0_map = if hs.h0.cols() == 0 || ht.h0.cols() == 0 {
        PMatrix::zeros(&field, ht.h0.cols(), hs.h0.cols())
    } else {
        ht.h0.solve_matrix(&hs.h0)?
    };

    let mut cols = Vec::new();
    for j in 0..hs.h1.cols() {
        let img = c1.mul_vec(&hs.h1.col(j))?;
        let c = target.from_vector(1, &img)?;
        cols.push(target.h1_coordinates(&ht, &c)?);
    }
    let h1_map = matrix_from_cols(&field, ht.h1.cols(), cols)?;
    let dim_h1_kernel = hs.h1.cols() - if hs.h1.cols() == 0 { 0 } else { h1_map.rank() };

    // D^{P₂(φ)=0, N=0}
    let stacked = p2_phi.vstack(source.monodromy())?;
    let kspace = stacked.kernel();
    let zero_a = vec![LocalFieldElement::zero(&field); a];
    let zero_b = vec![LocalFieldElement::zero(&field); b];
    let mut w_cols = Vec::new();
    let mut image_in_kernel = true;
    for j in 0..kspace.cols() {
        let w = kspace.col(j);
        let c = source.from_vector(1, &[w.clone(), zero_a.clone(), zero_b.clone()].concat())?;
        w_cols.push(source.h1_coordinates(&hs, &c)?);
        let img = c1.mul_vec(&source.to_vector(&c)?)?;
        if !target.is_coboundary(&target.from_vector(1, &img)?)? {
            image_in_kernel = false;
        }
    }
    let rank_w_map = if w_cols.is_empty() || hs.h1.cols() == 0 {
        0
    } else {
        matrix_from_cols(&field, hs.h1.cols(), w_cols)?.rank()
    };
    let onto_kernel = rank_w_map == dim_h1_kernel;
    let dim_h0_p1 = hs.h0.cols();
    let dim_h0_p1p2 = ht.h0.cols();
    let dim_kernel_space = kspace.cols();
    let injective_part = kspace.cols() - rank_w_map;
    let dimension_count =
        dim_h0_p1p2 >= dim_h0_p1 && dim_kernel_space == (dim_h0_p1p2 - dim_h0_p1) + dim_h1_kernel && injective_part == dim_h0_p1p2 - dim_h0_p1;
    let dimension_count_with_h0_p2 = dim_kernel_space == h2.h0.cols() + dim_h1_kernel;
    Ok(ChangeOfPolynomial {
        source,
        target,
        source_cohomology: hs,
        target_cohomology: ht,
        h1_map,
        h0_map,
        report: ExactnessReport {
            dim_h0_p2: h2.h0.cols(),
            dim_h0_p1,
            dim_h0_p1p2,
            dim_kernel_space,
            dim_h1_kernel,
            rank_w_map,
            image_in_kernel,
            onto_kernel,
            dimension_count,
            dimension_count_with_h0_p2,
        },
    })
}
