//! Ordinary and isotypic projection on finite spaces of q-expansions.

mod basis;
mod eigen;
mod trace;

pub use basis::FormSpaceBasis;
pub use eigen::{isotypic_a1, isotypic_projector, EigenformRecord};
pub use trace::{trace_level, DegeneracyData};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use num_rational::Ratio;

    use super::*;
    use crate::error::Error;
    use crate::linalg::{slope_factorization, PMatrix};
    use crate::localfield::{LocalField, LocalFieldElement, Poly};
    use crate::qexp::QExpansion;

    /// `q^shift ∏_n ∏_(m,e) (1 − q^{mn})^e` up to `q^n`.
    fn eta_product(factors: &[(usize, i64)], shift: usize, n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n + 1];
        c[shift] = 1;
        for &(m, e) in factors {
            for _ in 0..e {
                let mut k = m;
                while k <= n {
                    for i in (k..=n).rev() {
                        c[i] -= c[i - k];
                    }
                    k += m;
                }
            }
        }
        c
    }

    fn f11(k: &LocalField, n: usize) -> QExpansion {
        QExpansion::from_ints(k, &eta_product(&[(1, 2), (11, 2)], 1, n), 2, 11)
    }

    #[test]
    fn eta_product_matches_known_coefficients() {
        let c = eta_product(&[(1, 2), (11, 2)], 1, 11);
        assert_eq!(c, vec![0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1]);
    }

    #[test]
    fn split_multiplicative_form_is_its_own_up_basis() {
        let k = LocalField::qp(11, 20).unwrap();
        let b = FormSpaceBasis::new(vec![f11(&k, 40)], 2).unwrap();
        let a = b.up_matrix().unwrap();
        assert!(a.eq_at_precision(&PMatrix::from_int_rows(&k, &[vec![1]]).unwrap()));
    }

    fn stabilization(k: &LocalField) -> (FormSpaceBasis, LocalFieldElement) {
        let f = f11(k, 80);
        let b = FormSpaceBasis::new(vec![f.clone(), f.v_p()], 12).unwrap();
        let (below, _) = slope_factorization(&Poly::from_ints(k, &[5, -1, 1]), Ratio::new(1, 2)).unwrap();
        let alpha = -&below.coeff(0);
        (b, alpha)
    }

    #[test]
    fn stabilized_up_matrix() {
        let k = LocalField::qp(5, 20).unwrap();
        let (b, _) = stabilization(&k);
        let a = b.up_matrix().unwrap();
        assert!(a.eq_at_precision(&PMatrix::from_int_rows(&k, &[vec![1, 1], vec![-5, 0]]).unwrap()));
    }

    #[test]
    fn permuted_basis_has_same_char_poly() {
        let k = LocalField::qp(5, 20).unwrap();
        let f = f11(&k, 80);
        let b1 = FormSpaceBasis::new(vec![f.clone(), f.v_p()], 12).unwrap();
        let b2 = FormSpaceBasis::new(vec![f.v_p(), f], 12).unwrap();
        let c1 = b1.up_matrix().unwrap().char_poly().unwrap();
        let c2 = b2.up_matrix().unwrap().char_poly().unwrap();
        assert!(c1.eq_at_precision(&c2));
    }

    #[test]
    fn ordinary_projection_of_stabilizations() {
        let k = LocalField::qp(5, 20).unwrap();
        let (b, alpha) = stabilization(&k);
        let beta = LocalFieldElement::from_int(&k, 5).div(&alpha).unwrap();
        let f = &b.forms()[0];
        let vf = &b.forms()[1];
        let f_alpha = f.sub(&vf.scale(&beta)).unwrap();
        let f_beta = f.sub(&vf.scale(&alpha)).unwrap();
        let xi = f_alpha.add(&f_beta).unwrap();
        let e = b.e_ord(&xi).unwrap();
        assert!(e.eq_at_precision(&f_alpha));
        let it = b.e_ord_by_iteration(&xi, 8).unwrap();
        assert!(it.congruent_mod_p(&f_alpha, 8));
        assert!(b.e_ord(&f_beta).unwrap().is_zero());
        // idempotent and commuting with U_p
        assert!(b.e_ord(&e).unwrap().eq_at_precision(&e));
        let up_then = b.e_ord(&xi.u_p().unwrap()).unwrap();
        assert!(up_then.eq_at_precision(&e.u_p().unwrap()));
    }

    #[test]
    fn isotypic_functional() {
        let k = LocalField::qp(5, 20).unwrap();
        let (b, alpha) = stabilization(&k);
        let beta = LocalFieldElement::from_int(&k, 5).div(&alpha).unwrap();
        let f = &b.forms()[0];
        let vf = &b.forms()[1];
        let f_alpha = f.sub(&vf.scale(&beta)).unwrap();
        let f_beta = f.sub(&vf.scale(&alpha)).unwrap();
        let mut hecke = BTreeMap::new();
        hecke.insert(2, LocalFieldElement::from_int(&k, -2));
        let rec = EigenformRecord::new(f_alpha.clone(), alpha.clone(), hecke);
        rec.validate().unwrap();
        let one = isotypic_a1(&f_alpha, &rec, &b).unwrap();
        assert!(one.eq_at_precision(&LocalFieldElement::one(&k)));
        assert!(isotypic_a1(&f_beta, &rec, &b).unwrap().is_zero());
        let three = LocalFieldElement::from_int(&k, 3);
        let xi = f_alpha.scale(&three).add(&f_beta).unwrap();
        assert!(isotypic_a1(&xi, &rec, &b).unwrap().eq_at_precision(&three));
        let t2 = xi.hecke_t_ell(2).unwrap();
        let lhs = isotypic_a1(&t2, &rec, &b).unwrap();
        assert!(lhs.eq_at_precision(&(&three * &LocalFieldElement::from_int(&k, -2))));
    }

    #[test]
    fn wrong_eigenvalue_is_reported() {
        let k = LocalField::qp(5, 20).unwrap();
        let (b, alpha) = stabilization(&k);
        let mut hecke = BTreeMap::new();
        hecke.insert(2, LocalFieldElement::from_int(&k, 3));
        let rec = EigenformRecord::new(b.forms()[0].clone(), alpha, hecke);
        assert!(matches!(rec.validate(), Err(Error::Eigensystem(_))));
        assert!(isotypic_projector(&rec, &b).is_err());
    }

    #[test]
    fn trace_level_contract() {
        let k = LocalField::qp(5, 20).unwrap();
        let f = f11(&k, 30);
        let same = trace_level(&f, 55, 55, &[]).unwrap();
        assert!(same.eq_at_precision(&f));
        assert!(matches!(
            trace_level(&f, 55, 11, &[]),
            Err(Error::MissingDegeneracy { from: 55, to: 11 })
        ));
    }

    #[test]
    fn up_needs_enough_coefficients() {
        let k = LocalField::qp(5, 20).unwrap();
        let f = f11(&k, 20);
        let b = FormSpaceBasis::new(vec![f.clone(), f.v_p()], 12).unwrap();
        assert!(matches!(b.up_matrix(), Err(Error::QPrecision { .. })));
    }
}
