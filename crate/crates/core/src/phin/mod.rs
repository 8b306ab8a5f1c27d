//! Filtered (φ, N)-modules and finite-polynomial cohomology.

mod change;
mod complex;
mod convenient;
mod cup;
mod dfgh;
mod module;
mod splitting;

pub use change::{change_poly, ChangeOfPolynomial, ExactnessReport};
pub use complex::{Cohomology, StCochain, StComplex, Variant};
pub use convenient::{convenient_check, eigenvalue_audit, AuditEntry, ConvenienceReport, EigenvalueAudit, FilQuotient, Verdict};
pub use cup::{CupData, CupProduct};
pub use dfgh::{build_dfgh, check_balanced, predicted_valuation, FLeg, SupercuspidalLeg};
pub use module::{tensor_vectors, Filtration, PhiNModuleData};
pub use splitting::{crystalline_f_module, semistable_f_module, trace_eval, unit_root_splitting, UnitRootSplitting};

#[cfg(test)]
mod tests {
    use num_rational::Ratio;

    use super::*;
    use crate::linalg::PMatrix;
    use crate::localfield::{bezout_pair, EisensteinPoly, FpPolynomial, LocalField, LocalFieldElement};

    fn qp() -> LocalField {
        LocalField::qp(5, 20).unwrap()
    }

    /// `Q_5(√5)`, where `ord_p(μ) = (1−ν)/2` is attainable for odd ν.
    fn ramified() -> LocalField {
        LocalField::new(5, 1, Some(EisensteinPoly::from_integers(&[-5, 0])), 20).unwrap()
    }

    fn el(k: &LocalField, n: i64) -> LocalFieldElement {
        LocalFieldElement::from_int(k, n)
    }

    fn rank_one(k: &LocalField, u: i64) -> PhiNModuleData {
        PhiNModuleData::constant(
            k,
            1,
            1,
            &PMatrix::diagonal(k, &[el(k, u)]),
            &PMatrix::zeros(k, 1, 1),
            Filtration::single_jump(k, 1, 0),
        )
        .unwrap()
    }

    /// `π^{1−ν}·unit`.
    fn mu(k: &LocalField, nu: i64, unit: i64) -> LocalFieldElement {
        &LocalFieldElement::uniformizer(k).pow(1 - nu).unwrap() * &el(k, unit)
    }

    fn one_minus_t(k: &LocalField) -> FpPolynomial {
        FpPolynomial::linear(&el(k, 1))
    }

    #[test]
    fn unit_object_cohomology() {
        let k = qp();
        let d = PhiNModuleData::unit_object(&k, 1, 1);
        let c = StComplex::new(&d, &one_minus_t(&k), Variant::Semilinear).unwrap();
        assert!(c.check_d_squared().unwrap());
        assert_eq!(c.cohomology().unwrap().dims(), [1, 1, 0]);
        let r = convenient_check(&d, &one_minus_t(&k)).unwrap();
        assert_eq!(r.verdict, Verdict::NotConvenient);
    }

    #[test]
    fn fil0_zero_gives_h1_equal_to_de_rham() {
        let k = qp();
        for (dd, e) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let field = if dd == 1 { k.clone() } else { LocalField::unramified(5, 2, 20).unwrap() };
            let d = PhiNModuleData::unit_twist(&field, dd, e, 2);
            let q = one_minus_t(&field);
            assert_eq!(convenient_check(&d, &q).unwrap().verdict, Verdict::Convenient);
            let c = StComplex::new(&d, &q, Variant::Linearized).unwrap();
            assert_eq!(c.cohomology().unwrap().dims()[1], d.dim_dr());
            let fq = FilQuotient::new(&d, &q).unwrap();
            assert_eq!(fq.quotient_dim(), d.dim_dr());
            let y: Vec<_> = (0..d.dim_dr()).map(|i| el(&field, i as i64 + 2)).collect();
            let back = fq.inverse(&fq.forward(&y)).unwrap();
            assert!(fq.equal_mod_fil0(&back, &y));
        }
    }

    #[test]
    fn change_poly_trivial_and_kernel() {
        let k = qp();
        let d = rank_one(&k, 3);
        let p1 = one_minus_t(&k);
        let id = change_poly(&d, &p1, &FpPolynomial::one(&k), Variant::Semilinear).unwrap();
        assert_eq!(id.h1_map.rank(), id.source_cohomology.h1.cols());
        assert_eq!(id.report.dim_h1_kernel, 0);

        let p2 = FpPolynomial::linear(&el(&k, 3).inv().unwrap());
        let ch = change_poly(&d, &p1, &p2, Variant::Semilinear).unwrap();
        let r = &ch.report;
        // P₁(φ) invertible: H¹_{P₁} = 0 and both counts agree
        assert_eq!(r.dim_kernel_space, 1);
        assert_eq!(r.dim_h1_kernel, 0);
        assert!(r.image_in_kernel && r.onto_kernel && r.dimension_count);
        assert!(r.dimension_count_with_h0_p2);

        // φ = 1, P₁ = P₂ = 1 − T: the kernel is spanned by [(w,0,0)], and
        // H⁰_{P₂} overcounts on the left
        let d = rank_one(&k, 1);
        let ch = change_poly(&d, &p1, &p1, Variant::Semilinear).unwrap();
        let r = &ch.report;
        assert_eq!((r.dim_kernel_space, r.dim_h1_kernel, r.rank_w_map), (1, 1, 1));
        assert!(r.image_in_kernel && r.onto_kernel && r.dimension_count);
        assert!(!r.dimension_count_with_h0_p2);
    }

    fn leg_222(k: &LocalField, ug: i64, uh: i64) -> (FLeg, SupercuspidalLeg, SupercuspidalLeg) {
        let f = FLeg::Crystalline {
            weight: 2,
            a_p: el(k, 1),
            chi_p: el(k, 1),
        };
        let g = SupercuspidalLeg { weight: 2, mu: mu(k, 2, ug) };
        let h = SupercuspidalLeg { weight: 2, mu: mu(k, 2, uh) };
        (f, g, h)
    }

    #[test]
    fn dfgh_222_cohomology() {
        let k = ramified();
        let (f, g, h) = leg_222(&k, 2, 3);
        let d = build_dfgh(&k, 1, &f, &g, &h).unwrap();
        assert_eq!(d.dim_st_f(), 8);
        let c = StComplex::new(&d, &one_minus_t(&k), Variant::Semilinear).unwrap();
        let dims = c.cohomology().unwrap().dims();
        assert_eq!((dims[0], dims[2]), (0, 0));
        let audit = eigenvalue_audit(&d).unwrap();
        assert_eq!(audit.exponents(), vec![Ratio::from_integer(0), Ratio::from_integer(1)]);
    }

    #[test]
    fn dfgh_boundary_instance_is_not_convenient() {
        let k = ramified();
        // μ_g μ_h p^{r+1} a_p^{-1} = 1 on the τ(1) = w vectors
        let (f, g, h) = leg_222(&k, 1, 1);
        let d = build_dfgh(&k, 1, &f, &g, &h).unwrap();
        assert_eq!(convenient_check(&d, &one_minus_t(&k)).unwrap().verdict, Verdict::NotConvenient);
    }

    #[test]
    fn dfgh_332_audit() {
        let k = ramified();
        let f = FLeg::Crystalline {
            weight: 3,
            a_p: el(&k, 2),
            chi_p: el(&k, -1),
        };
        let g = SupercuspidalLeg { weight: 3, mu: mu(&k, 3, 7) };
        let h = SupercuspidalLeg { weight: 2, mu: mu(&k, 2, 3) };
        let d = build_dfgh(&k, 1, &f, &g, &h).unwrap();
        let audit = eigenvalue_audit(&d).unwrap();
        for e in &audit.entries {
            let first = e.label.chars().next().unwrap();
            assert_eq!(e.valuation, predicted_valuation(&f, first), "{}", e.label);
        }
        assert_eq!(audit.exponents(), vec![Ratio::new(-1, 2), Ratio::new(3, 2)]);
        assert!(audit.valuation_certificate);
        assert_eq!(convenient_check(&d, &one_minus_t(&k)).unwrap().verdict, Verdict::Convenient);
    }

    #[test]
    fn dfgh_rejects_bad_input() {
        let k = ramified();
        let (f, g, _) = leg_222(&k, 2, 3);
        let big = SupercuspidalLeg { weight: 6, mu: mu(&k, 6, 1) };
        assert!(build_dfgh(&k, 1, &f, &g, &big).is_err());
        let wrong = SupercuspidalLeg { weight: 2, mu: el(&k, 1) };
        assert!(build_dfgh(&k, 1, &f, &g, &wrong).is_err());
    }

    #[test]
    fn semistable_weight_two_audit() {
        let k = ramified();
        let f = FLeg::Semistable { a_p: el(&k, 1) };
        let g = SupercuspidalLeg { weight: 2, mu: mu(&k, 2, 2) };
        let h = SupercuspidalLeg { weight: 2, mu: mu(&k, 2, 3) };
        let d = build_dfgh(&k, 1, &f, &g, &h).unwrap();
        let audit = eigenvalue_audit(&d).unwrap();
        let killed: Vec<_> = audit.entries.iter().filter(|e| e.n_zero).collect();
        assert_eq!(killed.len(), 4);
        assert!(killed.iter().all(|e| e.abs_exponent == Ratio::from_integer(1)));
        assert_eq!(convenient_check(&d, &one_minus_t(&k)).unwrap().verdict, Verdict::NotCrystalline);
    }

    #[test]
    fn cup_zero_zero_and_leibniz() {
        let k = qp();
        let d1 = rank_one(&k, 3);
        let d2 = rank_one(&k, 7);
        let p = FpPolynomial::linear(&el(&k, 2));
        let q = FpPolynomial::linear(&el(&k, 4));
        let cup = CupProduct::new(&d1, &p, &d2, &q, Variant::Semilinear).unwrap();
        let (a, b) = bezout_pair(&p, &q, cup.star_polynomial()).unwrap();
        let data = cup.data(a, b, el(&k, 3)).unwrap();
        let x = StCochain::Zero {
            u: vec![el(&k, 2)],
            v: vec![el(&k, 5)],
        };
        let y = StCochain::Zero {
            u: vec![el(&k, 11)],
            v: vec![el(&k, 13)],
        };
        let StCochain::Zero { u, v } = cup.product(&x, &y, &data).unwrap() else {
            panic!("degree")
        };
        assert!(u[0].eq_at_precision(&el(&k, 22)) && v[0].eq_at_precision(&el(&k, 65)));

        // d(x ∪ y) = dx ∪ y + (−1)^i x ∪ dy
        let y1 = StCochain::One {
            w: vec![el(&k, 4)],
            x: vec![el(&k, -3)],
            y: vec![el(&k, 9)],
        };
        for (l, r) in [(&x, &y), (&x, &y1), (&y1, &x)] {
            let lhs = cup.target.differential(&cup.product(l, r, &data).unwrap()).unwrap();
            let a = cup.product(&cup.left.differential(l).unwrap(), r, &data).unwrap();
            let b = cup.product(l, &cup.right.differential(r).unwrap(), &data).unwrap();
            let b = if l.degree() % 2 == 1 { -&b } else { b };
            assert!((&lhs + &-&(&a + &b)).is_zero());
        }
    }

    #[test]
    fn cup_rejects_bad_bezout() {
        let k = qp();
        let d1 = rank_one(&k, 3);
        let p = FpPolynomial::linear(&el(&k, 2));
        let cup = CupProduct::new(&d1, &p, &d1, &p, Variant::Semilinear).unwrap();
        let (a, b) = bezout_pair(&p, &p, cup.star_polynomial()).unwrap();
        assert!(cup.data(a.clone(), b.clone(), el(&k, 0)).is_ok());
        assert!(cup.data(b, a.add(&a), el(&k, 0)).is_err());
    }

    #[test]
    fn splitting_cases() {
        let k = qp();
        let a = el(&k, 2);
        let split = crystalline_f_module(&k, 4, &a, &el(&k, 1), &el(&k, 1), &el(&k, 0)).unwrap();
        let s = unit_root_splitting(&split, &a).unwrap();
        assert!(s.eigenline[0].is_zero());
        let ss = semistable_f_module(&k, &a, &el(&k, 17)).unwrap();
        let s = unit_root_splitting(&ss, &a).unwrap();
        assert!(s.eigenline[0].is_zero() && s.certificate.is_unit());
        let ns = crystalline_f_module(&k, 4, &a, &el(&k, 1), &el(&k, 3), &el(&k, 7)).unwrap();
        assert!(unit_root_splitting(&ns, &a).unwrap().certificate.is_unit());
        // Fil¹ equal to the unit-root line
        let bad = crystalline_f_module(&k, 4, &a, &el(&k, 1), &el(&k, 0), &el(&k, 1)).unwrap();
        assert!(unit_root_splitting(&bad, &a).is_err());
    }

    #[test]
    fn trace_eval_formula() {
        let k = qp();
        let d = PhiNModuleData::unit_twist(&k, 1, 1, 1);
        let c = el(&k, 3);
        let poly = FpPolynomial::linear(&c);
        let rep = StCochain::One {
            w: vec![el(&k, 0)],
            x: vec![el(&k, 0)],
            y: vec![el(&k, 8)],
        };
        assert!(trace_eval(&d, &rep, &poly, Variant::Linearized).unwrap()[0].eq_at_precision(&el(&k, 8)));
        let rep = StCochain::One {
            w: vec![el(&k, 1)],
            x: vec![el(&k, 0)],
            y: vec![el(&k, 0)],
        };
        let got = trace_eval(&d, &rep, &poly, Variant::Linearized).unwrap();
        let q_inv = el(&k, 5).inv().unwrap();
        let want = -&(&el(&k, 1) - &(&c * &q_inv)).inv().unwrap();
        assert!(got[0].eq_at_precision(&want));
        assert!(trace_eval(&d, &rep, &one_minus_t(&k), Variant::Linearized).is_err());
    }
}
