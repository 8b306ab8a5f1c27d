mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{depleted, el, random_module, random_poly};
use triperiod::det::{det_polynomial, det_power, gl2_act, monomial_word, pairing_r, symplectic_base, Basis, ZMod};
use triperiod::linalg::{random_integral_matrix, unit_root_projector};
use triperiod::localfield::{EisensteinPoly, LocalField, LocalFieldElement};
use triperiod::phin::{StComplex, Variant};
use triperiod::qexp::QExpansion;

fn ramified() -> LocalField {
    LocalField::new(5, 1, Some(EisensteinPoly::from_integers(&[-5, 0])), 12).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn literal_round_trip(a in -10_000i64..10_000, b in -10_000i64..10_000, shift in -3i64..4) {
        let k = ramified();
        let pi = LocalFieldElement::uniformizer(&k);
        let x = &(&el(&k, a) + &(&pi * &el(&k, b))) * &pi.pow(shift).unwrap();
        let back = LocalFieldElement::parse(&k, &x.to_literal()).unwrap();
        prop_assert!(back.eq_at_precision(&x));
        prop_assert_eq!(back.precision(), x.precision());
    }

    #[test]
    fn division_undoes_multiplication(a in 1i64..5_000, b in 1i64..5_000) {
        let k = LocalField::qp(7, 15).unwrap();
        let (x, y) = (el(&k, a), el(&k, b));
        let z = (&x * &y).div(&y).unwrap();
        // dividing by y costs ord_7(y) digits
        let (mut v, mut m) = (0, b);
        while m % 7 == 0 {
            m /= 7;
            v += 1;
        }
        prop_assert!(z.congruent_mod_p(&x, 15 - v));
    }

    #[test]
    fn serre_d_composes_on_depleted_series(seed in any::<u64>(), s in -3i64..4, t in -3i64..4) {
        let k = LocalField::qp(5, 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi = depleted(&k, &mut rng, 30);
        let lhs = xi.serre_d(s).unwrap().serre_d(t).unwrap();
        let rhs = xi.serre_d(s + t).unwrap();
        prop_assert!(lhs.eq_at_precision(&rhs));
    }

    #[test]
    fn depletion_is_idempotent_and_killed_by_up(coeffs in proptest::collection::vec(-50i64..50, 40)) {
        let k = LocalField::qp(5, 20).unwrap();
        let xi = QExpansion::from_ints(&k, &coeffs, 2, 1);
        let dep = xi.deplete().unwrap();
        prop_assert!(dep.is_depleted());
        prop_assert!(dep.deplete().unwrap().eq_at_precision(&dep));
        prop_assert!(dep.u_p().unwrap().is_zero());
    }

    #[test]
    fn det_scales_by_det_power(a in 0i64..125, b in 0i64..125, c in 0i64..125, d in 0i64..125, ri in 0usize..6) {
        let r = [[1, 1, 0], [2, 1, 1], [1, 2, 3], [2, 2, 2], [3, 3, 0], [4, 2, 2]][ri];
        let m = 125;
        prop_assume!(((a * d - b * c) % 5 + 5) % 5 != 0);
        let g = [[ZMod::new(a, m), ZMod::new(b, m)], [ZMod::new(c, m), ZMod::new(d, m)]];
        let p = det_polynomial(r, &ZMod::new(1, m)).unwrap();
        let half = (r[0] + r[1] + r[2]) as i64 / 2;
        let want = p.scale(&det_power(&g, -half).unwrap());
        prop_assert!(gl2_act(&g, &p).unwrap().eq_r(&want));
    }

    #[test]
    fn pairing_is_signed_symmetric(r in 0usize..6, a in 0usize..6, b in 0usize..6) {
        prop_assume!(a <= r && b <= r);
        let base = symplectic_base(&BigRational::one());
        let (x, y) = (monomial_word(r, a), monomial_word(r, b));
        let xy = pairing_r(&x, &y, &base).unwrap();
        let yx = pairing_r(&y, &x, &base).unwrap();
        let sign = if r % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        prop_assert_eq!(xy.clone(), yx * sign);
        // (ω^{r−a}η^a, ω^{r−b}η^b) vanishes off the antidiagonal a + b = r
        if a + b != r {
            prop_assert_eq!(xy, BigRational::from_integer(BigInt::from(0)));
        }
    }

    #[test]
    fn unit_root_projector_is_an_idempotent_commuting_with_a(seed in any::<u64>(), n in 2usize..5, p in prop::sample::select(vec![5u64, 7])) {
        let k = LocalField::qp(p, 24).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_integral_matrix(&k, n, &mut rng).unwrap();
        let e = unit_root_projector(&a).unwrap();
        prop_assert!(e.mul(&e).unwrap().congruent_mod_p(&e, 10));
        prop_assert!(e.mul(&a).unwrap().congruent_mod_p(&a.mul(&e).unwrap(), 10));
    }

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), e in 1usize..3) {
        let k = LocalField::qp(5, 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&k, &mut rng, 1, e, true);
        let q = random_poly(&k, &mut rng);
        for variant in [Variant::Semilinear, Variant::Linearized] {
            prop_assert!(StComplex::new(&m, &q, variant).unwrap().check_d_squared().unwrap());
        }
    }
}

#[test]
fn symplectic_base_pairs_omega_with_eta() {
    let base = symplectic_base(&BigRational::one());
    let v = pairing_r(&[Basis::Omega], &[Basis::Eta], &base).unwrap();
    assert_eq!(v, BigRational::one());
}
