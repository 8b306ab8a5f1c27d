#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use triperiod::linalg::PMatrix;
use triperiod::localfield::{FpPolynomial, LocalField, LocalFieldElement};
use triperiod::phin::{Filtration, PhiNModuleData};
use triperiod::qexp::QExpansion;

pub fn el(k: &LocalField, n: i64) -> LocalFieldElement {
    LocalFieldElement::from_int(k, n)
}

/// Random coefficients off the multiples of p.
pub fn depleted(k: &LocalField, rng: &mut ChaCha8Rng, n: usize) -> QExpansion {
    let p = k.p() as usize;
    let coeffs: Vec<i64> = (0..=n)
        .map(|i| if i % p == 0 { 0 } else { rng.gen_range(-40..=40) })
        .collect();
    QExpansion::from_ints(k, &coeffs, 2, 1)
}

pub fn random_vec(k: &LocalField, rng: &mut ChaCha8Rng, n: usize) -> Vec<LocalFieldElement> {
    (0..n).map(|_| el(k, rng.gen_range(-9..=9))).collect()
}

/// `1 − cT` or `(1 − aT)(1 − bT)` with small integer roots.
pub fn random_poly(k: &LocalField, rng: &mut ChaCha8Rng) -> FpPolynomial {
    let pick = |rng: &mut ChaCha8Rng| el(k, *[1, 2, 3, 5, 7, -1].choose(rng).unwrap());
    let lin = FpPolynomial::linear(&pick(rng));
    if rng.gen_bool(0.5) {
        lin
    } else {
        lin.mul(&FpPolynomial::linear(&pick(rng)))
    }
}

/// Frobenius and monodromy of rank 1 or 2. Rank-2 monodromic pieces are
/// `φ = [[pβ, 0], [c, β]]`, `N = [[0, 0], [1, 0]]`.
pub fn random_phi_n(k: &LocalField, rng: &mut ChaCha8Rng, rank: usize, allow_n: bool) -> (PMatrix, PMatrix) {
    let p = k.p() as i64;
    let evs = [1, 2, 3, 5, 7, -1, 1];
    let ev = |rng: &mut ChaCha8Rng| *evs.choose(rng).unwrap();
    if rank == 1 {
        return (PMatrix::diagonal(k, &[el(k, ev(rng))]), PMatrix::zeros(k, 1, 1));
    }
    let c = rng.gen_range(-3..=3);
    if allow_n && rng.gen_bool(0.5) {
        let b = ev(rng);
        let phi = PMatrix::from_int_rows(k, &[vec![p * b, 0], vec![c, b]]).unwrap();
        let n = PMatrix::from_int_rows(k, &[vec![0, 0], vec![1, 0]]).unwrap();
        (phi, n)
    } else {
        let phi = PMatrix::from_int_rows(k, &[vec![ev(rng), c], vec![0, ev(rng)]]).unwrap();
        (phi, PMatrix::zeros(k, 2, 2))
    }
}

/// Fil⁰ everything, nothing, a random line, or (when rank and e allow) a
/// random plane; jumps at −1, 0, 1.
pub fn random_filtration(k: &LocalField, rng: &mut ChaCha8Rng, dim: usize) -> Filtration {
    match rng.gen_range(0..4) {
        0 => Filtration::single_jump(k, dim, 0),
        1 => Filtration::single_jump(k, dim, -1),
        choice => {
            let cols = if choice == 3 && dim > 1 { 2 } else { 1 };
            let span: Vec<Vec<LocalFieldElement>> = (0..cols).map(|_| random_vec(k, rng, dim)).collect();
            let m = PMatrix::from_columns(k, dim, &span).unwrap();
            if m.rank() < cols {
                return Filtration::single_jump(k, dim, 0);
            }
            Filtration::new(dim, vec![(-1, PMatrix::identity(k, dim)), (0, m)]).unwrap()
        }
    }
}

/// A random module of rank ≤ 2 with the same matrices in every component.
pub fn random_module(k: &LocalField, rng: &mut ChaCha8Rng, d: usize, e: usize, allow_n: bool) -> PhiNModuleData {
    let rank = rng.gen_range(1..=2);
    let (phi, n) = random_phi_n(k, rng, rank, allow_n);
    let fil = random_filtration(k, rng, rank * d * e);
    PhiNModuleData::constant(k, d, e, &phi, &n, fil).unwrap()
}
