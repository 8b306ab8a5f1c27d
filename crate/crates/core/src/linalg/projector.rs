use num_rational::Ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::PMatrix;
use super::newton::{ordinary_cut, slope_factorization, sylvester_solve};
use crate::error::{Error, Result};
use crate::localfield::{LocalField, LocalFieldElement, Poly};

/// Idempotent onto the sum of generalized eigenspaces whose eigenvalues have
/// valuation below `cut`, along the complementary ones.
///
/// With `χ = below·above` the slope splitting of the characteristic polynomial
/// and `u·below + v·above = 1`, the projector is `v(A)·above(A)`.
pub fn slope_projector(a: &PMatrix, cut: Ratio<i64>) -> Result<PMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension("projector of a non-square matrix".into()));
    }
    let field = a.field().clone();
    let n = a.rows();
    if n == 0 {
        return Ok(PMatrix::zeros(&field, 0, 0));
    }
    let chi = a.char_poly()?;
    if chi.coeff(0).is_zero() {
        // zero is an eigenvalue: peel off the factor x^k exactly
        let k = chi.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(n);
        let rest = Poly::new(&field, chi.coeffs()[k..].to_vec());
        let xk = Poly::monomial(crate::localfield::LocalFieldElement::one(&field), k);
        let (below, above_rest) = if rest.degree() == Some(0) {
            (Poly::one(&field), Poly::one(&field))
        } else {
            slope_factorization(&rest, cut)?
        };
        let above = above_rest.mul(&xk);
        return projector_from_factors(a, &below, &above);
    }
    let (below, above) = slope_factorization(&chi, cut)?;
    projector_from_factors(a, &below, &above)
}

fn projector_from_factors(a: &PMatrix, below: &Poly, above: &Poly) -> Result<PMatrix> {
    let field = a.field().clone();
    let n = a.rows();
    if below.degree() == Some(0) {
        return Ok(PMatrix::zeros(&field, n, n));
    }
    if above.degree() == Some(0) {
        return Ok(PMatrix::identity(&field, n));
    }
    // u·below + v·above = 1
    let (_u, v) = sylvester_solve(below, above, &Poly::one(&field))?;
    let e = a.eval_poly(&v)?.mul(&a.eval_poly(above)?)?;
    Ok(e)
}

/// The ordinary (unit-root) projector, cut at valuation 1/2.
pub fn unit_root_projector(a: &PMatrix) -> Result<PMatrix> {
    slope_projector(a, ordinary_cut())
}

/// `lim A^{n!}` computed by iterating `B ↦ B^n`; stops once two consecutive
/// iterates agree modulo `p^digits` for `stable_rounds` rounds. Reports
/// `NoConvergence` if the entries blow up or no agreement is reached.
pub fn factorial_power_limit(a: &PMatrix, digits: i64, max_n: u64) -> Result<PMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension("power limit of a non-square matrix".into()));
    }
    let mut b = a.clone();
    let mut stable = 0;
    let e = a.field().ram_index() as i64;
    for n in 2..=max_n {
        let next = b.pow(n)?;
        if let Some(v) = next.min_val_pi() {
            if v < 0 {
                return Err(Error::NoConvergence("entries of A^{n!} are not integral".into()));
            }
        }
        if next.precision() < digits * e {
            return Err(Error::PrecisionExhausted(format!(
                "A^{{n!}} has precision {} below the requested {digits} digits",
                next.precision()
            )));
        }
        if next.congruent_mod_p(&b, digits) {
            stable += 1;
            if stable >= 3 {
                return Ok(next);
            }
        } else {
            stable = 0;
        }
        b = next;
    }
    Err(Error::NoConvergence(format!("A^{{n!}} not stable mod p^{digits} by n = {max_n}")))
}

/// Outcome of comparing the slope-factorization projector with `lim A^{n!}`.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectorTrial {
    pub size: usize,
    pub digits: i64,
    /// Rank of the ordinary projector (number of unit eigenvalues).
    pub rank: usize,
    pub idempotent: bool,
    pub agrees: bool,
}

pub fn projector_trial(a: &PMatrix, digits: i64) -> Result<ProjectorTrial> {
    let e = unit_root_projector(a)?;
    let lim = factorial_power_limit(a, digits, 200)?;
    Ok(ProjectorTrial {
        size: a.rows(),
        digits,
        rank: e.rank(),
        idempotent: e.mul(&e)?.congruent_mod_p(&e, digits),
        agrees: e.congruent_mod_p(&lim, digits),
    })
}

/// Random `n×n` integral matrix `P·D·P^{−1} + p·N` mixing unit and non-unit
/// eigenvalues, with `P` unimodular modulo p.
pub fn random_integral_matrix(field: &LocalField, n: usize, rng: &mut ChaCha8Rng) -> Result<PMatrix> {
    let p = field.p() as i64;
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let pm = PMatrix::from_int_rows(field, &rows)?;
        if !pm.determinant()?.is_unit() {
            continue;
        }
        let diag: Vec<LocalFieldElement> = (0..n)
            .map(|_| {
                let unit = rng.gen_range(1..p) + p * rng.gen_range(0..5);
                let v = if rng.gen_bool(0.5) { unit } else { p * rng.gen_range(-5..=5) };
                LocalFieldElement::from_int(field, v)
            })
            .collect();
        let noise: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| p * rng.gen_range(-3..=3)).collect()).collect();
        let a = pm.mul(&PMatrix::diagonal(field, &diag))?.mul(&pm.inverse()?)?;
        return a.add(&PMatrix::from_int_rows(field, &noise)?);
    }
}

/// Matrix of `Φ = φ^d` for a σ-semilinear `φ` with matrix `A` over `Q_{p^d}`:
/// `A·σ(A)·…·σ^{d−1}(A)`.
pub fn linearize_frobenius(a: &PMatrix, d: usize) -> Result<PMatrix> {
    let f = a.field().unram_degree();
    if d != f || a.field().ram_index() != 1 {
        return Err(Error::FrobeniusDegree { given: d, expected: f });
    }
    let mut result = a.clone();
    let mut s = a.clone();
    for _ in 1..d {
        s = s.frobenius()?;
        result = result.mul(&s)?;
    }
    Ok(result)
}
