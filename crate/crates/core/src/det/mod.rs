//! The invariant `Det_r` in `Sym^{r₁} ⊗ Sym^{r₂} ⊗ Sym^{r₃}` of the standard
//! representation, and the pairing `( , )_r` on symmetric powers.

mod ring;
mod sympow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use ring::{CoeffRing, ZMod};
pub use sympow::{det_exponents, det_polynomial, det_power, gl2_act, Monomial, SymPowerElement, TwistedScalar};

use crate::error::{Error, Result};
use crate::localfield::Ring;

/// `ω` (index 0) or `η` (index 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Omega,
    Eta,
}

impl Basis {
    fn index(self) -> usize {
        match self {
            Basis::Omega => 0,
            Basis::Eta => 1,
        }
    }
}

/// `ω^{r−a}η^a` as a list of factors.
pub fn monomial_word(r: usize, a: usize) -> Vec<Basis> {
    let mut w = vec![Basis::Omega; r - a];
    w.extend(std::iter::repeat(Basis::Eta).take(a));
    w
}

/// `(α₁⋯α_r, β₁⋯β_r)_r = (1/r!) Σ_σ ∏ (α_i, β_{σi})`, computed as a
/// permanent over subsets.
pub fn pairing_r<R: CoeffRing>(alpha: &[Basis], beta: &[Basis], base: &[[R; 2]; 2]) -> Result<R> {
    if alpha.len() != beta.len() {
        return Err(Error::Dimension(format!("degrees {} and {} differ", alpha.len(), beta.len())));
    }
    let r = alpha.len();
    let one = base[0][0].one_like();
    let mut fact = one.clone();
    for i in 2..=r {
        fact = fact.mul_r(&one.from_i64(i as i64));
    }
    let inv = fact.inverse().ok_or(Error::FactorialNotInvertible(r))?;
    // dp[mask] = Σ over assignments of the first popcount(mask) α's into mask
    let mut dp = vec![one.zero_like(); 1 << r];
    dp[0] = one.clone();
    for mask in 0usize..(1 << r) {
        if dp[mask].is_zero_r() {
            continue;
        }
        let i = mask.count_ones() as usize;
        if i == r {
            continue;
        }
        for j in 0..r {
            if mask & (1 << j) == 0 {
                let t = dp[mask].mul_r(&base[alpha[i].index()][beta[j].index()]);
                dp[mask | (1 << j)] = dp[mask | (1 << j)].add_r(&t);
            }
        }
    }
    Ok(dp[(1 << r) - 1].mul_r(&inv))
}

/// The standard symplectic values `(ω,ω) = (η,η) = 0`, `(ω,η) = 1 = −(η,ω)`.
pub fn symplectic_base<R: CoeffRing>(one: &R) -> [[R; 2]; 2] {
    [[one.zero_like(), one.one_like()], [one.neg_r(), one.zero_like()]]
}

/// Tri-degrees with every entry at most `max`, even total and non-negative
/// exponents.
pub fn balanced_degrees(max: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                if det_exponents([a, b, c]).is_ok() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub r: [u32; 3],
    pub modulus: u64,
    pub trials: usize,
    /// `g*P_r = det(g)^{−r}·P_r` for every sampled g.
    pub scaling_holds: usize,
    /// `g*P_r = P_r` after normalising g to determinant one.
    pub invariance_holds: usize,
    /// Some `r_i + r_j = r_k` (a zero exponent).
    pub equality_case: bool,
    pub counterexample: Option<[[u64; 2]; 2]>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.scaling_holds == self.trials && self.invariance_holds == self.trials
    }
}

pub fn random_unit_matrix(rng: &mut ChaCha8Rng, modulus: u64) -> [[ZMod; 2]; 2] {
    loop {
        let g = [0, 1].map(|_| [0, 1].map(|_| ZMod::new(rng.gen_range(0..modulus) as i64, modulus)));
        if det_power(&g, 1).map(|d| d.inverse().is_some()).unwrap_or(false) {
            return g;
        }
    }
}

/// Checks both the scaling law and determinant-one invariance of `P_r` on
/// `trials` random matrices over `Z/p^e`.
pub fn check_invariance(r: [u32; 3], p: u64, e: u32, trials: usize, seed: u64) -> Result<InvarianceReport> {
    let modulus = ZMod::prime_power(p, e)?;
    let one = ZMod::new(1, modulus);
    let (half, exps) = det_exponents(r)?;
    let pr = det_polynomial(r, &one)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = InvarianceReport {
        r,
        modulus,
        trials,
        scaling_holds: 0,
        invariance_holds: 0,
        equality_case: exps.contains(&0),
        counterexample: None,
    };
    for _ in 0..trials {
        let g = random_unit_matrix(&mut rng, modulus);
        let scaled = pr.scale(&det_power(&g, -(half as i64))?);
        let ok1 = gl2_act(&g, &pr)?.eq_r(&scaled);
        // g·diag(det⁻¹, 1) has determinant one
        let dinv = det_power(&g, -1)?;
        let h = [
            [g[0][0].mul_r(&dinv), g[0][1]],
            [g[1][0].mul_r(&dinv), g[1][1]],
        ];
        let ok2 = gl2_act(&h, &pr)?.eq_r(&pr);
        report.scaling_holds += ok1 as usize;
        report.invariance_holds += ok2 as usize;
        if !(ok1 && ok2) && report.counterexample.is_none() {
            report.counterexample = Some(g.map(|row| row.map(|x| x.value())));
        }
    }
    Ok(report)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::{LocalField, LocalFieldElement};

    fn z(n: i64) -> ZMod {
        ZMod::new(n, 3125)
    }

    #[test]
    fn det_polynomial_small_cases() {
        let one = z(1);
        let p0 = det_polynomial([0, 0, 0], &one).unwrap();
        assert_eq!(p0.terms().len(), 1);
        let p1 = det_polynomial([1, 1, 0], &one).unwrap();
        let want = SymPowerElement::from_terms(&one, [1, 1, 0], vec![([1, 0, 0, 1, 0, 0], z(1)), ([0, 1, 1, 0, 0, 0], z(-1))]).unwrap();
        assert!(p1.eq_r(&want));
        let p2 = det_polynomial([2, 2, 2], &one).unwrap();
        assert!(p2.is_homogeneous());
        assert_eq!(p2.degrees(), [2, 2, 2]);
        assert_eq!(p2.total_degree(), 6);
        assert!(det_polynomial([1, 1, 1], &one).is_err());
        assert!(det_polynomial([4, 1, 1], &one).is_err());
    }

    #[test]
    fn action_basics() {
        let one = z(1);
        let p = det_polynomial([2, 1, 1], &one).unwrap();
        let id = [[z(1), z(0)], [z(0), z(1)]];
        assert!(gl2_act(&id, &p).unwrap().eq_r(&p));
        // diag(u,u) scales by u^{-2r}
        let u = z(7);
        let g = [[u, z(0)], [z(0), u]];
        let uinv = u.inverse().unwrap();
        let want = p.scale(&ring::pow_r(&uinv, 4));
        assert!(gl2_act(&g, &p).unwrap().eq_r(&want));
        let sing = [[z(5), z(0)], [z(0), z(1)]];
        assert!(gl2_act(&sing, &p).is_err());
    }

    #[test]
    fn invariance_on_random_matrices() {
        for r in balanced_degrees(3) {
            let rep = check_invariance(r, 5, 5, 10, 1).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn pairing_values() {
        let k = LocalField::qp(7, 20).unwrap();
        let one = LocalFieldElement::one(&k);
        let base = symplectic_base(&one);
        let w = |r, a| monomial_word(r, a);
        assert!(pairing_r(&w(1, 0), &w(1, 1), &base).unwrap().eq_at_precision(&one));
        for r in 1..=4 {
            assert!(pairing_r(&w(r, 0), &w(r, r), &base).unwrap().eq_at_precision(&one));
            assert!(pairing_r(&w(r, 0), &w(r, 0), &base).unwrap().is_zero());
        }
        // (ω^{r−a}η^a, ω^aη^{r−a})_r = (−1)^a / C(r,a)
        let got = pairing_r(&w(3, 1), &w(3, 2), &base).unwrap();
        let want = LocalFieldElement::from_int(&k, -1).div(&LocalFieldElement::from_int(&k, 3)).unwrap();
        assert!(got.eq_at_precision(&want));
        // (α, β)_r = (−1)^r (β, α)_r, and the Gram matrix on monomials is
        // antidiagonal with nonzero entries
        let one_q = num_rational::BigRational::from_integer(1.into());
        let bq = symplectic_base(&one_q);
        for r in 0..=5 {
            for a in 0..=r {
                for b in 0..=r {
                    let x = pairing_r(&w(r, a), &w(r, b), &bq).unwrap();
                    let y = pairing_r(&w(r, b), &w(r, a), &bq).unwrap();
                    assert_eq!(if r % 2 == 0 { y.clone() } else { -y.clone() }, x);
                    assert_eq!(x != one_q.zero_like(), a + b == r, "r={r} a={a} b={b}");
                }
            }
        }
        let tiny = ZMod::new(1, 3);
        assert!(pairing_r(&w(3, 0), &w(3, 3), &symplectic_base(&tiny)).is_err());
    }
}
