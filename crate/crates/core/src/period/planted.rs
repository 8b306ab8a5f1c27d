//! A synthetic weight-(2,2,2) triple whose period is known by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FormRecord, Reduction, TripleConfig};
use crate::error::Result;
use crate::hida::FormSpaceBasis;
use crate::localfield::{LocalField, LocalFieldElement};
use crate::qexp::{DirichletCharacter, QExpansion};

/// The planted triple together with the space its product lives in.
#[derive(Clone, Debug)]
pub struct PlantedTriple {
    pub config: TripleConfig,
    pub basis: FormSpaceBasis,
    /// `d^{−1}g × h'`.
    pub product: QExpansion,
}

const LEVEL: u64 = 5;

/// `Σ_j α^j V_p^j(s)` for `s` supported on indices prime to p: an exact
/// U_p-eigenvector with eigenvalue α.
fn eigen_series(k: &LocalField, seed: &[i64], alpha: i64) -> QExpansion {
    let p = k.p() as usize;
    let a = LocalFieldElement::from_int(k, alpha);
    let coeffs: Vec<LocalFieldElement> = (0..seed.len())
        .map(|n| {
            if n == 0 {
                return LocalFieldElement::zero(k);
            }
            let (mut m, mut v) = (n, 0u64);
            while m % p == 0 {
                m /= p;
                v += 1;
            }
            &LocalFieldElement::from_int(k, seed[m]) * &a.pow_u(v)
        })
        .collect();
    QExpansion::from_cusp_coeffs(k, &coeffs[1..], 2, LEVEL)
}

/// The part of `xi` on indices `≡ 1 mod p`; U_p kills it.
fn one_mod_p_part(xi: &QExpansion) -> QExpansion {
    let p = xi.field().p() as usize;
    let mut out = xi.clone();
    for n in 0..=xi.q_precision() {
        if n % p != 1 {
            out.set(n, LocalFieldElement::zero(xi.field()));
        }
    }
    out
}

fn random_seed(rng: &mut ChaCha8Rng, p: usize, n: usize) -> Vec<i64> {
    (0..=n)
        .map(|i| match i {
            1 => 1,
            _ if i % p == 0 => 0,
            _ => rng.gen_range(-9..=9),
        })
        .collect()
}

/// Weights (2,2,2), `M = M₁ = 1`, `t = s = 1`, trivial characters. With
/// `F, G` U_p-eigenvectors of eigenvalues 2 and 3 and `w_F, w_G` their
/// `1 mod p` parts, `X = u(F − w_F) + v(G − w_G)` has `X/q` p-depleted, so
/// `g = d(X/q)` and `h = q` give `d^{−1}g × h = X`, whose f̆-component has
/// `a₁ = u`. The basis also holds `d` of each form (U_p-slopes ≥ 1), so that
/// the product `g × d^{−1}h` lies in the space as well.
///
/// Over a field where `ord_p(μ) = −1/2` is attainable, `μ_g = μ_h = π^{−1}`
/// are attached, otherwise the convenience certificate is unavailable.
pub fn planted_triple(k: &LocalField, u: &LocalFieldElement, qprec: usize, seed: u64) -> Result<PlantedTriple> {
    let p = k.p() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = eigen_series(k, &random_seed(&mut rng, p, qprec), 2);
    let gg = eigen_series(k, &random_seed(&mut rng, p, qprec), 3);
    let (wf, wg) = (one_mod_p_part(&f), one_mod_p_part(&gg));
    let v = LocalFieldElement::from_int(k, rng.gen_range(1..=9));
    let x = f.sub(&wf)?.scale(u).add(&gg.sub(&wg)?.scale(&v))?;

    // g_m = m·a_{m+1}(X)
    let g_coeffs: Vec<LocalFieldElement> = (1..qprec)
        .map(|m| &LocalFieldElement::from_int(k, m as i64) * x.a(m + 1))
        .collect();
    let g = QExpansion::from_cusp_coeffs(k, &g_coeffs, 2, LEVEL);
    let mut h_coeffs = vec![0i64; qprec + 1];
    h_coeffs[1] = 1;
    let h = QExpansion::from_ints(k, &h_coeffs, 2, LEVEL);

    let mut forms = vec![f.clone(), wf, gg, wg];
    let derived = forms.iter().map(|b| b.serre_d(1)).collect::<Result<Vec<_>>>()?;
    forms.extend(derived);
    let basis = FormSpaceBasis::new(forms, qprec / p)?;

    let mu = (k.ram_index() == 2).then(|| LocalFieldElement::uniformizer(k).pow(-1)).transpose()?;
    let mut f_rec = FormRecord::new(f);
    f_rec.a_p = Some(LocalFieldElement::from_int(k, 2));
    let mut g_rec = FormRecord::new(g.clone());
    g_rec.mu = mu.clone();
    let mut h_rec = FormRecord::new(h.clone());
    h_rec.mu = mu;

    let tame = || DirichletCharacter::trivial(k, 1);
    let wild = || DirichletCharacter::trivial(k, k.p());
    let config = TripleConfig {
        p: k.p(),
        level: 1,
        level_f: 1,
        t: 1,
        s: 1,
        weights: [2, 2, 2],
        teichmuller: [0, 0, 0],
        tame: [tame(), tame(), tame()],
        wild: [wild(), wild(), wild()],
        sqrt: Some(wild()),
        reduction: Reduction::Good,
        f: f_rec,
        g: g_rec,
        h: h_rec,
    };
    let product = g.serre_d(-1)?.multiply(&h)?;
    Ok(PlantedTriple { config, basis, product })
}
