use num_rational::Ratio;

use super::module::{Filtration, PhiNModuleData};
use crate::error::{Error, Result};
use crate::linalg::PMatrix;
use crate::localfield::{LocalField, LocalFieldElement};

/// The f'-leg: crystalline (`k > 2`, or `k = 2` with a good-reduction form)
/// or the semistable weight-2 newform case.
#[derive(Clone, Debug)]
pub enum FLeg {
    Crystalline {
        weight: i64,
        a_p: LocalFieldElement,
        /// `χ_f(p)`.
        chi_p: LocalFieldElement,
    },
    Semistable {
        a_p: LocalFieldElement,
    },
}

impl FLeg {
    pub fn weight(&self) -> i64 {
        match self {
            FLeg::Crystalline { weight, .. } => *weight,
            FLeg::Semistable { .. } => 2,
        }
    }

    pub fn a_p(&self) -> &LocalFieldElement {
        match self {
            FLeg::Crystalline { a_p, .. } | FLeg::Semistable { a_p } => a_p,
        }
    }
}

/// A leg supercuspidal at p: φ acts on both basis vectors by `μ`.
#[derive(Clone, Debug)]
pub struct SupercuspidalLeg {
    pub weight: i64,
    pub mu: LocalFieldElement,
}

/// Balanced and geometric: each weight ≥ 2, strictly less than the sum of the
/// other two, with even total.
pub fn check_balanced(k: i64, l: i64, m: i64) -> Result<()> {
    if k < 2 || l < 2 || m < 2 {
        return Err(Error::Weights(format!("({k},{l},{m}) has a weight below 2")));
    }
    if (k + l + m) % 2 != 0 {
        return Err(Error::Weights(format!("({k},{l},{m}) has odd total weight")));
    }
    if k >= l + m || l >= k + m || m >= k + l {
        return Err(Error::Weights(format!("({k},{l},{m}) is not balanced")));
    }
    Ok(())
}

/// Filtration of a rank-2 leg repeated over `d` components: the whole space
/// from `low`, the line `v + w` from `high`.
fn leg_filtration(field: &LocalField, d: usize, low: i64, high: i64) -> Result<Filtration> {
    let one = LocalFieldElement::one(field);
    let cols: Vec<Vec<LocalFieldElement>> = (0..d)
        .map(|c| {
            let mut v = vec![LocalFieldElement::zero(field); 2 * d];
            v[2 * c] = one.clone();
            v[2 * c + 1] = one.clone();
            v
        })
        .collect();
    Filtration::new(
        2 * d,
        vec![(low, PMatrix::identity(field, 2 * d)), (high, PMatrix::from_columns(field, 2 * d, &cols)?)],
    )
}

fn diag2(field: &LocalField, a: LocalFieldElement, b: LocalFieldElement) -> PMatrix {
    PMatrix::diagonal(field, &[a, b])
}

fn f_leg(field: &LocalField, d: usize, f: &FLeg) -> Result<PhiNModuleData> {
    let a = f.a_p();
    if !a.is_unit() {
        return Err(Error::Precondition(format!("a_p = {} is not a p-adic unit", a.to_literal())));
    }
    let p = LocalFieldElement::from_int(field, field.p() as i64);
    let k = f.weight();
    let (phi, n) = match f {
        FLeg::Crystalline { chi_p, .. } => {
            let v = &(&chi_p.inv()? * &p.pow(1 - k)?) * a;
            (diag2(field, v, a.inv()?), PMatrix::zeros(field, 2, 2))
        }
        FLeg::Semistable { .. } => {
            let mut n = PMatrix::zeros(field, 2, 2);
            n.set(1, 0, -&LocalFieldElement::one(field));
            (diag2(field, a.inv()?, (&p * a).inv()?), n)
        }
    };
    PhiNModuleData::constant(field, d, 1, &phi, &n, leg_filtration(field, d, 1 - k, 0)?)?
        .with_labels(vec!["v".into(), "w".into()])
}

fn sc_leg(field: &LocalField, d: usize, leg: &SupercuspidalLeg, name: &str) -> Result<PhiNModuleData> {
    let want = Ratio::new(1 - leg.weight, 2);
    let have = leg.mu.valuation()?;
    if have != want {
        return Err(Error::Precondition(format!("ord_p(μ_{name}) = {have}, expected {want}")));
    }
    let phi = diag2(field, leg.mu.clone(), leg.mu.clone());
    PhiNModuleData::constant(field, d, 1, &phi, &PMatrix::zeros(field, 2, 2), leg_filtration(field, d, 0, leg.weight - 1)?)?
        .with_labels(vec!["v".into(), "w".into()])
}

/// `D_{f'} ⊗ D_g ⊗ D_{h'} ⊗ t_{−1−r}` with `r = (k+l+m−6)/2`, over `d`
/// unramified components. Basis labels are `τ(1)τ(2)τ(3)t`.
pub fn build_dfgh(field: &LocalField, d: usize, f: &FLeg, g: &SupercuspidalLeg, h: &SupercuspidalLeg) -> Result<PhiNModuleData> {
    let (k, l, m) = (f.weight(), g.weight, h.weight);
    check_balanced(k, l, m)?;
    let r = (k + l + m - 6) / 2;
    let p = LocalFieldElement::from_int(field, field.p() as i64);
    let twist_phi = PMatrix::diagonal(field, &[p.pow_u((r + 1) as u64)]);
    let twist = PhiNModuleData::constant(
        field,
        d,
        1,
        &twist_phi,
        &PMatrix::zeros(field, 1, 1),
        Filtration::single_jump(field, d, (k - l - m) / 2),
    )?
    .with_labels(vec!["t".into()])?;
    f_leg(field, d, f)?
        .tensor(&sc_leg(field, d, g, "g")?)?
        .tensor(&sc_leg(field, d, h, "h")?)?
        .tensor(&twist)
}

/// `ord_p` of the φ-eigenvalue predicted for a basis vector with `τ(1) = first`.
pub fn predicted_valuation(f: &FLeg, first: char) -> Ratio<i64> {
    let k = f.weight();
    match (f, first) {
        (FLeg::Semistable { .. }, 'w') => Ratio::from_integer(-1),
        (FLeg::Semistable { .. }, _) => Ratio::from_integer(0),
        (_, 'v') => Ratio::new(-k, 2),
        _ => Ratio::new(k - 2, 2),
    }
}
