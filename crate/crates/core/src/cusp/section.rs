use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::CuspCoeff;
use crate::det::{monomial_word, pairing_r, symplectic_base, SymPowerElement};
use crate::error::{Error, Result};

/// `Σ_j c_j·ω^{r−j}η^j` with coefficients in `C`.
#[derive(Clone, Debug)]
pub struct FormalSection<C> {
    pub r: usize,
    pub comps: Vec<C>,
}

/// `(Σ_j c_j·ω^{r−j}η^j) ⊗ dq/q`.
#[derive(Clone, Debug)]
pub struct FormalOneForm<C>(pub FormalSection<C>);

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl<C: CuspCoeff> FormalSection<C> {
    pub fn new(r: usize, comps: Vec<C>) -> Result<Self> {
        if comps.len() != r + 1 {
            return Err(Error::Dimension(format!("{} components for degree {r}", comps.len())));
        }
        Ok(FormalSection { r, comps })
    }

    /// `c·ω^{r−j}η^j`.
    pub fn single(r: usize, j: usize, c: C) -> Self {
        let mut comps = vec![c.zero_like(); r + 1];
        comps[j] = c;
        FormalSection { r, comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }
}

/// `∇(c·ω^aη^b) = d(c)·ω^aη^b + a·c·ω^{a−1}η^{b+1}`, all `⊗ dq/q`.
pub fn nabla<C: CuspCoeff>(s: &FormalSection<C>) -> Result<FormalOneForm<C>> {
    let r = s.r;
    let mut out: Vec<C> = s.comps.iter().map(|c| c.d_pow(1)).collect::<Result<_>>()?;
    for j in 0..r {
        let t = s.comps[j].scale(&rat((r - j) as i64))?;
        out[j + 1] = out[j + 1].add(&t)?;
    }
    Ok(FormalOneForm(FormalSection { r, comps: out }))
}

/// `F♭ = Σ_{j=0}^{ν−2} (−1)^j j! C(ν−2, j)·d^{−1−j}ξ·ω^{ν−2−j}η^j`, whose
/// `∇` is `ξ·ω^{ν−2} ⊗ dq/q`.
pub fn primitive_flat<C: CuspCoeff>(xi: &C, nu: usize) -> Result<FormalSection<C>> {
    if nu < 2 {
        return Err(Error::Weights(format!("weight {nu} is below 2")));
    }
    let r = nu - 2;
    let comps = (0..=r)
        .map(|j| {
            let c = BigRational::from_integer(factorial(j) * binomial(r, j));
            let c = if j % 2 == 1 { -c } else { c };
            xi.d_pow(-1 - j as i64)?.scale(&c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FormalSection { r, comps })
}

/// Eliminates the η-components from the top down by subtracting
/// `∇(c_j/(r−j+1)·ω^{r−j+1}η^{j−1})`, and returns the coefficient of the
/// remaining `ω^r ⊗ dq/q`.
///
/// The result is a representative modulo `d^{r+1}`: for a section
/// `s = Σ s_j ω^{r−j}η^j`, `reduce(∇s) = (−1)^r/r!·d^{r+1}(s_r)`.
pub fn reduce_mod_nabla<C: CuspCoeff>(form: &FormalOneForm<C>) -> Result<C> {
    let s = &form.0;
    let r = s.r;
    let mut comps = s.comps.clone();
    for j in (1..=r).rev() {
        let c = comps[j].clone();
        if c.is_zero() {
            continue;
        }
        let scale = BigRational::new(BigInt::one(), BigInt::from(r - j + 1));
        comps[j - 1] = comps[j - 1].sub(&c.d_pow(1)?.scale(&scale)?)?;
        comps[j] = c.zero_like();
    }
    Ok(comps.swap_remove(0))
}

/// Reads `Det` as a tensor in `H_{r₁} ⊗ H_{r₂} ⊗ H_{r₃}` (the monomial
/// `v₁^a v₂^b` of a variable pair is `ω^aη^b`) and pairs legs 2 and 3 with
/// `s₂` and `s₃` through `(leg, section)_{r_i}`, leaving a section of degree `r₁`.
pub fn contract_upsilon<A, B, C, F>(
    det: &SymPowerElement<BigRational>,
    s2: &FormalSection<A>,
    s3: &FormalSection<B>,
    zero: C,
    mul: F,
) -> Result<FormalSection<C>>
where
    A: CuspCoeff,
    B: CuspCoeff,
    C: CuspCoeff,
    F: Fn(&A, &B) -> Result<C>,
{
    let [r1, r2, r3] = det.degrees().map(|x| x as usize);
    if s2.r != r2 || s3.r != r3 {
        return Err(Error::Dimension(format!(
            "sections of degrees ({}, {}) against Det of tri-degree ({r1}, {r2}, {r3})",
            s2.r, s3.r
        )));
    }
    let one = BigRational::one();
    let base = symplectic_base(&one);
    let mut out = vec![zero.clone(); r1 + 1];
    for (m, c) in det.terms() {
        let (a2, b2) = (m[2] as usize, m[3] as usize);
        let (a3, b3) = (m[4] as usize, m[5] as usize);
        // (ω^{a}η^{b}, ω^{r−j}η^{j}) needs j = a
        let j2 = a2;
        let j3 = a3;
        let v2 = pairing_r(&monomial_word(r2, b2), &monomial_word(r2, j2), &base)?;
        let v3 = pairing_r(&monomial_word(r3, b3), &monomial_word(r3, j3), &base)?;
        let coef = c * &v2 * &v3;
        if coef.is_zero() || s2.comps[j2].is_zero() || s3.comps[j3].is_zero() {
            continue;
        }
        let t = mul(&s2.comps[j2], &s3.comps[j3])?.scale(&coef)?;
        let j1 = m[1] as usize;
        out[j1] = out[j1].add(&t)?;
    }
    Ok(FormalSection { r: r1, comps: out })
}
