use num_integer::Integer;

use super::character::DirichletCharacter;
use crate::error::{Error, Result};
use crate::localfield::{LocalField, LocalFieldElement};

/// Truncated q-expansion `Σ_{n=0}^{N} a_n q^n` with modular metadata.
///
/// `q_precision = N` means every coefficient with index `≤ N` is known.
#[derive(Clone, Debug)]
pub struct QExpansion {
    field: LocalField,
    coeffs: Vec<LocalFieldElement>,
    pub weight: i64,
    pub level: u64,
    pub character: DirichletCharacter,
}

impl QExpansion {
    /// Series from `a_0, …, a_N`.
    pub fn new(coeffs: Vec<LocalFieldElement>, weight: i64, level: u64, character: DirichletCharacter) -> Result<Self> {
        let field = character.field().clone();
        if coeffs.is_empty() {
            return Err(Error::QPrecision { have: 0, need: 1 });
        }
        if coeffs.iter().any(|c| c.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        Ok(QExpansion {
            field,
            coeffs,
            weight,
            level,
            character,
        })
    }

    /// Cusp-form style constructor from `a_1, …, a_N` (with `a_0 = 0`).
    pub fn from_cusp_coeffs(field: &LocalField, a: &[LocalFieldElement], weight: i64, level: u64) -> Self {
        let mut coeffs = vec![LocalFieldElement::zero(field)];
        coeffs.extend(a.iter().cloned());
        QExpansion {
            field: field.clone(),
            coeffs,
            weight,
            level,
            character: DirichletCharacter::trivial(field, 1),
        }
    }

    /// Series from integer coefficients `a_0, …, a_N` with trivial character.
    pub fn from_ints(field: &LocalField, coeffs: &[i64], weight: i64, level: u64) -> Self {
        QExpansion {
            field: field.clone(),
            coeffs: coeffs.iter().map(|&c| LocalFieldElement::from_int(field, c)).collect(),
            weight,
            level,
            character: DirichletCharacter::trivial(field, 1),
        }
    }

    pub fn zero(field: &LocalField, qprec: usize, weight: i64, level: u64) -> Self {
        QExpansion {
            field: field.clone(),
            coeffs: vec![LocalFieldElement::zero(field); qprec + 1],
            weight,
            level,
            character: DirichletCharacter::trivial(field, 1),
        }
    }

    /// The weight-0 constant series 1.
    pub fn one(field: &LocalField, qprec: usize) -> Self {
        let mut s = Self::zero(field, qprec, 0, 1);
        s.coeffs[0] = LocalFieldElement::one(field);
        s
    }

    pub fn with_character(mut self, chi: DirichletCharacter) -> Self {
        self.character = chi;
        self
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn q_precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LocalFieldElement] {
        &self.coeffs
    }

    /// `a_n`; panics beyond the q-precision.
    pub fn a(&self, n: usize) -> &LocalFieldElement {
        &self.coeffs[n]
    }

    pub fn set(&mut self, n: usize, c: LocalFieldElement) {
        self.coeffs[n] = c;
    }

    /// Truncation to a smaller q-precision.
    pub fn truncate(&self, n: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(n + 1);
        s
    }

    fn p(&self) -> u64 {
        self.field.p()
    }

    /// `a_n = 0` for every `p | n` (including `n = 0`).
    pub fn is_depleted(&self) -> bool {
        let p = self.p() as usize;
        self.coeffs.iter().enumerate().step_by(1).all(|(n, c)| n % p != 0 || c.is_zero())
    }

    pub fn first_undepleted_index(&self) -> Option<usize> {
        let p = self.p() as usize;
        self.coeffs.iter().enumerate().find(|(n, c)| n % p == 0 && !c.is_zero()).map(|(n, _)| n)
    }

    pub fn u_p(&self) -> Result<Self> {
        let p = self.p() as usize;
        self.u_ell(p)
    }

    /// `a_n ↦ a_{nℓ}`.
    pub fn u_ell(&self, ell: usize) -> Result<Self> {
        let n = self.q_precision();
        if n < ell {
            return Err(Error::QPrecision { have: n, need: ell });
        }
        let m = n / ell;
        let coeffs = (0..=m).map(|i| self.coeffs[i * ell].clone()).collect();
        let level = if self.level % ell as u64 == 0 { self.level } else { self.level * ell as u64 };
        Ok(QExpansion {
            field: self.field.clone(),
            coeffs,
            weight: self.weight,
            level,
            character: self.character.clone(),
        })
    }

    pub fn v_p(&self) -> Self {
        self.v_ell(self.p() as usize)
    }

    /// `q ↦ q^ℓ`.
    pub fn v_ell(&self, ell: usize) -> Self {
        let n = self.q_precision();
        let mut coeffs = vec![LocalFieldElement::zero(&self.field); n * ell + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * ell] = c.clone();
        }
        QExpansion {
            field: self.field.clone(),
            coeffs,
            weight: self.weight,
            level: self.level * ell as u64,
            character: self.character.clone(),
        }
    }

    /// `(1 − V_p U_p) ξ`: zero out indices divisible by p.
    pub fn deplete(&self) -> Result<Self> {
        let p = self.p() as usize;
        if self.q_precision() < p {
            return Err(Error::QPrecision {
                have: self.q_precision(),
                need: p,
            });
        }
        let mut s = self.clone();
        for n in (0..s.coeffs.len()).step_by(p) {
            s.coeffs[n] = LocalFieldElement::zero_with_prec(&self.field, self.coeffs[n].precision());
        }
        if s.level % p as u64 != 0 {
            s.level *= p as u64;
        }
        Ok(s)
    }

    /// `d^t` with `d = q·d/dq`: `a_n ↦ n^t a_n`; for `t < 0` the input must be
    /// p-depleted and `n^t` is the inverse of a unit.
    pub fn serre_d(&self, t: i64) -> Result<Self> {
        if t < 0 {
            if let Some(n) = self.first_undepleted_index() {
                return Err(Error::NotDepleted(n));
            }
        }
        let mut s = self.clone();
        for (n, c) in s.coeffs.iter_mut().enumerate() {
            if c.is_zero() {
                continue;
            }
            let factor = LocalFieldElement::from_int(&self.field, n as i64).pow(t)?;
            *c = &*c * &factor;
        }
        if t > 0 && !s.coeffs[0].is_zero() {
            s.coeffs[0] = LocalFieldElement::zero(&self.field);
        }
        s.weight += 2 * t;
        Ok(s)
    }

    /// `a_n ↦ χ(n)·a_n`; the character becomes `χ_ξ·χ²` at level `lcm(N, m²)`.
    pub fn twist(&self, chi: &DirichletCharacter) -> Result<Self> {
        if chi.field() != &self.field {
            return Err(Error::Character("character values live in a different field".into()));
        }
        let mut s = self.clone();
        for (n, c) in s.coeffs.iter_mut().enumerate() {
            *c = &*c * &chi.value(n as i64);
        }
        let m = chi.modulus();
        s.level = self.level.lcm(&(m * m));
        s.character = self.character.mul(&chi.pow(2)?)?;
        Ok(s)
    }

    /// Cauchy product. Only the constant series may carry a nonzero `a_0`
    /// meaningfully; the product is computed on all indices.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.q_precision().min(other.q_precision());
        let mut coeffs = vec![LocalFieldElement::zero(&self.field); n + 1];
        for i in 0..=n {
            let a = &self.coeffs[i];
            if a.is_zero() && a.precision() >= self.field.cap_pi() {
                continue;
            }
            for j in 0..=(n - i) {
                let b = &other.coeffs[j];
                if b.is_zero() && b.precision() >= self.field.cap_pi() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(QExpansion {
            field: self.field.clone(),
            coeffs,
            weight: self.weight + other.weight,
            level: self.level.lcm(&other.level),
            character: self.character.mul(&other.character)?,
        })
    }

    /// `T_ℓ` for a prime `ℓ ∤ level`.
    pub fn hecke_t_ell(&self, ell: u64) -> Result<Self> {
        if self.level % ell == 0 {
            return Err(Error::PrimeDividesLevel(ell));
        }
        let l = ell as usize;
        let n = self.q_precision();
        if n < l {
            return Err(Error::QPrecision { have: n, need: l });
        }
        let m = n / l;
        let chi_l = self.character.value(ell as i64);
        let scale = &chi_l * &LocalFieldElement::from_int(&self.field, ell as i64).pow_u((self.weight - 1).max(0) as u64);
        let coeffs = (0..=m)
            .map(|i| {
                let mut c = self.coeffs[i * l].clone();
                if i % l == 0 {
                    c = &c + &(&scale * &self.coeffs[i / l]);
                }
                c
            })
            .collect();
        Ok(QExpansion {
            field: self.field.clone(),
            coeffs,
            weight: self.weight,
            level: self.level,
            character: self.character.clone(),
        })
    }

    /// Diamond operator on a series with nebentypus: multiplication by `χ(d)`.
    pub fn diamond(&self, d: u64) -> Self {
        self.scale(&self.character.value(d as i64))
    }

    /// `φ_∞ = p^{ν−1}·⟨p;1⟩·V_p`, with `ν` the weight and the diamond value supplied.
    pub fn phi_infty(&self, diamond_value: &LocalFieldElement) -> Result<Self> {
        if diamond_value.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let p = LocalFieldElement::from_int(&self.field, self.p() as i64);
        let factor = &p.pow(self.weight - 1)? * diamond_value;
        Ok(self.v_p().scale(&factor))
    }

    pub fn scale(&self, c: &LocalFieldElement) -> Self {
        let mut s = self.clone();
        for x in s.coeffs.iter_mut() {
            *x = &*x * c;
        }
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.q_precision().min(other.q_precision());
        let mut s = self.truncate(n);
        for i in 0..=n {
            s.coeffs[i] = &s.coeffs[i] + &other.coeffs[i];
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LocalFieldElement::from_int(&self.field, -1)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficientwise equality on the common q-precision.
    pub fn eq_at_precision(&self, other: &Self) -> bool {
        let n = self.q_precision().min(other.q_precision());
        (0..=n).all(|i| self.coeffs[i].eq_at_precision(&other.coeffs[i]))
    }

    /// Coefficientwise congruence modulo `p^k` on the common q-precision.
    pub fn congruent_mod_p(&self, other: &Self, k: i64) -> bool {
        let n = self.q_precision().min(other.q_precision());
        (0..=n).all(|i| self.coeffs[i].congruent_mod_p(&other.coeffs[i], k))
    }

    /// Minimal valuation (uniformizer units) over nonzero coefficients.
    pub fn min_val_pi(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.val_pi()).min()
    }
}
