use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::localfield::LocalFieldElement;
use crate::qexp::QExpansion;

/// Coefficients of formal sections at the cusp: an additive group with
/// rational scalars and the operator `d = q·d/dq`.
pub trait CuspCoeff: Clone {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &BigRational) -> Result<Self>;
    /// `d^n`; negative `n` needs an inverse of d.
    fn d_pow(&self, n: i64) -> Result<Self>;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one())?)
    }
}

impl CuspCoeff for QExpansion {
    fn zero_like(&self) -> Self {
        QExpansion::zero(self.field(), self.q_precision(), self.weight, self.level)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        QExpansion::add(self, other)
    }
    fn scale(&self, c: &BigRational) -> Result<Self> {
        Ok(QExpansion::scale(self, &LocalFieldElement::from_ratio(self.field(), c)?))
    }
    fn d_pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(self.clone());
        }
        self.serre_d(n)
    }
    fn is_zero(&self) -> bool {
        QExpansion::is_zero(self)
    }
}

/// Which generic series a symbolic expression involves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factors {
    /// Linear in `ξ₂`: terms `d^a ξ₂`.
    Left,
    /// Linear in `ξ₃`: terms `d^b ξ₃`.
    Right,
    /// Bilinear: terms `d^a ξ₂ · d^b ξ₃`.
    Both,
}

/// Rational combination of derivatives of two generic depleted series.
/// Keys are `(a, b)`; the unused index is 0 for linear expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct Sym {
    pub factors: Factors,
    pub terms: BTreeMap<(i64, i64), BigRational>,
}

impl Sym {
    pub fn left() -> Self {
        Self::monomial(Factors::Left, 0, 0)
    }

    pub fn right() -> Self {
        Self::monomial(Factors::Right, 0, 0)
    }

    pub fn monomial(factors: Factors, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((a, b), BigRational::one());
        Sym { factors, terms }
    }

    pub fn zero(factors: Factors) -> Self {
        Sym {
            factors,
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, key: (i64, i64), c: &BigRational) {
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `(Σ c_a d^aξ₂)·(Σ c_b d^bξ₃)`.
    pub fn product(left: &Sym, right: &Sym) -> Result<Sym> {
        if left.factors != Factors::Left || right.factors != Factors::Right {
            return Err(Error::Structural("products pair a ξ₂-expression with a ξ₃-expression".into()));
        }
        let mut out = Sym::zero(Factors::Both);
        for ((a, _), ca) in &left.terms {
            for ((_, b), cb) in &right.terms {
                out.add_term((*a, *b), &(ca * cb));
            }
        }
        Ok(out)
    }

    fn d_once(&self) -> Sym {
        let mut out = Sym::zero(self.factors);
        for ((a, b), c) in &self.terms {
            match self.factors {
                Factors::Left => out.add_term((a + 1, *b), c),
                Factors::Right => out.add_term((*a, b + 1), c),
                Factors::Both => {
                    out.add_term((a + 1, *b), c);
                    out.add_term((*a, b + 1), c);
                }
            }
        }
        out
    }

    /// Normal form modulo the image of d: `d^aξ₂·d^bξ₃ ≡ (−1)^b d^{a+b}ξ₂·ξ₃`.
    /// Returns the normal form `{n ↦ c_n}` (terms `c_n·d^nξ₂·ξ₃`) and a
    /// bilinear `H` with `self = normal form + d(H)`.
    pub fn integrate_by_parts(&self) -> Result<(BTreeMap<i64, BigRational>, Sym)> {
        if self.factors != Factors::Both {
            return Err(Error::Structural("integration by parts needs a bilinear expression".into()));
        }
        let mut normal: BTreeMap<i64, BigRational> = BTreeMap::new();
        let mut h = Sym::zero(Factors::Both);
        for ((a, b), c) in &self.terms {
            // d^aξ₂·d^bξ₃ = Σ_{i<b} (−1)^i d(d^{a+i}ξ₂·d^{b−1−i}ξ₃) + (−1)^b d^{a+b}ξ₂·ξ₃
            for i in 0..*b {
                let s = if i % 2 == 0 { c.clone() } else { -c.clone() };
                h.add_term((a + i, b - 1 - i), &s);
            }
            let s = if b % 2 == 0 { c.clone() } else { -c.clone() };
            let e = normal.entry(a + b).or_insert_with(BigRational::zero);
            *e += s;
        }
        normal.retain(|_, c| !c.is_zero());
        Ok((normal, h))
    }

    /// Concrete q-expansion for given series `ξ₂`, `ξ₃`.
    pub fn evaluate(&self, xi2: &QExpansion, xi3: &QExpansion) -> Result<QExpansion> {
        let mut acc: Option<QExpansion> = None;
        for ((a, b), c) in &self.terms {
            let t = match self.factors {
                Factors::Left => xi2.d_pow(*a)?,
                Factors::Right => xi3.d_pow(*b)?,
                Factors::Both => xi2.d_pow(*a)?.multiply(&xi3.d_pow(*b)?)?,
            };
            let t = CuspCoeff::scale(&t, c)?;
            acc = Some(match acc {
                None => t,
                Some(s) => CuspCoeff::add(&s, &t)?,
            });
        }
        match acc {
            Some(s) => Ok(s),
            None => {
                let n = xi2.q_precision().min(xi3.q_precision());
                Ok(QExpansion::zero(xi2.field(), n, 0, 1))
            }
        }
    }
}

impl CuspCoeff for Sym {
    fn zero_like(&self) -> Self {
        Sym::zero(self.factors)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        if self.factors != other.factors {
            return Err(Error::Structural("adding symbolic expressions of different kinds".into()));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        Ok(out)
    }
    fn scale(&self, c: &BigRational) -> Result<Self> {
        let mut out = Sym::zero(self.factors);
        for (k, x) in &self.terms {
            out.add_term(*k, &(x * c));
        }
        Ok(out)
    }
    fn d_pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            if self.factors == Factors::Both {
                return Err(Error::Unsupported("d^{-1} of a product".into()));
            }
            let mut out = Sym::zero(self.factors);
            for ((a, b), c) in &self.terms {
                let key = if self.factors == Factors::Left { (a + n, *b) } else { (*a, b + n) };
                out.add_term(key, c);
            }
            return Ok(out);
        }
        let mut out = self.clone();
        for _ in 0..n {
            out = out.d_once();
        }
        Ok(out)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
