use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{ceil_div, LocalField};
use crate::error::{Error, Result};

/// An element of a [`LocalField`] known modulo a fixed power of the uniformizer.
///
/// The value is `p^shift · Σ c_{i,j} π^i θ^j` and is known modulo `π^prec`.
/// Coordinates are kept reduced, and `shift` is chosen so that some coordinate
/// is prime to `p` (zero is stored with `shift = 0` and empty digits).
#[derive(Clone)]
pub struct LocalFieldElement {
    field: LocalField,
    shift: i64,
    coords: Vec<BigInt>,
    prec: i64,
}

impl fmt::Debug for LocalFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Display for LocalFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl LocalFieldElement {
    pub(crate) fn from_parts(field: &LocalField, shift: i64, coords: Vec<BigInt>, prec: i64) -> Self {
        let mut x = LocalFieldElement {
            field: field.clone(),
            shift,
            coords,
            prec,
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        let d = &self.field.0;
        let (e, f) = (d.e, d.f);
        self.prec = self.prec.min(self.field.cap_pi());
        debug_assert_eq!(self.coords.len(), e * f);
        for i in 0..e {
            let k = ceil_div(self.prec - i as i64, e as i64) - self.shift;
            for j in 0..f {
                let c = &mut self.coords[i * f + j];
                if c.is_zero() {
                    continue;
                }
                *c = d.modp(c, k);
            }
        }
        match d.zq_val(&self.coords) {
            None => self.shift = 0,
            Some(v) if v > 0 => {
                let m = d.ppow(v);
                for c in self.coords.iter_mut() {
                    *c = &*c / &m;
                }
                self.shift += v;
            }
            Some(_) => {}
        }
    }

    pub fn zero(field: &LocalField) -> Self {
        Self::zero_with_prec(field, field.cap_pi())
    }

    /// Zero known modulo `π^prec`.
    pub fn zero_with_prec(field: &LocalField, prec: i64) -> Self {
        let n = field.degree();
        LocalFieldElement {
            field: field.clone(),
            shift: 0,
            coords: vec![BigInt::zero(); n],
            prec: prec.min(field.cap_pi()),
        }
    }

    pub fn one(field: &LocalField) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &LocalField, n: i64) -> Self {
        Self::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: &LocalField, n: &BigInt) -> Self {
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[0] = n.clone();
        Self::from_parts(field, 0, coords, field.cap_pi())
    }

    /// Rational number embedded in the field; the denominator may be divisible by p.
    pub fn from_ratio(field: &LocalField, r: &BigRational) -> Result<Self> {
        let num = Self::from_bigint(field, r.numer());
        let den = Self::from_bigint(field, r.denom());
        num.div(&den)
    }

    /// Element with integral coordinates in the basis `π^i θ^j` (index `i·f + j`),
    /// known modulo `π^prec`.
    pub fn from_coords(field: &LocalField, coords: &[BigInt], prec: i64) -> Result<Self> {
        if coords.len() > field.degree() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a field of degree {}",
                coords.len(),
                field.degree()
            )));
        }
        let mut c = coords.to_vec();
        c.resize(field.degree(), BigInt::zero());
        Ok(Self::from_parts(field, 0, c, prec))
    }

    /// Like [`from_coords`](Self::from_coords) with the value scaled by `p^shift`.
    pub fn from_scaled_coords(field: &LocalField, shift: i64, coords: &[BigInt], prec: i64) -> Result<Self> {
        if coords.len() > field.degree() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a field of degree {}",
                coords.len(),
                field.degree()
            )));
        }
        let mut c = coords.to_vec();
        c.resize(field.degree(), BigInt::zero());
        Ok(Self::from_parts(field, shift, c, prec))
    }

    /// The uniformizer `π` (equal to `p` for unramified fields).
    pub fn uniformizer(field: &LocalField) -> Self {
        if field.ram_index() == 1 {
            return Self::from_int(field, field.p() as i64);
        }
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[field.unram_degree()] = BigInt::one();
        Self::from_parts(field, 0, coords, field.cap_pi())
    }

    /// The generator `θ` of the unramified part (a unit; equal to 1 when f = 1).
    pub fn theta(field: &LocalField) -> Self {
        let mut coords = vec![BigInt::zero(); field.degree()];
        if field.unram_degree() == 1 {
            coords[0] = BigInt::one();
        } else {
            coords[1] = BigInt::one();
        }
        Self::from_parts(field, 0, coords, field.cap_pi())
    }

    /// Basis element `π^i θ^j`.
    pub fn basis_element(field: &LocalField, index: usize) -> Self {
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[index] = BigInt::one();
        Self::from_parts(field, 0, coords, field.cap_pi())
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    /// Absolute precision in powers of the uniformizer.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Absolute precision in p-adic digits (`prec / e`).
    pub fn precision_p(&self) -> Ratio<i64> {
        Ratio::new(self.prec, self.field.ram_index() as i64)
    }

    /// Lowers the known precision (never raises it).
    pub fn with_precision(&self, prec: i64) -> Self {
        let mut x = self.clone();
        x.prec = x.prec.min(prec);
        x.normalize();
        x
    }

    /// Declares the stored digits exact up to the cap; used for data known exactly.
    pub fn lift_to_cap(&self) -> Self {
        let mut x = self.clone();
        x.prec = self.field.cap_pi();
        x.normalize();
        x
    }

    /// Transports the element to another precision cap of the same field.
    pub fn change_field(&self, target: &LocalField) -> Result<Self> {
        let a = &self.field;
        if a.p() != target.p()
            || a.unram_degree() != target.unram_degree()
            || a.ram_index() != target.ram_index()
            || a.modulus() != target.modulus()
            || a.eisenstein() != target.eisenstein()
        {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_parts(target, self.shift, self.coords.clone(), self.prec))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Valuation in units of the uniformizer, `None` if zero to precision.
    pub fn val_pi(&self) -> Option<i64> {
        let d = &self.field.0;
        let (e, f) = (d.e, d.f);
        let mut best: Option<i64> = None;
        for i in 0..e {
            if let Some(v) = d.zq_val(&self.coords[i * f..(i + 1) * f]) {
                let w = e as i64 * (self.shift + v) + i as i64;
                best = Some(best.map_or(w, |b: i64| b.min(w)));
            }
        }
        best
    }

    /// `val_pi`, or the precision when the element is zero to precision.
    pub fn val_pi_or_prec(&self) -> i64 {
        self.val_pi().unwrap_or(self.prec)
    }

    /// p-adic valuation normalized by `val(p) = 1`.
    pub fn valuation(&self) -> Result<Ratio<i64>> {
        match self.val_pi() {
            Some(v) => Ok(Ratio::new(v, self.field.ram_index() as i64)),
            None => Err(Error::IndeterminateValuation(format!("{}", self.precision_p()))),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.val_pi() == Some(0)
    }

    /// Coordinates of the value itself (as rationals `p^shift · c`) in the basis `π^i θ^j`.
    pub fn coordinates(&self) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|c| {
                if self.shift >= 0 {
                    BigRational::from_integer(c * self.field.0.ppow(self.shift))
                } else {
                    BigRational::new(c.clone(), self.field.0.ppow(-self.shift))
                }
            })
            .collect()
    }

    pub(crate) fn raw_coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub(crate) fn shift(&self) -> i64 {
        self.shift
    }

    /// Value as a rational number, for elements of `Q_p` with integral digits.
    pub fn to_ratio(&self) -> Option<BigRational> {
        if self.field.degree() != 1 && self.coords[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.coordinates()[0].clone())
    }

    /// Integer representative for elements of `Z_p`, reduced modulo the precision.
    pub fn to_bigint(&self) -> Option<BigInt> {
        let r = self.to_ratio()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Residue of an integral element, as coordinates of `F_q` in the θ-basis.
    pub fn residue(&self) -> Result<Vec<u64>> {
        let v = self.val_pi_or_prec();
        if v < 0 {
            return Err(Error::Precondition("residue of a non-integral element".into()));
        }
        let d = &self.field.0;
        if self.prec <= 0 {
            return Err(Error::PrecisionExhausted("residue needs one digit".into()));
        }
        let f = d.f;
        let out = (0..f)
            .map(|j| {
                if self.shift > 0 {
                    0
                } else {
                    self.coords[j].mod_floor(&d.pb).to_u64().unwrap()
                }
            })
            .collect();
        Ok(out)
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(self.field == other.field, "operands belong to different fields");
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.add_impl(other, false))
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        self.assert_same_field(other);
        let d = &self.field.0;
        let prec = self.prec.min(other.prec);
        let s = self.shift.min(other.shift);
        let sa = d.ppow(self.shift - s);
        let sb = d.ppow(other.shift - s);
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| {
                let x = a * &sa;
                let y = b * &sb;
                if negate_other {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        Self::from_parts(&self.field, s, coords, prec)
    }

    pub(crate) fn mul_coords(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = &self.field.0;
        let (e, f) = (d.e, d.f);
        if e == 1 {
            return d.zq_mul(a, b);
        }
        let mut prod: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); f]; 2 * e - 1];
        for i in 0..e {
            let ai = &a[i * f..(i + 1) * f];
            if ai.iter().all(|x| x.is_zero()) {
                continue;
            }
            for k in 0..e {
                let bk = &b[k * f..(k + 1) * f];
                if bk.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let t = d.zq_mul(ai, bk);
                for (dst, src) in prod[i + k].iter_mut().zip(t) {
                    *dst += src;
                }
            }
        }
        let eis = d.eisenstein.as_ref().expect("ramified field has Eisenstein data");
        for t in (e..2 * e - 1).rev() {
            let lead = std::mem::replace(&mut prod[t], vec![BigInt::zero(); f]);
            if lead.iter().all(|x| x.is_zero()) {
                continue;
            }
            for (k, ek) in eis.iter().enumerate() {
                let c = d.zq_mul(&lead, ek);
                for (dst, src) in prod[t - e + k].iter_mut().zip(c) {
                    *dst -= src;
                }
            }
        }
        prod.truncate(e);
        prod.into_iter().flatten().collect()
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let prec = (self.prec + other.val_pi_or_prec()).min(other.prec + self.val_pi_or_prec());
        if self.is_zero() || other.is_zero() {
            return Self::zero_with_prec(&self.field, prec);
        }
        let coords = self.mul_coords(&self.coords, &other.coords);
        Self::from_parts(&self.field, self.shift + other.shift, coords, prec)
    }

    /// Multiplies by `p^k` exactly (k may be negative).
    pub fn mul_p_pow(&self, k: i64) -> Self {
        let e = self.field.ram_index() as i64;
        let mut x = self.clone();
        x.shift += k;
        x.prec += k * e;
        x.normalize();
        if self.is_zero() {
            x.shift = 0;
        }
        x
    }

    /// `π^{-1} = ρ/p` where `ρ = -(π^{e-1} + E_{e-1}π^{e-2} + … + E_1)·(E_0/p)^{-1}`.
    fn rho(&self) -> Vec<BigInt> {
        let d = &self.field.0;
        let (e, f) = (d.e, d.f);
        let eis = d.eisenstein.as_ref().unwrap();
        let mut poly = vec![BigInt::zero(); e * f];
        for i in 0..e - 1 {
            for j in 0..f {
                poly[i * f + j] = -eis[i + 1][j].clone();
            }
        }
        poly[(e - 1) * f] -= BigInt::one();
        let inv = d.e0_unit_inv.as_ref().unwrap();
        let mut inv_full = vec![BigInt::zero(); e * f];
        inv_full[..f].clone_from_slice(inv);
        self.mul_coords(&poly, &inv_full)
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.val_pi().ok_or(Error::DivisionByZero)?;
        let d = &self.field.0;
        let e = d.e as i64;
        let a = v.div_euclid(e);
        let b = v.rem_euclid(e);
        // y = x · ρ^b / p^(a+b) is a unit
        let mut coords = self.coords.clone();
        if b > 0 {
            let rho = self.rho();
            for _ in 0..b {
                coords = self.mul_coords(&coords, &rho);
            }
        }
        let mut y = LocalFieldElement {
            field: self.field.clone(),
            shift: self.shift - a - b,
            coords,
            prec: self.field.cap_pi(),
        };
        y.normalize();
        debug_assert_eq!(y.val_pi(), Some(0));
        // relative precision of x is prec - v; the unit inverse keeps it
        let rel = self.prec - v;
        y.prec = rel;
        y.normalize();
        let w = y.unit_inverse(rel)?;
        // x^{-1} = y^{-1} · ρ^b / p^(a+b)
        let mut coords = w.coords.clone();
        if b > 0 {
            let rho = self.rho();
            for _ in 0..b {
                coords = self.mul_coords(&coords, &rho);
            }
        }
        let out = Self::from_parts(&self.field, w.shift - a - b, coords, rel - v);
        Ok(out)
    }

    fn unit_inverse(&self, rel: i64) -> Result<Self> {
        let d = &self.field.0;
        let f = d.f;
        if rel <= 0 {
            return Err(Error::PrecisionExhausted("inverse of an element with no relative precision".into()));
        }
        let r0 = d.zq_unit_inverse(&self.coords[..f], 1);
        let mut c0 = vec![BigInt::zero(); self.field.degree()];
        c0[..f].clone_from_slice(&r0);
        let mut w = Self::from_parts(&self.field, 0, c0, self.field.cap_pi());
        let two = Self::from_int(&self.field, 2);
        let exact = self.lift_to_cap();
        let mut correct = 1i64;
        while correct < rel {
            w = &w * &(&two - &(&exact * &w));
            correct *= 2;
        }
        Ok(w.with_precision(rel))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    pub fn pow_u(&self, n: u64) -> Self {
        self.pow(n as i64).expect("non-negative powers always exist")
    }

    /// Arithmetic Frobenius on an unramified field.
    pub fn frobenius(&self) -> Result<Self> {
        let d = &self.field.0;
        if d.e != 1 {
            return Err(Error::NotUnramified);
        }
        if d.f == 1 {
            return Ok(self.clone());
        }
        let f = d.f;
        let mut acc = vec![BigInt::zero(); f];
        let mut power = vec![BigInt::zero(); f];
        power[0] = BigInt::one();
        for j in 0..f {
            if !self.coords[j].is_zero() {
                for (a, b) in acc.iter_mut().zip(power.iter()) {
                    *a += &self.coords[j] * b;
                }
            }
            power = d.zq_mul(&power, &d.frobenius);
            d.zq_reduce(&mut power, d.cap + super::field::GUARD + self.shift.abs());
        }
        // σ(θ) is only known to cap + GUARD digits
        let prec = self.prec.min((d.cap + super::field::GUARD + self.shift).max(self.shift));
        Ok(Self::from_parts(&self.field, self.shift, acc, prec))
    }

    /// `σ^k`.
    pub fn frobenius_pow(&self, k: usize) -> Result<Self> {
        let mut x = self.clone();
        for _ in 0..k {
            x = x.frobenius()?;
        }
        Ok(x)
    }

    /// The (q−1)-th root of unity reducing to the residue with θ-coordinates `residue`.
    pub fn teichmuller(field: &LocalField, residue: &[u64]) -> Result<Self> {
        let p = field.p();
        if residue.iter().all(|&c| c % p == 0) {
            return Err(Error::TeichmullerOfZero);
        }
        let coords: Vec<BigInt> = residue.iter().map(|&c| BigInt::from(c % p)).collect();
        let mut x = Self::from_coords(field, &coords, field.cap_pi())?;
        let q = field.residue_size();
        let one = Self::one(field);
        let qm1 = Self::from_int(field, (q - 1) as i64);
        let mut correct = 1i64;
        let target = field.cap_pi();
        while correct < target {
            let xq2 = x.pow_u(q - 2);
            let num = &(&xq2 * &x) - &one;
            let den = &qm1 * &xq2;
            x = &x - &num.div(&den)?;
            x = x.lift_to_cap();
            correct *= 2;
        }
        Ok(x.lift_to_cap())
    }

    /// Teichmüller lift of an integer residue mod p.
    pub fn teichmuller_int(field: &LocalField, a: i64) -> Result<Self> {
        let p = field.p() as i64;
        let mut r = vec![0u64; field.unram_degree()];
        r[0] = a.rem_euclid(p) as u64;
        Self::teichmuller(field, &r)
    }

    /// Equality as p-adic numbers to the smaller of the two precisions.
    pub fn eq_at_precision(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }

    /// Agreement modulo `p^k` (digits).
    pub fn congruent_mod_p(&self, other: &Self, k: i64) -> bool {
        let diff = self - other;
        let e = self.field.ram_index() as i64;
        diff.val_pi().map_or(true, |v| v >= k * e)
    }

    pub fn is_integral(&self) -> bool {
        self.val_pi().map_or(true, |v| v >= 0)
    }

    /// Sum of a slice.
    pub fn sum<'a>(field: &LocalField, items: impl IntoIterator<Item = &'a LocalFieldElement>) -> Self {
        items.into_iter().fold(Self::zero(field), |acc, x| &acc + x)
    }

    /// Integer multiple.
    pub fn scale_int(&self, n: i64) -> Self {
        self * &Self::from_int(&self.field, n)
    }

    pub fn abs_coordinate_bound(&self) -> Option<BigInt> {
        self.coords.iter().map(|c| c.abs()).max()
    }
}

impl PartialEq for LocalFieldElement {
    /// Representation equality: same field, same digits, same precision.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.prec == other.prec && self.shift == other.shift && self.coords == other.coords
    }
}

impl<'a> Add<&'a LocalFieldElement> for &'a LocalFieldElement {
    type Output = LocalFieldElement;
    fn add(self, rhs: &LocalFieldElement) -> LocalFieldElement {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a LocalFieldElement> for &'a LocalFieldElement {
    type Output = LocalFieldElement;
    fn sub(self, rhs: &LocalFieldElement) -> LocalFieldElement {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a LocalFieldElement> for &'a LocalFieldElement {
    type Output = LocalFieldElement;
    fn mul(self, rhs: &LocalFieldElement) -> LocalFieldElement {
        self.mul_impl(rhs)
    }
}

impl Neg for &LocalFieldElement {
    type Output = LocalFieldElement;
    fn neg(self) -> LocalFieldElement {
        let coords = self.coords.iter().map(|c| -c).collect();
        LocalFieldElement::from_parts(&self.field, self.shift, coords, self.prec)
    }
}

impl Add for LocalFieldElement {
    type Output = LocalFieldElement;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}
impl Sub for LocalFieldElement {
    type Output = LocalFieldElement;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}
impl Mul for LocalFieldElement {
    type Output = LocalFieldElement;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}
impl Neg for LocalFieldElement {
    type Output = LocalFieldElement;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::EisensteinPoly;

    fn q5() -> LocalField {
        LocalField::qp(5, 20).unwrap()
    }

    #[test]
    fn valuation_of_p_is_one() {
        let k = q5();
        let p = LocalFieldElement::from_int(&k, 5);
        assert_eq!(p.valuation().unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn zero_has_indeterminate_valuation() {
        let k = q5();
        let z = LocalFieldElement::zero(&k);
        assert!(matches!(z.valuation(), Err(Error::IndeterminateValuation(_))));
    }

    #[test]
    fn inverse_of_three_in_q5() {
        let k = q5();
        let three = LocalFieldElement::from_int(&k, 3);
        let inv = three.inv().unwrap();
        let one = &three * &inv;
        assert!(one.eq_at_precision(&LocalFieldElement::one(&k)));
        assert_eq!(inv.precision(), 20);
    }

    #[test]
    fn dividing_by_p_costs_a_digit_of_precision() {
        let k = q5();
        let x = LocalFieldElement::from_int(&k, 7);
        let p = LocalFieldElement::from_int(&k, 5);
        let y = x.div(&p).unwrap();
        assert_eq!(y.valuation().unwrap(), Ratio::from_integer(-1));
        assert_eq!(y.precision(), 18);
    }

    #[test]
    fn ramified_uniformizer_has_half_valuation() {
        // π^2 = 5·2 over Q_25
        let k = LocalField::new(5, 2, Some(EisensteinPoly::from_integers(&[-10, 0])), 12).unwrap();
        let pi = LocalFieldElement::uniformizer(&k);
        assert_eq!(pi.valuation().unwrap(), Ratio::new(1, 2));
        let sq = &pi * &pi;
        assert!(sq.eq_at_precision(&LocalFieldElement::from_int(&k, 10)));
        let inv = pi.inv().unwrap();
        assert!((&inv * &pi).eq_at_precision(&LocalFieldElement::one(&k)));
        assert_eq!(inv.valuation().unwrap(), Ratio::new(-1, 2));
    }

    #[test]
    fn teichmuller_of_minus_one() {
        let k = LocalField::qp(7, 15).unwrap();
        let t = LocalFieldElement::teichmuller_int(&k, -1).unwrap();
        assert!(t.eq_at_precision(&LocalFieldElement::from_int(&k, -1)));
    }

    #[test]
    fn teichmuller_of_three_mod_seven() {
        let k = LocalField::qp(7, 15).unwrap();
        let t = LocalFieldElement::teichmuller_int(&k, 3).unwrap();
        assert!(t.pow_u(6).eq_at_precision(&LocalFieldElement::one(&k)));
        assert_eq!(t.residue().unwrap(), vec![3]);
        // oracle: iterate x -> x^7, which converges to the same root
        let mut x = LocalFieldElement::from_int(&k, 3);
        for _ in 0..16 {
            x = x.pow_u(7);
        }
        assert!(x.eq_at_precision(&t));
    }

    #[test]
    fn frobenius_has_order_f() {
        let k = LocalField::unramified(3, 2, 10).unwrap();
        let th = LocalFieldElement::theta(&k);
        let s = th.frobenius().unwrap();
        assert!(!s.eq_at_precision(&th));
        assert!(s.frobenius().unwrap().eq_at_precision(&th));
        // σ(θ) ≡ θ^p
        assert!((&s - &th.pow_u(3)).valuation().unwrap() >= Ratio::from_integer(1));
    }
}
