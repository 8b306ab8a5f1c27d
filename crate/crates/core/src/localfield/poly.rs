use std::fmt;

use super::element::LocalFieldElement;
use super::field::LocalField;
use super::ring::{determinant, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a local field, lowest degree first.
///
/// Trailing coefficients may be zero to precision; [`Poly::degree`] looks
/// past them.
#[derive(Clone)]
pub struct Poly {
    field: LocalField,
    coeffs: Vec<LocalFieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_literal()).collect();
        write!(f, "Poly[{}]", parts.join("; "))
    }
}

impl Poly {
    pub fn new(field: &LocalField, coeffs: Vec<LocalFieldElement>) -> Self {
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &LocalField) -> Self {
        Poly::new(field, vec![])
    }

    pub fn constant(c: LocalFieldElement) -> Self {
        let field = c.field().clone();
        Poly::new(&field, vec![c])
    }

    pub fn one(field: &LocalField) -> Self {
        Self::constant(LocalFieldElement::one(field))
    }

    /// `c·x^k`.
    pub fn monomial(c: LocalFieldElement, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![LocalFieldElement::zero(&field); k];
        coeffs.push(c);
        Poly::new(&field, coeffs)
    }

    pub fn from_ints(field: &LocalField, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| LocalFieldElement::from_int(field, c)).collect())
    }

    /// Monic polynomial `∏ (x − r)`.
    pub fn from_roots(field: &LocalField, roots: &[LocalFieldElement]) -> Self {
        roots.iter().fold(Poly::one(field), |acc, r| {
            acc.mul(&Poly::new(field, vec![-r, LocalFieldElement::one(field)]))
        })
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn coeffs(&self) -> &[LocalFieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> LocalFieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| LocalFieldElement::zero(&self.field))
    }

    /// Degree ignoring coefficients that are zero to precision; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Drops trailing zero-to-precision coefficients.
    pub fn trimmed(&self) -> Self {
        let n = self.degree().map_or(0, |d| d + 1);
        Poly::new(&self.field, self.coeffs[..n].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Poly::new(&self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Poly::new(&self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![LocalFieldElement::zero(&self.field); self.len() + other.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() && a.precision() >= self.field.cap_pi() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }

    pub fn scale(&self, c: &LocalFieldElement) -> Self {
        Poly::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `P(c·x)`.
    pub fn scale_variable(&self, c: &LocalFieldElement) -> Self {
        let mut power = LocalFieldElement::one(&self.field);
        let mut out = Vec::with_capacity(self.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power = &power * c;
        }
        Poly::new(&self.field, out)
    }

    pub fn eval(&self, x: &LocalFieldElement) -> LocalFieldElement {
        let mut acc = LocalFieldElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            &self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale_int(i as i64)).collect(),
        )
    }

    /// Euclidean division by a polynomial whose leading coefficient is invertible.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::PrecisionExhausted("division by the zero polynomial".into()))?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![LocalFieldElement::zero(&self.field); n - dd];
        for k in (dd..n).rev() {
            let t = &rem[k] * &lead_inv;
            for i in 0..=dd {
                rem[k - dd + i] = &rem[k - dd + i] - &(&t * &divisor.coeffs[i]);
            }
            quot[k - dd] = t;
        }
        rem.truncate(dd);
        Ok((Poly::new(&self.field, quot), Poly::new(&self.field, rem)))
    }

    /// `x^n·P(1/x)`.
    pub fn reversed(&self, n: usize) -> Self {
        Poly::new(&self.field, (0..=n).map(|i| self.coeff(n - i)).collect())
    }

    pub fn eq_at_precision(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Minimal precision among the coefficients.
    pub fn precision(&self) -> i64 {
        self.coeffs.iter().map(|c| c.precision()).min().unwrap_or(self.field.cap_pi())
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Poly::one(&self.field)
    }
    fn add_r(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_r(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_r(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_r(&self) -> Self {
        self.neg()
    }
}

/// Resultant `Res_x(A, B)` of polynomials with coefficients in `L[T]`, via the
/// Sylvester determinant. `a` and `b` are lists of coefficients (lowest first)
/// with exact degrees `a.len() - 1` and `b.len() - 1`.
pub fn sylvester_resultant(field: &LocalField, a: &[Poly], b: &[Poly]) -> Poly {
    let n = a.len() - 1;
    let m = b.len() - 1;
    let size = n + m;
    if size == 0 {
        return Poly::one(field);
    }
    let zero = Poly::zero(field);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..m {
        for k in 0..=n {
            mat[i][i + k] = a[n - k].clone();
        }
    }
    for i in 0..n {
        for k in 0..=m {
            mat[m + i][i + k] = b[m - k].clone();
        }
    }
    determinant(&mat, &Poly::one(field))
}

/// An element of `1 + T·L[T]`.
#[derive(Clone, Debug)]
pub struct FpPolynomial {
    poly: Poly,
}

impl FpPolynomial {
    pub fn new(coeffs: Vec<LocalFieldElement>) -> Result<Self> {
        let c0 = coeffs
            .first()
            .ok_or_else(|| Error::NotUnitConstant("empty coefficient list".into()))?;
        let one = LocalFieldElement::one(c0.field());
        if !c0.eq_at_precision(&one) {
            return Err(Error::NotUnitConstant(format!("constant term {}", c0.to_literal())));
        }
        let field = c0.field().clone();
        let mut coeffs = coeffs;
        coeffs[0] = one;
        Ok(FpPolynomial {
            poly: Poly::new(&field, coeffs).trimmed_keep_constant(),
        })
    }

    pub fn from_poly(p: &Poly) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::NotUnitConstant("zero polynomial".into()));
        }
        Self::new(p.coeffs().to_vec())
    }

    pub fn one(field: &LocalField) -> Self {
        FpPolynomial { poly: Poly::one(field) }
    }

    /// `1 − a·T`.
    pub fn linear(a: &LocalFieldElement) -> Self {
        let field = a.field().clone();
        FpPolynomial {
            poly: Poly::new(&field, vec![LocalFieldElement::one(&field), -a]),
        }
    }

    /// `∏ (1 − ρ·T)` over the given inverse roots ρ.
    pub fn from_inverse_roots(field: &LocalField, rhos: &[LocalFieldElement]) -> Self {
        rhos.iter().fold(Self::one(field), |acc, r| acc.mul(&Self::linear(r)))
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn field(&self) -> &LocalField {
        self.poly.field()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> LocalFieldElement {
        self.poly.coeff(i)
    }

    pub fn eval(&self, x: &LocalFieldElement) -> LocalFieldElement {
        self.poly.eval(x)
    }

    /// Ordinary product.
    pub fn mul(&self, other: &Self) -> Self {
        FpPolynomial {
            poly: self.poly.mul(&other.poly).trimmed_keep_constant(),
        }
    }

    /// `Q(T^d)`.
    pub fn substitute_power(&self, d: usize) -> Self {
        let field = self.field().clone();
        let mut coeffs = vec![LocalFieldElement::zero(&field); self.degree() * d + 1];
        for i in 0..=self.degree() {
            coeffs[i * d] = self.coeff(i);
        }
        FpPolynomial {
            poly: Poly::new(&field, coeffs),
        }
    }

    /// `P(c·T)`, again in `1 + T·L[T]`.
    pub fn scale_variable(&self, c: &LocalFieldElement) -> Self {
        FpPolynomial {
            poly: self.poly.scale_variable(c).trimmed_keep_constant(),
        }
    }

    /// The polynomial whose inverse roots are the pairwise products of those of
    /// `self` and `other`, computed as `Res_X(P^rev(X), Q(X·T))`.
    pub fn star(&self, other: &Self) -> Result<Self> {
        let field = self.field().clone();
        let n = self.degree();
        let m = other.degree();
        if n == 0 || m == 0 {
            return Ok(Self::one(&field));
        }
        for (poly, d) in [(self, n), (other, m)] {
            if poly.coeff(d).is_zero() {
                return Err(Error::PrecisionExhausted("leading coefficient vanishes to precision".into()));
            }
        }
        // A(X) = X^n P(1/X): coefficient of X^i is P_{n-i}
        let a: Vec<Poly> = (0..=n).map(|i| Poly::constant(self.coeff(n - i))).collect();
        // B(X) = Q(X·T): coefficient of X^j is Q_j T^j
        let b: Vec<Poly> = (0..=m).map(|j| Poly::monomial(other.coeff(j), j)).collect();
        let res = sylvester_resultant(&field, &a, &b);
        let mut coeffs: Vec<LocalFieldElement> = (0..=n * m).map(|i| res.coeff(i)).collect();
        if !coeffs[0].eq_at_precision(&LocalFieldElement::one(&field)) {
            return Err(Error::PrecisionExhausted("resultant lost its constant term".into()));
        }
        coeffs[0] = LocalFieldElement::one(&field);
        Ok(FpPolynomial {
            poly: Poly::new(&field, coeffs),
        })
    }

    pub fn eq_at_precision(&self, other: &Self) -> bool {
        self.poly.eq_at_precision(&other.poly)
    }

    pub fn to_literals(&self) -> Vec<String> {
        self.poly.coeffs().iter().map(|c| c.to_literal()).collect()
    }
}

impl Poly {
    fn trimmed_keep_constant(&self) -> Self {
        let n = self.degree().map_or(1, |d| d + 1).max(1);
        Poly::new(&self.field, self.coeffs[..n.min(self.len())].to_vec())
    }
}

/// Dense polynomial in two variables, `coeffs[i][j]` multiplying `X^i Y^j`.
#[derive(Clone, Debug)]
pub struct Poly2 {
    field: LocalField,
    pub coeffs: Vec<Vec<LocalFieldElement>>,
}

impl Poly2 {
    pub fn zero(field: &LocalField, dx: usize, dy: usize) -> Self {
        Poly2 {
            field: field.clone(),
            coeffs: vec![vec![LocalFieldElement::zero(field); dy + 1]; dx + 1],
        }
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn deg_x(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.iter().map(|r| r.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn get(&self, i: usize, j: usize) -> LocalFieldElement {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(|| LocalFieldElement::zero(&self.field))
    }

    fn ensure(&mut self, i: usize, j: usize) {
        while self.coeffs.len() <= i {
            self.coeffs.push(vec![]);
        }
        for r in self.coeffs.iter_mut() {
            while r.len() <= j {
                r.push(LocalFieldElement::zero(&self.field));
            }
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &LocalFieldElement) {
        self.ensure(i, j);
        self.coeffs[i][j] = &self.coeffs[i][j] + c;
    }

    /// `P(X)` viewed in two variables.
    pub fn from_x(p: &Poly) -> Self {
        let mut out = Poly2::zero(p.field(), 0, 0);
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_at(i, 0, c);
        }
        out
    }

    /// `Q(Y)` viewed in two variables.
    pub fn from_y(q: &Poly) -> Self {
        let mut out = Poly2::zero(q.field(), 0, 0);
        for (j, c) in q.coeffs().iter().enumerate() {
            out.add_at(0, j, c);
        }
        out
    }

    /// `S(X·Y)`.
    pub fn diagonal(s: &Poly) -> Self {
        let mut out = Poly2::zero(s.field(), 0, 0);
        for (i, c) in s.coeffs().iter().enumerate() {
            out.add_at(i, i, c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, r) in other.coeffs.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                out.add_at(i, j, c);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly2 {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly2::zero(&self.field, 0, 0);
        for (i, r) in self.coeffs.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, s) in other.coeffs.iter().enumerate() {
                    for (l, b) in s.iter().enumerate() {
                        out.add_at(i + k, j + l, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    /// Minimal valuation of a coefficient that is not zero to precision.
    pub fn min_valuation(&self) -> Option<i64> {
        self.coeffs.iter().flatten().filter_map(|c| c.val_pi()).min()
    }
}

/// Solves `P*Q(XY) = a(X,Y)·P(X) + b(X,Y)·Q(Y)` by dividing first by `P(X)` in
/// `X`, then the remainder by `Q(Y)` in `Y`. The final remainder must vanish.
pub fn bezout_pair(p: &FpPolynomial, q: &FpPolynomial, pq: &FpPolynomial) -> Result<(Poly2, Poly2)> {
    let field = p.field().clone();
    let n = p.degree();
    let m = q.degree();
    let r = Poly2::diagonal(pq.as_poly());
    if n == 0 {
        // P is the constant 1
        return Ok((r, Poly2::zero(&field, 0, 0)));
    }
    let pn_inv = p.coeff(n).inv().map_err(|_| Error::Bezout("leading coefficient of P vanishes".into()))?;
    // rows indexed by powers of X; each row a polynomial in Y
    let dy = r.deg_y();
    let mut rem: Vec<Vec<LocalFieldElement>> = (0..=r.deg_x())
        .map(|i| (0..=dy).map(|j| r.get(i, j)).collect())
        .collect();
    let mut a = Poly2::zero(&field, 0, 0);
    for k in (n..rem.len()).rev() {
        let t: Vec<LocalFieldElement> = rem[k].iter().map(|c| c * &pn_inv).collect();
        for i in 0..=n {
            let pi = p.coeff(i);
            for j in 0..=dy {
                rem[k - n + i][j] = &rem[k - n + i][j] - &(&t[j] * &pi);
            }
        }
        for (j, c) in t.iter().enumerate() {
            a.add_at(k - n, j, c);
        }
    }
    rem.truncate(n);
    let mut b = Poly2::zero(&field, 0, 0);
    if m == 0 {
        if rem.iter().flatten().any(|c| !c.is_zero()) {
            return Err(Error::Bezout("remainder does not vanish".into()));
        }
        return Ok((a, b));
    }
    for (i, row) in rem.iter().enumerate() {
        let ry = Poly::new(&field, row.clone());
        let (quo, left) = ry.div_rem(q.as_poly())?;
        if !left.is_zero() {
            return Err(Error::Bezout(format!("remainder in Y does not vanish at X^{i}")));
        }
        for (j, c) in quo.coeffs().iter().enumerate() {
            b.add_at(i, j, c);
        }
    }
    Ok((a, b))
}

/// Checks `P*Q(XY) = a·P(X) + b·Q(Y)` to precision.
pub fn verify_bezout(p: &FpPolynomial, q: &FpPolynomial, pq: &FpPolynomial, a: &Poly2, b: &Poly2) -> bool {
    let lhs = Poly2::diagonal(pq.as_poly());
    let rhs = a
        .mul(&Poly2::from_x(p.as_poly()))
        .add(&b.mul(&Poly2::from_y(q.as_poly())));
    lhs.sub(&rhs).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(k: &LocalField, n: i64) -> LocalFieldElement {
        LocalFieldElement::from_int(k, n)
    }

    #[test]
    fn star_of_linear_factors() {
        let k = LocalField::qp(11, 20).unwrap();
        let p = FpPolynomial::linear(&el(&k, 2));
        let q = FpPolynomial::linear(&el(&k, 5));
        let s = p.star(&q).unwrap();
        assert!(s.eq_at_precision(&FpPolynomial::linear(&el(&k, 10))));
    }

    #[test]
    fn star_of_quadratics_matches_expansion() {
        let k = LocalField::qp(11, 20).unwrap();
        let p = FpPolynomial::from_inverse_roots(&k, &[el(&k, 2), el(&k, 3)]);
        let q = FpPolynomial::from_inverse_roots(&k, &[el(&k, 5), el(&k, 7)]);
        let expect = FpPolynomial::from_inverse_roots(&k, &[el(&k, 10), el(&k, 14), el(&k, 15), el(&k, 21)]);
        assert!(p.star(&q).unwrap().eq_at_precision(&expect));
    }

    #[test]
    fn star_with_one_minus_t_is_identity() {
        let k = LocalField::qp(11, 20).unwrap();
        let q = FpPolynomial::from_inverse_roots(&k, &[el(&k, 4), el(&k, 9)]);
        let unit = FpPolynomial::linear(&el(&k, 1));
        assert!(unit.star(&q).unwrap().eq_at_precision(&q));
    }

    #[test]
    fn constant_term_must_be_one() {
        let k = LocalField::qp(11, 20).unwrap();
        assert!(matches!(
            FpPolynomial::new(vec![el(&k, 2), el(&k, 1)]),
            Err(Error::NotUnitConstant(_))
        ));
    }

    #[test]
    fn bezout_identity_holds() {
        let k = LocalField::qp(7, 20).unwrap();
        let p = FpPolynomial::from_inverse_roots(&k, &[el(&k, 2), el(&k, 3)]);
        let q = FpPolynomial::linear(&el(&k, 5));
        let pq = p.star(&q).unwrap();
        let (a, b) = bezout_pair(&p, &q, &pq).unwrap();
        assert!(verify_bezout(&p, &q, &pq, &a, &b));
    }

    #[test]
    fn div_rem_reconstructs() {
        let k = LocalField::qp(5, 20).unwrap();
        let a = Poly::from_ints(&k, &[1, 2, 3, 4]);
        let b = Poly::from_ints(&k, &[3, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(q.mul(&b).add(&r).eq_at_precision(&a));
    }
}
