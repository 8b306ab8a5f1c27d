use super::complex::{StComplex, StCochain, Variant};
use super::module::{tensor_vectors, PhiNModuleData};
use crate::error::{Error, Result};
use crate::linalg::PMatrix;
use crate::localfield::{verify_bezout, FpPolynomial, LocalFieldElement, Poly2};

/// Auxiliary data of the product: `a`, `b` with
/// `(P*Q)(XY) = a(X,Y)P(X) + b(X,Y)Q(Y)`, and `λ ∈ L`.
#[derive(Clone, Debug)]
pub struct CupData {
    pub a: Poly2,
    pub b: Poly2,
    pub lambda: LocalFieldElement,
}

/// The three complexes of a cup product and the operators `X = φ₁ ⊗ 1`,
/// `Y = 1 ⊗ φ₂` (Φ's in the linearized variant) on the tensor product.
pub struct CupProduct {
    pub left: StComplex,
    pub right: StComplex,
    pub target: StComplex,
    n1: usize,
    n2: usize,
    d: usize,
    x_op: PMatrix,
    y_op: PMatrix,
    scale: LocalFieldElement,
    p: FpPolynomial,
    q: FpPolynomial,
    pq: FpPolynomial,
}

impl CupProduct {
    /// Products need an unramified F (`e = 1`); the semilinear variant also
    /// needs `d = 1`, where φ₁ ⊗ 1 is defined on the tensor product.
    pub fn new(d1: &PhiNModuleData, p: &FpPolynomial, d2: &PhiNModuleData, q: &FpPolynomial, variant: Variant) -> Result<Self> {
        if d1.e() != 1 || d2.e() != 1 {
            return Err(Error::Unsupported("cup products over a ramified F".into()));
        }
        if variant == Variant::Semilinear && d1.d() != 1 {
            return Err(Error::Unsupported(
                "semilinear cup products with d > 1 (φ₁ ⊗ 1 is not defined on the tensor product)".into(),
            ));
        }
        let field = d1.field().clone();
        let tensor = d1.tensor(d2)?;
        let pq = p.star(q)?;
        let left = StComplex::new(d1, p, variant)?;
        let right = StComplex::new(d2, q, variant)?;
        let target = StComplex::new(&tensor, &pq, variant)?;
        let (n1, n2, d) = (d1.rank(), d2.rank(), d1.d());
        let id1 = PMatrix::identity(&field, n1);
        let id2 = PMatrix::identity(&field, n2);
        let (xb, yb): (Vec<PMatrix>, Vec<PMatrix>) = match variant {
            Variant::Semilinear => (vec![d1.phi_linear().kron(&id2)], vec![id1.kron(&d2.phi_linear())]),
            Variant::Linearized => {
                let mut xs = Vec::new();
                let mut ys = Vec::new();
                for comp in 0..d {
                    xs.push(d1.big_phi_block(comp)?.kron(&id2));
                    ys.push(id1.kron(&d2.big_phi_block(comp)?));
                }
                (xs, ys)
            }
        };
        let x_op = PMatrix::block_diag(&field, &xb);
        let y_op = PMatrix::block_diag(&field, &yb);
        Ok(CupProduct {
            scale: left.scale().clone(),
            left,
            right,
            target,
            n1,
            n2,
            d,
            x_op,
            y_op,
            p: p.clone(),
            q: q.clone(),
            pq,
        })
    }

    pub fn star_polynomial(&self) -> &FpPolynomial {
        &self.pq
    }

    /// Validates the Bézout identity of `a`, `b`.
    pub fn data(&self, a: Poly2, b: Poly2, lambda: LocalFieldElement) -> Result<CupData> {
        if !verify_bezout(&self.p, &self.q, &self.pq, &a, &b) {
            return Err(Error::Bezout("(P*Q)(XY) ≠ a(X,Y)P(X) + b(X,Y)Q(Y)".into()));
        }
        Ok(CupData { a, b, lambda })
    }

    fn tensor(&self, u: &[LocalFieldElement], v: &[LocalFieldElement]) -> Vec<LocalFieldElement> {
        tensor_vectors(u, self.n1, v, self.n2, self.d)
    }

    /// `c(sx·X, sy·Y)` applied to a vector.
    fn apply(&self, c: &Poly2, sx: bool, sy: bool, v: &[LocalFieldElement]) -> Result<Vec<LocalFieldElement>> {
        let field = self.x_op.field().clone();
        let x = if sx { self.x_op.scale(&self.scale) } else { self.x_op.clone() };
        let y = if sy { self.y_op.scale(&self.scale) } else { self.y_op.clone() };
        let mut out = vec![LocalFieldElement::zero(&field); v.len()];
        // Horner in X over the Y-polynomials
        let mut xpow = v.to_vec();
        for i in 0..=c.deg_x() {
            let mut acc = vec![LocalFieldElement::zero(&field); v.len()];
            let mut ypow = xpow.clone();
            for j in 0..=c.deg_y() {
                let coef = c.get(i, j);
                if !coef.is_zero() {
                    for (a, b) in acc.iter_mut().zip(&ypow) {
                        *a = &*a + &(&coef * b);
                    }
                }
                if j < c.deg_y() {
                    ypow = y.mul_vec(&ypow)?;
                }
            }
            for (o, a) in out.iter_mut().zip(acc) {
                *o = &*o + &a;
            }
            if i < c.deg_x() {
                xpow = x.mul_vec(&xpow)?;
            }
        }
        Ok(out)
    }

    fn mix(&self, lambda: &LocalFieldElement, first: &[LocalFieldElement], second: &[LocalFieldElement]) -> Vec<LocalFieldElement> {
        let one = LocalFieldElement::one(lambda.field());
        let mu = &one - lambda;
        first.iter().zip(second).map(|(a, b)| &(lambda * a) + &(&mu * b)).collect()
    }

    /// Cochain-level product, cell by cell from the table.
    pub fn product(&self, x: &StCochain, y: &StCochain, data: &CupData) -> Result<StCochain> {
        let field = self.x_op.field().clone();
        let lam = &data.lambda;
        let st = self.target.st_dim();
        let dr = self.target.dr_dim();
        let zero_st = || vec![LocalFieldElement::zero(&field); st];
        let zero_dr = || vec![LocalFieldElement::zero(&field); dr];
        let iota1 = |u: &[LocalFieldElement]| self.left.iota().mul_vec(u);
        let iota2 = |u: &[LocalFieldElement]| self.right.iota().mul_vec(u);
        use StCochain::*;
        Ok(match (x, y) {
            (Zero { u, v }, Zero { u: u2, v: v2 }) => Zero {
                u: self.tensor(u, u2),
                v: self.tensor(v, v2),
            },
            (Zero { u, v }, One { w: w2, x: x2, y: y2 }) => One {
                w: self.apply(&data.b, false, false, &self.tensor(u, w2))?,
                x: self.tensor(u, x2),
                y: self.tensor(&self.mix(lam, &iota1(u)?, v), y2),
            },
            (Zero { u, .. }, Two { z: z2 }) => Two {
                z: self.apply(&data.b, false, true, &self.tensor(u, z2))?,
            },
            (One { w, x, y }, Zero { u: u2, v: v2 }) => One {
                w: self.apply(&data.a, false, false, &self.tensor(w, u2))?,
                x: self.tensor(x, u2),
                y: self.tensor(y, &self.mix(lam, v2, &iota2(u2)?)),
            },
            (One { w, x, .. }, One { w: w2, x: x2, .. }) => {
                let t1 = self.apply(&data.a, false, true, &self.tensor(w, x2))?;
                let t2 = self.apply(&data.b, true, false, &self.tensor(x, w2))?;
                Two {
                    z: t1.iter().zip(&t2).map(|(a, b)| b - a).collect(),
                }
            }
            (Two { z }, Zero { u: u2, .. }) => Two {
                z: self.apply(&data.a, true, false, &self.tensor(z, u2))?,
            },
            (One { .. }, Two { .. }) | (Two { .. }, One { .. }) | (Two { .. }, Two { .. }) => {
                let _ = (zero_st(), zero_dr());
                return Err(Error::Dimension("product lands above degree 2".into()));
            }
        })
    }
}
