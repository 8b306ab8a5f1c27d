use super::module::PhiNModuleData;
use crate::error::{Error, Result};
use crate::linalg::{in_span, quotient_basis, PMatrix};
use crate::localfield::{FpPolynomial, LocalField, LocalFieldElement};

/// Which finite-polynomial complex: φ over `D_{st,F₀}`, or Φ = φ^d over `D_{st,F}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Semilinear,
    Linearized,
}

/// A cochain of the complex, with every component written in full coordinates
/// (`v` and `y` in `D_{dR,F}`, the others in the `D_st` of the variant).
#[derive(Clone, Debug)]
pub enum StCochain {
    Zero {
        u: Vec<LocalFieldElement>,
        v: Vec<LocalFieldElement>,
    },
    One {
        w: Vec<LocalFieldElement>,
        x: Vec<LocalFieldElement>,
        y: Vec<LocalFieldElement>,
    },
    Two {
        z: Vec<LocalFieldElement>,
    },
}

impl StCochain {
    pub fn degree(&self) -> usize {
        match self {
            StCochain::Zero { .. } => 0,
            StCochain::One { .. } => 1,
            StCochain::Two { .. } => 2,
        }
    }

    pub fn is_zero(&self) -> bool {
        let all = |v: &[LocalFieldElement]| v.iter().all(|x| x.is_zero());
        match self {
            StCochain::Zero { u, v } => all(u) && all(v),
            StCochain::One { w, x, y } => all(w) && all(x) && all(y),
            StCochain::Two { z } => all(z),
        }
    }
}

fn add_vec(a: &[LocalFieldElement], b: &[LocalFieldElement]) -> Vec<LocalFieldElement> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl std::ops::Add for &StCochain {
    type Output = StCochain;

    fn add(self, other: &StCochain) -> StCochain {
        match (self, other) {
            (StCochain::Zero { u, v }, StCochain::Zero { u: u2, v: v2 }) => StCochain::Zero {
                u: add_vec(u, u2),
                v: add_vec(v, v2),
            },
            (StCochain::One { w, x, y }, StCochain::One { w: w2, x: x2, y: y2 }) => StCochain::One {
                w: add_vec(w, w2),
                x: add_vec(x, x2),
                y: add_vec(y, y2),
            },
            (StCochain::Two { z }, StCochain::Two { z: z2 }) => StCochain::Two { z: add_vec(z, z2) },
            _ => panic!("adding cochains of different degrees"),
        }
    }
}

impl std::ops::Neg for &StCochain {
    type Output = StCochain;

    fn neg(self) -> StCochain {
        let n = |v: &[LocalFieldElement]| v.iter().map(|x| -x).collect::<Vec<_>>();
        match self {
            StCochain::Zero { u, v } => StCochain::Zero { u: n(u), v: n(v) },
            StCochain::One { w, x, y } => StCochain::One {
                w: n(w),
                x: n(x),
                y: n(y),
            },
            StCochain::Two { z } => StCochain::Two { z: n(z) },
        }
    }
}

/// Cohomology of a three-term complex, as bases of representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    /// Kernel of `d0`, columns in `C⁰` coordinates.
    pub h0: PMatrix,
    /// Representatives of `ker d1 / im d0`, columns in `C¹` coordinates.
    pub h1: PMatrix,
    /// Representatives of `C² / im d1`.
    pub h2: PMatrix,
}

impl Cohomology {
    pub fn dims(&self) -> [usize; 3] {
        [self.h0.cols(), self.h1.cols(), self.h2.cols()]
    }
}

/// `C⁰ = D_st ⊕ Fil⁰D_dR → C¹ = D_st ⊕ D_st ⊕ D_dR → C² = D_st`, with
/// `d0(u,v) = (Q(φ)u, Nu, u − v)` and `d1(w,x,y) = Nw − Q(pφ)x`
/// (Φ and q in the linearized variant).
#[derive(Clone, Debug)]
pub struct StComplex {
    field: LocalField,
    variant: Variant,
    poly: FpPolynomial,
    /// φ (or Φ) on `D_st`.
    frob: PMatrix,
    mono: PMatrix,
    /// p or q.
    scale: LocalFieldElement,
    iota: PMatrix,
    fil0: PMatrix,
    d0: PMatrix,
    d1: PMatrix,
}

impl StComplex {
    pub fn new(module: &PhiNModuleData, poly: &FpPolynomial, variant: Variant) -> Result<Self> {
        let field = module.field().clone();
        if poly.field() != &field {
            return Err(Error::FieldMismatch);
        }
        let p = LocalFieldElement::from_int(&field, field.p() as i64);
        let (frob, mono, scale, iota) = match variant {
            Variant::Semilinear => (module.phi_linear(), module.n_linear(), p, module.iota()),
            Variant::Linearized => (
                module.big_phi_f()?,
                module.n_f(),
                p.pow_u(module.d() as u64),
                PMatrix::identity(&field, module.dim_st_f()),
            ),
        };
        let fil0 = module.fil0();
        let a = frob.rows();
        let b = module.dim_dr();
        let f = fil0.cols();
        let qphi = frob.eval_poly(poly.as_poly())?;
        let qpphi = frob.scale(&scale).eval_poly(poly.as_poly())?;
        let d0 = PMatrix::block(
            &field,
            &[
                vec![qphi, PMatrix::zeros(&field, a, f)],
                vec![mono.clone(), PMatrix::zeros(&field, a, f)],
                vec![iota.clone(), fil0.neg()],
            ],
        )?;
        let d1 = PMatrix::block(&field, &[vec![mono.clone(), qpphi.neg(), PMatrix::zeros(&field, a, b)]])?;
        Ok(StComplex {
            field,
            variant,
            poly: poly.clone(),
            frob,
            mono,
            scale,
            iota,
            fil0,
            d0,
            d1,
        })
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn poly(&self) -> &FpPolynomial {
        &self.poly
    }

    pub fn frobenius(&self) -> &PMatrix {
        &self.frob
    }

    pub fn monodromy(&self) -> &PMatrix {
        &self.mono
    }

    /// p for the semilinear complex, q for the linearized one.
    pub fn scale(&self) -> &LocalFieldElement {
        &self.scale
    }

    pub fn iota(&self) -> &PMatrix {
        &self.iota
    }

    pub fn fil0(&self) -> &PMatrix {
        &self.fil0
    }

    pub fn d0(&self) -> &PMatrix {
        &self.d0
    }

    pub fn d1(&self) -> &PMatrix {
        &self.d1
    }

    pub fn st_dim(&self) -> usize {
        self.frob.rows()
    }

    pub fn dr_dim(&self) -> usize {
        self.iota.rows()
    }

    /// `d1 ∘ d0 = 0`.
    pub fn check_d_squared(&self) -> Result<bool> {
        Ok(self.d1.mul(&self.d0)?.is_zero())
    }

    pub fn cohomology(&self) -> Result<Cohomology> {
        let h0 = self.d0.kernel();
        let z1 = self.d1.kernel();
        let b1 = self.d0.column_space();
        let h1 = quotient_basis(&b1, &z1)?;
        let b2 = self.d1.column_space();
        let h2 = quotient_basis(&b2, &PMatrix::identity(&self.field, self.st_dim()))?;
        Ok(Cohomology { h0, h1, h2 })
    }

    /// Flat coordinates; `v` must lie in `Fil⁰`.
    pub fn to_vector(&self, c: &StCochain) -> Result<Vec<LocalFieldElement>> {
        match c {
            StCochain::Zero { u, v } => {
                let coords = if self.fil0.cols() == 0 {
                    if v.iter().any(|x| !x.is_zero()) {
                        return Err(Error::OutsideSpan("v is not in Fil⁰".into()));
                    }
                    Vec::new()
                } else {
                    self.fil0.solve(v).map_err(|_| Error::OutsideSpan("v is not in Fil⁰".into()))?
                };
                Ok(u.iter().cloned().chain(coords).collect())
            }
            StCochain::One { w, x, y } => Ok(w.iter().chain(x).chain(y).cloned().collect()),
            StCochain::Two { z } => Ok(z.clone()),
        }
    }

    pub fn from_vector(&self, degree: usize, vec: &[LocalFieldElement]) -> Result<StCochain> {
        let a = self.st_dim();
        let b = self.dr_dim();
        match degree {
            0 => {
                let u = vec[..a].to_vec();
                let v = if self.fil0.cols() == 0 {
                    vec![LocalFieldElement::zero(&self.field); b]
                } else {
                    self.fil0.mul_vec(&vec[a..])?
                };
                Ok(StCochain::Zero { u, v })
            }
            1 => Ok(StCochain::One {
                w: vec[..a].to_vec(),
                x: vec[a..2 * a].to_vec(),
                y: vec[2 * a..2 * a + b].to_vec(),
            }),
            2 => Ok(StCochain::Two { z: vec.to_vec() }),
            _ => Err(Error::Dimension(format!("no cochains in degree {degree}"))),
        }
    }

    /// `d` of a cochain (zero in degree 2).
    pub fn differential(&self, c: &StCochain) -> Result<StCochain> {
        let v = self.to_vector(c)?;
        match c.degree() {
            0 => self.from_vector(1, &self.d0.mul_vec(&v)?),
            1 => self.from_vector(2, &self.d1.mul_vec(&v)?),
            _ => Ok(StCochain::Two {
                z: vec![LocalFieldElement::zero(&self.field); self.st_dim()],
            }),
        }
    }

    pub fn is_cocycle(&self, c: &StCochain) -> Result<bool> {
        Ok(self.differential(c)?.is_zero())
    }

    /// A cochain `b` of one degree lower with `d(b) = c`, if any.
    pub fn coboundary_witness(&self, c: &StCochain) -> Result<Option<StCochain>> {
        let v = self.to_vector(c)?;
        let (d, deg) = match c.degree() {
            0 => return Ok(if c.is_zero() { Some(c.clone()) } else { None }),
            1 => (&self.d0, 0),
            _ => (&self.d1, 1),
        };
        if d.cols() == 0 {
            return Ok(if v.iter().all(|x| x.is_zero()) {
                Some(self.from_vector(deg, &[])?)
            } else {
                None
            });
        }
        match d.solve(&v) {
            Ok(x) => Ok(Some(self.from_vector(deg, &x)?)),
            Err(Error::OutsideSpan(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn is_coboundary(&self, c: &StCochain) -> Result<bool> {
        Ok(self.coboundary_witness(c)?.is_some())
    }

    /// Coordinates of a degree-1 cocycle's class in the basis `h1`.
    pub fn h1_coordinates(&self, h: &Cohomology, c: &StCochain) -> Result<Vec<LocalFieldElement>> {
        let v = self.to_vector(c)?;
        let b1 = self.d0.column_space();
        let joined = b1.hstack(&h.h1)?;
        if joined.cols() == 0 {
            return Ok(Vec::new());
        }
        let x = joined.solve(&v)?;
        Ok(x[b1.cols()..].to_vec())
    }

    /// Whether a degree-1 vector lies in the space of cocycles.
    pub fn in_cocycles(&self, v: &[LocalFieldElement]) -> bool {
        in_span(&self.d1.kernel(), v)
    }
}
