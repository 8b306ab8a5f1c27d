use crate::error::{Error, Result};
use crate::linalg::{factorial_power_limit, unit_root_projector, PMatrix};
use crate::localfield::{LocalField, LocalFieldElement};
use crate::qexp::QExpansion;

/// A basis of q-expansions for a U_p-stable space of forms, known up to the
/// Sturm bound.
#[derive(Clone, Debug)]
pub struct FormSpaceBasis {
    field: LocalField,
    basis: Vec<QExpansion>,
    sturm_bound: usize,
}

impl FormSpaceBasis {
    /// Validates linear independence on the coefficients `a_1 … a_sturm`.
    pub fn new(basis: Vec<QExpansion>, sturm_bound: usize) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::Basis("empty basis".into()));
        };
        let field = first.field().clone();
        if basis.iter().any(|b| b.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        let qprec = basis.iter().map(|b| b.q_precision()).min().unwrap_or(0);
        if qprec < sturm_bound {
            return Err(Error::QPrecision {
                have: qprec,
                need: sturm_bound,
            });
        }
        let b = FormSpaceBasis {
            field,
            basis,
            sturm_bound,
        };
        let rank = b.coefficient_matrix(sturm_bound).rank();
        if rank < b.dim() {
            return Err(Error::Basis(format!(
                "rank {rank} on the first {sturm_bound} coefficients, {} forms",
                b.dim()
            )));
        }
        Ok(b)
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn forms(&self) -> &[QExpansion] {
        &self.basis
    }

    pub fn sturm_bound(&self) -> usize {
        self.sturm_bound
    }

    pub fn q_precision(&self) -> usize {
        self.basis.iter().map(|b| b.q_precision()).min().unwrap_or(0)
    }

    /// Rows `a_1 … a_n`, one column per basis form.
    fn coefficient_matrix(&self, n: usize) -> PMatrix {
        let cols: Vec<Vec<LocalFieldElement>> = self.basis.iter().map(|b| b.coeffs()[1..=n].to_vec()).collect();
        PMatrix::from_columns(&self.field, n, &cols).expect("columns of equal length")
    }

    /// Coordinates of `xi` in the basis. The solve uses the first
    /// `sturm_bound` coefficients; every further available coefficient must
    /// match as a residual check.
    pub fn coordinates(&self, xi: &QExpansion) -> Result<Vec<LocalFieldElement>> {
        if xi.q_precision() < self.sturm_bound {
            return Err(Error::QPrecision {
                have: xi.q_precision(),
                need: self.sturm_bound,
            });
        }
        let m = self.coefficient_matrix(self.sturm_bound);
        let c = m.solve(&xi.coeffs()[1..=self.sturm_bound]).map_err(|e| match e {
            Error::OutsideSpan(v) => Error::OutsideSpan(format!("inconsistent on a_1..a_{}: {v}", self.sturm_bound)),
            other => other,
        })?;
        let n = xi.q_precision().min(self.q_precision());
        let back = self.expand(&c)?;
        for i in 0..=n {
            if !back.a(i).eq_at_precision(xi.a(i)) {
                return Err(Error::OutsideSpan(format!("residual at a_{i}")));
            }
        }
        Ok(c)
    }

    /// `Σ c_i b_i`.
    pub fn expand(&self, c: &[LocalFieldElement]) -> Result<QExpansion> {
        if c.len() != self.dim() {
            return Err(Error::Dimension(format!("{} coordinates for a basis of {}", c.len(), self.dim())));
        }
        let mut acc = self.basis[0].scale(&c[0]);
        for (b, ci) in self.basis.iter().zip(c).skip(1) {
            acc = acc.add(&b.scale(ci))?;
        }
        Ok(acc)
    }

    /// Matrix of an operator given by its action on q-expansions; column `j`
    /// holds the coordinates of `op(b_j)`.
    pub fn operator_matrix(&self, op: impl Fn(&QExpansion) -> Result<QExpansion>) -> Result<PMatrix> {
        let cols = self
            .basis
            .iter()
            .map(|b| self.coordinates(&op(b)?))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| match e {
                Error::OutsideSpan(m) => Error::Basis(format!("space is not stable: {m}")),
                other => other,
            })?;
        PMatrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// The matrix of U_p: `u_p(b_j) = Σ_i A_ij b_i`.
    pub fn up_matrix(&self) -> Result<PMatrix> {
        let p = self.field.p() as usize;
        if self.q_precision() / p < self.sturm_bound {
            return Err(Error::QPrecision {
                have: self.q_precision(),
                need: self.sturm_bound * p,
            });
        }
        self.operator_matrix(|b| b.u_p())
    }

    /// Matrix of `T_ℓ` for a prime `ℓ` not dividing the level.
    pub fn hecke_matrix(&self, ell: u64) -> Result<PMatrix> {
        if self.q_precision() / (ell as usize) < self.sturm_bound {
            return Err(Error::QPrecision {
                have: self.q_precision(),
                need: self.sturm_bound * ell as usize,
            });
        }
        self.operator_matrix(|b| b.hecke_t_ell(ell))
    }

    /// Ordinary projection of `xi ∈ span(B)`, by slope factorization.
    pub fn e_ord(&self, xi: &QExpansion) -> Result<QExpansion> {
        let c = self.coordinates(xi)?;
        let e = unit_root_projector(&self.up_matrix()?)?;
        self.expand(&e.mul_vec(&c)?)
    }

    /// Ordinary projection by iterating `U_p^{n!}` until stable mod `p^digits`.
    pub fn e_ord_by_iteration(&self, xi: &QExpansion, digits: i64) -> Result<QExpansion> {
        let c = self.coordinates(xi)?;
        let e = factorial_power_limit(&self.up_matrix()?, digits, 200)?;
        self.expand(&e.mul_vec(&c)?)
    }
}
