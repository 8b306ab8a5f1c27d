use crate::error::{Error, Result};
use crate::linalg::PMatrix;
use crate::localfield::{LocalField, LocalFieldElement};

/// Decreasing filtration on an L-vector space, given by jumps.
///
/// `steps` is sorted by index; `Fil^t` is the span of the step with the
/// smallest index `≥ t`, and `0` past the last step. The first step must be
/// the whole space.
#[derive(Clone, Debug)]
pub struct Filtration {
    dim: usize,
    steps: Vec<(i64, PMatrix)>,
}

impl Filtration {
    pub fn new(dim: usize, mut steps: Vec<(i64, PMatrix)>) -> Result<Self> {
        steps.sort_by_key(|(t, _)| *t);
        let Some((_, first)) = steps.first() else {
            return Err(Error::Module("filtration without steps".into()));
        };
        if first.rank() != dim {
            return Err(Error::Module("the lowest filtration step is not the whole space".into()));
        }
        for w in steps.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Module(format!("repeated filtration index {}", w[0].0)));
            }
            let (big, small) = (&w[0].1, &w[1].1);
            if small.rows() != dim {
                return Err(Error::Dimension("filtration step of the wrong length".into()));
            }
            if small.cols() > 0 && big.hstack(small)?.rank() != big.rank() {
                return Err(Error::Module(format!("Fil^{} is not contained in Fil^{}", w[1].0, w[0].0)));
            }
        }
        Ok(Filtration { dim, steps })
    }

    /// `Fil^t = everything` for `t ≤ t0` and `0` afterwards.
    pub fn single_jump(field: &LocalField, dim: usize, t0: i64) -> Self {
        Filtration {
            dim,
            steps: vec![(t0, PMatrix::identity(field, dim))],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> &[(i64, PMatrix)] {
        &self.steps
    }

    pub fn jumps(&self) -> Vec<i64> {
        self.steps.iter().map(|(t, _)| *t).collect()
    }

    /// Spanning columns of `Fil^t`.
    pub fn fil(&self, t: i64) -> PMatrix {
        match self.steps.iter().find(|(s, _)| *s >= t) {
            Some((_, m)) => m.column_space(),
            None => {
                let field = self.steps[0].1.field().clone();
                PMatrix::zeros(&field, self.dim, 0)
            }
        }
    }
}

/// A filtered (φ, N)-module, descended to linear algebra over the
/// coefficient field L.
///
/// `D_{st,F₀}` is free of rank `n` over `F₀ ⊗ L ≅ L^d`; it is stored as `d`
/// components `D_0, …, D_{d−1}`, each `L^n`. The σ-semilinear φ maps `D_i`
/// to `D_{i−1}` through the L-matrix `phi[i−1]`, and N acts on `D_i` by
/// `n[i]`. `D_{st,F} = F ⊗_{F₀} D_{st,F₀}` has L-dimension `n·d·e`, with
/// coordinate `(i·n + k)·e + j` for `π_F^j` times the basis vector `k` of
/// `D_i`. The filtration lives on `D_{dR,F}`, identified with `D_{st,F}`.
#[derive(Clone, Debug)]
pub struct PhiNModuleData {
    field: LocalField,
    d: usize,
    e: usize,
    rank: usize,
    phi: Vec<PMatrix>,
    n: Vec<PMatrix>,
    filtration: Filtration,
    labels: Vec<String>,
}

impl PhiNModuleData {
    pub fn new(
        field: &LocalField,
        d: usize,
        e: usize,
        phi: Vec<PMatrix>,
        n: Vec<PMatrix>,
        filtration: Filtration,
    ) -> Result<Self> {
        if d == 0 || e == 0 {
            return Err(Error::Module("degrees must be positive".into()));
        }
        if phi.len() != d || n.len() != d {
            return Err(Error::Module(format!("expected {d} Frobenius and monodromy components")));
        }
        let rank = phi[0].rows();
        for m in phi.iter().chain(n.iter()) {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Dimension(format!("component is {}x{}, rank is {rank}", m.rows(), m.cols())));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        if filtration.dim() != rank * d * e {
            return Err(Error::Dimension(format!(
                "filtration on a space of dimension {}, expected {}",
                filtration.dim(),
                rank * d * e
            )));
        }
        let m = PhiNModuleData {
            field: field.clone(),
            d,
            e,
            rank,
            phi,
            n,
            filtration,
            labels: (0..rank).map(|k| format!("b{k}")).collect(),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank {
            return Err(Error::Dimension(format!("{} labels for rank {}", labels.len(), self.rank)));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Module with the same L-matrices in every component.
    pub fn constant(field: &LocalField, d: usize, e: usize, phi: &PMatrix, n: &PMatrix, filtration: Filtration) -> Result<Self> {
        Self::new(field, d, e, vec![phi.clone(); d], vec![n.clone(); d], filtration)
    }

    /// Rank one, φ = 1, N = 0, `Fil⁰` everything and `Fil¹ = 0`.
    pub fn unit_object(field: &LocalField, d: usize, e: usize) -> Self {
        Self::unit_twist(field, d, e, 0)
    }

    /// `Q_p^{nr}(m)`: φ = `p^{−m}`, N = 0, single filtration jump at `−m`.
    pub fn unit_twist(field: &LocalField, d: usize, e: usize, m: i64) -> Self {
        let p = LocalFieldElement::from_int(field, field.p() as i64);
        let c = p.pow(-m).expect("p is invertible");
        let phi = PMatrix::diagonal(field, &[c]);
        let n = PMatrix::zeros(field, 1, 1);
        Self::constant(field, d, e, &phi, &n, Filtration::single_jump(field, d * e, -m)).expect("valid unit twist")
    }

    fn validate(&self) -> Result<()> {
        let p = LocalFieldElement::from_int(&self.field, self.field.p() as i64);
        for i in 0..self.d {
            // on D_{i+1}: N_i·φ_i = p·φ_i·N_{i+1}
            let j = (i + 1) % self.d;
            let lhs = self.n[i].mul(&self.phi[i])?;
            let rhs = self.phi[i].mul(&self.n[j])?.scale(&p);
            if !lhs.eq_at_precision(&rhs) {
                return Err(Error::Module("N∘φ ≠ p·φ∘N".into()));
            }
            if !self.n[i].pow(self.rank as u64)?.is_zero() {
                return Err(Error::Module("N is not nilpotent".into()));
            }
            if self.phi[i].determinant()?.is_zero() {
                return Err(Error::Module("φ is not bijective".into()));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    /// Degree of F₀ over Q_p.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Ramification index of F over F₀.
    pub fn e(&self) -> usize {
        self.e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn phi_components(&self) -> &[PMatrix] {
        &self.phi
    }

    pub fn n_components(&self) -> &[PMatrix] {
        &self.n
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn dim_st_f0(&self) -> usize {
        self.rank * self.d
    }

    pub fn dim_st_f(&self) -> usize {
        self.rank * self.d * self.e
    }

    pub fn dim_dr(&self) -> usize {
        self.dim_st_f()
    }

    pub fn is_crystalline(&self) -> bool {
        self.n.iter().all(|m| m.is_zero())
    }

    /// φ as an L-linear endomorphism of `D_{st,F₀}`.
    pub fn phi_linear(&self) -> PMatrix {
        let n = self.rank;
        let mut out = PMatrix::zeros(&self.field, n * self.d, n * self.d);
        for i in 0..self.d {
            let target = (i + self.d - 1) % self.d;
            let m = &self.phi[target];
            for r in 0..n {
                for c in 0..n {
                    out.set(target * n + r, i * n + c, m.get(r, c).clone());
                }
            }
        }
        out
    }

    pub fn n_linear(&self) -> PMatrix {
        PMatrix::block_diag(&self.field, &self.n)
    }

    /// `Φ = φ^d` on `D_{st,F₀}`; it preserves every component.
    pub fn big_phi(&self) -> Result<PMatrix> {
        self.phi_linear().pow(self.d as u64)
    }

    /// The block of Φ on the component `D_i`.
    pub fn big_phi_block(&self, i: usize) -> Result<PMatrix> {
        let n = self.rank;
        let idx: Vec<usize> = (i * n..(i + 1) * n).collect();
        Ok(self.big_phi()?.select(&idx, &idx))
    }

    /// Φ extended F-linearly to `D_{st,F}`.
    pub fn big_phi_f(&self) -> Result<PMatrix> {
        Ok(self.big_phi()?.kron(&PMatrix::identity(&self.field, self.e)))
    }

    pub fn n_f(&self) -> PMatrix {
        self.n_linear().kron(&PMatrix::identity(&self.field, self.e))
    }

    /// `D_{st,F₀} → D_{st,F}`, `v ↦ 1 ⊗ v`.
    pub fn iota(&self) -> PMatrix {
        let mut col = PMatrix::zeros(&self.field, self.e, 1);
        col.set(0, 0, LocalFieldElement::one(&self.field));
        PMatrix::identity(&self.field, self.dim_st_f0()).kron(&col)
    }

    pub fn fil0(&self) -> PMatrix {
        self.filtration.fil(0)
    }

    /// `D_1 ⊗_{F₀⊗L} D_2`, computed componentwise. Needs `e = 1`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.d != other.d || self.e != other.e {
            return Err(Error::Module("tensor product of modules over different bases".into()));
        }
        if self.e != 1 {
            return Err(Error::Unsupported("tensor products over a ramified F".into()));
        }
        let (n1, n2) = (self.rank, other.rank);
        let id1 = PMatrix::identity(&self.field, n1);
        let id2 = PMatrix::identity(&self.field, n2);
        let phi: Vec<PMatrix> = self.phi.iter().zip(&other.phi).map(|(a, b)| a.kron(b)).collect();
        let n = self
            .n
            .iter()
            .zip(&other.n)
            .map(|(a, b)| a.kron(&id2).add(&id1.kron(b)))
            .collect::<Result<Vec<_>>>()?;
        let filtration = self.tensor_filtration(other)?;
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}{b}")))
            .collect();
        Self::new(&self.field, self.d, 1, phi, n, filtration)?.with_labels(labels)
    }

    /// `Fil^t(D_1 ⊗ D_2) = Σ_s Fil^s D_1 ⊗ Fil^{t−s} D_2`, component by component.
    fn tensor_filtration(&self, other: &Self) -> Result<Filtration> {
        let (n1, n2, d) = (self.rank, other.rank, self.d);
        let dim = n1 * n2 * d;
        let j1 = self.filtration.jumps();
        let j2 = other.filtration.jumps();
        let mut ts: Vec<i64> = j1.iter().flat_map(|a| j2.iter().map(move |b| a + b)).collect();
        ts.sort_unstable();
        ts.dedup();
        let mut steps = Vec::new();
        for &t in &ts {
            let mut cols: Vec<Vec<LocalFieldElement>> = Vec::new();
            for &s in &j1 {
                let a = self.filtration.fil(s);
                let b = other.filtration.fil(t - s);
                for comp in 0..d {
                    let ra: Vec<usize> = (comp * n1..(comp + 1) * n1).collect();
                    let rb: Vec<usize> = (comp * n2..(comp + 1) * n2).collect();
                    let a_c = a.select(&ra, &(0..a.cols()).collect::<Vec<_>>()).column_space();
                    let b_c = b.select(&rb, &(0..b.cols()).collect::<Vec<_>>()).column_space();
                    for x in a_c.columns() {
                        for y in b_c.columns() {
                            let mut v = vec![LocalFieldElement::zero(&self.field); dim];
                            for (k1, xv) in x.iter().enumerate() {
                                for (k2, yv) in y.iter().enumerate() {
                                    v[comp * n1 * n2 + k1 * n2 + k2] = xv * yv;
                                }
                            }
                            cols.push(v);
                        }
                    }
                }
            }
            let m = PMatrix::from_columns(&self.field, dim, &cols)?;
            steps.push((t, m.column_space()));
        }
        // drop steps that repeat the next one
        let mut out: Vec<(i64, PMatrix)> = Vec::new();
        for (t, m) in steps.into_iter().rev() {
            if let Some((_, next)) = out.last() {
                if next.cols() == m.cols() {
                    continue;
                }
            }
            out.push((t, m));
        }
        out.reverse();
        Filtration::new(dim, out)
    }
}

/// Embeds per-component vectors `u ∈ D_1`, `u' ∈ D_2` into `D_1 ⊗ D_2`.
pub fn tensor_vectors(u: &[LocalFieldElement], n1: usize, v: &[LocalFieldElement], n2: usize, d: usize) -> Vec<LocalFieldElement> {
    let field = u[0].field().clone();
    let mut out = vec![LocalFieldElement::zero(&field); n1 * n2 * d];
    for comp in 0..d {
        for k1 in 0..n1 {
            let a = &u[comp * n1 + k1];
            if a.is_zero() {
                continue;
            }
            for k2 in 0..n2 {
                out[comp * n1 * n2 + k1 * n2 + k2] = a * &v[comp * n2 + k2];
            }
        }
    }
    out
}
