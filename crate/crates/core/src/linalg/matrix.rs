use std::fmt;

use crate::error::{Error, Result};
use crate::localfield::{berkowitz, LocalField, LocalFieldElement, Poly};

/// Dense row-major matrix over a local field.
#[derive(Clone)]
pub struct PMatrix {
    field: LocalField,
    rows: usize,
    cols: usize,
    data: Vec<LocalFieldElement>,
}

impl fmt::Debug for PMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_literal()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of a valuation-pivoted reduction to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: PMatrix,
    /// `(row, column)` of each pivot, in elimination order (`row` = position).
    pub pivots: Vec<(usize, usize)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(_, c)| c).collect()
    }
}

impl PMatrix {
    pub fn new(field: &LocalField, rows: usize, cols: usize, data: Vec<LocalFieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(PMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &LocalField, rows: Vec<Vec<LocalFieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(field: &LocalField, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| LocalFieldElement::from_int(field, x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &LocalField, nrows: usize, cols: &[Vec<LocalFieldElement>]) -> Result<Self> {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::Dimension(format!("column of length {} in {nrows}-row matrix", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn zeros(field: &LocalField, rows: usize, cols: usize) -> Self {
        PMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![LocalFieldElement::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &LocalField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, LocalFieldElement::one(field));
        }
        m
    }

    pub fn diagonal(field: &LocalField, diag: &[LocalFieldElement]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LocalFieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LocalFieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<LocalFieldElement> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<LocalFieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<LocalFieldElement>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<LocalFieldElement>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Sub-matrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self::new(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self::new(&self.field, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        PMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &LocalFieldElement) -> Self {
        PMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() && a.precision() >= self.field.cap_pi() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    let cur = m.get(i, j) + &t;
                    m.set(i, j, cur);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[LocalFieldElement]) -> Result<Vec<LocalFieldElement>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(LocalFieldElement::zero(&self.field), |acc, j| {
                    &acc + &(self.get(i, j) * &v[j])
                })
            })
            .collect())
    }

    pub fn pow(&self, mut n: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut result = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Kronecker product; index `(i·p + k, j·q + l)` holds `a_ij · b_kl`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (other.rows, other.cols);
        let mut m = Self::zeros(&self.field, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        m.set(i * p + k, j * q + l, a * other.get(k, l));
                    }
                }
            }
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let mut m = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::new(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// Block matrix from a grid of blocks with compatible shapes.
    pub fn block(field: &LocalField, blocks: &[Vec<PMatrix>]) -> Result<Self> {
        let mut out: Option<PMatrix> = None;
        for row in blocks {
            let mut r: Option<PMatrix> = None;
            for b in row {
                r = Some(match r {
                    None => b.clone(),
                    Some(acc) => acc.hstack(b)?,
                });
            }
            let r = r.unwrap_or_else(|| PMatrix::zeros(field, 0, 0));
            out = Some(match out {
                None => r,
                Some(acc) => acc.vstack(&r)?,
            });
        }
        Ok(out.unwrap_or_else(|| PMatrix::zeros(field, 0, 0)))
    }

    pub fn block_diag(field: &LocalField, blocks: &[PMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn eq_at_precision(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.sub(other).map_or(false, |d| d.is_zero())
    }

    /// Entrywise congruence modulo `p^k`.
    pub fn congruent_mod_p(&self, other: &Self, k: i64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.congruent_mod_p(b, k))
    }

    /// Minimal valuation (in uniformizer units) of a nonzero entry.
    pub fn min_val_pi(&self) -> Option<i64> {
        self.data.iter().filter_map(|x| x.val_pi()).min()
    }

    /// Minimal absolute precision (in uniformizer units) among entries.
    pub fn precision(&self) -> i64 {
        self.data.iter().map(|x| x.precision()).min().unwrap_or(self.field.cap_pi())
    }

    pub fn with_precision(&self, prec: i64) -> Self {
        PMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.with_precision(prec)).collect(),
        }
    }

    /// Entrywise arithmetic Frobenius (unramified fields only).
    pub fn frobenius(&self) -> Result<Self> {
        let data = self.data.iter().map(|x| x.frobenius()).collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, self.rows, self.cols, data)
    }

    pub fn trace(&self) -> LocalFieldElement {
        (0..self.rows.min(self.cols)).fold(LocalFieldElement::zero(&self.field), |acc, i| &acc + self.get(i, i))
    }

    /// Reduction to reduced row echelon form. Pivots are chosen with minimal
    /// valuation, first among the columns of `priority[0]`, then `priority[1]`,
    /// and so on; columns not listed are never pivots.
    pub fn rref_with_priority(&self, priority: &[Vec<usize>]) -> Echelon {
        let mut a: Vec<Vec<LocalFieldElement>> = self.to_rows();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut used = vec![false; self.cols];
        let mut r = 0;
        for group in priority {
            loop {
                if r >= self.rows {
                    break;
                }
                let mut best: Option<(i64, usize, usize)> = None;
                for (i, row) in a.iter().enumerate().skip(r) {
                    for &j in group {
                        if used[j] {
                            continue;
                        }
                        if let Some(v) = row[j].val_pi() {
                            if best.map_or(true, |(bv, _, _)| v < bv) {
                                best = Some((v, i, j));
                            }
                        }
                    }
                }
                let Some((_, pi, pj)) = best else { break };
                a.swap(r, pi);
                let inv = a[r][pj].inv().expect("pivot is nonzero");
                for x in a[r].iter_mut() {
                    *x = &*x * &inv;
                }
                a[r][pj] = LocalFieldElement::one(&self.field).with_precision(a[r][pj].precision());
                let pivot_row = a[r].clone();
                for (i, row) in a.iter_mut().enumerate() {
                    if i == r || row[pj].is_zero() {
                        continue;
                    }
                    let factor = row[pj].clone();
                    for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                        *x = &*x - &(&factor * y);
                    }
                    row[pj] = LocalFieldElement::zero_with_prec(&self.field, row[pj].precision());
                }
                used[pj] = true;
                pivots.push((r, pj));
                r += 1;
            }
        }
        let reduced = PMatrix::from_rows(&self.field, a).unwrap_or_else(|_| PMatrix::zeros(&self.field, 0, self.cols));
        let reduced = if self.rows == 0 {
            PMatrix::zeros(&self.field, 0, self.cols)
        } else {
            reduced
        };
        Echelon { reduced, pivots }
    }

    pub fn rref(&self) -> Echelon {
        self.rref_with_priority(&[(0..self.cols).collect()])
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right kernel, as the columns of the returned matrix.
    pub fn kernel(&self) -> PMatrix {
        let ech = self.rref();
        kernel_from_echelon(&self.field, &ech, self.cols)
    }

    /// A solution of `A·x = b`, or `OutsideSpan` when inconsistent.
    pub fn solve(&self, b: &[LocalFieldElement]) -> Result<Vec<LocalFieldElement>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let rhs = PMatrix::from_columns(&self.field, self.rows, &[b.to_vec()])?;
        let aug = self.hstack(&rhs)?;
        let ech = aug.rref_with_priority(&[(0..self.cols).collect()]);
        let rank = ech.rank();
        for i in rank..self.rows {
            let x = ech.reduced.get(i, self.cols);
            if !x.is_zero() {
                return Err(Error::OutsideSpan(format!("{}", x.valuation().unwrap_or_default())));
            }
        }
        let mut x = vec![LocalFieldElement::zero(&self.field); self.cols];
        for &(r, c) in &ech.pivots {
            x[c] = ech.reduced.get(r, self.cols).clone();
        }
        Ok(x)
    }

    /// Columnwise solve `A·X = B`.
    pub fn solve_matrix(&self, b: &PMatrix) -> Result<PMatrix> {
        let cols = (0..b.cols).map(|j| self.solve(&b.col(j))).collect::<Result<Vec<_>>>()?;
        PMatrix::from_columns(&self.field, self.cols, &cols)
    }

    pub fn inverse(&self) -> Result<PMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&PMatrix::identity(&self.field, n))?;
        let ech = aug.rref_with_priority(&[(0..n).collect()]);
        if ech.rank() < n {
            return Err(Error::Singular);
        }
        let mut inv = PMatrix::zeros(&self.field, n, n);
        for &(r, c) in &ech.pivots {
            for j in 0..n {
                inv.set(c, j, ech.reduced.get(r, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial `det(x·I − A)`, division-free.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
        }
        let rows = self.to_rows();
        let coeffs = berkowitz(&rows, &LocalFieldElement::one(&self.field));
        Ok(Poly::new(&self.field, coeffs))
    }

    pub fn determinant(&self) -> Result<LocalFieldElement> {
        let cp = self.char_poly()?;
        let c0 = cp.coeff(0);
        Ok(if self.rows % 2 == 0 { c0 } else { -&c0 })
    }

    /// `P(A)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Result<PMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("polynomial in a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = PMatrix::zeros(&self.field, n, n);
        let id = PMatrix::identity(&self.field, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    /// Basis of the column space chosen among the original columns.
    pub fn column_space(&self) -> PMatrix {
        let ech = self.rref();
        let mut cols = ech.pivot_columns();
        cols.sort_unstable();
        self.select_columns(&cols)
    }

    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_literal()).collect())
            .collect()
    }

    pub fn from_literal_rows(field: &LocalField, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| LocalFieldElement::parse(field, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, parsed)
    }
}

pub(crate) fn kernel_from_echelon(field: &LocalField, ech: &Echelon, ncols: usize) -> PMatrix {
    let pivot_cols: Vec<usize> = ech.pivot_columns();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &j in &free {
        let mut v = vec![LocalFieldElement::zero(field); ncols];
        v[j] = LocalFieldElement::one(field);
        for &(r, c) in &ech.pivots {
            v[c] = -ech.reduced.get(r, j);
        }
        basis.push(v);
    }
    PMatrix::from_columns(field, ncols, &basis).expect("kernel columns have full length")
}

/// Columns of `candidates` that extend a basis of span(`base`), i.e. a basis of
/// the quotient span(base + candidates) / span(base), returned as columns.
pub fn quotient_basis(base: &PMatrix, candidates: &PMatrix) -> Result<PMatrix> {
    let field = base.field().clone();
    let joined = base.hstack(candidates)?;
    let nb = base.cols();
    let ech = joined.rref_with_priority(&[(0..nb).collect(), (nb..joined.cols()).collect()]);
    let mut picked: Vec<usize> = ech.pivot_columns().into_iter().filter(|&c| c >= nb).collect();
    picked.sort_unstable();
    let cols: Vec<Vec<LocalFieldElement>> = picked.iter().map(|&c| joined.col(c)).collect();
    PMatrix::from_columns(&field, base.rows(), &cols)
}

/// Whether `v` lies in the column span of `span`.
pub fn in_span(span: &PMatrix, v: &[LocalFieldElement]) -> bool {
    if span.cols() == 0 {
        return v.iter().all(|x| x.is_zero());
    }
    span.solve(v).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> LocalField {
        LocalField::qp(5, 20).unwrap()
    }

    #[test]
    fn identity_char_poly() {
        let k = q5();
        let cp = PMatrix::identity(&k, 2).char_poly().unwrap();
        assert!(cp.eq_at_precision(&Poly::from_ints(&k, &[1, -2, 1])));
    }

    #[test]
    fn diag_char_poly() {
        let k = q5();
        let m = PMatrix::from_int_rows(&k, &[vec![1, 0], vec![0, 5]]).unwrap();
        assert!(m.char_poly().unwrap().eq_at_precision(&Poly::from_ints(&k, &[5, -6, 1])));
    }

    #[test]
    fn inverse_round_trip() {
        let k = q5();
        let m = PMatrix::from_int_rows(&k, &[vec![2, 5, 1], vec![1, 1, 0], vec![0, 3, 7]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().eq_at_precision(&PMatrix::identity(&k, 3)));
    }

    #[test]
    fn kernel_is_annihilated() {
        let k = q5();
        let m = PMatrix::from_int_rows(&k, &[vec![1, 2, 3], vec![2, 4, 6], vec![5, 0, 10]]).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.cols(), 1);
        assert!(m.mul(&ker).unwrap().is_zero());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let k = q5();
        let m = PMatrix::from_int_rows(&k, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(m.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn quotient_basis_skips_base_span() {
        let k = q5();
        let base = PMatrix::from_int_rows(&k, &[vec![1], vec![0], vec![0]]).unwrap();
        let cand = PMatrix::from_int_rows(&k, &[vec![3, 1], vec![0, 1], vec![0, 0]]).unwrap();
        let q = quotient_basis(&base, &cand).unwrap();
        assert_eq!(q.cols(), 1);
    }
}
