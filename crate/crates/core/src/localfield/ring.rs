use super::element::LocalFieldElement;

/// Minimal commutative-ring interface for division-free algorithms.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_r(&self, other: &Self) -> Self;
    fn sub_r(&self, other: &Self) -> Self;
    fn mul_r(&self, other: &Self) -> Self;
    fn neg_r(&self) -> Self;
}

impl Ring for LocalFieldElement {
    fn zero_like(&self) -> Self {
        LocalFieldElement::zero(self.field())
    }
    fn one_like(&self) -> Self {
        LocalFieldElement::one(self.field())
    }
    fn add_r(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_r(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_r(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_r(&self) -> Self {
        -self
    }
}

/// Characteristic polynomial `det(x·I − A)` by Berkowitz's division-free
/// algorithm. Coefficients are returned lowest degree first (length n + 1).
///
/// `one` is used for the empty matrix.
pub fn berkowitz<T: Ring>(a: &[Vec<T>], one: &T) -> Vec<T> {
    let n = a.len();
    if n == 0 {
        return vec![one.one_like()];
    }
    let zero = one.zero_like();
    // highest-degree-first coefficients of the leading principal minors
    let mut c: Vec<T> = vec![one.one_like(), a[0][0].neg_r()];
    for r in 1..n {
        // t_0 = 1, t_1 = -a_rr, t_k = -R·A_r^(k-2)·S
        let mut t: Vec<T> = Vec::with_capacity(r + 2);
        t.push(one.one_like());
        t.push(a[r][r].neg_r());
        let mut v: Vec<T> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(zero.clone(), |acc, j| acc.add_r(&a[r][j].mul_r(&v[j])));
            t.push(dot.neg_r());
            let next: Vec<T> = (0..r)
                .map(|i| (0..r).fold(zero.clone(), |acc, j| acc.add_r(&a[i][j].mul_r(&v[j]))))
                .collect();
            v = next;
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = zero.clone();
            for j in 0..=i.min(r) {
                s = s.add_r(&t[i - j].mul_r(&c[j]));
            }
            next.push(s);
        }
        c = next;
    }
    c.reverse();
    c
}

/// Determinant via [`berkowitz`].
pub fn determinant<T: Ring>(a: &[Vec<T>], one: &T) -> T {
    let n = a.len();
    let cp = berkowitz(a, one);
    if n % 2 == 0 {
        cp[0].clone()
    } else {
        cp[0].neg_r()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::LocalField;

    #[test]
    fn determinant_of_small_integer_matrix() {
        let k = LocalField::qp(7, 20).unwrap();
        let e = |n: i64| LocalFieldElement::from_int(&k, n);
        let a = vec![vec![e(2), e(1), e(0)], vec![e(1), e(3), e(1)], vec![e(0), e(1), e(4)]];
        // 2(12-1) - 1(4-0) = 18
        assert!(determinant(&a, &e(1)).eq_at_precision(&e(18)));
        let cp = berkowitz(&a, &e(1));
        // trace 9
        assert!(cp[2].eq_at_precision(&e(-9)));
        assert!(cp[3].eq_at_precision(&e(1)));
    }
}
