use std::collections::BTreeMap;

use super::ring::{pow_r, CoeffRing};
use crate::error::{Error, Result};

/// Exponents of `x₁, x₂, y₁, y₂, z₁, z₂`.
pub type Monomial = [u32; 6];

/// A polynomial in the six variables `(x₁,x₂,y₁,y₂,z₁,z₂)`, homogeneous of
/// degree `r₁` in x, `r₂` in y and `r₃` in z.
#[derive(Clone, Debug)]
pub struct SymPowerElement<R: CoeffRing> {
    degrees: [u32; 3],
    terms: BTreeMap<Monomial, R>,
    one: R,
}

impl<R: CoeffRing> SymPowerElement<R> {
    pub fn zero(one: &R, degrees: [u32; 3]) -> Self {
        SymPowerElement {
            degrees,
            terms: BTreeMap::new(),
            one: one.one_like(),
        }
    }

    pub fn constant(c: R) -> Self {
        let mut s = Self::zero(&c, [0, 0, 0]);
        if !c.is_zero_r() {
            s.terms.insert([0; 6], c);
        }
        s
    }

    /// Validates the declared tri-degree monomial by monomial.
    pub fn from_terms(one: &R, degrees: [u32; 3], terms: Vec<(Monomial, R)>) -> Result<Self> {
        let mut s = Self::zero(one, degrees);
        for (m, c) in terms {
            if [m[0] + m[1], m[2] + m[3], m[4] + m[5]] != degrees {
                return Err(Error::Dimension(format!("monomial {m:?} is not of tri-degree {degrees:?}")));
            }
            s.add_term(m, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, m: Monomial, c: R) {
        let next = match self.terms.get(&m) {
            Some(old) => old.add_r(&c),
            None => c,
        };
        if next.is_zero_r() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, next);
        }
    }

    /// `det(a;b) = a₁b₂ − a₂b₁` for variable pairs `a, b ∈ {0,1,2}`.
    pub fn det_pair(one: &R, a: usize, b: usize) -> Self {
        let mut deg = [0; 3];
        deg[a] += 1;
        deg[b] += 1;
        let mut m1 = [0; 6];
        m1[2 * a] += 1;
        m1[2 * b + 1] += 1;
        let mut m2 = [0; 6];
        m2[2 * a + 1] += 1;
        m2[2 * b] += 1;
        let mut s = Self::zero(one, deg);
        s.add_term(m1, one.one_like());
        s.add_term(m2, one.neg_r());
        s
    }

    pub fn degrees(&self) -> [u32; 3] {
        self.degrees
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, R> {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .keys()
            .all(|m| [m[0] + m[1], m[2] + m[3], m[4] + m[5]] == self.degrees)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let deg = [0, 1, 2].map(|i| self.degrees[i] + other.degrees[i]);
        let mut out = Self::zero(&self.one, deg);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = [0, 1, 2, 3, 4, 5].map(|i| a[i] + b[i]);
                out.add_term(m, ca.mul_r(cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.one.one_like());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(&self.one, self.degrees);
        for (m, x) in &self.terms {
            out.add_term(*m, x.mul_r(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.neg_r());
        }
        out
    }

    pub fn eq_r(&self, other: &Self) -> bool {
        self.degrees == other.degrees && self.sub(other).terms.values().all(|c| c.is_zero_r())
    }

    /// Simultaneous linear substitution `(v₁, v₂) ↦ (a v₁ + b v₂, c v₁ + d v₂)`
    /// on each of the three pairs, for `m = [[a, b], [c, d]]`.
    pub fn substitute(&self, m: &[[R; 2]; 2]) -> Self {
        let one = &self.one;
        let lin = |k: usize, row: usize| -> SymPowerElement<R> {
            let mut deg = [0; 3];
            deg[k] = 1;
            let mut s = SymPowerElement::zero(one, deg);
            let mut e1 = [0; 6];
            e1[2 * k] = 1;
            let mut e2 = [0; 6];
            e2[2 * k + 1] = 1;
            s.add_term(e1, m[row][0].clone());
            s.add_term(e2, m[row][1].clone());
            s
        };
        let images: Vec<[SymPowerElement<R>; 2]> = (0..3).map(|k| [lin(k, 0), lin(k, 1)]).collect();
        let mut out = Self::zero(one, self.degrees);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i / 2][i % 2].pow(e));
                }
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }
}

/// `r = (r₁+r₂+r₃)/2` and the exponents `(r−r₁, r−r₂, r−r₃)`. Equality
/// cases (a zero exponent) are accepted.
pub fn det_exponents(r: [u32; 3]) -> Result<(u32, [u32; 3])> {
    let s = r[0] + r[1] + r[2];
    if s % 2 != 0 {
        return Err(Error::Weights(format!("(r₁+r₂+r₃)/2 is not an integer for {r:?}")));
    }
    let half = s / 2;
    if r.iter().any(|&x| x > half) {
        return Err(Error::Weights(format!("{r:?} has a negative exponent")));
    }
    Ok((half, r.map(|x| half - x)))
}

/// `P_r = det(x;y)^{r−r₃}·det(x;z)^{r−r₂}·det(y;z)^{r−r₁}`.
pub fn det_polynomial<R: CoeffRing>(r: [u32; 3], one: &R) -> Result<SymPowerElement<R>> {
    let (_, e) = det_exponents(r)?;
    let xy = SymPowerElement::det_pair(one, 0, 1).pow(e[2]);
    let xz = SymPowerElement::det_pair(one, 0, 2).pow(e[1]);
    let yz = SymPowerElement::det_pair(one, 1, 2).pow(e[0]);
    Ok(xy.mul(&xz).mul(&yz))
}

/// `(g*P)(v) = P(g^{−1}v)` on each variable pair.
pub fn gl2_act<R: CoeffRing>(g: &[[R; 2]; 2], p: &SymPowerElement<R>) -> Result<SymPowerElement<R>> {
    let det = g[0][0].mul_r(&g[1][1]).sub_r(&g[0][1].mul_r(&g[1][0]));
    let inv = det.inverse().ok_or(Error::NonInvertibleDeterminant)?;
    let ginv = [
        [g[1][1].mul_r(&inv), g[0][1].neg_r().mul_r(&inv)],
        [g[1][0].neg_r().mul_r(&inv), g[0][0].mul_r(&inv)],
    ];
    Ok(p.substitute(&ginv))
}

/// `det(g)^m`, allowing negative `m` for unit determinants.
pub fn det_power<R: CoeffRing>(g: &[[R; 2]; 2], m: i64) -> Result<R> {
    let det = g[0][0].mul_r(&g[1][1]).sub_r(&g[0][1].mul_r(&g[1][0]));
    let base = if m < 0 {
        det.inverse().ok_or(Error::NonInvertibleDeterminant)?
    } else {
        det
    };
    Ok(pow_r(&base, m.unsigned_abs()))
}

/// An element of `R[m]`: g acts by `det(g)^m`.
#[derive(Clone, Debug)]
pub struct TwistedScalar<R: CoeffRing> {
    pub value: R,
    pub twist: i64,
}

impl<R: CoeffRing> TwistedScalar<R> {
    pub fn act(&self, g: &[[R; 2]; 2]) -> Result<Self> {
        Ok(TwistedScalar {
            value: self.value.mul_r(&det_power(g, self.twist)?),
            twist: self.twist,
        })
    }
}
