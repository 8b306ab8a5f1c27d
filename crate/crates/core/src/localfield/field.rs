use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Extra p-adic digits carried by internal Newton iterations beyond the cap.
pub(crate) const GUARD: i64 = 8;

/// A finite extension `F = F₀(π)` of `Q_p`, with `F₀ = Q_{p^f}` unramified and
/// `π` a root of an Eisenstein polynomial over the ring of integers of `F₀`.
///
/// Elements are stored in the integral power basis `θ^j π^i` (`j < f`, `i < e`)
/// where `θ` is a root of a fixed monic polynomial that is irreducible (and
/// primitive) modulo `p`.
#[derive(Clone)]
pub struct LocalField(pub(crate) Arc<FieldData>);

pub(crate) struct FieldData {
    pub p: u64,
    pub pb: BigInt,
    pub f: usize,
    pub e: usize,
    /// Monic modulus of θ, lowest degree first, length f + 1.
    pub modulus: Vec<BigInt>,
    /// Eisenstein coefficients E_0..E_{e-1}, each a Z_q coordinate vector.
    pub eisenstein: Option<Vec<Vec<BigInt>>>,
    pub cap: i64,
    powers: Vec<BigInt>,
    /// σ(θ) modulo p^(cap + GUARD).
    pub frobenius: Vec<BigInt>,
    /// (E_0 / p)^{-1} modulo p^(cap + GUARD), when ramified.
    pub e0_unit_inv: Option<Vec<BigInt>>,
}

/// An Eisenstein polynomial `π^e + E_{e-1} π^{e-1} + … + E_0` over `Z_{p^f}`.
///
/// Each coefficient is a coordinate vector in the θ-basis of the unramified
/// subfield (a plain integer when `f = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinPoly {
    pub coefficients: Vec<Vec<BigInt>>,
}

impl EisensteinPoly {
    /// Eisenstein polynomial with rational-integer coefficients `E_0, …, E_{e-1}`.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        EisensteinPoly {
            coefficients: coeffs.iter().map(|&c| vec![BigInt::from(c)]).collect(),
        }
    }
}

impl PartialEq for LocalField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.f == other.0.f
                && self.0.e == other.0.e
                && self.0.cap == other.0.cap
                && self.0.modulus == other.0.modulus
                && self.0.eisenstein == other.0.eisenstein)
    }
}
impl Eq for LocalField {}

impl fmt::Debug for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LocalField(p={}, f={}, e={}, cap={})",
            self.0.p, self.0.f, self.0.e, self.0.cap
        )
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- small F_p[x] helpers (coefficients lowest first) ----

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    fp_rem(prod, m, p)
}

/// Remainder modulo a monic polynomial.
fn fp_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    fp_trim(&mut a);
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - (lead * c) % p) % p;
        }
        fp_trim(&mut a);
    }
    a
}

fn fp_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = fp_rem(base.to_vec(), m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = fp_mulmod(&result, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    fp_rem(result, m, p)
}

fn fp_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        // make b monic
        let inv = modinv_u64(*b.last().unwrap(), p);
        for c in b.iter_mut() {
            *c = *c * inv % p;
        }
        let r = fp_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

pub(crate) fn modinv_u64(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rabin irreducibility test plus a primitivity check on x.
fn is_primitive_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    let x = vec![0u64, 1];
    // x^(p^n) == x
    let mut xp = x.clone();
    for _ in 0..n {
        xp = fp_powmod(&xp, p, m, p);
    }
    if fp_rem(xp, m, p) != fp_rem(x.clone(), m, p) {
        return false;
    }
    for r in prime_factors(n as u64) {
        let mut xq = x.clone();
        for _ in 0..(n as u64 / r) {
            xq = fp_powmod(&xq, p, m, p);
        }
        // gcd(x^(p^(n/r)) - x, m) must be 1
        let mut diff = xq;
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = fp_gcd(m.to_vec(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    let order = p.pow(n as u32) - 1;
    for r in prime_factors(order) {
        if fp_powmod(&x, order / r, m, p) == vec![1] {
            return false;
        }
    }
    true
}

/// Lexicographically first monic primitive polynomial of degree `n` over F_p.
fn primitive_modulus(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        // x - g for the least primitive root g
        let order = p - 1;
        let g = (2..p)
            .find(|&g| {
                prime_factors(order)
                    .iter()
                    .all(|&r| fp_powmod(&[g], order / r, &[0, 1], p) != vec![1])
            })
            .unwrap_or(1);
        return vec![(p - g) % p, 1];
    }
    let total = p.pow(n as u32);
    for idx in 0..total {
        let mut m = Vec::with_capacity(n + 1);
        let mut t = idx;
        for _ in 0..n {
            m.push(t % p);
            t /= p;
        }
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if is_primitive_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

impl LocalField {
    /// Builds `Q_{p^f}` (when `eisenstein` is `None`) or its Eisenstein extension,
    /// with absolute precision cap `cap` p-adic digits.
    pub fn new(p: u64, unram_degree: usize, eisenstein: Option<EisensteinPoly>, cap: i64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        if unram_degree == 0 {
            return Err(Error::Schema("unramified degree must be positive".into()));
        }
        if cap <= 0 {
            return Err(Error::Schema("precision cap must be positive".into()));
        }
        let f = unram_degree;
        let pb = BigInt::from(p);
        let modulus: Vec<BigInt> = if f == 1 {
            // θ = 1 is enough when f = 1; we keep the modulus x - 1 so θ is a unit.
            vec![BigInt::from(-1), BigInt::one()]
        } else {
            primitive_modulus(p, f).into_iter().map(BigInt::from).collect()
        };
        let eis = match eisenstein {
            None => None,
            Some(ep) => {
                let e = ep.coefficients.len();
                if e == 0 {
                    return Err(Error::NotEisenstein("degree zero".into()));
                }
                let mut coeffs = Vec::with_capacity(e);
                for (i, c) in ep.coefficients.iter().enumerate() {
                    if c.len() > f {
                        return Err(Error::NotEisenstein(format!(
                            "coefficient {i} has {} coordinates, expected at most {f}",
                            c.len()
                        )));
                    }
                    let mut c = c.clone();
                    c.resize(f, BigInt::zero());
                    if c.iter().any(|x| !x.is_multiple_of(&pb)) {
                        return Err(Error::NotEisenstein(format!("coefficient {i} is not divisible by p")));
                    }
                    coeffs.push(c);
                }
                let p2 = &pb * &pb;
                if coeffs[0].iter().all(|x| x.is_multiple_of(&p2)) {
                    return Err(Error::NotEisenstein("constant term divisible by p^2".into()));
                }
                if e == 1 {
                    None
                } else {
                    Some(coeffs)
                }
            }
        };
        let e = eis.as_ref().map_or(1, |c| c.len());
        let top = ((cap + 4 * GUARD) * 4 + 64) as usize;
        let mut powers = Vec::with_capacity(top);
        let mut acc = BigInt::one();
        for _ in 0..top {
            powers.push(acc.clone());
            acc *= &pb;
        }
        let mut data = FieldData {
            p,
            pb,
            f,
            e,
            modulus,
            eisenstein: eis,
            cap,
            powers,
            frobenius: vec![],
            e0_unit_inv: None,
        };
        data.frobenius = data.compute_frobenius();
        if let Some(eis) = &data.eisenstein {
            let unit: Vec<BigInt> = eis[0].iter().map(|x| x / &data.pb).collect();
            data.e0_unit_inv = Some(data.zq_unit_inverse(&unit, cap + 2 * GUARD));
        }
        Ok(LocalField(Arc::new(data)))
    }

    /// `Q_p` with precision cap `cap`.
    pub fn qp(p: u64, cap: i64) -> Result<Self> {
        Self::new(p, 1, None, cap)
    }

    /// The unramified extension of degree `f`.
    pub fn unramified(p: u64, f: usize, cap: i64) -> Result<Self> {
        Self::new(p, f, None, cap)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn unram_degree(&self) -> usize {
        self.0.f
    }
    pub fn ram_index(&self) -> usize {
        self.0.e
    }
    pub fn degree(&self) -> usize {
        self.0.e * self.0.f
    }
    /// Cardinality of the residue field, `p^f`.
    pub fn residue_size(&self) -> u64 {
        self.0.p.pow(self.0.f as u32)
    }
    pub fn precision_cap(&self) -> i64 {
        self.0.cap
    }
    /// Absolute precision cap measured in powers of the uniformizer.
    pub fn cap_pi(&self) -> i64 {
        self.0.cap * self.0.e as i64
    }
    pub fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }
    pub fn eisenstein(&self) -> Option<&[Vec<BigInt>]> {
        self.0.eisenstein.as_deref()
    }
    pub fn is_unramified(&self) -> bool {
        self.0.e == 1
    }

    /// Same field with a different precision cap.
    pub fn with_cap(&self, cap: i64) -> Result<Self> {
        let eis = self.0.eisenstein.as_ref().map(|c| EisensteinPoly { coefficients: c.clone() });
        let eis = if self.0.e == 1 { None } else { eis };
        let out = LocalField::new(self.0.p, self.0.f, eis, cap)?;
        Ok(out)
    }

    /// Valuation of the uniformizer, `1/e`.
    pub fn uniformizer_valuation(&self) -> Ratio<i64> {
        Ratio::new(1, self.0.e as i64)
    }
}

impl FieldData {
    pub fn ppow(&self, k: i64) -> BigInt {
        assert!(k >= 0, "negative power of p");
        let k = k as usize;
        if k < self.powers.len() {
            self.powers[k].clone()
        } else {
            num_traits::pow(self.pb.clone(), k)
        }
    }

    pub fn ppow_ref(&self, k: i64) -> Option<&BigInt> {
        if k >= 0 && (k as usize) < self.powers.len() {
            Some(&self.powers[k as usize])
        } else {
            None
        }
    }

    /// p-adic valuation of a nonzero integer.
    pub fn vp_int(&self, x: &BigInt) -> i64 {
        debug_assert!(!x.is_zero());
        let mut v = 0;
        let mut y = x.clone();
        loop {
            let (q, r) = y.div_rem(&self.pb);
            if !r.is_zero() {
                return v;
            }
            y = q;
            v += 1;
        }
    }

    pub fn modp(&self, x: &BigInt, k: i64) -> BigInt {
        if k <= 0 {
            return BigInt::zero();
        }
        match self.ppow_ref(k) {
            Some(m) => x.mod_floor(m),
            None => x.mod_floor(&self.ppow(k)),
        }
    }

    // ---- Z_q = Z[θ]/(g) arithmetic on coordinate vectors of length f ----

    pub fn zq_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let f = self.f;
        if f == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigInt::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        for k in (f..prod.len()).rev() {
            let lead = std::mem::take(&mut prod[k]);
            if lead.is_zero() {
                continue;
            }
            for i in 0..f {
                if !self.modulus[i].is_zero() {
                    let t = &lead * &self.modulus[i];
                    prod[k - f + i] -= t;
                }
            }
        }
        prod.truncate(f);
        prod
    }

    pub fn zq_reduce(&self, a: &mut [BigInt], k: i64) {
        for x in a.iter_mut() {
            *x = self.modp(x, k);
        }
    }

    /// Minimal p-adic valuation over the coordinates, `None` if all vanish.
    pub fn zq_val(&self, a: &[BigInt]) -> Option<i64> {
        a.iter().filter(|x| !x.is_zero()).map(|x| self.vp_int(x)).min()
    }

    /// Inverse of a unit of Z_q modulo p^k via Newton iteration.
    pub fn zq_unit_inverse(&self, u: &[BigInt], k: i64) -> Vec<BigInt> {
        let p = self.p;
        let f = self.f;
        // residue inverse in F_q via x^(q-2)
        let m: Vec<u64> = self
            .modulus
            .iter()
            .map(|c| c.mod_floor(&self.pb).try_into().unwrap())
            .collect();
        let ubar: Vec<u64> = u.iter().map(|c| c.mod_floor(&self.pb).try_into().unwrap()).collect();
        let q = p.pow(f as u32);
        let inv = if f == 1 {
            vec![modinv_u64(ubar[0], p)]
        } else {
            fp_powmod(&ubar, q - 2, &m, p)
        };
        let mut y: Vec<BigInt> = (0..f).map(|j| BigInt::from(*inv.get(j).unwrap_or(&0))).collect();
        let mut prec = 1;
        let two = BigInt::from(2);
        while prec < k {
            prec = (2 * prec).min(k);
            let uy = self.zq_mul(u, &y);
            let mut t: Vec<BigInt> = uy.iter().map(|c| -c).collect();
            t[0] += &two;
            y = self.zq_mul(&y, &t);
            self.zq_reduce(&mut y, prec);
        }
        self.zq_reduce(&mut y, k);
        y
    }

    fn eval_modulus(&self, x: &[BigInt], k: i64) -> Vec<BigInt> {
        // Horner evaluation of g at x in Z_q
        let f = self.f;
        let mut acc = vec![BigInt::zero(); f];
        for c in self.modulus.iter().rev() {
            acc = self.zq_mul(&acc, x);
            acc[0] += c;
            self.zq_reduce(&mut acc, k);
        }
        acc
    }

    fn eval_modulus_derivative(&self, x: &[BigInt], k: i64) -> Vec<BigInt> {
        let f = self.f;
        let mut acc = vec![BigInt::zero(); f];
        for (i, c) in self.modulus.iter().enumerate().skip(1).rev() {
            acc = self.zq_mul(&acc, x);
            acc[0] += c * BigInt::from(i);
            self.zq_reduce(&mut acc, k);
        }
        acc
    }

    /// σ(θ): the root of the modulus congruent to θ^p, lifted by Newton.
    fn compute_frobenius(&self) -> Vec<BigInt> {
        let f = self.f;
        let k = self.cap + 2 * GUARD;
        if f == 1 {
            return vec![BigInt::one()];
        }
        let mut theta = vec![BigInt::zero(); f];
        theta[1] = BigInt::one();
        // θ^p
        let mut x = vec![BigInt::zero(); f];
        x[0] = BigInt::one();
        for _ in 0..self.p {
            x = self.zq_mul(&x, &theta);
        }
        self.zq_reduce(&mut x, k);
        let mut prec = 1;
        while prec < k {
            prec = (2 * prec).min(k);
            let gx = self.eval_modulus(&x, prec);
            let dg = self.eval_modulus_derivative(&x, prec);
            let inv = self.zq_unit_inverse(&dg, prec);
            let corr = self.zq_mul(&gx, &inv);
            for (xi, ci) in x.iter_mut().zip(corr.iter()) {
                *xi -= ci;
            }
            self.zq_reduce(&mut x, prec);
        }
        x
    }
}

/// ceil(a / b) for b > 0.
pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

