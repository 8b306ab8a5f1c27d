use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::localfield::{is_prime, LocalFieldElement, Ring};

/// Coefficients for the symmetric-power algebra: a commutative ring with unit
/// detection.
pub trait CoeffRing: Ring + fmt::Debug {
    fn is_zero_r(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    fn from_i64(&self, n: i64) -> Self;
    fn eq_r(&self, other: &Self) -> bool;
}

impl CoeffRing for LocalFieldElement {
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_i64(&self, n: i64) -> Self {
        LocalFieldElement::from_int(self.field(), n)
    }
    fn eq_r(&self, other: &Self) -> bool {
        self.eq_at_precision(other)
    }
}

/// `Z/p^e`, stored as a residue in `[0, p^e)`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct ZMod {
    value: u64,
    modulus: u64,
}

impl fmt::Debug for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl ZMod {
    /// `modulus` must be a prime power below 2³².
    pub fn new(value: i64, modulus: u64) -> Self {
        ZMod {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn prime_power(p: u64, e: u32) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        p.checked_pow(e)
            .filter(|m| *m < (1 << 32))
            .ok_or_else(|| Error::Precondition(format!("{p}^{e} is too large")))
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Ring for ZMod {
    fn zero_like(&self) -> Self {
        ZMod::new(0, self.modulus)
    }
    fn one_like(&self) -> Self {
        ZMod::new(1, self.modulus)
    }
    fn add_r(&self, o: &Self) -> Self {
        ZMod {
            value: (self.value + o.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn sub_r(&self, o: &Self) -> Self {
        ZMod {
            value: (self.value + self.modulus - o.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn mul_r(&self, o: &Self) -> Self {
        ZMod {
            value: self.value * o.value % self.modulus,
            modulus: self.modulus,
        }
    }
    fn neg_r(&self) -> Self {
        ZMod {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl CoeffRing for ZMod {
    fn is_zero_r(&self) -> bool {
        self.value == 0
    }
    fn inverse(&self) -> Option<Self> {
        let eg = (self.value as i64).extended_gcd(&(self.modulus as i64));
        (eg.gcd == 1).then(|| ZMod::new(eg.x, self.modulus))
    }
    fn from_i64(&self, n: i64) -> Self {
        ZMod::new(n, self.modulus)
    }
    fn eq_r(&self, other: &Self) -> bool {
        self == other
    }
}

pub(crate) fn pow_r<R: CoeffRing>(x: &R, n: u64) -> R {
    let mut acc = x.one_like();
    for _ in 0..n {
        acc = acc.mul_r(x);
    }
    acc
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
}

impl CoeffRing for BigRational {
    fn is_zero_r(&self) -> bool {
        self.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn from_i64(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn eq_r(&self, other: &Self) -> bool {
        self == other
    }
}
