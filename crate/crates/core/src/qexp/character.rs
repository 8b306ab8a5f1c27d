use num_integer::Integer;

use crate::error::{Error, Result};
use crate::localfield::{LocalField, LocalFieldElement};

/// Standard generators of `(Z/N)^×` with their orders: one primitive root per
/// odd prime power (CRT-lifted), and `−1`, `5` for powers of two.
pub fn unit_group_generators(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if n <= 2 {
        return out;
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            let mut pa = 1;
            while rest % d == 0 {
                rest /= d;
                pa *= d;
            }
            factors.push((d, pa));
        }
        d += 1;
    }
    if rest > 1 {
        factors.push((rest, rest));
    }
    for &(p, pa) in &factors {
        let others = n / pa;
        // lift x mod pa to N with 1 on the other factors
        let lift = |x: u64| -> u64 {
            if others == 1 {
                return x % n;
            }
            // solve y ≡ x (mod pa), y ≡ 1 (mod others)
            let inv = mod_inverse(others % pa, pa);
            let t = ((x + pa - 1) % pa) * inv % pa;
            (1 + others * t) % n
        };
        if p == 2 {
            if pa == 4 {
                out.push((lift(3), 2));
            } else if pa >= 8 {
                out.push((lift(pa - 1), 2));
                out.push((lift(5), pa / 4));
            }
            continue;
        }
        let phi = pa / p * (p - 1);
        let g = (2..pa)
            .find(|&g| g.gcd(&p) == 1 && multiplicative_order(g, pa) == phi)
            .expect("odd prime powers have primitive roots");
        out.push((lift(g), phi));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(m as i128) as u64
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
        if k > m {
            return 0;
        }
    }
    k
}

/// A Dirichlet character with values in a local field.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    field: LocalField,
    /// `values[n]` for residues coprime to the modulus, `None` otherwise.
    values: Vec<Option<LocalFieldElement>>,
    generator_values: Vec<LocalFieldElement>,
}

impl DirichletCharacter {
    /// Character determined by its values on [`unit_group_generators`].
    pub fn from_generator_values(field: &LocalField, modulus: u64, gen_values: Vec<LocalFieldElement>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Character("modulus must be positive".into()));
        }
        let gens = unit_group_generators(modulus);
        if gens.len() != gen_values.len() {
            return Err(Error::Character(format!(
                "modulus {modulus} needs {} generator values, got {}",
                gens.len(),
                gen_values.len()
            )));
        }
        let one = LocalFieldElement::one(field);
        for ((g, order), v) in gens.iter().zip(&gen_values) {
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !v.pow_u(*order).eq_at_precision(&one) {
                return Err(Error::Character(format!(
                    "value at generator {g} is not a root of unity of order dividing {order}"
                )));
            }
        }
        let m = modulus as usize;
        let mut values: Vec<Option<LocalFieldElement>> = vec![None; m.max(1)];
        values[1 % m.max(1)] = Some(one.clone());
        let mut elems: Vec<(u64, LocalFieldElement)> = vec![(1 % modulus, one)];
        for ((g, order), v) in gens.iter().zip(&gen_values) {
            let mut next = Vec::with_capacity(elems.len() * *order as usize);
            for (r, val) in &elems {
                let mut rr = *r;
                let mut vv = val.clone();
                for _ in 0..*order {
                    next.push((rr, vv.clone()));
                    rr = rr * g % modulus;
                    vv = &vv * v;
                }
            }
            elems = next;
        }
        for (r, v) in elems {
            values[r as usize] = Some(v);
        }
        Ok(DirichletCharacter {
            modulus,
            field: field.clone(),
            values,
            generator_values: gen_values,
        })
    }

    pub fn trivial(field: &LocalField, modulus: u64) -> Self {
        let gens = unit_group_generators(modulus);
        let vals = gens.iter().map(|_| LocalFieldElement::one(field)).collect();
        Self::from_generator_values(field, modulus, vals).expect("trivial character is valid")
    }

    /// `ω^k` for the Teichmüller character ω modulo `p`.
    pub fn teichmuller_power(field: &LocalField, k: i64) -> Result<Self> {
        let p = field.p();
        let gens = unit_group_generators(p);
        let (g, _) = gens[0];
        let t = LocalFieldElement::teichmuller_int(field, g as i64)?;
        let order = (p - 1) as i64;
        let v = t.pow(k.rem_euclid(order))?;
        Self::from_generator_values(field, p, vec![v])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn generator_values(&self) -> &[LocalFieldElement] {
        &self.generator_values
    }

    /// `χ(n)`, zero when `gcd(n, modulus) > 1`.
    pub fn value(&self, n: i64) -> LocalFieldElement {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        match &self.values[r] {
            Some(v) => v.clone(),
            None => LocalFieldElement::zero(&self.field),
        }
    }

    pub fn is_trivial(&self) -> bool {
        let one = LocalFieldElement::one(&self.field);
        self.values.iter().flatten().all(|v| v.eq_at_precision(&one))
    }

    /// Same character viewed modulo a multiple of the modulus.
    pub fn extend(&self, modulus: u64) -> Result<Self> {
        if modulus % self.modulus != 0 {
            return Err(Error::Character(format!("{modulus} is not a multiple of {}", self.modulus)));
        }
        let gens = unit_group_generators(modulus);
        let vals = gens.iter().map(|&(g, _)| self.value(g as i64)).collect();
        Self::from_generator_values(&self.field, modulus, vals)
    }

    /// Product character modulo the lcm of the moduli.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let m = self.modulus.lcm(&other.modulus);
        let gens = unit_group_generators(m);
        let vals = gens
            .iter()
            .map(|&(g, _)| &self.value(g as i64) * &other.value(g as i64))
            .collect();
        Self::from_generator_values(&self.field, m, vals)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let gens = unit_group_generators(self.modulus);
        let vals = gens
            .iter()
            .map(|&(g, _)| self.value(g as i64).pow(k))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator_values(&self.field, self.modulus, vals)
    }

    pub fn conj(&self) -> Result<Self> {
        self.pow(-1)
    }

    /// Same values on every residue coprime to both moduli.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let m = self.modulus.lcm(&other.modulus);
        (1..=m as i64)
            .filter(|n| n.gcd(&(m as i64)) == 1)
            .all(|n| self.value(n).eq_at_precision(&other.value(n)))
    }

    /// Full scan of `χ(ab) = χ(a)χ(b)` and of the zero pattern.
    pub fn check_multiplicative(&self) -> Result<()> {
        let m = self.modulus as i64;
        for a in 0..m {
            let va = self.value(a);
            if (a.gcd(&m) == 1) == va.is_zero() {
                return Err(Error::Character(format!("zero pattern wrong at {a}")));
            }
            for b in 0..m {
                let lhs = self.value(a * b);
                let rhs = &va * &self.value(b);
                if !lhs.eq_at_precision(&rhs) {
                    return Err(Error::Character(format!("χ({a}·{b}) ≠ χ({a})χ({b})")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_have_expected_orders() {
        assert_eq!(unit_group_generators(7), vec![(3, 6)]);
        let g = unit_group_generators(15);
        assert_eq!(g.len(), 2);
        let orders: Vec<u64> = g.iter().map(|&(_, o)| o).collect();
        assert_eq!(orders.iter().product::<u64>(), 8);
        assert_eq!(unit_group_generators(16).len(), 2);
    }

    #[test]
    fn teichmuller_character_is_multiplicative() {
        let k = LocalField::qp(7, 10).unwrap();
        let w = DirichletCharacter::teichmuller_power(&k, 1).unwrap();
        w.check_multiplicative().unwrap();
        assert!(w.value(7).is_zero());
        assert_eq!(w.value(3).residue().unwrap(), vec![3]);
    }

    #[test]
    fn character_times_conjugate_is_trivial() {
        let k = LocalField::qp(7, 10).unwrap();
        let w = DirichletCharacter::teichmuller_power(&k, 2).unwrap();
        let t = w.mul(&w.conj().unwrap()).unwrap();
        assert!(t.is_trivial());
    }

    #[test]
    fn wrong_generator_value_is_rejected() {
        let k = LocalField::qp(7, 10).unwrap();
        let bad = LocalFieldElement::from_int(&k, 2);
        assert!(DirichletCharacter::from_generator_values(&k, 7, vec![bad]).is_err());
    }
}
