//! Text form of p-adic values: `u * p^v + O(p^k)` and `[c0, c1, ...]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::element::LocalFieldElement;
use super::field::{ceil_div, LocalField};
use crate::error::{Error, Result};

fn lit_err(literal: &str, reason: impl Into<String>) -> Error {
    Error::Literal {
        literal: literal.to_string(),
        reason: reason.into(),
    }
}

/// A parsed scalar literal `u * p^v + O(p^k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarLiteral {
    pub unit: BigInt,
    pub exponent: i64,
    pub precision: i64,
}

fn parse_prime(s: &str, p: u64, whole: &str) -> Result<()> {
    let s = s.trim();
    if s == "p" {
        return Ok(());
    }
    match s.parse::<u64>() {
        Ok(q) if q == p => Ok(()),
        Ok(q) => Err(lit_err(whole, format!("prime {q} does not match field prime {p}"))),
        Err(_) => Err(lit_err(whole, format!("expected the prime, found `{s}`"))),
    }
}

/// Parses `u * p^v + O(p^k)`; `p` may be the literal letter or the numeric prime.
pub fn parse_scalar(text: &str, p: u64) -> Result<ScalarLiteral> {
    let t = text.trim();
    let (value, big_o) = t
        .rsplit_once('+')
        .ok_or_else(|| lit_err(t, "missing `+ O(p^k)` term"))?;
    let big_o = big_o.trim();
    let inner = big_o
        .strip_prefix("O(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| lit_err(t, "precision term must look like O(p^k)"))?;
    let (bp, k) = inner.split_once('^').ok_or_else(|| lit_err(t, "precision term lacks `^`"))?;
    parse_prime(bp, p, t)?;
    let precision: i64 = k.trim().parse().map_err(|_| lit_err(t, "precision exponent is not an integer"))?;
    let (u, pv) = value.split_once('*').ok_or_else(|| lit_err(t, "missing `*` between unit and power"))?;
    let unit: BigInt = u.trim().parse().map_err(|_| lit_err(t, "unit is not a decimal integer"))?;
    let (bp, v) = pv.split_once('^').ok_or_else(|| lit_err(t, "power term lacks `^`"))?;
    parse_prime(bp, p, t)?;
    let exponent: i64 = v.trim().parse().map_err(|_| lit_err(t, "exponent is not an integer"))?;
    Ok(ScalarLiteral {
        unit,
        exponent,
        precision,
    })
}

/// Canonical text of `p^shift · c` known modulo `p^k`.
pub(crate) fn format_scalar(p: u64, shift: i64, c: &BigInt, k: i64) -> String {
    if c.is_zero() {
        return format!("0 * {p}^0 + O({p}^{k})");
    }
    let pb = BigInt::from(p);
    let mut u = c.clone();
    let mut v = shift;
    loop {
        let (q, r) = u.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        u = q;
        v += 1;
    }
    if u.is_negative() {
        let m = num_traits::pow(pb, (k - v).max(0) as usize);
        u = u.mod_floor(&m);
    }
    format!("{u} * {p}^{v} + O({p}^{k})")
}

impl LocalFieldElement {
    /// Canonical literal. Elements of `Q_p` print as a single scalar, others as a
    /// coordinate list in the basis `π^i θ^j` (index `i·f + j`).
    pub fn to_literal(&self) -> String {
        let field = self.field();
        let (e, f, p) = (field.ram_index(), field.unram_degree(), field.p());
        let coords = self.raw_coords();
        let shift = self.shift();
        if e * f == 1 {
            return format_scalar(p, shift, &coords[0], self.precision());
        }
        let parts: Vec<String> = (0..e * f)
            .map(|idx| {
                let i = idx / f;
                let k = ceil_div(self.precision() - i as i64, e as i64);
                format_scalar(p, shift, &coords[idx], k)
            })
            .collect();
        format!("[{}]", parts.join(", "))
    }

    /// Parses either form of [`to_literal`](Self::to_literal).
    pub fn parse(field: &LocalField, text: &str) -> Result<Self> {
        Self::parse_with(field, text, false)
    }

    /// As [`parse`](Self::parse), but digits beyond the field cap are dropped
    /// instead of rejected.
    pub fn parse_truncating(field: &LocalField, text: &str) -> Result<Self> {
        Self::parse_with(field, text, true)
    }

    fn parse_with(field: &LocalField, text: &str, truncate: bool) -> Result<Self> {
        let t = text.trim();
        let clamp = |mut s: ScalarLiteral| {
            if truncate {
                s.precision = s.precision.min(field.precision_cap());
            }
            s
        };
        if let Some(body) = t.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| lit_err(t, "unterminated coordinate list"))?;
            let items: Vec<&str> = if body.trim().is_empty() {
                vec![]
            } else {
                body.split(',').collect()
            };
            let (e, f) = (field.ram_index(), field.unram_degree());
            if items.len() != e * f {
                return Err(lit_err(t, format!("expected {} coordinates, found {}", e * f, items.len())));
            }
            let mut acc = LocalFieldElement::zero(field);
            for (idx, item) in items.iter().enumerate() {
                let s = clamp(parse_scalar(item, field.p())?);
                let i = (idx / f) as i64;
                let c = scalar_to_element(field, &s, t)?;
                let b = LocalFieldElement::basis_element(field, idx);
                let term = &c * &b;
                // the coordinate is known modulo p^k, so the term modulo π^(e·k + i)
                let term = term.with_precision(e as i64 * s.precision + i);
                acc = &acc + &term;
            }
            Ok(acc)
        } else {
            let s = clamp(parse_scalar(t, field.p())?);
            let c = scalar_to_element(field, &s, t)?;
            Ok(c.with_precision(field.ram_index() as i64 * s.precision))
        }
    }
}

fn scalar_to_element(field: &LocalField, s: &ScalarLiteral, whole: &str) -> Result<LocalFieldElement> {
    if s.precision > field.precision_cap() {
        return Err(lit_err(
            whole,
            format!("precision {} exceeds the field cap {}", s.precision, field.precision_cap()),
        ));
    }
    let e = field.ram_index() as i64;
    let mut coords = vec![BigInt::zero(); field.degree()];
    coords[0] = s.unit.clone();
    let x = LocalFieldElement::from_scaled_coords(field, s.exponent, &coords, e * s.precision)?;
    Ok(x)
}
