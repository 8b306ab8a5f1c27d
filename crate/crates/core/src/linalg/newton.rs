use num_rational::Ratio;

use super::matrix::PMatrix;
use crate::error::{Error, Result};
use crate::localfield::{LocalFieldElement, Poly};

/// Lower convex hull of the points `(i, val(a_i))` of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolygon {
    /// Hull vertices `(index, valuation)`, by increasing index.
    pub breakpoints: Vec<(usize, Ratio<i64>)>,
    /// Root valuations with multiplicity, one entry per hull segment, ascending.
    /// A segment of slope `s` contributes roots of valuation `-s`.
    pub slopes: Vec<(Ratio<i64>, usize)>,
}

impl NewtonPolygon {
    pub fn of(poly: &Poly) -> Result<Self> {
        let pts: Vec<(usize, Ratio<i64>)> = poly
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.valuation().ok().map(|v| (i, v)))
            .collect();
        let deg = poly
            .degree()
            .ok_or_else(|| Error::PrecisionExhausted("Newton polygon of the zero polynomial".into()))?;
        let first = pts[0].0;
        // lower hull by monotone chain
        let mut hull: Vec<(usize, Ratio<i64>)> = Vec::new();
        for &pt in pts.iter().filter(|(i, _)| *i <= deg) {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // remove middle point if it lies on or above the segment
                let lhs = (y2 - y1) * Ratio::from_integer((pt.0 - x1) as i64);
                let rhs = (pt.1 - y1) * Ratio::from_integer((x2 - x1) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let mut slopes = Vec::new();
        if first > 0 {
            // x^first divides the polynomial to precision: infinitely valued roots
            return Err(Error::PrecisionExhausted(format!(
                "constant coefficient is zero to precision ({first} roots of indeterminate valuation)"
            )));
        }
        for w in hull.windows(2) {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            let s = (y2 - y1) / Ratio::from_integer((x2 - x1) as i64);
            slopes.push((-s, x2 - x1));
        }
        slopes.reverse();
        Ok(NewtonPolygon {
            breakpoints: hull,
            slopes,
        })
    }

    /// Root valuations with multiplicities expanded, ascending.
    pub fn root_valuations(&self) -> Vec<Ratio<i64>> {
        let mut out = Vec::new();
        for &(v, m) in &self.slopes {
            out.extend(std::iter::repeat(v).take(m));
        }
        out.sort();
        out
    }

    pub fn degree(&self) -> usize {
        self.slopes.iter().map(|&(_, m)| m).sum()
    }
}

/// Solves `a·u + b·v = c` with `deg u < deg b` and `deg v < deg a` through the
/// Sylvester system. `a`, `b` must have invertible leading coefficients and
/// `deg c < deg a + deg b`.
pub fn sylvester_solve(a: &Poly, b: &Poly, c: &Poly) -> Result<(Poly, Poly)> {
    let field = a.field().clone();
    let da = a.degree().ok_or(Error::Singular)?;
    let db = b.degree().ok_or(Error::Singular)?;
    let n = da + db;
    if n == 0 {
        return Ok((Poly::zero(&field), Poly::zero(&field)));
    }
    let mut cols = Vec::with_capacity(n);
    for i in 0..db {
        cols.push((0..n).map(|k| if k >= i { a.coeff(k - i) } else { LocalFieldElement::zero(&field) }).collect());
    }
    for j in 0..da {
        cols.push((0..n).map(|k| if k >= j { b.coeff(k - j) } else { LocalFieldElement::zero(&field) }).collect());
    }
    let m = PMatrix::from_columns(&field, n, &cols)?;
    let rhs: Vec<LocalFieldElement> = (0..n).map(|k| c.coeff(k)).collect();
    let x = m.solve(&rhs).map_err(|e| match e {
        Error::OutsideSpan(_) => Error::Singular,
        other => other,
    })?;
    let u = Poly::new(&field, x[..db].to_vec());
    let v = Poly::new(&field, x[db..].to_vec());
    Ok((u, v))
}

fn monic(p: &Poly) -> Result<Poly> {
    let d = p.degree().ok_or(Error::Singular)?;
    let inv = p.coeff(d).inv()?;
    Ok(Poly::new(p.field(), (0..=d).map(|i| &p.coeff(i) * &inv).collect()))
}

/// Splits a monic polynomial as `below · above`, where the roots of `below` have
/// valuation `< cut` and those of `above` valuation `> cut`.
///
/// The initial factors are read off the Newton polygon and refined by Newton
/// iteration on the pair (quadratic Hensel lifting).
pub fn slope_factorization(f: &Poly, cut: Ratio<i64>) -> Result<(Poly, Poly)> {
    let field = f.field().clone();
    let n = f.degree().ok_or_else(|| Error::PrecisionExhausted("zero polynomial".into()))?;
    let f = monic(f)?;
    let np = NewtonPolygon::of(&f)?;
    if np.slopes.iter().any(|&(v, _)| v == cut) {
        return Err(Error::SlopeAtCut(format!("{cut}")));
    }
    // number of roots with valuation above the cut; these are the small roots
    let m: usize = np.slopes.iter().filter(|&&(v, _)| v > cut).map(|&(_, k)| k).sum();
    if m == 0 {
        return Ok((f.clone(), Poly::one(&field)));
    }
    if m == n {
        return Ok((Poly::one(&field), f.clone()));
    }
    let am = f.coeff(m);
    let am_inv = am.inv()?;
    // above ≈ (a_0 + … + a_m x^m) / a_m, below ≈ a_m + a_{m+1} x + … + x^(n-m)
    let mut above = Poly::new(&field, (0..=m).map(|i| &f.coeff(i) * &am_inv).collect());
    let mut below = Poly::new(&field, (m..=n).map(|i| f.coeff(i)).collect());
    let target = f.precision();
    let mut last_err: Option<i64> = None;
    let mut stalls = 0;
    for _ in 0..200 {
        let err = f.sub(&below.mul(&above));
        let ev = err.coeffs().iter().filter_map(|c| c.val_pi()).min();
        let Some(ev) = ev else { break };
        if ev >= target {
            break;
        }
        if let Some(l) = last_err {
            if ev <= l {
                stalls += 1;
                if stalls > 3 {
                    return Err(Error::NoConvergence(format!("factor residual stuck at valuation {ev}")));
                }
            } else {
                stalls = 0;
            }
        }
        last_err = Some(ev);
        // below·du + above·dv = err, deg du < m, deg dv < n - m
        let err = Poly::new(&field, (0..n).map(|k| err.coeff(k)).collect());
        let (du, dv) = sylvester_solve(&below, &above, &err)?;
        above = above.add(&du);
        below = below.add(&dv);
    }
    let below = monic(&below.trimmed())?;
    let above = monic(&above.trimmed())?;
    let check = f.sub(&below.mul(&above));
    if !check.is_zero() {
        return Err(Error::NoConvergence("factors do not reproduce the polynomial".into()));
    }
    Ok((below, above))
}

/// Default cut separating unit roots from roots of positive valuation.
pub fn ordinary_cut() -> Ratio<i64> {
    Ratio::new(1, 2)
}
