//! Bivariate gcd and exact division, computed in `Q[X1][X2]` with a
//! primitive pseudo-remainder sequence.

use super::bivariate::BivarPoly;
use super::univariate::UPoly;
use crate::error::{Error, Result};

type X2Poly = Vec<UPoly>;

fn trim(mut p: X2Poly) -> X2Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content(p: &[UPoly]) -> UPoly {
    p.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &[UPoly]) -> X2Poly {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|u| u.div_exact(&c).expect("content divides")).collect()
}

/// Sparse pseudo-remainder of `a` by `b` in `X2`.
fn prem(a: &[UPoly], b: &[UPoly]) -> X2Poly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: X2Poly = r.iter().map(|c| c * lb).collect();
        for (j, bj) in b.iter().enumerate() {
            next[j + shift] = &next[j + shift] - &(bj * &lr);
        }
        r = trim(next);
    }
    r
}

/// Scales so that the leading term (highest total degree, then highest
/// power of `X1`) has coefficient 1.
fn normalize(p: &BivarPoly) -> BivarPoly {
    let lead = p.terms().max_by_key(|(&(i, j), _)| (i + j, i)).map(|(_, c)| c.clone());
    match lead {
        Some(c) => p.scale(&c.recip()).tight(),
        None => p.tight(),
    }
}

/// Greatest common divisor up to a rational scalar, normalized so its
/// leading term has coefficient 1.
pub fn gcd_bivariate(p: &BivarPoly, q: &BivarPoly) -> Result<BivarPoly> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::BothZero),
        (true, false) => return Ok(normalize(q)),
        (false, true) => return Ok(normalize(p)),
        _ => {}
    }
    let (pc, qc) = (p.to_x2_coeffs(), q.to_x2_coeffs());
    let cont = content(&pc).gcd(&content(&qc));
    let (mut a, mut b) = (primitive(&pc), primitive(&qc));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            // primitive and free of X2: a unit
            a = vec![UPoly::one()];
            break;
        }
        let r = prem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    let g: X2Poly = a.iter().map(|c| c * &cont).collect();
    Ok(normalize(&BivarPoly::from_x2_coeffs(&g)))
}

/// `p / d` when `d` divides `p` in `Q[X1, X2]`, otherwise `None`.
pub fn div_exact(p: &BivarPoly, d: &BivarPoly) -> Option<BivarPoly> {
    if d.is_zero() {
        return None;
    }
    let dc = d.to_x2_coeffs();
    let dd = dc.len() - 1;
    let mut r = p.to_x2_coeffs();
    let mut q: X2Poly = vec![UPoly::zero(); r.len().saturating_sub(dd).max(1)];
    while !r.is_empty() {
        let dr = r.len() - 1;
        if dr < dd {
            return None;
        }
        let c = r[dr].div_exact(&dc[dd])?;
        for (j, dj) in dc.iter().enumerate() {
            r[j + dr - dd] = &r[j + dr - dd] - &(dj * &c);
        }
        q[dr - dd] = c;
        r = trim(r);
    }
    Some(BivarPoly::from_x2_coeffs(&q))
}

/// Squarefree decomposition in `X2` (Yun): pairs `(g_i, i)` with
/// `p = const · Π g_i^i`, each `g_i` squarefree and nonconstant in `X2`.
/// Factors free of `X2` are dropped, so callers should pass a polynomial
/// whose content in `Q[X1]` is constant.
pub fn squarefree_in_x2(p: &BivarPoly) -> Result<Vec<(BivarPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree_x2().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let dp = p.partial_x2();
    let a = gcd_bivariate(p, &dp)?;
    let mut b = div_exact(p, &a).ok_or_else(|| Error::Internal("gcd does not divide p".into()))?;
    let c = div_exact(&dp, &a).ok_or_else(|| Error::Internal("gcd does not divide p'".into()))?;
    let mut d = &c - &b.partial_x2();
    let mut out = Vec::new();
    let mut mult = 1;
    while b.degree_x2().unwrap_or(0) > 0 {
        let g = if d.is_zero() { normalize(&b) } else { gcd_bivariate(&b, &d)? };
        if g.degree_x2().unwrap_or(0) > 0 {
            out.push((g.clone(), mult));
        }
        b = div_exact(&b, &g).ok_or_else(|| Error::Internal("Yun step: b / g".into()))?;
        let c = div_exact(&d, &g).ok_or_else(|| Error::Internal("Yun step: d / g".into()))?;
        d = &c - &b.partial_x2();
        mult += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> BivarPoly {
        parse_poly(s, 20).unwrap().tight()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_bivariate(&p("x*y"), &p("x")).unwrap(), p("x"));
        assert_eq!(gcd_bivariate(&p("x*y - 1"), &p("x")).unwrap(), p("1"));
        let g = gcd_bivariate(&p("y*(y^2 - x)"), &p("y^2 - x")).unwrap();
        assert_eq!(g, p("y^2 - x"));
        assert_eq!(gcd_bivariate(&p("0"), &p("0")), Err(Error::BothZero));
        assert_eq!(gcd_bivariate(&p("0"), &p("2*x + 2")).unwrap(), p("x + 1"));
    }

    #[test]
    fn gcd_of_constructed_products() {
        // common factor (x + y - 1)(x^2 - y), cofactors coprime
        let common = &p("x + y - 1") * &p("x^2 - y");
        let a = &common * &p("x*y + 3");
        let b = &common * &p("y^2 - 2*x + 1");
        let g = gcd_bivariate(&a, &b).unwrap();
        assert!(div_exact(&g, &common).is_some_and(|q| q.degree() == Some(0)));
        // content in X1 only
        let g = gcd_bivariate(&p("(x - 1)*y"), &p("(x - 1)*(x + 2)")).unwrap();
        assert_eq!(g, p("x - 1"));
    }

    #[test]
    fn exact_division() {
        let a = &p("x + y - 1") * &p("x^2 - y");
        assert_eq!(div_exact(&a, &p("x^2 - y")).unwrap(), p("x + y - 1"));
        assert!(div_exact(&p("x^2 + y"), &p("x + y")).is_none());
    }

    #[test]
    fn yun_decomposition() {
        let f = &(&p("y - x").pow(2) * &p("y^2 - x")) * &p("y + 1").pow(3);
        let parts = squarefree_in_x2(&f).unwrap();
        let mults: Vec<u32> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        let mut prod = p("1");
        for (g, m) in &parts {
            prod = &prod * &g.pow(*m);
        }
        let ratio = div_exact(&f, &prod).unwrap();
        assert_eq!(ratio.degree(), Some(0));
    }
}
