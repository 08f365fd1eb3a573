//! Independent counters and seeded instance generators used to cross-check
//! the filtration and eliminant counts.

mod generate;

pub use generate::{generate, Annotation, Family, GeneratedSystem, GeneratorSpec};

use num_complex::Complex64;
use num_traits::Zero;

use crate::eliminant::FormPair;
use crate::error::{Error, Result};
use crate::fibercount::{check_general, line_coefficients, validate_system};
use crate::linalg::pencil::interpolate_on_nodes;
use crate::linalg::QMat;
use crate::poly::{BivarPoly, PolySystem, Rational, TernaryForm, UPoly};
use crate::puiseux::{aberth, make_proper};

/// Sylvester matrix of `p = Σ p_i z^i` and `q = Σ q_j z^j` taken with the
/// formal degrees `len - 1` (leading entries may vanish).
pub fn sylvester_matrix(p: &[Rational], q: &[Rational]) -> QMat {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut s = QMat::zeros(size, size);
    for r in 0..n {
        for (i, c) in p.iter().enumerate() {
            s.set(r, r + m - i, c.clone());
        }
    }
    for r in 0..m {
        for (j, c) in q.iter().enumerate() {
            s.set(n + r, r + n - j, c.clone());
        }
    }
    s
}

/// `Res_{X2}(p, q)` as a polynomial in `X1`, by evaluation at the
/// interpolation nodes and interpolation.
pub fn sylvester_resultant(p: &BivarPoly, q: &BivarPoly) -> Result<UPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (pc, qc) = (p.to_x2_coeffs(), q.to_x2_coeffs());
    let deg = |c: &[UPoly]| c.iter().filter_map(UPoly::degree).max().unwrap_or(0);
    let bound = (qc.len() - 1) * deg(&pc) + (pc.len() - 1) * deg(&qc);
    interpolate_on_nodes(bound, |x| {
        let pv: Vec<Rational> = pc.iter().map(|c| c.eval(x)).collect();
        let qv: Vec<Rational> = qc.iter().map(|c| c.eval(x)).collect();
        sylvester_matrix(&pv, &qv).det()
    })
}

/// Coefficients of the binary form `f(λ v1 + μ v2)`, ordered by the power
/// of `λ` from 0 to `deg f`.
fn restrict(f: &TernaryForm, v1: &[Rational; 3], v2: &[Rational; 3]) -> Vec<Rational> {
    let z = Rational::zero();
    let g = [
        [v1[0].clone(), v2[0].clone(), z.clone()],
        [v1[1].clone(), v2[1].clone(), z.clone()],
        [v1[2].clone(), v2[2].clone(), z],
    ];
    let r = f.substitute_linear(&g);
    let d = f.degree();
    (0..=d).map(|i| r.coeff(i, d - i, 0)).collect()
}

/// Number of affine common zeros via the line `H' + t x3 = 0` moving with
/// `t`: both homogenized equations are restricted to the line, and the
/// `t`-degree of the binary resultant is returned.
pub fn count_via_line_pencil(s: &PolySystem, hp: &BivarPoly) -> Result<usize> {
    validate_system(s)?;
    if !check_general(s, hp)?.general {
        return Err(Error::NotGeneral(hp.to_string()));
    }
    let (p, q) = line_coefficients(hp)?;
    let f = FormPair::from_system(s);
    let bound = 2 * (s.n1 * s.n2) as usize;
    let res = interpolate_on_nodes(bound, |t| {
        let v1 = [q.clone(), -p.clone(), Rational::zero()];
        let v2 = if p.is_zero() {
            [Rational::zero(), -t.clone(), q.clone()]
        } else {
            [-t.clone(), Rational::zero(), p.clone()]
        };
        sylvester_matrix(&restrict(&f.f1, &v1, &v2), &restrict(&f.f2, &v1, &v2)).det()
    })?;
    res.degree().ok_or(Error::IdenticallyZero)
}

/// Floating-point count: roots of `Res_{X2}(F1, F2)` (after making `F1`
/// proper in `X2`) found numerically, with multiplicities from the exact
/// squarefree decomposition. Advisory only.
pub fn numeric_count(s: &PolySystem) -> Result<usize> {
    validate_system(s)?;
    let (proper, sub) = make_proper(&s.f1)?;
    let f2 = sub.apply(&s.f2);
    let res = sylvester_resultant(&proper.g, &f2)?;
    if res.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    // Yun over Q[X1]: res = const · Π g_i^i
    let d = res.derivative();
    let a = res.gcd(&d);
    let mut b = res.div_exact(&a).expect("gcd divides");
    let mut e = &d.div_exact(&a).expect("gcd divides") - &b.derivative();
    let (mut total, mut mult) = (0, 1);
    while b.degree().unwrap_or(0) > 0 {
        let g = b.gcd(&e);
        total += mult * distinct_roots(&g)?;
        b = b.div_exact(&g).expect("g divides b");
        e = &e.div_exact(&g).expect("g divides e") - &b.derivative();
        mult += 1;
    }
    Ok(total)
}

/// Number of numerically distinct roots of a squarefree polynomial; fails
/// when two computed roots cannot be told apart.
fn distinct_roots(g: &UPoly) -> Result<usize> {
    let coeffs: Vec<Complex64> = g.to_f64().into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    let roots = aberth(&coeffs, None, 1e-12).map_err(|e| Error::NumericUnstable(e.to_string()))?;
    for (i, x) in roots.iter().enumerate() {
        for y in &roots[..i] {
            if (x - y).norm() <= 1e-9 * (1.0 + x.norm()) {
                return Err(Error::NumericUnstable(format!("roots {x} and {y} coincide")));
            }
        }
    }
    Ok(roots.len())
}
