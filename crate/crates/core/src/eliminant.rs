//! The three-term complex
//!
//! ```text
//! 0 -> M --β(f,s)--> M' --β'(f,s)--> M'' -> 0
//! M   = S^{n1-2} × S^{n2-2}
//! M'  = S^{n1-1} × S^{n2-1} × S^{n1+n2-2}
//! M'' = S^{n1+n2-1}
//! ```
//!
//! whose determinant is the resultant `R(f1, f2, s)` of two plane curves
//! and a line. With a section `α(a): M' -> M` (directional derivative in
//! the direction `a`), `det(α(a), β'(f, s)) = c · R(f, s) · s(a)^{dim M}`
//! for a nonzero constant `c` that depends only on `(n1, n2)`.
//!
//! All matrices use the monomial bases of [`crate::poly`], blocks in the
//! order listed above.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fibercount::{check_general, validate_system};
use crate::linalg::pencil::interpolate_on_nodes;
use crate::linalg::QMat;
use crate::poly::ternary::sym_dim;
use crate::poly::{mono_count, monomials, rat, BivarPoly, PolySystem, Rational, TernaryForm, UPoly};

/// Dimensions of the spaces in the complex for degrees `(n1, n2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexSpaces {
    pub n1: u32,
    pub n2: u32,
    pub dim_m: usize,
    pub dim_mp: usize,
    pub dim_mpp: usize,
}

impl ComplexSpaces {
    pub fn new(n1: u32, n2: u32) -> Self {
        let (a, b) = (i64::from(n1), i64::from(n2));
        let dim_m = sym_dim(a - 2) + sym_dim(b - 2);
        let dim_mp = sym_dim(a - 1) + sym_dim(b - 1) + sym_dim(a + b - 2);
        let dim_mpp = sym_dim(a + b - 1);
        ComplexSpaces { n1, n2, dim_m, dim_mp, dim_mpp }
    }

    fn deg(&self, offset: i64) -> (i64, i64) {
        (i64::from(self.n1) + offset, i64::from(self.n2) + offset)
    }
}

/// A pair of ternary forms `f = (f1, f2)` of degrees `(n1, n2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormPair {
    pub f1: TernaryForm,
    pub f2: TernaryForm,
}

impl FormPair {
    pub fn new(f1: TernaryForm, f2: TernaryForm) -> Result<Self> {
        if f1.degree() == 0 || f2.degree() == 0 {
            return Err(Error::DimensionMismatch("forms must have degree >= 1".into()));
        }
        Ok(FormPair { f1, f2 })
    }

    /// Homogenization `θ(F) = (x3^{n1} F1(x/x3), x3^{n2} F2(x/x3))`.
    pub fn from_system(s: &PolySystem) -> Self {
        FormPair {
            f1: TernaryForm::homogenize(&s.f1, s.n1).expect("declared bound"),
            f2: TernaryForm::homogenize(&s.f2, s.n2).expect("declared bound"),
        }
    }

    pub fn spaces(&self) -> ComplexSpaces {
        ComplexSpaces::new(self.f1.degree(), self.f2.degree())
    }

    pub fn substitute_linear(&self, g: &[[Rational; 3]; 3]) -> Self {
        FormPair { f1: self.f1.substitute_linear(g), f2: self.f2.substitute_linear(g) }
    }
}

/// Basis monomials of forms of degree `m` (none when `m < 0`), as forms.
fn basis(m: i64) -> Vec<TernaryForm> {
    monomials(m).map(|(i, j)| TernaryForm::monomial(Rational::one(), i, j, (m as u32) - i - j)).collect()
}

/// Dense coordinates of `q` in the block of forms of degree `m`; the block
/// is empty for negative `m`.
fn coords(q: &TernaryForm, m: i64) -> Vec<Rational> {
    if m < 0 {
        return Vec::new();
    }
    debug_assert_eq!(i64::from(q.degree()), m);
    q.to_dense()
}

fn zeros(m: i64) -> Vec<Rational> {
    vec![Rational::zero(); sym_dim(m)]
}

fn concat(parts: Vec<Vec<Rational>>) -> Vec<Rational> {
    parts.into_iter().flatten().collect()
}

fn check_linear(s: &TernaryForm) -> Result<()> {
    if s.degree() != 1 {
        return Err(Error::DimensionMismatch(format!("s must be linear, got degree {}", s.degree())));
    }
    Ok(())
}

/// Matrix of `β(f, s)(r1, r2) = (s r1, s r2, f1 r2 + f2 r1)`, `M -> M'`.
pub fn build_beta(f: &FormPair, s: &TernaryForm) -> Result<QMat> {
    check_linear(s)?;
    let sp = f.spaces();
    let (m1, m2) = sp.deg(-2);
    let (q1, q2) = sp.deg(-1);
    let g = m1 + m2 + 2;
    let mut cols = Vec::with_capacity(sp.dim_m);
    for r1 in basis(m1) {
        cols.push(concat(vec![coords(&(s * &r1), q1), zeros(q2), coords(&(&f.f2 * &r1), g)]));
    }
    for r2 in basis(m2) {
        cols.push(concat(vec![zeros(q1), coords(&(s * &r2), q2), coords(&(&f.f1 * &r2), g)]));
    }
    Ok(QMat::from_columns(sp.dim_mp, &cols))
}

/// Matrix of `β'(f, s)(q1, q2, g) = f1 q2 + f2 q1 - s g`, `M' -> M''`.
pub fn build_beta_prime(f: &FormPair, s: &TernaryForm) -> Result<QMat> {
    check_linear(s)?;
    let sp = f.spaces();
    let (q1, q2) = sp.deg(-1);
    let top = q1 + q2 + 1;
    let mut cols = Vec::with_capacity(sp.dim_mp);
    for q in basis(q1) {
        cols.push(coords(&(&f.f2 * &q), top));
    }
    for q in basis(q2) {
        cols.push(coords(&(&f.f1 * &q), top));
    }
    for g in basis(top - 1) {
        cols.push(coords(&-&(s * &g), top));
    }
    Ok(QMat::from_columns(sp.dim_mpp, &cols))
}

/// Matrix of `α(a)(q1, q2, g) = (Δ_a q1, Δ_a q2)`, `M' -> M`, where `Δ_a`
/// is the derivative in the direction `a`.
pub fn build_alpha(sp: &ComplexSpaces, a: &[Rational; 3]) -> Result<QMat> {
    if a.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let (m1, m2) = sp.deg(-2);
    let (q1, q2) = sp.deg(-1);
    let mut cols = Vec::with_capacity(sp.dim_mp);
    for q in basis(q1) {
        cols.push(concat(vec![coords(&q.directional_derivative(a), m1), zeros(m2)]));
    }
    for q in basis(q2) {
        cols.push(concat(vec![zeros(m1), coords(&q.directional_derivative(a), m2)]));
    }
    for _ in 0..sym_dim(q1 + q2) {
        cols.push(zeros(m1).into_iter().chain(zeros(m2)).collect());
    }
    Ok(QMat::from_columns(sp.dim_m, &cols))
}

/// The square map `(α(a), β'(f, s)): M' -> M × M''`.
pub fn complex_matrix(f: &FormPair, s: &TernaryForm, a: &[Rational; 3]) -> Result<QMat> {
    let alpha = build_alpha(&f.spaces(), a)?;
    let beta_prime = build_beta_prime(f, s)?;
    QMat::vstack(&[&alpha, &beta_prime])
}

/// `det(α(a), β'(f, s)) / s(a)^{dim M}`, which is `c · R(f, s)` for a
/// constant `c ≠ 0` shared by every call with the same `(n1, n2)`.
pub fn resultant_value(f: &FormPair, s: &TernaryForm, a: &[Rational; 3]) -> Result<Rational> {
    check_linear(s)?;
    let sa = s.eval(a);
    if sa.is_zero() {
        return Err(Error::DegenerateSection);
    }
    let det = complex_matrix(f, s, a)?.det()?;
    let dim_m = f.spaces().dim_m as u32;
    Ok(det / crate::poly::rational::pow(&sa, dim_m))
}

/// `c · R(f, h' + t h)` as a polynomial in `t`; the constant `c` is the
/// same as in [`resultant_value`] and is never normalized away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantPencil {
    pub coeffs: UPoly,
    pub global_scale_unknown: bool,
}

impl ResultantPencil {
    pub fn degree(&self) -> usize {
        self.coeffs.degree().expect("pencil resultant is nonzero")
    }
}

/// Computes `R(f, h' + t h)` by interpolating
/// `D(t) = det(α(a), β'(f, h' + t h))` on `dim M'' + 1` nodes and dividing
/// out `(t h(a))^{dim M}`. Requires `h'(a) = 0` and `h(a) ≠ 0`.
pub fn pencil_resultant(
    f: &FormPair,
    h: &TernaryForm,
    h_prime: &TernaryForm,
    a: &[Rational; 3],
) -> Result<ResultantPencil> {
    check_linear(h)?;
    check_linear(h_prime)?;
    if h.is_zero() || h_prime.is_zero() {
        return Err(Error::InvalidLine("h and h' must be nonzero".into()));
    }
    let ha = h.eval(a);
    if ha.is_zero() || !h_prime.eval(a).is_zero() {
        return Err(Error::DegenerateSection);
    }
    let sp = f.spaces();
    let alpha = build_alpha(&sp, a)?;
    let det = interpolate_on_nodes(sp.dim_mpp, |t| {
        let s = h_prime + &h.scale(t);
        QMat::vstack(&[&alpha, &build_beta_prime(f, &s)?])?.det()
    })?;
    if det.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let shifted = det.shift_down(sp.dim_m).ok_or_else(|| Error::NotDivisible(format!("t^{}", sp.dim_m)))?;
    let coeffs = shifted.scale(&crate::poly::rational::pow(&ha, sp.dim_m as u32).recip());
    let bound = (sp.n1 * sp.n2) as usize;
    if coeffs.degree().unwrap_or(0) > bound {
        return Err(Error::Internal(format!(
            "pencil resultant of degree {} exceeds n1*n2 = {bound}",
            coeffs.degree().unwrap_or(0)
        )));
    }
    Ok(ResultantPencil { coeffs, global_scale_unknown: true })
}

/// Affine form `h' = θ(H')` of a homogeneous linear `H' = a X1 + b X2`.
pub fn line_form(hp: &BivarPoly) -> TernaryForm {
    TernaryForm::linear(&[hp.coeff(1, 0), hp.coeff(0, 1), Rational::zero()])
}

pub fn e3() -> [Rational; 3] {
    [Rational::zero(), Rational::zero(), Rational::one()]
}

/// Number of affine common zeros (with multiplicity) as `deg_t R(f, h' + t x3)`
/// with `f = θ(F)`, `h' = θ(H')` and `a = e3`.
pub fn count_via_eliminant(s: &PolySystem, hp: &BivarPoly) -> Result<usize> {
    Ok(eliminant_pencil(s, hp)?.degree())
}

/// The pencil behind [`count_via_eliminant`].
pub fn eliminant_pencil(s: &PolySystem, hp: &BivarPoly) -> Result<ResultantPencil> {
    validate_system(s)?;
    let report = check_general(s, hp)?;
    if !report.general {
        return Err(Error::NotGeneral(hp.to_string()));
    }
    let f = FormPair::from_system(s);
    pencil_resultant(&f, &TernaryForm::var(2), &line_form(hp), &e3())
}

/// `Q(f)` up to the global constant, as a form of degree `N = n1 n2` in the
/// coordinates `(u1, u2, u3)` of lines `h = u1 x1 + u2 x2 + u3 x3`:
/// evaluating it at `u` gives `c · R(f, h)`. Interpolates on the lines
/// `u = (i, j, 1)`, `i + j <= N`.
pub fn eliminant_coeffs(f: &FormPair) -> Result<TernaryForm> {
    let n = f.f1.degree() * f.f2.degree();
    let nodes: Vec<(u32, u32)> = monomials(i64::from(n)).collect();
    let values = nodes
        .par_iter()
        .map(|&(i, j)| {
            let h = TernaryForm::linear(&[rat(i64::from(i)), rat(i64::from(j)), Rational::one()]);
            resultant_value(f, &h, &e3())
        })
        .collect::<Result<Vec<_>>>()?;
    let size = mono_count(i64::from(n));
    let rows = nodes
        .iter()
        .map(|&(i, j)| {
            monomials(i64::from(n))
                .map(|(a, b)| {
                    crate::poly::rational::pow(&rat(i64::from(i)), a)
                        * crate::poly::rational::pow(&rat(i64::from(j)), b)
                })
                .collect()
        })
        .collect();
    let vander = QMat::from_rows(size, rows);
    let c = vander.solve(&values).map_err(|e| match e {
        Error::SingularMatrix => Error::InterpolationSingular,
        other => other,
    })?;
    Ok(TernaryForm::from_dense(n, &c))
}
