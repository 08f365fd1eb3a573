use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{pow, rat, Rational};
use super::univariate::UPoly;
use super::{mono_count, mono_index, monomials};
use crate::error::{Error, Result};

/// Polynomial in `X1, X2` with a declared degree bound.
///
/// Every stored exponent pair `(i, j)` satisfies `i + j <= dbound`; absent
/// pairs are zero and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    dbound: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl BivarPoly {
    pub fn zero(dbound: u32) -> Self {
        BivarPoly { dbound, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c·X1^i X2^j` with the tight bound `i + j`.
    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero(i + j);
        if !c.is_zero() {
            p.coeffs.insert((i, j), c);
        }
        p
    }

    pub fn x1() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn x2() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn from_terms<I>(dbound: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), Rational)>,
    {
        let mut p = Self::zero(dbound);
        for ((i, j), c) in terms {
            if i + j > dbound && !c.is_zero() {
                return Err(Error::DegreeOverflow { actual: i + j, bound: dbound });
            }
            p.add_term(i, j, c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_i64(dbound: u32, terms: &[((u32, u32), i64)]) -> Result<Self> {
        Self::from_terms(dbound, terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn dbound(&self) -> u32 {
        self.dbound
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x1(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_x2(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(_, j)| j).max()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coeffs.iter()
    }

    /// Same polynomial under a different declared bound.
    pub fn with_dbound(&self, dbound: u32) -> Result<Self> {
        match self.degree() {
            Some(d) if d > dbound => Err(Error::DegreeOverflow { actual: d, bound: dbound }),
            _ => Ok(BivarPoly { dbound, coeffs: self.coeffs.clone() }),
        }
    }

    /// Declared bound lowered to the actual degree (0 for the zero polynomial).
    pub fn tight(&self) -> Self {
        BivarPoly { dbound: self.degree().unwrap_or(0), coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dbound);
        }
        BivarPoly { dbound: self.dbound, coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| c * pow(x1, i) * pow(x2, j))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn partial_x1(&self) -> Self {
        let mut p = Self::zero(self.dbound.saturating_sub(1));
        for (&(i, j), c) in &self.coeffs {
            if i > 0 {
                p.add_term(i - 1, j, c * rat(i64::from(i)));
            }
        }
        p
    }

    pub fn partial_x2(&self) -> Self {
        let mut p = Self::zero(self.dbound.saturating_sub(1));
        for (&(i, j), c) in &self.coeffs {
            if j > 0 {
                p.add_term(i, j - 1, c * rat(i64::from(j)));
            }
        }
        p
    }

    /// Homogeneous component of degree exactly `m`, as a polynomial with
    /// bound `m`. Fails if the polynomial has degree above `m`.
    pub fn top_form(&self, m: u32) -> Result<Self> {
        self.check_degree(m)?;
        Self::from_terms(
            m,
            self.coeffs.iter().filter(|(&(i, j), _)| i + j == m).map(|(&k, c)| (k, c.clone())),
        )
    }

    /// Scales the coefficient of `X1^i X2^j` by `m - i - j`; the kernel is
    /// the homogeneous degree-`m` part.
    pub fn euler_weight(&self, m: u32) -> Result<Self> {
        self.check_degree(m)?;
        Self::from_terms(m, self.coeffs.iter().map(|(&(i, j), c)| ((i, j), c * rat(i64::from(m - i - j)))))
    }

    fn check_degree(&self, m: u32) -> Result<()> {
        match self.degree() {
            Some(d) if d > m => Err(Error::DegreeOverflow { actual: d, bound: m }),
            _ => Ok(()),
        }
    }

    /// Coordinates in the monomial basis of `Q[X]_{<=d}`.
    pub fn to_dense(&self, d: u32) -> Result<Vec<Rational>> {
        self.check_degree(d)?;
        let mut v = vec![Rational::zero(); mono_count(i64::from(d))];
        for (&(i, j), c) in &self.coeffs {
            v[mono_index(i, j)] = c.clone();
        }
        Ok(v)
    }

    /// Inverse of [`to_dense`](Self::to_dense); `coords.len()` must be a
    /// triangular number `(d+1)(d+2)/2`.
    pub fn from_dense(d: u32, coords: &[Rational]) -> Self {
        debug_assert_eq!(coords.len(), mono_count(i64::from(d)));
        let mut p = Self::zero(d);
        for ((i, j), c) in monomials(i64::from(d)).zip(coords) {
            p.add_term(i, j, c.clone());
        }
        p
    }

    /// `p(a11 X1 + a12 X2 + b1, a21 X1 + a22 X2 + b2)` with the same bound.
    pub fn substitute_affine(&self, a: &[[Rational; 2]; 2], b: &[Rational; 2]) -> Self {
        let y1 = Self::from_terms(
            1,
            [((1, 0), a[0][0].clone()), ((0, 1), a[0][1].clone()), ((0, 0), b[0].clone())],
        )
        .expect("linear");
        let y2 = Self::from_terms(
            1,
            [((1, 0), a[1][0].clone()), ((0, 1), a[1][1].clone()), ((0, 0), b[1].clone())],
        )
        .expect("linear");
        let deg = self.degree().unwrap_or(0);
        let p1: Vec<_> = std::iter::successors(Some(Self::constant(Rational::one())), |p| Some(p * &y1))
            .take(deg as usize + 1)
            .collect();
        let p2: Vec<_> = std::iter::successors(Some(Self::constant(Rational::one())), |p| Some(p * &y2))
            .take(deg as usize + 1)
            .collect();
        let mut out = Self::zero(self.dbound);
        for (&(i, j), c) in &self.coeffs {
            let term = (&p1[i as usize] * &p2[j as usize]).scale(c);
            for (&(k, l), v) in &term.coeffs {
                out.add_term(k, l, v.clone());
            }
        }
        out
    }

    /// Coefficients of `X2^0, X2^1, ...` as polynomials in `X1`.
    pub fn to_x2_coeffs(&self) -> Vec<UPoly> {
        let Some(dy) = self.degree_x2() else { return Vec::new() };
        let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); dy as usize + 1];
        for (&(i, j), c) in &self.coeffs {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, Rational::zero());
            }
            row[i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::from_coeffs).collect()
    }

    /// Inverse of [`to_x2_coeffs`](Self::to_x2_coeffs), with a tight bound.
    pub fn from_x2_coeffs(coeffs: &[UPoly]) -> Self {
        let mut p = Self::zero(0);
        for (j, u) in coeffs.iter().enumerate() {
            for (i, c) in u.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p.tight()
    }
}

fn combine(a: &BivarPoly, b: &BivarPoly, sign: i64) -> BivarPoly {
    let mut out = BivarPoly { dbound: a.dbound.max(b.dbound), coeffs: a.coeffs.clone() };
    for (&(i, j), c) in &b.coeffs {
        out.add_term(i, j, if sign < 0 { -c } else { c.clone() });
    }
    out
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        combine(self, rhs, 1)
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        combine(self, rhs, -1)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(&rat(-1))
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero(self.dbound + rhs.dbound);
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &rhs.coeffs {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_poly(self))
    }
}

/// A pair `(F1, F2)` with declared degree bounds `(n1, n2)`, both at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySystem {
    pub n1: u32,
    pub n2: u32,
    pub f1: BivarPoly,
    pub f2: BivarPoly,
}

impl PolySystem {
    /// Re-declares both polynomials under the bounds `(n1, n2)`.
    pub fn new(n1: u32, n2: u32, f1: &BivarPoly, f2: &BivarPoly) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidSpec(format!("degree bounds must be >= 1, got ({n1}, {n2})")));
        }
        Ok(PolySystem { n1, n2, f1: f1.with_dbound(n1)?, f2: f2.with_dbound(n2)? })
    }

    pub fn parse(n1: u32, n2: u32, f1: &str, f2: &str) -> Result<Self> {
        let p1 = super::parse::parse_poly(f1, n1)?;
        let p2 = super::parse::parse_poly(f2, n2)?;
        Self::new(n1, n2, &p1, &p2)
    }

    /// The shifted system `F - y` whose zero set is the fiber over `y`.
    pub fn shifted(&self, y1: &Rational, y2: &Rational) -> Self {
        PolySystem {
            n1: self.n1,
            n2: self.n2,
            f1: &self.f1 - &BivarPoly::constant(y1.clone()),
            f2: &self.f2 - &BivarPoly::constant(y2.clone()),
        }
    }

    pub fn bezout_number(&self) -> u32 {
        self.n1 * self.n2
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n=({}, {}): F1 = {}, F2 = {}", self.n1, self.n2, self.f1, self.f2)
    }
}

/// `dF1/dX1 · dF2/dX2 - dF1/dX2 · dF2/dX1`, declared with bound
/// `max(n1 + n2 - 2, 0)`.
pub fn jacobian(s: &PolySystem) -> BivarPoly {
    let j = &(&s.f1.partial_x1() * &s.f2.partial_x2()) - &(&s.f1.partial_x2() * &s.f2.partial_x1());
    let bound = (s.n1 + s.n2).saturating_sub(2);
    j.with_dbound(bound).expect("jacobian degree is at most n1 + n2 - 2")
}

/// `F(A·X + b)`; solution sets correspond under `X ↦ A·X + b`.
pub fn linear_substitution(s: &PolySystem, a: &[[Rational; 2]; 2], b: &[Rational; 2]) -> Result<PolySystem> {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(PolySystem { n1: s.n1, n2: s.n2, f1: s.f1.substitute_affine(a, b), f2: s.f2.substitute_affine(a, b) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> BivarPoly {
        parse_poly(s, 12).unwrap().tight()
    }

    #[test]
    fn ring_operations() {
        let prod = &p("x + y") * &p("x - y");
        assert_eq!(prod.tight(), p("x^2 - y^2"));
        assert_eq!(prod.dbound(), 2);
        assert_eq!(p("x*y - 1").eval(&rat(1), &rat(1)), rat(0));
        let sum = &p("x^2 + y") + &p("-x^2");
        assert_eq!(sum.tight(), p("y"));
        assert_eq!(sum.dbound(), 2);
    }

    #[test]
    fn top_form_and_euler_weight() {
        assert_eq!(p("x*y - 1").top_form(2).unwrap(), p("x*y").with_dbound(2).unwrap());
        assert!(p("x + 1").top_form(2).unwrap().is_zero());
        assert_eq!(p("y^2 - x").top_form(2).unwrap().tight(), p("y^2"));
        assert_eq!(p("x").euler_weight(2).unwrap().tight(), p("x"));
        assert!(p("x^2").euler_weight(2).unwrap().is_zero());
        assert_eq!(p("1").euler_weight(2).unwrap().tight(), p("2"));
        assert!(p("x^3").euler_weight(2).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let id = PolySystem::parse(1, 1, "x", "y").unwrap();
        assert_eq!(jacobian(&id).tight(), p("1"));
        let s = PolySystem::parse(2, 1, "x*y", "x").unwrap();
        assert_eq!(jacobian(&s).tight(), p("-x"));
        let s = PolySystem::parse(2, 1, "x + y^2", "y").unwrap();
        assert_eq!(jacobian(&s).tight(), p("1"));
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        // J(x*y, x) = -x, checked by central differences of the exact map
        let s = PolySystem::parse(2, 1, "x*y", "x").unwrap();
        let j = jacobian(&s);
        let h = crate::poly::frac(1, 1000);
        for (a, b) in [(0, 0), (1, 2), (-3, 1), (5, -7), (2, 2)] {
            let (a, b) = (rat(a), rat(b));
            let d = |f: &BivarPoly, dx: bool| {
                let (pa, pb, ma, mb) = if dx {
                    (&a + &h, b.clone(), &a - &h, b.clone())
                } else {
                    (a.clone(), &b + &h, a.clone(), &b - &h)
                };
                (f.eval(&pa, &pb) - f.eval(&ma, &mb)) / (rat(2) * &h)
            };
            let fd = d(&s.f1, true) * d(&s.f2, false) - d(&s.f1, false) * d(&s.f2, true);
            // quadratic and linear components: central differences are exact
            assert_eq!(fd, j.eval(&a, &b));
        }
    }

    #[test]
    fn substitution_swap_and_singular() {
        let s = PolySystem::parse(1, 1, "x", "y").unwrap();
        let swap = [[rat(0), rat(1)], [rat(1), rat(0)]];
        let zero = [rat(0), rat(0)];
        let t = linear_substitution(&s, &swap, &zero).unwrap();
        assert_eq!(t.f1.tight(), p("y"));
        let id = [[rat(1), rat(0)], [rat(0), rat(1)]];
        assert_eq!(linear_substitution(&s, &id, &zero).unwrap(), s);
        let sing = [[rat(1), rat(2)], [rat(2), rat(4)]];
        assert_eq!(linear_substitution(&s, &sing, &zero), Err(Error::SingularMatrix));
    }

    #[test]
    fn x2_coefficient_view_round_trips() {
        let q = p("3*x^2*y^2 - x*y + 7 - y^3");
        assert_eq!(BivarPoly::from_x2_coeffs(&q.to_x2_coeffs()), q);
    }
}
