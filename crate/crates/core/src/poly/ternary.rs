use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::bivariate::BivarPoly;
use super::rational::{fmt_rational, pow, rat, Rational};
use super::{mono_count, mono_index, monomials};
use crate::error::{Error, Result};

/// Homogeneous form of degree `m` in `x1, x2, x3`.
///
/// Keys are `(i, j)` exponents of `x1, x2`; the exponent of `x3` is
/// `m - i - j`. Dense coordinates follow the bivariate monomial order, so
/// [`TernaryForm::homogenize`] is the identity on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    degree: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

/// Dimension of the space of ternary forms of degree `m`; zero when `m < 0`.
pub fn sym_dim(m: i64) -> usize {
    mono_count(m)
}

impl TernaryForm {
    pub fn zero(degree: u32) -> Self {
        TernaryForm { degree, coeffs: BTreeMap::new() }
    }

    /// `c·x1^i x2^j x3^k`.
    pub fn monomial(c: Rational, i: u32, j: u32, k: u32) -> Self {
        let mut f = Self::zero(i + j + k);
        f.add_term(i, j, c);
        f
    }

    /// The linear form `u1 x1 + u2 x2 + u3 x3`.
    pub fn linear(u: &[Rational; 3]) -> Self {
        let mut f = Self::zero(1);
        f.add_term(1, 0, u[0].clone());
        f.add_term(0, 1, u[1].clone());
        f.add_term(0, 0, u[2].clone());
        f
    }

    /// Coordinate form `x_{var+1}` for `var` in `0..3`.
    pub fn var(var: usize) -> Self {
        let mut u = [Rational::zero(), Rational::zero(), Rational::zero()];
        u[var] = rat(1);
        Self::linear(&u)
    }

    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32, u32), Rational)>,
    {
        let mut f = Self::zero(degree);
        for ((i, j, k), c) in terms {
            if i + j + k != degree {
                return Err(Error::DimensionMismatch(format!(
                    "monomial ({i}, {j}, {k}) in a form of degree {degree}"
                )));
            }
            f.add_term(i, j, c);
        }
        Ok(f)
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

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Rational {
        if i + j + k != self.degree {
            return Rational::zero();
        }
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms as `((i, j, k), c)`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &Rational)> {
        let m = self.degree;
        self.coeffs.iter().map(move |(&(i, j), c)| ((i, j, m - i - j), c))
    }

    /// `x3^m · G(x1/x3, x2/x3)`.
    pub fn homogenize(g: &BivarPoly, m: u32) -> Result<Self> {
        if let Some(d) = g.degree() {
            if d > m {
                return Err(Error::DegreeOverflow { actual: d, bound: m });
            }
        }
        let mut f = Self::zero(m);
        for (&(i, j), c) in g.terms() {
            f.add_term(i, j, c.clone());
        }
        Ok(f)
    }

    /// Sets `x3 = 1`; the result carries the bound `m`.
    pub fn dehomogenize(&self) -> BivarPoly {
        BivarPoly::from_terms(self.degree, self.coeffs.iter().map(|(&k, c)| (k, c.clone())))
            .expect("exponents bounded by the form degree")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut f = Self::zero(self.degree);
        for (&(i, j), v) in &self.coeffs {
            f.add_term(i, j, v * c);
        }
        f
    }

    pub fn eval(&self, a: &[Rational; 3]) -> Rational {
        self.terms()
            .map(|((i, j, k), c)| c * pow(&a[0], i) * pow(&a[1], j) * pow(&a[2], k))
            .fold(Rational::zero(), |x, y| x + y)
    }

    /// `∂/∂x_{var+1}`, a form of degree `m - 1` (the zero form of degree 0
    /// when `m = 0`).
    pub fn partial(&self, var: usize) -> Self {
        let mut f = Self::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return f;
        }
        for ((i, j, k), c) in self.terms() {
            let (e, ni, nj) = match var {
                0 => (i, i.wrapping_sub(1), j),
                1 => (j, i, j.wrapping_sub(1)),
                _ => (k, i, j),
            };
            if e > 0 {
                f.add_term(ni, nj, c * rat(i64::from(e)));
            }
        }
        f
    }

    /// `Σ a_i ∂q/∂x_i`.
    pub fn directional_derivative(&self, a: &[Rational; 3]) -> Self {
        let mut f = Self::zero(self.degree.saturating_sub(1));
        for (var, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                f = &f + &self.partial(var).scale(ai);
            }
        }
        f
    }

    /// Coordinates in the monomial basis of forms of degree `m`.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); sym_dim(i64::from(self.degree))];
        for (&(i, j), c) in &self.coeffs {
            v[mono_index(i, j)] = c.clone();
        }
        v
    }

    pub fn from_dense(degree: u32, coords: &[Rational]) -> Self {
        debug_assert_eq!(coords.len(), sym_dim(i64::from(degree)));
        let mut f = Self::zero(degree);
        for ((i, j), c) in monomials(i64::from(degree)).zip(coords) {
            f.add_term(i, j, c.clone());
        }
        f
    }

    /// `f(g·x)`: each `x_i` replaced by `Σ_j g[i][j] x_j`.
    pub fn substitute_linear(&self, g: &[[Rational; 3]; 3]) -> Self {
        let images: Vec<TernaryForm> = g.iter().map(TernaryForm::linear).collect();
        let powers: Vec<Vec<TernaryForm>> = images
            .iter()
            .map(|l| {
                std::iter::successors(Some(TernaryForm::monomial(rat(1), 0, 0, 0)), |p| Some(p * l))
                    .take(self.degree as usize + 1)
                    .collect()
            })
            .collect();
        let mut out = Self::zero(self.degree);
        for ((i, j, k), c) in self.terms() {
            let t = &(&powers[0][i as usize] * &powers[1][j as usize]) * &powers[2][k as usize];
            out = &out + &t.scale(c);
        }
        out
    }
}

impl Add for &TernaryForm {
    type Output = TernaryForm;
    fn add(self, rhs: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &TernaryForm {
    type Output = TernaryForm;
    fn sub(self, rhs: &TernaryForm) -> TernaryForm {
        self + &(-rhs)
    }
}

impl Neg for &TernaryForm {
    type Output = TernaryForm;
    fn neg(self) -> TernaryForm {
        self.scale(&rat(-1))
    }
}

impl Mul for &TernaryForm {
    type Output = TernaryForm;
    fn mul(self, rhs: &TernaryForm) -> TernaryForm {
        let mut out = TernaryForm::zero(self.degree + rhs.degree);
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &rhs.coeffs {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|((i, j, k), c)| {
                let mut s = fmt_rational(c);
                for (name, e) in [("x1", i), ("x2", j), ("x3", k)] {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*{name}")),
                        _ => s.push_str(&format!("*{name}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn e(i: usize) -> [Rational; 3] {
        let mut a = [rat(0), rat(0), rat(0)];
        a[i] = rat(1);
        a
    }

    #[test]
    fn homogenize_examples() {
        let g = parse_poly("x*y - 1", 2).unwrap();
        let f = TernaryForm::homogenize(&g, 2).unwrap();
        let expected = TernaryForm::from_terms(2, [((1, 1, 0), rat(1)), ((0, 0, 2), rat(-1))]).unwrap();
        assert_eq!(f, expected);
        let one = TernaryForm::homogenize(&parse_poly("1", 0).unwrap(), 3).unwrap();
        assert_eq!(one, TernaryForm::monomial(rat(1), 0, 0, 3));
        assert!(TernaryForm::homogenize(&parse_poly("x^2", 2).unwrap(), 1).is_err());
    }

    #[test]
    fn directional_derivative_examples() {
        let x3sq = TernaryForm::monomial(rat(1), 0, 0, 2);
        assert_eq!(x3sq.directional_derivative(&e(2)), TernaryForm::monomial(rat(2), 0, 0, 1));
        let x1x2 = TernaryForm::monomial(rat(1), 1, 1, 0);
        assert!(x1x2.directional_derivative(&e(2)).is_zero());
        let x1sq = TernaryForm::monomial(rat(1), 2, 0, 0);
        assert_eq!(x1sq.directional_derivative(&e(0)), TernaryForm::monomial(rat(2), 1, 0, 0));
        assert!(TernaryForm::monomial(rat(5), 0, 0, 0).directional_derivative(&e(0)).is_zero());
    }

    #[test]
    fn substitution_composes() {
        // f = x1*x2 under x1 -> x1 + x3, x2 -> x2, x3 -> x3
        let g = [[rat(1), rat(0), rat(1)], [rat(0), rat(1), rat(0)], [rat(0), rat(0), rat(1)]];
        let f = TernaryForm::monomial(rat(1), 1, 1, 0).substitute_linear(&g);
        let expected = TernaryForm::from_terms(2, [((1, 1, 0), rat(1)), ((0, 1, 1), rat(1))]).unwrap();
        assert_eq!(f, expected);
    }

    fn bivar(d: u32) -> impl Strategy<Value = BivarPoly> {
        proptest::collection::vec(-6i64..=6, mono_count(i64::from(d)))
            .prop_map(move |c| BivarPoly::from_dense(d, &c.into_iter().map(rat).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn homogenization_round_trip(m in 0u32..=10, seed in any::<u64>()) {
            let coords: Vec<_> = (0..mono_count(i64::from(m)))
                .map(|k| rat(((seed >> (k % 60)) as i64 % 9) - 4))
                .collect();
            let g = BivarPoly::from_dense(m, &coords);
            prop_assert_eq!(TernaryForm::homogenize(&g, m).unwrap().dehomogenize(), g);
        }

        #[test]
        fn homogenization_is_multiplicative(g in bivar(3), h in bivar(2)) {
            let lhs = TernaryForm::homogenize(&(&g * &h), 5).unwrap();
            let rhs = &TernaryForm::homogenize(&g, 3).unwrap() * &TernaryForm::homogenize(&h, 2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn euler_weight_is_x3_derivative(g in bivar(4)) {
            // the weight kills the degree-4 part, so the result fits in degree 3
            let weighted = g.euler_weight(4).unwrap().with_dbound(3).unwrap();
            let lhs = TernaryForm::homogenize(&weighted, 3).unwrap();
            let rhs = TernaryForm::homogenize(&g, 4).unwrap().directional_derivative(&e(2));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
