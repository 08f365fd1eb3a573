//! Dense univariate polynomials over the rationals.
//!
//! Used for pencil determinants in `t`, for coefficients of bivariate
//! polynomials viewed in `X2`, and for classical resultants in `X1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, rat, Rational};
use crate::error::{Error, Result};

/// Coefficients are stored from the constant term upwards with no trailing
/// zeros, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `t`.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect())
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `t^k`, failing if any of the low coefficients is nonzero.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn div_rem(&self, divisor: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &q * d;
            }
            quot[k - dd] = q;
        }
        Ok((UPoly::from_coeffs(quot), UPoly::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Interpolating polynomial through `(x_i, y_i)` with distinct nodes,
    /// via Newton divided differences.
    pub fn interpolate(points: &[(Rational, Rational)]) -> UPoly {
        let n = points.len();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num / den;
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            let factor = UPoly::from_coeffs(vec![-points[i].0.clone(), Rational::one()]);
            acc = &(&acc * &factor) + &UPoly::constant(dd[i].clone());
        }
        acc
    }

    /// Fujiwara's bound on the moduli of the complex roots.
    pub fn root_bound(&self) -> f64 {
        let Some(n) = self.degree() else { return 0.0 };
        if n == 0 {
            return 0.0;
        }
        let lc = super::rational::to_f64(&self.coeffs[n]).abs();
        let mut best: f64 = 0.0;
        for k in 1..=n {
            let a = super::rational::to_f64(&self.coeffs[n - k]).abs() / lc;
            let term = if k == n { (a / 2.0).powf(1.0 / k as f64) } else { a.powf(1.0 / k as f64) };
            best = best.max(term);
        }
        2.0 * best
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(super::rational::to_f64).collect()
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{}", fmt_rational(&mag))?,
                (_, true) => {}
                (_, false) => write!(f, "{}*", fmt_rational(&mag))?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::frac;

    #[test]
    fn interpolation_recovers_cubic() {
        let p = UPoly::from_i64(&[3, 0, -2, 5]);
        let pts: Vec<_> = [0, 1, -1, 2, 7].iter().map(|&x| (rat(x), p.eval(&rat(x)))).collect();
        assert_eq!(UPoly::interpolate(&pts), p);
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = &UPoly::from_i64(&[-1, 1]) * &UPoly::from_i64(&[2, 0, 1]);
        let b = &UPoly::from_i64(&[-1, 1]) * &UPoly::from_i64(&[3, 1]);
        assert_eq!(a.gcd(&b), UPoly::from_i64(&[-1, 1]));
        let (q, r) = a.div_rem(&UPoly::from_i64(&[-1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, UPoly::from_i64(&[2, 0, 1]));
        assert!(UPoly::zero().gcd(&UPoly::zero()).is_zero());
    }

    #[test]
    fn shift_down_requires_divisibility() {
        let p = UPoly::from_i64(&[0, 0, 4, 1]);
        assert_eq!(p.shift_down(2), Some(UPoly::from_i64(&[4, 1])));
        assert_eq!(p.shift_down(3), None);
        assert_eq!(p.valuation(), Some(2));
    }

    #[test]
    fn display_is_readable() {
        let p = UPoly::from_coeffs(vec![frac(1, 2), rat(-1), rat(0), rat(3)]);
        assert_eq!(p.to_string(), "3*t^3 - t + 1/2");
    }

    #[test]
    fn root_bound_dominates_roots() {
        // roots 10, -3, 1/2
        let p = &(&UPoly::from_i64(&[-10, 1]) * &UPoly::from_i64(&[3, 1])) * &UPoly::from_i64(&[-1, 2]);
        assert!(p.root_bound() >= 10.0);
    }
}
