//! Exact polynomial types: rationals, univariate polynomials, bivariate
//! polynomials with a declared degree bound, and ternary forms.
//!
//! Monomials of `Q[X1, X2]_{<=d}` are enumerated by ascending total degree,
//! then descending power of `X1` within a degree:
//!
//! ```text
//! 1, X1, X2, X1^2, X1 X2, X2^2, X1^3, ...
//! ```
//!
//! so the first `(e+1)(e+2)/2` coordinates span exactly `Q[X1, X2]_{<=e}`.
//! Ternary forms of degree `m` use the same order on `(i, j)` with the
//! exponent of `x3` implied as `m - i - j`, which makes the homogenization
//! map the identity on coordinates.

pub mod bivariate;
pub mod gcd;
pub mod parse;
pub mod rational;
pub mod ternary;
pub mod univariate;

pub use bivariate::{jacobian, linear_substitution, BivarPoly, PolySystem};
pub use gcd::{div_exact, gcd_bivariate, squarefree_in_x2};
pub use parse::parse_poly;
pub use rational::{frac, rat, Rational};
pub use ternary::TernaryForm;
pub use univariate::UPoly;

/// Number of monomials of degree `<= d`; zero for negative `d`.
pub fn mono_count(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        let d = d as usize;
        (d + 1) * (d + 2) / 2
    }
}

/// Position of `X1^i X2^j` in the documented monomial order.
pub fn mono_index(i: u32, j: u32) -> usize {
    let d = (i + j) as usize;
    d * (d + 1) / 2 + j as usize
}

/// Inverse of [`mono_index`].
pub fn mono_at(index: usize) -> (u32, u32) {
    let mut d = 0usize;
    while (d + 1) * (d + 2) / 2 <= index {
        d += 1;
    }
    let j = index - d * (d + 1) / 2;
    ((d - j) as u32, j as u32)
}

/// All exponent pairs of total degree `<= d`, in index order.
pub fn monomials(d: i64) -> impl Iterator<Item = (u32, u32)> {
    (0..mono_count(d)).map(mono_at)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_a_bijection_with_degree_prefixes() {
        for d in 0..8i64 {
            let all: Vec<_> = monomials(d).collect();
            assert_eq!(all.len(), mono_count(d));
            for (k, &(i, j)) in all.iter().enumerate() {
                assert_eq!(mono_index(i, j), k);
                assert!(i64::from(i + j) <= d);
            }
            for e in 0..=d {
                let prefix = &all[..mono_count(e)];
                assert!(prefix.iter().all(|&(i, j)| i64::from(i + j) <= e));
            }
        }
        assert_eq!(mono_at(1), (1, 0));
        assert_eq!(mono_at(2), (0, 1));
        assert_eq!(mono_at(4), (1, 1));
        assert_eq!(mono_count(-1), 0);
    }
}
