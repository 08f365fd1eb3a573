//! Floating-point root finding and root continuation in `X2` along paths
//! in the `X1` plane.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::BivarPoly;

/// Root separations are compared against this fraction of the smallest
/// distance between the previous roots.
const MATCH_FRACTION: f64 = 0.3;
/// Checkpoints per circle; the circle means are taken over these.
pub(crate) const CHECKPOINTS: usize = 64;

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// Roots of `Σ c_k z^k` (`c` nonempty, leading entry nonzero) by the
/// Aberth–Ehrlich iteration, optionally warm-started.
pub fn aberth(c: &[Complex64], init: Option<&[Complex64]>, tol: f64) -> Result<Vec<Complex64>> {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    if lead.norm() == 0.0 {
        return Err(Error::NumericUnstable("leading coefficient vanishes".into()));
    }
    let dc: Vec<Complex64> = (1..=n).map(|k| c[k] * k as f64).collect();
    let mut z: Vec<Complex64> = match init {
        Some(z0) if z0.len() == n => z0.to_vec(),
        _ => {
            let rho =
                (1..=n).map(|k| (c[n - k] / lead).norm().powf(1.0 / k as f64)).fold(0.0, f64::max).max(1e-3);
            (0..n).map(|k| Complex64::from_polar(rho, TAU * k as f64 / n as f64 + 0.4)).collect()
        }
    };
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let p = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / horner(&dc, z[k]);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if !step.is_finite() {
                return Err(Error::NumericUnstable("Aberth step diverged".into()));
            }
            z[k] -= step;
            worst = worst.max(step.norm() / (1.0 + z[k].norm()));
        }
        if worst <= tol {
            return Ok(z);
        }
    }
    Err(Error::NumericUnstable("Aberth iteration did not converge".into()))
}

/// `G(x1, X2) = Σ_j c_j(x1) X2^j` with floating coefficients.
#[derive(Clone, Debug)]
pub(crate) struct NumPoly {
    coeffs: Vec<Vec<f64>>,
}

impl NumPoly {
    pub fn new(p: &BivarPoly) -> Self {
        NumPoly { coeffs: p.to_x2_coeffs().iter().map(|c| c.to_f64()).collect() }
    }

    pub fn at(&self, x1: Complex64) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x1 + a))
            .collect()
    }

    pub fn eval(&self, x1: Complex64, x2: Complex64) -> Complex64 {
        horner(&self.at(x1), x2)
    }

    /// `|G(x1, x2)|` relative to the sum of the moduli of its terms.
    pub fn relative_residual(&self, x1: Complex64, x2: Complex64) -> f64 {
        let c = self.at(x1);
        let scale: f64 = c.iter().enumerate().map(|(j, a)| a.norm() * x2.norm().powi(j as i32)).sum();
        if scale == 0.0 {
            return 0.0;
        }
        horner(&c, x2).norm() / scale
    }
}

fn min_separation(z: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..z.len() {
        for j in 0..i {
            best = best.min((z[i] - z[j]).norm());
        }
    }
    best
}

/// For each `old[i]`, the index of the unique new root within
/// `MATCH_FRACTION` of the old separation; `None` when ambiguous.
fn match_roots(old: &[Complex64], new: &[Complex64]) -> Option<Vec<usize>> {
    let radius = MATCH_FRACTION * min_separation(old);
    let mut used = vec![false; new.len()];
    let mut out = Vec::with_capacity(old.len());
    for o in old {
        let (j, d) =
            new.iter().enumerate().map(|(j, n)| (j, (n - o).norm())).min_by(|a, b| a.1.total_cmp(&b.1))?;
        if d >= radius || used[j] {
            return None;
        }
        used[j] = true;
        out.push(j);
    }
    Some(out)
}

pub(crate) struct Tracker<'a> {
    pub poly: &'a NumPoly,
    pub tolerance: f64,
}

impl Tracker<'_> {
    pub fn solve(&self, x1: Complex64, init: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
        let roots =
            aberth(&self.poly.at(x1), init, 1e-15).or_else(|_| aberth(&self.poly.at(x1), init, 1e-12))?;
        for r in &roots {
            let res = self.poly.relative_residual(x1, *r);
            if res > self.tolerance {
                return Err(Error::IllConditioned(format!("residual {res:.2e} at x1 = {x1}")));
            }
        }
        Ok(roots)
    }

    fn continue_to(&self, old: &[Complex64], x1: Complex64) -> Option<Vec<Complex64>> {
        let new = self.solve(x1, Some(old)).ok()?;
        let idx = match_roots(old, &new)?;
        Some(idx.into_iter().map(|j| new[j]).collect())
    }

    /// Continues `start` (the roots at `path(s0)`) to `path(s1)`, keeping
    /// labels; steps never exceed `max_step`.
    pub fn follow<P>(
        &self,
        start: Vec<Complex64>,
        path: P,
        s0: f64,
        s1: f64,
        max_step: f64,
    ) -> Result<Vec<Complex64>>
    where
        P: Fn(f64) -> Complex64,
    {
        let mut roots = start;
        let (mut s, mut h) = (s0, (s1 - s0).min(max_step));
        let min_step = (s1 - s0).abs() * 1e-12;
        while s < s1 {
            let next = (s + h).min(s1);
            match self.continue_to(&roots, path(next)) {
                Some(r) => {
                    roots = r;
                    s = next;
                    h = (h * 1.5).min(max_step);
                }
                None => {
                    h /= 2.0;
                    if h < min_step {
                        return Err(Error::IllConditioned(format!("step underflow near x1 = {}", path(s))));
                    }
                }
            }
        }
        Ok(roots)
    }

    /// Tracks the roots once around `|x1| = r` starting from `start` (the
    /// roots at `x1 = r`). Returns the roots at each checkpoint and the
    /// permutation `perm` with root `i` arriving where root `perm[i]` began.
    pub fn circle(&self, r: f64, start: &[Complex64]) -> Result<(Vec<Vec<Complex64>>, Vec<usize>)> {
        let path = |theta: f64| Complex64::from_polar(r, theta);
        let spacing = TAU / CHECKPOINTS as f64;
        let mut checkpoints = Vec::with_capacity(CHECKPOINTS);
        let mut roots = start.to_vec();
        for k in 0..CHECKPOINTS {
            checkpoints.push(roots.clone());
            roots = self.follow(roots, path, spacing * k as f64, spacing * (k + 1) as f64, spacing)?;
        }
        let perm = match_roots(&roots, start)
            .ok_or_else(|| Error::IllConditioned(format!("monodromy at radius {r} is ambiguous")))?;
        Ok((checkpoints, perm))
    }

    /// Continues roots along the positive real axis from `r0` to `r1`.
    pub fn radial(&self, start: Vec<Complex64>, r0: f64, r1: f64) -> Result<Vec<Complex64>> {
        self.follow(start, |s| Complex64::new(s.exp(), 0.0), r0.ln(), r1.ln(), 0.05)
    }
}

/// Cycles of a permutation, each starting at its smallest element.
pub(crate) fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = perm[i];
        }
        out.push(cycle);
    }
    out
}

/// Least-squares line `y = a x + b`; returns `(a, b, max |residual|)`.
pub(crate) fn fit_line(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let res = points.iter().map(|p| (p.1 - a * p.0 - b).abs()).fold(0.0, f64::max);
    (a, b, res)
}

pub(crate) fn to_f64(r: &crate::poly::Rational) -> f64 {
    crate::poly::rational::to_f64(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn aberth_finds_roots() {
        // (z - 1)(z + 2)(z - 3i)
        let i = Complex64::new(0.0, 1.0);
        let roots = [c(1.0), c(-2.0), 3.0 * i];
        let coeffs = [
            -roots[0] * roots[1] * roots[2],
            roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2],
            -(roots[0] + roots[1] + roots[2]),
            c(1.0),
        ];
        let found = aberth(&coeffs, None, 1e-14).unwrap();
        for r in roots {
            assert!(found.iter().any(|z| (z - r).norm() < 1e-10));
        }
    }

    #[test]
    fn square_root_monodromy_is_a_transposition() {
        let g = crate::poly::parse_poly("y^2 - x", 2).unwrap();
        let p = NumPoly::new(&g);
        let t = Tracker { poly: &p, tolerance: 1e-8 };
        let start = t.solve(c(4.0), None).unwrap();
        let (cp, perm) = t.circle(4.0, &start).unwrap();
        assert_eq!(cp.len(), CHECKPOINTS);
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(cycles(&perm), vec![vec![0, 1]]);
    }

    #[test]
    fn line_fit() {
        let (a, b, r) = fit_line(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]);
        assert!((a - 2.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12 && r < 1e-12);
    }
}
