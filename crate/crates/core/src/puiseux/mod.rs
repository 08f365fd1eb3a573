//! Branches of `F1 = 0` at infinity as numeric Puiseux cycles, the Zeuthen
//! count `Σ den(α) · deg_{X1} F2(X1, α(X1))`, and a checker for the bound
//! `deg F <= min(n1, n2) (k + 1)` when `deg J(F) <= k`.
//!
//! Branches are found by tracking the roots of `G(x1, ·)` around large
//! circles; denominators are monodromy cycle lengths. Degrees come from
//! circle means of `log |·|` (Jensen's formula), which are exact linear
//! functions of `log |x1|` outside the finitely many critical values.

mod numeric;

pub use numeric::aberth;

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fibercount::{count_filtration, degree_of_mapping, validate_system};
use crate::linalg::interpolation_node;
use crate::oracle::sylvester_resultant;
use crate::poly::{div_exact, jacobian, rat, squarefree_in_x2, BivarPoly, PolySystem, Rational};
use numeric::{cycles, fit_line, NumPoly, Tracker, CHECKPOINTS};

/// `X1 ↦ X1 + λ X2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub lambda: Rational,
}

impl Substitution {
    pub fn identity() -> Self {
        Substitution { lambda: Rational::zero() }
    }

    pub fn is_identity(&self) -> bool {
        self.lambda.is_zero()
    }

    pub fn apply(&self, p: &BivarPoly) -> BivarPoly {
        let (z, o) = (Rational::zero(), rat(1));
        p.substitute_affine(&[[o.clone(), self.lambda.clone()], [z.clone(), o]], &[z.clone(), z])
    }
}

/// `G = leading · X2^p + G_1(X1) X2^{p-1} + ... + G_p(X1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperPoly {
    pub g: BivarPoly,
    pub p: u32,
    pub leading: Rational,
}

impl ProperPoly {
    fn of(g: &BivarPoly) -> Option<Self> {
        let p = g.degree_x2()?;
        let lead = &g.to_x2_coeffs()[p as usize];
        (lead.degree() == Some(0)).then(|| ProperPoly { g: g.clone(), p, leading: lead.coeff(0) })
    }
}

/// Makes `g` proper in `X2`, trying `λ = 1, -1, 2, -2, ...` when it is not
/// already.
pub fn make_proper(g: &BivarPoly) -> Result<(ProperPoly, Substitution)> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(p) = ProperPoly::of(g) {
        return Ok((p, Substitution::identity()));
    }
    let d = g.degree().expect("nonzero");
    let top = g.top_form(d)?;
    for k in 1..=(d as usize + 2) {
        let lambda = interpolation_node(k);
        if !top.eval(&lambda, &rat(1)).is_zero() {
            let sub = Substitution { lambda };
            let p =
                ProperPoly::of(&sub.apply(g)).ok_or_else(|| Error::Internal("substitution failed".into()))?;
            return Ok((p, sub));
        }
    }
    Err(Error::Internal("no proper substitution found".into()))
}

/// Exponents `μ` with `|α(x1)| ~ |x1|^μ` for the roots of `g` in `X2`,
/// with the number of roots of each, read off the upper Newton hull of
/// the points `(j, deg_{X1} [X2^j] g)`. Roots equal to zero are skipped.
pub fn newton_exponents(g: &BivarPoly) -> Vec<(Rational, usize)> {
    let pts: Vec<(i64, i64)> = g
        .to_x2_coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| c.degree().map(|d| (j as i64, d as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or below the segment a-p
            if (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            (Rational::new((w[0].1 - w[1].1).into(), len.into()), len as usize)
        })
        .collect()
}

/// Roots of one radius: for each checkpoint `x1 = r e^{2πik/N}`, the roots
/// belonging to the cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleSample {
    pub radius: f64,
    pub roots: Vec<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxCycle {
    pub den: usize,
    /// `None` for the branch `α = 0`.
    pub lead_exp: Option<Rational>,
    pub samples: Vec<CycleSample>,
    pub tolerance: f64,
}

fn checkpoint(r: f64, k: usize) -> Complex64 {
    Complex64::from_polar(r, TAU * k as f64 / CHECKPOINTS as f64)
}

/// Slope in `log r` of the circle mean of `Σ_roots log |h(x1, root)|`.
fn jensen_slope<H>(samples: &[CycleSample], h: H) -> (f64, f64)
where
    H: Fn(Complex64, Complex64) -> f64,
{
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|s| {
            let total: f64 = s
                .roots
                .iter()
                .enumerate()
                .map(|(k, roots)| roots.iter().map(|z| h(checkpoint(s.radius, k), *z)).sum::<f64>())
                .sum();
            (s.radius.ln(), total / CHECKPOINTS as f64)
        })
        .collect();
    let scale = pts.iter().map(|p| p.1.abs()).fold(1.0, f64::max);
    let (a, _, res) = fit_line(&pts);
    (a, res / scale)
}

fn factor_cycles(f: &BivarPoly, radius: f64, tolerance: f64) -> Result<Vec<PuiseuxCycle>> {
    let np = NumPoly::new(f);
    let tracker = Tracker { poly: &np, tolerance };
    let radii = [radius, 2.0 * radius, 4.0 * radius];
    let mut start = tracker.solve(Complex64::new(radius, 0.0), None)?;
    let mut data = Vec::new();
    let mut monodromy: Option<Vec<usize>> = None;
    for (i, &r) in radii.iter().enumerate() {
        if i > 0 {
            start = tracker.radial(start, radii[i - 1], r)?;
        }
        let (cp, perm) = tracker.circle(r, &start)?;
        match &monodromy {
            Some(m) if *m != perm => {
                return Err(Error::IllConditioned(format!("monodromy differs at radius {r}")));
            }
            _ => monodromy = Some(perm),
        }
        data.push((r, cp));
    }
    let mut capacity = newton_exponents(f);
    let mut out = Vec::new();
    for cycle in cycles(&monodromy.unwrap_or_default()) {
        let den = cycle.len();
        let samples: Vec<CycleSample> = data
            .iter()
            .map(|(r, cp)| CycleSample {
                radius: *r,
                roots: cp.iter().map(|roots| cycle.iter().map(|&l| roots[l]).collect()).collect(),
            })
            .collect();
        let (slope, _) = jensen_slope(&samples, |_, z| z.norm().ln());
        let mu = slope / den as f64;
        let best = capacity
            .iter_mut()
            .filter(|(_, c)| *c >= den)
            .min_by(|a, b| (numeric::to_f64(&a.0) - mu).abs().total_cmp(&(numeric::to_f64(&b.0) - mu).abs()))
            .ok_or_else(|| Error::IllConditioned("cycle does not fit the Newton polygon".into()))?;
        let gap = (numeric::to_f64(&best.0) - mu).abs();
        if gap > 1e-3 {
            return Err(Error::IllConditioned(format!("leading exponent {mu:.6} is off the Newton polygon")));
        }
        best.1 -= den;
        out.push(PuiseuxCycle { den, lead_exp: Some(best.0.clone()), samples, tolerance });
    }
    Ok(out)
}

fn strip_x2(g: &BivarPoly) -> (BivarPoly, usize) {
    let mut g = g.clone();
    let mut m = 0;
    while g.degree_x2().unwrap_or(0) > 0 && g.to_x2_coeffs()[0].is_zero() {
        g = div_exact(&g, &BivarPoly::x2()).expect("X2 divides");
        m += 1;
    }
    (g, m)
}

/// The branches of `P` at infinity, tracked on `|x1| = radius, 2 radius,
/// 4 radius`. Each root of multiplicity `m` contributes `m` copies of its
/// cycle, so the denominators always sum to `deg_{X2} P`.
pub fn newton_puiseux_roots(p: &ProperPoly, radius: f64, tolerance: f64) -> Result<Vec<PuiseuxCycle>> {
    let (g, zeros) = strip_x2(&p.g);
    let mut out: Vec<PuiseuxCycle> =
        (0..zeros).map(|_| PuiseuxCycle { den: 1, lead_exp: None, samples: Vec::new(), tolerance }).collect();
    for (f, mult) in squarefree_in_x2(&g)? {
        let cs = factor_cycles(&f, radius, tolerance)?;
        for _ in 0..mult {
            out.extend(cs.iter().cloned());
        }
    }
    let total: usize = out.iter().map(|c| c.den).sum();
    if total != p.p as usize {
        return Err(Error::Internal(format!("denominators sum to {total}, expected {}", p.p)));
    }
    Ok(out)
}

/// A radius outside every branch point of `P`, every zero of `P(X1, 0)`
/// and every `X1`-coordinate of a common zero with `f2`.
pub fn branch_radius(p: &ProperPoly, f2: &BivarPoly) -> Result<f64> {
    let (g, _) = strip_x2(&p.g);
    let mut bound: f64 = 0.0;
    if g.degree_x2().unwrap_or(0) > 0 {
        bound = bound.max(g.to_x2_coeffs()[0].root_bound());
        for (f, _) in squarefree_in_x2(&g)? {
            bound = bound.max(sylvester_resultant(&f, &f.partial_x2())?.root_bound());
            bound = bound.max(sylvester_resultant(&f, f2)?.root_bound());
        }
    }
    Ok((2.0 * bound).max(1.0))
}

fn composition_degree_of(f2: &BivarPoly, cycle: &PuiseuxCycle) -> Result<Rational> {
    if cycle.lead_exp.is_none() {
        let c = &f2.to_x2_coeffs()[0];
        return c
            .degree()
            .map(|d| rat(d as i64))
            .ok_or_else(|| Error::Internal("F2 vanishes on the branch X2 = 0".into()));
    }
    let np = NumPoly::new(f2);
    let (slope, residual) = jensen_slope(&cycle.samples, |x1, z| np.eval(x1, z).norm().ln());
    if residual > 1e-6 {
        return Err(Error::FitDiverged(format!("residual {residual:.2e}")));
    }
    let k = slope.round();
    if (slope - k).abs() > 1e-3 * cycle.den as f64 {
        return Err(Error::FitDiverged(format!("slope {slope:.6} is not a multiple of 1/{}", cycle.den)));
    }
    Ok(Rational::new((k as i64).into(), (cycle.den as i64).into()))
}

/// `deg_{X1} F2(X1, α(X1))` along the branch `α`, where the cycle was
/// computed for `F1` after `sub`.
pub fn composition_degree(f2: &BivarPoly, cycle: &PuiseuxCycle, sub: &Substitution) -> Result<Rational> {
    composition_degree_of(&sub.apply(f2), cycle)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeuthenConfig {
    /// Lower bound for the tracking radius.
    pub radius_floor: f64,
    pub tolerance: f64,
    /// Radius doublings allowed after a numeric failure.
    pub escalations: u32,
}

impl Default for ZeuthenConfig {
    fn default() -> Self {
        ZeuthenConfig { radius_floor: 1.0, tolerance: 1e-8, escalations: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub den: usize,
    pub lead_exp: Option<Rational>,
    pub degree: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeuthenCount {
    pub count: usize,
    pub branches: Vec<Branch>,
    pub substitution: Substitution,
    pub radius: f64,
    pub escalations: u32,
}

fn zeuthen_at(p: &ProperPoly, f2: &BivarPoly, radius: f64, tolerance: f64) -> Result<(usize, Vec<Branch>)> {
    let mut sum = Rational::zero();
    let mut branches = Vec::new();
    for cycle in newton_puiseux_roots(p, radius, tolerance)? {
        let degree = composition_degree_of(f2, &cycle)?;
        if degree.is_negative() {
            log::info!("branch with negative composition degree {degree} enters the sum");
        }
        sum += &degree * rat(cycle.den as i64);
        branches.push(Branch { den: cycle.den, lead_exp: cycle.lead_exp, degree });
    }
    if !sum.is_integer() || sum.is_negative() {
        return Err(Error::NonIntegerSum(sum.to_string()));
    }
    let count = sum.to_integer().try_into().map_err(|_| Error::NonIntegerSum(sum.to_string()))?;
    Ok((count, branches))
}

/// Number of affine common zeros as the Zeuthen sum over the branches of
/// `F1` at infinity, after making `F1` proper.
pub fn zeuthen_count(s: &PolySystem, config: &ZeuthenConfig) -> Result<ZeuthenCount> {
    validate_system(s)?;
    let (proper, sub) = make_proper(&s.f1)?;
    let f2 = sub.apply(&s.f2);
    let mut radius = config.radius_floor.max(branch_radius(&proper, &f2)?);
    let mut last = None;
    for escalations in 0..=config.escalations {
        match zeuthen_at(&proper, &f2, radius, config.tolerance) {
            Ok((count, branches)) => {
                return Ok(ZeuthenCount { count, branches, substitution: sub, radius, escalations })
            }
            Err(e) if e.is_numeric() => {
                log::warn!("zeuthen at radius {radius}: {e}; doubling");
                last = Some(e);
                radius *= 2.0;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `deg J(F)`, or `-1` when `J ≡ 0`.
pub fn jacobian_degree(s: &PolySystem) -> i64 {
    jacobian(s).degree().map_or(-1, i64::from)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianBoundReport {
    pub k: i64,
    pub jacobian_zero: bool,
    /// `min(n1, n2) (k + 1)`; absent when `J ≡ 0`.
    pub bound: Option<usize>,
    /// Size of `F⁻¹(0)`, when finite.
    pub fiber_count: Option<usize>,
    pub degree_estimate: Option<usize>,
    pub satisfied: bool,
}

/// Checks `|F⁻¹(y)| <= min(n1, n2)(deg J + 1)` on the zero fiber and on
/// `trials` seeded generic fibers.
pub fn jacobian_bound_check(s: &PolySystem, trials: usize, seed: u64) -> Result<JacobianBoundReport> {
    let k = jacobian_degree(s);
    let fiber_count = match count_filtration(s, None) {
        Ok(c) => Some(c.count),
        Err(e) if e.is_invalid_system() => None,
        Err(e) => return Err(e),
    };
    if k < 0 {
        return Ok(JacobianBoundReport {
            k,
            jacobian_zero: true,
            bound: None,
            fiber_count,
            degree_estimate: None,
            satisfied: true,
        });
    }
    let bound = s.n1.min(s.n2) as usize * (k as usize + 1);
    let degree = degree_of_mapping(s, trials, seed)?;
    Ok(JacobianBoundReport {
        k,
        jacobian_zero: false,
        bound: Some(bound),
        fiber_count,
        degree_estimate: Some(degree),
        satisfied: degree <= bound && fiber_count.is_none_or(|c| c <= bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> BivarPoly {
        parse_poly(s, 8).unwrap().tight()
    }

    #[test]
    fn properness() {
        let (pp, sub) = make_proper(&p("y^2 - x")).unwrap();
        assert!(sub.is_identity());
        assert_eq!((pp.p, pp.leading.clone()), (2, rat(1)));
        let (pp, sub) = make_proper(&p("x*y - 1")).unwrap();
        assert_eq!(sub.lambda, rat(1));
        assert_eq!(pp.g, p("y^2 + x*y - 1").with_dbound(2).unwrap());
        let (pp, _) = make_proper(&p("x")).unwrap();
        assert_eq!(pp.p, 1);
        assert_eq!(make_proper(&BivarPoly::zero(1)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn newton_polygon() {
        assert_eq!(newton_exponents(&p("y^2 - x")), vec![(Rational::new(1.into(), 2.into()), 2)]);
        assert_eq!(newton_exponents(&p("(y - 1)*(y - x)")), vec![(rat(0), 1), (rat(1), 1)]);
    }

    fn cycles_of(s: &str) -> Vec<(usize, Option<Rational>)> {
        let (pp, _) = make_proper(&p(s)).unwrap();
        let r = branch_radius(&pp, &BivarPoly::constant(rat(1))).unwrap();
        let mut v: Vec<_> =
            newton_puiseux_roots(&pp, r, 1e-8).unwrap().into_iter().map(|c| (c.den, c.lead_exp)).collect();
        v.sort();
        v
    }

    #[test]
    fn branch_examples() {
        assert_eq!(cycles_of("y^2 - x"), vec![(2, Some(Rational::new(1.into(), 2.into())))]);
        assert_eq!(cycles_of("y^2 - x^2"), vec![(1, Some(rat(1))), (1, Some(rat(1)))]);
        assert_eq!(cycles_of("(y - 1)*(y - x)"), vec![(1, Some(rat(0))), (1, Some(rat(1)))]);
        assert_eq!(cycles_of("y*(y - x)^2"), vec![(1, None), (1, Some(rat(1))), (1, Some(rat(1)))]);
    }

    #[test]
    fn composition_examples() {
        let (pp, sub) = make_proper(&p("y^2 - x")).unwrap();
        let f2 = p("x + y - 1");
        let r = branch_radius(&pp, &f2).unwrap();
        let cyc = newton_puiseux_roots(&pp, r, 1e-8).unwrap();
        assert_eq!(composition_degree(&f2, &cyc[0], &sub).unwrap(), rat(1));
        assert_eq!(composition_degree(&p("3"), &cyc[0], &sub).unwrap(), rat(0));

        let (pp, sub) = make_proper(&p("y^2 + y - x")).unwrap();
        let f2 = p("y^2 - x");
        let r = branch_radius(&pp, &f2).unwrap();
        for c in newton_puiseux_roots(&pp, r, 1e-8).unwrap() {
            assert_eq!(composition_degree(&f2, &c, &sub).unwrap(), Rational::new(1.into(), 2.into()));
        }
    }

    #[test]
    fn zeuthen_examples() {
        let cfg = ZeuthenConfig::default();
        let z = |n1, n2, a: &str, b: &str| {
            zeuthen_count(&PolySystem::parse(n1, n2, a, b).unwrap(), &cfg).unwrap().count
        };
        assert_eq!(z(2, 1, "y^2 - x", "x + y - 1"), 2);
        assert_eq!(z(1, 2, "y", "x*y - 1"), 0);
        assert_eq!(z(1, 1, "x", "y"), 1);
    }

    #[test]
    fn jacobian_degrees() {
        let j = |n1, n2, a: &str, b: &str| jacobian_degree(&PolySystem::parse(n1, n2, a, b).unwrap());
        assert_eq!(j(1, 1, "x", "y"), 0);
        assert_eq!(j(2, 1, "x*y", "x"), 1);
        assert_eq!(j(1, 1, "x", "2*x"), -1);
    }

    #[test]
    fn jacobian_bound_examples() {
        let t = |n1, n2, a: &str, b: &str| {
            jacobian_bound_check(&PolySystem::parse(n1, n2, a, b).unwrap(), 5, 0).unwrap()
        };
        let r = t(1, 1, "x", "y");
        assert_eq!((r.k, r.bound, r.degree_estimate, r.satisfied), (0, Some(1), Some(1), true));
        let r = t(2, 1, "x + y^2", "y");
        assert_eq!((r.k, r.bound, r.degree_estimate, r.satisfied), (0, Some(1), Some(1), true));
        let r = t(2, 1, "x^2", "y");
        assert_eq!((r.k, r.bound, r.degree_estimate, r.satisfied), (1, Some(2), Some(2), true));
        let r = t(1, 1, "x", "2*x");
        assert!(r.jacobian_zero && r.satisfied);
    }
}
