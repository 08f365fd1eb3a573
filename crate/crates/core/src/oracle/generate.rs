use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fibercount::validate_system;
use crate::poly::{monomials, rat, BivarPoly, PolySystem, Rational};

const MAX_ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Dense integer coefficients.
    Random,
    /// Products of affine-linear factors; zeros are known exactly.
    LineProducts,
    /// Compositions of elementary and unimodular affine maps (`J` constant).
    Automorphism,
    /// `(F1, c F1 + g)` with `deg F1 = n1`, `deg g = n2`.
    DkFamily,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::Random, Family::LineProducts, Family::Automorphism, Family::DkFamily];

    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::LineProducts => "line_products",
            Family::Automorphism => "automorphism",
            Family::DkFamily => "dk_family",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n1: u32,
    pub n2: u32,
    /// Coefficients are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
}

/// Ground truth supplied by the family, when it has any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Annotation {
    /// All affine common zeros (each simple).
    pub points: Option<Vec<(Rational, Rational)>>,
    pub degree_of_mapping: Option<usize>,
    pub jacobian_degree_at_most: Option<i64>,
    /// Draws needed to obtain a valid system.
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSystem {
    pub system: PolySystem,
    pub annotation: Annotation,
}

pub fn generate(spec: &GeneratorSpec) -> Result<GeneratedSystem> {
    if spec.n1 == 0 || spec.n2 == 0 || spec.bound < 1 {
        return Err(Error::InvalidSpec(format!("{spec:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let drawn = match spec.family {
            Family::Random => draw_random(spec, &mut rng),
            Family::LineProducts => draw_line_products(spec, &mut rng),
            Family::Automorphism => draw_automorphism(spec, &mut rng),
            Family::DkFamily => draw_dk(spec, &mut rng),
        };
        if let Some(mut g) = drawn {
            if validate_system(&g.system).is_ok() {
                if attempt > 1 {
                    log::debug!("{}: {} draws rejected", spec.family, attempt - 1);
                }
                g.annotation.attempts = attempt;
                return Ok(g);
            }
        }
    }
    Err(Error::InvalidSpec(format!("no valid draw in {MAX_ATTEMPTS} attempts for {spec:?}")))
}

fn coeff(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = coeff(rng, bound);
        if c != 0 {
            return c;
        }
    }
}

fn dense(rng: &mut ChaCha8Rng, d: u32, bound: i64) -> BivarPoly {
    let terms = monomials(i64::from(d)).map(|(i, j)| ((i, j), rat(coeff(rng, bound))));
    BivarPoly::from_terms(d, terms.collect::<Vec<_>>()).expect("within bound")
}

fn draw_random(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Option<GeneratedSystem> {
    let f1 = dense(rng, spec.n1, spec.bound);
    let f2 = dense(rng, spec.n2, spec.bound);
    let system = PolySystem::new(spec.n1, spec.n2, &f1, &f2).ok()?;
    Some(GeneratedSystem { system, annotation: Annotation::default() })
}

/// `(a, b, c)` for the line `a X1 + b X2 + c`.
type Line = (i64, i64, i64);

fn line_poly(l: Line) -> BivarPoly {
    BivarPoly::from_i64(1, &[((1, 0), l.0), ((0, 1), l.1), ((0, 0), l.2)]).expect("linear")
}

fn intersect(l: Line, m: Line) -> Option<(Rational, Rational)> {
    let det = l.0 * m.1 - l.1 * m.0;
    if det == 0 {
        return None;
    }
    let x = Rational::new((l.1 * m.2 - l.2 * m.1).into(), det.into());
    let y = Rational::new((l.2 * m.0 - l.0 * m.2).into(), det.into());
    Some((x, y))
}

fn draw_line_products(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Option<GeneratedSystem> {
    let mut draw_lines = |n: u32| -> Vec<Line> {
        (0..n)
            .map(|_| loop {
                let l = (coeff(rng, spec.bound), coeff(rng, spec.bound), coeff(rng, spec.bound));
                if l.0 != 0 || l.1 != 0 {
                    break l;
                }
            })
            .collect()
    };
    let (l1, l2) = (draw_lines(spec.n1), draw_lines(spec.n2));
    let mut points = Vec::new();
    for &a in &l1 {
        for &b in &l2 {
            let p = intersect(a, b)?;
            if points.contains(&p) {
                return None;
            }
            points.push(p);
        }
    }
    let product = |ls: &[Line]| ls.iter().fold(BivarPoly::constant(rat(1)), |acc, &l| &acc * &line_poly(l));
    let system = PolySystem::new(spec.n1, spec.n2, &product(&l1), &product(&l2)).ok()?;
    Some(GeneratedSystem { system, annotation: Annotation { points: Some(points), ..Annotation::default() } })
}

/// Composes up to four maps onto `(X1, X2)`: unimodular affine maps and
/// triangular maps `(F1 + c F2^k, F2)` or `(F1, F2 + c F1^k)`. Draws whose
/// degrees exceed `(n1, n2)` are rejected; the declared bounds are the
/// actual degrees.
fn draw_automorphism(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Option<GeneratedSystem> {
    let b = spec.bound.min(3);
    let mut f = (BivarPoly::x1(), BivarPoly::x2());
    for _ in 0..rng.gen_range(1..=4) {
        if rng.gen_bool(0.5) {
            // [[1, u], [0, 1]] or its transpose, plus a translation
            let u = rat(nonzero(rng, b));
            let (e1, e2) = (BivarPoly::constant(rat(coeff(rng, b))), BivarPoly::constant(rat(coeff(rng, b))));
            f = if rng.gen_bool(0.5) {
                (&(&f.0 + &f.1.scale(&u)) + &e1, &f.1 + &e2)
            } else {
                (&f.0 + &e1, &(&f.1 + &f.0.scale(&u)) + &e2)
            };
        } else {
            let c = rat(nonzero(rng, b));
            let k = rng.gen_range(1..=spec.n1.max(spec.n2).max(1));
            f = if rng.gen_bool(0.5) {
                (&f.0 + &f.1.pow(k).scale(&c), f.1)
            } else {
                let next = &f.1 + &f.0.pow(k).scale(&c);
                (f.0, next)
            };
        }
    }
    let (d1, d2) = (f.0.degree()?, f.1.degree()?);
    if d1 > spec.n1 || d2 > spec.n2 {
        return None;
    }
    let system = PolySystem::new(d1.max(1), d2.max(1), &f.0, &f.1).ok()?;
    Some(GeneratedSystem {
        system,
        annotation: Annotation {
            degree_of_mapping: Some(1),
            jacobian_degree_at_most: Some(0),
            ..Annotation::default()
        },
    })
}

fn draw_dk(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Option<GeneratedSystem> {
    let (n, d) = (spec.n1, spec.n2);
    let f1 = dense(rng, n, spec.bound);
    let g = dense(rng, d, spec.bound);
    if f1.degree() != Some(n) || g.degree() != Some(d) {
        return None;
    }
    let c = rat(nonzero(rng, spec.bound));
    let f2 = &f1.scale(&c) + &g;
    if f2.is_zero() {
        return None;
    }
    let system = PolySystem::new(n, n.max(d), &f1, &f2).ok()?;
    Some(GeneratedSystem {
        system,
        annotation: Annotation {
            jacobian_degree_at_most: Some(i64::from(n + d) - 2),
            ..Annotation::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn spec(family: Family, n1: u32, n2: u32, seed: u64) -> GeneratorSpec {
        GeneratorSpec { family, n1, n2, bound: 5, seed }
    }

    #[test]
    fn deterministic() {
        for family in Family::ALL {
            let a = generate(&spec(family, 2, 2, 7)).unwrap();
            let b = generate(&spec(family, 2, 2, 7)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.system.to_string(), b.system.to_string());
        }
    }

    #[test]
    fn line_product_points_are_zeros() {
        let g = generate(&spec(Family::LineProducts, 2, 3, 1)).unwrap();
        let pts = g.annotation.points.unwrap();
        assert_eq!(pts.len(), 6);
        for (x, y) in &pts {
            assert!(g.system.f1.eval(x, y).is_zero());
            assert!(g.system.f2.eval(x, y).is_zero());
        }
    }

    #[test]
    fn automorphisms_have_constant_jacobian() {
        for seed in 0..10 {
            let g = generate(&spec(Family::Automorphism, 3, 3, seed)).unwrap();
            let j = crate::poly::jacobian(&g.system);
            assert_eq!(j.degree(), Some(0), "{}", g.system);
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("bogus".parse::<Family>().is_err());
    }
}
