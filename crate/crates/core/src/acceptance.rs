//! The end-to-end acceptance suite, shared by the `acceptance` test target
//! and the `selftest` command.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::eliminant::{build_beta, build_beta_prime, count_via_eliminant, e3, ComplexSpaces, FormPair};
use crate::error::{Error, Result};
use crate::fibercount::{
    candidate_line, check_general, choose_general_line, count_filtration, gamma_maps, validate_system,
};
use crate::linalg::pencil::filtration_unchecked;
use crate::linalg::{pencil_degree_filtration, pencil_det, PencilMatrix, QMat, Subspace};
use crate::oracle::{count_via_line_pencil, generate, Family, GeneratedSystem, GeneratorSpec};
use crate::poly::{linear_substitution, monomials, rat, BivarPoly, PolySystem, Rational, TernaryForm};
use crate::puiseux::{jacobian_bound_check, zeuthen_count, ZeuthenConfig};

const TIME_LIMIT: Duration = Duration::from_secs(120);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Small,
    Full,
}

impl Scale {
    /// `full` at full scale, otherwise roughly a fifth of it.
    fn n(self, full: usize) -> usize {
        match self {
            Scale::Full => full,
            Scale::Small => full.div_ceil(5),
        }
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            _ => Err(Error::InvalidSpec(format!("unknown scale {s:?}"))),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Small => "small",
            Scale::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

pub const NAMES: [&str; 9] = [
    "three-way count agreement",
    "filtration chain laws",
    "pencil degree equivalence",
    "worked instances",
    "Zeuthen agreement",
    "Jacobian degree bound",
    "structural identities",
    "eliminant geometry",
    "invariance",
];

pub fn run_all(scale: Scale, seed: u64) -> Vec<CriterionResult> {
    (1..=9).map(|id| run(id, scale, seed)).collect()
}

pub fn run(id: u8, scale: Scale, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let seed = seed.wrapping_mul(1000).wrapping_add(u64::from(id) * 100_000);
    let outcome = match id {
        1 => three_way(scale, seed),
        2 => chain_laws(scale, seed),
        3 => pencils(scale, seed),
        4 => worked(),
        5 => zeuthen(scale, seed),
        6 => jacobian_bound(scale, seed),
        7 => structural(scale, seed),
        8 => geometry(scale, seed),
        9 => invariance(scale, seed),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if matches!(id, 1 | 5) && elapsed > TIME_LIMIT {
        passed = false;
        detail = format!("{detail}; over the {}s limit", TIME_LIMIT.as_secs());
    }
    let name = NAMES.get(usize::from(id).wrapping_sub(1)).copied().unwrap_or("unknown");
    CriterionResult { id, name, passed, detail, elapsed }
}

type Outcome = std::result::Result<String, String>;

fn degrees(i: usize) -> (u32, u32) {
    (1 + (i % 3) as u32, 1 + (i / 3 % 3) as u32)
}

/// Valid systems with `n1, n2 ∈ {1, 2, 3}`, cycling through the
/// generator families; the `dk_family` and automorphism draws usually
/// have fewer than `n1 n2` affine zeros.
pub fn sample_systems(count: usize, seed: u64) -> Result<Vec<GeneratedSystem>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let (n1, n2) = degrees(i / 4);
            let family = Family::ALL[i % 4];
            let n2 = if family == Family::DkFamily { n2.min(2) } else { n2 };
            generate(&GeneratorSpec { family, n1, n2, bound: 5, seed: seed + i as u64 })
        })
        .collect()
}

fn three_way(scale: Scale, seed: u64) -> Outcome {
    let systems = sample_systems(scale.n(200), seed).map_err(|e| e.to_string())?;
    let failures: Vec<String> = systems
        .par_iter()
        .filter_map(|g| {
            let s = &g.system;
            let run = || -> Result<(usize, usize, usize)> {
                let h = choose_general_line(s)?;
                Ok((
                    count_filtration(s, Some(&h))?.count,
                    count_via_eliminant(s, &h)?,
                    count_via_line_pencil(s, &h)?,
                ))
            };
            match run() {
                Ok((a, b, c)) if a == b && b == c => None,
                Ok(t) => Some(format!("{s}: {t:?}")),
                Err(e) => Some(format!("{s}: {e}")),
            }
        })
        .collect();
    report(systems.len(), "systems agree", failures)
}

fn report(total: usize, what: &str, failures: Vec<String>) -> Outcome {
    if failures.is_empty() {
        Ok(format!("{total}/{total} {what}"))
    } else {
        Err(format!("{}/{total} {what}; first failure: {}", total - failures.len(), failures[0]))
    }
}

fn chain_laws(scale: Scale, seed: u64) -> Outcome {
    let systems = sample_systems(scale.n(200), seed).map_err(|e| e.to_string())?;
    let failures: Vec<String> = systems
        .par_iter()
        .filter_map(|g| {
            let s = &g.system;
            let c = match count_filtration(s, None) {
                Ok(c) => c,
                Err(e) => return Some(format!("{s}: {e}")),
            };
            let f = &c.filtration;
            let bezout = s.bezout_number() as usize;
            let ok = f.dims[0] == 0
                && f.is_monotone().unwrap_or(false)
                && f.is_concave()
                && f.stabilized_at <= f.prefix_dim + 1
                && f.stable_dim() <= bezout
                && c.count == bezout - f.stable_dim();
            (!ok).then(|| format!("{s}: dims {:?}", f.dims))
        })
        .collect();
    report(systems.len(), "chains monotone, concave and stabilized", failures)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMat {
    let data = (0..rows).map(|_| (0..cols).map(|_| rat(rng.gen_range(-3..=3))).collect()).collect();
    QMat::from_rows(cols, data)
}

/// A random `n × n` matrix of rank at most `r`.
fn low_rank(rng: &mut ChaCha8Rng, n: usize, r: usize) -> QMat {
    random_matrix(rng, n, r).mul(&random_matrix(rng, r, n)).expect("shapes")
}

/// Seeded regular pencils `η' + tη` of size at most 10 with rank-deficient
/// parts, so that degree drops are common.
pub fn random_regular_pencil(rng: &mut ChaCha8Rng) -> (QMat, QMat) {
    loop {
        let n = rng.gen_range(1..=10);
        let (r, r_prime) = (rng.gen_range(0..=n), rng.gen_range(1..=n));
        let eta = low_rank(rng, n, r);
        let eta_prime = low_rank(rng, n, r_prime);
        let det = pencil_det(&PencilMatrix::new(eta_prime.clone(), eta.clone()).expect("same shape"));
        if det.map(|d| !d.is_zero()).unwrap_or(false) {
            return (eta, eta_prime);
        }
    }
}

fn pencils(scale: Scale, seed: u64) -> Outcome {
    let total = scale.n(200);
    let failures: Vec<String> = (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed + i as u64);
            let (eta, eta_prime) = random_regular_pencil(&mut rng);
            let direct = pencil_det(&PencilMatrix::new(eta_prime.clone(), eta.clone()).ok()?).ok()?.degree();
            match pencil_degree_filtration(&eta, &eta_prime) {
                Ok(f) if Some(f.degree) == direct => None,
                Ok(f) => Some(format!("pencil {i}: filtration {} vs det {direct:?}", f.degree)),
                Err(e) => Some(format!("pencil {i}: {e}")),
            }
        })
        .collect();
    report(total, "pencil degrees agree", failures)
}

fn worked() -> Outcome {
    let p = |s: &str| crate::poly::parse_poly(s, 1).expect("literal");
    let cases = [
        ((2, 1, "x*y - 1", "x"), Some("x - y"), 0, Some(vec![0, 1, 2, 2])),
        ((2, 1, "x*y - 1", "y - 1"), Some("x - y"), 1, None),
        ((1, 1, "x", "y"), None, 1, None),
    ];
    let mut checked = 0;
    for ((n1, n2, f1, f2), h, expected, dims) in cases {
        let s = PolySystem::parse(n1, n2, f1, f2).map_err(|e| e.to_string())?;
        let h = h.map(p).unwrap_or_else(|| choose_general_line(&s).expect("valid"));
        let c = count_filtration(&s, Some(&h)).map_err(|e| e.to_string())?;
        let e = count_via_eliminant(&s, &h).map_err(|e| e.to_string())?;
        let o = count_via_line_pencil(&s, &h).map_err(|e| e.to_string())?;
        if c.count != expected || e != expected || o != expected {
            return Err(format!("{s}: counts {} {e} {o}, expected {expected}", c.count));
        }
        if let Some(d) = dims {
            if c.filtration.dims != d {
                return Err(format!("{s}: dims {:?}, expected {d:?}", c.filtration.dims));
            }
        }
        checked += 1;
    }
    for n1 in 1..=3 {
        for n2 in 1..=3 {
            let g = generate(&GeneratorSpec { family: Family::LineProducts, n1, n2, bound: 5, seed: 4 })
                .map_err(|e| e.to_string())?;
            let s = &g.system;
            let expected = (n1 * n2) as usize;
            let h = choose_general_line(s).map_err(|e| e.to_string())?;
            let counts = (
                count_filtration(s, Some(&h)).map_err(|e| e.to_string())?.count,
                count_via_eliminant(s, &h).map_err(|e| e.to_string())?,
                count_via_line_pencil(s, &h).map_err(|e| e.to_string())?,
                g.annotation.points.as_ref().map_or(0, Vec::len),
            );
            if counts != (expected, expected, expected, expected) {
                return Err(format!("{s}: {counts:?}, expected {expected}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked}/{checked} instances reproduce"))
}

fn zeuthen(scale: Scale, seed: u64) -> Outcome {
    let systems = sample_systems(scale.n(100), seed).map_err(|e| e.to_string())?;
    let config = ZeuthenConfig::default();
    let escalated = std::sync::atomic::AtomicUsize::new(0);
    let failures: Vec<String> = systems
        .par_iter()
        .filter_map(|g| {
            let s = &g.system;
            let z = match zeuthen_count(s, &config) {
                Ok(z) => z,
                Err(e) => return Some(format!("{s}: {e}")),
            };
            if z.escalations > 0 {
                escalated.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            }
            match count_filtration(s, None) {
                Ok(c) if c.count == z.count => None,
                Ok(c) => Some(format!("{s}: zeuthen {} vs filtration {}", z.count, c.count)),
                Err(e) => Some(format!("{s}: {e}")),
            }
        })
        .collect();
    let escalated = escalated.into_inner();
    report(systems.len(), "Zeuthen counts agree", failures).map(|d| format!("{d} ({escalated} escalated)"))
}

fn jacobian_bound(scale: Scale, seed: u64) -> Outcome {
    let per_family = scale.n(20);
    let jobs: Vec<(Family, u32, u32, u64)> = Family::ALL
        .into_iter()
        .flat_map(|family| {
            (0..per_family).map(move |i| {
                let (n1, n2) = match family {
                    Family::DkFamily => (1 + (i % 3) as u32, 1 + (i / 3 % 2) as u32),
                    _ => degrees(i),
                };
                (family, n1, n2, seed + i as u64)
            })
        })
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(family, n1, n2, seed)| {
            let g = match generate(&GeneratorSpec { family, n1, n2, bound: 5, seed }) {
                Ok(g) => g,
                Err(e) => return Some(format!("{family} {n1} {n2}: {e}")),
            };
            let s = &g.system;
            let r = match jacobian_bound_check(s, 5, seed) {
                Ok(r) => r,
                Err(e) => return Some(format!("{family} {s}: {e}")),
            };
            if !r.satisfied {
                return Some(format!("{family} {s}: {r:?}"));
            }
            if let Some(k) = g.annotation.jacobian_degree_at_most {
                if r.k > k {
                    return Some(format!("{family} {s}: deg J = {} > {k}", r.k));
                }
            }
            if family == Family::Automorphism && (r.k != 0 || r.degree_estimate != Some(1)) {
                return Some(format!("automorphism {s}: {r:?}"));
            }
            None
        })
        .collect();
    report(jobs.len(), "systems within the bound", failures)
}

fn random_form(rng: &mut ChaCha8Rng, degree: u32) -> TernaryForm {
    let terms = monomials(i64::from(degree))
        .map(|(i, j)| ((i, j, degree - i - j), rat(rng.gen_range(-4..=4))))
        .collect::<Vec<_>>();
    TernaryForm::from_terms(degree, terms).expect("degree matches")
}

/// `{0} × K_i` against the chain of `(γ, γ')` for one system and line.
fn gamma_chain_matches(s: &PolySystem, h: &BivarPoly) -> Result<bool> {
    let (gamma, gamma_prime) = gamma_maps(s, h)?;
    let l = filtration_unchecked(&gamma, &gamma_prime)?;
    let k = count_filtration(s, Some(h))?.filtration;
    if l.chain.len() != k.chain.len() {
        return Ok(false);
    }
    let offset = gamma.rows() - k.k.ambient();
    for (li, ki) in l.chain.iter().zip(&k.chain) {
        let lifted: Vec<Vec<Rational>> = ki
            .basis_vectors()
            .into_iter()
            .map(|v| std::iter::repeat_n(Rational::zero(), offset).chain(v).collect())
            .collect();
        if *li != Subspace::from_spanning(gamma.rows(), lifted)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn structural(scale: Scale, seed: u64) -> Outcome {
    for n1 in 1..=6 {
        for n2 in 1..=6 {
            let sp = ComplexSpaces::new(n1, n2);
            if sp.dim_mp != sp.dim_m + sp.dim_mpp {
                return Err(format!("dimension identity fails at ({n1}, {n2})"));
            }
        }
    }
    let systems = sample_systems(scale.n(50), seed).map_err(|e| e.to_string())?;
    for g in &systems {
        let s = &g.system;
        let h = choose_general_line(s).map_err(|e| e.to_string())?;
        let (gamma, _) = gamma_maps(s, &h).map_err(|e| e.to_string())?;
        if gamma.cols() - gamma.rank() != (s.n1 + s.n2) as usize {
            return Err(format!("{s}: dim ker γ = {}", gamma.cols() - gamma.rank()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = scale.n(50);
    for _ in 0..forms {
        let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let f = FormPair::new(random_form(&mut rng, n1), random_form(&mut rng, n2)).expect("degrees >= 1");
        let s = random_form(&mut rng, 1);
        let prod = build_beta_prime(&f, &s)
            .and_then(|bp| bp.mul(&build_beta(&f, &s)?))
            .map_err(|e| e.to_string())?;
        if !prod.is_zero() {
            return Err(format!("β'β ≠ 0 for n = ({n1}, {n2})"));
        }
    }
    let small = scale.n(20);
    for g in systems.iter().filter(|g| g.system.n1 + g.system.n2 <= 5).take(small) {
        let s = &g.system;
        let h = choose_general_line(s).map_err(|e| e.to_string())?;
        if !gamma_chain_matches(s, &h).map_err(|e| e.to_string())? {
            return Err(format!("{s}: chain of (γ, γ') differs from {{0}} × K_i"));
        }
    }
    Ok(format!(
        "dims for n <= 6; ker γ on {}; β'β = 0 on {forms}; {{0}} × K_i on {}",
        systems.len(),
        small.min(systems.iter().filter(|g| g.system.n1 + g.system.n2 <= 5).count())
    ))
}

/// A line `u · (x1, x2, x3) = 0` through the affine point `p`.
fn line_through(rng: &mut ChaCha8Rng, p: &(Rational, Rational)) -> [Rational; 3] {
    loop {
        let (u1, u2) = (rat(rng.gen_range(-9..=9)), rat(rng.gen_range(-9..=9)));
        if !(u1.is_zero() && u2.is_zero()) {
            let u3 = -(&u1 * &p.0 + &u2 * &p.1);
            return [u1, u2, u3];
        }
    }
}

/// Any `a` among `e3, e1, e2` with `h(a) ≠ 0`.
fn section_point(h: &TernaryForm) -> [Rational; 3] {
    let e = |i: usize| {
        let mut a = [Rational::zero(), Rational::zero(), Rational::zero()];
        a[i] = rat(1);
        a
    };
    [e3(), e(0), e(1)].into_iter().find(|a| !h.eval(a).is_zero()).expect("h is nonzero")
}

fn geometry(scale: Scale, seed: u64) -> Outcome {
    let systems = scale.n(20);
    let lines = scale.n(20);
    let failures: Vec<String> = (0..systems)
        .into_par_iter()
        .filter_map(|i| {
            let (n1, n2) = (1 + (i % 3) as u32, 1 + (i / 3 % 2) as u32 + (i % 2) as u32);
            let spec =
                GeneratorSpec { family: Family::LineProducts, n1, n2, bound: 5, seed: seed + i as u64 };
            let g = generate(&spec).ok()?;
            let pts = g.annotation.points.clone()?;
            let f = FormPair::from_system(&g.system);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64) << 20);
            let value = |u: &[Rational; 3]| {
                let h = TernaryForm::linear(u);
                crate::eliminant::resultant_value(&f, &h, &section_point(&h))
            };
            for _ in 0..lines {
                let p = &pts[rng.gen_range(0..pts.len())];
                match value(&line_through(&mut rng, p)) {
                    Ok(v) if v.is_zero() => {}
                    other => return Some(format!("{}: line through a zero gives {other:?}", g.system)),
                }
            }
            let mut done = 0;
            while done < lines {
                let u = [rat(rng.gen_range(-9..=9)), rat(rng.gen_range(-9..=9)), rat(rng.gen_range(-9..=9))];
                let misses = pts.iter().all(|(x, y)| !(&u[0] * x + &u[1] * y + &u[2]).is_zero());
                if u.iter().all(Zero::is_zero) || !misses {
                    continue;
                }
                match value(&u) {
                    Ok(v) if !v.is_zero() => {}
                    other => return Some(format!("{}: line missing all zeros gives {other:?}", g.system)),
                }
                done += 1;
            }
            None
        })
        .collect();
    report(systems, "systems with correct vanishing", failures)
}

/// A random integer matrix of determinant 1 or -1.
fn unimodular(rng: &mut ChaCha8Rng) -> [[Rational; 2]; 2] {
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..=4) {
        let c = rng.gen_range(-3..=3);
        m = match rng.gen_range(0..3) {
            0 => [[m[0][0] + c * m[1][0], m[0][1] + c * m[1][1]], m[1]],
            1 => [m[0], [m[1][0] + c * m[0][0], m[1][1] + c * m[0][1]]],
            _ => [m[1], m[0]],
        };
    }
    m.map(|row| row.map(rat))
}

/// The first `k` general lines in the candidate order.
pub fn general_lines(s: &PolySystem, k: usize) -> Result<Vec<BivarPoly>> {
    let mut out = Vec::new();
    for i in 0.. {
        if out.len() == k || i > 4 * (s.n1 + s.n2 + k as u32) as usize {
            break;
        }
        let h = candidate_line(i);
        if check_general(s, &h)?.general {
            out.push(h);
        }
    }
    Ok(out)
}

fn invariance(scale: Scale, seed: u64) -> Outcome {
    let systems = sample_systems(scale.n(10), seed).map_err(|e| e.to_string())?;
    let subs = scale.n(20);
    let failures: Vec<String> = systems
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let s = &g.system;
            let run = || -> Result<Option<String>> {
                validate_system(s)?;
                let lines = general_lines(s, 3)?;
                let counts: Vec<usize> = lines
                    .iter()
                    .map(|h| count_filtration(s, Some(h)).map(|c| c.count))
                    .collect::<Result<_>>()?;
                if lines.len() < 3 || counts.iter().any(|&c| c != counts[0]) {
                    return Ok(Some(format!("{s}: counts {counts:?} over lines")));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed + 7 * i as u64);
                for _ in 0..subs {
                    let a = unimodular(&mut rng);
                    let b = [rat(rng.gen_range(-3..=3)), rat(rng.gen_range(-3..=3))];
                    let t = linear_substitution(s, &a, &b)?;
                    let c = count_filtration(&t, None)?.count;
                    if c != counts[0] {
                        return Ok(Some(format!("{s}: {c} after substitution, {} before", counts[0])));
                    }
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(format!("{s}: {e}")))
        })
        .collect();
    report(systems.len(), "systems invariant", failures)
}
