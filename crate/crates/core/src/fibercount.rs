//! Counting affine common zeros of `F = (F1, F2)` with multiplicity through
//! the subspace chain
//!
//! ```text
//! K       = { F1 Q2 + F2 Q1 : Q_i homogeneous of degree n_i - 1 }
//! K_0     = 0
//! K_{i+1} = (K + H' K_i) ∩ Q[X]_{<= n1+n2-2}
//! count   = n1 n2 - dim K_∞
//! ```
//!
//! for a line `H' = 0` in general position with respect to `F`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{QMat, Subspace};
use crate::poly::{
    frac, gcd_bivariate, jacobian, mono_count, monomials, rat, BivarPoly, PolySystem, Rational,
};

/// Rejects systems with a positive-dimensional zero set or with both
/// degrees below their declared bounds.
pub fn validate_system(s: &PolySystem) -> Result<()> {
    let top1 = s.f1.top_form(s.n1)?;
    let top2 = s.f2.top_form(s.n2)?;
    if top1.is_zero() && top2.is_zero() {
        return Err(Error::DegreeDrop);
    }
    let g = gcd_bivariate(&s.f1, &s.f2)?;
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::InfiniteFiber(g.tight().to_string()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralityReport {
    pub general: bool,
    /// Which `F_i` keeps full degree on the line (1 is preferred).
    pub witness_index: Option<u8>,
    /// Direction `(p1, p2)` of the line, i.e. its point at infinity.
    pub infinity_point: (Rational, Rational),
}

/// Coefficients `(a, b)` of `H' = a X1 + b X2`, rejecting anything else.
pub fn line_coefficients(hp: &BivarPoly) -> Result<(Rational, Rational)> {
    let a = hp.coeff(1, 0);
    let b = hp.coeff(0, 1);
    let other = hp.terms().any(|(&(i, j), _)| i + j != 1);
    if other || (a.is_zero() && b.is_zero()) {
        return Err(Error::InvalidLine(hp.to_string()));
    }
    Ok((a, b))
}

pub fn check_general(s: &PolySystem, hp: &BivarPoly) -> Result<GeneralityReport> {
    let (a, b) = line_coefficients(hp)?;
    let p = (b, -a);
    let mut witness = None;
    for (idx, (f, n)) in [(&s.f1, s.n1), (&s.f2, s.n2)].into_iter().enumerate() {
        if !f.top_form(n)?.eval(&p.0, &p.1).is_zero() {
            witness = Some(idx as u8 + 1);
            break;
        }
    }
    Ok(GeneralityReport { general: witness.is_some(), witness_index: witness, infinity_point: p })
}

/// Candidate lines `X2`, then `X1 - c X2` for `c = 0, 1, -1, 2, ...`.
pub fn candidate_line(k: usize) -> BivarPoly {
    if k == 0 {
        return BivarPoly::x2();
    }
    let c = crate::linalg::interpolation_node(k - 1);
    &BivarPoly::x1() - &BivarPoly::x2().scale(&c)
}

pub fn choose_general_line(s: &PolySystem) -> Result<BivarPoly> {
    let limit = (s.n1 + s.n2 + 2) as usize;
    for k in 0..limit {
        let hp = candidate_line(k);
        if check_general(s, &hp)?.general {
            return Ok(hp);
        }
    }
    Err(Error::NoGeneralLine)
}

/// The span of `F1 X1^j X2^{n2-1-j}` and `F2 X1^j X2^{n1-1-j}` inside
/// `Q[X]_{<= n1+n2-1}`.
pub fn build_k(s: &PolySystem) -> Subspace {
    let top = s.n1 + s.n2 - 1;
    let mut gens = Vec::with_capacity((s.n1 + s.n2) as usize);
    for (f, other) in [(&s.f1, s.n2), (&s.f2, s.n1)] {
        for j in 0..other {
            let q = BivarPoly::monomial(Rational::one(), j, other - 1 - j);
            gens.push((f * &q).to_dense(top).expect("degree at most n1+n2-1"));
        }
    }
    Subspace::from_spanning(mono_count(i64::from(top)), gens).expect("lengths match")
}

/// `(K + H' K_i) ∩ Q[X]_{<= top-1}` where `top = n1 + n2 - 1` is the
/// degree of the ambient space of `k`.
pub fn filtration_step(k: &Subspace, ki: &Subspace, hp: &BivarPoly, top: u32) -> Result<Subspace> {
    let prefix = mono_count(i64::from(top) - 1);
    let mut gens = k.basis_vectors();
    for v in ki.basis_vectors() {
        if v[prefix..].iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("K_i leaves the degree <= n1+n2-2 prefix".into()));
        }
        let p = BivarPoly::from_dense(top, &v).with_dbound(top - 1)?;
        gens.push((&p * hp).to_dense(top)?);
    }
    Subspace::from_spanning(k.ambient(), gens)?.prefix_intersect(prefix)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    /// `dim Q[X]_{<= n1+n2-2}`.
    pub prefix_dim: usize,
    pub k: Subspace,
    /// `K_0, K_1, ...`, ending with the first repeated subspace.
    pub chain: Vec<Subspace>,
    pub dims: Vec<usize>,
    /// Least `i` with `K_i = K_{i+1}`.
    pub stabilized_at: usize,
}

impl Filtration {
    pub fn stable_dim(&self) -> usize {
        *self.dims.last().expect("chain is nonempty")
    }

    /// Whether `2 dim K_i >= dim K_{i-1} + dim K_{i+1}` holds for every `i >= 1`.
    pub fn is_concave(&self) -> bool {
        self.dims.windows(3).all(|w| 2 * w[1] >= w[0] + w[2])
    }

    pub fn is_monotone(&self) -> Result<bool> {
        for w in self.chain.windows(2) {
            if !w[1].contains(&w[0])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCount {
    pub count: usize,
    pub line: BivarPoly,
    pub filtration: Filtration,
}

/// Runs the chain for `H'` (chosen by [`choose_general_line`] when absent).
pub fn count_filtration(s: &PolySystem, hp: Option<&BivarPoly>) -> Result<FiberCount> {
    validate_system(s)?;
    let line = match hp {
        Some(h) => {
            if !check_general(s, h)?.general {
                return Err(Error::NotGeneral(h.to_string()));
            }
            h.clone()
        }
        None => choose_general_line(s)?,
    };
    let top = s.n1 + s.n2 - 1;
    let prefix_dim = mono_count(i64::from(top) - 1);
    let k = build_k(s);
    let mut chain = vec![Subspace::zero(k.ambient())];
    loop {
        let last = chain.last().expect("nonempty");
        let next = filtration_step(&k, last, &line, top)?;
        let stable = next.dim() == last.dim() && next.contains(last)?;
        chain.push(next);
        if stable {
            break;
        }
        if chain.len() > prefix_dim + 2 {
            return Err(Error::Internal("K_i chain failed to stabilize".into()));
        }
    }
    let dims: Vec<usize> = chain.iter().map(Subspace::dim).collect();
    let stable = *dims.last().unwrap();
    let bezout = s.bezout_number() as usize;
    if stable > bezout {
        return Err(Error::Internal(format!("dim K_inf = {stable} exceeds n1*n2 = {bezout}")));
    }
    Ok(FiberCount {
        count: bezout - stable,
        line,
        filtration: Filtration { prefix_dim, k, stabilized_at: chain.len() - 2, dims, chain },
    })
}

/// Seeded rational targets `y` with numerators in `[-1000, 1000]` and
/// denominators in `[1, 50]`.
pub fn random_targets(trials: usize, seed: u64) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| frac(rng.gen_range(-1000..=1000), rng.gen_range(1..=50));
    (0..trials).map(|_| (draw(&mut rng), draw(&mut rng))).collect()
}

/// Largest fiber size of `F - y` over `trials` seeded targets; an estimate
/// of the number of points in a generic fiber.
pub fn degree_of_mapping(s: &PolySystem, trials: usize, seed: u64) -> Result<usize> {
    if jacobian(s).is_zero() {
        return Err(Error::NonDominant);
    }
    let counts = random_targets(trials.max(1), seed)
        .par_iter()
        .map(|(y1, y2)| match count_filtration(&s.shifted(y1, y2), None) {
            Ok(c) => Ok(Some(c.count)),
            Err(e) if e.is_invalid_system() => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    counts
        .into_iter()
        .flatten()
        .max()
        .ok_or_else(|| Error::Internal("no valid fiber among the sampled targets".into()))
}

/// The pair `(γ, γ')` on `Q[X]_{<=n1-1} × Q[X]_{<=n2-1} × Q[X]_{<=n1+n2-2}`
/// with values in `Q[X]_{<=n1-2} × Q[X]_{<=n2-2} × Q[X]_{<=n1+n2-1}`:
///
/// ```text
/// γ (Q1, Q2, G) = (Δ_{n1-1} Q1, Δ_{n2-1} Q2, -G)
/// γ'(Q1, Q2, G) = (0, 0, F1 Q2 + F2 Q1 - H' G)
/// ```
///
/// where `Δ_m` multiplies the coefficient of `X^(i,j)` by `m - i - j`.
pub fn gamma_maps(s: &PolySystem, hp: &BivarPoly) -> Result<(QMat, QMat)> {
    let (n1, n2) = (i64::from(s.n1), i64::from(s.n2));
    let (d1, d2, dg, dt) =
        (mono_count(n1 - 2), mono_count(n2 - 2), mono_count(n1 + n2 - 2), mono_count(n1 + n2 - 1));
    let rows = d1 + d2 + dt;
    let cols = mono_count(n1 - 1) + mono_count(n2 - 1) + dg;
    let top = s.n1 + s.n2 - 1;
    let mut gamma = QMat::zeros(rows, cols);
    let mut gamma_prime = QMat::zeros(rows, cols);
    let mut col = 0;
    for (n, other, offset) in [(n1, &s.f2, 0), (n2, &s.f1, d1)] {
        for (i, j) in monomials(n - 1) {
            let q = BivarPoly::monomial(Rational::one(), i, j);
            let w = (n - 1) as u32 - i - j;
            if w > 0 {
                let idx = offset + crate::poly::mono_index(i, j);
                gamma.set(idx, col, rat(i64::from(w)));
            }
            let image = (other * &q).to_dense(top)?;
            for (r, c) in image.into_iter().enumerate() {
                gamma_prime.set(d1 + d2 + r, col, c);
            }
            col += 1;
        }
    }
    for (i, j) in monomials(n1 + n2 - 2) {
        let g = BivarPoly::monomial(Rational::one(), i, j);
        gamma.set(d1 + d2 + crate::poly::mono_index(i, j), col, -Rational::one());
        for (r, c) in (&g * hp).to_dense(top)?.into_iter().enumerate() {
            gamma_prime.set(d1 + d2 + r, col, -c);
        }
        col += 1;
    }
    Ok((gamma, gamma_prime))
}
