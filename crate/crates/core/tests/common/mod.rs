#![allow(dead_code)]

use bicount::oracle::{generate, Family, GeneratedSystem, GeneratorSpec};
use bicount::poly::{parse_poly, rat, BivarPoly, PolySystem, Rational, TernaryForm};
use num_traits::Zero;

pub fn sys(n1: u32, n2: u32, f1: &str, f2: &str) -> PolySystem {
    PolySystem::parse(n1, n2, f1, f2).unwrap()
}

pub fn line(s: &str) -> BivarPoly {
    parse_poly(s, 1).unwrap()
}

pub fn gen(family: Family, n1: u32, n2: u32, seed: u64) -> GeneratedSystem {
    generate(&GeneratorSpec { family, n1, n2, bound: 5, seed }).unwrap()
}

pub fn e(i: usize) -> [Rational; 3] {
    let mut a = [Rational::zero(), Rational::zero(), Rational::zero()];
    a[i] = rat(1);
    a
}

pub fn lin(u: [i64; 3]) -> TernaryForm {
    TernaryForm::linear(&u.map(rat))
}

/// Binary-form resultant of `f` restricted to the line `u · x = 0`,
/// divided by the bracket power so that it does not depend on the chosen
/// parametrization of the line.
pub fn restricted_resultant(f1: &TernaryForm, f2: &TernaryForm, u: [i64; 3]) -> Rational {
    let (p, q, t) = (rat(u[0]), rat(u[1]), rat(u[2]));
    let v1 = [q.clone(), -p.clone(), rat(0)];
    let v2 = if p.is_zero() { [rat(0), -t.clone(), q.clone()] } else { [-t, rat(0), p.clone()] };
    let g = [
        [v1[0].clone(), v2[0].clone(), rat(0)],
        [v1[1].clone(), v2[1].clone(), rat(0)],
        [v1[2].clone(), v2[2].clone(), rat(0)],
    ];
    let coeffs = |f: &TernaryForm| {
        let r = f.substitute_linear(&g);
        let d = f.degree();
        (0..=d).map(|i| r.coeff(i, d - i, 0)).collect::<Vec<_>>()
    };
    let det = bicount::oracle::sylvester_matrix(&coeffs(f1), &coeffs(f2)).det().unwrap();
    let bracket = if p.is_zero() { -q } else { -p };
    det / bicount::poly::rational::pow(&bracket, f1.degree() * f2.degree())
}
