mod common;

use bicount::eliminant::*;
use bicount::fibercount::count_filtration;
use bicount::oracle::Family;
use bicount::poly::{rat, Rational, TernaryForm};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;

fn form(degree: u32, coeffs: &[i64]) -> TernaryForm {
    let d = bicount::poly::ternary::sym_dim(i64::from(degree));
    let c: Vec<Rational> = coeffs.iter().cycle().take(d).map(|&x| rat(x)).collect();
    TernaryForm::from_dense(degree, &c)
}

fn pair_strategy() -> impl Strategy<Value = (FormPair, TernaryForm)> {
    (
        1u32..=4,
        1u32..=4,
        proptest::collection::vec(-5i64..=5, 1..40),
        proptest::collection::vec(-5i64..=5, 1..40),
        proptest::array::uniform3(-5i64..=5),
    )
        .prop_filter("nonzero forms", |(_, _, a, b, s)| {
            a.iter().any(|&x| x != 0) && b.iter().any(|&x| x != 0) && s.iter().any(|&x| x != 0)
        })
        .prop_map(|(n1, n2, a, b, s)| (FormPair::new(form(n1, &a), form(n2, &b)).unwrap(), lin(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn beta_prime_after_beta_vanishes((f, s) in pair_strategy()) {
        let prod = build_beta_prime(&f, &s).unwrap().mul(&build_beta(&f, &s).unwrap()).unwrap();
        prop_assert!(prod.is_zero());
    }

    #[test]
    fn value_is_independent_of_a((f, s) in pair_strategy(), a in proptest::array::uniform3(-4i64..=4)) {
        let a = a.map(rat);
        prop_assume!(!s.eval(&a).is_zero());
        let base = [e(0), e(1), e(2)].into_iter().find(|b| !s.eval(b).is_zero()).unwrap();
        prop_assert_eq!(resultant_value(&f, &s, &a).unwrap(), resultant_value(&f, &s, &base).unwrap());
    }

    /// `resultant_value / restricted binary resultant` is one constant per
    /// `(n1, n2)`.
    #[test]
    fn value_matches_restriction_up_to_constant((f, _) in pair_strategy(), u in proptest::array::uniform3(-4i64..=4), w in proptest::array::uniform3(-4i64..=4)) {
        prop_assume!(u[2] != 0 && w[2] != 0);
        prop_assume!((u[0], u[1]) != (0, 0) && (w[0], w[1]) != (0, 0));
        let ratio = |u: [i64; 3]| {
            let r = restricted_resultant(&f.f1, &f.f2, u);
            (!r.is_zero()).then(|| resultant_value(&f, &lin(u), &e(2)).unwrap() / r)
        };
        if let (Some(a), Some(b)) = (ratio(u), ratio(w)) {
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn values_vanish_exactly_with_the_restriction() {
    let g = gen(Family::Random, 2, 3, 11);
    let f = FormPair::from_system(&g.system);
    for u in [[1, 2, 3], [0, 1, -1], [2, -3, 1], [1, 0, 0]] {
        let a = e((0..3).rev().find(|&i| u[i] != 0).unwrap());
        let v = resultant_value(&f, &lin(u), &a).unwrap();
        assert_eq!(v.is_zero(), restricted_resultant(&f.f1, &f.f2, u).is_zero());
    }
}

#[test]
fn sl3_invariance() {
    // unimodular integer changes of coordinates and their inverses
    type Pair = ([[i64; 3]; 3], [[i64; 3]; 3]);
    let gs: [Pair; 3] = [
        ([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, -1, 0], [0, 1, 0], [0, 0, 1]]),
        ([[1, 0, 0], [2, 1, 0], [-1, 3, 1]], [[1, 0, 0], [-2, 1, 0], [7, -3, 1]]),
        ([[0, 1, 0], [0, 0, 1], [1, 0, 0]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    ];
    for seed in 0..6 {
        let g = gen(Family::Random, 1 + seed as u32 % 3, 1 + (seed as u32 / 3) % 2, seed);
        let f = FormPair::from_system(&g.system);
        let s = lin([1, -2, 3]);
        let a = e(2);
        let base = resultant_value(&f, &s, &a).unwrap();
        for (m, inv) in &gs {
            let m = m.map(|r| r.map(rat));
            let inv = inv.map(|r| r.map(rat));
            let fg = f.substitute_linear(&m);
            let sg = s.substitute_linear(&m);
            let ga: [Rational; 3] =
                std::array::from_fn(|i| (0..3).map(|j| &inv[i][j] * &a[j]).fold(rat(0), |x, y| x + y));
            assert_eq!(resultant_value(&fg, &sg, &ga).unwrap(), base);
        }
    }
}

#[test]
fn homogeneity_exponents_are_n2_and_n1() {
    let mut seen = Vec::new();
    for seed in 0..9 {
        let (n1, n2) = (1 + seed as u32 % 3, 1 + seed as u32 / 3);
        let g = gen(Family::Random, n1, n2, seed);
        let f = FormPair::from_system(&g.system);
        let s = lin([2, 1, 3]);
        let v = resultant_value(&f, &s, &e(2)).unwrap();
        if v.is_zero() {
            continue;
        }
        let scaled = FormPair::new(f.f1.scale(&rat(3)), f.f2.clone()).unwrap();
        let r = resultant_value(&scaled, &s, &e(2)).unwrap() / &v;
        let d1 = (0..20).find(|&k| bicount::poly::rational::pow(&rat(3), k) == r).expect("power of 3");
        let scaled = FormPair::new(f.f1.clone(), f.f2.scale(&rat(3))).unwrap();
        let r = resultant_value(&scaled, &s, &e(2)).unwrap() / &v;
        let d2 = (0..20).find(|&k| bicount::poly::rational::pow(&rat(3), k) == r).expect("power of 3");
        seen.push(((n1, n2), (d1, d2)));
    }
    assert!(!seen.is_empty());
    for ((n1, n2), d) in seen {
        assert_eq!(d, (n2, n1));
    }
}

#[test]
fn pencil_scaling_by_two_to_the_n2() {
    let s = sys(2, 3, "x*y - 3*x + 1", "y^3 - x^2 + 2");
    let f = FormPair::from_system(&s);
    let h = TernaryForm::var(2);
    let hp = lin([1, -1, 0]);
    let base = pencil_resultant(&f, &h, &hp, &e(2)).unwrap().coeffs;
    let doubled = FormPair::new(f.f1.scale(&rat(2)), f.f2.clone()).unwrap();
    let scaled = pencil_resultant(&doubled, &h, &hp, &e(2)).unwrap().coeffs;
    assert_eq!(scaled, base.scale(&rat(8)));
}

#[test]
fn pencil_degree_drops_exactly_with_zeros_on_the_moving_line() {
    // h = x3 and the affine zeros: degree n1 n2 iff no zero at infinity
    for seed in 0..8 {
        let g = gen(Family::LineProducts, 1 + seed % 3, 1 + (seed / 3) % 3, u64::from(seed));
        let s = &g.system;
        let h = bicount::fibercount::choose_general_line(s).unwrap();
        let r = eliminant_pencil(s, &h).unwrap();
        assert_eq!(r.degree() as u32, s.bezout_number());
    }
    let s = sys(2, 2, "x^2 - y", "x^2 + x*y - 1");
    let h = bicount::fibercount::choose_general_line(&s).unwrap();
    let r = eliminant_pencil(&s, &h).unwrap();
    assert!(r.degree() < 4);
    assert_eq!(r.degree(), count_filtration(&s, Some(&h)).unwrap().count);
}

#[test]
fn eliminant_vanishes_on_lines_through_zeros() {
    for seed in 0..3 {
        let g = gen(Family::LineProducts, 2, 2, seed);
        let f = FormPair::from_system(&g.system);
        let q = eliminant_coeffs(&f).unwrap();
        let pts = g.annotation.points.unwrap();
        for (k, (x, y)) in pts.iter().enumerate() {
            let u1 = rat(k as i64 + 1);
            let u2 = rat(2 - k as i64);
            let u3 = -(&u1 * x + &u2 * y);
            assert!(q.eval(&[u1, u2, u3]).is_zero());
        }
        let mut nonzero = 0;
        for i in 0..20i64 {
            let u = [rat(i % 5 - 2), rat(i % 7 - 3), rat(i + 1)];
            if pts.iter().all(|(x, y)| !(&u[0] * x + &u[1] * y + &u[2]).is_zero()) {
                assert!(!q.eval(&u).is_zero());
                nonzero += 1;
            }
        }
        assert!(nonzero >= 15);
    }
}

#[test]
fn eliminant_matches_resultant_values() {
    let s = sys(2, 1, "x^2 + y - 2", "x - y");
    let f = FormPair::from_system(&s);
    let q = eliminant_coeffs(&f).unwrap();
    for u in [[1, 1, 1], [2, -1, 3], [0, 1, 5]] {
        let h = lin(u);
        assert_eq!(q.eval(&u.map(rat)), resultant_value(&f, &h, &e(2)).unwrap());
    }
}
