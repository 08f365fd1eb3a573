mod common;

use bicount::fibercount::count_filtration;
use bicount::oracle::*;
use bicount::poly::{parse_poly, UPoly};
use bicount::puiseux::jacobian_degree;
use common::*;

fn p(s: &str) -> bicount::poly::BivarPoly {
    parse_poly(s, 6).unwrap().tight()
}

#[test]
fn sylvester_examples() {
    // standard orientation; the reversed pair gives 1 - x
    assert_eq!(sylvester_resultant(&p("y - x"), &p("y - 1")).unwrap(), UPoly::from_i64(&[-1, 1]));
    assert_eq!(sylvester_resultant(&p("y - 1"), &p("y - x")).unwrap(), UPoly::from_i64(&[1, -1]));
    assert_eq!(sylvester_resultant(&p("y^2 - x"), &p("x + y - 1")).unwrap(), UPoly::from_i64(&[1, -3, 1]));
    assert!(sylvester_resultant(&p("x*y^2 + 1"), &p("x*y^2 + 1")).unwrap().is_zero());
}

#[test]
fn line_pencil_examples() {
    assert_eq!(count_via_line_pencil(&sys(1, 1, "x", "y"), &line("x - y")).unwrap(), 1);
    assert_eq!(count_via_line_pencil(&sys(2, 1, "x*y - 1", "x"), &line("x - y")).unwrap(), 0);
    for seed in 0..6 {
        let g = gen(Family::LineProducts, 1 + seed as u32 % 3, 2 + seed as u32 % 2, seed);
        let h = bicount::fibercount::choose_general_line(&g.system).unwrap();
        assert_eq!(count_via_line_pencil(&g.system, &h).unwrap() as u32, g.system.bezout_number());
    }
}

#[test]
fn numeric_count_examples() {
    assert_eq!(numeric_count(&sys(1, 1, "x", "y")).unwrap(), 1);
    assert_eq!(numeric_count(&sys(2, 1, "y^2 - x", "x + y - 1")).unwrap(), 2);
    assert_eq!(numeric_count(&sys(2, 1, "x*y - 1", "y - 1")).unwrap(), 1);
}

#[test]
fn numeric_count_is_advisory_but_usually_right() {
    let mut agree = 0;
    let systems = bicount::acceptance::sample_systems(40, 77).unwrap();
    for g in &systems {
        match numeric_count(&g.system) {
            Ok(n) if n == count_filtration(&g.system, None).unwrap().count => agree += 1,
            Ok(n) => panic!("{}: numeric {n}", g.system),
            Err(e) => assert!(e.is_numeric(), "{e}"),
        }
    }
    assert!(agree >= systems.len() * 9 / 10);
}

#[test]
fn generator_annotations() {
    let g = gen(Family::LineProducts, 2, 2, 3);
    assert_eq!(g.annotation.points.as_ref().unwrap().len(), 4);
    assert_eq!(count_filtration(&g.system, None).unwrap().count, 4);
    for seed in 0..5 {
        let g = gen(Family::Automorphism, 3, 3, seed);
        assert_eq!(jacobian_degree(&g.system), 0);
        assert_eq!(bicount::fibercount::degree_of_mapping(&g.system, 3, seed).unwrap(), 1);
        let g = gen(Family::DkFamily, 3, 2, seed);
        assert!(jacobian_degree(&g.system) <= 3);
    }
}

#[test]
fn generator_rejects_bad_specs() {
    let spec = GeneratorSpec { family: Family::Random, n1: 0, n2: 1, bound: 5, seed: 0 };
    assert!(matches!(generate(&spec), Err(bicount::Error::InvalidSpec(_))));
}
