mod support;

use immcalc_core::boundary::BoundaryKind;
use immcalc_core::{Atom, Family, FourManifoldExpr, Orientation, SymmetricForm};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use support::*;

fn p(s: &str) -> FourManifoldExpr {
    FourManifoldExpr::parse(s).unwrap()
}

#[test]
fn grammar_examples() {
    let e = p("P(A,4;2) + SxS");
    assert_eq!(e.atoms().cloned().collect::<Vec<_>>(), [Atom::plumbing(Family::A, 4, 2).unwrap(), Atom::SxS]);
    let e = p("E(-3) + CP2 + CP2");
    assert_eq!(e.atoms().cloned().collect::<Vec<_>>(), [Atom::DiskBundle(-3), Atom::Cp2, Atom::Cp2]);
    assert_eq!(p("P(D,7;2)").intersection_form().size(), 7);
}

#[test]
fn atom_forms() {
    assert_eq!(p("P(A,2;2)").intersection_form(), SymmetricForm::from_i64([[2, 1], [1, 2]]));
    assert_eq!(p("Estar(3)").intersection_form(), SymmetricForm::from_i64([[0, 2], [2, -5]]));
    assert_eq!(p("SxS").intersection_form(), SymmetricForm::hyperbolic());
    assert_eq!(p("SxtS").intersection_form(), SymmetricForm::from_i64([[0, 1], [1, 1]]));
    assert!(p("D4").intersection_form().is_empty());
}

#[test]
fn euler_characteristics() {
    assert_eq!(p("P(A,4;2) + SxS").euler_characteristic(), 7);
    assert_eq!(p("D4").euler_characteristic(), 1);
    assert_eq!(p("P(D,7;2) + SxS").euler_characteristic(), 10);
    for n in 2..30usize {
        let a = FourManifoldExpr::atom(Atom::plumbing(Family::A, n - 1, 2).unwrap()).with(Atom::SxS, 1);
        assert_eq!(a.euler_characteristic(), n as i64 + 2);
        let d = FourManifoldExpr::atom(Atom::plumbing(Family::D, n + 2, 2).unwrap()).with(Atom::SxS, 1);
        assert_eq!(d.euler_characteristic(), n as i64 + 5);
    }
}

#[test]
fn boundaries() {
    let b = p("P(A,4;2)").boundary().unwrap();
    assert_eq!(b.kind, BoundaryKind::LensSpace { p: 5, q: 1 });
    let b = p("P(D,7;2) + SxS").boundary().unwrap();
    assert_eq!(b.kind, BoundaryKind::DicyclicQuotient { n: 5 });
    let b = p("E(-4)").boundary().unwrap();
    assert_eq!((b.kind, b.orientation), (BoundaryKind::LensSpace { p: 4, q: 1 }, Orientation::Standard));
    assert_eq!(p("E(4)").boundary().unwrap().orientation, Orientation::Reversed);
    assert_eq!(p("CP2 + SxS + D4").boundary().unwrap().kind, BoundaryKind::Sphere);
    assert!(p("E(0)").boundary().is_err());
    assert_eq!(p("Estar(4)").boundary().unwrap().kind, BoundaryKind::DicyclicQuotient { n: 4 });
}

#[test]
fn parse_errors_carry_positions() {
    let e = FourManifoldExpr::parse("SxS + Foo").unwrap_err();
    assert_eq!((e.line, e.column), (1, 7));
    assert!(FourManifoldExpr::parse("P(A,0;2)").is_err());
    assert!(FourManifoldExpr::parse("P(D,2;2)").is_err());
    assert!(FourManifoldExpr::parse("SxS +").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(e in expr()) {
        let text = e.to_string();
        let back = FourManifoldExpr::parse(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), text);
        let again = FourManifoldExpr::parse(&e.summary()).unwrap();
        prop_assert_eq!(again, e);
    }

    #[test]
    fn euler_characteristic_is_additive(a in expr(), b in expr()) {
        let s = a.natural_sum(&b);
        prop_assert_eq!(s.euler_characteristic() + 1, a.euler_characteristic() + b.euler_characteristic());
        let rank = s.intersection_form().size() as i64;
        prop_assert_eq!(s.euler_characteristic(), 1 + rank);
    }

    #[test]
    fn signature_and_determinant_are_compositional(e in expr()) {
        let f = e.intersection_form();
        prop_assert_eq!(e.signature(), f.signature());
        prop_assert_eq!(e.determinant(), f.determinant());
    }

    #[test]
    fn h1_order_matches_determinant(e in expr()) {
        let det = e.determinant();
        if let Ok(b) = e.boundary() {
            prop_assert!(!det.is_zero());
            prop_assert_eq!(b.h1_order(), det.abs());
        }
    }
}
