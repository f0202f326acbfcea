use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::Error;

fn q(n: i64) -> Scalar {
    Scalar::Rational(BigRational::from_integer(n.into()))
}

fn xy(text: &str) -> Poly {
    poly_in(&["x", "y"], text).unwrap()
}

const PERAZZO: &str = "x0*x3^2 + x1*x3*x4 + x2*x4^2";

#[test]
fn cancellation_and_difference_of_squares() {
    assert_eq!(xy("x + y") + xy("x - y"), xy("2*x"));
    assert_eq!(xy("x - y") * xy("x + y"), xy("x^2 - y^2"));
}

#[test]
fn monomial_power() {
    let vars = VarSet::new(["x0", "x3"]).unwrap();
    let p = parse("x0*x3^2", Some(&vars)).unwrap();
    assert_eq!(p.pow(2), parse("x0^2*x3^4", Some(&vars)).unwrap());
    assert_eq!(p.pow(0), Poly::one(&vars, Field::Rational));
}

#[test]
fn mismatched_var_sets_are_rejected() {
    let a = poly_in(&["x", "y"], "x").unwrap();
    let b = poly_in(&["y", "x"], "x").unwrap();
    assert_eq!(a.checked_add(&b), Err(Error::VarSetMismatch));
    assert_eq!(a.checked_mul(&b), Err(Error::VarSetMismatch));
}

#[test]
fn derivatives() {
    let p = poly_in(&["x0", "x3"], "x0*x3^2").unwrap();
    assert_eq!(p.partial_derivative("x3").unwrap(), poly_in(&["x0", "x3"], "2*x0*x3").unwrap());
    assert_eq!(xy("7").partial_derivative("x").unwrap(), xy("0"));
    assert_eq!(xy("x").partial_derivative("z"), Err(Error::UnknownVariable("z".into())));

    let names = ["u", "v", "x1", "y1"];
    let f = poly_in(&names, "u^2*x1^2 - 2*u*v*x1*y1 + v^2*y1^2").unwrap();
    let expected = poly_in(&names, "2*u^2*x1 - 2*u*v*y1").unwrap();
    assert_eq!(f.partial_derivative("x1").unwrap(), expected);
}

#[test]
fn substitution_builds_pencil_polynomials() {
    let target = VarSet::new(["u", "v", "x1", "x2", "x3", "y1", "y2", "y3"]).unwrap();
    let images: Vec<Poly> = (1..=3)
        .map(|i| parse(&format!("u*x{i} - v*y{i}"), Some(&target)).unwrap())
        .collect();
    let z = VarSet::new(["z1", "z2", "z3"]).unwrap();

    let g = parse("z1*z2", Some(&z)).unwrap();
    assert_eq!(g.compose(&images).unwrap(), &images[0] * &images[1]);

    let fermat = parse("z1^2 + z2^2 + z3^2", Some(&z)).unwrap();
    let f = fermat.compose(&images).unwrap();
    let expected = parse(
        "x1^2*u^2 - 2*x1*u*y1*v + y1^2*v^2 + x2^2*u^2 - 2*x2*u*y2*v + y2^2*v^2 \
         + x3^2*u^2 - 2*x3*u*y3*v + y3^2*v^2",
        Some(&target),
    )
    .unwrap();
    assert_eq!(f, expected);
    assert_eq!(f.is_homogeneous(), Some(4));

    let id = poly_in(&["z1"], "z1").unwrap();
    assert_eq!(id.compose(std::slice::from_ref(&id)).unwrap(), id);
}

#[test]
fn substitution_requires_every_binding() {
    let p = xy("x*y");
    let mut b = BTreeMap::new();
    b.insert("x".to_string(), xy("y"));
    assert_eq!(p.substitute(&b), Err(Error::UnboundVariable("y".into())));
    b.insert("y".to_string(), xy("x + 1"));
    assert_eq!(p.substitute(&b).unwrap(), xy("x*y + y"));
}

#[test]
fn evaluation() {
    assert_eq!(xy("x^2 - y^2").evaluate(&[q(3), q(2)]).unwrap(), q(5));
    assert_eq!(xy("x^2 + 4").evaluate(&[q(0), q(0)]).unwrap(), q(4));
    let perazzo = poly_in(&["x0", "x1", "x2", "x3", "x4"], PERAZZO).unwrap();
    let pt: Vec<Scalar> = [1, 0, 0, 1, 1].iter().map(|&v| q(v)).collect();
    assert_eq!(perazzo.evaluate(&pt).unwrap(), q(1));
    assert!(matches!(xy("x").evaluate(&[q(1)]), Err(Error::PointLength { .. })));
    let fp = Scalar::Mod(Fp::new(1, 7));
    assert!(matches!(xy("x").evaluate(&[fp.clone(), fp]), Err(Error::FieldMismatch(_))));
}

#[test]
fn homogeneity_and_euler() {
    assert_eq!(xy("x^2 + x*y").is_homogeneous(), Some(2));
    assert_eq!(xy("x^2 + x").is_homogeneous(), None);
    assert!(xy("x^3 - 5*x*y^2").euler_check().unwrap());
    assert_eq!(xy("x^2 + x").euler_check(), Err(Error::NotHomogeneous));
}

#[test]
fn pencil_euler_relation_on_the_uv_block() {
    let names = ["u", "v", "x1", "x2", "y1", "y2"];
    let w = poly_in(&names, "u*x1 - v*y1").unwrap();
    let f = &w * &w;
    // g = z1^2 has degree d = 2, so f has degree 4 and u f_u + v f_v = 2 f
    assert_eq!(f.euler_sum(&["u", "v"]).unwrap(), f.scale_i64(2));
}

#[test]
fn divisibility() {
    assert_eq!(divides(&xy("x - y"), &xy("x^2 - y^2")).unwrap(), Some(xy("x + y")));
    assert_eq!(divides(&xy("x"), &xy("y")).unwrap(), None);
    assert_eq!(divides(&xy("0"), &xy("y")), Err(Error::DivisionByZero));
    // leading term of the divisor does not divide: the remainder carries it
    let (qt, r) = xy("x*y + y^2").div_rem(&xy("x^2 + y")).unwrap();
    assert!(qt.is_zero());
    assert_eq!(r, xy("x*y + y^2"));
}

#[test]
fn reduction_mod_prime() {
    assert_eq!(
        xy("1/2*x").reduce_mod_prime(7).unwrap(),
        xy("4*x").reduce_mod_prime(7).unwrap()
    );
    let r = xy("x^2 - y^2").reduce_mod_prime(5).unwrap();
    assert_eq!(r.to_string(), "x^2 + 4*y^2");
    assert!(matches!(xy("1/5*x").reduce_mod_prime(5), Err(Error::BadPrime { .. })));
    assert!(matches!(xy("x").reduce_mod_prime(9), Err(Error::BadPrime { .. })));
}

#[test]
fn parse_and_format() {
    let vars = VarSet::new(["x0", "x1", "x2", "x3", "x4"]).unwrap();
    let p = parse(PERAZZO, Some(&vars)).unwrap();
    assert_eq!(p.num_terms(), 3);
    assert_eq!(p.is_homogeneous(), Some(3));
    assert_eq!(parse(&p.to_string(), Some(&vars)).unwrap(), p);

    assert!(parse("0", None).unwrap().is_zero());
    let u = parse("3/2*u^2", None).unwrap();
    assert_eq!(u.to_string(), "3/2*u^2");
    assert_eq!(parse(&u.to_string(), None).unwrap(), u);
    assert_eq!(parse("- x + 2*x*x", None).unwrap().to_string(), "2*x^2 - x");

    match parse("x +\n  * y", None) {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
        other => panic!("expected syntax error, got {other:?}"),
    }
    assert!(matches!(parse("x^0", None), Err(Error::Syntax { .. })));
    assert!(matches!(parse("x $ y", None), Err(Error::Syntax { .. })));
    assert_eq!(
        parse("w", Some(&vars)),
        Err(Error::UnknownVariable("w".into()))
    );
}

#[test]
fn json_form() {
    let p = xy("-3/2*x^2 + y");
    let s = text::to_json(&p);
    assert_eq!(
        s,
        r#"{"vars":["x","y"],"terms":[{"coef":"-3/2","exps":[2,0]},{"coef":"1","exps":[0,1]}]}"#
    );
    assert_eq!(text::from_json(&s).unwrap(), p);
    let m = p.reduce_mod_prime(7).unwrap();
    assert_eq!(text::from_json(&text::to_json(&m)).unwrap(), m);
    assert!(text::from_json(r#"{"vars":["x"],"terms":[{"coef":"1","exps":[1,2]}]}"#).is_err());
}

#[test]
fn var_set_validation() {
    assert!(VarSet::new(["x", "x"]).is_err());
    assert!(VarSet::new(["1x"]).is_err());
    assert!(VarSet::new(["_a1", "B"]).is_ok());
}

#[test]
fn modular_evaluator_matches_generic_evaluation() {
    let p = xy("3/4*x^3*y - 5*y^2 + 11");
    let prime = 1_000_003;
    let mp = ModPoly::new(&p, prime).unwrap();
    let red = p.reduce_mod_prime(prime).unwrap();
    for (a, b) in [(0u64, 0u64), (5, 9), (999_999, 123_456)] {
        let pt = [Scalar::Mod(Fp::new(a, prime)), Scalar::Mod(Fp::new(b, prime))];
        let expected = red.evaluate(&pt).unwrap().as_fp().unwrap().value();
        assert_eq!(mp.evaluate(&[a, b]).unwrap(), expected);
    }
}

fn small_poly() -> impl Strategy<Value = Poly> {
    let vars = VarSet::new(["a", "b", "c"]).unwrap();
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..6).prop_map(move |ts| {
        Poly::from_terms(
            &vars,
            Field::Rational,
            ts.into_iter()
                .map(|((i, j, k), c)| (Monomial::from_exponents(&[i, j, k]), q(c))),
        )
        .unwrap()
    })
}

fn homogeneous_poly() -> impl Strategy<Value = Poly> {
    let vars = VarSet::new(["a", "b", "c"]).unwrap();
    (1u32..4, prop::collection::vec((0u32..4, 0u32..4, -4i64..5), 1..6)).prop_map(move |(d, ts)| {
        Poly::from_terms(
            &vars,
            Field::Rational,
            ts.into_iter().filter(|(i, j, _)| i + j <= d).map(|(i, j, c)| {
                (Monomial::from_exponents(&[i, j, d - i - j]), q(c))
            }),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(p in small_poly(), r in small_poly(), s in small_poly()) {
        prop_assert_eq!(&(&p + &r) + &s, &p + &(&r + &s));
        prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
        prop_assert_eq!(&p * &r, &r * &p);
        prop_assert_eq!(&p + &r, &r + &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn euler_identity_holds(p in homogeneous_poly()) {
        prop_assert!(p.euler_check().unwrap());
    }

    #[test]
    fn substitution_respects_products(p in small_poly(), r in small_poly(), imgs in prop::collection::vec(small_poly(), 3)) {
        let lhs = (&p * &r).compose(&imgs).unwrap();
        let rhs = &p.compose(&imgs).unwrap() * &r.compose(&imgs).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_commutes_with_evaluation(p in small_poly(), pt in prop::collection::vec(-50i64..50, 3)) {
        let prime = 101;
        let over_q = p.evaluate(&pt.iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap();
        let red = p.reduce_mod_prime(prime).unwrap();
        let fp_pt: Vec<Scalar> = pt.iter().map(|&v| Scalar::Mod(Fp::from_i64(v, prime))).collect();
        prop_assert_eq!(over_q.reduce(prime).unwrap(), red.evaluate(&fp_pt).unwrap());
    }

    #[test]
    fn division_contract(p in small_poly(), f in small_poly()) {
        prop_assume!(!f.is_zero());
        let (qt, r) = p.div_rem(&f).unwrap();
        prop_assert_eq!(&(&qt * &f) + &r, p.clone());
        match divides(&f, &p).unwrap() {
            Some(qq) => prop_assert_eq!(&qq * &f, p.clone()),
            None => prop_assert!(!r.is_zero()),
        }
        let prod = &p * &f;
        prop_assert_eq!(divides(&f, &prod).unwrap(), Some(p));
    }

    #[test]
    fn text_round_trip(p in small_poly()) {
        prop_assert_eq!(parse(&p.to_string(), Some(p.vars())).unwrap(), p.clone());
        prop_assert_eq!(text::from_json(&text::to_json(&p)).unwrap(), p);
    }
}
