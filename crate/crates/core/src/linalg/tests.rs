use proptest::prelude::*;

use super::*;
use crate::ring::{parse, poly_in, Field, Poly, Scalar, VarSet};
use crate::Error;

/// `n x n` matrix of independent variables `x{i}_{j}`.
fn generic(n: usize) -> PolyMatrix {
    let names: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("x{i}_{j}")))
        .collect();
    let vars = VarSet::new(names).unwrap();
    PolyMatrix::from_fn(n, n, |i, j| {
        Poly::var(&vars, Field::Rational, &format!("x{i}_{j}")).unwrap()
    })
    .unwrap()
}

/// Generic skew matrix in the variables `a{i}_{j}`, `i < j`.
fn generic_skew(n: usize) -> PolyMatrix {
    let names: Vec<String> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| format!("a{i}_{j}")))
        .collect();
    let vars = VarSet::new(names).unwrap();
    let v = |i: usize, j: usize| Poly::var(&vars, Field::Rational, &format!("a{i}_{j}")).unwrap();
    PolyMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => v(i, j),
        std::cmp::Ordering::Greater => -v(j, i),
        std::cmp::Ordering::Equal => Poly::zero(&vars, Field::Rational),
    })
    .unwrap()
    .with_structure(Structure::Skew)
    .unwrap()
}

fn matrix_in(names: &[&str], rows: &[&[&str]]) -> PolyMatrix {
    let entries: Vec<Poly> = rows
        .iter()
        .flat_map(|r| r.iter().map(|e| poly_in(names, e).unwrap()))
        .collect();
    PolyMatrix::new(rows.len(), rows[0].len(), entries).unwrap()
}

fn hessian_of(f: &Poly) -> PolyMatrix {
    let names: Vec<&str> = f.vars().names().iter().map(String::as_str).collect();
    let grad: Vec<Poly> = names.iter().map(|v| f.partial_derivative(v).unwrap()).collect();
    jacobian(&grad, &names).unwrap()
}

fn perazzo() -> Poly {
    poly_in(&["x0", "x1", "x2", "x3", "x4"], "x0*x3^2 + x1*x3*x4 + x2*x4^2").unwrap()
}

const ABCD: [&str; 4] = ["a", "b", "c", "d"];

#[test]
fn generic_two_by_two_determinant() {
    let m = matrix_in(&ABCD, &[&["a", "b"], &["c", "d"]]);
    assert_eq!(determinant(&m).unwrap(), poly_in(&ABCD, "a*d - b*c").unwrap());
}

#[test]
fn bareiss_agrees_with_cofactor_expansion_on_generic_three_by_three() {
    let m = generic(3);
    let d = determinant(&m).unwrap();
    assert_eq!(d, cofactor_determinant(&m).unwrap());
    assert_eq!(d.num_terms(), 6);
}

#[test]
fn determinant_needs_a_square_matrix() {
    let m = matrix_in(&ABCD, &[&["a", "b"]]);
    assert!(matches!(determinant(&m), Err(Error::Shape(_))));
    assert!(matches!(adjugate(&m), Err(Error::Shape(_))));
}

#[test]
fn zero_pivots_are_repaired_by_row_swaps() {
    let m = matrix_in(&ABCD, &[&["0", "a", "b"], &["c", "0", "d"], &["a", "b", "0"]]);
    assert_eq!(determinant(&m).unwrap(), cofactor_determinant(&m).unwrap());
    let singular = matrix_in(&ABCD, &[&["0", "a"], &["0", "b"]]);
    assert!(determinant(&singular).unwrap().is_zero());
}

#[test]
fn perazzo_hessian_determinant_vanishes() {
    let h = hessian_of(&perazzo());
    assert_eq!((h.rows(), h.cols()), (5, 5));
    assert!(determinant(&h).unwrap().is_zero());
    assert!(cofactor_determinant(&h).unwrap().is_zero());
}

#[test]
fn minors() {
    let m = generic(3);
    assert_eq!(minor(&m, &[1], &[2]).unwrap(), m.get(1, 2).clone());
    assert!(matches!(minor(&m, &[0, 1], &[0]), Err(Error::Shape(_))));
    assert!(matches!(minor(&m, &[0, 3], &[0, 1]), Err(Error::Shape(_))));
    assert!(matches!(minor(&m, &[1, 0], &[0, 1]), Err(Error::Shape(_))));
    assert_eq!(all_minors(&m, 2).unwrap().len(), 9);
    assert_eq!(combinations(4, 2).len(), 6);
}

#[test]
fn maximal_minors_of_a_wide_block_matrix() {
    // a 2 x 4 matrix [A' | B'] with one B' column has 3 minors containing it
    let names = ["a0", "a1", "a2", "b0", "c0", "c1", "c2", "d0"];
    let m = matrix_in(&names, &[&["a0", "a1", "a2", "b0"], &["c0", "c1", "c2", "d0"]]);
    let with_b: Vec<_> = all_minors(&m, 2)
        .unwrap()
        .into_iter()
        .filter(|mi| mi.cols.contains(&3))
        .collect();
    assert_eq!(with_b.len(), 3);
    assert_eq!(with_b[0].value, poly_in(&names, "a0*d0 - b0*c0").unwrap());
}

#[test]
fn minors_of_a_rank_deficient_matrix_vanish() {
    let names = ["x"];
    let m = matrix_in(&names, &[&["1", "2", "3"], &["4", "5", "6"], &["5", "7", "9"]]);
    assert!(all_minors(&m, 3).unwrap().iter().all(|mi| mi.value.is_zero()));
    assert!(all_minors(&m, 2).unwrap().iter().any(|mi| !mi.value.is_zero()));
}

#[test]
fn adjugate_two_by_two() {
    let m = matrix_in(&ABCD, &[&["a", "b"], &["c", "d"]]);
    let expected = matrix_in(&ABCD, &[&["d", "-b"], &["-c", "a"]]);
    assert_eq!(adjugate(&m).unwrap(), expected);
}

#[test]
fn adjugate_identities_for_generic_matrices() {
    for n in 2..=4 {
        let x = generic(n);
        let det = determinant(&x).unwrap();
        let adj = adjugate(&x).unwrap();
        let scaled = PolyMatrix::identity(n, x.vars(), Field::Rational).unwrap().scale(&det);
        assert_eq!(x.checked_mul(&adj).unwrap(), scaled, "n = {n}");
        assert_eq!(adj.checked_mul(&x).unwrap(), scaled, "n = {n}");
    }
    // (X^#)^# = det(X)^(n-2) X; for a 3 x 3 matrix that is det(X) X
    let x = generic(3);
    let det = determinant(&x).unwrap();
    let twice = adjugate(&adjugate(&x).unwrap()).unwrap();
    assert_eq!(twice, x.scale(&det));
}

#[test]
fn adjugate_of_a_singular_matrix() {
    let names = ["x"];
    let m = matrix_in(&names, &[&["x", "x"], &["x", "x"]]);
    let adj = adjugate(&m).unwrap();
    assert_eq!(adj, matrix_in(&names, &[&["x", "-x"], &["-x", "x"]]));
    let zero = m.checked_mul(&adj).unwrap();
    assert!(zero.entries().iter().all(Poly::is_zero));
}

#[test]
fn pfaffian_normalization_and_four_by_four() {
    let a = generic_skew(2);
    assert_eq!(pfaffian(&a).unwrap(), Poly::var(a.vars(), Field::Rational, "a0_1").unwrap());

    let a = generic_skew(4);
    let expected = parse("a0_1*a2_3 - a0_2*a1_3 + a0_3*a1_2", Some(a.vars())).unwrap();
    let pf = pfaffian(&a).unwrap();
    assert_eq!(pf, expected);
    assert_eq!(pf.pow(2), determinant(&a).unwrap());
}

#[test]
fn pfaffian_squares_to_the_determinant() {
    for n in [2, 4, 6] {
        let a = generic_skew(n);
        let pf = pfaffian(&a).unwrap();
        assert_eq!(pf.pow(2), determinant(&a).unwrap(), "n = {n}");
    }
    assert_eq!(pfaffian(&generic_skew(6)).unwrap().num_terms(), 15);
}

#[test]
fn pfaffian_rejects_bad_input() {
    assert!(matches!(pfaffian(&generic_skew(3)), Err(Error::Shape(_))));
    assert!(matches!(pfaffian(&generic(2)), Err(Error::Shape(_))));
    let diag = matrix_in(&["x"], &[&["x", "0"], &["0", "-x"]]);
    assert!(matches!(pfaffian(&diag), Err(Error::Shape(_))));
}

#[test]
fn scalar_pfaffian_matches_the_polynomial_one() {
    let a = generic_skew(6);
    let pf = pfaffian(&a).unwrap();
    let p = 1_000_003;
    let point: Vec<Scalar> = (0..a.vars().len())
        .map(|i| Scalar::Mod(crate::Fp::from_i64(3 * i as i64 - 7, p)))
        .collect();
    let red = a.map(|e| e.reduce_mod_prime(p).unwrap());
    let at = red.evaluate(&point).unwrap();
    let expected = pf.reduce_mod_prime(p).unwrap().evaluate(&point).unwrap();
    assert_eq!(pfaffian_scalar(&at).unwrap(), expected);
}

#[test]
fn structure_flags_are_validated() {
    let sym = matrix_in(&ABCD, &[&["a", "b"], &["b", "c"]]);
    assert!(sym.clone().with_structure(Structure::Symmetric).is_ok());
    assert!(sym.with_structure(Structure::Skew).is_err());
    let m = matrix_in(&ABCD, &[&["a", "b"], &["c", "d"]]);
    assert!(m.with_structure(Structure::Symmetric).is_err());
}

#[test]
fn resultant_of_two_linear_forms() {
    let names = ["s", "t"];
    let f = poly_in(&names, "s + t").unwrap();
    let g = poly_in(&names, "s - t").unwrap();
    let res = binary_resultant(&f, &g, "s", "t").unwrap();
    assert!(res.vars().is_empty());
    assert_eq!(res.constant_term(), Field::Rational.from_i64(-2));
}

fn generic_binary(prefix: &str, deg: usize) -> String {
    (0..=deg)
        .map(|i| {
            let mut parts = vec![format!("{prefix}{i}")];
            if deg > i {
                parts.push(format!("s^{}", deg - i));
            }
            if i > 0 {
                parts.push(format!("t^{i}"));
            }
            parts.join("*")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn binary_ring(a: usize, b: usize) -> Vec<String> {
    let mut names = vec!["s".to_string(), "t".to_string()];
    names.extend((0..=a).map(|i| format!("w{i}")));
    names.extend((0..=b).map(|i| format!("z{i}")));
    names
}

fn form(names: &[String], text: &str) -> Poly {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    poly_in(&refs, text).unwrap()
}

#[test]
fn generic_resultant_degrees() {
    let names = binary_ring(2, 3);
    let f = form(&names, &generic_binary("w", 2));
    let g = form(&names, &generic_binary("z", 3));
    let syl = sylvester_matrix(&f, &g, "s", "t").unwrap();
    assert_eq!((syl.rows(), syl.cols()), (5, 5));
    let res = determinant(&syl).unwrap();
    assert_eq!(res.is_homogeneous(), Some(5));
    assert_eq!(res.degree_in(&["w0", "w1", "w2"]).unwrap(), 3);
    assert_eq!(res.degree_in(&["z0", "z1", "z2", "z3"]).unwrap(), 2);
    // every term has exactly that bidegree
    let w: Vec<usize> = (0..3).map(|i| res.vars().require(&format!("w{i}")).unwrap()).collect();
    for (m, _) in res.terms() {
        assert_eq!(w.iter().map(|&i| m.exponent(i)).sum::<u32>(), 3);
    }
}

#[test]
fn resultant_vanishes_on_a_shared_factor() {
    let names = ["s", "t", "p", "q"];
    let f = poly_in(&names, "s^2 - t^2 + p*s*t - p*t^2").unwrap(); // (s - t)(s + t + p t)
    let g = poly_in(&names, "q*s - q*t").unwrap();
    assert!(binary_resultant(&f, &g, "s", "t").unwrap().is_zero());
}

#[test]
fn resultant_input_errors() {
    let names = ["s", "t", "u"];
    let f = poly_in(&names, "s^2 + t").unwrap();
    let g = poly_in(&names, "s - t").unwrap();
    assert_eq!(binary_resultant(&f, &g, "s", "t"), Err(Error::NotHomogeneous));
    assert!(matches!(
        binary_resultant(&g, &g, "s", "w"),
        Err(Error::UnknownVariable(_))
    ));
    let other = poly_in(&["s", "t"], "s").unwrap();
    assert_eq!(binary_resultant(&g, &other, "s", "t"), Err(Error::VarSetMismatch));
}

#[test]
fn quadratic_discriminant() {
    let names = ["s", "t", "c0", "c1", "c2"];
    let f = poly_in(&names, "c0*s^2 + c1*s*t + c2*t^2").unwrap();
    let disc = binary_discriminant(&f, "s", "t").unwrap();
    assert_eq!(disc, poly_in(&["c0", "c1", "c2"], "4*c0*c2 - c1^2").unwrap());

    let double = poly_in(&["s", "t"], "s^2 - 2*s*t + t^2").unwrap();
    assert!(binary_discriminant(&double, "s", "t").unwrap().is_zero());
    let linear = poly_in(&["s", "t"], "s + t").unwrap();
    assert!(matches!(binary_discriminant(&linear, "s", "t"), Err(Error::Invalid(_))));
}

#[test]
fn discriminant_degree_in_coefficients() {
    for d in 2..=4 {
        let names = binary_ring(d, 0);
        let f = form(&names, &generic_binary("w", d));
        let disc = binary_discriminant(&f, "s", "t").unwrap();
        assert_eq!(disc.is_homogeneous(), Some(2 * (d as u32 - 1)), "d = {d}");
    }
}

#[test]
fn jacobians() {
    let names = ["x", "y"];
    let x = poly_in(&names, "x").unwrap();
    let y = poly_in(&names, "y").unwrap();
    let id = jacobian(&[x.clone(), y.clone()], &names).unwrap();
    assert_eq!(id, PolyMatrix::identity(2, x.vars(), Field::Rational).unwrap());
    let j = jacobian(&[&x * &x, &x * &y], &names).unwrap();
    assert_eq!(j, matrix_in(&names, &[&["2*x", "0"], &["y", "x"]]));
}

#[test]
fn jacobian_of_the_gradient_is_the_hessian_matrix() {
    let f = perazzo();
    let h = hessian_of(&f);
    for (i, vi) in f.vars().names().iter().enumerate() {
        for (j, vj) in f.vars().names().iter().enumerate() {
            let direct = f.partial_derivative(vi).unwrap().partial_derivative(vj).unwrap();
            assert_eq!(h.get(i, j), &direct);
        }
    }
}

#[test]
fn scalar_ranks() {
    let p = Field::prime(101).unwrap();
    assert_eq!(scalar_rank(&ScalarMatrix::identity(4, p)), 4);
    assert_eq!(scalar_rank(&ScalarMatrix::from_i64(3, 2, p, &[0; 6]).unwrap()), 0);
    let m = ScalarMatrix::from_i64(2, 2, p, &[1, 2, 2, 4]).unwrap();
    assert_eq!(scalar_rank(&m), 1);
    // rank over Q and over F_p can differ
    let m = ScalarMatrix::from_i64(2, 2, Field::Rational, &[1, 2, 3, 107]).unwrap();
    assert_eq!(m.rank(), 2);
    let m = ScalarMatrix::from_i64(2, 2, p, &[1, 2, 3, 107]).unwrap();
    assert_eq!(m.rank(), 1);
}

#[test]
fn perazzo_hessian_has_rank_four_at_a_random_point() {
    let h = hessian_of(&perazzo());
    // exact oracle: the only 5 x 5 minor vanishes, some 4 x 4 minor does not
    assert!(determinant(&h).unwrap().is_zero());
    assert!(all_minors(&h, 4).unwrap().iter().any(|m| !m.value.is_zero()));
    let p = 2_305_843_009_213_693_951;
    let compiled = h.compile_mod(p).unwrap();
    assert_eq!(compiled.rank_at(&[12345, 678, 91011, 1213, 1415]).unwrap(), 4);
    let evaluated = compiled.evaluate(&[12345, 678, 91011, 1213, 1415]).unwrap();
    assert_eq!(scalar_rank(&evaluated), 4);
}

#[test]
fn scalar_kernel_and_determinant() {
    let f = Field::Rational;
    let m = ScalarMatrix::from_i64(2, 3, f, &[1, 2, 3, 2, 4, 6]).unwrap();
    let ker = m.kernel();
    assert_eq!(ker.len(), 2);
    for v in &ker {
        let col = ScalarMatrix::new(3, 1, f, v.clone()).unwrap();
        let prod = m.checked_mul(&col).unwrap();
        assert!((0..2).all(|i| prod.get(i, 0).is_zero()));
    }
    let sq = ScalarMatrix::from_i64(3, 3, f, &[0, 1, 2, 1, 0, 3, 4, -3, 8]).unwrap();
    assert_eq!(sq.determinant().unwrap(), f.from_i64(-2));
}

#[test]
fn matrix_json_round_trip() {
    let m = matrix_in(&ABCD, &[&["a", "-b"], &["c^2", "1/2*d"]]);
    let j = MatrixJson::from(&m);
    let text = serde_json::to_string(&j).unwrap();
    assert_eq!(
        text,
        r#"{"rows":2,"cols":2,"vars":["a","b","c","d"],"entries":[["a","-b"],["c^2","1/2*d"]]}"#
    );
    let back: MatrixJson = serde_json::from_str(&text).unwrap();
    assert_eq!(PolyMatrix::try_from(&back).unwrap(), m);
}

fn small_matrix() -> impl Strategy<Value = PolyMatrix> {
    let names = ["x", "y", "z"];
    (1usize..=4).prop_flat_map(move |n| {
        let entry = prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2, 0u32..=2), 0..3);
        prop::collection::vec(entry, n * n).prop_map(move |cells| {
            let vars = VarSet::new(names).unwrap();
            let entries = cells
                .into_iter()
                .map(|terms| {
                    let mut p = Poly::zero(&vars, Field::Rational);
                    for (c, a, b, d) in terms {
                        let b = b.min(2 - a);
                        let d = d.min(2 - a - b);
                        let mono = crate::ring::Monomial::from_exponents(&[a, b, d]);
                        let term = Poly::from_terms(&vars, Field::Rational, [(mono, Field::Rational.from_i64(c))]).unwrap();
                        p = &p + &term;
                    }
                    p
                })
                .collect();
            PolyMatrix::new(n, n, entries).unwrap()
        })
    })
}

fn scalar_square(n: usize) -> impl Strategy<Value = ScalarMatrix> {
    prop::collection::vec(-9i64..=9, n * n)
        .prop_map(move |v| ScalarMatrix::from_i64(n, n, Field::Rational, &v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in small_matrix()) {
        prop_assert!(m.max_entry_degree() <= 2);
        prop_assert_eq!(determinant(&m).unwrap(), cofactor_determinant(&m).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(
        (a, b) in (1usize..=4).prop_flat_map(|n| (scalar_square(n), scalar_square(n)))
    ) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
    }

    #[test]
    fn adjugate_identity_on_random_matrices(m in small_matrix()) {
        let n = m.rows();
        let det = determinant(&m).unwrap();
        let scaled = PolyMatrix::identity(n, m.vars(), Field::Rational).unwrap().scale(&det);
        let adj = adjugate(&m).unwrap();
        prop_assert_eq!(m.checked_mul(&adj).unwrap(), scaled.clone());
        prop_assert_eq!(adj.checked_mul(&m).unwrap(), scaled);
    }

    #[test]
    fn resultant_detects_common_factors(
        r in -5i64..=5, l in prop::collection::vec(-4i64..=4, 2), m in prop::collection::vec(-4i64..=4, 3)
    ) {
        let vars = VarSet::new(["s", "t"]).unwrap();
        let s_ = Poly::var(&vars, Field::Rational, "s").unwrap();
        let t_ = Poly::var(&vars, Field::Rational, "t").unwrap();
        let ll = &s_.scale_i64(l[0]) + &t_.scale_i64(l[1]);
        let mm = &(&(&s_ * &s_).scale_i64(m[0]) + &(&s_ * &t_).scale_i64(m[1])) + &(&t_ * &t_).scale_i64(m[2]);
        let shared = &s_ - &t_.scale_i64(r);
        prop_assume!(!ll.is_zero() && !mm.is_zero());
        let f = &shared * &ll;
        let g = &shared * &mm;
        prop_assert!(binary_resultant(&f, &g, "s", "t").unwrap().is_zero());
    }

    #[test]
    fn resultant_of_coprime_forms_is_nonzero(
        r1 in -6i64..=6, r2 in -6i64..=6, r3 in -6i64..=6
    ) {
        prop_assume!(r1 != r3 && r2 != r3);
        let vars = VarSet::new(["s", "t"]).unwrap();
        let s_ = Poly::var(&vars, Field::Rational, "s").unwrap();
        let t_ = Poly::var(&vars, Field::Rational, "t").unwrap();
        let f = &(&s_ - &t_.scale_i64(r1)) * &(&s_ - &t_.scale_i64(r2));
        let g = &s_ - &t_.scale_i64(r3);
        let res = binary_resultant(&f, &g, "s", "t").unwrap();
        prop_assert!(!res.is_zero());
        // Res of (s - a t)(s - b t) with (s - c t) is (c - a)(c - b) up to sign
        let expected = (r3 - r1) * (r3 - r2);
        let got = res.constant_term();
        prop_assert!(got == Field::Rational.from_i64(expected) || got == Field::Rational.from_i64(-expected));
    }
}
