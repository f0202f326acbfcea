use super::*;
use crate::ring::{format, parse};

fn all_defaults() -> Vec<FamilyInstance> {
    FamilyId::ALL
        .iter()
        .map(|&id| build(&FamilySpec::default_for(id)).unwrap())
        .collect()
}

#[test]
fn every_default_instance_is_homogeneous_of_predicted_degree() {
    for inst in all_defaults() {
        assert_eq!(
            inst.polynomial.is_homogeneous(),
            Some(inst.degree),
            "{}",
            inst.spec.id
        );
        assert!(inst.expected.is_consistent(), "{}", inst.spec.id);
        assert!(inst.reference.is_consistent(), "{}", inst.spec.id);
    }
}

#[test]
fn every_default_instance_round_trips_through_text() {
    for inst in all_defaults() {
        let f = &inst.polynomial;
        let back = parse(&format(f), Some(f.vars())).unwrap();
        assert_eq!(&back, f, "{}", inst.spec.id);
    }
}

#[test]
fn instance_json_round_trip() {
    for inst in all_defaults() {
        let back: FamilyInstance = serde_json::from_str(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
    }
}

#[test]
fn family_ids_parse_from_their_names() {
    for id in FamilyId::ALL {
        assert_eq!(id.as_str().parse::<FamilyId>().unwrap(), id);
    }
    assert!("perazo".parse::<FamilyId>().is_err());
}

#[test]
fn catalog_lists_every_family_once() {
    let cat = catalog();
    let ids: Vec<FamilyId> = cat.iter().map(|e| e.id).collect();
    assert_eq!(ids, FamilyId::ALL.to_vec());
}

#[test]
fn perazzo_cubic_text() {
    let inst = perazzo();
    let expected = parse("x0*x3^2 + x1*x3*x4 + x2*x4^2", Some(inst.polynomial.vars())).unwrap();
    assert_eq!(inst.polynomial, expected);
    assert_eq!(inst.n_vars(), 5);
}

#[test]
fn perazzo_ext_adds_cubes() {
    let inst = perazzo_ext(6).unwrap();
    let vars = inst.polynomial.vars().clone();
    let expected = parse("x0*x3^2 + x1*x3*x4 + x2*x4^2 + x5^3 + x6^3", Some(&vars)).unwrap();
    assert_eq!(inst.polynomial, expected);
    assert!(perazzo_ext(4).is_err());
}

#[test]
fn inner_variables_are_ordered_numerically() {
    let g = parse_inner("z10*z2 - z1^2 + z0^2").unwrap();
    assert_eq!(g.vars().names(), ["z0", "z1", "z2", "z10"]);
}

#[test]
fn pencil_over_fermat_conic_is_p7_example() {
    let g = parse_inner("z1^2 + z2^2 + z3^2").unwrap();
    let inst = pencil(&g).unwrap();
    assert_eq!(inst.polynomial, p7_fermat().polynomial);
    assert_eq!(inst.n_vars(), 8);
    assert_eq!(inst.degree, 4);
    assert_eq!(inst.gradient_relations.len(), 3);
    assert_eq!(inst.expected.generic_rank, Some(6));
}

#[test]
fn pencil_rejects_a_cone() {
    let g = parse_inner("z1^2 + 2*z1*z2 + z2^2 + z3^2").unwrap();
    assert!(matches!(pencil(&g), Err(Error::Cone(_))));
}

#[test]
fn pencil_rejects_one_variable() {
    let g = parse_inner("z1^2").unwrap();
    assert!(matches!(pencil(&g), Err(Error::Invalid(_))));
}

#[test]
fn pencil_rejects_linear_and_inhomogeneous_forms() {
    assert!(pencil(&parse_inner("z1 + z2").unwrap()).is_err());
    assert!(matches!(
        pencil(&parse_inner("z1^3 + z2^2").unwrap()),
        Err(Error::NotHomogeneous)
    ));
}

#[test]
fn cubic_pencil_has_degree_six() {
    let g = parse_inner("z1^3 + z2^3 + z3^3").unwrap();
    let inst = pencil(&g).unwrap();
    assert_eq!(inst.degree, 6);
    assert_eq!(inst.n_vars(), 8);
}

#[test]
fn dual_cayley_with_r_one_is_the_pencil_after_renaming() {
    let g = parse_inner("z0^2 + z1^2 + z2^2").unwrap();
    let dc = dual_cayley(&g, 1, 3).unwrap();
    assert!(dc.has_check(checks::PENCIL_REDUCTION));
    let renamed_g = parse_inner("z1^2 + z2^2 + z3^2").unwrap();
    let target = pencil(&renamed_g).unwrap().polynomial;
    let moved = dc
        .polynomial
        .rename(target.vars(), dual_cayley_to_pencil_name)
        .unwrap();
    assert_eq!(moved, target);
}

#[test]
fn dual_cayley_r_two_shape() {
    let inst = build(&FamilySpec::default_for(FamilyId::DualCayley)).unwrap();
    assert_eq!(inst.n_vars(), 15);
    assert_eq!(inst.degree, 6);
    // 3 row pairs times 3 column pairs
    assert_eq!(inst.gradient_relations.len(), 9);
}

#[test]
fn dual_cayley_rejects_wrong_arity() {
    let g = parse_inner("z0*z2 - z1^2").unwrap();
    assert!(matches!(dual_cayley(&g, 2, 5), Err(Error::Invalid(_))));
}

#[test]
fn dual_cayley_minors_for_r_one() {
    let m = dual_cayley_minors(1, 2).unwrap();
    let vars = dual_cayley_vars(1, 2);
    let b0 = parse("a0_0*b1_1 - a1_0*b0_1", Some(&vars)).unwrap();
    assert_eq!(m[0], b0);
}

#[test]
fn scroll_dual_one_two_matches_closed_form() {
    let res = scroll_dual(1, 2).unwrap().polynomial;
    let closed = scroll_dual_closed(2).unwrap().polynomial;
    assert_eq!(res.vars(), closed.vars());
    assert_eq!(res, closed);
}

#[test]
fn scroll_dual_one_three_matches_closed_form_up_to_sign() {
    let res = scroll_dual(1, 3).unwrap().polynomial;
    let closed = scroll_dual_closed(3).unwrap().polynomial;
    assert!(res == closed || res == -closed);
}

#[test]
fn scroll_dual_degrees() {
    let f = scroll_dual(2, 3).unwrap().polynomial;
    assert_eq!(f.is_homogeneous(), Some(5));
    assert_eq!(f.vars().len(), 7);
    assert_eq!(f.degree_in(&["w0", "w1", "w2"]).unwrap(), 3);
    assert_eq!(f.degree_in(&["z0", "z1", "z2", "z3"]).unwrap(), 2);
}

#[test]
fn scroll_dual_rejects_a_above_b() {
    assert!(scroll_dual(3, 2).is_err());
    assert!(scroll_dual(0, 2).is_err());
    assert!(scroll_dual_closed(0).is_err());
}

#[test]
fn segre_constants() {
    assert_eq!(segre_alpha(2), -2);
    assert_eq!(segre_alpha(3), -3);
    assert_eq!(segre_beta(2), -16);
    assert_eq!(segre_beta(3), -192);
    assert_eq!(segre_gamma(2), 2);
    assert_eq!(segre_gamma(3), -3);
}

#[test]
fn matrix_family_sizes() {
    assert_eq!(generic_det(2).unwrap().n_vars(), 9);
    assert_eq!(symmetric_det(2).unwrap().n_vars(), 6);
    assert_eq!(pfaffian_form(2).unwrap().n_vars(), 15);
    let ds = det_slice(2).unwrap();
    assert_eq!((ds.n_vars(), ds.degree), (8, 3));
    let ss = sym_slice(2).unwrap();
    assert_eq!((ss.n_vars(), ss.degree), (5, 3));
    let ps = pf_slice(2).unwrap();
    assert_eq!((ps.n_vars(), ps.degree), (14, 3));
}

#[test]
fn slice_codims_follow_closed_formulas() {
    assert_eq!(det_slice(3).unwrap().expected.codim_dual_in_polar, Some(7));
    assert_eq!(sym_slice(3).unwrap().expected.codim_dual_in_polar, Some(4));
    assert_eq!(pf_slice(2).unwrap().expected.codim_dual_in_polar, Some(4));
    assert_eq!(det_slice(2).unwrap().reference.codim_dual_in_polar, Some(2));
    assert_eq!(sym_slice(2).unwrap().reference.codim_dual_in_polar, Some(1));
}

#[test]
fn generic_det_expectations() {
    let inst = generic_det(2).unwrap();
    assert_eq!(inst.expected.codim_dual_in_polar, Some(4));
    let prop = inst.proportionality.unwrap();
    assert_eq!((prop.exponent, prop.constant), (3, Some(-2)));
}

#[test]
fn lagrange_identity_exact() {
    for n in 1..=3 {
        let inst = cauchy_schwartz(n).unwrap();
        assert_eq!(inst.polynomial, plucker_square_sum(n), "n = {n}");
        assert_eq!(inst.n_vars(), 2 * n + 4);
    }
}

#[test]
fn cauchy_schwartz_exponent_only_for_n_one() {
    assert!(cauchy_schwartz(1).unwrap().proportionality.is_some());
    assert!(cauchy_schwartz(2).unwrap().proportionality.is_none());
}

#[test]
fn build_reports_missing_parameters() {
    let err = build(&FamilySpec::new(FamilyId::GenericDet)).unwrap_err();
    assert!(err.to_string().contains("`n`"));
    let err = build(&FamilySpec::new(FamilyId::Pencil)).unwrap_err();
    assert!(err.to_string().contains("`g`"));
}

#[test]
fn build_validates_ranges() {
    let mut spec = FamilySpec::default_for(FamilyId::GenericDet);
    spec.params.n = Some(1);
    assert!(build(&spec).is_err());
    let mut spec = FamilySpec::default_for(FamilyId::ScrollDual);
    spec.params.a = Some(3);
    assert!(build(&spec).is_err());
}
