//! Values computed independently with a general-purpose computer algebra
//! system and frozen here.

use vhess_core::families::{self, matrices, FamilyId, FamilySpec};
use vhess_core::hessian::{profile, SampleConfig};
use vhess_core::linalg::{cofactor_determinant, determinant, pfaffian};
use vhess_core::ring::{poly_in, VarSet};

fn ranks(id: FamilyId) -> (usize, usize, i64) {
    let inst = families::build(&FamilySpec::default_for(id)).unwrap();
    let p = profile(&inst.polynomial, &SampleConfig::default()).unwrap();
    (p.generic_rank, p.rank_mod_f, p.codim_dual_in_polar)
}

#[test]
fn slice_ranks_match_the_oracle() {
    assert_eq!(ranks(FamilyId::DetSlice), (7, 6, 2));
    assert_eq!(ranks(FamilyId::SymSlice), (4, 4, 1));
    assert_eq!(ranks(FamilyId::PfSlice), (13, 10, 4));
}

#[test]
fn full_determinant_ranks_match_the_oracle() {
    let (g, r, _) = ranks(FamilyId::GenericDet);
    assert_eq!((g, r), (9, 6));
}

#[test]
fn fermat_pencil_ranks_match_the_oracle() {
    let p = profile(&families::p7_fermat().polynomial, &SampleConfig::default()).unwrap();
    assert_eq!((p.generic_rank, p.rank_mod_f), (6, 5));
    let p = profile(&families::p5_example().polynomial, &SampleConfig::default()).unwrap();
    assert_eq!(p.generic_rank, 5);
}

#[test]
fn elimination_and_expansion_agree_on_generic_matrices() {
    for size in 2..=4 {
        let vars = VarSet::new(matrices::generic_names(size)).unwrap();
        let m = matrices::generic_matrix(size, &vars);
        let det = determinant(&m).unwrap();
        assert_eq!(det, cofactor_determinant(&m).unwrap());
        let terms: usize = (1..=size).product();
        assert_eq!(det.terms().count(), terms);
    }
}

#[test]
fn pfaffian_of_the_generic_four_by_four() {
    let vars = VarSet::new(matrices::skew_names(4)).unwrap();
    let pf = pfaffian(&matrices::skew_matrix(4, &vars)).unwrap();
    let names: Vec<&str> = vars.names().iter().map(String::as_str).collect();
    let want = poly_in(&names, "a0_1*a2_3 - a0_2*a1_3 + a0_3*a1_2").unwrap();
    assert_eq!(pf, want);
}

#[test]
fn scroll_dual_cubic_matches_the_closed_form() {
    let inst = families::scroll_dual(1, 2).unwrap();
    let f = &inst.polynomial;
    let names: Vec<&str> = f.vars().names().iter().map(String::as_str).collect();
    assert_eq!(f, &poly_in(&names, "w0^2*z2 - w0*w1*z1 + w1^2*z0").unwrap());
}
