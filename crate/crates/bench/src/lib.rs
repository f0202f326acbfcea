//! Fixtures shared by the benchmarks.

use vhess_core::families::{self, matrices, FamilyId, FamilyInstance, FamilySpec};
use vhess_core::{PolyMatrix, VarSet};

/// Generic `size x size` matrix of variables.
pub fn generic_matrix(size: usize) -> PolyMatrix {
    let vars = VarSet::new(matrices::generic_names(size)).expect("distinct names");
    matrices::generic_matrix(size, &vars)
}

/// Generic skew-symmetric matrix of variables.
pub fn skew_matrix(size: usize) -> PolyMatrix {
    let vars = VarSet::new(matrices::skew_names(size)).expect("distinct names");
    matrices::skew_matrix(size, &vars)
}

/// Family instance with default parameters.
pub fn instance(id: FamilyId) -> FamilyInstance {
    families::build(&FamilySpec::default_for(id)).expect("defaults are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(generic_matrix(3).rows(), 3);
        assert_eq!(skew_matrix(4).cols(), 4);
        assert_eq!(instance(FamilyId::Perazzo).degree, 3);
    }
}
