//! Random invertible linear changes of coordinates with small integer
//! coefficients.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ScalarMatrix;
use crate::ring::{Field, Poly};

/// `x_i -> sum_j c_ij x_j`, stored row by row as `(j, c_ij)`.
///
/// Random changes are a permuted upper-triangular matrix with nonzero
/// diagonal, hence always invertible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearChange {
    rows: Vec<Vec<(usize, i64)>>,
}

impl LinearChange {
    pub fn identity(n: usize) -> Self {
        LinearChange {
            rows: (0..n).map(|i| vec![(i, 1)]).collect(),
        }
    }

    /// A random change in `n` variables. Each image has a diagonal entry in
    /// `[-3, 3] \ {0}` plus up to `fill` further entries in `[-3, 3]`;
    /// `fill >= n` gives a dense triangular factor.
    pub fn random<R: Rng>(n: usize, fill: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let rows = (0..n)
            .map(|i| {
                let mut diag = rng.gen_range(1..=3i64);
                if rng.gen_bool(0.5) {
                    diag = -diag;
                }
                let mut row = vec![(perm[i], diag)];
                let mut later: Vec<usize> = (i + 1..n).collect();
                later.shuffle(rng);
                for &k in later.iter().take(fill) {
                    let c = rng.gen_range(-3..=3i64);
                    if c != 0 {
                        row.push((perm[k], c));
                    }
                }
                row.sort_unstable();
                row
            })
            .collect();
        LinearChange { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn matrix(&self) -> ScalarMatrix {
        let n = self.rows.len();
        let mut data = vec![0i64; n * n];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, c) in row {
                data[i * n + j] = c;
            }
        }
        ScalarMatrix::from_i64(n, n, Field::Rational, &data).expect("square")
    }

    /// `f(A x)`, over the variable set of `f`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let vars = f.vars();
        if vars.len() != self.rows.len() {
            return Err(Error::Invalid(format!(
                "linear change in {} variables applied to a polynomial in {}",
                self.rows.len(),
                vars.len()
            )));
        }
        let images: Vec<Poly> = self
            .rows
            .iter()
            .map(|row| {
                row.iter().fold(Poly::zero(vars, f.field()), |acc, &(j, c)| {
                    &acc + &Poly::var_index(vars, f.field(), j).scale_i64(c)
                })
            })
            .collect();
        f.compose(&images)
    }
}
