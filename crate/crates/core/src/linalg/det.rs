use std::collections::HashMap;

use rayon::prelude::*;

use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::ring::Poly;

fn require_square(m: &PolyMatrix, what: &str) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "{what} of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )))
    }
}

/// Fraction-free Bareiss elimination. Row swaps pick the lowest-index row
/// with a nonzero pivot; a zero pivot column means a zero determinant.
pub fn determinant(m: &PolyMatrix) -> Result<Poly> {
    require_square(m, "determinant")?;
    let n = m.rows();
    let zero = Poly::zero(m.vars(), m.field());
    let mut a: Vec<Vec<Poly>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = Poly::one(m.vars(), m.field());
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(zero);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        tail.par_iter_mut().for_each(|row| {
            for j in k + 1..n {
                let cross = &(&pivot_row[k] * &row[j]) - &(&row[k] * &pivot_row[j]);
                row[j] = if k == 0 { cross } else { cross.div_exact(&prev) };
            }
            row[k] = Poly::zero(prev.vars(), prev.field());
        });
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Laplace expansion along successive rows, memoized on the set of columns
/// still available. Independent of [`determinant`]; used to cross-check it.
pub fn cofactor_determinant(m: &PolyMatrix) -> Result<Poly> {
    require_square(m, "determinant")?;
    if m.rows() > 20 {
        return Err(Error::Shape("cofactor expansion is limited to 20x20".into()));
    }
    let mut memo = HashMap::new();
    Ok(laplace(m, (1u32 << m.rows()) - 1, &mut memo))
}

fn laplace(m: &PolyMatrix, cols: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
    if cols == 0 {
        return Poly::one(m.vars(), m.field());
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = m.rows() - cols.count_ones() as usize;
    let mut acc = Poly::zero(m.vars(), m.field());
    let mut pos = 0;
    for c in 0..m.cols() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = m.get(row, c);
        if !entry.is_zero() {
            let term = entry * &laplace(m, cols & !(1 << c), memo);
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Determinant of the submatrix on `rows` x `cols`.
pub fn minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Result<Poly> {
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(Error::Shape("minor index sets must be nonempty and equal in size".into()));
    }
    for set in [rows, cols] {
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Shape("minor indices must be strictly increasing".into()));
        }
    }
    determinant(&m.submatrix(rows, cols)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Poly,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every order-`k` minor, rows outer and columns inner, both lexicographic.
pub fn all_minors(m: &PolyMatrix, k: usize) -> Result<Vec<Minor>> {
    if k == 0 || k > m.rows().min(m.cols()) {
        return Err(Error::Shape(format!(
            "no minors of order {k} in a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let row_sets = combinations(m.rows(), k);
    let col_sets = combinations(m.cols(), k);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = row_sets
        .iter()
        .flat_map(|r| col_sets.iter().map(move |c| (r, c)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(r, c)| {
            Ok(Minor {
                rows: r.clone(),
                cols: c.clone(),
                value: minor(m, r, c)?,
            })
        })
        .collect()
}

/// Transposed matrix of signed cofactors, so `M * adj(M) = det(M) * I`.
pub fn adjugate(m: &PolyMatrix) -> Result<PolyMatrix> {
    require_square(m, "adjugate")?;
    let n = m.rows();
    if n == 1 {
        return PolyMatrix::identity(1, m.vars(), m.field());
    }
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let entries = cells
        .into_par_iter()
        .map(|(i, j)| {
            // entry (i, j) is the cofactor of (j, i)
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let d = minor(m, &rows, &cols)?;
            Ok(if (i + j) % 2 == 0 { d } else { -d })
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(n, n, entries)
}
