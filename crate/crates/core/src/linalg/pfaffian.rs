use std::collections::HashMap;

use super::matrix::{PolyMatrix, ScalarMatrix, Structure};
use crate::error::{Error, Result};
use crate::ring::{Poly, Scalar};

/// Minimal ring interface shared by polynomial and scalar entries.
trait Entry: Clone {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl Entry for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Entry for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// Expansion along the smallest remaining index:
/// `Pf(S) = sum_k (-1)^(k+1) a[s0][s_k] Pf(S - {s0, s_k})`.
fn expand<T: Entry>(
    set: u64,
    get: &dyn Fn(usize, usize) -> T,
    zero: &T,
    one: &T,
    memo: &mut HashMap<u64, T>,
) -> T {
    if set == 0 {
        return one.clone();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1 << first);
    let mut acc = zero.clone();
    let mut k = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        k += 1;
        let a = get(first, j);
        if a.is_zero() {
            continue;
        }
        let term = a.mul(&expand(rest & !(1 << j), get, zero, one, memo));
        acc = if k % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    memo.insert(set, acc.clone());
    acc
}

fn check_size(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::Shape(format!("Pfaffian of odd size {n}")));
    }
    if n > 64 {
        return Err(Error::Shape("Pfaffian size is limited to 64".into()));
    }
    Ok(())
}

fn full_set(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Pfaffian of a skew-symmetric polynomial matrix, normalized so that
/// `Pf([[0, a], [-a, 0]]) = a`.
pub fn pfaffian(a: &PolyMatrix) -> Result<Poly> {
    let a = if a.structure() == Structure::Skew {
        a.clone()
    } else {
        a.clone().with_structure(Structure::Skew)?
    };
    check_size(a.rows())?;
    let zero = Poly::zero(a.vars(), a.field());
    let one = Poly::one(a.vars(), a.field());
    let get = |i: usize, j: usize| a.get(i, j).clone();
    Ok(expand(full_set(a.rows()), &get, &zero, &one, &mut HashMap::new()))
}

/// Pfaffian of a skew-symmetric scalar matrix, same convention.
pub fn pfaffian_scalar(a: &ScalarMatrix) -> Result<Scalar> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::Shape("Pfaffian of a non-square matrix".into()));
    }
    for i in 0..n {
        for j in i..n {
            if a.get(i, j) != &-a.get(j, i) || (i == j && !a.get(i, i).is_zero()) {
                return Err(Error::Shape(format!("entry ({i},{j}) breaks Skew structure")));
            }
        }
    }
    check_size(n)?;
    let zero = a.field().zero();
    let one = a.field().one();
    let get = |i: usize, j: usize| a.get(i, j).clone();
    Ok(expand(full_set(n), &get, &zero, &one, &mut HashMap::new()))
}
