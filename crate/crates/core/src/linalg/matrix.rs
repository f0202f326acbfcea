use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::scalar::{inv_mod, mul_mod, sub_mod};
use crate::ring::{text, Field, ModPoly, Poly, Scalar, VarSet};

/// Optional shape constraint, validated entry-wise on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    General,
    Symmetric,
    Skew,
}

/// Dense matrix of polynomials sharing one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    vars: VarSet,
    field: Field,
    entries: Vec<Poly>,
    structure: Structure,
}

impl PolyMatrix {
    /// Row-major constructor; every entry must live in the same ring.
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrices need at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let vars = entries[0].vars().clone();
        let field = entries[0].field();
        if entries.iter().any(|e| e.vars() != &vars) {
            return Err(Error::VarSetMismatch);
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch("matrix entries".into()));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            vars,
            field,
            entries,
            structure: Structure::General,
        })
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Poly,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix::new(rows, cols, entries)
    }

    pub fn identity(n: usize, vars: &VarSet, field: Field) -> Result<Self> {
        PolyMatrix::from_fn(n, n, |i, j| {
            Poly::from_i64(vars, field, i64::from(i == j))
        })
    }

    /// Marks the matrix symmetric or skew after checking every entry.
    pub fn with_structure(mut self, structure: Structure) -> Result<Self> {
        match structure {
            Structure::General => {}
            Structure::Symmetric | Structure::Skew => {
                if !self.is_square() {
                    return Err(Error::Shape("structured matrices are square".into()));
                }
                for i in 0..self.rows {
                    for j in i..self.rows {
                        let (a, b) = (self.get(i, j), self.get(j, i));
                        let ok = match structure {
                            Structure::Symmetric => a == b,
                            _ => a == &-b && (i != j || a.is_zero()),
                        };
                        if !ok {
                            return Err(Error::Shape(format!(
                                "entry ({i},{j}) breaks {structure:?} structure"
                            )));
                        }
                    }
                }
            }
        }
        self.structure = structure;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn max_entry_degree(&self) -> u32 {
        self.entries
            .iter()
            .filter_map(Poly::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
            .expect("same ring");
        t.structure = self.structure;
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::Shape("index out of range".into()));
        }
        PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch);
        }
        PolyMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Poly::zero(&self.vars, self.field);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    pub fn scale(&self, c: &Poly) -> PolyMatrix {
        self.map(|e| e * c)
    }

    /// Entry-wise image; the results must again share one ring.
    pub fn map<F: Fn(&Poly) -> Poly>(&self, f: F) -> PolyMatrix {
        PolyMatrix::new(self.rows, self.cols, self.entries.iter().map(f).collect())
            .expect("entry map must stay in one ring")
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<ScalarMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        })
    }

    /// Reduces every entry modulo `prime` once, for repeated evaluation.
    pub fn compile_mod(&self, prime: u64) -> Result<ModMatrix> {
        Ok(ModMatrix {
            rows: self.rows,
            cols: self.cols,
            prime,
            entries: self
                .entries
                .iter()
                .map(|e| ModPoly::new(e, prime))
                .collect::<Result<_>>()?,
        })
    }
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PolyMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `{"rows":r,"cols":c,"vars":[...],"entries":[[poly-text,...],...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub vars: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl From<&PolyMatrix> for MatrixJson {
    fn from(m: &PolyMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            vars: m.vars.names().to_vec(),
            entries: (0..m.rows)
                .map(|i| m.row(i).iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for PolyMatrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<PolyMatrix> {
        let vars = VarSet::new(j.vars.iter().cloned())?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Json("entry array does not match rows/cols".into()));
        }
        let entries = j
            .entries
            .iter()
            .flatten()
            .map(|s| text::parse(s, Some(&vars)))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(j.rows, j.cols, entries)
    }
}

/// A polynomial matrix with entries pre-reduced modulo a prime.
#[derive(Debug, Clone)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    prime: u64,
    entries: Vec<ModPoly>,
}

impl ModMatrix {
    pub fn evaluate(&self, point: &[u64]) -> Result<ScalarMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.evaluate_fp(point).map(Scalar::Mod))
            .collect::<Result<Vec<_>>>()?;
        Ok(ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            field: Field::Prime(self.prime),
            entries,
        })
    }

    /// Rank of the evaluation at `point`, skipping the `Scalar` layer.
    pub fn rank_at(&self, point: &[u64]) -> Result<usize> {
        let mut data = self
            .entries
            .iter()
            .map(|e| e.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(rank_mod_p(&mut data, self.rows, self.cols, self.prime))
    }

    /// Determinant of the evaluation at `point`.
    pub fn det_at(&self, point: &[u64]) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let mut data = self
            .entries
            .iter()
            .map(|e| e.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(det_mod_p(&mut data, self.rows, self.prime))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Dense matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn new(rows: usize, cols: usize, field: Field, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch("matrix entries".into()));
        }
        Ok(ScalarMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, field: Field, data: &[i64]) -> Result<Self> {
        ScalarMatrix::new(rows, cols, field, data.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        ScalarMatrix {
            rows: n,
            cols: n,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn checked_mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Shape("incompatible scalar matrices".into()));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        ScalarMatrix::new(self.rows, other.cols, self.field, entries)
    }

    /// Reduced row echelon form in place; returns pivot columns and the sign
    /// of the row permutation.
    fn echelon(&mut self) -> (Vec<usize>, bool) {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.entries[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.entries.swap(p * cols + j, r * cols + j);
                }
                odd = !odd;
            }
            let inv = self.entries[r * cols + c].inv().expect("nonzero pivot");
            for i in 0..rows {
                if i == r || self.entries[i * cols + c].is_zero() {
                    continue;
                }
                let factor = &self.entries[i * cols + c] * &inv;
                for j in c..cols {
                    let delta = &factor * &self.entries[r * cols + j];
                    let v = &self.entries[i * cols + j] - &delta;
                    self.entries[i * cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, odd)
    }

    pub fn rank(&self) -> usize {
        if let Field::Prime(p) = self.field {
            let mut data: Vec<u64> = self
                .entries
                .iter()
                .map(|s| s.as_fp().expect("F_p entry").value())
                .collect();
            return rank_mod_p(&mut data, self.rows, self.cols, p);
        }
        self.clone().echelon().0.len()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut det = self.field.one();
        let mut odd = false;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !work.entries[i * n + c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                for j in 0..n {
                    work.entries.swap(p * n + j, c * n + j);
                }
                odd = !odd;
            }
            let pivot = work.entries[c * n + c].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if work.entries[i * n + c].is_zero() {
                    continue;
                }
                let factor = &work.entries[i * n + c] * &inv;
                for j in c..n {
                    let delta = &factor * &work.entries[c * n + j];
                    let v = &work.entries[i * n + j] - &delta;
                    work.entries[i * n + j] = v;
                }
            }
        }
        Ok(if odd { -det } else { det })
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut work = self.clone();
        let (pivots, _) = work.echelon();
        let cols = self.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fcol| {
                let mut v = vec![self.field.zero(); cols];
                v[fcol] = self.field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    let inv = work.entries[r * cols + pc].inv().expect("pivot");
                    v[pc] = -(&work.entries[r * cols + fcol] * &inv);
                }
                v
            })
            .collect()
    }
}

/// Rank of a row-major matrix over F_p by Gaussian elimination.
pub fn rank_mod_p(data: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !data[i * cols + c].is_multiple_of(p)) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                data.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(data[rank * cols + c] % p, p);
        for i in rank + 1..rows {
            let a = data[i * cols + c] % p;
            if a == 0 {
                continue;
            }
            let factor = mul_mod(a, inv, p);
            for j in c..cols {
                let delta = mul_mod(factor, data[rank * cols + j], p);
                data[i * cols + j] = sub_mod(data[i * cols + j] % p, delta, p);
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a row-major `n x n` matrix over F_p.
pub fn det_mod_p(data: &mut [u64], n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !data[i * n + c].is_multiple_of(p)) else {
            return 0;
        };
        if piv != c {
            for j in 0..n {
                data.swap(piv * n + j, c * n + j);
            }
            det = sub_mod(0, det, p);
        }
        let pivot = data[c * n + c] % p;
        det = mul_mod(det, pivot, p);
        let inv = inv_mod(pivot, p);
        for i in c + 1..n {
            let a = data[i * n + c] % p;
            if a == 0 {
                continue;
            }
            let factor = mul_mod(a, inv, p);
            for j in c..n {
                let delta = mul_mod(factor, data[c * n + j], p);
                data[i * n + j] = sub_mod(data[i * n + j] % p, delta, p);
            }
        }
    }
    det
}

/// Rank of a scalar matrix over F_p.
pub fn scalar_rank(m: &ScalarMatrix) -> usize {
    m.rank()
}
