//! Exact dense linear algebra over the coefficient field: reduced row
//! echelon form, rank, kernel, solving, subspace intersection.
//!
//! Pivoting is fully deterministic (leftmost column, topmost row), so every
//! result is reproducible across runs and platforms.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldDescriptor, Scalar};

/// Row-major dense matrix over a single coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    field: FieldDescriptor,
}

impl DenseMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
        field: FieldDescriptor,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.descriptor() != field) {
            return Err(Error::MixedFields);
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
            field,
        })
    }

    pub fn zeros(rows: usize, cols: usize, field: FieldDescriptor) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(field); rows * cols],
            field,
        }
    }

    pub fn identity(n: usize, field: FieldDescriptor) -> Self {
        let mut m = DenseMatrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    /// Builds a matrix from row vectors, which must be nonempty and of
    /// equal length.
    pub fn from_rows(rows: &[Vec<Scalar>], field: FieldDescriptor) -> Result<Self> {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        DenseMatrix::new(
            rows.len(),
            ncols,
            rows.iter().flatten().cloned().collect(),
            field,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect())
    }

    pub fn mul_mat(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols, self.field);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Exact inverse via Gauss-Jordan on [M | I], None when singular.
    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = DenseMatrix::zeros(n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(self.field));
        }
        let red = rref(&aug);
        if red.pivot_columns != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut out = DenseMatrix::zeros(n, n, self.field);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.reduced.get(i, n + j).clone());
            }
        }
        Some(out)
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    pub reduced: DenseMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row echelon form. Pivots are chosen deterministically: for each
/// column left to right, the first nonzero entry below the processed rows.
pub fn rref(m: &DenseMatrix) -> RowEchelon {
    let mut a = m.clone();
    let mut pivot_columns = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..a.cols {
                let tmp = a.get(r, j).clone();
                a.set(r, j, a.get(pr, j).clone());
                a.set(pr, j, tmp);
            }
        }
        let inv = a.get(r, c).inv().expect("pivot nonzero");
        for j in c..a.cols {
            a.set(r, j, a.get(r, j) * &inv);
        }
        for i in 0..a.rows {
            if i != r && !a.get(i, c).is_zero() {
                let factor = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j) - &(&factor * a.get(r, j));
                    a.set(i, j, v);
                }
            }
        }
        pivot_columns.push(c);
        r += 1;
    }
    RowEchelon {
        rank: pivot_columns.len(),
        reduced: a,
        pivot_columns,
    }
}

/// Basis of the right null space of `m`; `m.cols() - rank` vectors, each
/// satisfying m * v = 0 exactly.
pub fn kernel(m: &DenseMatrix) -> Vec<Vec<Scalar>> {
    let red = rref(m);
    let field = m.field;
    let pivots = &red.pivot_columns;
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(field); m.cols];
            v[fc] = Scalar::one(field);
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -red.reduced.get(ri, fc);
            }
            v
        })
        .collect()
}

/// Some solution of M x = b, or None when the system is inconsistent.
/// Free variables are set to zero, so the representative is deterministic.
pub fn solve(m: &DenseMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, rhs has {} entries",
            m.rows,
            b.len()
        )));
    }
    let mut aug = DenseMatrix::zeros(m.rows, m.cols + 1, m.field);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let red = rref(&aug);
    if red.pivot_columns.contains(&m.cols) {
        return Ok(None); // a row [0 .. 0 | 1]: inconsistent
    }
    let mut x = vec![Scalar::zero(m.field); m.cols];
    for (ri, &pc) in red.pivot_columns.iter().enumerate() {
        x[pc] = red.reduced.get(ri, m.cols).clone();
    }
    Ok(Some(x))
}

/// Echelonized basis of the span of `vectors` (rref rows, zero rows dropped).
pub fn span_basis(
    vectors: &[Vec<Scalar>],
    ambient: usize,
    field: FieldDescriptor,
) -> Result<Vec<Vec<Scalar>>> {
    if vectors.iter().any(|v| v.len() != ambient) {
        return Err(Error::DimensionMismatch(
            "vectors of unequal ambient dimension".into(),
        ));
    }
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = DenseMatrix::from_rows(vectors, field)?;
    let red = rref(&m);
    Ok((0..red.rank).map(|i| red.reduced.row(i).to_vec()).collect())
}

/// Basis of the intersection of the given spans, computed by folding the
/// kernel construction: vectors in span(U) ∩ span(W) correspond to kernel
/// elements of the matrix whose columns are the u's followed by the -w's.
pub fn subspace_intersection(
    bases: &[Vec<Vec<Scalar>>],
    ambient: usize,
    field: FieldDescriptor,
) -> Result<Vec<Vec<Scalar>>> {
    let Some((first, rest)) = bases.split_first() else {
        return Err(Error::InvalidArgument(
            "subspace_intersection needs at least one subspace".into(),
        ));
    };
    let mut current = span_basis(first, ambient, field)?;
    for next in rest {
        if current.is_empty() {
            return Ok(Vec::new());
        }
        let next = span_basis(next, ambient, field)?;
        if next.is_empty() {
            return Ok(Vec::new());
        }
        // Columns: current basis, then negated next basis.
        let mut cols: Vec<Vec<Scalar>> = current.clone();
        cols.extend(next.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = DenseMatrix::from_rows(&cols, field)?.transpose();
        let combos = kernel(&m);
        let mut vectors = Vec::new();
        for combo in combos {
            let mut v = vec![Scalar::zero(field); ambient];
            for (i, u) in current.iter().enumerate() {
                for j in 0..ambient {
                    v[j] = &v[j] + &(&combo[i] * &u[j]);
                }
            }
            vectors.push(v);
        }
        current = span_basis(&vectors, ambient, field)?;
    }
    Ok(current)
}
