//! Dense matrices over GF(q).
//!
//! All elimination is exact Gaussian elimination with first-nonzero pivot
//! selection, so every result (echelon forms, bases, witnesses) is fully
//! deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldFragment, FieldSpec, GfError};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("data length {got} does not match {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, got: usize },
    #[error("entry ({row}, {col}) has code {code}, outside GF({q})")]
    CodeOutOfRange { row: usize, col: usize, code: u64, q: u32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error("column index {0} listed twice")]
    DuplicateIndex(usize),
    #[error("MDS property needs rows <= cols, got {rows}x{cols}")]
    MoreRowsThanColumns { rows: usize, cols: usize },
    #[error("matrices live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("malformed matrix file: {0}")]
    Json(#[from] serde_json::Error),
}

/// Dense row-major matrix of element codes.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(|&c| self.field.format(c)).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of [`FqMatrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<u32>),
    Inconsistent,
    /// A particular solution plus the dimension of the solution space.
    Underdetermined {
        particular: Vec<u32>,
        nullity: usize,
    },
}

/// Outcome of [`FqMatrix::mds_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdsVerdict {
    Holds,
    /// Lexicographically first dependent column subset of size `rows`.
    Fails {
        witness: Vec<usize>,
    },
}

impl MdsVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, MdsVerdict::Holds)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            MdsVerdict::Holds => None,
            MdsVerdict::Fails { witness } => Some(witness),
        }
    }
}

/// On-disk form: `{"field": {..}, "rows": .., "cols": .., "data": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldFragment,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<u64>>,
}

impl FqMatrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DataLength { rows, cols, got: data.len() });
        }
        if let Some(i) = data.iter().position(|&c| !field.contains(c)) {
            return Err(MatrixError::CodeOutOfRange {
                row: i / cols,
                col: i % cols,
                code: data[i] as u64,
                q: field.order(),
            });
        }
        Ok(FqMatrix { field: field.clone(), rows, cols, data })
    }

    /// Builds from a list of equally long rows. At least one row is required;
    /// use [`FqMatrix::zeros`] with `rows = 0` for an empty block.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(MatrixError::Dimension(format!("ragged rows: {} vs {cols}", bad.len())));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FqMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Rows `x^0, x^1, ..., x^(nrows-1)` evaluated at each point.
    pub fn vandermonde(field: &FieldSpec, points: &[u32], nrows: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(field, nrows, points.len());
        for (j, &x) in points.iter().enumerate() {
            field.check(x as u64)?;
            for i in 0..nrows {
                m.data[i * points.len() + j] = field.pow(x, i as u64);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, code: u32) -> Result<(), MatrixError> {
        self.field.check(code as u64)?;
        self.data[r * self.cols + c] = code;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    fn check_indices(&self, idx: &[usize]) -> Result<(), MatrixError> {
        let mut seen = vec![false; self.cols];
        for &i in idx {
            if i >= self.cols {
                return Err(MatrixError::IndexOutOfRange { index: i, cols: self.cols });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(MatrixError::DuplicateIndex(i));
            }
        }
        Ok(())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Result<Self, MatrixError> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.cols) {
            return Err(MatrixError::IndexOutOfRange { index: bad, cols: self.cols });
        }
        let mut m = Self::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        Ok(m)
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Result<Self, MatrixError> {
        if range.end > self.rows || range.start > range.end {
            return Err(MatrixError::Dimension(format!("row range {range:?} of {} rows", self.rows)));
        }
        Ok(FqMatrix {
            field: self.field.clone(),
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        })
    }

    fn same_field(&self, other: &Self) -> Result<(), MatrixError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    /// Stacks `other` below `self`. Zero-row operands act as identities.
    pub fn vstack(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::Dimension(format!("vstack {} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &Self) -> Result<(), MatrixError> {
        self.same_field(block)?;
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(MatrixError::Dimension(format!(
                "{}x{} block at ({r0}, {c0}) overflows {}x{}",
                block.rows, block.cols, self.rows, self.cols
            )));
        }
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
        Ok(())
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(MatrixError::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, rhs.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (FqMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, &mut m.data, self.rows, self.cols, self.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows form a basis of `{x : self * x^T = 0}`; one row per free column,
    /// carrying a 1 in that column.
    pub fn null_space_basis(&self) -> FqMatrix {
        let f = &self.field;
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Self::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.data[b * self.cols + fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                basis.data[b * self.cols + pc] = f.neg(reduced.get(r, fc));
            }
        }
        basis
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &[u32]) -> Result<Solution, MatrixError> {
        if b.len() != self.rows {
            return Err(MatrixError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        for &c in b {
            self.field.check(c as u64)?;
        }
        let width = self.cols + 1;
        let mut aug = Vec::with_capacity(self.rows * width);
        for (r, &rhs) in b.iter().enumerate() {
            aug.extend_from_slice(self.row(r));
            aug.push(rhs);
        }
        let pivots = rref_in_place(&self.field, &mut aug, self.rows, width, self.cols);
        let rank = pivots.len();
        if (rank..self.rows).any(|r| aug[r * width + self.cols] != 0) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[r * width + self.cols];
        }
        Ok(if rank == self.cols {
            Solution::Unique(x)
        } else {
            Solution::Underdetermined { particular: x, nullity: self.cols - rank }
        })
    }

    /// True iff the selected columns are linearly independent.
    pub fn columns_independent(&self, idx: &[usize]) -> Result<bool, MatrixError> {
        self.check_indices(idx)?;
        let mut basis = ColumnBasis::new(&self.field, self.rows);
        Ok(idx.iter().all(|&c| basis.push(self.column(c))))
    }

    /// Exhaustive check that every `rows`-subset of columns is independent.
    pub fn mds_check(&self) -> Result<MdsVerdict, MatrixError> {
        if self.rows > self.cols {
            return Err(MatrixError::MoreRowsThanColumns { rows: self.rows, cols: self.cols });
        }
        let columns: Vec<Vec<u32>> = (0..self.cols).map(|c| self.column(c)).collect();
        let mut basis = ColumnBasis::new(&self.field, self.rows);
        let mut chosen = Vec::with_capacity(self.rows);
        Ok(match first_dependent(&columns, self.rows, 0, &mut basis, &mut chosen) {
            None => MdsVerdict::Holds,
            Some(witness) => MdsVerdict::Fails { witness },
        })
    }

    pub fn has_mds_property(&self) -> Result<bool, MatrixError> {
        Ok(self.mds_check()?.holds())
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            field: self.field.fragment(),
            rows: self.rows,
            cols: self.cols,
            data: self.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect(),
        }
    }

    pub fn from_file(file: &MatrixFile) -> Result<Self, MatrixError> {
        let field = FieldSpec::from_fragment(&file.field)?;
        if file.data.len() != file.rows {
            return Err(MatrixError::Dimension(format!("{} data rows, header says {}", file.data.len(), file.rows)));
        }
        let mut data = Vec::with_capacity(file.rows * file.cols);
        for (r, row) in file.data.iter().enumerate() {
            if row.len() != file.cols {
                return Err(MatrixError::Dimension(format!(
                    "row {r} has {} entries, header says {}",
                    row.len(),
                    file.cols
                )));
            }
            for (c, &code) in row.iter().enumerate() {
                if code >= field.order() as u64 {
                    return Err(MatrixError::CodeOutOfRange { row: r, col: c, code, q: field.order() });
                }
                data.push(code as u32);
            }
        }
        Self::new(&field, file.rows, file.cols, data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("matrix serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, MatrixError> {
        Self::from_file(&serde_json::from_str(s)?)
    }
}

/// Row-reduces the first `pivot_cols` columns of a `rows x width` buffer in
/// place; remaining columns ride along (augmented part).
fn rref_in_place(f: &FieldSpec, data: &mut [u32], rows: usize, width: usize, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * width + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..width {
                data.swap(p * width + j, r * width + j);
            }
        }
        let inv = f.inv(data[r * width + c]).expect("pivot is nonzero");
        for j in 0..width {
            data[r * width + j] = f.mul(data[r * width + j], inv);
        }
        for i in 0..rows {
            let factor = data[i * width + c];
            if i == r || factor == 0 {
                continue;
            }
            for j in 0..width {
                let v = f.mul(factor, data[r * width + j]);
                data[i * width + j] = f.sub(data[i * width + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incrementally maintained span of column vectors, supporting push/pop for
/// depth-first subset searches.
pub(crate) struct ColumnBasis {
    field: FieldSpec,
    len: usize,
    /// (pivot position, vector normalised to 1 at the pivot)
    vectors: Vec<(usize, Vec<u32>)>,
}

impl ColumnBasis {
    pub(crate) fn new(field: &FieldSpec, len: usize) -> Self {
        ColumnBasis { field: field.clone(), len, vectors: Vec::new() }
    }

    /// Reduces `v` against the basis; keeps it and returns true if it was
    /// independent, otherwise leaves the basis unchanged and returns false.
    pub(crate) fn push(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let f = &self.field;
        for (piv, b) in &self.vectors {
            let factor = v[*piv];
            if factor != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[piv]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.vectors.push((piv, v));
        true
    }

    pub(crate) fn pop(&mut self) {
        self.vectors.pop();
    }
}

/// Depth-first search, in lexicographic order, for the first `size`-subset of
/// `columns` (extending `chosen`) that is linearly dependent.
fn first_dependent(
    columns: &[Vec<u32>],
    size: usize,
    start: usize,
    basis: &mut ColumnBasis,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == size {
        return None;
    }
    let remaining = size - chosen.len();
    for c in start..=columns.len() - remaining {
        chosen.push(c);
        if basis.push(columns[c].clone()) {
            let found = first_dependent(columns, size, c + 1, basis, chosen);
            basis.pop();
            if found.is_some() {
                return found;
            }
        } else {
            // Complete with the smallest indices that follow.
            let mut witness = chosen.clone();
            witness.extend(c + 1..c + remaining);
            return Some(witness);
        }
        chosen.pop();
    }
    None
}
