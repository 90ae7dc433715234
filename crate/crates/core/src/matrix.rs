//! Integer matrices with either dense row-major or CSR storage.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Nonzero fraction above which [`Layout::Auto`] picks dense storage.
pub const DENSE_THRESHOLD: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Dense,
    Sparse,
    /// Dense when more than [`DENSE_THRESHOLD`] of the entries are nonzero.
    Auto,
}

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<i64>),
    Sparse { row_ptr: Vec<usize>, cols: Vec<usize>, vals: Vec<i64> },
}

#[derive(Clone)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, storage: Storage::Dense(vec![0; rows * cols]) }
    }

    pub fn identity(n: usize) -> IntMatrix {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1)), Layout::Dense)
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I, layout: Layout) -> IntMatrix
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut per_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            per_row[r].push((c, v));
        }
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut entries in per_row {
            entries.sort_unstable_by_key(|&(c, _)| c);
            let mut iter = entries.into_iter().peekable();
            while let Some((c, mut v)) = iter.next() {
                while let Some(&(c2, v2)) = iter.peek() {
                    if c2 != c {
                        break;
                    }
                    v += v2;
                    iter.next();
                }
                if v != 0 {
                    col_idx.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        let sparse = IntMatrix { rows, cols, storage: Storage::Sparse { row_ptr, cols: col_idx, vals } };
        let dense = match layout {
            Layout::Dense => true,
            Layout::Sparse => false,
            Layout::Auto => {
                let size = rows * cols;
                size > 0 && sparse.nnz() as f64 > DENSE_THRESHOLD * size as f64
            }
        };
        if dense {
            sparse.to_layout(Layout::Dense)
        } else {
            sparse
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flatten().copied().collect();
        IntMatrix { rows: rows.len(), cols, storage: Storage::Dense(data) }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|&&x| x != 0).count(),
            Storage::Sparse { vals, .. } => vals.len(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols + c],
            Storage::Sparse { row_ptr, cols, vals } => {
                let range = row_ptr[r]..row_ptr[r + 1];
                cols[range.clone()].binary_search(&c).map_or(0, |k| vals[range.start + k])
            }
        }
    }

    /// Nonzero `(col, value)` pairs of row `r`, ascending by column.
    pub fn row(&self, r: usize) -> RowIter<'_> {
        match &self.storage {
            Storage::Dense(d) => RowIter::Dense {
                data: &d[r * self.cols..(r + 1) * self.cols],
                pos: 0,
            },
            Storage::Sparse { row_ptr, cols, vals } => RowIter::Sparse {
                cols: &cols[row_ptr[r]..row_ptr[r + 1]],
                vals: &vals[row_ptr[r]..row_ptr[r + 1]],
                pos: 0,
            },
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn to_layout(&self, layout: Layout) -> IntMatrix {
        let layout = match layout {
            Layout::Auto => {
                let size = self.rows * self.cols;
                if size > 0 && self.nnz() as f64 > DENSE_THRESHOLD * size as f64 {
                    Layout::Dense
                } else {
                    Layout::Sparse
                }
            }
            other => other,
        };
        match (layout, &self.storage) {
            (Layout::Dense, Storage::Dense(_)) => self.clone(),
            (Layout::Dense, Storage::Sparse { .. }) => {
                let mut data = vec![0; self.rows * self.cols];
                for (r, c, v) in self.triplets() {
                    data[r * self.cols + c] = v;
                }
                IntMatrix { rows: self.rows, cols: self.cols, storage: Storage::Dense(data) }
            }
            (_, Storage::Sparse { .. }) => self.clone(),
            (_, Storage::Dense(_)) => {
                Self::from_triplets(self.rows, self.cols, self.triplets(), Layout::Sparse)
            }
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| {
                let mut row = vec![0; self.cols];
                for (c, v) in self.row(r) {
                    row[c] = v;
                }
                row
            })
            .collect()
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v as f64;
        }
        m
    }

    pub fn transpose(&self) -> IntMatrix {
        let layout = if self.is_dense() { Layout::Dense } else { Layout::Sparse };
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v)), layout)
    }

    pub fn matmul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Vec::new();
        for r in 0..self.rows {
            for (k, a) in self.row(r) {
                out.extend(other.row(k).map(|(c, b)| (r, c, a * b)));
            }
        }
        Ok(Self::from_triplets(self.rows, other.cols, out, Layout::Auto))
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().chain(other.triplets()),
            Layout::Auto,
        ))
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: below.cols });
        }
        let shifted = below.triplets().map(|(r, c, v)| (r + self.rows, c, v));
        Ok(Self::from_triplets(
            self.rows + below.rows,
            self.cols,
            self.triplets().chain(shifted),
            Layout::Auto,
        ))
    }

    /// Same matrix with each listed row multiplied by -1.
    pub fn negate_rows(&self, rows: &[usize]) -> IntMatrix {
        let flip: Vec<bool> = (0..self.rows).map(|r| rows.contains(&r)).collect();
        let layout = if self.is_dense() { Layout::Dense } else { Layout::Sparse };
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().map(|(r, c, v)| (r, c, if flip[r] { -v } else { v })),
            layout,
        )
    }

    pub fn mul_vec_i64(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.check_len(x.len())?;
        Ok((0..self.rows).map(|r| self.row(r).map(|(c, v)| v * x[c]).sum()).collect())
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        Ok((0..self.rows).map(|r| self.row(r).map(|(c, v)| v as f64 * x[c]).sum()).collect())
    }

    /// `selfᵀ · y`.
    pub fn tr_mul_vec(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: y.len() });
        }
        let mut out = vec![0.0; self.cols];
        for (r, c, v) in self.triplets() {
            out[c] += v as f64 * y[r];
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && self.triplets().all(|(r, c, v)| self.get(c, r) == v)
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    /// Submatrix made of the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut position = vec![None; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            position[c] = Some(k);
        }
        Self::from_triplets(
            self.rows,
            cols.len(),
            self.triplets().filter_map(|(r, c, v)| position[c].map(|k| (r, k, v))),
            Layout::Auto,
        )
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: len });
        }
        Ok(())
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.triplets().eq(other.triplets())
    }
}

impl Eq for IntMatrix {}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}, {}) ", self.rows, self.cols, if self.is_dense() { "dense" } else { "sparse" })?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Right-aligned text table, one row per line.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_rows();
        let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        for row in rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub enum RowIter<'a> {
    Dense { data: &'a [i64], pos: usize },
    Sparse { cols: &'a [usize], vals: &'a [i64], pos: usize },
}

impl Iterator for RowIter<'_> {
    type Item = (usize, i64);

    fn next(&mut self) -> Option<(usize, i64)> {
        match self {
            RowIter::Dense { data, pos } => {
                while *pos < data.len() {
                    let c = *pos;
                    *pos += 1;
                    if data[c] != 0 {
                        return Some((c, data[c]));
                    }
                }
                None
            }
            RowIter::Sparse { cols, vals, pos } => {
                let k = *pos;
                *pos += 1;
                cols.get(k).map(|&c| (c, vals[k]))
            }
        }
    }
}
