//! Matrix export: Matrix Market coordinate/integer/general and dense JSON
//! arrays of rows.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Layout};

const BANNER: &str = "%%MatrixMarket matrix coordinate integer general";

/// Writes `m` in Matrix Market coordinate format with 1-based indices.
/// Entries appear in row-major order; `comment` lines are prefixed by `%`.
pub fn to_matrix_market(m: &IntMatrix, comment: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str(BANNER);
    out.push('\n');
    if let Some(text) = comment {
        for line in text.lines() {
            let _ = writeln!(out, "% {line}");
        }
    }
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.triplets() {
        let _ = writeln!(out, "{} {} {}", r + 1, c + 1, v);
    }
    out
}

/// Reads the coordinate/integer/general subset written by [`to_matrix_market`].
pub fn from_matrix_market(text: &str) -> Result<IntMatrix> {
    let err = |line: usize, message: &str| Error::MatrixMarket { line, message: message.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    let (_, banner) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let fields: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields != ["%%matrixmarket", "matrix", "coordinate", "integer", "general"] {
        return Err(err(1, "expected `%%MatrixMarket matrix coordinate integer general`"));
    }

    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body.next().ok_or_else(|| err(1, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(size_line, "bad size line")))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(err(size_line, "size line needs three integers"));
    };

    let mut triplets = Vec::with_capacity(nnz);
    for (line, entry) in body {
        let tokens: Vec<&str> = entry.split_whitespace().collect();
        let [r, c, v] = tokens[..] else {
            return Err(err(line, "entry needs `row col value`"));
        };
        let r: usize = r.parse().map_err(|_| err(line, "bad row index"))?;
        let c: usize = c.parse().map_err(|_| err(line, "bad column index"))?;
        let v: i64 = v.parse().map_err(|_| err(line, "bad integer value"))?;
        if r == 0 || c == 0 || r > rows || c > cols {
            return Err(err(line, "index out of bounds"));
        }
        triplets.push((r - 1, c - 1, v));
    }
    if triplets.len() != nnz {
        return Err(err(size_line, "entry count does not match size line"));
    }
    Ok(IntMatrix::from_triplets(rows, cols, triplets, Layout::Auto))
}

/// Dense JSON array of rows, e.g. `[[-1,1],[0,2]]`.
pub fn to_json_rows(m: &IntMatrix) -> String {
    serde_json::to_string(&m.to_rows()).expect("integers serialize")
}

/// Inverse of [`to_json_rows`]. `cols` is needed only when there are no rows.
pub fn from_json_rows(text: &str, cols: usize) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)?;
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, cols));
    }
    let width = rows[0].len();
    if let Some(bad) = rows.iter().find(|r| r.len() != width) {
        return Err(Error::DimensionMismatch { expected: width, found: bad.len() });
    }
    Ok(IntMatrix::from_rows(&rows))
}
