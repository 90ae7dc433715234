//! Numerical kernels: exact integer rank by fraction-free elimination, exact
//! rational kernel bases, symmetric eigenvalues and minimum-norm least
//! squares.
//!
//! Every rank decision is made in exact arithmetic. Floating point appears
//! only in eigenvalues and projections.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Ring elements usable in Bareiss elimination. `cross` computes
/// `(a*d - b*c) / prev`, which is exact; `None` signals overflow.
trait Exact: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn cross(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?).map(|x| x / prev)
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        Some((a * d - b * c) / prev)
    }
}

/// Bareiss forward elimination; returns pivot columns, or `None` on overflow.
fn bareiss<T: Exact>(mut rows: Vec<Vec<T>>, cols: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut prev = T::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            for j in col + 1..cols {
                row[j] = T::cross(&pivot_row[col], &row[j], &row[col], &pivot_row[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = pivot_row[col].clone();
        pivots.push(col);
        r += 1;
    }
    Some(pivots)
}

/// Pivot columns of the row echelon form of `m`, ascending. These columns
/// form a basis of the column space.
pub fn pivot_columns(m: &IntMatrix) -> Vec<usize> {
    let rows = m.to_rows();
    let small: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if let Some(p) = bareiss(small, m.cols()) {
        return p;
    }
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    bareiss(big, m.cols()).expect("arbitrary precision cannot overflow")
}

/// Indices of a maximal linearly independent set of rows.
pub fn independent_rows(m: &IntMatrix) -> Vec<usize> {
    pivot_columns(&m.transpose())
}

/// Rank over the rationals.
pub fn exact_rank(m: &IntMatrix) -> usize {
    if m.rows() < m.cols() {
        pivot_columns(&m.transpose()).len()
    } else {
        pivot_columns(m).len()
    }
}

/// Linearly independent rational vectors of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVectorBasis {
    len: usize,
    vectors: Vec<Vec<BigRational>>,
}

impl RationalVectorBasis {
    pub fn empty(len: usize) -> Self {
        RationalVectorBasis { len, vectors: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    pub fn vectors(&self) -> &[Vec<BigRational>] {
        &self.vectors
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Every entry as a `"p/q"` string with `q > 0`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect())
            .collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        self.vectors.iter().map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect()
    }

    /// Checks `m · x = 0` exactly for every vector.
    pub fn annihilated_by(&self, m: &IntMatrix) -> bool {
        m.cols() == self.len
            && self.vectors.iter().all(|x| {
                (0..m.rows()).all(|r| {
                    m.row(r)
                        .fold(BigRational::zero(), |acc, (c, v)| acc + &x[c] * BigRational::from_integer(v.into()))
                        .is_zero()
                })
            })
    }

    /// Checks linear independence exactly by scaling to integers and
    /// computing rank.
    pub fn is_independent(&self) -> bool {
        let mut rows = Vec::with_capacity(self.vectors.len());
        for v in &self.vectors {
            let lcm = v.iter().fold(<BigInt as One>::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
            rows.push(ints);
        }
        bareiss(rows, self.len).expect("bigint").len() == self.vectors.len()
    }
}

/// Basis of `{x : m x = 0}` over the rationals, from the reduced row echelon
/// form. One vector per free column, with that coordinate set to 1.
pub fn kernel_basis(m: &IntMatrix) -> RationalVectorBasis {
    let cols = m.cols();
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for j in col..cols {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![BigRational::zero(); cols];
            x[free] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -a[row][free].clone();
            }
            x
        })
        .collect();
    RationalVectorBasis { len: cols, vectors }
}

/// All eigenvalues of a symmetric integer matrix, ascending. `tol` is the
/// relative convergence threshold of the QR iteration.
pub fn symmetric_eigenvalues(m: &IntMatrix, tol: f64) -> Result<Vec<f64>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    let eps = if tol > 0.0 { tol.min(1e-12) } else { f64::EPSILON };
    let eig = m
        .to_f64()
        .try_symmetric_eigen(eps, 0)
        .unwrap_or_else(|| m.to_f64().symmetric_eigen());
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Number of eigenvalues with magnitude at most `rel · max(1, spectral radius)`.
pub fn near_zero_count(eigenvalues: &[f64], rel: f64) -> usize {
    let radius = eigenvalues.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    eigenvalues.iter().filter(|x| x.abs() <= rel * radius).count()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeastSquares {
    /// Minimum-norm minimizer of `‖M x − f‖`.
    pub coefficients: Vec<f64>,
    /// `M · coefficients`, the orthogonal projection of `f` onto `im M`.
    pub projection: Vec<f64>,
    /// `f − projection`.
    pub residual: Vec<f64>,
}

/// Orthogonal projection of `f` onto the column space of `m`, with the
/// minimum-norm coefficient vector.
///
/// The column and row spaces are spanned by exactly chosen independent
/// columns and rows, so rank deficiency never depends on a floating
/// threshold; the remaining full-rank problems are solved by thin QR.
pub fn least_squares_project(m: &IntMatrix, f: &[f64]) -> Result<LeastSquares> {
    if f.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: f.len() });
    }
    let cols = pivot_columns(m);
    if cols.is_empty() {
        return Ok(LeastSquares {
            coefficients: vec![0.0; m.cols()],
            projection: vec![0.0; m.rows()],
            residual: f.to_vec(),
        });
    }
    let target = DVector::from_column_slice(f);

    let basis = m.select_columns(&cols).to_f64();
    let q = basis.qr().q();
    let projection = &q * (q.transpose() * &target);

    // x = Rᵀ z with R the independent rows keeps x in the row space
    let rows = independent_rows(m);
    let row_basis = m.transpose().select_columns(&rows).to_f64();
    let system: DMatrix<f64> = m.to_f64() * &row_basis;
    let qr = system.qr();
    let rhs = qr.q().transpose() * &projection;
    let z = qr.r().solve_upper_triangular(&rhs).expect("full column rank");
    let coefficients = row_basis * z;

    let residual = &target - &projection;
    Ok(LeastSquares {
        coefficients: coefficients.iter().copied().collect(),
        projection: projection.iter().copied().collect(),
        residual: residual.iter().copied().collect(),
    })
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Absolute value of the largest entry.
#[cfg(test)]
pub(crate) fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::incidence::{build_b, build_c};
    use proptest::prelude::*;

    /// Rank by plain rational Gaussian elimination, independent of Bareiss.
    fn oracle_rank(rows: &[Vec<i64>]) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut a: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut rank = 0;
        for col in 0..cols {
            if let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) {
                a.swap(rank, p);
                let (top, below) = a.split_at_mut(rank + 1);
                let pivot = &top[rank];
                for row in below {
                    let f = &row[col] / &pivot[col];
                    for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                        *x -= &f * p;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn ranks_of_fixtures() {
        let b = build_b(&fixtures::kite());
        assert_eq!(exact_rank(b.matrix()), 4);
        assert_eq!(oracle_rank(&b.matrix().to_rows()), 4);
        assert_eq!(exact_rank(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(exact_rank(&IntMatrix::zeros(0, 0)), 0);
        let c = build_c(&fixtures::k4());
        assert_eq!(exact_rank(c.matrix()), 3);
        assert_eq!(oracle_rank(&c.matrix().to_rows()), 3);
    }

    #[test]
    fn bigint_fallback() {
        // Entries near 2^62 force the i128 path to overflow.
        let big = 1i64 << 62;
        let m = IntMatrix::from_rows(&[vec![big, big - 1, 3], vec![big - 3, big, 5], vec![7, big, big - 11]]);
        let rows: Vec<Vec<i128>> = m.to_rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        assert!(bareiss(rows, 3).is_none());
        assert_eq!(exact_rank(&m), oracle_rank(&m.to_rows()));
        let dependent = IntMatrix::from_rows(&[vec![big, big - 1], vec![big, big - 1]]);
        assert_eq!(exact_rank(&dependent), 1);
    }

    #[test]
    fn kernels() {
        let c4 = fixtures::cycle(4);
        let h = crate::helmholtzian::assemble(&c4).into_matrix();
        let k = kernel_basis(&h);
        assert_eq!(k.dimension(), 1);
        assert!(k.annihilated_by(&h));
        // edges 1->2, 2->3, 3->4, 1->4: the circulation runs against the last edge
        let strings = k.to_strings();
        assert_eq!(strings[0], vec!["-1/1", "-1/1", "-1/1", "1/1"]);

        let tree = OrientedComplex::from_edge_list("1 2\n2 3\n2 4\n4 5").unwrap();
        let h = crate::helmholtzian::assemble(&tree).into_matrix();
        assert!(kernel_basis(&h).is_empty());
        assert!(kernel_basis(&IntMatrix::identity(4)).is_empty());

        let half = IntMatrix::from_rows(&[vec![2, 1]]);
        let k = kernel_basis(&half);
        assert_eq!(k.to_strings(), vec![vec!["-1/2".to_string(), "1/1".to_string()]]);
    }

    use crate::complex::OrientedComplex;

    #[test]
    fn eigenvalues() {
        let m = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]);
        let l = symmetric_eigenvalues(&m, 1e-12).unwrap();
        assert!((l[0] - 1.0).abs() < 1e-12 && (l[1] - 3.0).abs() < 1e-12);
        let three = IntMatrix::from_rows(&[vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]);
        assert_eq!(symmetric_eigenvalues(&three, 1e-12).unwrap(), vec![3.0; 3]);
        let h = crate::helmholtzian::assemble(&fixtures::kite()).into_matrix();
        let l = symmetric_eigenvalues(&h, 1e-12).unwrap();
        assert_eq!(l.len(), 6);
        assert!(l.iter().all(|&x| x > 1e-9));
        assert_eq!(near_zero_count(&l, 1e-9), 6 - exact_rank(&h));
        let skew = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(symmetric_eigenvalues(&skew, 1e-12), Err(Error::NotSymmetric));
    }

    #[test]
    fn projections() {
        let col = IntMatrix::from_rows(&[vec![1], vec![1]]);
        let ls = least_squares_project(&col, &[0.0, 2.0]).unwrap();
        assert!((ls.projection[0] - 1.0).abs() < 1e-12 && (ls.projection[1] - 1.0).abs() < 1e-12);
        assert!((ls.residual[0] + 1.0).abs() < 1e-12 && (ls.residual[1] - 1.0).abs() < 1e-12);
        assert!((ls.coefficients[0] - 1.0).abs() < 1e-12);

        let b = build_b(&fixtures::cycle(4)).into_matrix();
        let circulation = [1.0, 1.0, 1.0, -1.0];
        let ls = least_squares_project(&b, &circulation).unwrap();
        assert!(norm(&ls.projection) < 1e-12);

        let inside = b.mul_vec(&[0.0, 1.0, 3.0, -2.0]).unwrap();
        let ls = least_squares_project(&b, &inside).unwrap();
        assert!(norm(&ls.residual) <= 1e-9 * norm(&inside));
        // minimum norm: coefficients orthogonal to the constant kernel of B
        assert!(ls.coefficients.iter().sum::<f64>().abs() < 1e-12);

        assert!(least_squares_project(&b, &[1.0]).is_err());
        let zero = least_squares_project(&IntMatrix::zeros(2, 3), &[1.0, 2.0]).unwrap();
        assert_eq!(zero.residual, vec![1.0, 2.0]);
        assert_eq!(zero.coefficients, vec![0.0; 3]);
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=10, 1usize..=10, prop::collection::vec(-3i64..=3, 100), 0u8..3).prop_map(|(r, c, data, sparsify)| {
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|i| (0..c).map(|j| if (i + j) % 3 < sparsify as usize { 0 } else { data[i * 10 + j] }).collect())
                .collect();
            IntMatrix::from_rows(&rows)
        })
    }

    proptest! {
        #[test]
        fn rank_properties(m in arb_matrix()) {
            let r = exact_rank(&m);
            prop_assert_eq!(r, exact_rank(&m.transpose()));
            prop_assert_eq!(r, oracle_rank(&m.to_rows()));
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dimension() + r, m.cols());
            prop_assert!(k.annihilated_by(&m));
            prop_assert!(k.is_independent());
        }

        #[test]
        fn residual_is_orthogonal(m in arb_matrix(), f in prop::collection::vec(-10.0f64..10.0, 10)) {
            let f = &f[..m.rows()];
            let ls = least_squares_project(&m, f).unwrap();
            let back = m.tr_mul_vec(&ls.residual).unwrap();
            prop_assert!(max_abs(&back) <= 1e-9 * norm(f).max(1e-300));
            let mx = m.mul_vec(&ls.coefficients).unwrap();
            for (a, b) in mx.iter().zip(&ls.projection) {
                prop_assert!((a - b).abs() <= 1e-9 * norm(f).max(1.0));
            }
            // coefficients lie in the row space: orthogonal to the kernel
            for v in kernel_basis(&m).to_f64() {
                prop_assert!(dot(&v, &ls.coefficients).abs() <= 1e-9 * norm(f).max(1.0) * norm(&v));
            }
        }
    }
}
