//! Exact integer and rational linear algebra over small dense matrices.
//!
//! Everything here works on arbitrary-precision integers. Determinants use
//! fraction-free (Bareiss) elimination, linear solves run Gauss-Jordan over
//! reduced rationals, and lattice indices come from an integer echelon form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest accepted matrix side.
pub const MAX_SIDE: usize = 16;

/// Exact rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// A vector of exact rationals, e.g. the solution of a linear system.
pub type RationalVector = Vec<Rational>;

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix must have at least one row and column".into()));
        }
        if rows > MAX_SIDE || cols > MAX_SIDE {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} exceeds the {MAX_SIDE}x{MAX_SIDE} cap"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Self::new(rows.len(), ncols, entries)
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Result<Self> {
        let nrows = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != nrows) {
            return Err(Error::Dimension("columns of different lengths".into()));
        }
        let mut entries = Vec::with_capacity(nrows * cols.len());
        for i in 0..nrows {
            for c in cols {
                entries.push(BigInt::from(c[i]));
            }
        }
        Self::new(nrows, cols.len(), entries)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        Self::new(n, n, entries)
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols).map(<[BigInt]>::to_vec).collect()
    }

    /// Matrix-vector product with a rational vector.
    pub fn mul_rational(&self, x: &[Rational]) -> Result<RationalVector> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Rational::zero(), |acc, j| {
                    acc + Rational::from_integer(self.get(i, j).clone()) * &x[j]
                })
            })
            .collect())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.cols).map(|r| {
            r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        }))
        .finish()
    }
}

/// Exact determinant by Bareiss elimination.
pub fn det_int(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    Ok(bareiss(m.row_vecs()))
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant of the matrix whose columns are `cols`.
pub fn det_of_columns(cols: &[Vec<i64>]) -> Result<BigInt> {
    det_int(&IntMatrix::from_columns(cols)?)
}

/// Unique rational solution of `m · x = rhs`.
pub fn solve_rational(m: &IntMatrix, rhs: &[BigInt]) -> Result<RationalVector> {
    if !m.is_square() {
        return Err(Error::Dimension("solve needs a square matrix".into()));
    }
    if rhs.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            rhs.len(),
            m.rows
        )));
    }
    let n = m.rows;
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n)
                .map(|j| Rational::from_integer(m.get(i, j).clone()))
                .collect();
            row.push(Rational::from_integer(rhs[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(pivot, col);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in col..=n {
                let delta = &factor * &a[col][j];
                a[i][j] -= delta;
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

/// Convenience wrapper over [`solve_rational`] for small integer data.
pub fn solve_columns(cols: &[Vec<i64>], rhs: &[i64]) -> Result<RationalVector> {
    let m = IntMatrix::from_columns(cols)?;
    let rhs: Vec<BigInt> = rhs.iter().map(|&x| BigInt::from(x)).collect();
    solve_rational(&m, &rhs)
}

/// Index of an integer sublattice of Z^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    /// The vectors span a sublattice of rank < d.
    Infinite,
}

impl LatticeIndex {
    pub fn is_one(&self) -> bool {
        matches!(self, LatticeIndex::Finite(n) if n.is_one())
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => f.write_str("infinite"),
        }
    }
}

/// Index in Z^d of the integer span of `vectors`.
///
/// Computed from an integer row echelon form: the index is the product of the
/// absolute pivots when every column carries a pivot.
pub fn lattice_index(vectors: &[Vec<i64>]) -> Result<LatticeIndex> {
    let d = match vectors.first() {
        Some(v) => v.len(),
        None => return Err(Error::Argument("lattice index of an empty list".into())),
    };
    if d == 0 || vectors.iter().any(|v| v.len() != d) {
        return Err(Error::Dimension("vectors of mismatched dimension".into()));
    }
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut index = BigInt::one();
    let mut top = 0;
    for col in 0..d {
        loop {
            let best = (top..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()));
            let Some(best) = best else {
                return Ok(LatticeIndex::Infinite);
            };
            rows.swap(top, best);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                for j in col..d {
                    let delta = &q * &rows[top][j];
                    rows[i][j] -= delta;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        index *= rows[top][col].abs();
        top += 1;
    }
    Ok(LatticeIndex::Finite(index))
}

/// Rank of the matrix with the given rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[rank][col];
            for j in col..ncols {
                let delta = &f * &a[rank][j];
                a[i][j] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Least common multiple of the denominators of `xs`.
pub fn lcm_of_denominators(xs: &[Rational]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
