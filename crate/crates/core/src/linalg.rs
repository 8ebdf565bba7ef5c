//! Exact integer matrices and fraction-free (Bareiss) elimination.
//!
//! Elimination first runs on `i128` with checked arithmetic. Bareiss
//! intermediates are minors of the input, so for `{-1,0,1}` matrices they are
//! bounded by Hadamard's `t^(t/2)`; up to `t = 16` that is below `2^32` and the
//! products formed in a step stay far inside `i128`. When any step overflows
//! the whole elimination is redone over `BigInt`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::domain("ragged matrix rows"));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[i64]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.iter_rows().map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::domain(format!(
                "shape mismatch: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `x * self`.
    pub fn left_mul(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.rows {
            return Err(Error::domain(format!(
                "vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let mut out = vec![0i64; self.cols];
        for (xi, row) in x.iter().zip(self.iter_rows()) {
            if *xi == 0 {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o += xi * r;
            }
        }
        Ok(out)
    }

    /// Exact determinant by Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        if self.rows == 0 {
            return Ok(BigInt::one());
        }
        let ech = echelon(self.widened(), self.cols);
        if ech.rank < self.rows {
            return Ok(BigInt::zero());
        }
        let last = ech.rows[self.rows - 1][self.cols - 1].clone();
        Ok(if ech.swaps % 2 == 1 { -last } else { last })
    }

    pub fn rank(&self) -> usize {
        echelon(self.widened(), self.cols).rank
    }

    fn widened(&self) -> Vec<Vec<i128>> {
        self.iter_rows()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in self.iter_rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Arithmetic needed by one Bareiss update `(a*b - c*d) / p`, where the
/// division is known to be exact.
trait BareissScalar: Clone + Sized {
    fn scalar_zero() -> Self;
    fn scalar_one() -> Self;
    fn scalar_is_zero(&self) -> bool;
    fn update(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl BareissScalar for i128 {
    fn scalar_zero() -> Self {
        0
    }

    fn scalar_one() -> Self {
        1
    }

    fn scalar_is_zero(&self) -> bool {
        *self == 0
    }

    fn update(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self> {
        let lhs = a.checked_mul(*b)?;
        let rhs = c.checked_mul(*d)?;
        lhs.checked_sub(rhs)?.checked_div(*p)
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl BareissScalar for BigInt {
    fn scalar_zero() -> Self {
        Zero::zero()
    }

    fn scalar_one() -> Self {
        One::one()
    }

    fn scalar_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn update(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self> {
        Some((a * b - c * d) / p)
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Result of fraction-free row reduction.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pivots: Vec<usize>,
    swaps: usize,
}

/// Bareiss row echelon form, pivoting only within the first `pivot_cols`
/// columns (the rest are carried along, e.g. an augmented right-hand side).
fn echelon(m: Vec<Vec<i128>>, pivot_cols: usize) -> Echelon {
    match try_echelon(m.clone(), pivot_cols) {
        Some(e) => e,
        None => {
            let big = m
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            try_echelon::<BigInt>(big, pivot_cols).expect("BigInt elimination cannot overflow")
        }
    }
}

fn try_echelon<S: BareissScalar>(mut m: Vec<Vec<S>>, pivot_cols: usize) -> Option<Echelon> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = S::scalar_one();
    let mut rank = 0;
    let mut pivots = Vec::new();
    let mut swaps = 0;

    for col in 0..pivot_cols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].scalar_is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            swaps += 1;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..ncols {
                row[j] = S::update(&pivot, &row[j], &lead, &pivot_row[j], &prev)?;
            }
            row[col] = S::scalar_zero();
        }
        prev = pivot;
        pivots.push(col);
        rank += 1;
    }

    Some(Echelon {
        rows: m
            .iter()
            .map(|r| r.iter().map(BareissScalar::to_big).collect())
            .collect(),
        rank,
        pivots,
        swaps,
    })
}

/// Solves `y * basis = target` exactly (row-vector convention).
///
/// Errors with [`Error::Singular`] when the basis is not invertible.
pub fn solve_left(target: &[i64], basis: &IntMatrix) -> Result<Vec<BigRational>> {
    let n = basis.rows();
    if !basis.is_square() {
        return Err(Error::domain("basis must be square"));
    }
    if target.len() != n {
        return Err(Error::domain(format!(
            "target of length {} against a {n}x{n} basis",
            target.len()
        )));
    }
    // y * B = b  <=>  B^T y^T = b^T
    let aug: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut r: Vec<i128> = (0..n).map(|j| basis.get(j, i) as i128).collect();
            r.push(target[i] as i128);
            r
        })
        .collect();
    let ech = echelon(aug, n);
    if ech.rank < n {
        return Err(Error::Singular(format!(
            "basis has rank {} < {n}",
            ech.rank
        )));
    }
    debug_assert!(ech.pivots.iter().enumerate().all(|(i, &c)| i == c));

    let mut y = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let row = &ech.rows[i];
        let mut acc = BigRational::from_integer(row[n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(row[j].clone()) * &y[j];
        }
        y[i] = acc / BigRational::from_integer(row[i].clone());
    }
    Ok(y)
}

/// Converts an exact rational vector to integers when every denominator is 1.
pub fn integral(v: &[BigRational]) -> Option<Vec<i64>> {
    v.iter()
        .map(|q| {
            if q.is_integer() {
                q.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// Largest absolute entry, for reporting.
pub fn max_abs(v: &[BigRational]) -> BigRational {
    v.iter()
        .map(Signed::abs)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Cofactor expansion, for cross-checking on small matrices.
    fn det_laplace(a: &IntMatrix) -> i64 {
        let n = a.rows();
        if n == 1 {
            return a.get(0, 0);
        }
        (0..n)
            .map(|j| {
                let minor = IntMatrix::from_rows(
                    (1..n)
                        .map(|i| (0..n).filter(|&c| c != j).map(|c| a.get(i, c)).collect())
                        .collect(),
                )
                .unwrap();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a.get(0, j) * det_laplace(&minor)
            })
            .sum()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[2, -1, 0, 3], &[1, 1, 4, -2], &[0, 5, -3, 1], &[7, 0, 2, 2]]);
        assert_eq!(a.det().unwrap(), BigInt::from(det_laplace(&a)));
        let b = m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(b.det().unwrap(), BigInt::from(det_laplace(&b)));
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(singular.det().unwrap().is_zero());
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn solve_rational() {
        // y * [[2,1],[1,3]] = [5, 10]  =>  y = [1, 3]
        let b = m(&[&[2, 1], &[1, 3]]);
        let y = solve_left(&[5, 10], &b).unwrap();
        assert_eq!(integral(&y), Some(vec![1, 3]));
        let y = solve_left(&[1, 0], &b).unwrap();
        assert_eq!(y[0], BigRational::new(3.into(), 5.into()));
        assert_eq!(y[1], BigRational::new((-1).into(), 5.into()));
        assert!(matches!(
            solve_left(&[1, 1], &m(&[&[1, 2], &[2, 4]])),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn big_hadamard_falls_back_to_bigint() {
        // Sylvester Hadamard matrix of order 64: det = 64^32 = 2^192.
        let n = 64;
        let h = IntMatrix::from_rows(
            (0..n)
                .map(|i: usize| {
                    (0..n)
                        .map(|j: usize| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 })
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let det = h.det().unwrap();
        assert_eq!(det.abs(), BigInt::from(2).pow(192));
        assert_eq!(h.rank(), 64);
    }
}
