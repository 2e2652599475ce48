//! Dense matrices over exact rings.
//!
//! Everything in this crate that touches linear algebra goes through
//! [`Matrix`], instantiated at [`BigInt`] or [`BigRational`]. There is no
//! floating point anywhere: determinants use fraction-free Bareiss
//! elimination, inverses are computed over the rationals, and inertia is
//! read off an exact congruence diagonalization.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows, or `None` if the rows are ragged.
    ///
    /// An empty row list gives the 0x0 matrix.
    pub fn try_from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return None;
        }
        let data = rows.into_iter().flatten().collect();
        Some(Matrix {
            rows: nrows,
            cols: ncols,
            data,
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Simultaneous row and column permutation: entry `(i, j)` of the result
    /// is entry `(perm[i], perm[j])` of `self`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(perm[i], perm[j])].clone())
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Matrix::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, T> Add for &'a Matrix<T>
where
    T: Clone,
    &'a T: Add<&'a T, Output = T>,
{
    type Output = Matrix<T>;

    fn add(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a, T> Sub for &'a Matrix<T>
where
    T: Clone,
    &'a T: Sub<&'a T, Output = T>,
{
    type Output = Matrix<T>;

    fn sub(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a, T> Neg for &'a Matrix<T>
where
    T: Clone,
    &'a T: Neg<Output = T>,
{
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl<'a, T> Mul for &'a Matrix<T>
where
    T: Clone + Zero,
    &'a T: Mul<&'a T, Output = T>,
{
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + &self[(i, k)] * &rhs[(k, j)];
            }
            acc
        })
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl IntMatrix {
    /// Convenience constructor from machine integers. Panics on ragged rows.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Matrix::try_from_rows(rows).expect("ragged rows")
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Rows as `i64`, or `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Inverse over the rationals, or `None` when singular.
    pub fn rational_inverse(&self) -> Option<RatMatrix> {
        self.to_rational().inverse()
    }
}

impl RatMatrix {
    /// Gauss-Jordan inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a[(i, k)].is_zero())?;
            a.swap_rows(k, pivot);
            inv.swap_rows(k, pivot);
            let p = a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] = &a[(k, j)] / &p;
                inv[(k, j)] = &inv[(k, j)] / &p;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let da = &f * &a[(k, j)];
                    a[(i, j)] = &a[(i, j)] - &da;
                    let di = &f * &inv[(k, j)];
                    inv[(i, j)] = &inv[(i, j)] - &di;
                }
            }
        }
        Some(inv)
    }
}

/// Counts of positive, negative and zero eigenvalues of a real symmetric
/// matrix (Sylvester's law of inertia).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

/// Inertia of a symmetric rational matrix via congruence diagonalization.
///
/// Each step either finds a nonzero diagonal pivot or, when the remaining
/// diagonal vanishes, replaces `e_i` by `e_i + e_j` for an off-diagonal
/// nonzero `a_ij`, which makes the new diagonal entry `2 a_ij`.
pub fn inertia(m: &RatMatrix) -> Inertia {
    assert!(m.is_symmetric(), "inertia of non-symmetric matrix");
    let n = m.rows;
    let mut a = m.clone();
    let (mut positive, mut negative) = (0, 0);
    for k in 0..n {
        let diag = (k..n).find(|&i| !a[(i, i)].is_zero());
        let i = match diag {
            Some(i) => i,
            None => {
                let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_zero());
                let Some((i, j)) = off else { break };
                // row_i += row_j, then col_i += col_j
                for c in 0..n {
                    let v = &a[(i, c)] + &a[(j, c)];
                    a[(i, c)] = v;
                }
                for r in 0..n {
                    let v = &a[(r, i)] + &a[(r, j)];
                    a[(r, i)] = v;
                }
                i
            }
        };
        a.swap_rows(k, i);
        a.swap_cols(k, i);
        let d = a[(k, k)].clone();
        if d.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        for r in k + 1..n {
            if a[(r, k)].is_zero() {
                continue;
            }
            let f = &a[(r, k)] / &d;
            for c in k..n {
                let v = &f * &a[(k, c)];
                a[(r, c)] = &a[(r, c)] - &v;
            }
        }
        for c in k + 1..n {
            a[(k, c)] = BigRational::zero();
        }
        for r in k + 1..n {
            a[(r, k)] = BigRational::zero();
        }
    }
    Inertia {
        positive,
        negative,
        zero: n - positive - negative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(m: &IntMatrix) -> RatMatrix {
        m.to_rational()
    }

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(IntMatrix::from_i64(&[[0, 1], [1, 5]]).determinant(), BigInt::from(-1));
        assert_eq!(IntMatrix::from_i64::<[i64; 0]>(&[]).determinant(), BigInt::one());
        let m = IntMatrix::from_i64(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(4));
        let singular = IntMatrix::from_i64(&[[1, 2], [2, 4]]);
        assert!(singular.determinant().is_zero());
        // needs a row swap
        let swap = IntMatrix::from_i64(&[[0, 2, 1], [3, 0, 0], [1, 1, 1]]);
        assert_eq!(swap.determinant(), BigInt::from(-3));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = IntMatrix::from_i64(&[[0, 1], [1, 3]]);
        let inv = m.rational_inverse().unwrap();
        assert_eq!(&rat(&m) * &inv, RatMatrix::identity(2));
        assert!(IntMatrix::from_i64(&[[1, 2], [2, 4]]).rational_inverse().is_none());
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        let h = IntMatrix::from_i64(&[[0, 1], [1, 0]]);
        let i = inertia(&rat(&h));
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        let z = IntMatrix::from_i64(&[[0, 0], [0, 0]]);
        assert_eq!(inertia(&rat(&z)).zero, 2);
        let m = IntMatrix::from_i64(&[[-2, 1], [1, -2]]);
        assert_eq!(inertia(&rat(&m)).signature(), -2);
        let mixed = IntMatrix::from_i64(&[[0, 1, 0], [1, 0, 0], [0, 0, 0]]);
        let i = inertia(&rat(&mixed));
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 1));
    }

    #[test]
    fn block_diag_and_permute() {
        let a = IntMatrix::from_i64(&[[1]]);
        let b = IntMatrix::from_i64(&[[2, 3], [3, 4]]);
        let s = a.block_diag(&b);
        assert_eq!(s, IntMatrix::from_i64(&[[1, 0, 0], [0, 2, 3], [0, 3, 4]]));
        let p = s.permute_symmetric(&[2, 0, 1]);
        assert_eq!(p, IntMatrix::from_i64(&[[4, 0, 3], [0, 1, 0], [3, 0, 2]]));
    }
}
