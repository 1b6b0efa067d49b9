//! Dense exact matrices.

mod certificate;
mod conj;
mod det;
mod hnf;
mod linalg;
mod snf;

use std::fmt;

pub use certificate::{verify_certificate, SimilarityCertificate};
pub use conj::{apply_conj, ElementaryConj};
pub use hnf::{complete_primitive_vector, hermite_normal_form, integer_kernel};
pub(crate) use hnf::hnf_tracked;
pub use snf::{smith_normal_form, SmithForm};

use crate::ring::{Integer, Rational, Ring, Scalar};

/// Soft cap on dimensions accepted from external input.
pub const DEFAULT_MAX_DIM: usize = 64;

/// A dense row-major matrix. Most operations expect square matrices, but
/// rectangular ones are used internally for bases and linear systems.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    ctx: T::Ctx,
}

impl<T: Ring> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, ctx: &T::Ctx, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, ctx: ctx.clone() }
    }

    /// Panics on ragged input or an empty first row.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let ctx = rows[0][0].ctx();
        Self::from_rows_ctx(rows, &ctx)
    }

    pub fn from_rows_ctx(rows: Vec<Vec<T>>, ctx: &T::Ctx) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            ctx: ctx.clone(),
        }
    }

    pub fn zeros(rows: usize, cols: usize, ctx: &T::Ctx) -> Self {
        Self::from_fn(rows, cols, ctx, |_, _| T::zero(ctx))
    }

    pub fn identity(n: usize, ctx: &T::Ctx) -> Self {
        Self::from_fn(n, n, ctx, |i, j| if i == j { T::one(ctx) } else { T::zero(ctx) })
    }

    pub fn scalar(n: usize, lambda: &T) -> Self {
        let ctx = lambda.ctx();
        Self::from_fn(n, n, &ctx, |i, j| if i == j { lambda.clone() } else { T::zero(&ctx) })
    }

    pub fn diag(entries: &[T], ctx: &T::Ctx) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, ctx, |i, j| if i == j { entries[i].clone() } else { T::zero(ctx) })
    }

    pub fn column(entries: &[T], ctx: &T::Ctx) -> Self {
        Self::from_fn(entries.len(), 1, ctx, |i, _| entries[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn context(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> T {
        self.diagonal()
            .iter()
            .fold(T::zero(&self.ctx), |acc, x| acc.add(x))
    }

    pub fn map<U: Ring>(&self, ctx: &U::Ctx, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            ctx: ctx.clone(),
        }
    }

    pub fn try_map<U: Ring>(&self, ctx: &U::Ctx, f: impl Fn(&T) -> Option<U>) -> Option<Matrix<U>> {
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Option<_>>()?,
            ctx: ctx.clone(),
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.ctx, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Self::from_fn(self.rows, other.cols, &self.ctx, |i, j| {
            (0..self.cols).fold(T::zero(&self.ctx), |acc, k| {
                let a = self.get(i, k);
                if a.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(other.get(k, j)))
                }
            })
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, &self.ctx, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, &self.ctx, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(&self.ctx, |x| x.mul(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows, &self.ctx)
    }

    /// `true` iff the matrix is `λI` for some ring element `λ`.
    pub fn is_scalar(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let lambda = self.get(0, 0);
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x == lambda
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, &self.ctx, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, &self.ctx, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(self.rows + other.rows, self.cols, &self.ctx, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(r + other.rows, c + other.cols, &self.ctx, |i, j| {
            match (i < r, j < c) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - r, j - c).clone(),
                _ => T::zero(&self.ctx),
            }
        })
    }

    /// `f(self)` for a polynomial with coefficients lowest first.
    pub fn eval_poly(&self, coeffs: &[T]) -> Self {
        let n = self.n();
        coeffs
            .iter()
            .rev()
            .fold(Self::zeros(n, n, &self.ctx), |acc, c| {
                acc.mul(self).add(&Self::scalar(n, c))
            })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += c * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(target, j).add(&c.mul(self.get(source, j)));
            self.set(target, j, v);
        }
    }

    /// `col[target] += c * col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, target).add(&self.get(i, source).mul(c));
            self.set(i, target, v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(c);
            self.set(i, j, v);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.get(i, j).mul(c);
            self.set(i, j, v);
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn all_in_ring(&self, tag: crate::ring::RingTag) -> bool {
        self.data.iter().all(|x| x.in_ring(tag))
    }
}

impl Matrix<Integer> {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows_ctx(
            rows.iter()
                .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
                .collect(),
            &(),
        )
    }

    pub fn to_rational(&self) -> Matrix<Rational> {
        self.map(&(), |x| Rational::from_integer(x.clone()))
    }
}

impl Matrix<Rational> {
    /// `None` if some entry is not an integer.
    pub fn to_integer(&self) -> Option<Matrix<Integer>> {
        self.try_map(&(), |x| x.is_integer().then(|| x.to_integer()))
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn is_scalar_examples() {
        assert!(Matrix::scalar(3, &Integer::from(2)).is_scalar());
        assert!(!Matrix::from_i64(&[&[1, 2], &[-3, -1]]).is_scalar());
        assert!(Matrix::from_i64(&[&[7]]).is_scalar());
        assert!(!Matrix::from_i64(&[&[1, 0], &[0, 2]]).is_scalar());
    }

    #[test]
    fn products_and_blocks() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), Matrix::from_i64(&[&[2, 1], &[4, 3]]));
        let s = a.direct_sum(&Matrix::from_i64(&[&[5]]));
        assert_eq!(s.rows(), 3);
        assert_eq!(s.get(2, 2), &Integer::from(5));
        assert_eq!(s.get(0, 2), &Integer::from(0));
        assert_eq!(s.trace(), Integer::from(10));
        // A^2 - 5A - 2I = 0 for [[1,2],[3,4]]
        let cs = [Integer::from(-2), Integer::from(-5), Integer::from(1)];
        assert!(a.eval_poly(&cs).is_zero());
    }
}
