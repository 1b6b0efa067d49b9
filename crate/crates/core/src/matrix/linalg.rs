use super::Matrix;
use crate::ring::Field;

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols() {
            if r == m.rows() {
                break;
            }
            let Some(p) = (r..m.rows()).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            m.scale_row(r, &inv);
            for i in 0..m.rows() {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).neg();
                    m.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per column.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let ctx = self.context().clone();
        let free: Vec<usize> = (0..self.cols()).filter(|c| !pivots.contains(c)).collect();
        Matrix::from_fn(self.cols(), free.len(), &ctx, |i, k| {
            let f = free[k];
            if i == f {
                F::one(&ctx)
            } else if let Some(row) = pivots.iter().position(|&p| p == i) {
                r.get(row, f).neg()
            } else {
                F::zero(&ctx)
            }
        })
    }

    /// Some `X` with `self · X = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows(), rhs.rows());
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols()) {
            return None;
        }
        let ctx = self.context().clone();
        let mut x = Matrix::zeros(self.cols(), rhs.cols(), &ctx);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols() {
                x.set(p, j, r.get(row, self.cols() + j).clone());
            }
        }
        Some(x)
    }

    /// Extends independent columns to a basis of the whole space by
    /// appending standard basis vectors in index order.
    pub fn complete_basis(&self) -> Self {
        let n = self.rows();
        let ctx = self.context().clone();
        let mut basis = self.clone();
        for i in 0..n {
            if basis.cols() == n {
                break;
            }
            let e = Matrix::from_fn(n, 1, &ctx, |r, _| if r == i { F::one(&ctx) } else { F::zero(&ctx) });
            let candidate = basis.hstack(&e);
            if candidate.rank() == candidate.cols() {
                basis = candidate;
            }
        }
        basis
    }
}
