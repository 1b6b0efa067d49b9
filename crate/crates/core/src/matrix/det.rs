use super::Matrix;
use crate::error::{Error, Result};
use crate::ring::Domain;

impl<T: Domain> Matrix<T> {
    /// Exact determinant: fraction-free Bareiss elimination for ℤ, ℚ(β) and
    /// polynomial entries, ordinary elimination over ℚ and 𝔽_p.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if T::FRACTION_FREE {
            self.det_bareiss()
        } else {
            self.det_elimination()
        }
    }

    fn det_bareiss(&self) -> T {
        let n = self.rows();
        let ctx = self.context().clone();
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one(&ctx);
        for k in 0..n.saturating_sub(1) {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return T::zero(&ctx),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j).mul(m.get(k, k)).sub(&m.get(i, k).mul(m.get(k, j)));
                    let v = num.exact_div(&prev).expect("Bareiss division is exact");
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        let d = if n == 0 { T::one(&ctx) } else { m.get(n - 1, n - 1).clone() };
        if negate {
            d.neg()
        } else {
            d
        }
    }

    fn det_elimination(&self) -> T {
        let n = self.rows();
        let ctx = self.context().clone();
        let mut m = self.clone();
        let mut d = T::one(&ctx);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return T::zero(&ctx);
            };
            if p != k {
                m.swap_rows(p, k);
                d = d.neg();
            }
            let pivot = m.get(k, k).clone();
            d = d.mul(&pivot);
            for i in k + 1..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k).exact_div(&pivot).expect("field division").neg();
                m.add_row_multiple(i, k, &f);
            }
        }
        d
    }

    /// Transposed cofactor matrix, so that `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n();
        let ctx = self.context().clone();
        if n == 1 {
            return Matrix::identity(1, &ctx);
        }
        Matrix::from_fn(n, n, &ctx, |i, j| {
            let minor = Matrix::from_fn(n - 1, n - 1, &ctx, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self.get(rr, cc).clone()
            });
            let d = minor.det();
            if (i + j) % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
    }

    /// Inverse within the coefficient ring. Over ℤ this is the adjugate
    /// divided by `det ∈ {±1}`; over ℚ and 𝔽_p it is Gauss–Jordan.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        if T::FRACTION_FREE {
            let d = self.det();
            let d_inv = d
                .unit_inverse()
                .ok_or_else(|| Error::NotInvertibleInRing(format!("determinant {d:?} is not a unit")))?;
            Ok(self.adjugate().scale(&d_inv))
        } else {
            self.gauss_jordan_inverse()
                .ok_or_else(|| Error::NotInvertibleInRing("singular matrix".into()))
        }
    }

    fn gauss_jordan_inverse(&self) -> Option<Self> {
        let n = self.n();
        let ctx = self.context().clone();
        let mut m = self.clone();
        let mut inv = Matrix::identity(n, &ctx);
        for k in 0..n {
            let p = (k..n).find(|&i| !m.get(i, k).is_zero())?;
            m.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot_inv = T::one(&ctx).exact_div(m.get(k, k))?;
            m.scale_row(k, &pivot_inv);
            inv.scale_row(k, &pivot_inv);
            for i in 0..n {
                if i != k && !m.get(i, k).is_zero() {
                    let f = m.get(i, k).neg();
                    m.add_row_multiple(i, k, &f);
                    inv.add_row_multiple(i, k, &f);
                }
            }
        }
        Some(inv)
    }
}
