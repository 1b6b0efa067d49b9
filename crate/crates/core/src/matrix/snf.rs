use super::Matrix;
use crate::ring::Euclidean;

/// `U·A·V = D` with `D` diagonal, `d_i | d_{i+1}`, each `d_i` the canonical
/// associate (nonnegative over ℤ, monic over K[x]).
#[derive(Debug, Clone, PartialEq)]
pub struct SmithForm<E: Euclidean> {
    pub d: Matrix<E>,
    pub u: Matrix<E>,
    pub v: Matrix<E>,
}

impl<E: Euclidean> SmithForm<E> {
    pub fn diagonal(&self) -> Vec<E> {
        self.d.diagonal()
    }
}

/// Smith normal form over a Euclidean domain.
///
/// The pivot at each stage is the nonzero entry of least Euclidean norm in
/// the trailing block, ties going to the lowest row and then lowest column.
pub fn smith_normal_form<E: Euclidean>(a: &Matrix<E>) -> SmithForm<E> {
    let (rows, cols) = (a.rows(), a.cols());
    let ctx = a.context().clone();
    let mut d = a.clone();
    let mut u = Matrix::identity(rows, &ctx);
    let mut v = Matrix::identity(cols, &ctx);

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = select_pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, t).div_rem_euclid(&pivot);
                d.add_row_multiple(i, t, &q.neg());
                u.add_row_multiple(i, t, &q.neg());
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(t, j).div_rem_euclid(&pivot);
                d.add_col_multiple(j, t, &q.neg());
                v.add_col_multiple(j, t, &q.neg());
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // row and column are clear; enforce divisibility of the rest
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| d.get(i, j).exact_div(&pivot).is_none())
            });
            match offender {
                Some(i) => {
                    let one = E::one(&ctx);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        let unit = d.get(t, t).normalizing_unit();
        if !unit.is_one() {
            d.scale_row(t, &unit);
            u.scale_row(t, &unit);
        }
    }
    SmithForm { d, u, v }
}

fn select_pivot<E: Euclidean>(m: &Matrix<E>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.norm() < m.get(bi, bj).norm()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat, Integer, Poly, Rational};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn check<E: Euclidean>(a: &Matrix<E>, s: &SmithForm<E>) {
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.det().is_unit());
        assert!(s.v.det().is_unit());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_zero() || w[1].exact_div(&w[0]).is_some(), "divisibility chain");
        }
    }

    #[test]
    fn integer_examples() {
        let a = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);

        let z = Matrix::<Integer>::zeros(3, 3, &());
        let s = smith_normal_form(&z);
        assert!(s.d.is_zero() && s.u.is_identity() && s.v.is_identity());
    }

    #[test]
    fn companion_resolvent_over_q_x() {
        // xI - C for C = [[0, 1], [1, 0]], the companion of x^2 - 1
        let q = |c: &[i64]| Poly::new(c.iter().map(|&v| rat(v, 1)).collect::<Vec<Rational>>(), ());
        let a = Matrix::from_rows(vec![vec![q(&[0, 1]), q(&[-1])], vec![q(&[-1]), q(&[0, 1])]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![q(&[1]), q(&[-1, 0, 1])]);
    }

    proptest! {
        #[test]
        fn integer_snf_random(entries in prop::collection::vec(-12i64..13, 12)) {
            let a = Matrix::from_fn(3, 4, &(), |i, j| int(entries[i * 4 + j]));
            let s = smith_normal_form(&a);
            check(&a, &s);
            prop_assert!(s.diagonal().iter().all(|x| !x.is_negative()));
        }
    }
}
