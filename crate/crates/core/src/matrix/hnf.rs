use num_integer::Integer as _;
use num_traits::Signed;

use super::Matrix;
use crate::error::{Error, Result};
use crate::ring::{ext_gcd, gcd_all, Integer, Ring};

/// Row-style Hermite normal form over ℤ: returns `(H, U)` with `U` unimodular
/// and `U·A = H`. `H` is in row echelon form with positive pivots and every
/// entry above a pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &Matrix<Integer>) -> (Matrix<Integer>, Matrix<Integer>) {
    let (h, u, _) = hnf_tracked(a);
    (h, u)
}

/// Like [`hermite_normal_form`] but also returns `U⁻¹`, accumulated
/// alongside `U` so no inversion is needed.
pub(crate) fn hnf_tracked(a: &Matrix<Integer>) -> (Matrix<Integer>, Matrix<Integer>, Matrix<Integer>) {
    let m = a.rows();
    let mut h = a.clone();
    let mut u = Matrix::identity(m, &());
    let mut u_inv = Matrix::identity(m, &());
    let mut r = 0;
    for c in 0..a.cols() {
        if r == m {
            break;
        }
        for i in r + 1..m {
            let b = h.get(i, c).clone();
            if b.is_zero() {
                continue;
            }
            let a_rc = h.get(r, c).clone();
            if !a_rc.is_zero() && (&b % &a_rc).is_zero() {
                let q = &b / &a_rc;
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-&q);
                u_inv.add_col_multiple(r, i, &q);
                continue;
            }
            let (g, x, y) = ext_gcd(&a_rc, &b);
            let (ag, bg) = (&a_rc / &g, &b / &g);
            combine_rows(&mut h, r, i, [&x, &y, &-&bg, &ag]);
            combine_rows(&mut u, r, i, [&x, &y, &-&bg, &ag]);
            combine_cols(&mut u_inv, r, i, [&ag, &bg, &-&y, &x]);
        }
        let pivot = h.get(r, c).clone();
        if pivot.is_zero() {
            continue;
        }
        if pivot.is_negative() {
            let minus = Integer::from(-1);
            h.scale_row(r, &minus);
            u.scale_row(r, &minus);
            u_inv.scale_col(r, &minus);
        }
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&pivot);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-&q);
                u_inv.add_col_multiple(r, i, &q);
            }
        }
        r += 1;
    }
    (h, u, u_inv)
}

/// Rows `(r, i) ← (k00·r + k01·i, k10·r + k11·i)`.
fn combine_rows(m: &mut Matrix<Integer>, r: usize, i: usize, k: [&Integer; 4]) {
    for j in 0..m.cols() {
        let (x, y) = (m.get(r, j).clone(), m.get(i, j).clone());
        m.set(r, j, k[0] * &x + k[1] * &y);
        m.set(i, j, k[2] * &x + k[3] * &y);
    }
}

/// Columns `(r, i) ← (k00·r + k01·i, k10·r + k11·i)`.
fn combine_cols(m: &mut Matrix<Integer>, r: usize, i: usize, k: [&Integer; 4]) {
    for row in 0..m.rows() {
        let (x, y) = (m.get(row, r).clone(), m.get(row, i).clone());
        m.set(row, r, k[0] * &x + k[1] * &y);
        m.set(row, i, k[2] * &x + k[3] * &y);
    }
}

/// A ℤ-basis (as columns) of `{z ∈ ℤ^cols : M·z = 0}`.
pub fn integer_kernel(m: &Matrix<Integer>) -> Matrix<Integer> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let zero_rows: Vec<usize> = (0..h.rows()).filter(|&i| h.row(i).iter().all(Ring::is_zero)).collect();
    Matrix::from_fn(m.cols(), zero_rows.len(), &(), |i, k| u.get(zero_rows[k], i).clone())
}

/// A unimodular matrix whose first column is the primitive vector `v`.
///
/// The remaining columns are reduced against `v` at its first nonzero
/// coordinate, so `(2, 3)` completes to `[[2, 1], [3, 2]]`.
pub fn complete_primitive_vector(v: &[Integer]) -> Result<Matrix<Integer>> {
    let g = gcd_all(v);
    if !Ring::is_one(&g) {
        return Err(Error::NotPrimitive(g.to_string()));
    }
    let (_, _, mut p) = hnf_tracked(&Matrix::column(v, &()));
    let k = v.iter().position(|x| !x.is_zero()).expect("primitive vectors are nonzero");
    let vk = &v[k];
    for j in 1..v.len() {
        let e = p.get(k, j).clone();
        let rem = e.mod_floor(&vk.abs());
        let q = (&e - &rem) / vk;
        p.add_col_multiple(j, 0, &-q);
    }
    debug_assert_eq!(p.col(0), v);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_unimodular(m: &Matrix<Integer>) -> bool {
        num_traits::One::is_one(m.det().magnitude())
    }

    fn assert_hnf(a: &Matrix<Integer>) {
        let (h, u) = hermite_normal_form(a);
        assert!(is_unimodular(&u));
        assert_eq!(u.mul(a), h);
        let (_, _, u_inv) = hnf_tracked(a);
        assert!(u.mul(&u_inv).is_identity());
        // echelon shape with positive, reduced pivots
        let mut last_pivot: Option<usize> = None;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) {
                Some(p) => {
                    assert!(last_pivot.is_none_or(|lp| p > lp), "echelon order");
                    assert!(h.get(i, p).is_positive());
                    for above in 0..i {
                        let e = h.get(above, p);
                        assert!(!e.is_negative() && e < h.get(i, p));
                    }
                    last_pivot = Some(p);
                }
                None => last_pivot = Some(usize::MAX - 1),
            }
        }
    }

    #[test]
    fn hnf_examples() {
        let id = Matrix::<Integer>::identity(3, &());
        assert_eq!(hermite_normal_form(&id), (id.clone(), id.clone()));
        let d = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(hermite_normal_form(&d).0, d);
        let (h, _) = hermite_normal_form(&Matrix::from_i64(&[&[2], &[3]]));
        assert_eq!(h, Matrix::from_i64(&[&[1], &[0]]));
        assert_hnf(&Matrix::from_i64(&[&[4, 6, 2], &[-3, 9, 0], &[8, 12, 4]]));
        assert_hnf(&Matrix::from_i64(&[&[0, 0], &[0, -5], &[0, 10]]));
    }

    #[test]
    fn completion_examples() {
        assert!(complete_primitive_vector(&[Integer::from(1), 0.into(), 0.into()])
            .unwrap()
            .is_identity());
        assert_eq!(
            complete_primitive_vector(&[2.into(), 3.into()]).unwrap(),
            Matrix::from_i64(&[&[2, 1], &[3, 2]])
        );
        assert_eq!(
            complete_primitive_vector(&[2.into(), 4.into()]),
            Err(Error::NotPrimitive("2".into()))
        );
    }

    #[test]
    fn kernel_basis() {
        let m = Matrix::from_i64(&[&[2, 4, -6], &[1, 2, -3]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        // saturated: (−2, 1, 0) and (3, 0, 1) must be integer combinations
        let (h, _) = hermite_normal_form(&k.transpose());
        assert_eq!(h.get(0, 0), &Integer::from(1));
    }

    proptest! {
        #[test]
        fn hnf_random(entries in prop::collection::vec(-9i64..10, 12)) {
            let a = Matrix::from_fn(4, 3, &(), |i, j| Integer::from(entries[i * 3 + j]));
            assert_hnf(&a);
        }

        #[test]
        fn completion_random(v in prop::collection::vec(-30i64..30, 2..6)) {
            let v: Vec<Integer> = v.into_iter().map(Integer::from).collect();
            match complete_primitive_vector(&v) {
                Ok(p) => {
                    prop_assert!(is_unimodular(&p));
                    prop_assert_eq!(p.col(0), v);
                }
                Err(e) => prop_assert!(matches!(e, Error::NotPrimitive(_)) && !gcd_all(&v).is_one()),
            }
        }
    }
}
