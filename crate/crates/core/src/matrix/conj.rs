use super::Matrix;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// An elementary similarity `A ↦ E·A·E⁻¹`. Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementaryConj<T: Ring> {
    /// `E = I + t·E_ij`, `i ≠ j`.
    Transvection { i: usize, j: usize, t: T },
    /// `E·e_k = e_{perm[k]}`.
    Permutation(Vec<usize>),
    /// `E = diag(units)`.
    DiagonalUnit(Vec<T>),
}

impl<T: Ring> ElementaryConj<T> {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            ElementaryConj::Transvection { i, j, .. } => {
                if i == j || *i >= n || *j >= n {
                    return Err(Error::DimensionMismatch(format!(
                        "transvection indices ({i}, {j}) invalid for n = {n}"
                    )));
                }
            }
            ElementaryConj::Permutation(perm) => {
                let mut seen = vec![false; n];
                if perm.len() != n || !perm.iter().all(|&k| k < n && !std::mem::replace(&mut seen[k], true)) {
                    return Err(Error::DimensionMismatch(format!("{perm:?} is not a permutation of 0..{n}")));
                }
            }
            ElementaryConj::DiagonalUnit(units) => {
                if units.len() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "{} diagonal entries for n = {n}",
                        units.len()
                    )));
                }
                if let Some(u) = units.iter().find(|u| !u.is_unit()) {
                    return Err(Error::ParameterNotInRing(format!("{u:?} is not a unit")));
                }
            }
        }
        Ok(())
    }

    /// The matrix `E`.
    pub fn matrix(&self, n: usize, ctx: &T::Ctx) -> Matrix<T> {
        match self {
            ElementaryConj::Transvection { i, j, t } => {
                let mut e = Matrix::identity(n, ctx);
                e.set(*i, *j, t.clone());
                e
            }
            ElementaryConj::Permutation(perm) => Matrix::from_fn(n, n, ctx, |r, c| {
                if perm[c] == r {
                    T::one(ctx)
                } else {
                    T::zero(ctx)
                }
            }),
            ElementaryConj::DiagonalUnit(units) => Matrix::diag(units, ctx),
        }
    }

    /// The inverse conjugation, of the same kind.
    pub fn inverse(&self) -> Self {
        match self {
            ElementaryConj::Transvection { i, j, t } => ElementaryConj::Transvection {
                i: *i,
                j: *j,
                t: t.neg(),
            },
            ElementaryConj::Permutation(perm) => {
                let mut inv = vec![0; perm.len()];
                for (k, &p) in perm.iter().enumerate() {
                    inv[p] = k;
                }
                ElementaryConj::Permutation(inv)
            }
            ElementaryConj::DiagonalUnit(units) => ElementaryConj::DiagonalUnit(
                units
                    .iter()
                    .map(|u| u.unit_inverse().expect("validated unit"))
                    .collect(),
            ),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            ElementaryConj::Transvection { t, .. } => t.is_zero(),
            ElementaryConj::Permutation(perm) => perm.iter().enumerate().all(|(k, &p)| k == p),
            ElementaryConj::DiagonalUnit(units) => units.iter().all(Ring::is_one),
        }
    }

    /// `E·A·E⁻¹` by row and column operations, without forming `E`.
    pub(crate) fn conjugate(&self, a: &Matrix<T>) -> Matrix<T> {
        let n = a.n();
        let mut b = a.clone();
        match self {
            ElementaryConj::Transvection { i, j, t } => {
                b.add_row_multiple(*i, *j, t);
                b.add_col_multiple(*j, *i, &t.neg());
            }
            ElementaryConj::Permutation(perm) => {
                for r in 0..n {
                    for c in 0..n {
                        b.set(perm[r], perm[c], a.get(r, c).clone());
                    }
                }
            }
            ElementaryConj::DiagonalUnit(units) => {
                for (k, u) in units.iter().enumerate() {
                    b.scale_row(k, u);
                    b.scale_col(k, &u.unit_inverse().expect("validated unit"));
                }
            }
        }
        b
    }
}

/// `E·A·E⁻¹` for an elementary `E`, after checking its parameters.
pub fn apply_conj<T: Ring>(a: &Matrix<T>, e: &ElementaryConj<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("conjugation of a non-square matrix".into()));
    }
    e.validate(a.n())?;
    Ok(e.conjugate(a))
}
