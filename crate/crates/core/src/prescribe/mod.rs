//! Constructive diagonal prescription.

mod decide;
mod zsim;

pub use decide::{decide_2x2, BinaryForm, Candidate2x2, Decision2x2, FormOutcome, Verdict2x2};
pub use zsim::{good_vector_search, minor_gcd, prescribe_zsim, GOOD_VECTOR_CAP};

use crate::canonical::frobenius_form;
use crate::error::{Error, Result};
use crate::matrix::{ElementaryConj, Matrix, SimilarityCertificate};
use crate::ring::{gcd_all, Field, Integer, Rational, Ring, RingTag, Scalar};

/// Prescribed diagonal `(γ₁, …, γₙ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalTarget<T: Ring> {
    pub gamma: Vec<T>,
}

impl<T: Ring> DiagonalTarget<T> {
    pub fn new(gamma: Vec<T>) -> Self {
        DiagonalTarget { gamma }
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// Length must be `n` and the entries must sum to `tr A`.
    pub fn check(&self, a: &Matrix<T>) -> Result<()>
    where
        T: std::fmt::Display,
    {
        if !a.is_square() || self.gamma.len() != a.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} target entries for a {}x{} matrix",
                self.gamma.len(),
                a.rows(),
                a.cols()
            )));
        }
        let sum = self
            .gamma
            .iter()
            .fold(T::zero(a.context()), |acc, g| acc.add(g));
        let trace = a.trace();
        if sum != trace {
            return Err(Error::TargetTraceMismatch {
                target: sum.to_string(),
                trace: trace.to_string(),
            });
        }
        Ok(())
    }
}

/// The ideal generated by `a_ii - a_jj` and `a_ij` (`i ≠ j`) over ℤ.
#[derive(Debug, Clone, PartialEq)]
pub struct NonscalarityIdeal {
    /// Nonnegative generator; `0` exactly when `A` is scalar.
    pub generator: Integer,
    /// Diagonal differences for `i < j`, then off-diagonal entries row by row.
    pub generators: Vec<Integer>,
}

impl NonscalarityIdeal {
    pub fn is_unit(&self) -> bool {
        Ring::is_one(&self.generator)
    }
}

pub fn nonscalarity_ideal(a: &Matrix<Integer>) -> NonscalarityIdeal {
    let n = a.n();
    let mut generators = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            generators.push(a.get(i, i) - a.get(j, j));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                generators.push(a.get(i, j).clone());
            }
        }
    }
    NonscalarityIdeal {
        generator: gcd_all(&generators),
        generators,
    }
}

/// Whether `A` reduces to a scalar matrix modulo `m`.
pub fn is_scalar_mod(a: &Matrix<Integer>, m: &Integer) -> Result<bool> {
    if *m < Integer::from(2) {
        return Err(Error::InvalidArgument(format!("modulus {m} must be at least 2")));
    }
    Ok(nonscalarity_ideal(a)
        .generators
        .iter()
        .all(|g| (g % m).is_zero()))
}

/// Off-diagonal unit inside the trailing block starting at `k`: `(k, k+1)`
/// if possible, otherwise the first in row-major order.
fn find_unit<T: Ring>(b: &Matrix<T>, k: usize) -> Option<(usize, usize)> {
    let n = b.n();
    if k + 1 < n && b.get(k, k + 1).is_unit() {
        return Some((k, k + 1));
    }
    (k..n)
        .flat_map(|i| (k..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && b.get(i, j).is_unit())
}

/// Prescribes the diagonal of a matrix that has an off-diagonal unit, using
/// only elementary conjugations over its own ring.
///
/// At each index `k` the unit is moved to `(k, k+1)` and scaled to 1, a
/// transvection plants a 1 at `(k+2, k+1)` for the next round, and a second
/// transvection sets `(k, k)` to `γ_k`. The last entry follows from the trace.
pub fn prescribe_with_unit<T: Scalar>(
    b0: &Matrix<T>,
    target: &DiagonalTarget<T>,
) -> Result<SimilarityCertificate<T>> {
    target.check(b0)?;
    let n = b0.n();
    let ctx = b0.context().clone();
    let tag = T::native_tag(&ctx);
    let mut cert = SimilarityCertificate::identity(b0, tag, tag);
    let one = T::one(&ctx);
    for k in 0..n.saturating_sub(1) {
        if cert.b.diagonal()[k..] == target.gamma[k..] {
            break;
        }
        let (r, c) = find_unit(&cert.b, k).ok_or(Error::NoUnitOffDiagonal)?;
        if (r, c) != (k, k + 1) {
            let mut order: Vec<usize> = (0..k).collect();
            order.push(r);
            order.push(c);
            order.extend((k..n).filter(|&x| x != r && x != c));
            let mut perm = vec![0; n];
            for (pos, &old) in order.iter().enumerate() {
                perm[old] = pos;
            }
            cert.push(ElementaryConj::Permutation(perm));
        }
        let u = cert.b.get(k, k + 1).clone();
        if !u.is_one() {
            let mut units = vec![one.clone(); n];
            units[k] = u.unit_inverse().expect("unit located above");
            cert.push(ElementaryConj::DiagonalUnit(units));
        }
        if k + 2 < n {
            let s = one.sub(cert.b.get(k + 2, k + 1));
            if !s.is_zero() {
                cert.push(ElementaryConj::Transvection { i: k + 2, j: k, t: s });
            }
        }
        let t = cert.b.get(k, k).sub(&target.gamma[k]);
        if !t.is_zero() {
            cert.push(ElementaryConj::Transvection { i: k + 1, j: k, t });
        }
    }
    debug_assert_eq!(cert.b.diagonal(), target.gamma);
    Ok(cert)
}

/// A vector `v` with `v, Av` independent, for non-scalar `A`.
fn non_eigenvector<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.n();
    let ctx = a.context().clone();
    let e = |idx: &[usize]| Matrix::from_fn(n, 1, &ctx, |r, _| if idx.contains(&r) { F::one(&ctx) } else { F::zero(&ctx) });
    if let Some(i) = (0..n).find(|&i| (0..n).any(|r| r != i && !a.get(r, i).is_zero())) {
        return Some(e(&[i]));
    }
    // diagonal: combine two distinct eigenvalues
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i, i) != a.get(j, j))
        .map(|(i, j)| e(&[i, j]))
}

/// Prescribed diagonal over a field for any non-scalar matrix.
pub fn fillmore_field<F: Field + Scalar>(
    a: &Matrix<F>,
    target: &DiagonalTarget<F>,
) -> Result<SimilarityCertificate<F>> {
    target.check(a)?;
    if a.is_scalar() {
        return Err(Error::ScalarMatrix);
    }
    let v = non_eigenvector(a).ok_or(Error::ScalarMatrix)?;
    let shifted = a.sub(&Matrix::scalar(a.n(), &target.gamma[0]));
    let w = shifted.mul(&v);
    let p = v.hstack(&w).complete_basis();
    let p_inv = p.inverse()?;
    let b0 = p_inv.mul(a).mul(&p);
    let tag = F::native_tag(a.context());
    let base = SimilarityCertificate {
        g: p_inv,
        g_inv: p,
        b: b0.clone(),
        conj_ring: tag,
        entry_ring: tag,
        steps: None,
    };
    Ok(base.compose(prescribe_with_unit(&b0, target)?))
}

/// Integer matrix to an integer result with the prescribed diagonal, using a
/// rational conjugator: through the rational canonical form, whose entries
/// are forced to be integers.
pub fn prescribe_ksim_integral(
    a: &Matrix<Integer>,
    target: &DiagonalTarget<Integer>,
    seed: u64,
) -> Result<SimilarityCertificate<Rational>> {
    target.check(a)?;
    if a.is_scalar() {
        return Err(Error::ScalarMatrix);
    }
    let frob = frobenius_form(&a.to_rational(), seed)?;
    let rcf = frob.rcf.to_integer().ok_or_else(|| {
        Error::IntegralityViolation(format!("rational canonical form has non-integer entries:\n{}", frob.rcf))
    })?;
    let inner = prescribe_with_unit(&rcf, target).map_err(|e| match e {
        Error::NoUnitOffDiagonal => Error::Defect("non-scalar canonical form without a companion unit".into()),
        other => other,
    })?;
    let mut lifted = inner.map(&(), |x| Rational::from_integer(x.clone()));
    lifted.conj_ring = RingTag::Q;
    lifted.entry_ring = RingTag::Z;
    let mut outer = frob.transform;
    outer.conj_ring = RingTag::Q;
    outer.entry_ring = RingTag::Z;
    Ok(outer.compose(lifted))
}
