//! Characteristic and minimal polynomials, invariant factors and the
//! rational canonical form with an explicit transformation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, Matrix, SimilarityCertificate};
use crate::ring::{Field, MonicPoly, Poly, Ring, RingTag, Scalar};

/// Candidate cap for the maximal-vector search in [`frobenius_form`].
pub const MAX_VECTOR_CANDIDATES: usize = 10_000;

/// `det(xI - A)` by Berkowitz's algorithm. No divisions, so any
/// commutative ring works.
pub fn charpoly<T: Ring>(a: &Matrix<T>) -> MonicPoly<T> {
    assert!(a.is_square(), "charpoly of a non-square matrix");
    let n = a.n();
    let ctx = a.context().clone();
    // highest degree first while accumulating
    let mut p = vec![T::one(&ctx)];
    for k in 1..=n {
        let m = k - 1;
        let mut t = Vec::with_capacity(k + 1);
        t.push(T::one(&ctx));
        t.push(a.get(m, m).neg());
        let mut c: Vec<T> = (0..m).map(|i| a.get(i, m).clone()).collect();
        for _ in 0..m {
            let rc = (0..m).fold(T::zero(&ctx), |acc, j| acc.add(&a.get(m, j).mul(&c[j])));
            t.push(rc.neg());
            c = (0..m)
                .map(|i| (0..m).fold(T::zero(&ctx), |acc, j| acc.add(&a.get(i, j).mul(&c[j]))))
                .collect();
        }
        let next = (0..=k)
            .map(|i| {
                (0..=i.min(k - 1)).fold(T::zero(&ctx), |acc, j| acc.add(&t[i - j].mul(&p[j])))
            })
            .collect();
        p = next;
    }
    p.reverse();
    MonicPoly::new(Poly::new(p, ctx)).expect("Berkowitz output is monic")
}

/// The companion matrix of `f`: ones on the subdiagonal, `-f_0, …, -f_{d-1}`
/// down the last column.
pub fn companion<T: Ring>(f: &MonicPoly<T>) -> Matrix<T> {
    let d = f.degree();
    let ctx = f.poly().context().clone();
    Matrix::from_fn(d, d, &ctx, |i, j| {
        if j == d - 1 {
            f.coeffs()[i].neg()
        } else if i == j + 1 {
            T::one(&ctx)
        } else {
            T::zero(&ctx)
        }
    })
}

fn basis_vector<F: Field>(n: usize, i: usize, ctx: &F::Ctx) -> Matrix<F> {
    Matrix::from_fn(n, 1, ctx, |r, _| if r == i { F::one(ctx) } else { F::zero(ctx) })
}

/// Monic generator of `{f : f(A)v = 0}` for a column vector `v`.
pub fn krylov_annihilator<F: Field>(a: &Matrix<F>, v: &Matrix<F>) -> MonicPoly<F> {
    let ctx = a.context().clone();
    let mut basis: Option<Matrix<F>> = None;
    let mut w = v.clone();
    loop {
        match &basis {
            None if w.is_zero() => return MonicPoly::from_lower(Vec::new(), ctx),
            Some(k) => {
                if let Some(c) = k.solve(&w) {
                    let lower = c.col(0).iter().map(Ring::neg).collect();
                    return MonicPoly::from_lower(lower, ctx);
                }
            }
            None => {}
        }
        basis = Some(match basis {
            None => w.clone(),
            Some(k) => k.hstack(&w),
        });
        w = a.mul(&w);
    }
}

/// The minimal polynomial: lcm of the annihilators of the standard basis.
pub fn minpoly<F: Field>(a: &Matrix<F>) -> MonicPoly<F> {
    let n = a.n();
    let ctx = a.context().clone();
    let m = (0..n).fold(Poly::one(&ctx), |acc, i| {
        acc.lcm(krylov_annihilator(a, &basis_vector(n, i, &ctx)).poly())
    });
    MonicPoly::new(m).expect("lcm is monic")
}

/// `xI - A` over `K[x]`.
pub fn char_matrix<F: Field>(a: &Matrix<F>) -> Matrix<Poly<F>> {
    let ctx = a.context().clone();
    Matrix::from_fn(a.n(), a.n(), &ctx, |i, j| {
        if i == j {
            Poly::linear(a.get(i, i))
        } else {
            Poly::constant(a.get(i, j).neg())
        }
    })
}

/// Nonconstant diagonal entries of the Smith form of `xI - A`, monic and in
/// divisibility order.
pub fn invariant_factors<F: Field>(a: &Matrix<F>) -> Vec<MonicPoly<F>> {
    smith_normal_form(&char_matrix(a))
        .diagonal()
        .into_iter()
        .filter(|d| d.degree().is_some_and(|k| k > 0))
        .map(|d| MonicPoly::new(d.monic()).expect("monic"))
        .collect()
}

/// Whether every coefficient of `f` lies in the subring named by `tag`.
pub fn monic_divisor_integrality<T: Scalar>(f: &MonicPoly<T>, tag: RingTag) -> bool {
    f.coeffs().iter().all(|c| c.in_ring(tag))
}

/// Rational canonical form `g·A·g⁻¹ = ⊕ C(f_i)` with `f_1 | f_2 | …`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusForm<F: Field> {
    pub blocks: Vec<MonicPoly<F>>,
    pub rcf: Matrix<F>,
    pub transform: SimilarityCertificate<F>,
}

/// Rational canonical form by repeated cyclic splitting.
///
/// Each round picks a vector whose annihilator is the minimal polynomial,
/// takes its Krylov subspace, and splits off an invariant complement as the
/// kernel of the projection commuting with `A` onto that subspace.
pub fn frobenius_form<F: Field + Scalar>(a: &Matrix<F>, seed: u64) -> Result<FrobeniusForm<F>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("frobenius_form needs a square matrix".into()));
    }
    let ctx = a.context().clone();
    let tag = F::native_tag(&ctx);
    if a.n() == 0 {
        return Ok(FrobeniusForm {
            blocks: Vec::new(),
            rcf: a.clone(),
            transform: SimilarityCertificate::identity(a, tag, tag),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (blocks, s) = decompose(a, &mut rng)?;
    let rcf = blocks
        .iter()
        .map(companion)
        .reduce(|acc, c| acc.direct_sum(&c))
        .expect("at least one block");
    let g = s.inverse()?;
    let transform = SimilarityCertificate {
        g,
        g_inv: s,
        b: rcf.clone(),
        conj_ring: tag,
        entry_ring: tag,
        steps: None,
    };
    Ok(FrobeniusForm { blocks, rcf, transform })
}

/// Returns the blocks and a basis `S` (as columns) with `A·S = S·rcf`.
fn decompose<F: Field>(a: &Matrix<F>, rng: &mut ChaCha8Rng) -> Result<(Vec<MonicPoly<F>>, Matrix<F>)> {
    let n = a.n();
    let m = minpoly(a);
    let d = m.degree();
    let v = maximal_vector(a, d, rng)?;
    let mut kv = v.clone();
    let mut w = v;
    for _ in 1..d {
        w = a.mul(&w);
        kv = kv.hstack(&w);
    }
    if d == n {
        return Ok((vec![m], kv));
    }
    let x = complement_projection(a, &kv, &companion(&m))?;
    let nb = x.nullspace();
    let s0 = nb.hstack(&kv);
    let a0 = s0.inverse()?.mul(a).mul(&s0);
    let rest = a0.submatrix(0, n - d, 0, n - d);
    let (mut blocks, s_rest) = decompose(&rest, rng)?;
    blocks.push(m);
    Ok((blocks, nb.mul(&s_rest).hstack(&kv)))
}

/// Solves `X·A = C·X`, `X·K = I` for the `d×n` matrix `X`. Then `K·X` is an
/// idempotent commuting with `A` whose image is the Krylov span and whose
/// kernel is an invariant complement.
fn complement_projection<F: Field>(a: &Matrix<F>, kv: &Matrix<F>, c: &Matrix<F>) -> Result<Matrix<F>> {
    let (n, d) = (a.n(), kv.cols());
    let ctx = a.context().clone();
    let unknowns = d * n;
    let idx = |r: usize, k: usize| r * n + k;
    let mut sys: Matrix<F> = Matrix::zeros(d * n + d * d, unknowns, &ctx);
    let mut rhs = Matrix::zeros(d * n + d * d, 1, &ctx);
    for r in 0..d {
        for col in 0..n {
            let eq = r * n + col;
            for k in 0..n {
                let coef = sys.get(eq, idx(r, k)).add(a.get(k, col));
                sys.set(eq, idx(r, k), coef);
            }
            for k in 0..d {
                let coef = sys.get(eq, idx(k, col)).sub(c.get(r, k));
                sys.set(eq, idx(k, col), coef);
            }
        }
    }
    for r in 0..d {
        for s in 0..d {
            let eq = d * n + r * d + s;
            for k in 0..n {
                sys.set(eq, idx(r, k), kv.get(k, s).clone());
            }
            if r == s {
                rhs.set(eq, 0, F::one(&ctx));
            }
        }
    }
    let sol = sys
        .solve(&rhs)
        .ok_or_else(|| Error::Defect("no invariant complement for a maximal vector".into()))?;
    Ok(Matrix::from_fn(d, n, &ctx, |r, k| sol.get(idx(r, k), 0).clone()))
}

/// A vector whose Krylov annihilator has degree `d` (the minimal polynomial
/// degree). Tries standard vectors, pairwise sums, small boxes, then seeded
/// random vectors.
fn maximal_vector<F: Field>(a: &Matrix<F>, d: usize, rng: &mut ChaCha8Rng) -> Result<Matrix<F>> {
    let n = a.n();
    let ctx = a.context().clone();
    let tried = std::cell::Cell::new(0usize);
    let check = |entries: &[i64]| -> Option<Matrix<F>> {
        tried.set(tried.get() + 1);
        let v = Matrix::from_fn(n, 1, &ctx, |i, _| F::from_i64(&ctx, entries[i]));
        (!v.is_zero() && krylov_annihilator(a, &v).degree() == d).then_some(v)
    };
    let cap_hit = || tried.get() >= MAX_VECTOR_CANDIDATES;

    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if let Some(v) = check(&e) {
            return Ok(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = vec![0; n];
            e[i] = 1;
            e[j] = 1;
            if let Some(v) = check(&e) {
                return Ok(v);
            }
        }
    }
    for k in 1..=2i64 {
        let mut e = vec![-k; n];
        loop {
            if let Some(v) = check(&e) {
                return Ok(v);
            }
            if cap_hit() {
                return Err(Error::DecompositionSearchExhausted(tried.get()));
            }
            // odometer, first coordinate most significant
            let Some(pos) = (0..n).rev().find(|&p| e[p] < k) else {
                break;
            };
            e[pos] += 1;
            for x in e.iter_mut().skip(pos + 1) {
                *x = -k;
            }
        }
    }
    let r = (n * n) as i64;
    while !cap_hit() {
        let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-r..=r)).collect();
        if let Some(v) = check(&e) {
            return Ok(v);
        }
    }
    Err(Error::DecompositionSearchExhausted(tried.get()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::verify_certificate;
    use crate::ring::{int, rat, CubicElem, Fp, Integer, PrimeField, Rational};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64(rows).to_rational()
    }

    fn qpoly(lower: &[i64]) -> MonicPoly<Rational> {
        MonicPoly::from_lower(lower.iter().map(|&c| rat(c, 1)).collect(), ())
    }

    /// Sum of principal minors of size k, the oracle for charpoly coefficients.
    fn principal_minor_sum<T: crate::ring::Domain>(a: &Matrix<T>, k: usize) -> T {
        let n = a.n();
        let ctx = a.context().clone();
        let mut total = T::zero(&ctx);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let sub = Matrix::from_fn(k, k, &ctx, |i, j| a.get(idx[i], idx[j]).clone());
            total = total.add(&if k == 0 { T::one(&ctx) } else { sub.det() });
        }
        total
    }

    fn charpoly_by_minors<T: crate::ring::Domain>(a: &Matrix<T>) -> Vec<T> {
        // coefficient of x^{n-k} is (-1)^k e_k
        let n = a.n();
        let mut lower = vec![T::zero(a.context()); n + 1];
        for k in 0..=n {
            let e = principal_minor_sum(a, k);
            lower[n - k] = if k % 2 == 0 { e } else { e.neg() };
        }
        lower
    }

    fn brewer() -> Matrix<CubicElem> {
        let e = CubicElem::from_ints;
        Matrix::from_rows(vec![
            vec![e(0, 0, 0), e(2, 0, 0), e(0, 2, 0)],
            vec![e(0, 4, 0), e(0, 0, 0), e(4, 0, 0)],
            vec![e(4, 0, 0), e(0, 2, 0), e(0, 0, 0)],
        ])
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly(&q(&[&[1, 0], &[0, 1]])), qpoly(&[1, -2]));
        let f = qpoly(&[3, 0, -7, 2]);
        assert_eq!(charpoly(&companion(&f)), f);
        let chi = charpoly(&brewer());
        let alpha = CubicElem::alpha();
        let expected = MonicPoly::from_lower(
            vec![CubicElem::from_ints(-64, 0, 0), alpha.scale(&rat(-12, 1)), CubicElem::from_ints(0, 0, 0)],
            (),
        );
        assert_eq!(chi, expected);
        assert_eq!(chi.coeffs(), charpoly_by_minors(&brewer()).as_slice());
    }

    #[test]
    fn charpoly_over_integers_matches_minor_oracle() {
        let a = Matrix::from_i64(&[&[2, -1, 0, 3], &[1, 4, -2, 0], &[0, 5, 1, 1], &[-3, 0, 2, 2]]);
        assert_eq!(charpoly(&a).coeffs(), charpoly_by_minors(&a).as_slice());
    }

    #[test]
    fn minpoly_examples() {
        let lam = rat(3, 2);
        assert_eq!(minpoly(&Matrix::scalar(3, &lam)), MonicPoly::from_lower(vec![-lam], ()));
        assert_eq!(minpoly(&q(&[&[0, 1], &[1, 0]])), qpoly(&[-1, 0]));
        // x² − 2β²x − 16β
        let m = minpoly(&brewer());
        let expected = MonicPoly::from_lower(
            vec![CubicElem::from_ints(0, -16, 0), CubicElem::from_ints(0, 0, -2)],
            (),
        );
        assert_eq!(m, expected);
        assert!(brewer().eval_poly(m.coeffs()).is_zero());
    }

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(invariant_factors(&q(&[&[1, 0], &[0, 1]])), vec![qpoly(&[-1]), qpoly(&[-1])]);
        assert_eq!(invariant_factors(&q(&[&[0, 1], &[1, 0]])), vec![qpoly(&[-1, 0])]);
        // (x-1)(x-2)
        assert_eq!(invariant_factors(&q(&[&[1, 0], &[0, 2]])), vec![qpoly(&[2, -3])]);
    }

    #[test]
    fn frobenius_examples() {
        let c = companion(&qpoly(&[-1, 0, 0]));
        let f = frobenius_form(&c, 0).unwrap();
        assert_eq!(f.rcf, c);
        assert!(f.transform.g.is_identity());

        let a = q(&[&[1, 2], &[4, 3]]);
        let f = frobenius_form(&a, 0).unwrap();
        assert_eq!(f.blocks, vec![qpoly(&[-5, -4])]);
        assert_eq!(f.rcf, q(&[&[0, 5], &[1, 4]]));
        assert!(verify_certificate(&a, &f.transform));

        let id = q(&[&[1, 0], &[0, 1]]);
        let f = frobenius_form(&id, 0).unwrap();
        assert_eq!(f.rcf, id);
        assert_eq!(f.blocks, vec![qpoly(&[-1]), qpoly(&[-1])]);
    }

    #[test]
    fn frobenius_mixed_blocks() {
        // diag(2,2,3) ⊕ J_2(3): invariant factors (x-2)(x-3) and (x-2)(x-3)²
        let a = q(&[
            &[2, 0, 0, 0, 0],
            &[0, 2, 0, 0, 0],
            &[0, 0, 3, 0, 0],
            &[0, 0, 0, 3, 1],
            &[0, 0, 0, 0, 3],
        ]);
        let f = frobenius_form(&a, 0).unwrap();
        assert_eq!(f.blocks, invariant_factors(&a));
        assert_eq!(f.blocks.len(), 2);
        assert!(verify_certificate(&a, &f.transform));
    }

    #[test]
    fn integrality_examples() {
        assert!(monic_divisor_integrality(&qpoly(&[-5]), RingTag::Z));
        assert!(!monic_divisor_integrality(&MonicPoly::from_lower(vec![rat(1, 2)], ()), RingTag::Z));
        let m = minpoly(&brewer());
        assert!(!monic_divisor_integrality(&m, RingTag::ZAlpha));
        assert!(monic_divisor_integrality(&charpoly(&brewer()), RingTag::ZAlpha));
    }

    #[test]
    fn works_over_prime_fields() {
        let f2 = PrimeField::from_u64(2).unwrap();
        let a = Matrix::from_fn(3, 3, &f2, |i, j| f2.elem_i64(((i * 3 + j) % 2) as i64));
        let ff = frobenius_form(&a, 1).unwrap();
        assert!(verify_certificate(&a, &ff.transform));
        assert_eq!(ff.blocks, invariant_factors(&a));
    }

    fn int_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = Matrix<Integer>> {
        (1..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec(-bound..=bound, n * n).prop_map(move |v| {
                Matrix::from_fn(n, n, &(), |i, j| int(v[i * n + j]))
            })
        })
    }

    fn fp_matrix(max_n: usize) -> impl Strategy<Value = Matrix<Fp>> {
        (prop::sample::select(vec![2u64, 3, 5, 7, 101]), 1..=max_n).prop_flat_map(|(p, n)| {
            proptest::collection::vec(0..p, n * n).prop_map(move |v| {
                let f = PrimeField::from_u64(p).unwrap();
                Matrix::from_fn(n, n, &f, |i, j| f.elem_i64(v[i * n + j] as i64))
            })
        })
    }

    /// `I, A, …, A^{d-1}` linearly independent, so no monic polynomial of
    /// lower degree than the minimal polynomial annihilates `A`.
    fn powers_independent<F: Field>(a: &Matrix<F>, d: usize) -> bool {
        let n = a.n();
        let ctx = a.context().clone();
        let mut p = Matrix::identity(n, &ctx);
        let mut cols: Vec<Vec<F>> = Vec::new();
        for _ in 0..d {
            cols.push(p.entries().cloned().collect());
            p = p.mul(a);
        }
        if d == 0 {
            return true;
        }
        let m = Matrix::from_fn(n * n, d, &ctx, |i, j| cols[j][i].clone());
        m.rank() == d
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn cayley_hamilton_over_integers(a in int_matrix(6, 9)) {
            let chi = charpoly(&a);
            prop_assert_eq!(chi.degree(), a.n());
            prop_assert!(a.eval_poly(chi.coeffs()).is_zero());
        }

        #[test]
        fn cayley_hamilton_over_prime_fields(a in fp_matrix(6)) {
            prop_assert!(a.eval_poly(charpoly(&a).coeffs()).is_zero());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn minpoly_is_minimal_and_divides_charpoly(a in int_matrix(5, 4)) {
            let a = a.to_rational();
            let m = minpoly(&a);
            let chi = charpoly(&a);
            prop_assert!(m.poly().divides(chi.poly()));
            prop_assert!(a.eval_poly(m.coeffs()).is_zero());
            prop_assert!(powers_independent(&a, m.degree()));
        }

        #[test]
        fn frobenius_agrees_with_smith_form(a in int_matrix(5, 4), seed in any::<u64>()) {
            let aq = a.to_rational();
            let f = frobenius_form(&aq, seed).unwrap();
            let inv = invariant_factors(&aq);
            prop_assert_eq!(&f.blocks, &inv);
            prop_assert!(verify_certificate(&aq, &f.transform));
            let product = inv.iter().fold(Poly::one(&()), |acc, p| acc.mul(p.poly()));
            let chi = charpoly(&aq);
            prop_assert_eq!(&product, chi.poly());
            prop_assert_eq!(inv.last().map(|p| p.poly().clone()).unwrap_or(Poly::one(&())), minpoly(&aq).into_poly());
            for p in &inv {
                prop_assert!(monic_divisor_integrality(p, RingTag::Z));
            }
        }

        #[test]
        fn frobenius_over_prime_fields(a in fp_matrix(5), seed in any::<u64>()) {
            let f = frobenius_form(&a, seed).unwrap();
            prop_assert_eq!(&f.blocks, &invariant_factors(&a));
            prop_assert!(verify_certificate(&a, &f.transform));
        }
    }
}
