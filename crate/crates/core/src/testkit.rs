//! Seeded instance generation and a brute-force oracle for 2×2 integral
//! similarity.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::json::AnyMatrix;
use crate::matrix::{verify_certificate, Matrix, SimilarityCertificate, DEFAULT_MAX_DIM};
use crate::prescribe::{nonscalarity_ideal, DiagonalTarget};
use crate::ring::{ext_gcd, CubicElem, Integer, PrimeField, Rational, RingTag};

/// Draws allowed before [`gen_matrix`] gives up on a constraint.
pub const REJECTION_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    None,
    NonScalar,
    /// Non-scalar modulo every prime. Integer matrices only.
    IdealUnit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub ring: RingTag,
    pub n: usize,
    /// Entries (numerators, denominators, coordinates) lie in `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
    pub constraint: Constraint,
}

fn draw_int(rng: &mut ChaCha8Rng, b: i64) -> Integer {
    Integer::from(rng.gen_range(-b..=b))
}

fn draw_rat(rng: &mut ChaCha8Rng, b: i64) -> Rational {
    Rational::new(draw_int(rng, b), Integer::from(rng.gen_range(1..=b)))
}

fn draw(spec: &InstanceSpec, rng: &mut ChaCha8Rng) -> Result<AnyMatrix> {
    let (n, b) = (spec.n, spec.bound);
    Ok(match spec.ring {
        RingTag::Z => AnyMatrix::Z(Matrix::from_fn(n, n, &(), |_, _| draw_int(rng, b))),
        RingTag::Q => AnyMatrix::Q(Matrix::from_fn(n, n, &(), |_, _| draw_rat(rng, b))),
        RingTag::Fp(p) => {
            let f = PrimeField::from_u64(p)?;
            AnyMatrix::Fp(Matrix::from_fn(n, n, &f, |_, _| f.elem(&draw_int(rng, b))))
        }
        RingTag::QBeta => AnyMatrix::QBeta(Matrix::from_fn(n, n, &(), |_, _| {
            CubicElem::new(draw_rat(rng, b), draw_rat(rng, b), draw_rat(rng, b))
        })),
        RingTag::ZAlpha => AnyMatrix::ZAlpha(Matrix::from_fn(n, n, &(), |_, _| {
            let (x, y, z) = (rng.gen_range(-b..=b), rng.gen_range(-b..=b), rng.gen_range(-b..=b));
            CubicElem::from_ints(x, 2 * y, 4 * z)
        })),
    })
}

fn satisfies(m: &AnyMatrix, c: Constraint) -> bool {
    match (c, m) {
        (Constraint::None, _) => true,
        (Constraint::IdealUnit, AnyMatrix::Z(a)) => nonscalarity_ideal(a).is_unit(),
        (_, AnyMatrix::Z(a)) => !a.is_scalar(),
        (_, AnyMatrix::Q(a)) => !a.is_scalar(),
        (_, AnyMatrix::Fp(a)) => !a.is_scalar(),
        (_, AnyMatrix::QBeta(a) | AnyMatrix::ZAlpha(a)) => !a.is_scalar(),
    }
}

/// Deterministic random matrix: the same spec always gives the same matrix.
pub fn gen_matrix(spec: &InstanceSpec) -> Result<AnyMatrix> {
    if spec.n == 0 || spec.n > DEFAULT_MAX_DIM {
        return Err(Error::InvalidArgument(format!("n = {} outside 1..={DEFAULT_MAX_DIM}", spec.n)));
    }
    if spec.bound < 1 {
        return Err(Error::InvalidArgument(format!("bound must be at least 1, got {}", spec.bound)));
    }
    if spec.constraint == Constraint::IdealUnit && spec.ring != RingTag::Z {
        return Err(Error::UnsupportedRing(format!("ideal constraint needs Z, got {}", spec.ring)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..REJECTION_CAP {
        let m = draw(spec, &mut rng)?;
        if satisfies(&m, spec.constraint) {
            return Ok(m);
        }
    }
    Err(Error::ConstraintUnsatisfiableWithinCap(REJECTION_CAP))
}

/// Integer target with entries in `[-bound, bound]` except the last, which
/// balances the trace.
pub fn gen_target(a: &Matrix<Integer>, bound: i64, seed: u64) -> DiagonalTarget<Integer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a26_e7d1_5eed);
    let mut g: Vec<Integer> = (1..a.n()).map(|_| draw_int(&mut rng, bound.max(0))).collect();
    let partial: Integer = g.iter().sum();
    g.push(a.trace() - partial);
    DiagonalTarget::new(g)
}

/// 0, 1, -1, 2, -2, …
fn zigzag_rank(x: &Integer) -> Integer {
    if x.is_positive() {
        x * 2 - 1
    } else {
        -x * 2
    }
}

type OrderKey = (Integer, [Integer; 4]);

/// Ordering key: distance from the identity, then zig-zag lexicographic.
fn order_key(g: &[Integer; 4]) -> OrderKey {
    let one = Integer::one();
    let dist = (&g[0] - &one).abs() + g[1].abs() + g[2].abs() + (&g[3] - &one).abs();
    (dist, [0, 1, 2, 3].map(|i| zigzag_rank(&g[i])))
}

/// `{k : |x0 + k·c| ≤ b}`; `None` when empty.
fn k_range(x0: &Integer, c: &Integer, b: &Integer) -> Option<Option<(Integer, Integer)>> {
    if c.is_zero() {
        return (x0.abs() <= *b).then_some(None);
    }
    let (lo, hi) = (-b - x0, b - x0);
    let (lo, hi) = if c.is_positive() {
        (lo.div_ceil(c), hi.div_floor(c))
    } else {
        (hi.div_ceil(c), lo.div_floor(c))
    };
    (lo <= hi).then_some(Some((lo, hi)))
}

fn intersect(a: Option<(Integer, Integer)>, b: Option<(Integer, Integer)>) -> Option<(Integer, Integer)> {
    match (a, b) {
        (Some((l1, h1)), Some((l2, h2))) => {
            let (l, h) = (l1.max(l2), h1.min(h2));
            (l <= h).then_some((l, h))
        }
        (Some(r), None) | (None, Some(r)) => Some(r),
        (None, None) => None,
    }
}

/// Exhaustive search over `g ∈ GL₂(ℤ)` with entries in `[-bound, bound]` for
/// `g·A·g⁻¹` with diagonal `target`.
///
/// For a first row `(p, q)` and `det g = δ`, the second rows form a line
/// `(r₀ + kp, s₀ + kq)` along which `(gAg⁻¹)₁₁` is affine in `k`, so the
/// search costs `O(bound²)`. Among all hits the one closest to the identity
/// in ℓ¹ is returned, ties broken lexicographically in the order
/// `0, 1, -1, 2, -2, …`.
pub fn brute_force_diag_search(
    a: &Matrix<Integer>,
    target: &DiagonalTarget<Integer>,
    bound: i64,
) -> Result<Option<SimilarityCertificate<Integer>>> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch(format!("brute force needs 2x2, got {}x{}", a.rows(), a.cols())));
    }
    target.check(a)?;
    if bound < 0 {
        return Err(Error::InvalidArgument(format!("negative bound {bound}")));
    }
    if a.diagonal() == target.gamma {
        return Ok(Some(SimilarityCertificate::identity(a, RingTag::Z, RingTag::Z)));
    }
    let (ea, eb, ec, ed) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let gamma = &target.gamma[0];
    let b = Integer::from(bound);
    let mut best: Option<(OrderKey, [Integer; 4])> = None;
    let mut consider = |g: [Integer; 4]| {
        let key = order_key(&g);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, g));
        }
    };
    for p in -bound..=bound {
        for q in -bound..=bound {
            let (p, q) = (Integer::from(p), Integer::from(q));
            let (d, mut x, mut y) = ext_gcd(&p, &q);
            if d.abs() != Integer::one() {
                continue;
            }
            if d.is_negative() {
                x = -x;
                y = -y;
            }
            let row0 = (&p * ea + &q * ec, &p * eb + &q * ed);
            for delta in [Integer::one(), -Integer::one()] {
                // p·s - q·r = δ
                let (s0, r0) = (&x * &delta, -&y * &delta);
                let b00 = |r: &Integer, s: &Integer| &delta * (&row0.0 * s - &row0.1 * r);
                let slope = &delta * (&row0.0 * &q - &row0.1 * &p);
                let (Some(kr), Some(ks)) = (k_range(&r0, &p, &b), k_range(&s0, &q, &b)) else {
                    continue;
                };
                let Some((lo, hi)) = intersect(kr, ks) else { continue };
                let at = |k: &Integer| [p.clone(), q.clone(), &r0 + k * &p, &s0 + k * &q];
                let base = b00(&r0, &s0);
                if slope.is_zero() {
                    if base == *gamma {
                        let mut k = lo.clone();
                        while k <= hi {
                            consider(at(&k));
                            k += 1;
                        }
                    }
                } else {
                    let (k, rem) = (gamma - &base).div_rem(&slope);
                    if rem.is_zero() && lo <= k && k <= hi {
                        consider(at(&k));
                    }
                }
            }
        }
    }
    let Some((_, [p, q, r, s])) = best else { return Ok(None) };
    let det = &p * &s - &q * &r;
    let g = Matrix::from_rows(vec![vec![p.clone(), q.clone()], vec![r.clone(), s.clone()]]);
    let g_inv = Matrix::from_rows(vec![vec![&det * &s, -&det * &q], vec![-&det * &r, &det * &p]]);
    let cert = SimilarityCertificate {
        b: g.mul(a).mul(&g_inv),
        g,
        g_inv,
        conj_ring: RingTag::Z,
        entry_ring: RingTag::Z,
        steps: None,
    };
    if !verify_certificate(a, &cert) {
        return Err(Error::Defect("brute-force hit failed verification".into()));
    }
    Ok(Some(cert))
}
