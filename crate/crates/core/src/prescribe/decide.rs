use num_integer::Integer as _;
use num_traits::Signed;

use super::DiagonalTarget;
use crate::error::{Error, Result};
use crate::matrix::{
    complete_primitive_vector, hermite_normal_form, integer_kernel, verify_certificate, Matrix,
    SimilarityCertificate,
};
use crate::ring::{ext_gcd, gcd_all, Integer, Ring, RingTag};

/// `a·s² + b·s·t + c·t²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
}

impl BinaryForm {
    pub fn eval(&self, s: &Integer, t: &Integer) -> Integer {
        &self.a * s * s + &self.b * s * t + &self.c * t * t
    }

    pub fn discriminant(&self) -> Integer {
        &self.b * &self.b - Integer::from(4) * &self.a * &self.c
    }
}

/// What was learned about whether a form takes the value ±1.
#[derive(Debug, Clone, PartialEq)]
pub enum FormOutcome {
    /// `form(s, t) = value` with `value = ±1`.
    Represents { s: Integer, t: Integer, value: Integer },
    /// Definite form: every nonzero value was enumerated inside the radius
    /// where values up to `|a|` can occur, and the least absolute value is
    /// `minimum > 1`.
    DefiniteMinimum { minimum: Integer, s_radius: Integer, t_radius: Integer },
    /// Degenerate or otherwise exactly decided form that never takes ±1.
    NeverUnit { reason: String },
    /// Indefinite form with no solution for `|t| ≤ bound`.
    Inconclusive { bound: u64 },
}

impl FormOutcome {
    pub fn is_exact_negative(&self) -> bool {
        matches!(self, FormOutcome::DefiniteMinimum { .. } | FormOutcome::NeverUnit { .. })
    }
}

/// One target matrix `[[γ₁, x], [y, γ₂]]` and the determinant form of the
/// integer solutions of `g·A = B·g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate2x2 {
    pub b: Matrix<Integer>,
    /// Rows `b₁, b₂` of a basis of the admissible first rows of `g`.
    pub lattice: Matrix<Integer>,
    pub form: BinaryForm,
    pub outcome: FormOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict2x2 {
    Similar(SimilarityCertificate<Integer>),
    NotSimilar,
    Unknown { bound: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision2x2 {
    pub verdict: Verdict2x2,
    pub candidates: Vec<Candidate2x2>,
}

/// Decides whether a 2×2 integer matrix is GL₂(ℤ)-similar to one with the
/// given diagonal.
///
/// Every such `B` is `[[γ₁, x], [y, γ₂]]` with `xy = γ₁γ₂ - det A`. Up to
/// conjugation by `diag(1, -1)` (and the index swap when `γ₁ = γ₂`) only
/// `x > 0` dividing that product needs checking. For each candidate the
/// first row `r` of `g` ranges over a lattice, the second row is
/// `r(A - γ₁)/x`, and `det g` is a binary quadratic form in the lattice
/// coordinates.
pub fn decide_2x2(a: &Matrix<Integer>, target: &DiagonalTarget<Integer>, bound: u64) -> Result<Decision2x2> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "decide_2x2 needs a 2x2 matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    target.check(a)?;
    let (g1, g2) = (&target.gamma[0], &target.gamma[1]);
    if a.diagonal() == target.gamma {
        return Ok(Decision2x2 {
            verdict: Verdict2x2::Similar(SimilarityCertificate::identity(a, RingTag::Z, RingTag::Z)),
            candidates: Vec::new(),
        });
    }
    let m = a.sub(&Matrix::scalar(2, g1));
    let product = g1 * g2 - a.det();
    if product.is_zero() {
        return Ok(Decision2x2 {
            verdict: Verdict2x2::Similar(triangularize(a, &m)?),
            candidates: Vec::new(),
        });
    }

    let mut seen: Vec<(Integer, Integer)> = Vec::new();
    let mut candidates = Vec::new();
    for x in positive_divisors(&product) {
        let y = &product / &x;
        if g1 == g2 {
            let swapped = if y.is_negative() { (-&y, -&x) } else { (y.clone(), x.clone()) };
            if seen.contains(&swapped) {
                continue;
            }
        }
        seen.push((x.clone(), y.clone()));
        let b = Matrix::from_rows(vec![vec![g1.clone(), x.clone()], vec![y, g2.clone()]]);
        let lattice = first_row_lattice(&m, &x);
        let form = determinant_form(&lattice, &m, &x);
        let outcome = represent_unit(&form, bound);
        candidates.push(Candidate2x2 { b, lattice, form, outcome });
    }

    for cand in &candidates {
        if let FormOutcome::Represents { s, t, .. } = &cand.outcome {
            let r1: Vec<Integer> = (0..2)
                .map(|k| s * cand.lattice.get(0, k) + t * cand.lattice.get(1, k))
                .collect();
            let x = cand.b.get(0, 1);
            let r1m = Matrix::from_rows(vec![r1.clone()]).mul(&m);
            let r2: Vec<Integer> = r1m.row(0).iter().map(|e| e / x).collect();
            let g = Matrix::from_rows(vec![r1, r2]);
            let g_inv = g.inverse()?;
            let cert = SimilarityCertificate {
                b: g.mul(a).mul(&g_inv),
                g,
                g_inv,
                conj_ring: RingTag::Z,
                entry_ring: RingTag::Z,
                steps: None,
            };
            if cert.b != cand.b || !verify_certificate(a, &cert) {
                return Err(Error::Defect("2x2 certificate failed verification".into()));
            }
            return Ok(Decision2x2 {
                verdict: Verdict2x2::Similar(cert),
                candidates,
            });
        }
    }
    let verdict = if candidates.iter().all(|c| c.outcome.is_exact_negative()) {
        Verdict2x2::NotSimilar
    } else {
        Verdict2x2::Unknown { bound }
    };
    Ok(Decision2x2 { verdict, candidates })
}

/// When `γ₁` is an eigenvalue: move a primitive eigenvector to the first
/// basis vector, giving an upper triangular `B`.
fn triangularize(a: &Matrix<Integer>, m: &Matrix<Integer>) -> Result<SimilarityCertificate<Integer>> {
    let ker = integer_kernel(m);
    if ker.cols() == 0 {
        return Err(Error::Defect("eigenvalue without an integer eigenvector".into()));
    }
    let p = complete_primitive_vector(&ker.col(0))?;
    let g = p.inverse()?;
    Ok(SimilarityCertificate {
        b: g.mul(a).mul(&p),
        g,
        g_inv: p,
        conj_ring: RingTag::Z,
        entry_ring: RingTag::Z,
        steps: None,
    })
}

fn positive_divisors(n: &Integer) -> Vec<Integer> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Integer::from(1);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Basis (as rows, Hermite-reduced) of `{r ∈ ℤ² : r·M ≡ 0 mod x}`.
fn first_row_lattice(m: &Matrix<Integer>, x: &Integer) -> Matrix<Integer> {
    // left kernel of [M; -xI] gives pairs (r, k) with r·M = x·k
    let stacked = m.vstack(&Matrix::scalar(2, &-x));
    let ker = integer_kernel(&stacked.transpose());
    let rows = Matrix::from_fn(ker.cols(), 2, &(), |i, j| ker.get(j, i).clone());
    let (h, _) = hermite_normal_form(&rows);
    h.submatrix(0, 2, 0, 2)
}

/// `det [r; r·M/x]` as a form in the lattice coordinates of `r`.
fn determinant_form(lattice: &Matrix<Integer>, m: &Matrix<Integer>, x: &Integer) -> BinaryForm {
    let q = |r: &[Integer]| -> Integer {
        let rm = Matrix::from_rows(vec![r.to_vec()]).mul(m);
        (&r[0] * rm.get(0, 1) - &r[1] * rm.get(0, 0)) / x
    };
    let b1 = lattice.row(0).to_vec();
    let b2 = lattice.row(1).to_vec();
    let sum: Vec<Integer> = b1.iter().zip(&b2).map(|(u, v)| u + v).collect();
    let (fa, fc) = (q(&b1), q(&b2));
    let fb = q(&sum) - &fa - &fc;
    BinaryForm { a: fa, b: fb, c: fc }
}

/// `0, 1, -1, 2, -2, …` up to `r`.
fn zigzag(r: &Integer) -> impl Iterator<Item = Integer> + '_ {
    std::iter::successors(Some(Integer::from(0)), |k| {
        Some(if k.is_positive() { -k } else { -k + 1 })
    })
    .take_while(move |k| k.abs() <= *r)
}

fn represent_unit(f: &BinaryForm, bound: u64) -> FormOutcome {
    let disc = f.discriminant();
    if disc.is_negative() {
        definite(f, &disc)
    } else if disc.is_zero() {
        degenerate(f)
    } else {
        indefinite(f, bound)
    }
}

fn definite(f: &BinaryForm, disc: &Integer) -> FormOutcome {
    // |f(s,t)| ≤ N forces t² ≤ 4|a|N/|Δ| and s² ≤ 4|c|N/|Δ|; N = |a| covers
    // the minimum since f(1, 0) = a.
    let nd = disc.abs();
    let cap = f.a.abs();
    let four = Integer::from(4);
    let t_radius = (&four * f.a.abs() * &cap / &nd).sqrt();
    let s_radius = (&four * f.c.abs() * &cap / &nd).sqrt();
    let mut minimum: Option<(Integer, Integer, Integer)> = None;
    for t in zigzag(&t_radius) {
        for s in zigzag(&s_radius) {
            if s.is_zero() && t.is_zero() {
                continue;
            }
            let v = f.eval(&s, &t);
            if minimum.as_ref().is_none_or(|(m, _, _)| v.abs() < m.abs()) {
                minimum = Some((v, s.clone(), t.clone()));
            }
        }
    }
    let (value, s, t) = minimum.expect("f(1, 0) lies in the enumerated box");
    if Ring::is_one(&value.abs()) {
        FormOutcome::Represents { s, t, value }
    } else {
        FormOutcome::DefiniteMinimum { minimum: value.abs(), s_radius, t_radius }
    }
}

/// `Δ = 0`: `f = k·(us + vt)²` with `gcd(u, v) = 1`.
fn degenerate(f: &BinaryForm) -> FormOutcome {
    let content = gcd_all([&f.a, &f.b, &f.c]);
    if content.is_zero() {
        return FormOutcome::NeverUnit { reason: "form is identically zero".into() };
    }
    let k = if f.a.is_negative() || f.c.is_negative() { -content } else { content };
    if !Ring::is_one(&k.abs()) {
        return FormOutcome::NeverUnit { reason: format!("every value is a multiple of {k}") };
    }
    let u = (&f.a / &k).sqrt();
    let mut v = (&f.c / &k).sqrt();
    if (&f.b / &k).is_negative() {
        v = -v;
    }
    let (_, s, t) = ext_gcd(&u, &v);
    FormOutcome::Represents { value: f.eval(&s, &t), s, t }
}

/// Moduli tried by [`local_obstruction`].
const LOCAL_MODULUS_MAX: i64 = 64;

/// Smallest `m ≤ LOCAL_MODULUS_MAX` for which `f` never takes a value `≡ ±1 (mod m)`.
fn local_obstruction(f: &BinaryForm) -> Option<i64> {
    (2..=LOCAL_MODULUS_MAX).find(|&m| {
        let m_int = Integer::from(m);
        let reduce = |x: &Integer| -> i64 {
            let r = x % &m_int;
            i64::try_from(r).expect("residue fits").rem_euclid(m)
        };
        let (a, b, c) = (reduce(&f.a), reduce(&f.b), reduce(&f.c));
        !(0..m).any(|s| {
            (0..m).any(|t| {
                let v = (a * s * s + b * s * t + c * t * t).rem_euclid(m);
                v == 1 || v == m - 1
            })
        })
    })
}

/// Square discriminant: move a rational zero of `f` to `(1, 0)` and split.
fn square_discriminant(f: &BinaryForm, root: &Integer) -> FormOutcome {
    // a x² + b x + c = 0 at x = s/t = (-b + √Δ)/(2a)
    let (num, den) = (-&f.b + root, Integer::from(2) * &f.a);
    let g = num.gcd(&den);
    let (s0, t0) = (&num / &g, &den / &g);
    let (_, y, x) = ext_gcd(&s0, &t0);
    // columns (s0, t0) and (-x, y) have determinant ±1
    let x = -x;
    let two = Integer::from(2);
    let moved = BinaryForm {
        a: f.eval(&s0, &t0),
        b: &two * &f.a * &s0 * &x + &f.b * (&s0 * &y + &t0 * &x) + &two * &f.c * &t0 * &y,
        c: f.eval(&x, &y),
    };
    debug_assert!(moved.a.is_zero());
    match split_form(&moved) {
        FormOutcome::Represents { s, t, .. } => {
            let (s, t) = (&s0 * &s + &x * &t, &t0 * &s + &y * &t);
            FormOutcome::Represents { value: f.eval(&s, &t), s, t }
        }
        other => other,
    }
}

fn indefinite(f: &BinaryForm, bound: u64) -> FormOutcome {
    if f.a.is_zero() || f.c.is_zero() {
        return split_form(f);
    }
    let content = gcd_all([&f.a, &f.b, &f.c]);
    if !Ring::is_one(&content) {
        return FormOutcome::NeverUnit { reason: format!("every value is a multiple of {content}") };
    }
    let disc = f.discriminant();
    let root = disc.sqrt();
    if &root * &root == disc {
        return square_discriminant(f, &root);
    }
    if let Some(m) = local_obstruction(f) {
        return FormOutcome::NeverUnit { reason: format!("no value is congruent to ±1 modulo {m}") };
    }
    let limit = Integer::from(bound);
    let two_a = Integer::from(2) * &f.a;
    for t in zigzag(&limit) {
        for e in [1i64, -1] {
            // a s² + (bt) s + (ct² - e) = 0 has discriminant Δt² + 4ae
            let d = f.discriminant() * &t * &t + Integer::from(4 * e) * &f.a;
            if d.is_negative() {
                continue;
            }
            let r = d.sqrt();
            if &r * &r != d {
                continue;
            }
            for num in [-&f.b * &t + &r, -&f.b * &t - &r] {
                if (&num % &two_a).is_zero() {
                    let s = num / &two_a;
                    let value = f.eval(&s, &t);
                    return FormOutcome::Represents { s, t, value };
                }
            }
        }
    }
    FormOutcome::Inconclusive { bound }
}

/// `a = 0` gives `f = t·(bs + ct)` and `c = 0` gives `f = s·(as + bt)`; the
/// linear factor `t` (resp. `s`) must itself be ±1.
fn split_form(f: &BinaryForm) -> FormOutcome {
    for u in [1i64, -1] {
        for e in [1i64, -1] {
            let (u, e) = (Integer::from(u), Integer::from(e));
            let (rhs, s_fixed) = if f.a.is_zero() { (&(&e - &f.c) * &u, false) } else { (&(&e - &f.a) * &u, true) };
            if !(&rhs % &f.b).is_zero() {
                continue;
            }
            let other = &rhs / &f.b;
            let (s, t) = if s_fixed { (u, other) } else { (other, u) };
            let value = f.eval(&s, &t);
            return FormOutcome::Represents { s, t, value };
        }
    }
    FormOutcome::NeverUnit { reason: format!("the linear factor cannot meet ±1 (b = {})", f.b) }
}
