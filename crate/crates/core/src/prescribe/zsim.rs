use num_integer::Integer as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{nonscalarity_ideal, prescribe_with_unit, DiagonalTarget};
use crate::error::{Error, Result};
use crate::matrix::{complete_primitive_vector, hnf_tracked, Matrix, SimilarityCertificate};
use crate::ring::{crt, factor_trial, gcd_all, Integer, Ring, RingTag, TRIAL_DIVISION_LIMIT};

/// Hard cap on candidate vectors tried by [`good_vector_search`].
pub const GOOD_VECTOR_CAP: usize = 50_000;

/// Candidates the small-box tier may use before refinement takes over.
const BOX_BUDGET: usize = 20_000;

/// gcd of the 2×2 minors of `[v | Av]`.
pub fn minor_gcd(a: &Matrix<Integer>, v: &[Integer]) -> Integer {
    let av = a.mul(&Matrix::column(v, &()));
    let w = av.col(0);
    let n = v.len();
    let mut g = Integer::from(0);
    for i in 0..n {
        for j in i + 1..n {
            g = g.gcd(&(&v[i] * &w[j] - &v[j] * &w[i]));
            if Ring::is_one(&g) {
                return g;
            }
        }
    }
    g
}

struct Search<'a> {
    a: &'a Matrix<Integer>,
    tried: usize,
    best: Option<(Integer, Vec<Integer>)>,
}

impl Search<'_> {
    /// Scores `v`; returns it when the minor gcd is 1.
    fn probe(&mut self, v: Vec<Integer>) -> Option<Vec<Integer>> {
        self.tried += 1;
        let d = minor_gcd(self.a, &v);
        if Ring::is_one(&d) {
            return Some(v);
        }
        let better = !d.is_zero() && self.best.as_ref().is_none_or(|(b, _)| d < *b);
        if better {
            self.best = Some((d, v));
        }
        None
    }

    fn exhausted(&self) -> bool {
        self.tried >= GOOD_VECTOR_CAP
    }

    fn diagnostics(&self) -> String {
        match &self.best {
            Some((d, v)) => format!("best minor gcd {d} at {v:?}"),
            None => "every candidate was an eigenvector".into(),
        }
    }
}

fn small_vectors(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        out.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            for sign in [1, -1] {
                let mut e = vec![0; n];
                e[i] = 1;
                e[j] = sign;
                out.push(e);
            }
        }
    }
    out
}

/// Odometer over `{-k..k}^n`, first coordinate most significant.
fn next_in_box(e: &mut [i64], k: i64) -> bool {
    let Some(pos) = (0..e.len()).rev().find(|&p| e[p] < k) else {
        return false;
    };
    e[pos] += 1;
    for x in e.iter_mut().skip(pos + 1) {
        *x = -k;
    }
    true
}

fn to_int(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}

/// A primitive `v` whose `v` and `Av` stay independent modulo every prime,
/// i.e. the 2×2 minors of `[v | Av]` are coprime.
///
/// Tries standard vectors, `e_i ± e_j` and the box `{-2..2}ⁿ`, then refines
/// the best candidate prime by prime with CRT, then falls back to seeded
/// random vectors.
pub fn good_vector_search(a: &Matrix<Integer>, seed: u64) -> Result<Vec<Integer>> {
    let n = a.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let ideal = nonscalarity_ideal(a);
    if !ideal.is_unit() {
        return Err(Error::IdealNotUnit(ideal.generator.to_string()));
    }
    let mut s = Search { a, tried: 0, best: None };

    let basics = small_vectors(n);
    for e in &basics {
        if let Some(v) = s.probe(to_int(e)) {
            return Ok(v);
        }
    }
    let mut e = vec![-2i64; n];
    loop {
        if e.iter().any(|&x| x != 0) {
            if let Some(v) = s.probe(to_int(&e)) {
                return Ok(v);
            }
        }
        if s.tried >= BOX_BUDGET || !next_in_box(&mut e, 2) {
            break;
        }
    }

    if let Some(v) = crt_refine(&mut s, &basics) {
        return Ok(v);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = (n * n) as i64;
    while !s.exhausted() {
        let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-r..=r)).collect();
        if let Some(v) = s.probe(to_int(&e)) {
            return Ok(v);
        }
    }
    Err(Error::SearchExhausted {
        candidates: s.tried,
        diagnostics: s.diagnostics(),
    })
}

/// For each prime `p` dividing the best minor gcd, picks a small vector good
/// modulo `p`, glues them with CRT into `u`, and probes `u + M·w` where `M`
/// is the product of those primes.
fn crt_refine(s: &mut Search<'_>, basics: &[Vec<i64>]) -> Option<Vec<Integer>> {
    let (d, _) = s.best.clone()?;
    let mut moduli: Vec<Integer> = factor_trial(&d, TRIAL_DIVISION_LIMIT);
    moduli.dedup();
    let n = s.a.n();
    let mut local = Vec::new();
    for p in &moduli {
        let good = basics
            .iter()
            .map(|e| to_int(e))
            .find(|v| Ring::is_one(&minor_gcd(s.a, v).gcd(p)))?;
        local.push(good);
    }
    let u: Vec<Integer> = (0..n)
        .map(|i| {
            let residues: Vec<(Integer, Integer)> =
                local.iter().zip(&moduli).map(|(v, p)| (v[i].clone(), p.clone())).collect();
            crt(&residues)
        })
        .collect::<Result<_>>()
        .ok()?;
    let m: Integer = moduli.iter().product();
    let mut w = vec![-1i64; n];
    loop {
        if s.exhausted() {
            return None;
        }
        let v: Vec<Integer> = u.iter().zip(&w).map(|(ui, wi)| ui + &m * Integer::from(*wi)).collect();
        if gcd_all(&v) == Integer::from(1) {
            if let Some(found) = s.probe(v) {
                return Some(found);
            }
        }
        if !next_in_box(&mut w, 1) {
            return None;
        }
    }
}

/// Unimodular prescription over ℤ for `n ≥ 3` and nonscalarity ideal `(1)`.
///
/// A good vector is completed to a unimodular basis; in that basis the first
/// column below the diagonal has content 1, and a Hermite reduction of that
/// subcolumn puts a 1 at `(1, 0)`.
pub fn prescribe_zsim(
    a: &Matrix<Integer>,
    target: &DiagonalTarget<Integer>,
    seed: u64,
) -> Result<SimilarityCertificate<Integer>> {
    target.check(a)?;
    let n = a.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let v = good_vector_search(a, seed)?;
    let p = complete_primitive_vector(&v)?;
    let p_inv = p.inverse()?;
    let a1 = p_inv.mul(a).mul(&p);
    let sub = a1.submatrix(1, n, 0, 1);
    let (h_sub, u, u_inv) = hnf_tracked(&sub);
    if !Ring::is_one(h_sub.get(0, 0)) {
        return Err(Error::Defect(format!("subcolumn content {} after good vector", h_sub.get(0, 0))));
    }
    let one = Matrix::identity(1, &());
    let h = one.direct_sum(&u);
    let h_inv = one.direct_sum(&u_inv);
    let a2 = h.mul(&a1).mul(&h_inv);
    let base = SimilarityCertificate {
        g: h.mul(&p_inv),
        g_inv: p.mul(&h_inv),
        b: a2.clone(),
        conj_ring: RingTag::Z,
        entry_ring: RingTag::Z,
        steps: None,
    };
    Ok(base.compose(prescribe_with_unit(&a2, target)?))
}
