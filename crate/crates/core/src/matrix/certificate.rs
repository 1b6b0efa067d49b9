use super::{ElementaryConj, Matrix};
use crate::ring::{Ring, RingTag, Scalar};

/// Witness that `g·A·g⁻¹ = B` with `g` invertible over `conj_ring` and `B`
/// having entries in `entry_ring`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityCertificate<T: Ring> {
    pub g: Matrix<T>,
    pub g_inv: Matrix<T>,
    pub b: Matrix<T>,
    pub conj_ring: RingTag,
    pub entry_ring: RingTag,
    /// Present when `g` is exactly the product of these conjugations,
    /// applied first to last.
    pub steps: Option<Vec<ElementaryConj<T>>>,
}

impl<T: Ring> SimilarityCertificate<T> {
    pub fn identity(a: &Matrix<T>, conj_ring: RingTag, entry_ring: RingTag) -> Self {
        let id = Matrix::identity(a.n(), a.context());
        SimilarityCertificate {
            g: id.clone(),
            g_inv: id,
            b: a.clone(),
            conj_ring,
            entry_ring,
            steps: Some(Vec::new()),
        }
    }

    /// Follow with one more elementary conjugation of `b`.
    pub fn push(&mut self, e: ElementaryConj<T>) {
        let n = self.b.n();
        let ctx = self.b.context().clone();
        self.b = e.conjugate(&self.b);
        self.g = e.matrix(n, &ctx).mul(&self.g);
        self.g_inv = self.g_inv.mul(&e.inverse().matrix(n, &ctx));
        if let Some(steps) = self.steps.as_mut() {
            steps.push(e);
        }
    }

    /// Conjugate the result further by `h` (with inverse `h_inv`).
    pub fn then_conjugate(&mut self, h: &Matrix<T>, h_inv: &Matrix<T>) {
        self.b = h.mul(&self.b).mul(h_inv);
        self.g = h.mul(&self.g);
        self.g_inv = self.g_inv.mul(h_inv);
        self.steps = None;
    }

    /// `outer ∘ self`: first `self`, then `outer` applied to `self.b`.
    pub fn compose(self, outer: SimilarityCertificate<T>) -> Self {
        debug_assert_eq!(self.b, {
            outer.g_inv.mul(&outer.b).mul(&outer.g)
        });
        let steps = match (self.steps, outer.steps) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Some(a)
            }
            _ => None,
        };
        SimilarityCertificate {
            g: outer.g.mul(&self.g),
            g_inv: self.g_inv.mul(&outer.g_inv),
            b: outer.b,
            conj_ring: outer.conj_ring,
            entry_ring: outer.entry_ring,
            steps,
        }
    }

    /// Move every matrix into another scalar type (e.g. ℤ ↪ ℚ).
    pub fn map<U: Ring>(&self, ctx: &U::Ctx, f: impl Fn(&T) -> U) -> SimilarityCertificate<U> {
        SimilarityCertificate {
            g: self.g.map(ctx, &f),
            g_inv: self.g_inv.map(ctx, &f),
            b: self.b.map(ctx, &f),
            conj_ring: self.conj_ring,
            entry_ring: self.entry_ring,
            steps: self.steps.as_ref().map(|steps| {
                steps
                    .iter()
                    .map(|s| match s {
                        ElementaryConj::Transvection { i, j, t } => ElementaryConj::Transvection {
                            i: *i,
                            j: *j,
                            t: f(t),
                        },
                        ElementaryConj::Permutation(p) => ElementaryConj::Permutation(p.clone()),
                        ElementaryConj::DiagonalUnit(u) => {
                            ElementaryConj::DiagonalUnit(u.iter().map(&f).collect())
                        }
                    })
                    .collect()
            }),
        }
    }
}

/// Exact check of every certificate claim: `g·g⁻¹ = I`, `g·A·g⁻¹ = B`,
/// `det g` a unit of `conj_ring`, `g` and `g⁻¹` over `conj_ring`, and `B`
/// over `entry_ring`. When steps are recorded, their product must be `g`.
pub fn verify_certificate<T: Scalar>(a: &Matrix<T>, c: &SimilarityCertificate<T>) -> bool {
    let n = a.rows();
    if !a.is_square() || [&c.g, &c.g_inv, &c.b].iter().any(|m| m.rows() != n || m.cols() != n) {
        return false;
    }
    if !c.g.mul(&c.g_inv).is_identity() {
        return false;
    }
    if c.g.mul(a).mul(&c.g_inv) != c.b {
        return false;
    }
    if !c.g.det().is_unit_in(c.conj_ring) {
        return false;
    }
    if !c.g.all_in_ring(c.conj_ring) || !c.g_inv.all_in_ring(c.conj_ring) {
        return false;
    }
    if !c.b.all_in_ring(c.entry_ring) {
        return false;
    }
    if let Some(steps) = &c.steps {
        let mut g = Matrix::identity(n, a.context());
        for s in steps {
            if s.validate(n).is_err() {
                return false;
            }
            g = s.matrix(n, a.context()).mul(&g);
        }
        if g != c.g {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn verification_examples() {
        let a = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let id = SimilarityCertificate::identity(&a, RingTag::Z, RingTag::Z);
        assert!(verify_certificate(&a, &id));

        let g = Matrix::from_i64(&[&[1, 0], &[1, 1]]);
        let cert = SimilarityCertificate {
            g: g.clone(),
            g_inv: g.inverse().unwrap(),
            b: Matrix::from_i64(&[&[-1, 1], &[0, 1]]),
            conj_ring: RingTag::Z,
            entry_ring: RingTag::Z,
            steps: None,
        };
        assert!(verify_certificate(&a, &cert));

        // det g = 2 is not a unit of ℤ, even though g is invertible over ℚ
        let aq = a.to_rational();
        let g2 = Matrix::from_i64(&[&[2, 0], &[0, 1]]).to_rational();
        let g2_inv = g2.inverse().unwrap();
        let bad = SimilarityCertificate {
            b: g2.mul(&aq).mul(&g2_inv),
            g: g2,
            g_inv: g2_inv,
            conj_ring: RingTag::Z,
            entry_ring: RingTag::Q,
            steps: None,
        };
        assert!(!verify_certificate(&aq, &bad));
        let relabelled = SimilarityCertificate { conj_ring: RingTag::Q, ..bad };
        assert!(verify_certificate(&aq, &relabelled));
    }

    #[test]
    fn steps_compose_to_g() {
        let a = Matrix::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[4, 0, -3]]);
        let mut c = SimilarityCertificate::identity(&a, RingTag::Z, RingTag::Z);
        c.push(ElementaryConj::Transvection { i: 2, j: 0, t: int(5) });
        c.push(ElementaryConj::Permutation(vec![2, 0, 1]));
        c.push(ElementaryConj::DiagonalUnit(vec![int(-1), int(1), int(-1)]));
        assert!(verify_certificate(&a, &c));
        let mut tampered = c.clone();
        tampered.steps.as_mut().unwrap().pop();
        assert!(!verify_certificate(&a, &tampered));
        assert_eq!(c.b.trace(), a.trace());
    }
}
