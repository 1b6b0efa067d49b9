use std::fmt;

use super::{Domain, Euclidean, Field, Integer, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first, with no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T: Ring> {
    coeffs: Vec<T>,
    ctx: T::Ctx,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>, ctx: T::Ctx) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs, ctx }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let ctx = coeffs.first().expect("nonempty coefficient list").ctx();
        Poly::new(coeffs, ctx)
    }

    pub fn constant(c: T) -> Self {
        let ctx = c.ctx();
        Poly::new(vec![c], ctx)
    }

    /// The polynomial `x`.
    pub fn x(ctx: &T::Ctx) -> Self {
        Poly::new(vec![T::zero(ctx), T::one(ctx)], ctx.clone())
    }

    /// `x - c`.
    pub fn linear(c: &T) -> Self {
        let ctx = c.ctx();
        Poly::new(vec![c.neg(), T::one(&ctx)], ctx)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn context(&self) -> &T::Ctx {
        &self.ctx
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| T::zero(&self.ctx))
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Ring::is_one)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), self.ctx.clone())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(&self.ctx), |acc, c| acc.mul(x).add(c))
    }

    pub fn map<U: Ring>(&self, ctx: U::Ctx, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect(), ctx)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let simple = |s: &str| !s.contains([' ', '+', '-', '/']);
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if simple(rest) => (true, rest.to_string()),
                _ => (false, text),
            };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if k == 0 {
                f.write_str(&body)?;
            } else if body != "1" {
                if simple(&body) {
                    f.write_str(&body)?;
                } else {
                    write!(f, "({body})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Ring> Ring for Poly<T> {
    type Ctx = T::Ctx;

    fn ctx(&self) -> T::Ctx {
        self.ctx.clone()
    }
    fn zero(ctx: &T::Ctx) -> Self {
        Poly::new(Vec::new(), ctx.clone())
    }
    fn one(ctx: &T::Ctx) -> Self {
        Poly::new(vec![T::one(ctx)], ctx.clone())
    }
    fn from_int(ctx: &T::Ctx, n: &Integer) -> Self {
        Poly::new(vec![T::from_int(ctx, n)], ctx.clone())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect(),
            self.ctx.clone(),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect(),
            self.ctx.clone(),
        )
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![T::zero(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out, self.ctx.clone())
    }
    fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(Ring::neg).collect(), self.ctx.clone())
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => c.unit_inverse().map(Poly::constant),
            _ => None,
        }
    }
}

impl<F: Field> Poly<F> {
    /// Scale to leading coefficient 1. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem_euclid(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Monic lcm.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let g = self.gcd(other);
        let (q, _) = self.div_rem_euclid(&g);
        q.mul(other).monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        poly_divmod(other, self).is_ok_and(|(_, r)| r.is_zero())
    }
}

/// Division with remainder over a field: `f = q·g + r`, `deg r < deg g`.
pub fn poly_divmod<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
    let dg = g.degree().ok_or(Error::DivisionByZeroPoly)?;
    let lc_inv = g.leading().and_then(Field::inv).ok_or(Error::DivisionByZeroPoly)?;
    let ctx = f.ctx.clone();
    let mut r = f.coeffs.clone();
    let Some(df) = f.degree().filter(|&d| d >= dg) else {
        return Ok((Poly::zero(&ctx), f.clone()));
    };
    let mut q = vec![F::zero(&ctx); df - dg + 1];
    for k in (0..=df - dg).rev() {
        let c = r[k + dg].mul(&lc_inv);
        if c.is_zero() {
            continue;
        }
        for (j, gj) in g.coeffs.iter().enumerate() {
            r[k + j] = r[k + j].sub(&c.mul(gj));
        }
        q[k] = c;
    }
    r.truncate(dg);
    Ok((Poly::new(q, ctx.clone()), Poly::new(r, ctx)))
}

impl<F: Field> Domain for Poly<F> {
    const FRACTION_FREE: bool = true;

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = poly_divmod(self, divisor).ok()?;
        r.is_zero().then_some(q)
    }
}

impl<F: Field> Euclidean for Poly<F> {
    type Norm = usize;

    fn norm(&self) -> usize {
        self.degree().unwrap_or(0)
    }
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        poly_divmod(self, d).expect("nonzero divisor")
    }
    fn normalizing_unit(&self) -> Self {
        match self.leading() {
            Some(lc) => Poly::constant(lc.inv().expect("nonzero")),
            None => Poly::one(&self.ctx),
        }
    }
}

/// A polynomial with leading coefficient 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly<T: Ring>(Poly<T>);

impl<T: Ring> MonicPoly<T> {
    /// `None` unless `p` is monic.
    pub fn new(p: Poly<T>) -> Option<Self> {
        p.is_monic().then_some(MonicPoly(p))
    }

    /// Build from the non-leading coefficients, lowest degree first.
    pub fn from_lower(mut lower: Vec<T>, ctx: T::Ctx) -> Self {
        lower.push(T::one(&ctx));
        MonicPoly(Poly::new(lower, ctx))
    }

    pub fn poly(&self) -> &Poly<T> {
        &self.0
    }

    pub fn into_poly(self) -> Poly<T> {
        self.0
    }

    pub fn coeffs(&self) -> &[T] {
        self.0.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("monic polynomials are nonzero")
    }
}

impl<T: Ring + fmt::Display> fmt::Display for MonicPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
