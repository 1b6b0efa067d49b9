//! Exact coefficient domains.
//!
//! Every scalar type implements [`Ring`]. Arithmetic is spelled as methods
//! (`a.add(&b)`) so generic code does not need higher-ranked operator bounds.
//! Types whose elements need runtime data (the modulus of a prime field)
//! carry it in [`Ring::Ctx`]; everything else uses `()`.

mod cubic;
mod integer;
mod poly;
mod prime_field;
mod rational;

use std::fmt::{self, Debug, Display};

pub use cubic::{in_z_alpha, CubicElem, SubringZAlpha};
pub use integer::{crt, ext_gcd, factor_trial, gcd_all, int, is_prime_trial, Integer};
pub use poly::{poly_divmod, MonicPoly, Poly};
pub use prime_field::{Fp, PrimeField, TRIAL_DIVISION_LIMIT};
pub use rational::{rat, Rational};

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: &Integer) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// The multiplicative inverse, if `self` is a unit of this ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_int(ctx, &Integer::from(n))
    }
}

/// An integral domain with exact division.
pub trait Domain: Ring {
    /// `Some(q)` with `q * divisor == self`, or `None` if `divisor` does not divide.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    /// Whether determinants should be computed fraction-free.
    const FRACTION_FREE: bool;
}

/// A field: every nonzero element is a unit.
pub trait Field: Domain {
    fn inv(&self) -> Option<Self> {
        self.unit_inverse()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// A Euclidean domain: ℤ with absolute value, or K[x] with degree.
pub trait Euclidean: Domain {
    type Norm: Ord;

    /// Euclidean size of a nonzero element.
    fn norm(&self) -> Self::Norm;
    /// Division with remainder, `self = q * d + r` with `r == 0` or `norm(r) < norm(d)`.
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self);
    /// A unit `u` such that `u * self` is the canonical associate
    /// (nonnegative integer, monic polynomial). Zero maps to `1`.
    fn normalizing_unit(&self) -> Self;
}

/// Tags for the rings that appear in certificates and JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingTag {
    Z,
    Q,
    Fp(u64),
    QBeta,
    /// The order ℤ[α] = ℤ + 2βℤ + 4β²ℤ inside ℚ(β), α = ∛16.
    ZAlpha,
}

impl RingTag {
    pub fn name(&self) -> &'static str {
        match self {
            RingTag::Z => "Z",
            RingTag::Q => "Q",
            RingTag::Fp(_) => "Fp",
            RingTag::QBeta => "Qbeta",
            RingTag::ZAlpha => "Zalpha",
        }
    }

    pub fn parse(name: &str, p: Option<u64>) -> Option<RingTag> {
        Some(match (name, p) {
            ("Z", _) => RingTag::Z,
            ("Q", _) => RingTag::Q,
            ("Fp", Some(p)) => RingTag::Fp(p),
            ("Qbeta", _) => RingTag::QBeta,
            ("Zalpha", _) => RingTag::ZAlpha,
            _ => return None,
        })
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingTag::Q | RingTag::Fp(_) | RingTag::QBeta)
    }
}

impl Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Fp(p) => write!(f, "F_{p}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Scalars that know which tagged rings they belong to.
pub trait Scalar: Domain + Display {
    /// The ring the type itself models.
    fn native_tag(ctx: &Self::Ctx) -> RingTag;
    /// Membership in a (sub)ring named by `tag`. Tags unrelated to the type
    /// return `false`.
    fn in_ring(&self, tag: RingTag) -> bool;
    /// Whether `self` is a unit of the ring named by `tag`.
    fn is_unit_in(&self, tag: RingTag) -> bool;
}
