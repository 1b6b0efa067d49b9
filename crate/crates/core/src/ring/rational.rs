use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Domain, Field, Integer, Ring, RingTag, Scalar};

/// Exact rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Ring for BigRational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        BigRational::from_integer(0.into())
    }
    fn one(_: &()) -> Self {
        BigRational::from_integer(1.into())
    }
    fn from_int(_: &(), n: &Integer) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Domain for BigRational {
    const FRACTION_FREE: bool = false;

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

impl Field for BigRational {}

impl Scalar for BigRational {
    fn native_tag(_: &()) -> RingTag {
        RingTag::Q
    }
    fn in_ring(&self, tag: RingTag) -> bool {
        match tag {
            RingTag::Z | RingTag::ZAlpha => self.is_integer(),
            RingTag::Q | RingTag::QBeta => true,
            RingTag::Fp(_) => false,
        }
    }
    fn is_unit_in(&self, tag: RingTag) -> bool {
        match tag {
            RingTag::Z | RingTag::ZAlpha => self.is_integer() && One::is_one(&self.abs()),
            RingTag::Q | RingTag::QBeta => !Zero::is_zero(self),
            RingTag::Fp(_) => false,
        }
    }
}
