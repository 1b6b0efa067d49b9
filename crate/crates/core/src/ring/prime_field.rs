use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;

use super::{is_prime_trial, Domain, Field, Integer, Ring, RingTag, Scalar};
use crate::error::{Error, Result};

/// Trial divisors are tried up to this bound; moduli whose primality it
/// cannot settle are rejected.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// The field 𝔽_p. Construct with [`PrimeField::new`], which checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: &Integer) -> Result<Self> {
        match is_prime_trial(p, TRIAL_DIVISION_LIMIT) {
            Some(true) => Ok(PrimeField {
                p: p.to_u64().expect("checked prime fits below 10^12"),
            }),
            Some(false) => Err(Error::InvalidModulus(p.to_string(), "not prime")),
            None => Err(Error::InvalidModulus(
                p.to_string(),
                "beyond the trial-division bound",
            )),
        }
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(&BigInt::from(p))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: &Integer) -> Fp {
        let r = n.mod_floor(&BigInt::from(self.p));
        Fp {
            residue: r.to_u64().expect("reduced residue"),
            p: self.p,
        }
    }

    pub fn elem_i64(&self, n: i64) -> Fp {
        self.elem(&BigInt::from(n))
    }
}

/// An element of 𝔽_p, residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    residue: u64,
    p: u64,
}

impl Fp {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn with(&self, residue: u64) -> Fp {
        Fp { residue, p: self.p }
    }

    fn pow(&self, mut e: u64) -> Fp {
        let p = self.p as u128;
        let mut base = self.residue as u128;
        let mut acc = 1u128 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        self.with(acc as u64)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Ring for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
    fn zero(ctx: &PrimeField) -> Self {
        Fp { residue: 0, p: ctx.p }
    }
    fn one(ctx: &PrimeField) -> Self {
        Fp {
            residue: 1 % ctx.p,
            p: ctx.p,
        }
    }
    fn from_int(ctx: &PrimeField, n: &Integer) -> Self {
        ctx.elem(n)
    }
    fn is_zero(&self) -> bool {
        self.residue == 0
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        self.with(((self.residue as u128 + other.residue as u128) % self.p as u128) as u64)
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        self.with(
            ((self.residue as u128 + self.p as u128 - other.residue as u128) % self.p as u128)
                as u64,
        )
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        self.with(((self.residue as u128 * other.residue as u128) % self.p as u128) as u64)
    }
    fn neg(&self) -> Self {
        self.with((self.p - self.residue) % self.p)
    }
    fn unit_inverse(&self) -> Option<Self> {
        (self.residue != 0).then(|| self.pow(self.p - 2))
    }
}

impl Domain for Fp {
    const FRACTION_FREE: bool = false;

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

impl Field for Fp {}

impl Scalar for Fp {
    fn native_tag(ctx: &PrimeField) -> RingTag {
        RingTag::Fp(ctx.p)
    }
    fn in_ring(&self, tag: RingTag) -> bool {
        tag == RingTag::Fp(self.p)
    }
    fn is_unit_in(&self, tag: RingTag) -> bool {
        self.in_ring(tag) && self.residue != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks_primality() {
        assert!(PrimeField::from_u64(2).is_ok());
        assert!(PrimeField::from_u64(101).is_ok());
        assert!(matches!(PrimeField::from_u64(1), Err(Error::InvalidModulus(..))));
        assert!(matches!(PrimeField::from_u64(91), Err(Error::InvalidModulus(..))));
        // 1_000_003^2 is beyond what divisors up to 10^6 can certify
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64);
        assert!(matches!(PrimeField::new(&big), Err(Error::InvalidModulus(_, msg)) if msg.contains("bound")));
        // 10^12 + 39 is prime and decidable
        assert!(PrimeField::from_u64(1_000_000_000_039).is_ok());
    }

    #[test]
    fn inverses_in_small_fields() {
        for p in [2u64, 3, 5, 7, 101] {
            let f = PrimeField::from_u64(p).unwrap();
            for a in 1..p {
                let x = f.elem_i64(a as i64);
                assert!(x.mul(&x.inv().unwrap()).is_one());
            }
            assert_eq!(f.elem_i64(0).inv(), None);
        }
    }

    #[test]
    fn negative_residues_reduce() {
        let f = PrimeField::from_u64(5).unwrap();
        assert_eq!(f.elem_i64(-1).residue(), 4);
        assert_eq!(f.elem_i64(-1).add(&f.elem_i64(1)), Fp::zero(&f));
        assert_eq!(f.elem_i64(3).neg().residue(), 2);
    }
}
