use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{Domain, Euclidean, Ring, RingTag, Scalar};
use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// Shorthand for small integer literals.
pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

impl Ring for BigInt {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        BigInt::from(0)
    }
    fn one(_: &()) -> Self {
        BigInt::from(1)
    }
    fn from_int(_: &(), n: &Integer) -> Self {
        n.clone()
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
        (self.magnitude().is_one()).then(|| self.clone())
    }
}

impl Domain for BigInt {
    const FRACTION_FREE: bool = true;

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Euclidean for BigInt {
    type Norm = num_bigint::BigUint;

    fn norm(&self) -> Self::Norm {
        self.magnitude().clone()
    }
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        self.div_rem(d)
    }
    fn normalizing_unit(&self) -> Self {
        if self.sign() == Sign::Minus {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        }
    }
}

impl Scalar for BigInt {
    fn native_tag(_: &()) -> RingTag {
        RingTag::Z
    }
    fn in_ring(&self, tag: RingTag) -> bool {
        !matches!(tag, RingTag::Fp(_))
    }
    fn is_unit_in(&self, tag: RingTag) -> bool {
        match tag {
            RingTag::Z | RingTag::ZAlpha => self.magnitude().is_one(),
            RingTag::Q | RingTag::QBeta => !Zero::is_zero(self),
            RingTag::Fp(_) => false,
        }
    }
}

/// Extended Euclid: returns `(g, x, y)` with `g = a*x + b*y = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_x, mut x) = (BigInt::from(1), BigInt::from(0));
    let (mut old_y, mut y) = (BigInt::from(0), BigInt::from(1));
    while !Zero::is_zero(&r) {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_x = &old_x - &q * &x;
        old_x = std::mem::replace(&mut x, next_x);
        let next_y = &old_y - &q * &y;
        old_y = std::mem::replace(&mut y, next_y);
    }
    if old_r.is_negative() {
        (-old_r, -old_x, -old_y)
    } else {
        (old_r, old_x, old_y)
    }
}

/// gcd of a list (0 for the empty list or all zeros).
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Integer>) -> Integer {
    values
        .into_iter()
        .fold(BigInt::from(0), |acc, v| acc.gcd(v))
}

/// Chinese remaindering for pairwise coprime moduli. The result lies in `[0, Π m_i)`.
pub fn crt(residues: &[(Integer, Integer)]) -> Result<Integer> {
    let mut acc = BigInt::from(0);
    let mut modulus = BigInt::from(1);
    for (r, m) in residues {
        if *m < BigInt::from(1) {
            return Err(Error::InvalidArgument(format!("modulus {m} < 1")));
        }
        let (g, x, _) = ext_gcd(&modulus, m);
        if !One::is_one(&g) {
            return Err(Error::NonCoprimeModuli);
        }
        // acc + modulus * k ≡ r (mod m)  with  k = (r - acc) * modulus^{-1}
        let k = ((r - &acc) * x).mod_floor(m);
        acc += &modulus * k;
        modulus *= m;
        acc = acc.mod_floor(&modulus);
    }
    Ok(acc)
}

/// Primality by trial division. `None` when `n` has no factor below the
/// division limit but is too large for the limit to be conclusive.
pub fn is_prime_trial(n: &Integer, limit: u64) -> Option<bool> {
    if *n < int(2) {
        return Some(false);
    }
    let mut d = 2u64;
    while d <= limit {
        let dd = BigInt::from(d);
        if &dd * &dd > *n {
            return Some(true);
        }
        if Zero::is_zero(&(n % &dd)) {
            return Some(*n == dd);
        }
        d += 1;
    }
    let dd = BigInt::from(d);
    if &dd * &dd > *n {
        Some(true)
    } else {
        None
    }
}

/// Prime factors (with multiplicity) of `|n|` by trial division up to
/// `limit`. Any cofactor left over is returned as the last entry and may
/// be composite.
pub fn factor_trial(n: &Integer, limit: u64) -> Vec<Integer> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n <= BigInt::from(1) {
        return out;
    }
    let mut d = 2u64;
    while d <= limit {
        let dd = BigInt::from(d);
        if &dd * &dd > n {
            break;
        }
        while Zero::is_zero(&(&n % &dd)) {
            out.push(dd.clone());
            n /= &dd;
        }
        d += 1;
    }
    if n > BigInt::from(1) {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_gcd(a: i64, b: i64) -> i64 {
        let m = a.abs().max(b.abs());
        (1..=m).rev().find(|d| a % d == 0 && b % d == 0).unwrap_or(0)
    }

    #[test]
    fn ext_gcd_examples() {
        let (g, x, y) = ext_gcd(&int(2), &int(-3));
        assert_eq!(g, int(1));
        assert_eq!(int(2) * &x + int(-3) * &y, g);

        assert_eq!(ext_gcd(&int(0), &int(0)).0, int(0));

        let (g, x, y) = ext_gcd(&int(4), &int(6));
        assert_eq!(g, int(brute_gcd(4, 6)));
        assert_eq!(g, int(2));
        assert_eq!(int(4) * x + int(6) * y, g);
    }

    #[test]
    fn ext_gcd_matches_brute_force_on_small_grid() {
        for a in -12..=12 {
            for b in -12..=12 {
                let (g, x, y) = ext_gcd(&int(a), &int(b));
                assert_eq!(g, int(brute_gcd(a, b)), "gcd({a},{b})");
                assert_eq!(int(a) * x + int(b) * y, g);
            }
        }
    }

    #[test]
    fn crt_examples() {
        // enumerate 0..6 for the oracle
        let oracle = (0..6).find(|x| x % 2 == 1 && x % 3 == 2).unwrap();
        assert_eq!(crt(&[(int(1), int(2)), (int(2), int(3))]).unwrap(), int(oracle));
        assert_eq!(oracle, 5);
        assert_eq!(crt(&[(int(0), int(7))]).unwrap(), int(0));
        assert_eq!(
            crt(&[(int(1), int(2)), (int(1), int(3)), (int(1), int(5))]).unwrap(),
            int(1)
        );
        assert_eq!(
            crt(&[(int(1), int(4)), (int(1), int(6))]),
            Err(Error::NonCoprimeModuli)
        );
    }

    #[test]
    fn crt_handles_negative_residues() {
        let r = crt(&[(int(-1), int(5)), (int(3), int(7))]).unwrap();
        assert_eq!(r.mod_floor(&int(5)), int(4));
        assert_eq!(r.mod_floor(&int(7)), int(3));
        assert!(r >= int(0) && r < int(35));
    }

    #[test]
    fn trial_division() {
        assert_eq!(is_prime_trial(&int(2), 10), Some(true));
        assert_eq!(is_prime_trial(&int(101), 10), Some(true));
        assert_eq!(is_prime_trial(&int(91), 10), Some(false));
        assert_eq!(is_prime_trial(&int(1), 10), Some(false));
        // 131 * 137 has no factor <= 10 and 11^2 < 17947
        assert_eq!(is_prime_trial(&int(131 * 137), 10), None);
        assert_eq!(factor_trial(&int(-60), 100), vec![int(2), int(2), int(3), int(5)]);
        assert_eq!(factor_trial(&int(1), 100), Vec::<Integer>::new());
    }
}
