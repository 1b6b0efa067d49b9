use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use super::{rat, Domain, Field, Integer, Rational, Ring, RingTag, Scalar};
use crate::matrix::Matrix;

/// An element `a + bβ + cβ²` of ℚ(β), β = ∛2.
///
/// The order ℤ[α] with α = ∛16 = 2β is ℤ + 2βℤ + 4β²ℤ in these coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicElem {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl CubicElem {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        CubicElem { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        CubicElem::new(rat(a, 1), rat(b, 1), rat(c, 1))
    }

    /// `a + bα + cα²` with α = 2β, i.e. `(a, 2b, 4c)` in β-coordinates.
    pub fn from_alpha_coords(a: Rational, b: Rational, c: Rational) -> Self {
        CubicElem::new(a, b * rat(2, 1), c * rat(4, 1))
    }

    pub fn from_rational(q: Rational) -> Self {
        CubicElem::new(q, rat(0, 1), rat(0, 1))
    }

    pub fn beta() -> Self {
        CubicElem::from_ints(0, 1, 0)
    }

    /// α = ∛16 = 2β.
    pub fn alpha() -> Self {
        CubicElem::from_ints(0, 2, 0)
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CubicElem::new(&self.a * q, &self.b * q, &self.c * q)
    }

    /// Matrix of multiplication by `self` on the basis {1, β, β²}.
    pub fn regular_representation(&self) -> Matrix<Rational> {
        let two = rat(2, 1);
        let (a, b, c) = (&self.a, &self.b, &self.c);
        Matrix::from_rows(vec![
            vec![a.clone(), &two * c, &two * b],
            vec![b.clone(), a.clone(), &two * c],
            vec![c.clone(), b.clone(), a.clone()],
        ])
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }
}

/// Membership in ℤ[α]: `a ∈ ℤ`, `b ∈ 2ℤ`, `c ∈ 4ℤ`.
pub fn in_z_alpha(x: &CubicElem) -> bool {
    fn multiple_of(q: &Rational, m: i64) -> bool {
        q.is_integer() && (q.numer() % Integer::from(m)).is_zero()
    }
    multiple_of(&x.a, 1) && multiple_of(&x.b, 2) && multiple_of(&x.c, 4)
}

/// Membership predicate for the order ℤ[α] ⊂ ℚ(β).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SubringZAlpha;

impl SubringZAlpha {
    pub fn contains(&self, x: &CubicElem) -> bool {
        in_z_alpha(x)
    }
}

impl fmt::Display for CubicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (coef, unit) in [(&self.a, ""), (&self.b, "β"), (&self.c, "β²")] {
            if coef.is_zero() {
                continue;
            }
            let negative = coef.is_negative();
            let mag = coef.abs();
            if wrote {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            if unit.is_empty() || !Ring::is_one(&mag) {
                write!(f, "{mag}")?;
            }
            f.write_str(unit)?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Ring for CubicElem {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        CubicElem::from_ints(0, 0, 0)
    }
    fn one(_: &()) -> Self {
        CubicElem::from_ints(1, 0, 0)
    }
    fn from_int(_: &(), n: &Integer) -> Self {
        CubicElem::from_rational(BigRational::from_integer(n.clone()))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        CubicElem::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c)
    }
    fn sub(&self, o: &Self) -> Self {
        CubicElem::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c)
    }
    /// `(a,b,c)(d,e,f) = (ad + 2(bf+ce), ae + bd + 2cf, af + cd + be)`.
    fn mul(&self, o: &Self) -> Self {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (d, e, f) = (&o.a, &o.b, &o.c);
        let two = rat(2, 1);
        CubicElem::new(
            a * d + &two * (b * f + c * e),
            a * e + b * d + &two * c * f,
            a * f + c * d + b * e,
        )
    }
    fn neg(&self) -> Self {
        CubicElem::new(-&self.a, -&self.b, -&self.c)
    }
    /// Solves `x · y = 1` through the regular representation of `x`.
    fn unit_inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let m = self.regular_representation();
        let rhs = Matrix::from_rows(vec![vec![rat(1, 1)], vec![rat(0, 1)], vec![rat(0, 1)]]);
        let y = m.solve(&rhs)?;
        Some(CubicElem::new(
            y.get(0, 0).clone(),
            y.get(1, 0).clone(),
            y.get(2, 0).clone(),
        ))
    }
}

impl Domain for CubicElem {
    const FRACTION_FREE: bool = true;

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

impl Field for CubicElem {}

impl Scalar for CubicElem {
    fn native_tag(_: &()) -> RingTag {
        RingTag::QBeta
    }
    fn in_ring(&self, tag: RingTag) -> bool {
        match tag {
            RingTag::QBeta => true,
            RingTag::ZAlpha => in_z_alpha(self),
            RingTag::Q => self.is_rational(),
            RingTag::Z => self.is_rational() && self.a.is_integer(),
            RingTag::Fp(_) => false,
        }
    }
    fn is_unit_in(&self, tag: RingTag) -> bool {
        if !self.in_ring(tag) || Ring::is_zero(self) {
            return false;
        }
        tag.is_field() || self.inv().is_some_and(|i| i.in_ring(tag))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cube(x: &CubicElem) -> CubicElem {
        x.mul(x).mul(x)
    }

    #[test]
    fn multiplication_examples() {
        let beta = CubicElem::beta();
        let beta2 = CubicElem::from_ints(0, 0, 1);
        assert_eq!(beta.mul(&beta2), CubicElem::from_ints(2, 0, 0));
        let alpha = CubicElem::alpha();
        assert_eq!(alpha.mul(&alpha), CubicElem::from_ints(0, 0, 4));
        // (α/2)^3 = 2
        assert_eq!(cube(&alpha.scale(&rat(1, 2))), CubicElem::from_ints(2, 0, 0));
        // α^3 = 16
        assert_eq!(cube(&alpha), CubicElem::from_ints(16, 0, 0));
    }

    #[test]
    fn inverse_examples() {
        let one = CubicElem::from_ints(1, 0, 0);
        assert_eq!(one.inv().unwrap(), one);
        assert_eq!(
            CubicElem::beta().inv().unwrap(),
            CubicElem::new(rat(0, 1), rat(0, 1), rat(1, 2))
        );
        assert_eq!(
            CubicElem::from_ints(2, 0, 0).inv().unwrap(),
            CubicElem::from_rational(rat(1, 2))
        );
        assert_eq!(CubicElem::from_ints(0, 0, 0).inv(), None);
    }

    #[test]
    fn membership_examples() {
        assert!(in_z_alpha(&CubicElem::alpha()));
        // α²/2 = 2β²
        let half_alpha_sq = CubicElem::alpha().mul(&CubicElem::alpha()).scale(&rat(1, 2));
        assert_eq!(half_alpha_sq, CubicElem::from_ints(0, 0, 2));
        assert!(!in_z_alpha(&half_alpha_sq));
        // 4α + α²/2
        let eb = CubicElem::alpha().scale(&rat(4, 1)).add(&half_alpha_sq);
        assert_eq!(eb, CubicElem::from_ints(0, 8, 2));
        assert!(!in_z_alpha(&eb));
        // α/2 = β is integral over ℤ but not in ℤ[α]
        assert!(!in_z_alpha(&CubicElem::beta()));
        assert!(!SubringZAlpha.contains(&CubicElem::from_rational(rat(1, 2))));
    }

    #[test]
    fn alpha_coordinates_embed() {
        let x = CubicElem::from_alpha_coords(rat(1, 1), rat(3, 1), rat(-2, 1));
        assert_eq!(x, CubicElem::from_ints(1, 6, -8));
        assert!(in_z_alpha(&x));
    }

    #[test]
    fn units_of_the_order() {
        // β - 1 has norm 1 in ℤ[β] but β ∉ ℤ[α]; α - 1 = 2β - 1 has norm 15
        assert!(!CubicElem::from_ints(-1, 2, 0).is_unit_in(RingTag::ZAlpha));
        assert!(CubicElem::from_ints(-1, 0, 0).is_unit_in(RingTag::ZAlpha));
        assert!(CubicElem::from_ints(0, 2, 0).is_unit_in(RingTag::QBeta));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..6).prop_map(|(n, d)| rat(n, d))
    }

    fn elem() -> impl Strategy<Value = CubicElem> {
        (small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c)| CubicElem::new(a, b, c))
    }

    fn member() -> impl Strategy<Value = CubicElem> {
        (-50i64..50, -50i64..50, -50i64..50)
            .prop_map(|(a, b, c)| CubicElem::from_ints(a, 2 * b, 4 * c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(x in elem(), y in elem(), z in elem()) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            if !Ring::is_zero(&x) {
                prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn order_is_closed(x in member(), y in member()) {
            prop_assert!(in_z_alpha(&x) && in_z_alpha(&y));
            prop_assert!(in_z_alpha(&x.add(&y)));
            prop_assert!(in_z_alpha(&x.mul(&y)));
        }
    }
}
