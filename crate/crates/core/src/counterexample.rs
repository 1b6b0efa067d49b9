//! The 3×3 matrix over ℤ[α], α = ∛16, whose minimal polynomial over ℚ(α)
//! leaves the order, and the diagonal it cannot be conjugated to.

use crate::canonical::{charpoly, minpoly, monic_divisor_integrality};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::prescribe::DiagonalTarget;
use crate::ring::{in_z_alpha, rat, CubicElem, MonicPoly, Ring, RingTag};

/// `(0, 2, α; 2α, 0, 4; 4, α, 0)` in β-coordinates.
pub fn brewer_matrix() -> Matrix<CubicElem> {
    let e = CubicElem::from_ints;
    Matrix::from_rows(vec![
        vec![e(0, 0, 0), e(2, 0, 0), e(0, 2, 0)],
        vec![e(0, 4, 0), e(0, 0, 0), e(4, 0, 0)],
        vec![e(4, 0, 0), e(0, 2, 0), e(0, 0, 0)],
    ])
}

/// Membership of one polynomial coefficient in ℤ[α].
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientCheck {
    pub degree: usize,
    pub value: CubicElem,
    pub in_subring: bool,
}

/// `P_ij = B_ij·B_ji`, forced by the diagonal and the minimal polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcedProduct {
    pub name: &'static str,
    pub value: CubicElem,
    pub in_subring: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// Some forced product lies outside ℤ[α], so no `B ∈ M₃(ℤ[α])` with
    /// this diagonal shares the minimal polynomial.
    Obstructed,
    /// Every forced product is in ℤ[α]; nothing is concluded.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub minimal_poly: MonicPoly<CubicElem>,
    /// Coefficients of the minimal polynomial outside ℤ[α].
    pub integrality_failures: Vec<CoefficientCheck>,
    pub forced_products: Vec<ForcedProduct>,
    pub verdict: ObstructionVerdict,
}

fn coefficient_checks(f: &MonicPoly<CubicElem>) -> Vec<CoefficientCheck> {
    f.coeffs()
        .iter()
        .enumerate()
        .take(f.degree())
        .map(|(degree, c)| CoefficientCheck {
            degree,
            value: c.clone(),
            in_subring: in_z_alpha(c),
        })
        .collect()
}

/// For `m(X) = X² + pX + q` and `B` with diagonal `γ`, the diagonal of
/// `m(B) = 0` reads `Σ_{j≠i} P_ij = -(γ_i² + pγ_i + q)`. The three equations
/// determine `P₁₂, P₁₃, P₂₃`; any of them outside ℤ[α] rules out such `B`
/// with entries in ℤ[α].
pub fn forced_products_obstruction(
    a: &Matrix<CubicElem>,
    target: &DiagonalTarget<CubicElem>,
) -> Result<ObstructionReport> {
    target.check(a)?;
    if a.n() != 3 {
        return Err(Error::DimensionMismatch(format!("expected a 3x3 matrix, got {}x{}", a.n(), a.n())));
    }
    let m = minpoly(a);
    if m.degree() != 2 {
        return Err(Error::MinpolyDegreeNotTwo(m.degree()));
    }
    let (q, p) = (&m.coeffs()[0], &m.coeffs()[1]);
    let r: Vec<CubicElem> = target
        .gamma
        .iter()
        .map(|g| g.mul(g).add(&p.mul(g)).add(q).neg())
        .collect();
    let half = rat(1, 2);
    let solve = |plus: [usize; 2], minus: usize| r[plus[0]].add(&r[plus[1]]).sub(&r[minus]).scale(&half);
    let forced_products: Vec<ForcedProduct> = [("P12", solve([0, 1], 2)), ("P13", solve([0, 2], 1)), ("P23", solve([1, 2], 0))]
        .into_iter()
        .map(|(name, value)| ForcedProduct {
            name,
            in_subring: in_z_alpha(&value),
            value,
        })
        .collect();
    let verdict = if forced_products.iter().all(|f| f.in_subring) {
        ObstructionVerdict::Inconclusive
    } else {
        ObstructionVerdict::Obstructed
    };
    Ok(ObstructionReport {
        integrality_failures: coefficient_checks(&m).into_iter().filter(|c| !c.in_subring).collect(),
        minimal_poly: m,
        forced_products,
        verdict,
    })
}

/// Full check of the ℤ[α] counterexample for the diagonal `(1, -1, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BrewerVerification {
    pub matrix: Matrix<CubicElem>,
    pub charpoly: MonicPoly<CubicElem>,
    /// Every characteristic polynomial coefficient, all in ℤ[α].
    pub charpoly_checks: Vec<CoefficientCheck>,
    /// Every minimal polynomial coefficient; the linear one is not in ℤ[α].
    pub minpoly_checks: Vec<CoefficientCheck>,
    /// Whether `x² - (α/2)x - 8α`, the variant with `α/2` in place of
    /// `α²/2`, annihilates the matrix. It does not.
    pub half_alpha_variant_annihilates: bool,
    pub report: ObstructionReport,
    pub notes: Vec<String>,
}

pub fn verify_brewer_obstruction() -> Result<BrewerVerification> {
    let a = brewer_matrix();
    let defect = |what: &str| Error::Defect(format!("counterexample check failed: {what}"));
    if !a.all_in_ring(RingTag::ZAlpha) {
        return Err(defect("entries outside Z[alpha]"));
    }
    let chi = charpoly(&a);
    let m = minpoly(&a);
    if m.degree() != 2 {
        return Err(Error::MinpolyDegreeNotTwo(m.degree()));
    }
    if !a.eval_poly(m.coeffs()).is_zero() || !a.eval_poly(chi.coeffs()).is_zero() {
        return Err(defect("polynomial does not annihilate"));
    }
    if !monic_divisor_integrality(&chi, RingTag::ZAlpha) {
        return Err(defect("characteristic polynomial leaves Z[alpha]"));
    }
    let minpoly_checks = coefficient_checks(&m);
    if minpoly_checks[1].in_subring {
        return Err(defect("linear coefficient of the minimal polynomial lies in Z[alpha]"));
    }
    // -8α and -α/2 = -β
    let variant = MonicPoly::from_lower(vec![CubicElem::from_ints(0, -16, 0), CubicElem::from_ints(0, -1, 0)], ());
    let half_alpha_variant_annihilates = a.eval_poly(variant.coeffs()).is_zero();

    let target = DiagonalTarget::new(vec![
        CubicElem::from_ints(1, 0, 0),
        CubicElem::from_ints(-1, 0, 0),
        CubicElem::from_ints(0, 0, 0),
    ]);
    let report = forced_products_obstruction(&a, &target)?;
    if report.verdict != ObstructionVerdict::Obstructed {
        return Err(defect("no forced product leaves Z[alpha]"));
    }
    let notes = vec![
        format!("minimal polynomial: {m} (beta = cbrt 2, alpha = 2 beta)"),
        format!(
            "linear coefficient {} = -alpha^2/2; x^2 - (alpha/2)x - 8alpha {} annihilate the matrix",
            minpoly_checks[1].value,
            if half_alpha_variant_annihilates { "does also" } else { "does not" }
        ),
        "characteristic polynomial coefficients all lie in Z[alpha]".into(),
    ];
    Ok(BrewerVerification {
        matrix: a,
        charpoly_checks: coefficient_checks(&chi),
        charpoly: chi,
        minpoly_checks,
        half_alpha_variant_annihilates,
        report,
        notes,
    })
}
