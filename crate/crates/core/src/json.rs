//! JSON encodings.
//!
//! Scalars: integers are decimal strings, rationals `"p/q"` (or `"p"`),
//! prime-field elements residue strings with the modulus stored once as the
//! matrix's `"p"`, cubic elements arrays of three rational strings in
//! β-coordinates. Parsing also accepts plain JSON integers. Objects are built
//! from `serde_json::Map`, which keeps keys sorted.

use serde_json::{json, Map, Value};

use crate::canonical::FrobeniusForm;
use crate::counterexample::{BrewerVerification, CoefficientCheck, ObstructionReport, ObstructionVerdict};
use crate::error::{Error, Result};
use crate::matrix::{verify_certificate, ElementaryConj, Matrix, SimilarityCertificate, DEFAULT_MAX_DIM};
use crate::prescribe::{Decision2x2, DiagonalTarget, FormOutcome, NonscalarityIdeal, Verdict2x2};
use crate::ring::{CubicElem, Fp, Integer, MonicPoly, PrimeField, Rational, RingTag, Scalar};

/// Scalars with a JSON encoding.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, ctx: &Self::Ctx) -> Result<Self>;

    /// One element of a comma-separated list.
    fn from_token(s: &str, ctx: &Self::Ctx) -> Result<Self> {
        Self::from_json(&Value::String(s.trim().to_string()), ctx)
    }
}

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

fn parse_integer_str(s: &str) -> Result<Integer> {
    s.trim()
        .parse::<Integer>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn integer_from_json(v: &Value) -> Result<Integer> {
    match v {
        Value::String(s) => parse_integer_str(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Integer::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Integer::from(u))
            } else {
                Err(parse_err("an integer", v))
            }
        }
        _ => Err(parse_err("an integer", v)),
    }
}

pub fn parse_rational_str(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_integer_str(s)?)),
        Some((n, d)) => {
            let d = parse_integer_str(d)?;
            if d == Integer::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_integer_str(n)?, d))
        }
    }
}

impl JsonScalar for Integer {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value, _: &()) -> Result<Self> {
        integer_from_json(v)
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value, _: &()) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational_str(s),
            _ => integer_from_json(v).map(Rational::from_integer),
        }
    }
}

impl JsonScalar for Fp {
    fn to_json(&self) -> Value {
        Value::String(self.residue().to_string())
    }
    fn from_json(v: &Value, ctx: &PrimeField) -> Result<Self> {
        Ok(ctx.elem(&integer_from_json(v)?))
    }
}

impl JsonScalar for CubicElem {
    fn to_json(&self) -> Value {
        Value::Array(self.coords().iter().map(|c| c.to_json()).collect())
    }
    fn from_json(v: &Value, _: &()) -> Result<Self> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b, c]) => Ok(CubicElem::new(
                Rational::from_json(a, &())?,
                Rational::from_json(b, &())?,
                Rational::from_json(c, &())?,
            )),
            _ => Err(parse_err("an array of three rationals", v)),
        }
    }

    /// Tokens are rationals; other elements need the array form.
    fn from_token(s: &str, _: &()) -> Result<Self> {
        Ok(CubicElem::from_rational(parse_rational_str(s.trim())?))
    }
}

pub fn matrix_to_json<T: JsonScalar>(m: &Matrix<T>, tag: RingTag) -> Value {
    let mut obj = Map::new();
    obj.insert("ring".into(), Value::String(tag.name().into()));
    if let RingTag::Fp(p) = tag {
        obj.insert("p".into(), json!(p));
    }
    obj.insert("n".into(), json!(m.rows()));
    let entries = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(JsonScalar::to_json).collect()))
        .collect();
    obj.insert("entries".into(), Value::Array(entries));
    Value::Object(obj)
}

/// Reads `"entries"` into `T` and checks the shape against `"n"` and every
/// entry against `tag`.
pub fn matrix_from_json<T: JsonScalar>(v: &Value, ctx: &T::Ctx, tag: RingTag) -> Result<Matrix<T>> {
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("matrix needs an \"entries\" array".into()))?;
    let n = rows.len();
    if let Some(declared) = v.get("n") {
        if declared.as_u64() != Some(n as u64) {
            return Err(Error::Parse(format!("\"n\" is {declared} but there are {n} rows")));
        }
    }
    if n == 0 || n > DEFAULT_MAX_DIM {
        return Err(Error::Parse(format!("dimension {n} outside 1..={DEFAULT_MAX_DIM}")));
    }
    let mut parsed = Vec::with_capacity(n);
    for row in rows {
        let row = row.as_array().ok_or_else(|| parse_err("a row array", row))?;
        if row.len() != n {
            return Err(Error::Parse(format!("row of length {} in a {n}x{n} matrix", row.len())));
        }
        parsed.push(row.iter().map(|e| T::from_json(e, ctx)).collect::<Result<Vec<T>>>()?);
    }
    let m = Matrix::from_rows_ctx(parsed, ctx);
    if !m.all_in_ring(tag) {
        return Err(Error::Parse(format!("entries are not all in {tag}")));
    }
    Ok(m)
}

/// A square matrix over one of the supported rings, as read from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Z(Matrix<Integer>),
    Q(Matrix<Rational>),
    Fp(Matrix<Fp>),
    QBeta(Matrix<CubicElem>),
    /// Stored in β-coordinates; every entry lies in ℤ[α].
    ZAlpha(Matrix<CubicElem>),
}

impl AnyMatrix {
    pub fn tag(&self) -> RingTag {
        match self {
            AnyMatrix::Z(_) => RingTag::Z,
            AnyMatrix::Q(_) => RingTag::Q,
            AnyMatrix::Fp(m) => RingTag::Fp(m.context().modulus()),
            AnyMatrix::QBeta(_) => RingTag::QBeta,
            AnyMatrix::ZAlpha(_) => RingTag::ZAlpha,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyMatrix::Z(m) => m.n(),
            AnyMatrix::Q(m) => m.n(),
            AnyMatrix::Fp(m) => m.n(),
            AnyMatrix::QBeta(m) | AnyMatrix::ZAlpha(m) => m.n(),
        }
    }

    pub fn to_json(&self) -> Value {
        let tag = self.tag();
        match self {
            AnyMatrix::Z(m) => matrix_to_json(m, tag),
            AnyMatrix::Q(m) => matrix_to_json(m, tag),
            AnyMatrix::Fp(m) => matrix_to_json(m, tag),
            AnyMatrix::QBeta(m) | AnyMatrix::ZAlpha(m) => matrix_to_json(m, tag),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = v
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("matrix needs a \"ring\" string".into()))?;
        let p = match v.get("p") {
            None => None,
            Some(p) => Some(p.as_u64().ok_or_else(|| parse_err("a positive integer \"p\"", p))?),
        };
        let tag = RingTag::parse(ring, p)
            .ok_or_else(|| Error::Parse(format!("unknown ring {ring:?} (Fp needs \"p\")")))?;
        Ok(match tag {
            RingTag::Z => AnyMatrix::Z(matrix_from_json(v, &(), tag)?),
            RingTag::Q => AnyMatrix::Q(matrix_from_json(v, &(), tag)?),
            RingTag::Fp(p) => {
                let field = PrimeField::from_u64(p)?;
                AnyMatrix::Fp(matrix_from_json(v, &field, tag)?)
            }
            RingTag::QBeta => AnyMatrix::QBeta(matrix_from_json(v, &(), tag)?),
            RingTag::ZAlpha => AnyMatrix::ZAlpha(matrix_from_json(v, &(), tag)?),
        })
    }
}

pub fn poly_to_json<T: JsonScalar>(f: &MonicPoly<T>) -> Value {
    Value::Array(f.coeffs().iter().map(JsonScalar::to_json).collect())
}

pub fn poly_from_json<T: JsonScalar>(v: &Value, ctx: &T::Ctx) -> Result<MonicPoly<T>> {
    let coeffs = v
        .as_array()
        .ok_or_else(|| parse_err("a coefficient array", v))?
        .iter()
        .map(|c| T::from_json(c, ctx))
        .collect::<Result<Vec<T>>>()?;
    MonicPoly::new(crate::ring::Poly::new(coeffs, ctx.clone()))
        .ok_or_else(|| Error::Parse("polynomial is not monic".into()))
}

fn step_to_json<T: JsonScalar>(e: &ElementaryConj<T>) -> Value {
    match e {
        ElementaryConj::Transvection { i, j, t } => {
            json!({"kind": "transvection", "i": i, "j": j, "t": t.to_json()})
        }
        ElementaryConj::Permutation(p) => json!({"kind": "permutation", "perm": p}),
        ElementaryConj::DiagonalUnit(u) => {
            json!({"kind": "diagonal_unit", "units": u.iter().map(JsonScalar::to_json).collect::<Vec<_>>()})
        }
    }
}

fn step_from_json<T: JsonScalar>(v: &Value, ctx: &T::Ctx) -> Result<ElementaryConj<T>> {
    let index = |k: &str| -> Result<usize> {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("step needs index {k:?}")))
    };
    let list = |k: &str| -> Result<&Vec<Value>> {
        v.get(k)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("step needs array {k:?}")))
    };
    match v.get("kind").and_then(Value::as_str) {
        Some("transvection") => Ok(ElementaryConj::Transvection {
            i: index("i")?,
            j: index("j")?,
            t: T::from_json(v.get("t").unwrap_or(&Value::Null), ctx)?,
        }),
        Some("permutation") => Ok(ElementaryConj::Permutation(
            list("perm")?
                .iter()
                .map(|x| x.as_u64().map(|k| k as usize).ok_or_else(|| parse_err("an index", x)))
                .collect::<Result<_>>()?,
        )),
        Some("diagonal_unit") => Ok(ElementaryConj::DiagonalUnit(
            list("units")?.iter().map(|x| T::from_json(x, ctx)).collect::<Result<_>>()?,
        )),
        _ => Err(parse_err("a step kind", v)),
    }
}

/// Certificate object; `"verified"` is recomputed against `a` here.
pub fn certificate_to_json<T: JsonScalar>(a: &Matrix<T>, c: &SimilarityCertificate<T>) -> Value {
    let mut obj = Map::new();
    obj.insert("g".into(), matrix_to_json(&c.g, c.conj_ring));
    obj.insert("g_inv".into(), matrix_to_json(&c.g_inv, c.conj_ring));
    obj.insert("B".into(), matrix_to_json(&c.b, c.entry_ring));
    obj.insert("conj_ring".into(), Value::String(c.conj_ring.name().into()));
    obj.insert("entry_ring".into(), Value::String(c.entry_ring.name().into()));
    obj.insert("verified".into(), Value::Bool(verify_certificate(a, c)));
    if let Some(steps) = &c.steps {
        obj.insert("steps".into(), Value::Array(steps.iter().map(step_to_json).collect()));
    }
    Value::Object(obj)
}

fn tag_from_json(v: &Value, key: &str, p: Option<u64>) -> Result<RingTag> {
    v.get(key)
        .and_then(Value::as_str)
        .and_then(|s| RingTag::parse(s, p))
        .ok_or_else(|| Error::Parse(format!("certificate needs a ring tag {key:?}")))
}

/// Parses a certificate; the `"verified"` flag is returned as written.
pub fn certificate_from_json<T: JsonScalar>(v: &Value, ctx: &T::Ctx) -> Result<(SimilarityCertificate<T>, bool)> {
    let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("certificate needs {k:?}")));
    let p = field("g")?.get("p").and_then(Value::as_u64);
    let conj_ring = tag_from_json(v, "conj_ring", p)?;
    let entry_ring = tag_from_json(v, "entry_ring", p)?;
    let steps = match v.get("steps") {
        None => None,
        Some(s) => Some(
            s.as_array()
                .ok_or_else(|| parse_err("a steps array", s))?
                .iter()
                .map(|e| step_from_json(e, ctx))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let cert = SimilarityCertificate {
        g: matrix_from_json(field("g")?, ctx, conj_ring)?,
        g_inv: matrix_from_json(field("g_inv")?, ctx, conj_ring)?,
        b: matrix_from_json(field("B")?, ctx, entry_ring)?,
        conj_ring,
        entry_ring,
        steps,
    };
    let verified = field("verified")?.as_bool().ok_or_else(|| Error::Parse("\"verified\" must be a bool".into()))?;
    Ok((cert, verified))
}

fn int_json(x: &Integer) -> Value {
    x.to_json()
}

fn outcome_to_json(o: &FormOutcome) -> Value {
    match o {
        FormOutcome::Represents { s, t, value } => {
            json!({"kind": "represents", "s": int_json(s), "t": int_json(t), "value": int_json(value)})
        }
        FormOutcome::DefiniteMinimum { minimum, s_radius, t_radius } => json!({
            "kind": "definite_minimum",
            "minimum": int_json(minimum),
            "s_radius": int_json(s_radius),
            "t_radius": int_json(t_radius),
        }),
        FormOutcome::NeverUnit { reason } => json!({"kind": "never_unit", "reason": reason}),
        FormOutcome::Inconclusive { bound } => json!({"kind": "inconclusive", "bound": bound}),
    }
}

pub fn decision_to_json(a: &Matrix<Integer>, d: &Decision2x2) -> Value {
    let candidates: Vec<Value> = d
        .candidates
        .iter()
        .map(|c| {
            json!({
                "B": matrix_to_json(&c.b, RingTag::Z),
                "lattice": c.lattice.to_rows().iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "form": {"a": int_json(&c.form.a), "b": int_json(&c.form.b), "c": int_json(&c.form.c)},
                "outcome": outcome_to_json(&c.outcome),
            })
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("candidates".into(), Value::Array(candidates));
    match &d.verdict {
        Verdict2x2::Similar(cert) => {
            obj.insert("verdict".into(), json!("Similar"));
            obj.insert("certificate".into(), certificate_to_json(a, cert));
        }
        Verdict2x2::NotSimilar => {
            obj.insert("verdict".into(), json!("NotSimilar"));
        }
        Verdict2x2::Unknown { bound } => {
            obj.insert("verdict".into(), json!("Unknown"));
            obj.insert("bound".into(), json!(bound));
        }
    }
    Value::Object(obj)
}

fn coefficient_json(c: &CoefficientCheck) -> Value {
    json!({"degree": c.degree, "value": c.value.to_json(), "in_subring": c.in_subring})
}

pub fn report_to_json(r: &ObstructionReport) -> Value {
    json!({
        "minimal_poly": poly_to_json(&r.minimal_poly),
        "integrality_failures": r.integrality_failures.iter().map(coefficient_json).collect::<Vec<_>>(),
        "forced_products": r.forced_products.iter().map(|p| json!({
            "name": p.name,
            "value": p.value.to_json(),
            "in_subring": p.in_subring,
        })).collect::<Vec<_>>(),
        "verdict": match r.verdict {
            ObstructionVerdict::Obstructed => "Obstructed",
            ObstructionVerdict::Inconclusive => "Inconclusive",
        },
    })
}

pub fn brewer_to_json(v: &BrewerVerification) -> Value {
    json!({
        "matrix": matrix_to_json(&v.matrix, RingTag::ZAlpha),
        "charpoly": poly_to_json(&v.charpoly),
        "charpoly_coefficients": v.charpoly_checks.iter().map(coefficient_json).collect::<Vec<_>>(),
        "minpoly_coefficients": v.minpoly_checks.iter().map(coefficient_json).collect::<Vec<_>>(),
        "half_alpha_variant_annihilates": v.half_alpha_variant_annihilates,
        "report": report_to_json(&v.report),
        "notes": v.notes,
    })
}

pub fn frobenius_to_json<F: JsonScalar + crate::ring::Field>(a: &Matrix<F>, f: &FrobeniusForm<F>) -> Value {
    let tag = f.transform.conj_ring;
    json!({
        "blocks": f.blocks.iter().map(poly_to_json).collect::<Vec<_>>(),
        "rcf": matrix_to_json(&f.rcf, tag),
        "transform": certificate_to_json(a, &f.transform),
    })
}

pub fn ideal_to_json(i: &NonscalarityIdeal) -> Value {
    json!({
        "generator": int_json(&i.generator),
        "generators": i.generators.iter().map(int_json).collect::<Vec<_>>(),
        "is_unit": i.is_unit(),
    })
}

/// Diagonal target from `"1,-1,0"` or a JSON array such as `[["1","0","0"], 2]`.
pub fn parse_gamma<T: JsonScalar>(s: &str, ctx: &T::Ctx) -> Result<DiagonalTarget<T>> {
    let s = s.trim();
    let gamma = if s.starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("gamma: {e}")))?;
        v.as_array()
            .ok_or_else(|| parse_err("a gamma array", &v))?
            .iter()
            .map(|x| match x {
                Value::String(t) => T::from_token(t, ctx),
                _ => T::from_json(x, ctx),
            })
            .collect::<Result<Vec<T>>>()?
    } else {
        s.split(',').map(|t| T::from_token(t, ctx)).collect::<Result<Vec<T>>>()?
    };
    Ok(DiagonalTarget::new(gamma))
}

/// Canonical text form: pretty-printed with sorted keys and a final newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prescribe::{prescribe_with_unit, DiagonalTarget};
    use crate::ring::{int, rat};

    #[test]
    fn scalar_encodings() {
        assert_eq!(int(-12).to_json(), json!("-12"));
        assert_eq!(rat(3, -6).to_json(), json!("-1/2"));
        assert_eq!(rat(4, 2).to_json(), json!("2"));
        assert_eq!(Rational::from_json(&json!("6/4"), &()).unwrap(), rat(3, 2));
        assert_eq!(Rational::from_json(&json!(7), &()).unwrap(), rat(7, 1));
        assert!(Rational::from_json(&json!("1/0"), &()).is_err());
        assert!(Integer::from_json(&json!(1.5), &()).is_err());
        assert_eq!(CubicElem::from_ints(0, 8, -2).to_json(), json!(["0", "8", "-2"]));
        let f = PrimeField::from_u64(7).unwrap();
        assert_eq!(Fp::from_json(&json!("-1"), &f).unwrap(), f.elem_i64(6));
    }

    #[test]
    fn matrix_round_trip() {
        for text in [
            r#"{"ring":"Z","n":2,"entries":[["1","2"],["-3","-1"]]}"#,
            r#"{"ring":"Q","n":2,"entries":[["1/2","0"],["3","-7/3"]]}"#,
            r#"{"ring":"Fp","p":5,"n":2,"entries":[["0","1"],["1","0"]]}"#,
            r#"{"ring":"Qbeta","n":1,"entries":[[["1","1/2","0"]]]}"#,
            r#"{"ring":"Zalpha","n":1,"entries":[[["1","2","4"]]]}"#,
        ] {
            let v: Value = serde_json::from_str(text).unwrap();
            let m = AnyMatrix::from_json(&v).unwrap();
            assert_eq!(m.to_json(), v);
            assert_eq!(AnyMatrix::from_json(&m.to_json()).unwrap(), m);
        }
    }

    #[test]
    fn matrix_rejections() {
        for text in [
            r#"{"ring":"Z","n":3,"entries":[["1","2"],["3","4"]]}"#,
            r#"{"ring":"Z","entries":[["1","2"],["3"]]}"#,
            r#"{"ring":"Z","entries":[["1/2","2"],["3","4"]]}"#,
            r#"{"ring":"Fp","entries":[["1"]]}"#,
            r#"{"ring":"Fp","p":6,"entries":[["1"]]}"#,
            r#"{"ring":"Zalpha","entries":[[["0","1","0"]]]}"#,
            r#"{"ring":"R","entries":[["1"]]}"#,
            r#"{"ring":"Z","entries":[]}"#,
        ] {
            let v: Value = serde_json::from_str(text).unwrap();
            assert!(AnyMatrix::from_json(&v).is_err(), "{text}");
        }
    }

    #[test]
    fn certificate_round_trip() {
        let a = Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let t = DiagonalTarget::new(vec![int(1), int(2), int(-3)]);
        let c = prescribe_with_unit(&a, &t).unwrap();
        let v = certificate_to_json(&a, &c);
        assert_eq!(v["verified"], json!(true));
        let (back, verified) = certificate_from_json::<Integer>(&v, &()).unwrap();
        assert!(verified);
        assert_eq!(back, c);
        let text = to_canonical_string(&v);
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed, v);
    }

    #[test]
    fn gamma_lists() {
        let t: DiagonalTarget<Integer> = parse_gamma("3, 0,-1", &()).unwrap();
        assert_eq!(t.gamma, vec![int(3), int(0), int(-1)]);
        let t: DiagonalTarget<Rational> = parse_gamma(r#"["1/2", 3]"#, &()).unwrap();
        assert_eq!(t.gamma, vec![rat(1, 2), rat(3, 1)]);
        let t: DiagonalTarget<CubicElem> = parse_gamma(r#"[["0","1","0"], "1/2"]"#, &()).unwrap();
        assert_eq!(t.gamma, vec![CubicElem::beta(), CubicElem::from_rational(rat(1, 2))]);
        let t: DiagonalTarget<CubicElem> = parse_gamma("1,-1,0", &()).unwrap();
        assert_eq!(t.gamma[1], CubicElem::from_ints(-1, 0, 0));
        assert!(parse_gamma::<Integer>("1,,2", &()).is_err());
        assert!(parse_gamma::<Integer>("[1,", &()).is_err());
    }

    #[test]
    fn keys_are_sorted() {
        let a = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let c = SimilarityCertificate::identity(&a, RingTag::Z, RingTag::Z);
        let text = to_canonical_string(&certificate_to_json(&a, &c));
        let keys: Vec<usize> = ["\"B\"", "\"conj_ring\"", "\"entry_ring\"", "\"g\"", "\"g_inv\"", "\"steps\"", "\"verified\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}
