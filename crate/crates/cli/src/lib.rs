//! Command-line front end. Every subcommand reads a matrix as JSON and
//! writes canonical JSON; certificates are re-verified before they are
//! written.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use fillmore::canonical::{charpoly, frobenius_form, minpoly, monic_divisor_integrality};
use fillmore::counterexample::{forced_products_obstruction, verify_brewer_obstruction};
use fillmore::json::{
    brewer_to_json, certificate_to_json, decision_to_json, frobenius_to_json, ideal_to_json, parse_gamma,
    poly_to_json, report_to_json, to_canonical_string, AnyMatrix, JsonScalar,
};
use fillmore::matrix::{verify_certificate, Matrix, SimilarityCertificate};
use fillmore::prescribe::{
    decide_2x2, fillmore_field, nonscalarity_ideal, prescribe_ksim_integral, prescribe_zsim, Verdict2x2,
};
use fillmore::ring::{CubicElem, Field, Integer, MonicPoly, RingTag};
use fillmore::{Error, ErrorKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DEFECT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Kind {
    /// g over the field of the input (integer input is read over Q)
    PrescribeField,
    /// rational g, integral B, for integer input
    PrescribeKsim,
    /// unimodular g for integer input, n >= 3
    PrescribeZsim,
    /// gcd of the nonscalarity ideal of an integer matrix
    CheckIdeal,
    /// rational canonical form with its transform
    Rcf,
    Charpoly,
    Minpoly,
    /// integral similarity of a 2x2 matrix to a diagonal target
    #[command(name = "decide-2x2")]
    Decide2x2,
    /// the 3x3 obstruction over Z[alpha], or a forced-product report for --in
    Counterexample,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Matrix JSON file
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output file (default: standard output)
    #[arg(long = "out", global = true)]
    pub output: Option<PathBuf>,
    /// Target diagonal: comma-separated elements or a JSON array
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search bound for decide-2x2
    #[arg(long, global = true, default_value_t = 1000)]
    pub bound: u64,
    /// Refused by subcommands that emit certificates
    #[arg(long = "no-verify", global = true)]
    pub no_verify: bool,
}

#[derive(Debug, Parser)]
#[command(name = "fillmore", version, about = "Exact similarity certificates for prescribed diagonals")]
struct Top {
    #[command(subcommand)]
    kind: Kind,
    #[command(flatten)]
    config: CliConfig,
}

/// A run that produced JSON, with the exit code to report.
struct Output {
    value: Value,
    code: i32,
}

fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Precondition => EXIT_PRECONDITION,
        ErrorKind::Exhausted => EXIT_EXHAUSTED,
        ErrorKind::Defect => EXIT_DEFECT,
    }
}

fn emits_certificate(kind: Kind) -> bool {
    matches!(
        kind,
        Kind::PrescribeField | Kind::PrescribeKsim | Kind::PrescribeZsim | Kind::Rcf | Kind::Decide2x2
    )
}

fn read_matrix(cfg: &CliConfig) -> Result<AnyMatrix, Error> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("--in is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    AnyMatrix::from_json(&v)
}

fn gamma(cfg: &CliConfig) -> Result<&str, Error> {
    cfg.gamma
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--gamma is required".into()))
}

fn integer_input(m: AnyMatrix) -> Result<Matrix<Integer>, Error> {
    match m {
        AnyMatrix::Z(a) => Ok(a),
        AnyMatrix::Q(a) => a
            .to_integer()
            .ok_or_else(|| Error::UnsupportedRing("this subcommand needs integer entries".into())),
        other => Err(Error::UnsupportedRing(format!("this subcommand needs Z, got {}", other.tag()))),
    }
}

/// Re-checks `c` against `a` and encodes it.
fn certified<T: JsonScalar>(a: &Matrix<T>, c: &SimilarityCertificate<T>) -> Result<Value, Error> {
    if !verify_certificate(a, c) {
        return Err(Error::Defect("certificate failed verification; not emitted".into()));
    }
    Ok(certificate_to_json(a, c))
}

fn field_prescription<F: Field + JsonScalar>(a: &Matrix<F>, g: &str) -> Result<Value, Error> {
    let target = parse_gamma(g, a.context())?;
    certified(a, &fillmore_field(a, &target)?)
}

fn field_rcf<F: Field + JsonScalar>(a: &Matrix<F>, seed: u64, integral: Option<RingTag>) -> Result<Value, Error> {
    let f = frobenius_form(a, seed)?;
    if !verify_certificate(a, &f.transform) {
        return Err(Error::Defect("canonical-form transform failed verification".into()));
    }
    let mut v = frobenius_to_json(a, &f);
    if let (Some(tag), Value::Object(obj)) = (integral, &mut v) {
        let ok = f.blocks.iter().all(|b| monic_divisor_integrality(b, tag));
        obj.insert("integral".into(), Value::Bool(ok));
    }
    Ok(v)
}

fn poly_report<T: JsonScalar>(f: &MonicPoly<T>, tag: RingTag, integral: Option<RingTag>) -> Value {
    let mut obj = Map::new();
    obj.insert("ring".into(), json!(tag.name()));
    if let RingTag::Fp(p) = tag {
        obj.insert("p".into(), json!(p));
    }
    obj.insert("coefficients".into(), poly_to_json(f));
    obj.insert("degree".into(), json!(f.degree()));
    obj.insert("display".into(), json!(f.to_string()));
    if let Some(t) = integral {
        obj.insert("integral".into(), json!(monic_divisor_integrality(f, t)));
    }
    Value::Object(obj)
}

fn minpoly_report<F: Field + JsonScalar>(a: &Matrix<F>, tag: RingTag, integral: Option<RingTag>) -> Value {
    poly_report(&minpoly(a), tag, integral)
}

fn dispatch(kind: Kind, cfg: &CliConfig) -> Result<Output, Error> {
    let ok = |value| Output { value, code: EXIT_OK };
    match kind {
        Kind::PrescribeField => {
            let g = gamma(cfg)?;
            let v = match read_matrix(cfg)? {
                AnyMatrix::Z(a) => field_prescription(&a.to_rational(), g)?,
                AnyMatrix::Q(a) => field_prescription(&a, g)?,
                AnyMatrix::Fp(a) => field_prescription(&a, g)?,
                AnyMatrix::QBeta(a) | AnyMatrix::ZAlpha(a) => field_prescription(&a, g)?,
            };
            Ok(ok(v))
        }
        Kind::PrescribeKsim => {
            let a = integer_input(read_matrix(cfg)?)?;
            let target = parse_gamma(gamma(cfg)?, &())?;
            let c = prescribe_ksim_integral(&a, &target, cfg.seed)?;
            Ok(ok(certified(&a.to_rational(), &c)?))
        }
        Kind::PrescribeZsim => {
            let a = integer_input(read_matrix(cfg)?)?;
            let target = parse_gamma(gamma(cfg)?, &())?;
            let c = prescribe_zsim(&a, &target, cfg.seed)?;
            Ok(ok(certified(&a, &c)?))
        }
        Kind::CheckIdeal => {
            let a = integer_input(read_matrix(cfg)?)?;
            Ok(ok(ideal_to_json(&nonscalarity_ideal(&a))))
        }
        Kind::Rcf => {
            let v = match read_matrix(cfg)? {
                AnyMatrix::Z(a) => field_rcf(&a.to_rational(), cfg.seed, Some(RingTag::Z))?,
                AnyMatrix::Q(a) => field_rcf(&a, cfg.seed, None)?,
                AnyMatrix::Fp(a) => field_rcf(&a, cfg.seed, None)?,
                AnyMatrix::QBeta(a) => field_rcf(&a, cfg.seed, None)?,
                AnyMatrix::ZAlpha(a) => field_rcf(&a, cfg.seed, Some(RingTag::ZAlpha))?,
            };
            Ok(ok(v))
        }
        Kind::Charpoly => {
            let m = read_matrix(cfg)?;
            let tag = m.tag();
            Ok(ok(match &m {
                AnyMatrix::Z(a) => poly_report(&charpoly(a), tag, None),
                AnyMatrix::Q(a) => poly_report(&charpoly(a), tag, None),
                AnyMatrix::Fp(a) => poly_report(&charpoly(a), tag, None),
                AnyMatrix::QBeta(a) => poly_report(&charpoly(a), tag, None),
                AnyMatrix::ZAlpha(a) => poly_report(&charpoly(a), tag, Some(RingTag::ZAlpha)),
            }))
        }
        Kind::Minpoly => {
            let m = read_matrix(cfg)?;
            Ok(ok(match &m {
                AnyMatrix::Z(a) => minpoly_report(&a.to_rational(), RingTag::Q, Some(RingTag::Z)),
                AnyMatrix::Q(a) => minpoly_report(a, RingTag::Q, None),
                AnyMatrix::Fp(a) => minpoly_report(a, m.tag(), None),
                AnyMatrix::QBeta(a) => minpoly_report(a, RingTag::QBeta, None),
                AnyMatrix::ZAlpha(a) => minpoly_report(a, RingTag::QBeta, Some(RingTag::ZAlpha)),
            }))
        }
        Kind::Decide2x2 => {
            let a = integer_input(read_matrix(cfg)?)?;
            let target = parse_gamma(gamma(cfg)?, &())?;
            let d = decide_2x2(&a, &target, cfg.bound)?;
            if let Verdict2x2::Similar(c) = &d.verdict {
                certified(&a, c)?;
            }
            let code = match d.verdict {
                Verdict2x2::Unknown { .. } => EXIT_EXHAUSTED,
                _ => EXIT_OK,
            };
            Ok(Output { value: decision_to_json(&a, &d), code })
        }
        Kind::Counterexample => {
            if cfg.input.is_none() {
                return Ok(ok(brewer_to_json(&verify_brewer_obstruction()?)));
            }
            let a = match read_matrix(cfg)? {
                AnyMatrix::QBeta(a) | AnyMatrix::ZAlpha(a) => a,
                AnyMatrix::Z(a) => a.map(&(), |x| CubicElem::from_rational(x.clone().into())),
                AnyMatrix::Q(a) => a.map(&(), |x| CubicElem::from_rational(x.clone())),
                other => return Err(Error::UnsupportedRing(format!("counterexample needs Qbeta, got {}", other.tag()))),
            };
            let target = parse_gamma(gamma(cfg)?, &())?;
            Ok(ok(report_to_json(&forced_products_obstruction(&a, &target)?)))
        }
    }
}

fn write_output(cfg: &CliConfig, text: &str) -> std::io::Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Runs one command line (program name first) and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let top = match Top::try_parse_from(argv) {
        Ok(t) => t,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = &top.config;
    if cfg.no_verify && emits_certificate(top.kind) {
        eprintln!("error: --no-verify is refused; certificates are always verified before they are written");
        return EXIT_PRECONDITION;
    }
    match dispatch(top.kind, cfg) {
        Ok(out) => {
            if let Err(e) = write_output(cfg, &to_canonical_string(&out.value)) {
                eprintln!("error: cannot write output: {e}");
                return EXIT_PRECONDITION;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
