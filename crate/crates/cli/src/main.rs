use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use ddf_core::algebra::{enumerate_primitive, euler_phi, FieldSpec, Matrix, Poly};
use ddf_core::ddf::{application_predicates, classify, ddf_equivalences, spectrum, DifferenceFamily};
use ddf_core::fhs::{
    fhs_equivalences, hamming_correlation, is_in_normalizer, max_auto, max_correlation, max_cross, min_distance,
    min_shift_distance, phi_gamma, rotational_closure, Fhs, HopSequence, Permutation,
};
use ddf_core::geometry::{
    frame_for_point_at_infinity, geometric_construct, impulse_point, orbit_index, ProjPoint, Projectivity,
};
use ddf_core::golden::{run_golden_checks, GoldenConfig};
use ddf_core::lfsr::{msequence_construct, primitive_or_default, LfsrSpec};
use ddf_core::Error;

/// Disjoint difference families and frequency-hopping sequences over Z_v.
///
/// Permutations use 1-indexed cycle notation, e.g. "(2 5 3)(4 6 7)"; positions
/// are 0-indexed everywhere else. Field elements over GF(p^m) are written as
/// integer indices whose base-p digits are the polynomial-basis coefficients.
#[derive(Parser, Debug)]
#[command(name = "ddf", version)]
struct Cli {
    /// Print the report as a single line of JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Accepted for compatibility; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a difference family from an m-sequence or from PG(n, q).
    #[command(subcommand)]
    Construct(Construct),
    /// Difference spectra, classification and parameter predicates of a family.
    Analyze(InputArg),
    /// Hamming correlation tables of a word or scheme.
    Correlate(InputArg),
    /// Rotational closure of a word or scheme.
    Closure(InputArg),
    /// Equivalence of families, schemes, or normalizer membership of a permutation.
    #[command(subcommand)]
    Equiv(Equiv),
    /// List the primitive polynomials of degree n over GF(p^m).
    Primitive(PrimitiveArgs),
    /// Run the built-in reference vectors.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Modulus of the extension field, coefficients constant term first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    modulus: Option<Vec<u64>>,
}

impl FieldArgs {
    fn field(&self) -> ddf_core::Result<FieldSpec> {
        FieldSpec::new(self.p, self.m, self.modulus.as_deref())
    }
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Windows of k consecutive symbols of an m-sequence.
    Lg {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        /// Feedback taps c_0, …, c_{n-1}.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        taps: Option<Vec<i64>>,
        /// Characteristic polynomial, e.g. "x^3-x^2-2" or a coefficient list constant term first.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Parallel k-flats through a point at infinity, labelled along a cyclic projectivity.
    Geometry {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Primitive polynomial; the projectivity is diag(C, 1).
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// Explicit (n+1)×(n+1) matrix, rows separated by ';' and entries by ','.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "poly")]
        matrix: Option<String>,
        /// Base point, n+1 homogeneous coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        base: Option<Vec<i64>>,
        /// Point at infinity the flats pass through, n+1 coordinates with last 0.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        frame: Option<Vec<i64>>,
    },
}

#[derive(Args, Debug)]
struct InputArg {
    /// JSON file; stdin when omitted or "-".
    path: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Equiv {
    /// Two families {"v", "classes"}.
    Ddf { first: String, second: String },
    /// Two words {"q", "symbols"} or schemes {"n", "q", "words"}.
    Fhs { first: String, second: String },
    /// Normalizer membership and the affine map of a permutation of 1..n.
    Perm {
        #[arg(long)]
        n: usize,
        cycles: String,
    },
}

#[derive(Args, Debug)]
struct PrimitiveArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Replace the GF(3) feedback taps of the register checks.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    taps: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct Report {
    ok: bool,
    data: Value,
    notes: Vec<String>,
}

enum Failure {
    Invalid(Error),
    Verification(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

type CmdResult = Result<Report, Failure>;

fn report(data: impl Serialize, notes: Vec<String>) -> CmdResult {
    let data = serde_json::to_value(data).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(Report { ok: true, data, notes })
}

fn parse_poly(field: &FieldSpec, s: &str) -> ddf_core::Result<Poly> {
    if s.contains('x') {
        return Poly::parse(field, s);
    }
    let coeffs = s
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient {c:?}"))))
        .collect::<ddf_core::Result<Vec<_>>>()?;
    Poly::from_indices(field, &coeffs)
}

fn parse_matrix(field: &FieldSpec, s: &str) -> ddf_core::Result<Matrix> {
    let rows = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad matrix entry {c:?}"))))
                .collect()
        })
        .collect::<ddf_core::Result<Vec<Vec<i64>>>>()?;
    Matrix::from_indices(field, &rows)
}

fn read_input(path: Option<&str>) -> ddf_core::Result<Value> {
    let text = match path {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            s
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::InvalidArgument(format!("{p}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

fn decode<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> ddf_core::Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("expected {what}: {e}")))
}

/// A family, or any report object carrying one under "family" or "data.family".
fn family_from(mut v: Value) -> ddf_core::Result<DifferenceFamily> {
    if let Some(inner) = v.get_mut("data").map(Value::take) {
        v = inner;
    }
    if let Some(inner) = v.get_mut("family").map(Value::take) {
        v = inner;
    }
    decode(v, "a family {\"v\", \"classes\"}")
}

/// A scheme, or a single word promoted to a one-word scheme.
fn scheme_from(mut v: Value) -> ddf_core::Result<(Fhs, bool)> {
    if let Some(inner) = v.get_mut("data").map(Value::take) {
        v = inner;
    }
    if let Some(inner) = v.get_mut("sequence").map(Value::take) {
        v = inner;
    }
    if v.get("words").is_some() {
        Ok((decode(v, "a scheme {\"n\", \"q\", \"words\"}")?, false))
    } else {
        let w: HopSequence = decode(v, "a word {\"q\", \"symbols\"}")?;
        Ok((Fhs::single(w), true))
    }
}

fn cmd_construct(c: Construct) -> CmdResult {
    match c {
        Construct::Lg { field, n, k, taps, poly } => {
            let field = field.field()?;
            let f = match (taps, poly) {
                (Some(_), Some(_)) => return Err(Error::InvalidArgument("give --taps or --poly, not both".into()).into()),
                (Some(t), None) => Some(LfsrSpec::from_indices(&field, &t)?.characteristic_poly()),
                (None, Some(s)) => Some(parse_poly(&field, &s)?),
                (None, None) => None,
            };
            let n = match (n, f.as_ref().and_then(Poly::degree)) {
                (Some(n), Some(d)) if n != d => {
                    return Err(Error::DimensionMismatch(format!("--n {n} but the polynomial has degree {d}")).into())
                }
                (Some(n), _) | (None, Some(n)) => n,
                (None, None) => return Err(Error::InvalidArgument("--n is required without --taps or --poly".into()).into()),
            };
            let out = msequence_construct(&field, n, k, f.as_ref())?;
            let notes = vec![format!("v = {}, {} classes", out.family.v(), out.family.num_classes())];
            report(json!({ "field": field, "poly": out.poly, "sequence": out.sequence, "family": out.family }), notes)
        }
        Construct::Geometry { field, n, k, poly, matrix, base, frame } => {
            let field = field.field()?;
            let mut notes = Vec::new();
            let tau = match matrix {
                Some(m) => Projectivity::from_matrix(parse_matrix(&field, &m)?)?,
                None => {
                    let f = primitive_or_default(&field, n, poly.map(|s| parse_poly(&field, &s)).transpose()?.as_ref())?;
                    notes.push(format!("projectivity diag(C, 1) for {}", f));
                    Projectivity::from_poly(&f)?
                }
            };
            if tau.n() != n {
                return Err(Error::DimensionMismatch(format!("--n {n} but the projectivity acts on PG({}, q)", tau.n())).into());
            }
            let base = match base {
                Some(b) => ProjPoint::from_indices(&field, &b)?,
                None => impulse_point(&field, n),
            };
            let frame = frame
                .map(|p| ProjPoint::from_indices(&field, &p).and_then(|p| frame_for_point_at_infinity(&p, &field)))
                .transpose()?;
            let family = geometric_construct(&tau, k, &base, frame.as_ref())?;
            let idx = orbit_index(&tau, &base)?;
            let points: Vec<Vec<u64>> = (0..idx.len()).map(|i| idx.point(i).to_indices()).collect();
            notes.push(format!("v = {}, {} classes", family.v(), family.num_classes()));
            report(json!({ "field": field, "base": base, "points": points, "family": family }), notes)
        }
    }
}

fn cmd_analyze(a: InputArg) -> CmdResult {
    let fam = family_from(read_input(a.path.as_deref())?)?;
    let sp = spectrum(&fam);
    let cls = classify(&fam);
    let mut notes = Vec::new();
    if !cls.partition_type {
        notes.push(format!("classes cover {} of {} elements", fam.union_size(), fam.v()));
    }
    report(
        json!({
            "family": fam,
            "spectrum": sp,
            "classification": cls,
            "predicates": application_predicates(&fam),
        }),
        notes,
    )
}

fn table(x: &HopSequence, y: &HopSequence) -> ddf_core::Result<Vec<usize>> {
    (0..x.n()).map(|t| hamming_correlation(x, y, t)).collect()
}

fn cmd_correlate(a: InputArg) -> CmdResult {
    let (s, _) = scheme_from(read_input(a.path.as_deref())?)?;
    let words = s.words();
    let mut auto = Vec::new();
    let mut cross = Vec::new();
    for (i, x) in words.iter().enumerate() {
        auto.push(json!({ "word": i, "table": table(x, x)?, "max": max_auto(x) }));
        for (j, y) in words.iter().enumerate().skip(i + 1) {
            cross.push(json!({ "x": i, "y": j, "table": table(x, y)?, "max": max_cross(x, y)? }));
        }
    }
    report(json!({ "scheme": s, "auto": auto, "cross": cross, "max_correlation": max_correlation(&s) }), Vec::new())
}

fn cmd_closure(a: InputArg) -> CmdResult {
    let (s, single) = scheme_from(read_input(a.path.as_deref())?)?;
    let c = rotational_closure(&s);
    let mut notes = Vec::new();
    if single && c.len() < s.n() {
        notes.push("H(w)=n".to_string());
    }
    let distance = if c.len() >= 2 { Some(min_distance(&c)?) } else { None };
    report(
        json!({
            "closure": c,
            "size": c.len(),
            "min_distance": distance,
            "min_shift_distance": min_shift_distance(&s)?,
        }),
        notes,
    )
}

fn cmd_equiv(e: Equiv) -> CmdResult {
    match e {
        Equiv::Ddf { first, second } => {
            let f1 = family_from(read_input(Some(&first))?)?;
            let f2 = family_from(read_input(Some(&second))?)?;
            let all = ddf_equivalences(&f1, &f2);
            let notes = if all.is_empty() { vec!["not equivalent".into()] } else { Vec::new() };
            report(json!({ "equivalent": !all.is_empty(), "witness": all.first(), "witnesses": all }), notes)
        }
        Equiv::Fhs { first, second } => {
            let (s1, _) = scheme_from(read_input(Some(&first))?)?;
            let (s2, _) = scheme_from(read_input(Some(&second))?)?;
            let all = fhs_equivalences(&s1, &s2);
            let notes = if all.is_empty() { vec!["not equivalent".into()] } else { Vec::new() };
            report(json!({ "equivalent": !all.is_empty(), "witness": all.first(), "witnesses": all }), notes)
        }
        Equiv::Perm { n, cycles } => {
            let g = Permutation::parse_cycles(n, &cycles)?;
            let rho = Permutation::rho(n);
            let member = is_in_normalizer(&g);
            let conj = g.then(&rho).then(&g.inverse()).rho_exponent();
            let mut notes = Vec::new();
            if let Some(e) = conj {
                notes.push(format!("γ ρ γ^-1 = ρ^{e}"));
            }
            let phi = if member { Some(phi_gamma(&g)?) } else { None };
            report(
                json!({ "permutation": g.to_string(), "member": member, "conjugate_exponent": conj, "affine": phi }),
                notes,
            )
        }
    }
}

fn cmd_primitive(a: PrimitiveArgs) -> CmdResult {
    let field = a.field.field()?;
    let all = enumerate_primitive(&field, a.n)?;
    let q = field.order();
    let qn = q.checked_pow(a.n as u32).ok_or_else(|| Error::TooLarge(format!("{q}^{}", a.n)))?;
    let text: Vec<String> = all.iter().map(|f| f.to_string()).collect();
    report(
        json!({ "field": field, "n": a.n, "count": all.len(), "expected": euler_phi(qn - 1) / a.n as u64, "polynomials": all, "display": text }),
        Vec::new(),
    )
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let mut cfg = GoldenConfig::default();
    if let Some(t) = a.taps {
        cfg.taps = t;
    }
    let checks = run_golden_checks(&cfg);
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.id.to_string()).collect();
    let notes = vec![format!("{} of {} checks passed", checks.len() - failed.len(), checks.len())];
    let r = Report { ok: failed.is_empty(), data: json!({ "checks": checks, "failed": failed }), notes };
    if r.ok {
        Ok(r)
    } else {
        Err(Failure::Verification(r))
    }
}

fn emit(r: &Report, json: bool) {
    let text = if json { serde_json::to_string(r) } else { serde_json::to_string_pretty(r) };
    println!("{}", text.expect("reports serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Construct(c) => cmd_construct(c),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Correlate(a) => cmd_correlate(a),
        Command::Closure(a) => cmd_closure(a),
        Command::Equiv(e) => cmd_equiv(e),
        Command::Primitive(a) => cmd_primitive(a),
        Command::VerifyPaper(a) => cmd_verify(a),
    };
    match out {
        Ok(r) => {
            emit(&r, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(r)) => {
            emit(&r, cli.json);
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            let body = json!({ "ok": false, "error": { "kind": e.kind(), "message": e.to_string() } });
            if cli.json {
                println!("{body}");
            } else {
                eprintln!("error ({}): {e}", e.kind());
            }
            ExitCode::from(2)
        }
    }
}
