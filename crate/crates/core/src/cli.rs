//! Command-line front end.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! the text destined for stdout and stderr, so it can be tested without
//! spawning a process. Exit codes: 0 success, 1 malformed input, 2 domain
//! error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::acm::{
    acm_general, acm_params, delta_tolerance, is_delta_nonpositive, p_zero_threshold,
    real_discriminant,
};
use crate::density::{density_acm, density_poly, validate_density, DensityPolySpec};
use crate::error::Error;
use crate::json::*;
use crate::matrix::{char_poly_3, unitary_deviation};
use crate::oracle::{multiset_distance, oracle_roots, RESIDUAL_TOL};
use crate::poly::{depress, CubicPoly};
use crate::roots::{
    classify, real_roots_of_complex_cubic, roots_general, solve_real, Regime,
};
use crate::unitary::{build_unitary_acm, family_poly, recognize_unitary, theorem3_check, UnitaryParams};
use crate::ComplexScalar;

/// Environment variable naming a JSON tolerance profile.
pub const TOLERANCE_PROFILE_ENV: &str = "ACM_TOLERANCE_PROFILE";

#[derive(Debug, Parser)]
#[command(name = "acm", version, about = "Almost-companion matrices for monic cubics")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Override every tolerance with this value.
    #[arg(long, global = true, value_parser = positive_f64)]
    tol: Option<f64>,
    /// Read the command's JSON payload from FILE instead of flags.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Roots of z³ + c1·z² + c2·z + c3.
    Solve {
        /// Cubic as {"c1":[re,im],"c2":[re,im],"c3":[re,im]}.
        #[arg(long)]
        poly: Option<String>,
        /// Also run the independent iterative solver and report the distance.
        #[arg(long)]
        compare_oracle: bool,
    },
    /// Canonical form η³ + pη + q and the shift c1/3.
    Depress {
        #[arg(long)]
        poly: Option<String>,
    },
    /// Almost-companion matrix of a cubic.
    Acm {
        #[arg(long)]
        poly: Option<String>,
    },
    /// Density matrix with characteristic polynomial x³ - x² + a²x - b².
    Density {
        #[arg(long, value_parser = finite_f64, allow_hyphen_values = true)]
        a2: Option<f64>,
        #[arg(long, value_parser = finite_f64, allow_hyphen_values = true)]
        b2: Option<f64>,
    },
    /// Unitary ACM and polynomial from (r2, theta, eps).
    UnitaryBuild {
        #[arg(long, value_parser = finite_f64, allow_hyphen_values = true)]
        r2: Option<f64>,
        #[arg(long, value_parser = finite_f64, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long, value_parser = finite_f64, allow_hyphen_values = true)]
        eps: Option<f64>,
        /// Emit r2 > 2 results, flagged non-unitary, instead of failing.
        #[arg(long)]
        allow_non_unitary: bool,
    },
    /// Decide whether a cubic is the characteristic polynomial of a unitary matrix.
    UnitaryCheck {
        #[arg(long)]
        poly: Option<String>,
    },
    /// Root classification of the real depressed cubic η³ + pη + q.
    Classify {
        #[arg(long, value_parser = finite_f64, allow_hyphen_values = true)]
        p: Option<f64>,
        #[arg(long, value_parser = finite_f64, allow_hyphen_values = true)]
        q: Option<f64>,
    },
    /// Roots of a monic polynomial of any degree by simultaneous iteration.
    Oracle {
        /// Coefficients after the leading one as [[re,im],…].
        #[arg(long)]
        coeffs: Option<String>,
    },
}

fn finite_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err("value must be finite".into())
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v = finite_f64(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err("tolerance must be positive".into())
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Process-level inputs other than the argument vector.
#[derive(Debug, Clone, Default)]
pub struct Context {
    /// Path of a tolerance profile, normally taken from [`TOLERANCE_PROFILE_ENV`].
    pub profile: Option<PathBuf>,
}

impl Context {
    pub fn from_env() -> Self {
        Self {
            profile: std::env::var_os(TOLERANCE_PROFILE_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, ctx: &Context) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: rendered,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(&cli, ctx) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn tolerances(cli: &Cli, ctx: &Context) -> Result<ToleranceProfile, Failure> {
    let base = match &ctx.profile {
        Some(path) => parse_file::<ToleranceProfile>(path)
            .map_err(|e| Failure::Usage(format!("tolerance profile {}: {e}", path.display())))?,
        None => ToleranceProfile::default(),
    };
    for (name, v) in [
        ("solve", base.solve),
        ("density", base.density),
        ("unitary", base.unitary),
        ("structure", base.structure),
        ("unitarity", base.unitarity),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Failure::Usage(format!(
                "tolerance profile: `{name}` must be positive, got {v}"
            )));
        }
    }
    Ok(match cli.tol {
        Some(t) => base.with_override(t),
        None => base,
    })
}

/// Reads the payload from `--input` or from the inline flags, never both.
fn payload<T: serde::de::DeserializeOwned>(
    input: Option<&Path>,
    inline: Option<T>,
) -> Result<T, Failure> {
    match (input, inline) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "give the payload either with --input or with flags, not both".into(),
        )),
        (Some(path), None) => parse_file(path).map_err(|e| Failure::Usage(format!("--input: {e}"))),
        (None, Some(v)) => Ok(v),
        (None, None) => Err(Failure::Usage("missing payload: use flags or --input FILE".into())),
    }
}

fn inline_json<T: serde::de::DeserializeOwned>(flag: &str, text: Option<&String>) -> Result<Option<T>, Failure> {
    text.map(|t| parse(t).map_err(|e| Failure::Usage(format!("--{flag}: {e}"))))
        .transpose()
}

/// Combines separate numeric flags into one payload; all or none must be set.
fn inline_fields<const N: usize, T>(
    names: [&str; N],
    values: [Option<f64>; N],
    make: impl FnOnce([f64; N]) -> T,
) -> Result<Option<T>, Failure> {
    let given = values.iter().filter(|v| v.is_some()).count();
    if given == 0 {
        return Ok(None);
    }
    if given < N {
        let missing: Vec<String> = names
            .iter()
            .zip(values)
            .filter(|(_, v)| v.is_none())
            .map(|(n, _)| format!("--{n}"))
            .collect();
        return Err(Failure::Usage(format!("missing {}", missing.join(", "))));
    }
    Ok(Some(make(values.map(|v| v.unwrap_or_default()))))
}

fn cubic_payload(input: Option<&Path>, poly: Option<&String>) -> Result<CubicPoly, Failure> {
    let wire: CubicWire = payload(input, inline_json("poly", poly)?)?;
    wire.to_poly().map_err(|e| Failure::Usage(e.to_string()))
}

fn execute(cli: &Cli, ctx: &Context) -> Result<String, Failure> {
    let tol = tolerances(cli, ctx)?;
    let input = cli.input.as_deref();
    match &cli.command {
        Command::Solve {
            poly,
            compare_oracle,
        } => {
            let poly = cubic_payload(input, poly.as_ref())?;
            emit(cli.format, &solve(&poly, *compare_oracle, tol.solve)?, text_solve)
        }
        Command::Depress { poly } => {
            let poly = cubic_payload(input, poly.as_ref())?;
            let can = depress(&poly);
            let doc = DepressDoc::new(&poly, &can, regime_of(&poly).as_str(), p_zero_threshold(can.q));
            emit(cli.format, &doc, text_depress)
        }
        Command::Acm { poly } => {
            let poly = cubic_payload(input, poly.as_ref())?;
            emit(cli.format, &acm_doc(&poly), text_acm)
        }
        Command::Density { a2, b2 } => {
            let inline = inline_fields(["a2", "b2"], [*a2, *b2], |[a2, b2]| DensityInput { a2, b2 })?;
            let spec = payload(input, inline)?;
            emit(cli.format, &density(spec, tol.density)?, text_density)
        }
        Command::UnitaryBuild {
            r2,
            theta,
            eps,
            allow_non_unitary,
        } => {
            let inline = inline_fields(["r2", "theta", "eps"], [*r2, *theta, *eps], |[r2, theta, eps]| {
                UnitaryInput { r2, theta, eps }
            })?;
            let params = payload(input, inline)?;
            let doc = unitary_build(params, *allow_non_unitary, tol.unitarity)?;
            emit(cli.format, &doc, text_unitary_build)
        }
        Command::UnitaryCheck { poly } => {
            let poly = cubic_payload(input, poly.as_ref())?;
            emit(cli.format, &unitary_check(&poly, &tol), text_unitary_check)
        }
        Command::Classify { p, q } => {
            let inline = inline_fields(["p", "q"], [*p, *q], |[p, q]| ClassifyInput { p, q })?;
            let ClassifyInput { p, q } = payload(input, inline)?;
            emit(cli.format, &classify_doc(p, q), text_classify)
        }
        Command::Oracle { coeffs } => {
            let inline = match coeffs {
                Some(text) => Some(OracleInput {
                    coeffs: parse(text).map_err(|e| Failure::Usage(format!("--coeffs: {e}")))?,
                }),
                None => None,
            };
            let req: OracleInput = payload(input, inline)?;
            let poly = req.to_poly().map_err(|e| Failure::Usage(e.to_string()))?;
            let roots = oracle_roots(&poly)?;
            let max_residual = roots
                .iter()
                .map(|&r| poly.eval(r).norm() / poly.residual_scale(r))
                .fold(0.0, f64::max);
            let doc = OracleDoc {
                degree: poly.degree(),
                roots: roots.into_iter().map(pair).collect(),
                max_residual,
                regime: "durand-kerner".into(),
                tolerance: RESIDUAL_TOL,
            };
            emit(cli.format, &doc, text_oracle)
        }
    }
}

fn emit<T: Serialize>(format: Format, doc: &T, text: fn(&T) -> String) -> Result<String, Failure> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(doc)
                .map_err(|e| Failure::Domain(format!("serialization failed: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => Ok(text(doc)),
    }
}

fn regime_of(poly: &CubicPoly) -> Regime {
    if poly.is_real() {
        solve_real(poly.c1.re, poly.c2.re, poly.c3.re).roots.regime
    } else {
        roots_general(poly).regime
    }
}

fn require_finite(roots: &[ComplexScalar]) -> Result<(), Failure> {
    if roots.iter().all(|r| r.is_finite()) {
        Ok(())
    } else {
        Err(Failure::Domain("result is not finite (coefficients too large)".into()))
    }
}

fn solve(poly: &CubicPoly, compare_oracle: bool, tol: f64) -> Result<SolveDoc, Failure> {
    let (triple, intermediates, real_roots) = if poly.is_real() {
        let sol = solve_real(poly.c1.re, poly.c2.re, poly.c3.re);
        (sol.roots, sol.intermediates.map(Into::into), None)
    } else {
        let real = real_roots_of_complex_cubic(poly)?;
        (
            roots_general(poly),
            None,
            Some(real.into_iter().map(Into::into).collect()),
        )
    };
    require_finite(&triple.roots)?;
    let max_residual = triple
        .roots
        .iter()
        .map(|&r| poly.eval(r).norm() / poly.residual_scale(r))
        .fold(0.0, f64::max);
    let oracle = if compare_oracle {
        let oracle = oracle_roots(&poly.to_poly_n())?;
        let scale = triple.roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
        let scaled_distance = multiset_distance(&triple.roots, &oracle) / scale;
        Some(OracleComparison {
            roots: [pair(oracle[0]), pair(oracle[1]), pair(oracle[2])],
            scaled_distance,
            agrees: scaled_distance <= tol,
        })
    } else {
        None
    };
    Ok(SolveDoc {
        poly: poly.into(),
        regime: triple.regime.as_str().into(),
        roots: triple.roots.map(pair),
        max_residual,
        tolerance: tol,
        intermediates,
        real_roots,
        oracle,
    })
}

fn max_coeff_error(a: &CubicPoly, b: &CubicPoly) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn acm_doc(poly: &CubicPoly) -> AcmDoc {
    let can = depress(poly);
    let m = acm_general(poly);
    let (regime, chi, phi13) = match acm_params(can.p, can.q) {
        Ok(params) if can.p.norm() > p_zero_threshold(can.q) => (
            Regime::ComplexGeneral,
            Some(pair(params.chi)),
            Some(pair(params.phi13)),
        ),
        _ => (Regime::PZero, None, None),
    };
    AcmDoc {
        poly: poly.into(),
        regime: regime.as_str().into(),
        matrix: matrix_wire(&m),
        chi,
        phi13,
        char_poly_error: max_coeff_error(&char_poly_3(&m), poly),
        tolerance: p_zero_threshold(can.q),
    }
}

fn density(spec: DensityInput, tol: f64) -> Result<DensityDoc, Failure> {
    let parsed = DensityPolySpec::from_squares(spec.a2, spec.b2)?;
    let m = density_acm(&parsed)?;
    let poly = density_poly(&parsed);
    Ok(DensityDoc {
        spec,
        poly: (&poly).into(),
        regime: Regime::RealDeltaNonpos.as_str().into(),
        matrix: matrix_wire(&m),
        validation: validate_density(&m, tol),
        tolerance: tol,
    })
}

fn unitary_build(input: UnitaryInput, allow_non_unitary: bool, tol: f64) -> Result<UnitaryBuildDoc, Failure> {
    let params = UnitaryParams::new(input.r2, input.theta, input.eps)?;
    if !params.is_unitary_range() && !allow_non_unitary {
        return Err(Failure::Domain(format!(
            "r2 = {} > 2 gives a non-unitary matrix; pass --allow-non-unitary to build it anyway",
            params.r2
        )));
    }
    let built = build_unitary_acm(&params);
    let poly = family_poly(&params);
    let deviation = unitary_deviation(&built.matrix);
    Ok(UnitaryBuildDoc {
        params,
        poly: (&poly).into(),
        matrix: matrix_wire(&built.matrix),
        unitary: built.unitary && deviation <= tol,
        unitary_deviation: deviation,
        regime: if built.unitary { "unitary" } else { "non-unitary" }.into(),
        tolerance: tol,
    })
}

fn unitary_check(poly: &CubicPoly, tol: &ToleranceProfile) -> UnitaryCheckDoc {
    let structure = theorem3_check(poly, tol.structure);
    let params = recognize_unitary(poly, tol.unitary);
    UnitaryCheckDoc {
        poly: poly.into(),
        unitary: params.is_some(),
        theorem3_structure: structure.is_some(),
        structure,
        params,
        regime: regime_of(poly).as_str().into(),
        tolerance: tol.unitary,
    }
}

fn classify_doc(p: f64, q: f64) -> ClassifyDoc {
    ClassifyDoc {
        p,
        q,
        discriminant: real_discriminant(p, q),
        class: classify(p, q),
        hermitian_admissible: is_delta_nonpositive(p, q),
        phi13: crate::acm::hermitian_phase(p, q).ok(),
        regime: solve_real(0.0, p, q).roots.regime.as_str().into(),
        tolerance: delta_tolerance(p, q),
    }
}

fn fmt_c(z: Pair) -> String {
    let [re, im] = z;
    if im < 0.0 || (im == 0.0 && im.is_sign_negative()) {
        format!("{re:?} - {:?}i", -im)
    } else {
        format!("{re:?} + {im:?}i")
    }
}

fn fmt_poly(p: &CubicWire) -> String {
    format!(
        "z^3 + ({})z^2 + ({})z + ({})",
        fmt_c(p.c1),
        fmt_c(p.c2),
        fmt_c(p.c3)
    )
}

fn fmt_matrix(out: &mut String, m: &MatrixWire) {
    for row in m {
        let cells: Vec<String> = row.iter().map(|&z| fmt_c(z)).collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
}

fn text_solve(d: &SolveDoc) -> String {
    let mut s = format!("polynomial: {}\nregime: {}\n", fmt_poly(&d.poly), d.regime);
    for (k, r) in d.roots.iter().enumerate() {
        let _ = writeln!(s, "root {}: {}", k + 1, fmt_c(*r));
    }
    match d.intermediates {
        Some(IntermediatesWire::PositiveP { u, a, b, x, y }) => {
            let _ = writeln!(s, "u = {u}, A = {a}, B = {b}, X = {x}, Y = {y}");
        }
        Some(IntermediatesWire::NegativeP { chi, c, nu }) => {
            let _ = writeln!(s, "chi = {chi}, C = {c}, nu = {nu}");
        }
        None => {}
    }
    if let Some(real) = &d.real_roots {
        if real.is_empty() {
            s.push_str("real roots: none\n");
        }
        for r in real {
            let _ = writeln!(
                s,
                "real root: {} (multiplicity {}{})",
                r.value,
                r.multiplicity,
                if r.double_candidate { ", double candidate" } else { "" }
            );
        }
    }
    let _ = writeln!(s, "max scaled residual: {:e}", d.max_residual);
    if let Some(o) = &d.oracle {
        let _ = writeln!(
            s,
            "oracle distance: {:e} ({})",
            o.scaled_distance,
            if o.agrees { "agrees" } else { "DISAGREES" }
        );
    }
    let _ = writeln!(s, "tolerance: {:e}", d.tolerance);
    s
}

fn text_depress(d: &DepressDoc) -> String {
    format!(
        "polynomial: {}\np = {}\nq = {}\nshift c1/3 = {}\nregime: {}\np-zero threshold: {:e}\n",
        fmt_poly(&d.poly),
        fmt_c(d.p),
        fmt_c(d.q),
        fmt_c(d.shift),
        d.regime,
        d.tolerance
    )
}

fn text_acm(d: &AcmDoc) -> String {
    let mut s = format!("polynomial: {}\nregime: {}\n", fmt_poly(&d.poly), d.regime);
    if let (Some(chi), Some(phi)) = (d.chi, d.phi13) {
        let _ = writeln!(s, "chi = {}\nPhi13 = {}", fmt_c(chi), fmt_c(phi));
    }
    s.push_str("matrix:\n");
    fmt_matrix(&mut s, &d.matrix);
    let _ = writeln!(s, "char poly error: {:e}\ntolerance: {:e}", d.char_poly_error, d.tolerance);
    s
}

fn text_density(d: &DensityDoc) -> String {
    let v = &d.validation;
    let mut s = format!(
        "polynomial: x^3 - x^2 + {}x - {}\nmatrix:\n",
        d.spec.a2, d.spec.b2
    );
    fmt_matrix(&mut s, &d.matrix);
    let _ = writeln!(
        s,
        "hermitian: {}\ntrace one: {}\npositive semidefinite: {}",
        v.hermitian, v.trace_one, v.positive_semidefinite
    );
    for e in &v.eigenvalues {
        let _ = writeln!(s, "eigenvalue: {}", fmt_c(*e));
    }
    let _ = writeln!(s, "tolerance: {:e}", d.tolerance);
    s
}

fn text_unitary_build(d: &UnitaryBuildDoc) -> String {
    let mut s = format!(
        "r2 = {}, theta = {}, eps = {}\npolynomial: {}\nmatrix:\n",
        d.params.r2,
        d.params.theta,
        d.params.eps,
        fmt_poly(&d.poly)
    );
    fmt_matrix(&mut s, &d.matrix);
    let _ = writeln!(
        s,
        "unitary: {} (deviation {:e})\ntolerance: {:e}",
        d.unitary, d.unitary_deviation, d.tolerance
    );
    s
}

fn text_unitary_check(d: &UnitaryCheckDoc) -> String {
    let mut s = format!(
        "polynomial: {}\nunitary: {}\nstructure test: {}\n",
        fmt_poly(&d.poly),
        d.unitary,
        d.theorem3_structure
    );
    if let Some(st) = &d.structure {
        let _ = writeln!(s, "r = {}, theta1 = {}, theta = {}", st.r, st.theta1, st.theta);
    }
    if let Some(p) = &d.params {
        let _ = writeln!(s, "r2 = {}, theta = {}, eps = {}", p.r2, p.theta, p.eps);
    }
    let _ = writeln!(s, "tolerance: {:e}", d.tolerance);
    s
}

fn text_classify(d: &ClassifyDoc) -> String {
    let mut s = format!(
        "p = {}, q = {}\ndiscriminant: {}\nclass: {}\nhermitian admissible: {}\nregime: {}\n",
        d.p,
        d.q,
        d.discriminant,
        d.class.as_str(),
        d.hermitian_admissible,
        d.regime
    );
    if let Some(phi) = d.phi13 {
        let _ = writeln!(s, "Phi13 = {phi}");
    }
    let _ = writeln!(s, "tolerance: {:e}", d.tolerance);
    s
}

fn text_oracle(d: &OracleDoc) -> String {
    let mut s = format!("degree: {}\n", d.degree);
    for r in &d.roots {
        let _ = writeln!(s, "root: {}", fmt_c(*r));
    }
    let _ = writeln!(s, "max scaled residual: {:e}\ntolerance: {:e}", d.max_residual, d.tolerance);
    s
}
