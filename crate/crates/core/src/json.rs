//! JSON wire formats.
//!
//! Complex scalars travel as `[re, im]`, cubics as `{"c1", "c2", "c3"}` holding
//! the coefficients after the implicit leading one (highest degree first),
//! and matrices as row-major 3×3 nested arrays of complex pairs. Every
//! document derives both `Serialize` and `Deserialize` so an emitted document
//! parses back into the value that produced it.

use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::density::DensityReport;
use crate::error::{Error, Result};
use crate::matrix::Matrix3;
use crate::poly::{CanonicalCubic, CubicPoly, PolyN};
use crate::roots::{SolveIntermediates, RealRoot, RootClass};
use crate::unitary::{Theorem3Structure, UnitaryParams};
use crate::ComplexScalar;

pub type Pair = [f64; 2];
pub type MatrixWire = [[Pair; 3]; 3];

pub fn pair(z: ComplexScalar) -> Pair {
    [z.re, z.im]
}

pub fn complex(p: Pair) -> ComplexScalar {
    Complex64::new(p[0], p[1])
}

pub fn matrix_wire(m: &Matrix3) -> MatrixWire {
    m.entries.map(|row| row.map(pair))
}

pub fn matrix_from_wire(w: &MatrixWire) -> Matrix3 {
    Matrix3::new(w.map(|row| row.map(complex)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicWire {
    pub c1: Pair,
    pub c2: Pair,
    pub c3: Pair,
}

impl From<&CubicPoly> for CubicWire {
    fn from(p: &CubicPoly) -> Self {
        Self {
            c1: pair(p.c1),
            c2: pair(p.c2),
            c3: pair(p.c3),
        }
    }
}

impl CubicWire {
    /// Rejects non-finite coefficients.
    pub fn to_poly(&self) -> Result<CubicPoly> {
        for (name, [re, im]) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3)] {
            for v in [re, im] {
                if !v.is_finite() {
                    return Err(Error::OutOfRange {
                        name,
                        value: v,
                        range: "finite",
                    });
                }
            }
        }
        Ok(CubicPoly::new(complex(self.c1), complex(self.c2), complex(self.c3)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityInput {
    pub a2: f64,
    pub b2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyInput {
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleInput {
    /// `c1 … cn` of `z^n + c1·z^(n-1) + … + cn`.
    pub coeffs: Vec<Pair>,
}

impl OracleInput {
    pub fn to_poly(&self) -> Result<PolyN> {
        PolyN::new(self.coeffs.iter().copied().map(complex).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitaryInput {
    pub r2: f64,
    pub theta: f64,
    pub eps: f64,
}

/// Default tolerances, overridable by a profile file or `--tol`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceProfile {
    /// Scaled multiset distance accepted by `solve --compare-oracle`.
    pub solve: f64,
    /// Hermiticity, trace and eigenvalue checks of `density`.
    pub density: f64,
    /// `||r| - 1|` accepted by `unitary-check`.
    pub unitary: f64,
    /// Coefficient identities of the unitary structure test.
    pub structure: f64,
    /// `‖WW† - I‖_max` accepted by `unitary-build`.
    pub unitarity: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            solve: 1e-8,
            density: crate::density::DEFAULT_TOL,
            unitary: crate::unitary::DEFAULT_MODULUS_TOL,
            structure: 1e-10,
            unitarity: 1e-12,
        }
    }
}

impl ToleranceProfile {
    pub fn with_override(self, tol: f64) -> Self {
        Self {
            solve: tol,
            density: tol,
            unitary: tol,
            structure: tol,
            unitarity: tol,
        }
    }
}

/// Parse failure located by JSON path.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at `{}`: {}", self.path, self.message)
    }
}

/// Deserializes `text`, reporting the path of the first offending field.
pub fn parse<T: DeserializeOwned>(text: &str) -> std::result::Result<T, ParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| ParseError {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| ParseError {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

pub fn parse_file<T: DeserializeOwned>(path: &Path) -> std::result::Result<T, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum IntermediatesWire {
    PositiveP { u: f64, a: f64, b: f64, x: f64, y: f64 },
    NegativeP { chi: f64, c: f64, nu: f64 },
}

impl From<SolveIntermediates> for IntermediatesWire {
    fn from(i: SolveIntermediates) -> Self {
        match i {
            SolveIntermediates::PositiveP { u, a, b, x, y } => Self::PositiveP { u, a, b, x, y },
            SolveIntermediates::NegativeP { chi, c, nu } => Self::NegativeP { chi, c, nu },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealRootWire {
    pub value: f64,
    pub double_candidate: bool,
    pub multiplicity: u8,
}

impl From<RealRoot> for RealRootWire {
    fn from(r: RealRoot) -> Self {
        Self {
            value: r.value,
            double_candidate: r.double_candidate,
            multiplicity: r.multiplicity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub roots: [Pair; 3],
    /// Multiset distance divided by `max(1, max |root|)`.
    pub scaled_distance: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveDoc {
    pub poly: CubicWire,
    pub regime: String,
    pub roots: [Pair; 3],
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub intermediates: Option<IntermediatesWire>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub real_roots: Option<Vec<RealRootWire>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleComparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepressDoc {
    pub poly: CubicWire,
    pub p: Pair,
    pub q: Pair,
    pub shift: Pair,
    pub regime: String,
    pub tolerance: f64,
}

impl DepressDoc {
    pub fn new(poly: &CubicPoly, can: &CanonicalCubic, regime: &str, tolerance: f64) -> Self {
        Self {
            poly: poly.into(),
            p: pair(can.p),
            q: pair(can.q),
            shift: pair(can.shift),
            regime: regime.into(),
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcmDoc {
    pub poly: CubicWire,
    pub regime: String,
    pub matrix: MatrixWire,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chi: Option<Pair>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phi13: Option<Pair>,
    /// Largest coefficient deviation of the matrix's characteristic polynomial.
    pub char_poly_error: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityDoc {
    pub spec: DensityInput,
    pub poly: CubicWire,
    pub regime: String,
    pub matrix: MatrixWire,
    pub validation: DensityReport,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryBuildDoc {
    pub params: UnitaryParams,
    pub poly: CubicWire,
    pub matrix: MatrixWire,
    pub unitary: bool,
    pub unitary_deviation: f64,
    pub regime: String,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryCheckDoc {
    pub poly: CubicWire,
    pub unitary: bool,
    pub theorem3_structure: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub structure: Option<Theorem3Structure>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<UnitaryParams>,
    pub regime: String,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub p: f64,
    pub q: f64,
    pub discriminant: f64,
    pub class: RootClass,
    pub hermitian_admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phi13: Option<f64>,
    pub regime: String,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub degree: usize,
    pub roots: Vec<Pair>,
    pub max_residual: f64,
    pub regime: String,
    pub tolerance: f64,
}
