//! Qutrit density matrices as Hermitian ACMs.
//!
//! A density matrix has trace one, is Hermitian and positive semi-definite,
//! so its characteristic polynomial is `x³ - x² + a²x - b²` with three real
//! non-negative roots. Depressing it and building the Hermitian ACM, then
//! adding `I/3`, gives a density matrix with that spectrum.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::acm::{hermitian_core, real_discriminant};
use crate::error::{Error, Result};
use crate::matrix::{char_poly_3, hermitian_deviation, Matrix3};
use crate::poly::{depress, CubicPoly};
use crate::roots::{roots_general, roots_real};

/// `x³ - x² + a²x - b²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityPolySpec {
    pub a: f64,
    pub b: f64,
}

impl DensityPolySpec {
    pub fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    /// From `a²` and `b²`, which must be finite and non-negative.
    pub fn from_squares(a2: f64, b2: f64) -> Result<Self> {
        for (name, v) in [("a2", a2), ("b2", b2)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "[0, ∞)",
                });
            }
        }
        Ok(Self::new(a2.sqrt(), b2.sqrt()))
    }

    /// Number of zero eigenvalues implied by the spec: one when only `b`
    /// vanishes, two when both do.
    pub fn zero_roots(&self) -> usize {
        match (self.a == 0.0, self.b == 0.0) {
            (false, true) => 1,
            (true, true) => 2,
            _ => 0,
        }
    }
}

pub fn density_poly(spec: &DensityPolySpec) -> CubicPoly {
    CubicPoly::real(-1.0, spec.a * spec.a, -spec.b * spec.b)
}

/// Condition that keeps a cubic from being a density characteristic polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    /// `c1 ≠ -1`: the trace would not be one.
    TraceNotOne { c1: f64 },
    /// `c2 < 0`: coefficient signs do not alternate.
    NegativeLinear { c2: f64 },
    /// `c3 > 0`: coefficient signs do not alternate.
    PositiveConstant { c3: f64 },
    /// `p > -(3/2)·∛(2q²)`, i.e. `Δ > 0`: not all roots are real.
    DiscriminantPositive { p: f64, q: f64, discriminant: f64 },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::TraceNotOne { .. } => "trace-not-one",
            Violation::NegativeLinear { .. } => "negative-linear",
            Violation::PositiveConstant { .. } => "positive-constant",
            Violation::DiscriminantPositive { .. } => "discriminant-positive",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TraceNotOne { c1 } => write!(f, "quadratic coefficient {c1} is not -1"),
            Violation::NegativeLinear { c2 } => write!(f, "linear coefficient {c2} is negative"),
            Violation::PositiveConstant { c3 } => write!(f, "constant term {c3} is positive"),
            Violation::DiscriminantPositive { p, q, .. } => {
                write!(f, "p = {p} exceeds -(3/2)·cbrt(2q²) for q = {q}")
            }
        }
    }
}

/// Slack on `p ≤ -(3/2)∛(2q²)` so that double-root (boundary) specs pass.
pub fn admissibility_slack(q: f64) -> f64 {
    1e-10 * (1.0 + q.abs().powf(2.0 / 3.0))
}

/// Checks that a real cubic can be the characteristic polynomial of a
/// qutrit density matrix. `Ok(Err(v))` names the first violated condition.
pub fn is_admissible(poly: &CubicPoly, tol: f64) -> Result<std::result::Result<(), Violation>> {
    if !poly.is_real() {
        return Err(Error::ComplexInput);
    }
    let [c1, c2, c3] = poly.coeffs().map(|c| c.re);
    if (c1 + 1.0).abs() > tol {
        return Ok(Err(Violation::TraceNotOne { c1 }));
    }
    if c2 < -tol {
        return Ok(Err(Violation::NegativeLinear { c2 }));
    }
    if c3 > tol {
        return Ok(Err(Violation::PositiveConstant { c3 }));
    }
    let can = depress(poly);
    let (p, q) = (can.p.re, can.q.re);
    let bound = -1.5 * (2.0 * q * q).cbrt();
    if p > bound + admissibility_slack(q).max(tol) {
        return Ok(Err(Violation::DiscriminantPositive {
            p,
            q,
            discriminant: real_discriminant(p, q),
        }));
    }
    Ok(Ok(()))
}

pub const DEFAULT_TOL: f64 = 1e-10;

/// Density matrix whose characteristic polynomial is `density_poly(spec)`.
pub fn density_acm(spec: &DensityPolySpec) -> Result<Matrix3> {
    let poly = density_poly(spec);
    is_admissible(&poly, DEFAULT_TOL)?.map_err(Error::Inadmissible)?;
    let can = depress(&poly);
    Ok(hermitian_core(can.p.re, can.q.re) - Matrix3::identity().scale(can.shift))
}

/// Property-by-property verdict of [`validate_density`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub hermitian: bool,
    pub hermitian_deviation: f64,
    pub trace_one: bool,
    pub trace: [f64; 2],
    pub positive_semidefinite: bool,
    /// Eigenvalues as `[re, im]` pairs.
    pub eigenvalues: [[f64; 2]; 3],
    pub tolerance: f64,
}

impl DensityReport {
    pub fn passed(&self) -> bool {
        self.hermitian && self.trace_one && self.positive_semidefinite
    }
}

/// Checks Hermiticity, unit trace and non-negative spectrum.
///
/// Eigenvalues come from the characteristic polynomial: the real trigonometric
/// solver when the matrix is Hermitian, the general one otherwise.
pub fn validate_density(m: &Matrix3, tol: f64) -> DensityReport {
    let dev = hermitian_deviation(m);
    let hermitian = dev <= tol;
    let trace = m.trace();
    let trace_one = (trace - Complex64::new(1.0, 0.0)).norm() <= tol;
    let cp = char_poly_3(m);
    let eig = if hermitian {
        let [c1, c2, c3] = cp.coeffs().map(|c| c.re);
        roots_real(c1, c2, c3).roots
    } else {
        roots_general(&cp).roots
    };
    let positive_semidefinite =
        hermitian && eig.iter().all(|e| e.re >= -tol && e.im.abs() <= tol.sqrt());
    DensityReport {
        hermitian,
        hermitian_deviation: dev,
        trace_one,
        trace: [trace.re, trace.im],
        positive_semidefinite,
        eigenvalues: eig.map(|e| [e.re, e.im]),
        tolerance: tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::is_hermitian;
    use crate::oracle::multiset_distance;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn eq50() -> Matrix3 {
        let k = 1.0 / (6.0 * 3f64.sqrt());
        let d = 2.0 * 3f64.sqrt();
        Matrix3::new([
            [c(d, 0.0), c(-1.0, 0.0), c(0.0, -1.0)],
            [c(-1.0, 0.0), c(d, 0.0), c(-1.0, 0.0)],
            [c(0.0, 1.0), c(-1.0, 0.0), c(d, 0.0)],
        ])
        .scale(c(k, 0.0))
    }

    #[test]
    fn poly_examples() {
        let spec = DensityPolySpec::from_squares(11.0 / 36.0, 1.0 / 36.0).unwrap();
        let p = density_poly(&spec);
        assert_eq!(p.c1, c(-1.0, 0.0));
        assert!((p.c2.re - 11.0 / 36.0).abs() < 1e-16);
        assert!((p.c3.re + 1.0 / 36.0).abs() < 1e-17);
        assert_eq!(density_poly(&DensityPolySpec::new(0.0, 0.0)), CubicPoly::real(-1.0, 0.0, 0.0));
        assert_eq!(DensityPolySpec::new(0.0, 0.0).zero_roots(), 2);
        assert_eq!(DensityPolySpec::new(0.5, 0.0).zero_roots(), 1);
        assert!(DensityPolySpec::from_squares(-1.0, 0.0).is_err());
    }

    #[test]
    fn admissibility() {
        let tol = DEFAULT_TOL;
        let ok = CubicPoly::real(-1.0, 11.0 / 36.0, -1.0 / 36.0);
        assert_eq!(is_admissible(&ok, tol).unwrap(), Ok(()));
        let bad = is_admissible(&CubicPoly::real(-1.0, 1.0, -1.0), tol).unwrap();
        assert!(matches!(bad, Err(Violation::DiscriminantPositive { .. })));
        let bad = is_admissible(&CubicPoly::real(-2.0, 1.0, 0.0), tol).unwrap();
        assert!(matches!(bad, Err(Violation::TraceNotOne { .. })));
        let complex = CubicPoly::new(c(-1.0, 0.1), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(is_admissible(&complex, tol), Err(Error::ComplexInput));
    }

    #[test]
    fn a_zero_b_nonzero_never_admissible() {
        // b below about 1e-5 falls inside the boundary slack.
        for b in [1e-3, 0.01, 0.3, 2.0] {
            let spec = DensityPolySpec::new(0.0, b);
            assert!(matches!(density_acm(&spec), Err(Error::Inadmissible(_))));
        }
    }

    #[test]
    fn worked_example_matrix() {
        let spec = DensityPolySpec::from_squares(11.0 / 36.0, 1.0 / 36.0).unwrap();
        let m = density_acm(&spec).unwrap();
        assert!((m - eq50()).max_abs() <= 1e-14);
        assert!(validate_density(&m, 1e-12).passed());
    }

    #[test]
    fn pure_state_class() {
        let m = density_acm(&DensityPolySpec::new(0.0, 0.0)).unwrap();
        assert!(is_hermitian(&m, 1e-12));
        let r = validate_density(&m, 1e-10);
        assert!(r.passed(), "{r:?}");
        let eig = r.eigenvalues.map(|[a, b]| c(a, b));
        assert!(multiset_distance(&eig, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]) < 1e-8);
    }

    #[test]
    fn double_half_spectrum() {
        let m = density_acm(&DensityPolySpec::from_squares(0.25, 0.0).unwrap()).unwrap();
        let r = validate_density(&m, 1e-10);
        assert!(r.passed(), "{r:?}");
        let eig = r.eigenvalues.map(|[a, b]| c(a, b));
        assert!(multiset_distance(&eig, &[c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0)]) < 1e-8);
    }

    #[test]
    fn validation_examples() {
        assert!(validate_density(&eq50(), 1e-12).passed());
        let third = Matrix3::identity().scale(c(1.0 / 3.0, 0.0));
        assert!(validate_density(&third, 1e-12).passed());
        let r = validate_density(&Matrix3::from_real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]), 1e-12);
        assert!(r.hermitian && r.trace_one && !r.positive_semidefinite);
    }
}
