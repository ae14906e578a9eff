//! Cubic roots from the ACM's trigonometric structure.
//!
//! The bracket of the canonical ACM has characteristic polynomial
//! `η̃³ - 3η̃ - 2cos Φ`, so by the cosine triplication formula
//! `η̃₁ = 2cos(Φ/3)` is a root, and the remaining two follow from the
//! quadratic factor. Scaling by the ACM prefactor and undoing the shift
//! gives the roots of the original cubic.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::acm::{
    acm_prefactor, delta_tolerance, is_delta_nonpositive, p_zero_threshold, real_discriminant,
};
use crate::branch::{arccos_principal, complex_cos, complex_sin, principal_cbrt, principal_sqrt};
use crate::error::{Error, Result};
use crate::poly::{depress, CubicPoly};
use crate::ComplexScalar;

/// Which formula produced a [`RootTriple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    ComplexGeneral,
    PZero,
    RealDeltaNonpos,
    RealDeltaPosPgt0,
    RealDeltaPosPlt0,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::ComplexGeneral => "complex-general",
            Regime::PZero => "p-zero",
            Regime::RealDeltaNonpos => "real-delta-nonpos",
            Regime::RealDeltaPosPgt0 => "real-delta-pos-pgt0",
            Regime::RealDeltaPosPlt0 => "real-delta-pos-plt0",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Three roots in the order the producing formula indexes them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTriple {
    pub roots: [ComplexScalar; 3],
    pub regime: Regime,
}

impl RootTriple {
    /// Roots sorted by `(Re, Im)`.
    pub fn sorted(&self) -> [ComplexScalar; 3] {
        let mut r = self.roots;
        r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        r
    }

    fn shifted(mut self, shift: ComplexScalar) -> Self {
        for r in &mut self.roots {
            *r -= shift;
        }
        self
    }
}

/// Intermediates of the `Δ > 0` closed forms for real cubics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveIntermediates {
    /// `p > 0`: `A = ∛(√(1+u²) - u)`, `B = ∛(√(1+u²) + u)`, `X = A + B`,
    /// `Y = (B - A)/√3`.
    PositiveP {
        u: f64,
        a: f64,
        b: f64,
        x: f64,
        y: f64,
    },
    /// `p < 0`: `C = ∛(χ + √(χ²-1)) + ∛(χ - √(χ²-1))` with real cube roots and
    /// `ν = ln(|χ| + √(χ²-1))`, so that `|C| = 2cosh(ν/3)`.
    NegativeP { chi: f64, c: f64, nu: f64 },
}

/// Result of the real-coefficient solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSolution {
    pub roots: RootTriple,
    pub intermediates: Option<SolveIntermediates>,
}

fn omega() -> Complex64 {
    Complex64::new(-0.5, 3f64.sqrt() / 2.0)
}

/// Roots of `η³ + pη + q`.
///
/// For `p` at or below the zero threshold the roots are the three cube roots
/// of `-q`, principal root first.
pub fn roots_canonical(p: ComplexScalar, q: ComplexScalar) -> RootTriple {
    if p.norm() <= p_zero_threshold(q) {
        let r = principal_cbrt(-q);
        let w = omega();
        return RootTriple {
            roots: [r, r * w, r * w.conj()],
            regime: Regime::PZero,
        };
    }
    let chi = crate::acm::chi_of(p, q).expect("p above threshold");
    let third = arccos_principal(chi).value() / 3.0;
    let eta1 = complex_cos(third) * 2.0;
    let sin = complex_sin(third);
    let branch = principal_sqrt(sin * sin) * 3f64.sqrt();
    let half = -eta1 / 2.0;
    let scale = acm_prefactor(p);
    RootTriple {
        roots: [eta1 * scale, (half + branch) * scale, (half - branch) * scale],
        regime: Regime::ComplexGeneral,
    }
}

/// Roots of a general monic cubic via its canonical form.
pub fn roots_general(poly: &CubicPoly) -> RootTriple {
    let can = depress(poly);
    roots_canonical(can.p, can.q).shifted(can.shift)
}

/// Roots of a cubic with real coefficients.
pub fn roots_real(c1: f64, c2: f64, c3: f64) -> RootTriple {
    solve_real(c1, c2, c3).roots
}

/// Real-coefficient solver with its intermediates.
///
/// * `Δ ≤ 0`: `x_k = 2√(|p|/3)·cos((Φ + (2k+1)π)/3) - c1/3`, all real.
/// * `Δ > 0, p > 0`: `z₁,₂ = (√p/2)(Y ± iX) - c1/3`, `z₃ = -√p·Y - c1/3`.
/// * `Δ > 0, p < 0`: `z₁ = -√(-p/3)·C - c1/3` and
///   `z₂,₃ = √(-p/3)[C/2 ± i√(3(C²/4 - 1))] - c1/3`.
pub fn solve_real(c1: f64, c2: f64, c3: f64) -> RealSolution {
    let p = c2 - c1 * c1 / 3.0;
    let q = 2.0 * c1 * c1 * c1 / 27.0 - c1 * c2 / 3.0 + c3;
    let shift = Complex64::new(c1 / 3.0, 0.0);
    let real = |x: f64| Complex64::new(x, 0.0);

    if is_delta_nonpositive(p, q) {
        let roots = if p >= 0.0 {
            [real(0.0); 3]
        } else {
            let phi = crate::acm::hermitian_phase(p, q).expect("Δ ≤ 0 checked");
            let amp = 2.0 * (-p / 3.0).sqrt();
            [1.0, 2.0, 3.0].map(|k: f64| real(amp * ((phi + (2.0 * k + 1.0) * PI) / 3.0).cos()))
        };
        return RealSolution {
            roots: RootTriple {
                roots,
                regime: Regime::RealDeltaNonpos,
            }
            .shifted(shift),
            intermediates: None,
        };
    }

    if p.abs() <= p_zero_threshold(real(q)) {
        let r = real((-q).cbrt());
        let w = omega();
        return RealSolution {
            roots: RootTriple {
                roots: [r, r * w, r * w.conj()],
                regime: Regime::PZero,
            }
            .shifted(shift),
            intermediates: None,
        };
    }

    if p > 0.0 {
        let u = 3.0 * q / (2.0 * p) * (3.0 / p).sqrt();
        let h = 1f64.hypot(u);
        // AB = 1; take the cube root of the larger radicand and invert it.
        let (a, b) = if u >= 0.0 {
            let b = (h + u).cbrt();
            (1.0 / b, b)
        } else {
            let a = (h - u).cbrt();
            (a, 1.0 / a)
        };
        let x = a + b;
        let y = (b - a) / 3f64.sqrt();
        let sp = p.sqrt();
        let roots = [
            Complex64::new(sp / 2.0 * y, sp / 2.0 * x),
            Complex64::new(sp / 2.0 * y, -sp / 2.0 * x),
            real(-sp * y),
        ];
        RealSolution {
            roots: RootTriple {
                roots,
                regime: Regime::RealDeltaPosPgt0,
            }
            .shifted(shift),
            intermediates: Some(SolveIntermediates::PositiveP { u, a, b, x, y }),
        }
    } else {
        let chi = -(3.0 * q) / (2.0 * p) * (-3.0 / p).sqrt();
        let t = ((chi.abs() - 1.0) * (chi.abs() + 1.0)).sqrt();
        let big = chi.abs() + t;
        let m = big.cbrt();
        let c = chi.signum() * (m + 1.0 / m);
        let nu = big.ln();
        let amp = (-p / 3.0).sqrt();
        let im = amp * 3f64.sqrt() * (m - 1.0 / m).abs() / 2.0;
        let roots = [
            real(-amp * c),
            Complex64::new(amp * c / 2.0, im),
            Complex64::new(amp * c / 2.0, -im),
        ];
        RealSolution {
            roots: RootTriple {
                roots,
                regime: Regime::RealDeltaPosPlt0,
            }
            .shifted(shift),
            intermediates: Some(SolveIntermediates::NegativeP { chi, c, nu }),
        }
    }
}

/// Nature of the roots of a real depressed cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootClass {
    ThreeDistinctReal,
    RealWithDouble,
    OneRealTwoConjugate,
}

impl RootClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootClass::ThreeDistinctReal => "three-distinct-real",
            RootClass::RealWithDouble => "real-with-double",
            RootClass::OneRealTwoConjugate => "one-real-two-conjugate",
        }
    }
}

/// Classifies `η³ + pη + q` by the sign of `Δ = p³/27 + q²/4`.
pub fn classify(p: f64, q: f64) -> RootClass {
    let delta = real_discriminant(p, q);
    if delta.abs() <= delta_tolerance(p, q) {
        RootClass::RealWithDouble
    } else if delta < 0.0 {
        RootClass::ThreeDistinctReal
    } else {
        RootClass::OneRealTwoConjugate
    }
}

/// A real root of a cubic with at least one non-real coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    /// The imaginary-part equation produced a single candidate (`δ = 0`, or
    /// the `y₁ = 0` linear case).
    pub double_candidate: bool,
    /// Multiplicity in the cubic itself, from the derivative.
    pub multiplicity: u8,
}

/// Real roots of a cubic with complex coefficients `c_j = x_j + i·y_j`.
///
/// A real root `r` must zero the imaginary part `y₁r² + y₂r + y₃` and the
/// real part `r³ + x₁r² + x₂r + x₃`; candidates come from the former and are
/// accepted by the latter.
pub fn real_roots_of_complex_cubic(poly: &CubicPoly) -> Result<Vec<RealRoot>> {
    let [y1, y2, y3] = poly.coeffs().map(|c| c.im);
    if y1 == 0.0 && y2 == 0.0 && y3 == 0.0 {
        return Err(Error::UseRootsReal);
    }
    let mut candidates: Vec<(f64, bool)> = Vec::with_capacity(2);
    if y1 != 0.0 {
        let delta = y2 * y2 - 4.0 * y1 * y3;
        let tol = 1e-12 * (y2 * y2 + (4.0 * y1 * y3).abs());
        if delta.abs() <= tol {
            candidates.push((-y2 / (2.0 * y1), true));
        } else if delta > 0.0 {
            let sd = delta.sqrt();
            let h = -(y2 + if y2 >= 0.0 { sd } else { -sd }) / 2.0;
            candidates.push((h / y1, false));
            if h != 0.0 {
                candidates.push((y3 / h, false));
            }
        }
    } else if y2 != 0.0 {
        candidates.push((-y3 / y2, true));
    }

    let derivative = |r: f64| {
        let z = Complex64::new(r, 0.0);
        let d = z * z * 3.0 + poly.c1 * z * 2.0 + poly.c2;
        let scale = 3.0 * r * r + 2.0 * poly.c1.norm() * r.abs() + poly.c2.norm();
        (d.norm(), scale)
    };
    Ok(candidates
        .into_iter()
        .filter(|&(r, _)| {
            let z = Complex64::new(r, 0.0);
            poly.eval(z).norm() <= 1e-9 * poly.residual_scale(z)
        })
        .map(|(value, double_candidate)| {
            let (d, scale) = derivative(value);
            RealRoot {
                value,
                double_candidate,
                multiplicity: if d <= 1e-8 * scale.max(1.0) { 2 } else { 1 },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::multiset_distance;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonical_cube_roots_of_unity() {
        let t = roots_canonical(c(0.0, 0.0), c(-1.0, 0.0));
        assert_eq!(t.regime, Regime::PZero);
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!(multiset_distance(&t.roots, &[c(1.0, 0.0), w, w.conj()]) < 1e-15);
        assert_eq!(t.roots[0], c(1.0, 0.0));
    }

    #[test]
    fn canonical_double_root() {
        let t = roots_canonical(c(-3.0, 0.0), c(-2.0, 0.0));
        let expected = [c(-1.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)];
        assert!(multiset_distance(&t.roots, &expected) < 1e-14);
    }

    #[test]
    fn canonical_appendix_example() {
        let s3 = 3f64.sqrt();
        let t = roots_canonical(c(4.0, 0.0), c(-7.0 * s3, 0.0));
        assert!((t.roots[0] - c(-s3 / 2.0, 2.5)).norm() < 1e-13);
        let expected = [c(-s3 / 2.0, 2.5), c(-s3 / 2.0, -2.5), c(s3, 0.0)];
        assert!(multiset_distance(&t.roots, &expected) < 1e-13);
    }

    #[test]
    fn general_examples() {
        let t = roots_general(&CubicPoly::real(-3.0, 3.0, -1.0));
        assert_eq!(t.roots, [c(1.0, 0.0); 3]);
        let t = roots_general(&CubicPoly::real(-1.0, 11.0 / 36.0, -1.0 / 36.0));
        let expected = [c(1.0 / 6.0, 0.0), c(1.0 / 3.0, 0.0), c(0.5, 0.0)];
        assert!(multiset_distance(&t.roots, &expected) < 1e-14);
    }

    #[test]
    fn real_double_root() {
        let s = solve_real(0.0, -3.0, -2.0);
        assert_eq!(s.roots.regime, Regime::RealDeltaNonpos);
        assert!(s.roots.roots.iter().all(|r| r.im == 0.0));
        let expected = [c(-1.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)];
        assert!(multiset_distance(&s.roots.roots, &expected) < 1e-14);
    }

    #[test]
    fn real_appendix_positive_p() {
        let s3 = 3f64.sqrt();
        let s = solve_real(0.0, 4.0, -7.0 * s3);
        assert_eq!(s.roots.regime, Regime::RealDeltaPosPgt0);
        let Some(SolveIntermediates::PositiveP { u, a, b, x, y }) = s.intermediates else {
            panic!("missing intermediates");
        };
        assert!((u + 63.0 / 16.0).abs() < 1e-14);
        assert!((a - 2.0).abs() < 1e-14 && (b - 0.5).abs() < 1e-14);
        assert!((x - 2.5).abs() < 1e-14 && (y + s3 / 2.0).abs() < 1e-14);
        assert!((a * b - 1.0).abs() < 1e-15);
        let [z1, z2, z3] = s.roots.roots;
        assert!((z1 - c(-s3 / 2.0, 2.5)).norm() < 1e-13);
        assert!((z2 - c(-s3 / 2.0, -2.5)).norm() < 1e-13);
        assert_eq!(z3.im, 0.0);
        assert!((z3.re - s3).abs() < 1e-13);
    }

    #[test]
    fn real_negative_p_one_real_root() {
        let s = solve_real(0.0, -3.0, 18.0);
        assert_eq!(s.roots.regime, Regime::RealDeltaPosPlt0);
        assert_eq!(s.roots.roots[0].im, 0.0);
        let oracle = crate::oracle_roots(&CubicPoly::real(0.0, -3.0, 18.0).to_poly_n()).unwrap();
        assert!(multiset_distance(&s.roots.roots, &oracle) < 1e-12);
        let Some(SolveIntermediates::NegativeP { chi, c, nu }) = s.intermediates else {
            panic!("missing intermediates");
        };
        assert!((c.abs() - 2.0 * (nu / 3.0).cosh()).abs() < 1e-13);
        assert_eq!(c.signum(), chi.signum());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(-3.0, -2.0), RootClass::RealWithDouble);
        assert_eq!(classify(-1.0 / 36.0, 0.0), RootClass::ThreeDistinctReal);
        assert_eq!(classify(4.0, -7.0 * 3f64.sqrt()), RootClass::OneRealTwoConjugate);
    }

    #[test]
    fn real_roots_two_candidates() {
        // (z² - 1)(z + i)
        let poly = CubicPoly::new(c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0));
        let mut roots = real_roots_of_complex_cubic(&poly).unwrap();
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
        assert_eq!(roots.len(), 2);
        assert!((roots[0].value + 1.0).abs() < 1e-15);
        assert!((roots[1].value - 1.0).abs() < 1e-15);
        assert!(roots.iter().all(|r| !r.double_candidate && r.multiplicity == 1));
    }

    #[test]
    fn real_roots_none() {
        let poly = CubicPoly::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0));
        assert!(real_roots_of_complex_cubic(&poly).unwrap().is_empty());
    }

    #[test]
    fn real_roots_rejects_real_input() {
        assert_eq!(
            real_roots_of_complex_cubic(&CubicPoly::real(1.0, 2.0, 3.0)),
            Err(Error::UseRootsReal)
        );
    }

    #[test]
    fn real_roots_true_double() {
        // (z - 2)²(z - i): δ = 0 and 2 really is a double root.
        let poly = CubicPoly::from_roots([c(2.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)]);
        let roots = real_roots_of_complex_cubic(&poly).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].value - 2.0).abs() < 1e-14);
        assert!(roots[0].double_candidate);
        assert_eq!(roots[0].multiplicity, 2);
    }

    #[test]
    fn real_roots_single_candidate_but_simple() {
        // z(z² + iz + 1): δ = 0 yet 0 is a simple root.
        let poly = CubicPoly::new(c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0));
        let roots = real_roots_of_complex_cubic(&poly).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].value, 0.0);
        assert!(roots[0].double_candidate);
        assert_eq!(roots[0].multiplicity, 1);
    }

    #[test]
    fn real_roots_linear_imaginary_part() {
        // Roots 1, 2+i, 3-i: the sum is real, so y₁ = 0 and r = -y₃/y₂ = 1.
        let poly = CubicPoly::from_roots([c(1.0, 0.0), c(2.0, 1.0), c(3.0, -1.0)]);
        assert_eq!(poly.c1.im, 0.0);
        let roots = real_roots_of_complex_cubic(&poly).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].value - 1.0).abs() < 1e-14);
        assert!(roots[0].double_candidate);
        assert_eq!(roots[0].multiplicity, 1);
    }
}
