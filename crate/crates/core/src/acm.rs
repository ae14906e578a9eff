//! Almost-companion matrices of monic cubics.
//!
//! For the depressed cubic `η³ + pη + q` with `p ≠ 0` the ACM is
//!
//! ```text
//!   √(|p|/3)·e^{iφ_p/2} · | 0        1   e^{iΦ} |
//!                         | 1        0   1      |
//!                         | e^{-iΦ}  1   0      |
//! ```
//!
//! with `φ_p = Arg p + π` and `Φ = Arccos χ`. Its characteristic polynomial
//! is `η³ - 3ρ²e^{iφ}η + 2ρ³e^{3iφ/2}cos Φ`, which matches `(p, q)` once
//! `ρ² = |p|/3` and `cos Φ = χ`. A separate bracket handles `p = 0`, and a
//! general cubic is reached by shifting the diagonal by `-c1/3`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::branch::{arccos_exponentials, arccos_principal, arg_unchecked, principal_cbrt, principal_sqrt};
use crate::error::{Error, Result};
use crate::matrix::Matrix3;
use crate::poly::{depress, CubicPoly};
use crate::ComplexScalar;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative width of the `Δ = 0` boundary.
pub const DELTA_REL_TOL: f64 = 1e-12;

/// Quantities that fix the ACM of `η³ + pη + q` when `p ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcmParams {
    /// `√(|p|/3)`
    pub rho: f64,
    /// `Θ_p + π`
    pub phi_p: f64,
    /// `Arg p`
    pub theta_p: f64,
    pub chi: ComplexScalar,
    /// Principal `Arccos χ`.
    pub phi13: ComplexScalar,
}

/// Below this modulus `p` is treated as zero: `1e-12·max(1, |q|^{2/3})`.
pub fn p_zero_threshold(q: ComplexScalar) -> f64 {
    1e-12 * q.norm().powf(2.0 / 3.0).max(1.0)
}

fn is_p_zero(p: ComplexScalar, q: ComplexScalar) -> bool {
    p.norm() <= p_zero_threshold(q)
}

/// `e^{iΘ_p/2}` taken as the principal square root of `p/|p|`, which is exact
/// on the real axis.
fn half_phase(p: ComplexScalar) -> ComplexScalar {
    principal_sqrt(p / p.norm())
}

/// `√(|p|/3)·e^{iφ_p/2}`, the scalar in front of the ACM bracket.
pub(crate) fn acm_prefactor(p: ComplexScalar) -> ComplexScalar {
    I * half_phase(p) * (p.norm() / 3.0).sqrt()
}

/// `χ = -i·q·e^{-3iΘ_p/2} / (2√(|p|³/27))`.
pub fn chi_of(p: ComplexScalar, q: ComplexScalar) -> Result<ComplexScalar> {
    if is_p_zero(p, q) {
        return Err(Error::PZero {
            modulus: p.norm(),
            threshold: p_zero_threshold(q),
        });
    }
    Ok(chi_unchecked(p, q))
}

fn chi_unchecked(p: ComplexScalar, q: ComplexScalar) -> ComplexScalar {
    let h = half_phase(p).conj();
    let denom = 2.0 * (p.norm().powi(3) / 27.0).sqrt();
    -I * q * h * h * h / denom
}

pub fn acm_params(p: ComplexScalar, q: ComplexScalar) -> Result<AcmParams> {
    let chi = chi_of(p, q)?;
    let theta_p = arg_unchecked(p);
    Ok(AcmParams {
        rho: (p.norm() / 3.0).sqrt(),
        phi_p: theta_p + PI,
        theta_p,
        chi,
        phi13: arccos_principal(chi).value(),
    })
}

/// `p³/27 + q²/4`.
pub fn discriminant(p: ComplexScalar, q: ComplexScalar) -> ComplexScalar {
    p * p * p / 27.0 + q * q / 4.0
}

pub fn real_discriminant(p: f64, q: f64) -> f64 {
    p * p * p / 27.0 + q * q / 4.0
}

/// Band around `Δ = 0` inside which the discriminant counts as zero; relative
/// to the two terms that make up `Δ`.
pub fn delta_tolerance(p: f64, q: f64) -> f64 {
    DELTA_REL_TOL * (p.abs().powi(3) / 27.0 + q * q / 4.0)
}

/// `Δ(p, q) ≤ 0` up to [`delta_tolerance`].
pub fn is_delta_nonpositive(p: f64, q: f64) -> bool {
    real_discriminant(p, q) <= delta_tolerance(p, q)
}

/// ACM of `η³ + pη + q`, trace zero, for any complex `(p, q)`.
pub fn acm_canonical(p: ComplexScalar, q: ComplexScalar) -> Matrix3 {
    if is_p_zero(p, q) {
        return acm_p_zero(q);
    }
    let (e_plus, e_minus) = if q == ZERO {
        (I, -I)
    } else {
        arccos_exponentials(chi_unchecked(p, q))
    };
    Matrix3::new([[ZERO, ONE, e_plus], [ONE, ZERO, ONE], [e_minus, ONE, ZERO]])
        .scale(acm_prefactor(p))
}

/// ACM of `η³ + q`.
///
/// `(|q|/√3)^{1/3}·e^{(i/3)Arg(-iq)}` times a fixed bracket whose
/// determinant is `-i√3` and whose principal 2×2 minors sum to zero. The
/// phase uses `Arg(-iq)`; `Arg(iq)` would produce `η³ - q`.
pub fn acm_p_zero(q: ComplexScalar) -> Matrix3 {
    let s3 = 3f64.sqrt();
    let scale = principal_cbrt(-I * q / s3);
    // -e^{-4πi/3} and -e^{4πi/3}
    let lower_left = Complex64::new(0.5, -s3 / 2.0);
    let bottom_left = Complex64::new(0.5, s3 / 2.0);
    Matrix3::new([
        [ZERO, ONE, ONE],
        [lower_left, ZERO, -ONE],
        [bottom_left, ONE, ZERO],
    ])
    .scale(scale)
}

/// ACM of a general monic cubic: `acm_canonical(p, q) - (c1/3)·I`.
pub fn acm_general(poly: &CubicPoly) -> Matrix3 {
    let can = depress(poly);
    acm_canonical(can.p, can.q) - Matrix3::identity().scale(can.shift)
}

/// Real `Φ = Arg(χ + i|1-χ²|^½)` for real `(p, q)` with `Δ ≤ 0`; lies in `[0, π]`.
///
/// `χ = -(3q/2p)·√(-3/p)` is clamped to `[-1, 1]` to absorb rounding at the
/// `Δ = 0` boundary.
pub fn hermitian_phase(p: f64, q: f64) -> Result<f64> {
    if !is_delta_nonpositive(p, q) {
        return Err(Error::NotHermitianAdmissible {
            discriminant: real_discriminant(p, q),
        });
    }
    let (chi, s) = hermitian_chi(p, q);
    Ok(s.atan2(chi))
}

/// Returns `(χ, √(1-χ²))`, or `(0, 1)` when `p` is not negative.
fn hermitian_chi(p: f64, q: f64) -> (f64, f64) {
    if p >= 0.0 {
        return (0.0, 1.0);
    }
    let chi = (-(3.0 * q) / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
    (chi, (1.0 - chi * chi).sqrt())
}

/// Hermitian ACM `-√(|p|/3)·[[0,1,e^{iΦ}],[1,0,1],[e^{-iΦ},1,0]]` of the real
/// cubic `η³ + pη + q`. Requires `Δ(p, q) ≤ 0`.
pub fn acm_hermitian(p: f64, q: f64) -> Result<Matrix3> {
    if !is_delta_nonpositive(p, q) {
        return Err(Error::NotHermitianAdmissible {
            discriminant: real_discriminant(p, q),
        });
    }
    Ok(hermitian_core(p, q))
}

/// Hermitian ACM without the discriminant check; callers apply their own
/// admissibility slack.
pub(crate) fn hermitian_core(p: f64, q: f64) -> Matrix3 {
    if p >= 0.0 {
        return Matrix3::zero();
    }
    let (chi, s) = hermitian_chi(p, q);
    let e_plus = Complex64::new(chi, s);
    let rho = (-p / 3.0).sqrt();
    Matrix3::new([
        [ZERO, ONE, e_plus],
        [ONE, ZERO, ONE],
        [e_plus.conj(), ONE, ZERO],
    ])
    .scale(Complex64::new(-rho, 0.0))
}
