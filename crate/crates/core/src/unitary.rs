//! Unitary ACMs of cubics whose roots lie on the unit circle.
//!
//! A monic cubic is the characteristic polynomial of a 3×3 unitary matrix
//! exactly when it belongs to the three-parameter family
//!
//! ```text
//! z³ - (1 + r₂e^{iθ/2})e^{-iε}z² + (1 + r₂e^{-iθ/2})e^{iθ}e^{-2iε}z - e^{i(θ-3ε)}
//! ```
//!
//! with `r₂ ∈ [0, 2]`. Its roots are `e^{-iε}` and `e^{-iε}` times the roots
//! of `z² - r₂e^{iθ/2}z + e^{iθ}`, and
//! `e^{-iε}·diag(R, 1)` with `R = [[r₂/2, √(1-r₂²/4)], [-√(1-r₂²/4), r₂/2]]·e^{iθ/2}`
//! is a unitary matrix with that spectrum.
//!
//! `θ` enters only through `e^{iθ/2}`, so it is kept in `(-2π, 2π]`; reducing
//! it to `(-π, π]` would lose half of the unit-circle root pairs.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::branch::{arg_unchecked, principal_sqrt};
use crate::error::{Error, Result};
use crate::matrix::Matrix3;
use crate::poly::CubicPoly;
use crate::roots::roots_general;
use crate::ComplexScalar;

/// Default tolerance on `||r| - 1|` in [`recognize_unitary`].
pub const DEFAULT_MODULUS_TOL: f64 = 1e-9;
/// Roots closer than this are treated as one multiple root.
const CLUSTER_RADIUS: f64 = 1e-4;
/// Coefficient agreement required of a recognized parameter set.
const RECOGNITION_ROUND_TRIP_TOL: f64 = 1e-8;

/// Parameters `(r₂, θ, ε)` of the unitary family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitaryParams {
    pub r2: f64,
    pub theta: f64,
    pub eps: f64,
}

impl UnitaryParams {
    /// Validates `r₂ ≥ 0` and normalizes `θ` into `(-2π, 2π]` and `ε` into
    /// `(-π, π]`. Values `r₂ > 2` are accepted here; see [`Self::is_unitary_range`].
    pub fn new(r2: f64, theta: f64, eps: f64) -> Result<Self> {
        if !(r2.is_finite() && r2 >= 0.0) {
            return Err(Error::OutOfRange {
                name: "r2",
                value: r2,
                range: "[0, 2]",
            });
        }
        for (name, v) in [("theta", theta), ("eps", eps)] {
            if !v.is_finite() {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "finite",
                });
            }
        }
        Ok(Self {
            r2,
            theta: normalize_half_turns(theta),
            eps: normalize_angle(eps),
        })
    }

    pub fn is_unitary_range(&self) -> bool {
        (0.0..=2.0).contains(&self.r2)
    }
}

/// Reduces an angle into `(-π, π]`.
pub fn normalize_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Reduces an angle into `(-2π, 2π]`, the period of `e^{iθ/2}`.
pub fn normalize_half_turns(x: f64) -> f64 {
    let y = x.rem_euclid(4.0 * PI);
    if y > 2.0 * PI {
        y - 4.0 * PI
    } else {
        y
    }
}

/// `z² + b·z + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadratic {
    pub b: ComplexScalar,
    pub c: ComplexScalar,
    /// Both roots on the unit circle (`r₂ ≤ 2`).
    pub unitary: bool,
}

impl Quadratic {
    pub fn roots(&self) -> [ComplexScalar; 2] {
        let disc = principal_sqrt(self.b * self.b - self.c * 4.0);
        let big = if (-self.b + disc).norm() >= (-self.b - disc).norm() {
            (-self.b + disc) / 2.0
        } else {
            (-self.b - disc) / 2.0
        };
        if big.norm() == 0.0 {
            return [big, big];
        }
        [big, self.c / big]
    }
}

/// `z² - r₂e^{iϑ}z + e^{2iϑ}`.
pub fn p2_unitary(r2: f64, vartheta: f64) -> Quadratic {
    Quadratic {
        b: -Complex64::from_polar(r2, vartheta),
        c: Complex64::from_polar(1.0, 2.0 * vartheta),
        unitary: (0.0..=2.0).contains(&r2),
    }
}

/// `(r, θ₁, θ)` in `z³ - re^{iθ₁}z² + re^{i(θ-θ₁)}z - e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem3Structure {
    pub r: f64,
    pub theta1: f64,
    pub theta: f64,
}

/// Necessary structure of a unitary characteristic polynomial:
/// `|c3| = 1`, `c2 = conj(c1)·c3` and `|c1| ≤ 3`.
pub fn theorem3_check(poly: &CubicPoly, tol: f64) -> Option<Theorem3Structure> {
    let CubicPoly { c1, c2, c3 } = *poly;
    if (c3.norm() - 1.0).abs() > tol {
        return None;
    }
    if (c2 - c1.conj() * c3).norm() > tol {
        return None;
    }
    let r = c1.norm();
    if r > 3.0 + tol {
        return None;
    }
    let theta1 = if r > tol { arg_unchecked(-c1) } else { 0.0 };
    Some(Theorem3Structure {
        r,
        theta1,
        theta: arg_unchecked(-c3),
    })
}

/// Evaluates the family for any `r₂ ≥ 0`, including the non-unitary `r₂ > 2`.
pub fn family_poly(params: &UnitaryParams) -> CubicPoly {
    let UnitaryParams { r2, theta, eps } = *params;
    let half = Complex64::from_polar(1.0, theta / 2.0);
    let one = Complex64::new(1.0, 0.0);
    let c1 = -(one + half * r2) * Complex64::from_polar(1.0, -eps);
    let c2 = (one + half.conj() * r2) * Complex64::from_polar(1.0, theta - 2.0 * eps);
    let c3 = -Complex64::from_polar(1.0, theta - 3.0 * eps);
    CubicPoly { c1, c2, c3 }
}

/// The unitary family polynomial; `r₂` must lie in `[0, 2]`.
pub fn build_unitary_poly(params: &UnitaryParams) -> Result<CubicPoly> {
    if !params.is_unitary_range() {
        return Err(Error::OutOfRange {
            name: "r2",
            value: params.r2,
            range: "[0, 2]",
        });
    }
    Ok(family_poly(params))
}

/// ACM of the family polynomial, with a flag saying whether it is unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryAcm {
    pub matrix: Matrix3,
    pub unitary: bool,
}

/// `W₃ = e^{-iε}·W̃₃`. For `r₂ > 2` the off-diagonal `√(1 - r₂²/4)` becomes
/// imaginary and the matrix, though still an ACM, is not unitary.
pub fn build_unitary_acm(params: &UnitaryParams) -> UnitaryAcm {
    let UnitaryParams { r2, theta, eps } = *params;
    let phase = Complex64::from_polar(1.0, theta / 2.0 - eps);
    let diag = phase * (r2 / 2.0);
    let off = principal_sqrt(Complex64::new(1.0 - r2 * r2 / 4.0, 0.0)) * phase;
    let zero = Complex64::new(0.0, 0.0);
    UnitaryAcm {
        matrix: Matrix3::new([
            [diag, off, zero],
            [-off, diag, zero],
            [zero, zero, Complex64::from_polar(1.0, -eps)],
        ]),
        unitary: params.is_unitary_range(),
    }
}

/// Principal argument computed as `2·Arctan(y / (x + √(x² + y²)))`.
///
/// For `x < 0` the equivalent `2·Arctan((√(x² + y²) - x) / y)` avoids the
/// cancellation in the denominator; on the negative real axis the result is
/// `+π`.
pub fn arg_via_arctan(x: f64, y: f64) -> Result<f64> {
    if x == 0.0 && y == 0.0 {
        return Err(Error::ArgumentOfZero);
    }
    if y == 0.0 {
        return Ok(if x < 0.0 { PI } else { 0.0 });
    }
    let r = x.hypot(y);
    Ok(if x >= 0.0 {
        2.0 * (y / (x + r)).atan()
    } else {
        2.0 * ((r - x) / y).atan()
    })
}

/// Replaces each group of roots closer than [`CLUSTER_RADIUS`] by its mean,
/// returning the merged roots and the spread of each root's group.
fn merge_clusters(roots: [ComplexScalar; 3]) -> [(ComplexScalar, f64); 3] {
    let mut group = [0usize, 1, 2];
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (roots[i] - roots[j]).norm() <= CLUSTER_RADIUS {
                let (from, to) = (group[j], group[i]);
                for g in &mut group {
                    if *g == from {
                        *g = to;
                    }
                }
            }
        }
    }
    std::array::from_fn(|i| {
        let members: Vec<usize> = (0..3).filter(|&j| group[j] == group[i]).collect();
        let mean = members.iter().map(|&j| roots[j]).sum::<Complex64>() / members.len() as f64;
        let spread = members
            .iter()
            .flat_map(|&a| members.iter().map(move |&b| (roots[a] - roots[b]).norm()))
            .fold(0.0, f64::max);
        (mean, spread)
    })
}

/// Decides whether `poly` is the characteristic polynomial of a unitary
/// matrix and, if so, returns family parameters that reproduce it.
///
/// All roots must have modulus within `tol` of one. The anchor is the root
/// with the smallest principal argument, giving `ε = -Arg(anchor)`; `r₂` and
/// `θ/2` then follow from `r₂e^{iθ/2} = -c1·e^{iε} - 1`, and `e^{iθ}` from
/// the constant term.
pub fn recognize_unitary(poly: &CubicPoly, tol: f64) -> Option<UnitaryParams> {
    let merged = merge_clusters(roots_general(poly).roots);
    let on_circle = merged
        .iter()
        .all(|&(r, spread)| (r.norm() - 1.0).abs() <= tol + spread * spread / 8.0);
    if !on_circle {
        return None;
    }
    let mut roots = merged.map(|(r, _)| r);
    roots.sort_by(|a, b| {
        arg_unchecked(*a)
            .total_cmp(&arg_unchecked(*b))
            .then(a.re.total_cmp(&b.re))
            .then(a.im.total_cmp(&b.im))
    });
    let anchor = roots[0];
    let eps = normalize_angle(-arg_unchecked(anchor));
    let rotate = Complex64::from_polar(1.0, eps);

    // r e^{iθ₁} = 1 + r₂e^{iθ/2} in the rotated frame.
    let w = -poly.c1 * rotate;
    let r2 = (w - 1.0).norm().min(2.0);
    let theta_prod = arg_unchecked(-poly.c3 * rotate * rotate * rotate);
    let theta = match arg_via_arctan(w.re - 1.0, w.im) {
        Ok(half) if r2 > 1e-6 => {
            // e^{iθ} fixes θ modulo 2π; pick the lift whose half angle matches.
            let candidates = [theta_prod, theta_prod + 2.0 * PI, theta_prod - 2.0 * PI];
            candidates
                .into_iter()
                .filter(|t| *t > -2.0 * PI && *t <= 2.0 * PI)
                .min_by(|a, b| {
                    angle_gap(a / 2.0, half).total_cmp(&angle_gap(b / 2.0, half))
                })
                .unwrap_or(theta_prod)
        }
        _ => theta_prod,
    };
    let params = UnitaryParams::new(r2, theta, eps).ok()?;
    let rebuilt = family_poly(&params);
    let agrees = rebuilt
        .coeffs()
        .iter()
        .zip(poly.coeffs())
        .all(|(a, b)| (a - b).norm() <= RECOGNITION_ROUND_TRIP_TOL.max(tol));
    agrees.then_some(params)
}

fn angle_gap(a: f64, b: f64) -> f64 {
    normalize_angle(a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{char_poly_3, is_hermitian, is_unitary};
    use crate::oracle::multiset_distance;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_poly_close(a: &CubicPoly, b: &CubicPoly, tol: f64) {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!((x - y).norm() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_angle(PI), PI);
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(normalize_half_turns(2.0 * PI), 2.0 * PI);
        assert_eq!(normalize_half_turns(-2.0 * PI), 2.0 * PI);
        assert!(UnitaryParams::new(-0.1, 0.0, 0.0).is_err());
        assert!(UnitaryParams::new(1.0, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn quadratic_examples() {
        let q = p2_unitary(0.0, 0.0);
        assert_eq!((q.b, q.c), (c(0.0, 0.0), c(1.0, 0.0)));
        let r = q.roots();
        assert!(multiset_distance(&r, &[c(0.0, 1.0), c(0.0, -1.0)]) < 1e-15);

        let q = p2_unitary(2.0, 0.0);
        assert!(q.roots().iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-7));

        let q = p2_unitary(3.0, PI);
        assert!(!q.unitary);
        let [a, b] = q.roots();
        assert!((a.norm() * b.norm() - 1.0).abs() < 1e-14);
        assert!((a.norm() - 1.0).abs() > 0.5);
        assert!((arg_unchecked(a) - PI).abs() < 1e-12 && (arg_unchecked(b) - PI).abs() < 1e-12);
    }

    #[test]
    fn theorem3_examples() {
        let s = theorem3_check(&CubicPoly::real(-3.0, -3.0, 1.0), 1e-12).unwrap();
        assert_eq!((s.r, s.theta1, s.theta), (3.0, 0.0, PI));
        let s = theorem3_check(&CubicPoly::real(0.0, 0.0, -1.0), 1e-12).unwrap();
        assert_eq!(s.r, 0.0);
        assert!(theorem3_check(&CubicPoly::real(0.0, 1.0, 1.0), 1e-12).is_none());
    }

    #[test]
    fn build_poly_examples() {
        let p = build_unitary_poly(&UnitaryParams::new(0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_poly_close(&p, &CubicPoly::real(-1.0, 1.0, -1.0), 1e-15);

        // ε = 0 keeps the root 1.
        let p = build_unitary_poly(&UnitaryParams::new(1.3, 0.7, 0.0).unwrap()).unwrap();
        assert!(p.eval(c(1.0, 0.0)).norm() < 1e-15);

        // σ = -1: ε = π gives the real root -1.
        let p = build_unitary_poly(&UnitaryParams::new(0.4, -1.1, PI).unwrap()).unwrap();
        assert!(p.eval(c(-1.0, 0.0)).norm() < 1e-14);

        assert!(build_unitary_poly(&UnitaryParams::new(3.0, 0.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn r2_zero_example() {
        let (theta1, theta_prime): (f64, f64) = (0.4, -2.2);
        let params = UnitaryParams::new(0.0, theta_prime - 3.0 * theta1, -theta1).unwrap();
        let w = build_unitary_acm(&params);
        let h = Complex64::from_polar(1.0, (theta_prime - theta1) / 2.0);
        let zero = c(0.0, 0.0);
        let expected = Matrix3::new([
            [zero, h, zero],
            [-h, zero, zero],
            [zero, zero, Complex64::from_polar(1.0, theta1)],
        ]);
        assert!((w.matrix - expected).max_abs() < 1e-15);
        assert!(is_unitary(&w.matrix, 1e-12));
    }

    #[test]
    fn r_zero_example_keeps_two_pi() {
        let eps = 0.3;
        let params = UnitaryParams::new(1.0, 2.0 * PI, eps).unwrap();
        let w = build_unitary_acm(&params);
        let ph = Complex64::from_polar(1.0, PI - eps);
        let zero = c(0.0, 0.0);
        let expected = Matrix3::new([
            [ph * 0.5, ph * 0.75f64.sqrt(), zero],
            [-ph * 0.75f64.sqrt(), ph * 0.5, zero],
            [zero, zero, Complex64::from_polar(1.0, -eps)],
        ]);
        assert!((w.matrix - expected).max_abs() < 1e-15);
        let p = build_unitary_poly(&params).unwrap();
        assert!(p.c1.norm() < 1e-15 && p.c2.norm() < 1e-15);
    }

    #[test]
    fn non_unitary_counterexample_matrix() {
        let eps = -0.8;
        let params = UnitaryParams::new(3.0, 2.0 * PI, eps).unwrap();
        let w = build_unitary_acm(&params);
        assert!(!w.unitary);
        assert!(!is_unitary(&w.matrix, 1e-6));
        let e = Complex64::from_polar(1.0, -eps);
        let off = c(0.0, 5f64.sqrt() / 2.0) * e;
        let zero = c(0.0, 0.0);
        let expected = Matrix3::new([[e * -1.5, -off, zero], [off, e * -1.5, zero], [zero, zero, e]]);
        assert!((w.matrix - expected).max_abs() < 1e-15);
        // Same polynomial as the r = 2 structured form.
        let ph = Complex64::from_polar(1.0, PI);
        let r2_form = CubicPoly::new(
            -ph * 2.0 * Complex64::from_polar(1.0, -eps),
            ph * 2.0 * Complex64::from_polar(1.0, -2.0 * eps),
            -Complex64::from_polar(1.0, -3.0 * eps),
        );
        assert_poly_close(&char_poly_3(&w.matrix), &r2_form, 1e-14);
        assert!(recognize_unitary(&r2_form, DEFAULT_MODULUS_TOL).is_none());
        // At ε = 0 the matrix is Hermitian yet still not unitary.
        let zero_eps = build_unitary_acm(&UnitaryParams::new(3.0, 2.0 * PI, 0.0).unwrap());
        assert!(is_hermitian(&zero_eps.matrix, 1e-12));
        assert!(!is_unitary(&zero_eps.matrix, 1e-6));
    }

    #[test]
    fn arg_via_arctan_examples() {
        assert!((arg_via_arctan(1.0, 1.0).unwrap() - PI / 4.0).abs() < 1e-15);
        assert_eq!(arg_via_arctan(-1.0, 0.0).unwrap(), PI);
        assert_eq!(arg_via_arctan(0.0, 0.0), Err(Error::ArgumentOfZero));
        let (r, t1) = (2.0f64, PI / 3.0);
        let got = arg_via_arctan(-1.0 + r * t1.cos(), r * t1.sin()).unwrap();
        let closed = 2.0
            * (r * t1.sin() / (-1.0 + r * t1.cos() + (1.0 + r * r - 2.0 * r * t1.cos()).sqrt())).atan();
        assert!((got - closed).abs() < 1e-13);
        for (x, y) in [(-3.0, 1e-9), (-1.0, -0.5), (0.2, -4.0), (-5.0, 5.0)] {
            let a = arg_via_arctan(x, y).unwrap();
            assert!((a - crate::principal_arg(c(x, y)).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn recognize_examples() {
        let p = CubicPoly::real(-1.0, 1.0, -1.0);
        let params = recognize_unitary(&p, DEFAULT_MODULUS_TOL).unwrap();
        assert_poly_close(&build_unitary_poly(&params).unwrap(), &p, 1e-12);

        let counter = CubicPoly::real(-3.0, -3.0, 1.0);
        assert!(theorem3_check(&counter, 1e-12).is_some());
        assert!(recognize_unitary(&counter, DEFAULT_MODULUS_TOL).is_none());

        let w = Complex64::from_polar(1.0, PI / 4.0);
        let cube = CubicPoly::from_roots([w, w, w]);
        let params = recognize_unitary(&cube, DEFAULT_MODULUS_TOL).unwrap();
        assert_poly_close(&build_unitary_poly(&params).unwrap(), &cube, 1e-8);
    }

    #[test]
    fn cube_roots_of_unity_need_full_theta_range() {
        let p = CubicPoly::real(0.0, 0.0, -1.0);
        let params = recognize_unitary(&p, DEFAULT_MODULUS_TOL).unwrap();
        assert!(params.theta.abs() > PI - 1e-9);
        assert_poly_close(&build_unitary_poly(&params).unwrap(), &p, 1e-12);
    }
}
