//! Principal-value complex functions.
//!
//! Every function here is single valued with `Arg ∈ (-π, π]`. A zero or
//! negative-zero imaginary part on the negative real axis is read as the
//! upper side of the cut, so `Arg(-1) = +π` and `sqrt(-1) = +i`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ComplexScalar;

/// Principal arccosine split into its real and imaginary components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalArccosResult {
    pub re_part: f64,
    pub im_part: f64,
}

impl PrincipalArccosResult {
    pub fn value(&self) -> ComplexScalar {
        Complex64::new(self.re_part, self.im_part)
    }
}

/// Principal argument in `(-π, π]`.
pub fn principal_arg(z: ComplexScalar) -> Result<f64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ArgumentOfZero);
    }
    Ok(arg_unchecked(z))
}

/// `principal_arg` for callers that have already excluded zero.
pub(crate) fn arg_unchecked(z: ComplexScalar) -> f64 {
    if z.im == 0.0 {
        return if z.re < 0.0 { PI } else { 0.0 };
    }
    z.im.atan2(z.re)
}

/// `|z|^(1/2) · e^{(i/2) Arg z}`.
pub fn principal_sqrt(z: ComplexScalar) -> ComplexScalar {
    let (x, y) = (z.re, z.im);
    if x == 0.0 && y == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let r = z.norm();
    if x >= 0.0 {
        let t = ((r + x) / 2.0).sqrt();
        Complex64::new(t, y / (2.0 * t))
    } else {
        let t = ((r - x) / 2.0).sqrt();
        let im = if y >= 0.0 { t } else { -t };
        Complex64::new(y.abs() / (2.0 * t), im)
    }
}

/// `|z|^(1/3) · e^{(i/3) Arg z}`; the real cube root for positive reals.
pub fn principal_cbrt(z: ComplexScalar) -> ComplexScalar {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let modulus = z.norm().cbrt();
    let angle = arg_unchecked(z) / 3.0;
    if angle == 0.0 {
        return Complex64::new(z.re.cbrt(), 0.0);
    }
    Complex64::from_polar(modulus, angle)
}

/// `cos(a + ib) = cos a·cosh b - i sin a·sinh b`.
pub fn complex_cos(z: ComplexScalar) -> ComplexScalar {
    Complex64::new(z.re.cos() * z.im.cosh(), -z.re.sin() * z.im.sinh())
}

/// `sin(a + ib) = sin a·cosh b + i cos a·sinh b`.
pub fn complex_sin(z: ComplexScalar) -> ComplexScalar {
    Complex64::new(z.re.sin() * z.im.cosh(), z.re.cos() * z.im.sinh())
}

/// `e^{a + ib} = e^a (cos b + i sin b)`.
pub fn complex_exp(z: ComplexScalar) -> ComplexScalar {
    Complex64::from_polar(z.re.exp(), z.im)
}

/// The pair `(e^{iΦ}, e^{-iΦ})` for `Φ = Arccos χ`, in closed form.
///
/// `e^{iΦ} = χ + i·sqrt(1 - χ²)` and its reciprocal `χ - i·sqrt(1 - χ²)`.
/// The member with the larger modulus is taken from the closed form and the
/// other as its reciprocal, so neither suffers cancellation when `|χ|` is
/// large.
pub fn arccos_exponentials(chi: ComplexScalar) -> (ComplexScalar, ComplexScalar) {
    let root = principal_sqrt(Complex64::new(1.0, 0.0) - chi * chi);
    let i_root = Complex64::new(-root.im, root.re);
    let plus = chi + i_root;
    let minus = chi - i_root;
    if plus.norm() >= minus.norm() {
        (plus, plus.inv())
    } else {
        (minus.inv(), minus)
    }
}

/// Principal arccosine
/// `Φ = Arg(χ + i|1-χ²|^½ e^{(i/2)Arg(1-χ²)}) - i·ln|χ + i|1-χ²|^½ e^{(i/2)Arg(1-χ²)}|`.
///
/// Built on `1 - χ²` (never `χ² - 1`). Where `1 - χ²` is a negative real the
/// upper side of the cut is used, `Arg(1 - χ²) = +π`.
pub fn arccos_principal(chi: ComplexScalar) -> PrincipalArccosResult {
    let (e_plus, _) = arccos_exponentials(chi);
    PrincipalArccosResult {
        re_part: arg_unchecked(e_plus),
        im_part: -e_plus.norm().ln(),
    }
}
