//! Monic polynomials over the complex field.
//!
//! Coefficients are always stored highest-to-lowest after the implicit
//! leading one: `z³ + c1·z² + c2·z + c3` is `CubicPoly { c1, c2, c3 }`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ComplexScalar;

/// Monic cubic `z³ + c1·z² + c2·z + c3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicPoly {
    pub c1: ComplexScalar,
    pub c2: ComplexScalar,
    pub c3: ComplexScalar,
}

impl CubicPoly {
    pub fn new(c1: ComplexScalar, c2: ComplexScalar, c3: ComplexScalar) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn real(c1: f64, c2: f64, c3: f64) -> Self {
        Self::new(c1.into(), c2.into(), c3.into())
    }

    /// Expands `(z - r0)(z - r1)(z - r2)`.
    pub fn from_roots(roots: [ComplexScalar; 3]) -> Self {
        let [a, b, c] = roots;
        Self {
            c1: -(a + b + c),
            c2: a * b + b * c + a * c,
            c3: -(a * b * c),
        }
    }

    pub fn coeffs(&self) -> [ComplexScalar; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn is_real(&self) -> bool {
        self.coeffs().iter().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, z: ComplexScalar) -> ComplexScalar {
        ((z + self.c1) * z + self.c2) * z + self.c3
    }

    /// Sum of the moduli of the terms of `p(z)`; the natural scale for a
    /// residual `|p(z)|` in floating point.
    pub fn term_scale(&self, z: ComplexScalar) -> f64 {
        let r = z.norm();
        r.powi(3) + self.c1.norm() * r * r + self.c2.norm() * r + self.c3.norm()
    }

    /// [`Self::term_scale`] evaluated at `max(1, |z|)`, so that a residual test
    /// stays meaningful for roots at or near zero.
    pub fn residual_scale(&self, z: ComplexScalar) -> f64 {
        self.term_scale(Complex64::new(z.norm().max(1.0), 0.0))
    }

    pub fn to_poly_n(&self) -> PolyN {
        PolyN {
            coeffs: self.coeffs().to_vec(),
        }
    }
}

/// Depressed cubic `η³ + p·η + q` together with the shift `c1/3` that
/// produced it (`η = z + shift`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalCubic {
    pub p: ComplexScalar,
    pub q: ComplexScalar,
    pub shift: ComplexScalar,
}

impl CanonicalCubic {
    /// Undoes the translation and returns the originating monic cubic.
    pub fn to_cubic(&self) -> CubicPoly {
        let c1 = self.shift * 3.0;
        let c2 = self.p + c1 * c1 / 3.0;
        let c3 = self.q - c1 * c1 * c1 * 2.0 / 27.0 + c1 * c2 / 3.0;
        CubicPoly { c1, c2, c3 }
    }

    pub fn eval(&self, eta: ComplexScalar) -> ComplexScalar {
        (eta * eta + self.p) * eta + self.q
    }
}

/// Translates `z = η - c1/3`, removing the quadratic term.
pub fn depress(poly: &CubicPoly) -> CanonicalCubic {
    let CubicPoly { c1, c2, c3 } = *poly;
    let p = c2 - c1 * c1 / 3.0;
    let q = c1 * c1 * c1 * 2.0 / 27.0 - c1 * c2 / 3.0 + c3;
    CanonicalCubic {
        p,
        q,
        shift: c1 / 3.0,
    }
}

/// Monic polynomial of arbitrary degree, `z^n + c1·z^(n-1) + … + cn`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyN {
    coeffs: Vec<ComplexScalar>,
}

impl PolyN {
    pub fn new(coeffs: Vec<ComplexScalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ComplexScalar] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: ComplexScalar) -> ComplexScalar {
        self.coeffs
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn term_scale(&self, z: ComplexScalar) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .fold(1.0, |acc, c| acc * r + c.norm())
    }

    pub fn residual_scale(&self, z: ComplexScalar) -> f64 {
        self.term_scale(Complex64::new(z.norm().max(1.0), 0.0))
    }

    pub fn as_cubic(&self) -> Option<CubicPoly> {
        match self.coeffs[..] {
            [c1, c2, c3] => Some(CubicPoly { c1, c2, c3 }),
            _ => None,
        }
    }
}

impl From<CubicPoly> for PolyN {
    fn from(p: CubicPoly) -> Self {
        p.to_poly_n()
    }
}
