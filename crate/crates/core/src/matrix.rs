//! Small dense complex matrices.
//!
//! Tolerance checks use the maximum entrywise modulus.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::poly::{CubicPoly, PolyN};
use crate::ComplexScalar;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// 3×3 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix3 {
    pub entries: [[ComplexScalar; 3]; 3],
}

impl Matrix3 {
    pub const fn new(entries: [[ComplexScalar; 3]; 3]) -> Self {
        Self { entries }
    }

    pub const fn zero() -> Self {
        Self::new([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diag([ONE; 3])
    }

    pub fn diag(d: [ComplexScalar; 3]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.entries[i][i] = v;
        }
        m
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        Self::new(rows.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn trace(&self) -> ComplexScalar {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    pub fn det(&self) -> ComplexScalar {
        let m = &self.entries;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self::new(self.entries.map(|r| r.map(|x| x * s)))
    }

    /// Inverse via the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == ZERO {
            return None;
        }
        let m = &self.entries;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Some(Self::new(adj).scale(det.inv()))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for Matrix3 {
    type Output = ComplexScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        &mut self.entries[i][j]
    }
}

impl Add for Matrix3 {
    type Output = Matrix3;
    fn add(mut self, rhs: Matrix3) -> Matrix3 {
        for i in 0..3 {
            for j in 0..3 {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl Sub for Matrix3 {
    type Output = Matrix3;
    fn sub(self, rhs: Matrix3) -> Matrix3 {
        self + (-rhs)
    }
}

impl Neg for Matrix3 {
    type Output = Matrix3;
    fn neg(self) -> Matrix3 {
        Matrix3::new(self.entries.map(|r| r.map(|x| -x)))
    }
}

impl Mul for Matrix3 {
    type Output = Matrix3;
    fn mul(self, rhs: Matrix3) -> Matrix3 {
        let mut out = Matrix3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = (0..3).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        out
    }
}

/// Square complex matrix of arbitrary order, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    data: Vec<ComplexScalar>,
}

impl SquareMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![ZERO; order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        self.data[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ComplexScalar) {
        self.data[i * self.order + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ComplexScalar]> {
        self.data.chunks(self.order)
    }

    pub fn to_matrix3(&self) -> Option<Matrix3> {
        if self.order != 3 {
            return None;
        }
        let mut m = Matrix3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.entries[i][j] = self.get(i, j);
            }
        }
        Some(m)
    }
}

/// Characteristic polynomial `det(zI - m)` by cofactor expansion:
/// `c1 = -tr m`, `c2` is the sum of the principal 2×2 minors and `c3 = -det m`.
pub fn char_poly_3(m: &Matrix3) -> CubicPoly {
    let e = &m.entries;
    let minors = (e[0][0] * e[1][1] - e[0][1] * e[1][0])
        + (e[0][0] * e[2][2] - e[0][2] * e[2][0])
        + (e[1][1] * e[2][2] - e[1][2] * e[2][1]);
    CubicPoly {
        c1: -m.trace(),
        c2: minors,
        c3: -m.det(),
    }
}

/// Frobenius companion matrix: ones on the subdiagonal and the negated
/// coefficients in the last column, constant term at the top.
pub fn frobenius_companion(poly: &PolyN) -> SquareMatrix {
    let n = poly.degree();
    let coeffs = poly.coeffs();
    let mut m = SquareMatrix::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, ONE);
    }
    for i in 0..n {
        m.set(i, n - 1, -coeffs[n - 1 - i]);
    }
    m
}

/// `max |m - m†| <= tol`.
pub fn is_hermitian(m: &Matrix3, tol: f64) -> bool {
    hermitian_deviation(m) <= tol
}

pub fn hermitian_deviation(m: &Matrix3) -> f64 {
    (*m - m.adjoint()).max_abs()
}

/// `max |m·m† - I| <= tol`.
pub fn is_unitary(m: &Matrix3, tol: f64) -> bool {
    unitary_deviation(m) <= tol
}

pub fn unitary_deviation(m: &Matrix3) -> f64 {
    (*m * m.adjoint() - Matrix3::identity()).max_abs()
}
