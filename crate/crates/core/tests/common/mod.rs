//! Test-side reference computations, written without the library's own
//! algorithms so they can serve as independent oracles.

#![allow(dead_code)]

use acm::{ComplexScalar, CubicPoly, Matrix3};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_c(rng: &mut StdRng, half_width: f64) -> Complex64 {
    c(
        rng.gen_range(-half_width..=half_width),
        rng.gen_range(-half_width..=half_width),
    )
}

pub fn rand_cubic(rng: &mut StdRng, half_width: f64) -> CubicPoly {
    CubicPoly::new(
        rand_c(rng, half_width),
        rand_c(rng, half_width),
        rand_c(rng, half_width),
    )
}

/// det(zI - M) expanded with Faddeev–LeVerrier: c1 = -tr M,
/// c2 = (tr(M)² - tr(M²))/2, c3 = -det M (Leibniz sum over permutations).
pub fn char_poly_reference(m: &Matrix3) -> [ComplexScalar; 3] {
    let e = &m.entries;
    let tr = e[0][0] + e[1][1] + e[2][2];
    let mut tr_sq = c(0.0, 0.0);
    for i in 0..3 {
        for k in 0..3 {
            tr_sq += e[i][k] * e[k][i];
        }
    }
    let perms: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
    ];
    let det: Complex64 = perms
        .iter()
        .map(|(p, s)| e[0][p[0]] * e[1][p[1]] * e[2][p[2]] * *s)
        .sum();
    [-tr, (tr * tr - tr_sq) / 2.0, -det]
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = Matrix3::zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out.entries[i][j] += a.entries[i][k] * b.entries[k][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &Matrix3) -> Matrix3 {
    let mut out = Matrix3::zero();
    for i in 0..3 {
        for j in 0..3 {
            out.entries[i][j] = a.entries[j][i].conj();
        }
    }
    out
}

pub fn max_entry_diff(a: &Matrix3, b: &Matrix3) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            d = d.max((a.entries[i][j] - b.entries[i][j]).norm());
        }
    }
    d
}

/// Smallest over all six pairings of the largest paired distance.
pub fn pairing_distance(a: &[ComplexScalar; 3], b: &[ComplexScalar; 3]) -> f64 {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS
        .iter()
        .map(|p| (0..3).map(|i| (a[i] - b[p[i]]).norm()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

pub fn max_coeff_diff(a: &[ComplexScalar; 3], b: &[ComplexScalar; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn coeffs(p: &CubicPoly) -> [ComplexScalar; 3] {
    [p.c1, p.c2, p.c3]
}
