//! Independent root oracle: Weierstrass (Durand–Kerner) simultaneous
//! iteration, plus exhaustive multiset matching of root lists.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::PolyN;
use crate::ComplexScalar;

pub const MAX_ITERATIONS: usize = 500;
const MAX_RESTARTS: usize = 4;
pub const RESIDUAL_TOL: f64 = 1e-12;

/// All roots of `poly`, each with `|poly(r)| <= 1e-12·poly.residual_scale(r)`.
pub fn oracle_roots(poly: &PolyN) -> Result<Vec<ComplexScalar>> {
    let n = poly.degree();
    if n == 1 {
        return Ok(vec![-poly.coeffs()[0]]);
    }
    for restart in 0..=MAX_RESTARTS {
        let base = seed_base(restart);
        let mut z: Vec<ComplexScalar> = (0..n).map(|k| base.powu(k as u32)).collect();
        if iterate(poly, &mut z) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        restarts: MAX_RESTARTS,
    })
}

fn seed_base(restart: usize) -> ComplexScalar {
    let seed = Complex64::new(0.4, 0.9);
    if restart == 0 {
        seed
    } else {
        let k = restart as f64;
        seed * Complex64::from_polar(1.0 + 0.17 * k, 0.37 * k)
    }
}

fn residuals_ok(poly: &PolyN, z: &[ComplexScalar]) -> bool {
    z.iter()
        .all(|&r| r.is_finite() && poly.eval(r).norm() <= RESIDUAL_TOL * poly.residual_scale(r))
}

/// Runs the iteration in place; `true` once the residual contract holds.
fn iterate(poly: &PolyN, z: &mut [ComplexScalar]) -> bool {
    let n = z.len();
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                max_step = f64::INFINITY;
                continue;
            }
            let step = poly.eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if !max_step.is_finite() && z.iter().any(|r| !r.is_finite()) {
            return false;
        }
        if max_step <= 4.0 * f64::EPSILON {
            return residuals_ok(poly, z);
        }
    }
    residuals_ok(poly, z)
}

/// Minimum over all pairings of the largest distance between paired roots.
///
/// Exhaustive over permutations, so near-coincident roots cannot be
/// mismatched the way a greedy pairing can.
pub fn multiset_distance(a: &[ComplexScalar], b: &[ComplexScalar]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets of different sizes");
    let mut idx: Vec<usize> = (0..b.len()).collect();
    let mut best = f64::INFINITY;
    permute(&mut idx, 0, &mut |perm| {
        let d = a
            .iter()
            .zip(perm)
            .map(|(x, &j)| (x - b[j]).norm())
            .fold(0.0, f64::max);
        best = best.min(d);
    });
    best
}

fn permute(idx: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        visit(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, visit);
        idx.swap(k, i);
    }
}
