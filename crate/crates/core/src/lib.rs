//! Almost-companion matrices (ACMs) for monic cubics.
//!
//! An ACM of `z³ + c1·z² + c2·z + c3` is a 3×3 matrix with that characteristic
//! polynomial whose entries are built from the principal branch of
//! `Arccos χ`. The crate constructs such matrices, reads the roots off their
//! trigonometric structure, synthesizes qutrit density matrices as Hermitian
//! ACMs and decides which cubics admit a unitary ACM.

pub mod acm;
pub mod branch;
pub mod cli;
pub mod density;
pub mod error;
pub mod json;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod roots;
pub mod unitary;

pub type ComplexScalar = num_complex::Complex64;

pub use acm::{acm_canonical, acm_general, acm_hermitian, acm_p_zero, acm_params, chi_of};
pub use branch::{arccos_principal, principal_arg, principal_cbrt, principal_sqrt};
pub use density::{density_acm, density_poly, is_admissible, validate_density, DensityPolySpec};
pub use error::{Error, Result};
pub use matrix::{char_poly_3, frobenius_companion, is_hermitian, is_unitary, Matrix3, SquareMatrix};
pub use oracle::{multiset_distance, oracle_roots};
pub use poly::{depress, CanonicalCubic, CubicPoly, PolyN};
pub use roots::{classify, real_roots_of_complex_cubic, roots_canonical, roots_general, roots_real};
pub use unitary::{build_unitary_acm, build_unitary_poly, recognize_unitary, theorem3_check, UnitaryParams};
