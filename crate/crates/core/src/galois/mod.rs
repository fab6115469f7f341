//! Finite-field and polynomial arithmetic.

mod ext;
mod factor;
mod field;
mod poly;

pub use ext::{minimal_poly, primitive_root_of_unity, ExtElem, ExtField, RootOfUnity};
pub use factor::{factor_divisor, factor_xn_minus_1, Factor};
pub use field::Field;
pub use poly::Poly;

use crate::Result;

/// `a * b mod (x^m - 1)`.
pub fn poly_mul_mod(a: &Poly, b: &Poly, m: usize) -> Result<Poly> {
    a.mul_mod(b, m)
}

/// Monic gcd of two polynomials, not both zero.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    Poly::gcd(a, b)
}
