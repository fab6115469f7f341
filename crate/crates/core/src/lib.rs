//! Quasi-cyclic and Construction X linear codes over small finite fields.
//!
//! The crate covers the whole algebraic pipeline used to reconstruct, search
//! for and verify 1-generator quasi-cyclic (QC) codes:
//!
//! - [`galois`]: arithmetic in GF(2), GF(3), GF(4), GF(5), their extension
//!   fields, polynomials over them and the factorization of `x^n - 1`.
//! - [`cyclic`]: cyclotomic cosets, the multiplier partition of cyclic codes
//!   into equivalence classes, and cyclic code structure.
//! - [`linalg`]: generator matrices, duals, exact minimum distance and the
//!   self-orthogonal / dual-containing / LCD / reversible classifiers.
//! - [`qc`]: the ASR generator form, random f-tuple sampling and search.
//! - [`constructx`]: QC sub/supercodes, Construction X and code modifications.
//! - [`codec`]: the compact base-8 / base-9 / literal generator strings.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and multi-threaded drivers live in the `qcforge` crate.
//!
//! ```
//! use qcforge_core::codec::decode_gen;
//! use qcforge_core::galois::Field;
//!
//! let g = decode_gen(Field::GF2, "53").unwrap();
//! assert_eq!(g.coeffs(), &[1, 0, 1, 1, 1]);
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod codec;
pub mod constructx;
pub mod cyclic;
mod error;
pub mod galois;
pub mod linalg;
mod num;
pub mod qc;

pub use error::{Error, Result};
