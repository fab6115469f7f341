//! Record files, multi-threaded drivers and verification for
//! [`qcforge_core`].
//!
//! - [`records`]: the line-delimited record format and the append-only ledger.
//! - [`engine`]: a [`DistanceEngine`](qcforge_core::linalg::DistanceEngine)
//!   that shards codeword enumeration over a rayon pool.
//! - [`search`]: the ASR search fanned out over `(m, class, l)` units.
//! - [`verify`]: rebuilds recorded codes and checks their parameters.
//! - [`config`]: `key = value` search configuration files.
//! - [`corpus`]: the shipped record files.

pub use qcforge_core as core;

pub mod config;
pub mod corpus;
pub mod engine;
pub mod records;
pub mod search;
pub mod verify;
