//! Exact combinatorics of affine Weyl groups: alcoves, antispherical and
//! periodic Kazhdan–Lusztig polynomials, and block decompositions of
//! dominant weights.

pub mod affine_weyl;
pub mod blocks;
pub mod cache;
pub mod cli;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod periodic;
pub mod root_data;
pub mod svg;
pub mod verify;

pub use affine_weyl::{AffineElement, AffineWeyl, Alcove};
pub use error::{Error, Result};
pub use hecke::Hecke;
pub use laurent::Laurent;
pub use root_data::RootSystem;
