//! Exact arithmetic for truncated p-adic Mal'cev-Neumann series and root finding by
//! Newton polygons.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod ff;
pub mod galois_ring;
pub mod invariants;
pub mod json;
pub mod newton;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
