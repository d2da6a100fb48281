#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl, clippy::needless_range_loop)]

pub mod bounds;
pub mod charsums;
pub mod cover;
pub mod cyclic;
pub mod error;
pub mod gf2;
pub mod lfsr;
pub mod matrix;
pub mod radius;
pub mod suites;
pub mod table;

pub use error::{Error, Result};
