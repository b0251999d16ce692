#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN takes the error path
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod decomp;
pub mod gl2;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod math;
pub mod ode;
pub mod operator;
pub mod roots;
pub mod spd;
pub mod spherical;

pub use error::{Error, Result};
