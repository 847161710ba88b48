//! Exact dense linear algebra over prime fields.
//!
//! Every category-level question the workbench asks (is this map an E-monic,
//! does this map factor through a projective, is this sequence split) is
//! eventually a rank computation here.

mod field;
mod matrix;

pub use field::Field;
pub use matrix::{Matrix, Rref};
