//! Relative homological algebra over finite-dimensional algebras on prime fields.

pub mod algebra;
pub mod audit;
pub mod error;
pub mod exactla;
pub mod hocolim;
pub mod io;
pub mod modcat;
pub mod relclass;
pub mod stable;

pub use error::{Error, Result};
