//! Decision procedures for properties of finite-dimensional ring
//! extensions and bimodules over exact fields.

pub mod algebra;
pub mod catalog;
pub mod deciders;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod linalg;
pub mod modlin;
pub mod oracle;
pub mod radical;
pub mod search;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Field, FieldDesc, Scalar};
