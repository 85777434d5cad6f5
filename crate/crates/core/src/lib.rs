//! Exact arithmetic for Hilbert modular groups over real quadratic fields
//! and their images in the orthogonal groups of signature (2,2).

#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod arith;
pub mod error;
pub mod ideals;
pub mod isomap;
pub mod modgroup;
pub mod ortho4;
pub mod quadfield;
pub mod verify;

pub use error::{Error, Result};
pub use quadfield::{FieldCtx, QuadElem};
