//! Explicit Howe correspondence for the type-II dual pairs `(GL_n, GL_m)`,
//! computed on multisegment data.

pub mod boundary;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod kudla;
pub mod langlands;
pub mod rat;
pub mod segments;
pub mod theta;

pub use error::{Error, Result};
pub use rat::Rat;
pub use segments::{CuspLabel, Multisegment, Point, Segment};
