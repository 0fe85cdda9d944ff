//! Sublinear-space LZ77 building blocks over packed small-alphabet texts.
//!
//! Positions are 1-based. Range arguments `(b, e)` denote the half-open
//! interval (b..e].

pub mod bitpack;
pub mod container;
pub mod dyn_rmq;
pub mod error;
pub mod lpf;
pub mod lz77;
pub mod minocc;
pub mod prefix_rmq;
pub mod range_count;
pub mod rmq;
pub mod sync_set;
pub mod text;
pub mod tsrmq;

pub use error::{Error, Result};
