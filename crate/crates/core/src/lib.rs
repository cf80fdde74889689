//! Finite-scale computations with locale presentations, finite group actions,
//! Galois objects and their closures.

// Index loops over several parallel tables read better than zipped iterators.
#![allow(clippy::needless_range_loop)]

pub mod bitset;
pub mod category;
pub mod enrichment;
pub mod error;
pub mod galois;
pub mod group;
pub mod gset;
pub mod locale;
pub mod order;
pub mod prodiscrete;
pub mod report;
pub mod sample;
pub mod wraith;

pub use bitset::GenSet;
pub use error::{Error, Result};
pub use report::{Check, Report, Verdict};
