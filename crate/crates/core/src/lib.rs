//! Exact word algebra over free groups, small-cancellation checks for the
//! `(a^M x^M)^N` relator families, scaled direct sums of cyclic groups, a
//! word-problem solver for the associated central extensions, and van Kampen
//! diagram surgery.

pub mod cli;
pub mod error;
pub mod families;
pub mod presentation;
pub mod report;
pub mod scalednorm;
pub mod vkd;
pub mod words;

pub use error::{Error, Result};
