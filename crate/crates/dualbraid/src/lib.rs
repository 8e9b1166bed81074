//! Catalog loading, exports, verification reports and the command line
//! for `dualbraid-core`.

pub mod catalog;
pub mod cli;
pub mod export;
pub mod report;
