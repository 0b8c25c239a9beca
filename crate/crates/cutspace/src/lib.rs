//! Description language, report emission, the worked examples and the
//! invariant suites on top of `cutspace-core`.

pub mod checks;
pub mod dsl;
pub mod gallery;
pub mod pool;
pub mod report;
pub mod suites;

pub use report::{Check, Report, Verdict};
