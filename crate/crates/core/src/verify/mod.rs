//! Seeded verification suites and their reports.
//!
//! Every suite draws its random points from [`SplitMix64`] seeded with the
//! configured seed, evaluates its rows in parallel and sorts them by
//! (identity, params), so a given configuration always yields the same report.

mod report;
mod rng;
mod suites;

pub use report::{Format, Row, Summary, VerifyReport};
pub use rng::SplitMix64;
pub use suites::{run_suite, thread_pool, Suite, VerifyConfig, THREADS_ENV};
