//! Reproducible experiment plumbing: seeded streams, output formats, the invariant suite
//! and the command line.

pub mod cli;
pub mod output;
pub mod rng;
pub mod verify;

pub use output::{fmt_g, fmt_g12, RunSummary};
pub use rng::SeededRng;
pub use verify::{run_verify, CheckOutcome, Level, VerifyReport};
