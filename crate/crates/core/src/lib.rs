//! Gap-amplifying reductions for weighted circuit satisfiability.
//!
//! The crate builds two families of reductions and the brute-force machinery
//! needed to check them on small instances:
//!
//! * monotone circuits are amplified through a perfect hash family so that a
//!   weight-`k` instance either stays weight-`k` satisfiable or loses every
//!   satisfying assignment of weight up to `k'` ([`monotone`]);
//! * `k`-clique is reduced to Threshold Set through a Reed-Solomon code, so
//!   that the optimum is either `D` or below `k` ([`threshold`]).
//!
//! Exhaustive searches run on rayon when the `parallel` feature is enabled
//! (the default). Results never depend on the thread count: every search
//! returns the lexicographically first witness.

pub mod circuit;
pub mod combinatorics;
mod error;
pub mod exec;
pub mod gf;
pub mod graph;
pub mod hash_family;
pub mod monotone;
pub mod ratio;
pub mod report;
pub mod rs;
mod text;
pub mod threshold;

pub use circuit::{Assignment, Circuit, CircuitBuilder, CircuitClass, CircuitMetrics, GateKind, GateStyle};
pub use error::{Error, ParseError, Result};
pub use exec::{Parallelism, SolveOptions, DEFAULT_BUDGET};
pub use gf::{FieldElement, FieldSpec};
pub use graph::ColoredGraph;
pub use hash_family::HashFamily;
pub use ratio::RatioSpec;
pub use report::GapReport;
pub use rs::ReedSolomon;
pub use threshold::{ThresholdSetInstance, WeightedSet};
