//! Monotone side: gap amplification through perfect hash families, and the
//! depth-2 (Hitting Set) and weft-1 (Multicolored Clique) encodings used as
//! starting points.

mod amplify;
mod encodings;

pub use amplify::{amplify, verify_gap_monotone, AmplifyOptions, Amplified};
pub use encodings::{hitting_set_to_circuit, multicolored_clique_to_circuit, SetSystem};
