//! Exact-arithmetic machinery for the topological route to the
//! Muller–Satterthwaite and Gibbard–Satterthwaite theorems.
//!
//! The crate is split into four layers:
//!
//! * [`choice`]: linear orders, profiles, social choice functions and
//!   exhaustive checkers for monotonicity, unanimity, strategy-proofness,
//!   surjectivity and dictatorship.
//! * [`homology`]: simplicial complexes, nerves of covers, sparse integer
//!   matrices, Smith normal form and integral homology with explicit cycle
//!   bases and induced maps.
//! * [`pipeline`]: the preference covers and their nerves, the simplicial map
//!   induced by a monotonic and unanimous rule, the orientation cycles
//!   `h(g)`, and the homology pairing that reads off a dictator.
//! * [`report`]: the JSON report schema and the verification suites driven by
//!   the `gstopo` binary.
//!
//! All arithmetic on chains and matrices is over arbitrary-precision
//! integers; nothing in the crate touches floating point.

pub mod choice;
pub mod error;
pub mod homology;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};
