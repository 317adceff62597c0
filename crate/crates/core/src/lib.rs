//! Simulator for a two-register amplitude-amplification search over SHA-1
//! disturbance-vector candidates.
//!
//! The machine holds a control register addressing candidate vectors and a
//! work register carrying their validation data. A run has three stages:
//!
//! 1. an entangling stage that repeatedly pairs a diagonal phase flip with an
//!    inversion about the mean, concentrating probability on the paired
//!    `|c, c>` basis states;
//! 2. one reversible oracle query that rewrites each work value to the
//!    candidate's validation result (zero marks a collision-inducing vector);
//! 3. a search stage that alternates a work-zero phase flip with a reflection
//!    about the post-oracle state, amplifying the marked candidates.
//!
//! The statevector engine is matrix-free; [`dense`] builds the explicit
//! matrices for small registers so every kernel can be cross-checked against
//! a second route. The classical side ([`dv`], [`table`], [`oracle`]) covers
//! the disturbance-vector expansion rule, candidate bit templates, the
//! type-I starting-point table, and pluggable validity oracles.
//!
//! With the `parallel` feature (default) the amplitude sweeps run on rayon.
//! All reductions use a fixed binary combination tree, so results are
//! bitwise identical no matter how the work is partitioned.

pub mod dense;
pub mod driver;
pub mod dv;
mod error;
pub mod gates;
pub mod layout;
pub mod oracle;
pub mod reduce;
pub mod state;
pub mod table;

pub use driver::{
    classify, default_iterations, prepare_entangled, run_search, sample_measurements,
    two_level_probability, verify_complexity, ClassTotals, ComplexityReport, IterationTrace,
    QueryLedger, RunConfig, SearchOutcome, TraceDetail, TracePhase, TraceRecord,
};
pub use dv::{expand_backward, CandidateEncoding, DisturbanceVector, DvSeed, HammingWeight};
pub use error::{Error, Result};
pub use gates::GateKind;
pub use layout::{RegisterLayout, DEFAULT_MAX_TOTAL_QUBITS};
pub use oracle::{OracleSpec, ValidityOracle};
pub use state::StateVector;
pub use table::{type_i_table, TypeITable};
