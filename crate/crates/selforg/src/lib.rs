//! Self-organizing linear lists and the cost of accessing them.
//!
//! A linear list holds `l` distinct elements; serving a request for the
//! element at position `i` costs `i` (full cost model) or `i - 1` (partial
//! cost model), after which the list may rearrange itself. This crate
//! implements the three classic memory-free rearrangement rules —
//! move-to-front, transpose, and frequency count — together with:
//!
//! * [`list`] — list state, cost models, and an exact step-by-step
//!   simulator ([`serve`]) that records every access.
//! * [`taxonomy`] — a classification of request sequences by length,
//!   coverage, and frequency structure, plus generators and exhaustive
//!   enumeration for each class.
//! * [`predict`] — closed-form cost formulas and bounds for move-to-front
//!   on structured sequences, and a verifier that checks any prediction
//!   against the simulator.
//!
//! The crate is `no_std` (it allocates, so `alloc` is required). Anything
//! involving files, terminals, or command-line parsing lives in the
//! companion `selforg-cli` crate.

#![no_std]

extern crate alloc;

pub mod list;
pub mod predict;
pub mod taxonomy;

pub use list::{
    serve, AccessStep, AccessTrace, Algorithm, CostModel, CountTable, ElementId, ListState,
    RequestSequence,
};
pub use predict::{CostPrediction, Prediction, Source, Status, VerificationReport};
pub use taxonomy::{classify, Class, Group, SequenceClass, TypeTag};
