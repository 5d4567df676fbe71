//! The analysis engine: STPA Step 1 (candidate enumeration, constraint
//! derivation), ASIL computation, STPA Step 2 (causal prompts), whole-model
//! validation, and traceability queries.
//!
//! Every operation is a pure function over an immutable [`SafetyModel`]
//! (`crate::model::SafetyModel`); incomplete or inconsistent analysis surfaces
//! as [`Finding`] data from the validator, while `EngineError` is reserved for
//! misuse of the API itself (unknown ids, out-of-range ratings).

mod asil;
mod candidates;
mod constraint;
mod step2;
mod trace;
mod validate;

use thiserror::Error;

pub use asil::compute_asil;
pub use candidates::{enumerate_candidates, CandidateStatus, UcaCandidate};
pub use constraint::derive_constraint;
pub use step2::{step2_prompts, CausalPrompt};
pub use trace::{reached_ids, trace, TraceNode, TraceTree};
pub use validate::{validate, Finding, FindingCode, Severity};

/// Errors for direct engine calls with bad arguments.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("no entity with id `{0}`")]
    UnknownId(String),
    #[error("`{id}` is a {kind}, not an unsafe control action")]
    NotAUca { id: String, kind: String },
    #[error("rating {rating} outside S0-S3 / E0-E4 / C0-C3")]
    RatingOutOfRange { rating: String },
}
