//! STAMP/STPA safety analysis as a library.
//!
//! The crate models a safety analysis the STPA way: accidents, hazards, and
//! constraints linked to a control structure of controllers, actuators,
//! sensors, and controlled processes. On top of that model it provides
//!
//! - a textual `.stpa` notation ([`dsl`]) with span-carrying diagnostics and
//!   a canonical printer,
//! - the analysis engine ([`engine`]): Step 1 candidate enumeration,
//!   constraint derivation, ISO 26262 ASIL computation, Step 2 causal
//!   prompts, traceability queries, and a validator with a stable finding
//!   catalog (E001-E007, W001-W006),
//! - deterministic report emitters ([`report`]): JSON, Markdown, CSV,
//! - the bundled cooperative-driving reference corpus ([`corpus`]).
//!
//! Models are immutable after construction and all operations are pure, so
//! everything here is safe to call concurrently.
//!
//! ```
//! use stpa_core::{corpus, engine};
//!
//! let model = corpus::load_corpus();
//! let constraint = engine::derive_constraint(&model, "UCA1").unwrap();
//! assert!(constraint.text.contains("must provide a reference vehicle"));
//! ```

pub mod corpus;
pub mod dsl;
pub mod engine;
pub mod model;
pub mod report;

pub use dsl::{parse, parse_named, print, ParseDiagnostic};
pub use engine::{
    compute_asil, derive_constraint, enumerate_candidates, step2_prompts, trace, validate,
    CandidateStatus, CausalPrompt, EngineError, Finding, FindingCode, Severity, TraceNode,
    TraceTree, UcaCandidate,
};
pub use model::{Asil, Rating, SafetyModel, SourceSpan};
pub use report::{emit_csv_matrix, emit_json, emit_markdown, ReportBundle};
