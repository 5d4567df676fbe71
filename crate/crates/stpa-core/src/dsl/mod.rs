//! The `.stpa` textual notation: lexer, recursive-descent parser, and
//! canonical printer.
//!
//! Parsing never panics on malformed input; it returns every diagnostic it
//! can recover to, sorted by position. Printing emits a canonical form that
//! parses back to an equal model (`parse(&print(m)) == Ok(m)`).

mod lexer;
mod parser;
mod printer;

use std::fmt;

use crate::model::{SafetyModel, SourceSpan};

pub use printer::print;

/// A parse-time problem, anchored to a source location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub span: SourceSpan,
    pub message: String,
    /// What the parser was prepared to accept at that point, when that is
    /// a short useful list (kept separate so callers can format their own
    /// "expected ..." help lines).
    pub expected: Option<String>,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)?;
        if let Some(expected) = &self.expected {
            write!(f, " (expected {expected})")?;
        }
        Ok(())
    }
}

/// Parse `.stpa` source text; the file name is used only in spans.
///
/// Returns the model if the source is well formed, otherwise all recovered
/// diagnostics sorted by (line, column). An empty diagnostics list and a
/// missing model never coincide.
pub fn parse_named(source: &str, file: &str) -> Result<SafetyModel, Vec<ParseDiagnostic>> {
    parser::parse(source, file)
}

/// [`parse_named`] with the placeholder file name `<input>`.
pub fn parse(source: &str) -> Result<SafetyModel, Vec<ParseDiagnostic>> {
    parse_named(source, "<input>")
}
