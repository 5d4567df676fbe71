//! Deterministic report emitters: canonical JSON, a reviewable Markdown
//! report, and the CSV UCA matrix.
//!
//! All three emitters are pure functions of a [`ReportBundle`] and emit
//! byte-identical output for identical input. Source spans never appear in
//! reports: they depend on where the input file lived, which would break
//! byte-level reproducibility across invocations.

mod json;
mod markdown;
mod matrix;

use crate::engine::{enumerate_candidates, derive_constraint, validate, Finding, UcaCandidate};
use crate::model::{ControlLoop, SafetyConstraint, SafetyModel};

pub use json::emit_json;
pub use markdown::emit_markdown;
pub use matrix::emit_csv_matrix;

/// A model together with every engine output the emitters need, computed
/// once so that all three reports describe the same analysis state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportBundle {
    pub model: SafetyModel,
    pub loops: Vec<ControlLoop>,
    pub candidates: Vec<UcaCandidate>,
    pub findings: Vec<Finding>,
    /// One derived constraint per UCA in declaration order; UCAs whose
    /// action reference dangles are skipped (the findings list carries the
    /// E001 for them).
    pub derived_constraints: Vec<SafetyConstraint>,
}

impl ReportBundle {
    pub fn from_model(model: SafetyModel) -> Self {
        let loops = model.control_loops();
        let candidates = enumerate_candidates(&model);
        let findings = validate(&model);
        let derived_constraints = model
            .ucas
            .iter()
            .filter_map(|u| derive_constraint(&model, &u.id).ok())
            .collect();
        Self {
            model,
            loops,
            candidates,
            findings,
            derived_constraints,
        }
    }

    /// The derived constraint for one UCA, if derivable.
    pub fn derived_for(&self, uca_id: &str) -> Option<&SafetyConstraint> {
        self.derived_constraints.iter().find(|c| c.source == uca_id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn bundle_collects_all_engine_outputs() {
        let model = parse(
            "model \"m\"\n\
             accident A1 \"x\"\nhazard H1 \"y\" -> A1\n\
             component C kind controller \"c\"\ncomponent P kind controlled_process \"p\"\n\
             action CA1 C -> P \"a step\"\n\
             uca UCA1 on CA1 category provided context \"ctx\" hazards H1",
        )
        .unwrap();
        let bundle = ReportBundle::from_model(model);
        assert_eq!(bundle.loops.len(), 1);
        assert_eq!(bundle.candidates.len(), 4);
        assert_eq!(bundle.derived_constraints.len(), 1);
        assert_eq!(bundle.derived_for("UCA1").unwrap().id, "SC1");
        assert!(!bundle.findings.is_empty());
    }
}
