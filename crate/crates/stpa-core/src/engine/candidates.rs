//! STPA Step 1 scaffolding: every control action crossed with the four guide
//! categories, with each cell's assessment status read off the model.

use crate::model::{SafetyModel, UcaClass, UCA_CLASS_ORDER};

/// Assessment status of one (action, category) cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateStatus {
    Unassessed,
    /// A safe assessment covers the cell.
    Safe,
    /// Ids of the UCAs recorded for the cell, in declaration order.
    Unsafe(Vec<String>),
}

/// One cell of the Step 1 matrix. The category is a bare class: qualifiers
/// refine an identified UCA, not the enumeration grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UcaCandidate {
    pub action: String,
    pub category: UcaClass,
    pub status: CandidateStatus,
}

/// Enumerate all 4 × |actions| candidates, ordered by action declaration
/// order then by the canonical category order.
///
/// A cell with recorded UCAs is `Unsafe` even if a conflicting safe
/// assessment also exists; the conflict itself is reported by the validator
/// as E006.
pub fn enumerate_candidates(model: &SafetyModel) -> Vec<UcaCandidate> {
    let mut candidates = Vec::with_capacity(model.actions.len() * UCA_CLASS_ORDER.len());
    for action in &model.actions {
        for &category in &UCA_CLASS_ORDER {
            let ucas: Vec<String> = model
                .ucas
                .iter()
                .filter(|u| u.action == action.id && u.category.class == category)
                .map(|u| u.id.clone())
                .collect();
            let status = if !ucas.is_empty() {
                CandidateStatus::Unsafe(ucas)
            } else if model
                .safe_assessments
                .iter()
                .any(|s| s.action == action.id && s.category == category)
            {
                CandidateStatus::Safe
            } else {
                CandidateStatus::Unassessed
            };
            candidates.push(UcaCandidate {
                action: action.id.clone(),
                category,
                status,
            });
        }
    }
    candidates
}
