//! Human-readable Markdown report with a fixed six-section layout.

use std::fmt::Write;

use crate::engine::CandidateStatus;
use crate::model::{UcaCategory, UCA_CLASS_ORDER};

use super::ReportBundle;

const PLACEHOLDER: &str = "none recorded";

/// Escape a model string for use inside a Markdown table cell.
fn cell(text: &str) -> String {
    text.replace('|', "\\|")
}

fn category_text(category: &UcaCategory) -> String {
    match category.qualifier {
        Some(q) => format!("{} ({})", category.class, q),
        None => category.class.to_string(),
    }
}

/// Render the six-section report. Sections appear in fixed order and empty
/// sections carry the literal placeholder, so diffs stay meaningful.
pub fn emit_markdown(bundle: &ReportBundle) -> String {
    let model = &bundle.model;
    let mut out = String::new();
    let _ = writeln!(out, "# STPA Report: {}", model.name);

    // 1: accidents paired with their hazards, mirroring a definitions table.
    out.push_str("\n## 1. Accidents & Hazards\n\n");
    if model.accidents.is_empty() && model.hazards.is_empty() {
        out.push_str(PLACEHOLDER);
        out.push('\n');
    } else {
        out.push_str("| Accident | Hazard |\n| --- | --- |\n");
        let mut listed: Vec<&str> = Vec::new();
        for accident in &model.accidents {
            let mut first = true;
            for hazard in model
                .hazards
                .iter()
                .filter(|h| h.accidents.iter().any(|a| a == &accident.id))
            {
                let accident_cell = if first {
                    format!("{}: {}", accident.id, cell(&accident.description))
                } else {
                    String::new()
                };
                let _ = writeln!(
                    out,
                    "| {} | {}: {} |",
                    accident_cell,
                    hazard.id,
                    cell(&hazard.description)
                );
                listed.push(&hazard.id);
                first = false;
            }
            if first {
                let _ = writeln!(
                    out,
                    "| {}: {} |  |",
                    accident.id,
                    cell(&accident.description)
                );
            }
        }
        // Hazards that link to no listed accident still must appear.
        for hazard in model
            .hazards
            .iter()
            .filter(|h| !listed.contains(&h.id.as_str()))
        {
            let _ = writeln!(out, "|  | {}: {} |", hazard.id, cell(&hazard.description));
        }
    }

    // 2: the control structure and its derived loops.
    out.push_str("\n## 2. Control Structure & Loops\n\n");
    if model.components.is_empty() {
        out.push_str(PLACEHOLDER);
        out.push('\n');
    } else {
        out.push_str("Components:\n\n");
        for component in &model.components {
            let _ = writeln!(
                out,
                "- {} ({}): {}",
                component.id, component.kind, component.label
            );
        }
        out.push_str("\nControl loops:\n\n");
        if bundle.loops.is_empty() {
            out.push_str(PLACEHOLDER);
            out.push('\n');
        } else {
            for (i, l) in bundle.loops.iter().enumerate() {
                let feedbacks = if l.feedbacks.is_empty() {
                    "no feedback".to_string()
                } else {
                    format!("feedback {}", l.feedbacks.join(", "))
                };
                let _ = writeln!(
                    out,
                    "{}. {} -> {}: actions {}; {}",
                    i + 1,
                    l.controller,
                    l.controlled,
                    l.actions.join(", "),
                    feedbacks
                );
            }
        }
    }

    // 3: assessment coverage of the actions-by-categories grid.
    out.push_str("\n## 3. UCA Matrix Summary\n\n");
    if bundle.candidates.is_empty() {
        out.push_str(PLACEHOLDER);
        out.push('\n');
    } else {
        out.push_str("| Category | Unsafe | Safe | Unassessed |\n| --- | --- | --- | --- |\n");
        let mut totals = (0usize, 0usize, 0usize);
        for class in UCA_CLASS_ORDER {
            let mut row = (0usize, 0usize, 0usize);
            for candidate in bundle.candidates.iter().filter(|c| c.category == class) {
                match candidate.status {
                    CandidateStatus::Unsafe(_) => row.0 += 1,
                    CandidateStatus::Safe => row.1 += 1,
                    CandidateStatus::Unassessed => row.2 += 1,
                }
            }
            let _ = writeln!(out, "| {class} | {} | {} | {} |", row.0, row.1, row.2);
            totals.0 += row.0;
            totals.1 += row.1;
            totals.2 += row.2;
        }
        let _ = writeln!(
            out,
            "\n{} actions, {} cells: {} unsafe, {} safe, {} unassessed.",
            model.actions.len(),
            bundle.candidates.len(),
            totals.0,
            totals.1,
            totals.2
        );
    }

    // 4: each UCA with its rating, ASIL, and derived constraint.
    out.push_str("\n## 4. Unsafe Control Actions\n\n");
    if model.ucas.is_empty() {
        out.push_str(PLACEHOLDER);
        out.push('\n');
    } else {
        for (i, uca) in model.ucas.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "### {} ({})", uca.id, category_text(&uca.category));
            out.push('\n');
            match model.action(&uca.action) {
                Some(action) => {
                    let _ = writeln!(
                        out,
                        "- Action: {} ({}), issued by {}",
                        action.id,
                        action.label,
                        model.component_label(&action.source)
                    );
                }
                None => {
                    let _ = writeln!(out, "- Action: {} (unresolved)", uca.action);
                }
            }
            let _ = writeln!(out, "- Context: {}", uca.context);
            let _ = writeln!(out, "- Hazards: {}", uca.hazards.join(", "));
            match uca.rating {
                Some(rating) => {
                    let asil = bundle
                        .derived_for(&uca.id)
                        .and_then(|c| c.asil)
                        .map(|a| format!("ASIL {a}"))
                        .unwrap_or_else(|| "invalid rating".to_string());
                    let _ = writeln!(out, "- Rating: {rating} ({asil})");
                }
                None => {
                    let _ = writeln!(out, "- Rating: {PLACEHOLDER}");
                }
            }
            match bundle.derived_for(&uca.id) {
                Some(constraint) => {
                    let _ = writeln!(out, "- Constraint: {}: {}", constraint.id, constraint.text);
                }
                None => {
                    let _ = writeln!(out, "- Constraint: {PLACEHOLDER}");
                }
            }
        }
    }

    // 5: Step 2 results as declared in the model.
    out.push_str("\n## 5. Causal Factors & Scenarios\n\n");
    if model.causal_factors.is_empty() && model.scenarios.is_empty() {
        out.push_str(PLACEHOLDER);
        out.push('\n');
    } else {
        for factor in &model.causal_factors {
            let _ = writeln!(
                out,
                "- {} ({}) on {}: {}",
                factor.id, factor.element, factor.uca, factor.description
            );
        }
        if !model.scenarios.is_empty() {
            out.push_str("\nScenarios:\n\n");
            for scenario in &model.scenarios {
                let _ = writeln!(
                    out,
                    "- {} on {} requires {}: {}",
                    scenario.id,
                    scenario.uca,
                    scenario.factors.join(", "),
                    scenario.description
                );
            }
        }
    }

    // 6: the validator's completeness and consistency picture.
    out.push_str("\n## 6. Findings\n\n");
    if bundle.findings.is_empty() {
        out.push_str(PLACEHOLDER);
        out.push('\n');
    } else {
        out.push_str("| Code | Severity | Subject | Message |\n| --- | --- | --- | --- |\n");
        for finding in &bundle.findings {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                finding.code,
                finding.severity,
                cell(&finding.subject),
                cell(&finding.message)
            );
        }
    }
    out
}
