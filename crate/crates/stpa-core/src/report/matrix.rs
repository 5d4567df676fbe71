//! The UCA matrix as CSV: one row per control action, one column per guide
//! category.
//!
//! RFC 4180 output with LF line endings. Fields are quoted only when they
//! contain a comma, a double quote, or a line break; embedded quotes are
//! doubled. Status cells are drawn from a closed vocabulary (`safe`,
//! `unsafe(<ids ;-joined>)`, `unassessed`) and never need quoting.

use crate::engine::CandidateStatus;
use crate::model::UCA_CLASS_ORDER;

use super::ReportBundle;

fn field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') || text.contains('\r') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn status_cell(status: &CandidateStatus) -> String {
    match status {
        CandidateStatus::Unassessed => "unassessed".to_string(),
        CandidateStatus::Safe => "safe".to_string(),
        CandidateStatus::Unsafe(ids) => format!("unsafe({})", ids.join(";")),
    }
}

/// Emit the matrix; always |actions| + 1 lines.
pub fn emit_csv_matrix(bundle: &ReportBundle) -> String {
    let mut out =
        String::from("action_id,action_label,provided,not_provided,wrong_timing,wrong_duration\n");
    for action in &bundle.model.actions {
        let mut row = vec![field(&action.id), field(&action.label)];
        for class in UCA_CLASS_ORDER {
            let status = bundle
                .candidates
                .iter()
                .find(|c| c.action == action.id && c.category == class)
                .map(|c| status_cell(&c.status))
                .unwrap_or_else(|| "unassessed".to_string());
            row.push(status);
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
