//! Canonical printer: the inverse of the parser up to formatting.
//!
//! Output is stable for golden tests: declarations keep model order, grouped
//! by kind with one blank line between groups, and block declarations (`uca`,
//! `safe`, `scenario`) use two-space-indented clause lines. Printing then
//! parsing yields a model equal to the input, provided the model is
//! expressible in the grammar (ratings are single digits there; larger
//! programmatic values would not re-parse).

use std::fmt::Write;

use crate::model::{SafetyModel, UcaCategory};

fn quote(text: &str) -> String {
    let mut quoted = String::with_capacity(text.len() + 2);
    quoted.push('"');
    for c in text.chars() {
        match c {
            '"' => quoted.push_str("\\\""),
            '\\' => quoted.push_str("\\\\"),
            _ => quoted.push(c),
        }
    }
    quoted.push('"');
    quoted
}

fn category_clause(category: &UcaCategory) -> String {
    match category.qualifier {
        Some(q) => format!("category {} qualifier {}", category.class, q),
        None => format!("category {}", category.class),
    }
}

/// Render the model in canonical `.stpa` form.
pub fn print(model: &SafetyModel) -> String {
    // Each section is one kind's declarations; blocks within a section are
    // blank-line separated when multi-line, adjacent when single-line.
    let mut sections: Vec<String> = Vec::new();
    sections.push(format!("model {}", quote(&model.name)));

    let single = |entries: Vec<String>| entries.join("\n");
    let blocks = |entries: Vec<String>| entries.join("\n\n");

    if !model.accidents.is_empty() {
        sections.push(single(
            model
                .accidents
                .iter()
                .map(|a| format!("accident {} {}", a.id, quote(&a.description)))
                .collect(),
        ));
    }
    if !model.hazards.is_empty() {
        sections.push(single(
            model
                .hazards
                .iter()
                .map(|h| {
                    format!(
                        "hazard {} {} -> {}",
                        h.id,
                        quote(&h.description),
                        h.accidents.join(", ")
                    )
                })
                .collect(),
        ));
    }
    if !model.constraints.is_empty() {
        sections.push(single(
            model
                .constraints
                .iter()
                .map(|c| {
                    let mut line =
                        format!("constraint {} from {} {}", c.id, c.source, quote(&c.text));
                    if let Some(asil) = c.asil {
                        write!(line, " asil {asil}").unwrap();
                    }
                    line
                })
                .collect(),
        ));
    }
    if !model.components.is_empty() {
        sections.push(single(
            model
                .components
                .iter()
                .map(|c| format!("component {} kind {} {}", c.id, c.kind, quote(&c.label)))
                .collect(),
        ));
    }
    if !model.actions.is_empty() {
        sections.push(single(
            model
                .actions
                .iter()
                .map(|a| {
                    format!(
                        "action {} {} -> {} {}",
                        a.id,
                        a.source,
                        a.target,
                        quote(&a.label)
                    )
                })
                .collect(),
        ));
    }
    if !model.feedbacks.is_empty() {
        sections.push(single(
            model
                .feedbacks
                .iter()
                .map(|f| {
                    format!(
                        "feedback {} {} -> {} {}",
                        f.id,
                        f.source,
                        f.target,
                        quote(&f.label)
                    )
                })
                .collect(),
        ));
    }
    if !model.ucas.is_empty() {
        sections.push(blocks(
            model
                .ucas
                .iter()
                .map(|u| {
                    let mut block = format!("uca {} on {}\n", u.id, u.action);
                    writeln!(block, "  {}", category_clause(&u.category)).unwrap();
                    writeln!(block, "  context {}", quote(&u.context)).unwrap();
                    write!(block, "  hazards {}", u.hazards.join(", ")).unwrap();
                    if let Some(r) = u.rating {
                        write!(block, "\n  rating {r}").unwrap();
                    }
                    block
                })
                .collect(),
        ));
    }
    if !model.safe_assessments.is_empty() {
        sections.push(blocks(
            model
                .safe_assessments
                .iter()
                .map(|s| {
                    format!(
                        "safe {} category {}\n  justification {}",
                        s.action,
                        s.category,
                        quote(&s.justification)
                    )
                })
                .collect(),
        ));
    }
    if !model.causal_factors.is_empty() {
        sections.push(single(
            model
                .causal_factors
                .iter()
                .map(|c| {
                    format!(
                        "cause {} on {} element {} {}",
                        c.id,
                        c.uca,
                        c.element,
                        quote(&c.description)
                    )
                })
                .collect(),
        ));
    }
    if !model.scenarios.is_empty() {
        sections.push(blocks(
            model
                .scenarios
                .iter()
                .map(|s| {
                    format!(
                        "scenario {} on {} requires {}\n  {}",
                        s.id,
                        s.uca,
                        s.factors.join(", "),
                        quote(&s.description)
                    )
                })
                .collect(),
        ));
    }

    let mut output = sections.join("\n\n");
    output.push('\n');
    output
}
