//! Canonical JSON export, schema version 1.
//!
//! Key order is fixed by the DTO structs below (serde serializes fields in
//! declaration order), arrays follow model declaration order, and output is
//! pretty-printed with a trailing newline. Top-level keys: schema_version,
//! model, loops, candidates, findings, constraints.

use serde::Serialize;

use crate::engine::CandidateStatus;
use crate::model::{Rating, SafetyConstraint, UcaCategory};

use super::ReportBundle;

#[derive(Serialize)]
struct ReportDoc<'a> {
    schema_version: &'static str,
    model: ModelDoc<'a>,
    loops: Vec<LoopDoc<'a>>,
    candidates: Vec<CandidateDoc<'a>>,
    findings: Vec<FindingDoc<'a>>,
    constraints: Vec<ConstraintDoc<'a>>,
}

#[derive(Serialize)]
struct ModelDoc<'a> {
    name: &'a str,
    accidents: Vec<AccidentDoc<'a>>,
    hazards: Vec<HazardDoc<'a>>,
    constraints: Vec<ConstraintDoc<'a>>,
    components: Vec<ComponentDoc<'a>>,
    actions: Vec<ActionDoc<'a>>,
    feedbacks: Vec<ActionDoc<'a>>,
    ucas: Vec<UcaDoc<'a>>,
    safe_assessments: Vec<SafeDoc<'a>>,
    causal_factors: Vec<FactorDoc<'a>>,
    scenarios: Vec<ScenarioDoc<'a>>,
}

#[derive(Serialize)]
struct AccidentDoc<'a> {
    id: &'a str,
    description: &'a str,
}

#[derive(Serialize)]
struct HazardDoc<'a> {
    id: &'a str,
    description: &'a str,
    accidents: &'a [String],
}

#[derive(Serialize)]
struct ConstraintDoc<'a> {
    id: &'a str,
    source: &'a str,
    text: &'a str,
    asil: Option<&'static str>,
}

impl<'a> ConstraintDoc<'a> {
    fn new(constraint: &'a SafetyConstraint) -> Self {
        Self {
            id: &constraint.id,
            source: &constraint.source,
            text: &constraint.text,
            asil: constraint.asil.map(|a| a.as_keyword()),
        }
    }
}

#[derive(Serialize)]
struct ComponentDoc<'a> {
    id: &'a str,
    kind: &'static str,
    label: &'a str,
}

/// Also covers feedback signals; both are (id, source, target, label).
#[derive(Serialize)]
struct ActionDoc<'a> {
    id: &'a str,
    source: &'a str,
    target: &'a str,
    label: &'a str,
}

#[derive(Serialize)]
struct UcaDoc<'a> {
    id: &'a str,
    action: &'a str,
    category: &'static str,
    qualifier: Option<&'static str>,
    context: &'a str,
    hazards: &'a [String],
    rating: Option<RatingDoc>,
}

#[derive(Serialize)]
struct RatingDoc {
    severity: u8,
    exposure: u8,
    controllability: u8,
}

impl RatingDoc {
    fn new(rating: &Rating) -> Self {
        Self {
            severity: rating.severity,
            exposure: rating.exposure,
            controllability: rating.controllability,
        }
    }
}

#[derive(Serialize)]
struct SafeDoc<'a> {
    action: &'a str,
    category: &'static str,
    justification: &'a str,
}

#[derive(Serialize)]
struct FactorDoc<'a> {
    id: &'a str,
    uca: &'a str,
    element: &'static str,
    description: &'a str,
}

#[derive(Serialize)]
struct ScenarioDoc<'a> {
    id: &'a str,
    uca: &'a str,
    factors: &'a [String],
    description: &'a str,
}

#[derive(Serialize)]
struct LoopDoc<'a> {
    controller: &'a str,
    controlled: &'a str,
    actions: &'a [String],
    feedbacks: &'a [String],
}

#[derive(Serialize)]
struct CandidateDoc<'a> {
    action: &'a str,
    category: &'static str,
    status: &'static str,
    /// Empty unless status is "unsafe".
    ucas: &'a [String],
}

#[derive(Serialize)]
struct FindingDoc<'a> {
    code: &'static str,
    severity: &'static str,
    subject: &'a str,
    message: &'a str,
}

fn category_keywords(category: &UcaCategory) -> (&'static str, Option<&'static str>) {
    (
        category.class.as_keyword(),
        category.qualifier.map(|q| q.as_keyword()),
    )
}

/// Serialize the bundle as schema-v1 JSON (pretty, trailing newline).
pub fn emit_json(bundle: &ReportBundle) -> String {
    let model = &bundle.model;
    let doc = ReportDoc {
        schema_version: "1",
        model: ModelDoc {
            name: &model.name,
            accidents: model
                .accidents
                .iter()
                .map(|a| AccidentDoc {
                    id: &a.id,
                    description: &a.description,
                })
                .collect(),
            hazards: model
                .hazards
                .iter()
                .map(|h| HazardDoc {
                    id: &h.id,
                    description: &h.description,
                    accidents: &h.accidents,
                })
                .collect(),
            constraints: model.constraints.iter().map(ConstraintDoc::new).collect(),
            components: model
                .components
                .iter()
                .map(|c| ComponentDoc {
                    id: &c.id,
                    kind: c.kind.as_keyword(),
                    label: &c.label,
                })
                .collect(),
            actions: model
                .actions
                .iter()
                .map(|a| ActionDoc {
                    id: &a.id,
                    source: &a.source,
                    target: &a.target,
                    label: &a.label,
                })
                .collect(),
            feedbacks: model
                .feedbacks
                .iter()
                .map(|f| ActionDoc {
                    id: &f.id,
                    source: &f.source,
                    target: &f.target,
                    label: &f.label,
                })
                .collect(),
            ucas: model
                .ucas
                .iter()
                .map(|u| {
                    let (category, qualifier) = category_keywords(&u.category);
                    UcaDoc {
                        id: &u.id,
                        action: &u.action,
                        category,
                        qualifier,
                        context: &u.context,
                        hazards: &u.hazards,
                        rating: u.rating.as_ref().map(RatingDoc::new),
                    }
                })
                .collect(),
            safe_assessments: model
                .safe_assessments
                .iter()
                .map(|s| SafeDoc {
                    action: &s.action,
                    category: s.category.as_keyword(),
                    justification: &s.justification,
                })
                .collect(),
            causal_factors: model
                .causal_factors
                .iter()
                .map(|cf| FactorDoc {
                    id: &cf.id,
                    uca: &cf.uca,
                    element: cf.element.as_keyword(),
                    description: &cf.description,
                })
                .collect(),
            scenarios: model
                .scenarios
                .iter()
                .map(|s| ScenarioDoc {
                    id: &s.id,
                    uca: &s.uca,
                    factors: &s.factors,
                    description: &s.description,
                })
                .collect(),
        },
        loops: bundle
            .loops
            .iter()
            .map(|l| LoopDoc {
                controller: &l.controller,
                controlled: &l.controlled,
                actions: &l.actions,
                feedbacks: &l.feedbacks,
            })
            .collect(),
        candidates: bundle
            .candidates
            .iter()
            .map(|c| {
                const NO_UCAS: &[String] = &[];
                let (status, ucas): (&'static str, &[String]) = match &c.status {
                    CandidateStatus::Unassessed => ("unassessed", NO_UCAS),
                    CandidateStatus::Safe => ("safe", NO_UCAS),
                    CandidateStatus::Unsafe(ids) => ("unsafe", ids),
                };
                CandidateDoc {
                    action: &c.action,
                    category: c.category.as_keyword(),
                    status,
                    ucas,
                }
            })
            .collect(),
        findings: bundle
            .findings
            .iter()
            .map(|f| FindingDoc {
                code: f.code.as_str(),
                severity: match f.severity {
                    crate::engine::Severity::Error => "error",
                    crate::engine::Severity::Warning => "warning",
                },
                subject: &f.subject,
                message: &f.message,
            })
            .collect(),
        constraints: bundle
            .derived_constraints
            .iter()
            .map(ConstraintDoc::new)
            .collect(),
    };
    let mut text =
        serde_json::to_string_pretty(&doc).expect("report DTOs always serialize");
    text.push('\n');
    text
}
