//! Whole-model validation: the mechanized completeness and consistency
//! picture, reported as data rather than exceptions.
//!
//! Severity split: inconsistent analysis (broken references, contradictory
//! assessments, illegal values) is an error; incomplete analysis (missing
//! feedback, unassessed cells, missing constraints or ratings) is a warning,
//! because the method is iterative and incompleteness is a normal
//! intermediate state.
//!
//! E001 covers every form of bad reference: ids that resolve to nothing,
//! ids that resolve to an entity of the wrong kind for the slot, and
//! scenario factors that belong to a different UCA than the scenario.

use std::collections::HashMap;
use std::fmt;

use crate::model::{ComponentKind, Entity, EntityKind, SafetyModel, SourceSpan};

use super::candidates::{enumerate_candidates, CandidateStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// The stable finding catalog. Codes are a public contract: consumers key on
/// them, so they never change meaning or disappear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FindingCode {
    /// Dangling or kind-mismatched reference.
    E001,
    /// Hazard with no accident link.
    E002,
    /// UCA with no hazard link.
    E003,
    /// Control action sourced from a non-controller.
    E004,
    /// Rating field out of range.
    E005,
    /// (action, category) both safe-assessed and declared unsafe.
    E006,
    /// Duplicate id or duplicate declaration key.
    E007,
    /// Control loop with no feedback signal.
    W001,
    /// Candidate (action, category) cell not assessed.
    W002,
    /// UCA with no derived or declared safety constraint.
    W003,
    /// UCA with no causal factor (Step 2 not performed).
    W004,
    /// Hazard with no high-level safety constraint.
    W005,
    /// UCA without a rating.
    W006,
}

impl FindingCode {
    pub fn severity(self) -> Severity {
        if (self as u8) <= (FindingCode::E007 as u8) {
            Severity::Error
        } else {
            Severity::Warning
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FindingCode::E001 => "E001",
            FindingCode::E002 => "E002",
            FindingCode::E003 => "E003",
            FindingCode::E004 => "E004",
            FindingCode::E005 => "E005",
            FindingCode::E006 => "E006",
            FindingCode::E007 => "E007",
            FindingCode::W001 => "W001",
            FindingCode::W002 => "W002",
            FindingCode::W003 => "W003",
            FindingCode::W004 => "W004",
            FindingCode::W005 => "W005",
            FindingCode::W006 => "W006",
        }
    }
}

impl fmt::Display for FindingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One validation diagnostic. `subject` is the id of the entity the finding
/// is about (for reference problems, the referring entity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub code: FindingCode,
    pub severity: Severity,
    pub subject: String,
    pub message: String,
    pub span: Option<SourceSpan>,
}

/// Declaration-position key: collection rank, then index within the
/// collection. Mirrors file order for parsed models.
type Position = (u8, usize);

const ACCIDENTS: u8 = 0;
const HAZARDS: u8 = 1;
const CONSTRAINTS: u8 = 2;
const ACTIONS: u8 = 4;
const FEEDBACKS: u8 = 5;
const UCAS: u8 = 6;
const SAFES: u8 = 7;
const FACTORS: u8 = 8;
const SCENARIOS: u8 = 9;

struct Collector {
    findings: Vec<(Position, Finding)>,
}

impl Collector {
    fn push(
        &mut self,
        code: FindingCode,
        position: Position,
        subject: &str,
        message: String,
        span: Option<SourceSpan>,
    ) {
        self.findings.push((
            position,
            Finding {
                code,
                severity: code.severity(),
                subject: subject.to_string(),
                message,
                span,
            },
        ));
    }
}

/// Validate the whole model and return findings ordered by severity (errors
/// first), then declaration position, then code.
pub fn validate(model: &SafetyModel) -> Vec<Finding> {
    let mut collector = Collector {
        findings: Vec::new(),
    };
    check_duplicates(model, &mut collector);
    check_references(model, &mut collector);
    check_emptiness(model, &mut collector);
    check_action_sources(model, &mut collector);
    check_ratings(model, &mut collector);
    check_assessment_conflicts(model, &mut collector);
    check_loop_feedback(model, &mut collector);
    check_candidate_coverage(model, &mut collector);
    check_uca_followups(model, &mut collector);
    check_hazard_constraints(model, &mut collector);

    let mut findings = collector.findings;
    findings.sort_by_key(|(position, f)| (f.severity, *position, f.code));
    findings.into_iter().map(|(_, f)| f).collect()
}

/// Shortcut for the common "span of the subject's declaration" case.
fn span_of(model: &SafetyModel, id: &str) -> Option<SourceSpan> {
    model.span_of(id).cloned()
}

fn check_duplicates(model: &SafetyModel, collector: &mut Collector) {
    let mut seen: HashMap<&str, EntityKind> = HashMap::new();
    let declarations: Vec<(Position, &str, EntityKind)> = model
        .accidents
        .iter()
        .enumerate()
        .map(|(i, e)| ((ACCIDENTS, i), e.id.as_str(), EntityKind::Accident))
        .chain(
            model
                .hazards
                .iter()
                .enumerate()
                .map(|(i, e)| ((HAZARDS, i), e.id.as_str(), EntityKind::Hazard)),
        )
        .chain(
            model
                .constraints
                .iter()
                .enumerate()
                .map(|(i, e)| ((CONSTRAINTS, i), e.id.as_str(), EntityKind::Constraint)),
        )
        .chain(
            model
                .components
                .iter()
                .enumerate()
                .map(|(i, e)| ((3, i), e.id.as_str(), EntityKind::Component)),
        )
        .chain(
            model
                .actions
                .iter()
                .enumerate()
                .map(|(i, e)| ((ACTIONS, i), e.id.as_str(), EntityKind::Action)),
        )
        .chain(
            model
                .feedbacks
                .iter()
                .enumerate()
                .map(|(i, e)| ((FEEDBACKS, i), e.id.as_str(), EntityKind::Feedback)),
        )
        .chain(
            model
                .ucas
                .iter()
                .enumerate()
                .map(|(i, e)| ((UCAS, i), e.id.as_str(), EntityKind::Uca)),
        )
        .chain(
            model
                .causal_factors
                .iter()
                .enumerate()
                .map(|(i, e)| ((FACTORS, i), e.id.as_str(), EntityKind::CausalFactor)),
        )
        .chain(
            model
                .scenarios
                .iter()
                .enumerate()
                .map(|(i, e)| ((SCENARIOS, i), e.id.as_str(), EntityKind::Scenario)),
        )
        .collect();
    for (position, id, kind) in declarations {
        match seen.get(id) {
            Some(first_kind) => {
                let message = format!(
                    "duplicate id `{id}` (declared as {first_kind} and again as {kind})"
                );
                collector.push(FindingCode::E007, position, id, message, span_of(model, id));
            }
            None => {
                seen.insert(id, kind);
            }
        }
    }

    // Duplicate declaration keys: two actions with the same (source, target,
    // label), or two UCAs with the same (action, category, context), are the
    // same declaration under different ids.
    let mut action_keys: HashMap<(&str, &str, &str), &str> = HashMap::new();
    for (i, action) in model.actions.iter().enumerate() {
        let key = (
            action.source.as_str(),
            action.target.as_str(),
            action.label.as_str(),
        );
        match action_keys.get(&key) {
            Some(first) => {
                let message = format!(
                    "action `{}` duplicates the (source, target, label) of `{first}`",
                    action.id
                );
                collector.push(
                    FindingCode::E007,
                    (ACTIONS, i),
                    &action.id,
                    message,
                    span_of(model, &action.id),
                );
            }
            None => {
                action_keys.insert(key, &action.id);
            }
        }
    }
    let mut uca_keys: HashMap<(&str, String, &str), &str> = HashMap::new();
    for (i, uca) in model.ucas.iter().enumerate() {
        let key = (
            uca.action.as_str(),
            uca.category.to_string(),
            uca.context.as_str(),
        );
        match uca_keys.get(&key) {
            Some(first) => {
                let message = format!(
                    "uca `{}` duplicates the (action, category, context) of `{first}`",
                    uca.id
                );
                collector.push(
                    FindingCode::E007,
                    (UCAS, i),
                    &uca.id,
                    message,
                    span_of(model, &uca.id),
                );
            }
            None => {
                uca_keys.insert(key, &uca.id);
            }
        }
    }
}

/// Report one E001 for a broken reference slot, blamed on the referrer.
fn bad_ref(
    model: &SafetyModel,
    collector: &mut Collector,
    position: Position,
    subject: &str,
    slot: &str,
    target: &str,
) {
    let message = match model.resolve(target) {
        Some(found) => format!(
            "{slot} `{target}` is of kind {}, expected {}",
            found.kind(),
            expected_kind_for(slot),
        ),
        None => format!("{slot} `{target}` does not resolve to any declaration"),
    };
    collector.push(
        FindingCode::E001,
        position,
        subject,
        message,
        span_of(model, subject),
    );
}

fn check_references(model: &SafetyModel, collector: &mut Collector) {
    for (i, hazard) in model.hazards.iter().enumerate() {
        for accident_ref in &hazard.accidents {
            if !matches!(model.resolve(accident_ref), Some(Entity::Accident(_))) {
                bad_ref(
                    model,
                    collector,
                    (HAZARDS, i),
                    &hazard.id,
                    "accident reference",
                    accident_ref,
                );
            }
        }
    }
    for (i, constraint) in model.constraints.iter().enumerate() {
        if !matches!(
            model.resolve(&constraint.source),
            Some(Entity::Hazard(_)) | Some(Entity::Uca(_))
        ) {
            bad_ref(
                model,
                collector,
                (CONSTRAINTS, i),
                &constraint.id,
                "constraint source",
                &constraint.source,
            );
        }
    }
    for (i, action) in model.actions.iter().enumerate() {
        // A source that is a component of the wrong kind is E004, not E001.
        if !matches!(model.resolve(&action.source), Some(Entity::Component(_))) {
            bad_ref(
                model,
                collector,
                (ACTIONS, i),
                &action.id,
                "action source",
                &action.source,
            );
        }
        if !matches!(model.resolve(&action.target), Some(Entity::Component(_))) {
            bad_ref(
                model,
                collector,
                (ACTIONS, i),
                &action.id,
                "action target",
                &action.target,
            );
        }
    }
    for (i, feedback) in model.feedbacks.iter().enumerate() {
        if !matches!(model.resolve(&feedback.source), Some(Entity::Component(_))) {
            bad_ref(
                model,
                collector,
                (FEEDBACKS, i),
                &feedback.id,
                "feedback source",
                &feedback.source,
            );
        }
        match model.resolve(&feedback.target) {
            Some(Entity::Component(c)) if c.kind == ComponentKind::Controller => {}
            Some(Entity::Component(c)) => {
                let message = format!(
                    "feedback target `{}` is a {}, not a controller",
                    feedback.target, c.kind
                );
                collector.push(
                    FindingCode::E001,
                    (FEEDBACKS, i),
                    &feedback.id,
                    message,
                    span_of(model, &feedback.id),
                );
            }
            _ => bad_ref(
                model,
                collector,
                (FEEDBACKS, i),
                &feedback.id,
                "feedback target",
                &feedback.target,
            ),
        }
    }
    for (i, uca) in model.ucas.iter().enumerate() {
        if !matches!(model.resolve(&uca.action), Some(Entity::Action(_))) {
            bad_ref(
                model,
                collector,
                (UCAS, i),
                &uca.id,
                "action reference",
                &uca.action,
            );
        }
        for hazard_ref in &uca.hazards {
            if !matches!(model.resolve(hazard_ref), Some(Entity::Hazard(_))) {
                bad_ref(
                    model,
                    collector,
                    (UCAS, i),
                    &uca.id,
                    "hazard reference",
                    hazard_ref,
                );
            }
        }
    }
    for (i, safe) in model.safe_assessments.iter().enumerate() {
        if !matches!(model.resolve(&safe.action), Some(Entity::Action(_))) {
            let message = format!(
                "action reference `{}` in a safe assessment does not resolve to a control action",
                safe.action
            );
            let span = model.spans.safes.get(i).cloned();
            collector.push(FindingCode::E001, (SAFES, i), &safe.action, message, span);
        }
    }
    for (i, factor) in model.causal_factors.iter().enumerate() {
        if !matches!(model.resolve(&factor.uca), Some(Entity::Uca(_))) {
            bad_ref(
                model,
                collector,
                (FACTORS, i),
                &factor.id,
                "uca reference",
                &factor.uca,
            );
        }
    }
    for (i, scenario) in model.scenarios.iter().enumerate() {
        if !matches!(model.resolve(&scenario.uca), Some(Entity::Uca(_))) {
            bad_ref(
                model,
                collector,
                (SCENARIOS, i),
                &scenario.id,
                "uca reference",
                &scenario.uca,
            );
        }
        for factor_ref in &scenario.factors {
            match model.resolve(factor_ref) {
                Some(Entity::CausalFactor(factor)) => {
                    if factor.uca != scenario.uca {
                        let message = format!(
                            "factor `{factor_ref}` belongs to `{}`, not this scenario's `{}`",
                            factor.uca, scenario.uca
                        );
                        collector.push(
                            FindingCode::E001,
                            (SCENARIOS, i),
                            &scenario.id,
                            message,
                            span_of(model, &scenario.id),
                        );
                    }
                }
                _ => bad_ref(
                    model,
                    collector,
                    (SCENARIOS, i),
                    &scenario.id,
                    "factor reference",
                    factor_ref,
                ),
            }
        }
    }
}

fn expected_kind_for(slot: &str) -> &'static str {
    match slot {
        "accident reference" => "accident",
        "constraint source" => "hazard or uca",
        "action source" | "action target" | "feedback source" | "feedback target" => "component",
        "action reference" => "control action",
        "hazard reference" => "hazard",
        "uca reference" => "uca",
        "factor reference" => "causal factor",
        _ => "declaration",
    }
}

fn check_emptiness(model: &SafetyModel, collector: &mut Collector) {
    for (i, hazard) in model.hazards.iter().enumerate() {
        if hazard.accidents.is_empty() {
            let message = format!("hazard `{}` links to no accident", hazard.id);
            collector.push(
                FindingCode::E002,
                (HAZARDS, i),
                &hazard.id,
                message,
                span_of(model, &hazard.id),
            );
        }
    }
    for (i, uca) in model.ucas.iter().enumerate() {
        if uca.hazards.is_empty() {
            let message = format!("uca `{}` links to no hazard", uca.id);
            collector.push(
                FindingCode::E003,
                (UCAS, i),
                &uca.id,
                message,
                span_of(model, &uca.id),
            );
        }
    }
}

fn check_action_sources(model: &SafetyModel, collector: &mut Collector) {
    for (i, action) in model.actions.iter().enumerate() {
        if let Some(component) = model.component(&action.source) {
            if component.kind != ComponentKind::Controller {
                let message = format!(
                    "control action `{}` is sourced from `{}`, a {}",
                    action.id, component.id, component.kind
                );
                collector.push(
                    FindingCode::E004,
                    (ACTIONS, i),
                    &action.id,
                    message,
                    span_of(model, &action.id),
                );
            }
        }
    }
}

fn check_ratings(model: &SafetyModel, collector: &mut Collector) {
    for (i, uca) in model.ucas.iter().enumerate() {
        if let Some(rating) = uca.rating {
            if rating.severity > 3 || rating.exposure > 4 || rating.controllability > 3 {
                let message = format!(
                    "rating {rating} of `{}` is out of range (S0-S3, E0-E4, C0-C3)",
                    uca.id
                );
                collector.push(
                    FindingCode::E005,
                    (UCAS, i),
                    &uca.id,
                    message,
                    span_of(model, &uca.id),
                );
            }
        }
    }
}

fn check_assessment_conflicts(model: &SafetyModel, collector: &mut Collector) {
    for (i, safe) in model.safe_assessments.iter().enumerate() {
        let conflicting: Vec<&str> = model
            .ucas
            .iter()
            .filter(|u| u.action == safe.action && u.category.class == safe.category)
            .map(|u| u.id.as_str())
            .collect();
        if !conflicting.is_empty() {
            let message = format!(
                "`{}` category `{}` is assessed safe but declared unsafe by {}",
                safe.action,
                safe.category,
                conflicting.join(", ")
            );
            let span = model.spans.safes.get(i).cloned();
            collector.push(FindingCode::E006, (SAFES, i), &safe.action, message, span);
        }
    }
}

fn check_loop_feedback(model: &SafetyModel, collector: &mut Collector) {
    for control_loop in model.control_loops() {
        if control_loop.feedbacks.is_empty() {
            // Anchor the warning at the loop's first action, where the loop
            // is established.
            let first_action = &control_loop.actions[0];
            let index = model
                .actions
                .iter()
                .position(|a| &a.id == first_action)
                .unwrap_or(0);
            let message = format!(
                "loop `{}` -> `{}` has no feedback signal",
                control_loop.controller, control_loop.controlled
            );
            collector.push(
                FindingCode::W001,
                (ACTIONS, index),
                &control_loop.controller,
                message,
                span_of(model, first_action),
            );
        }
    }
}

fn check_candidate_coverage(model: &SafetyModel, collector: &mut Collector) {
    let action_index: HashMap<&str, usize> = model
        .actions
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id.as_str(), i))
        .collect();
    for candidate in enumerate_candidates(model) {
        if candidate.status == CandidateStatus::Unassessed {
            let index = action_index.get(candidate.action.as_str()).copied();
            let message = format!(
                "action `{}` not assessed for category `{}`",
                candidate.action, candidate.category
            );
            collector.push(
                FindingCode::W002,
                (ACTIONS, index.unwrap_or(0)),
                &candidate.action,
                message,
                span_of(model, &candidate.action),
            );
        }
    }
}

fn check_uca_followups(model: &SafetyModel, collector: &mut Collector) {
    for (i, uca) in model.ucas.iter().enumerate() {
        if !model.constraints.iter().any(|c| c.source == uca.id) {
            let message = format!("uca `{}` has no safety constraint derived from it", uca.id);
            collector.push(
                FindingCode::W003,
                (UCAS, i),
                &uca.id,
                message,
                span_of(model, &uca.id),
            );
        }
        if !model.causal_factors.iter().any(|cf| cf.uca == uca.id) {
            let message = format!(
                "uca `{}` has no causal factor recorded (Step 2 not performed)",
                uca.id
            );
            collector.push(
                FindingCode::W004,
                (UCAS, i),
                &uca.id,
                message,
                span_of(model, &uca.id),
            );
        }
        if uca.rating.is_none() {
            let message = format!("uca `{}` has no severity/exposure/controllability rating", uca.id);
            collector.push(
                FindingCode::W006,
                (UCAS, i),
                &uca.id,
                message,
                span_of(model, &uca.id),
            );
        }
    }
}

fn check_hazard_constraints(model: &SafetyModel, collector: &mut Collector) {
    for (i, hazard) in model.hazards.iter().enumerate() {
        if !model.constraints.iter().any(|c| c.source == hazard.id) {
            let message = format!(
                "hazard `{}` has no high-level safety constraint",
                hazard.id
            );
            collector.push(
                FindingCode::W005,
                (HAZARDS, i),
                &hazard.id,
                message,
                span_of(model, &hazard.id),
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::model::Rating;

    /// Fully assessed single-loop model that validates clean.
    const CLEAN: &str = r#"
        model "clean"
        accident A1 "loss"
        hazard H1 "state" -> A1
        constraint SC1 from H1 "must avoid state"
        constraint SC2 from UCA1 "Ctrl must not provide a step while hot" asil D
        component Ctrl kind controller "Ctrl"
        component P kind controlled_process "P"
        action CA1 Ctrl -> P "a step"
        feedback FB1 P -> Ctrl "temperature"
        uca UCA1 on CA1 category provided context "while hot" hazards H1 rating S3 E4 C3
        safe CA1 category not_provided justification "spring returns the valve"
        safe CA1 category wrong_timing justification "order free"
        safe CA1 category wrong_duration justification "impulse action"
        cause CF1 on UCA1 element controlled_process "valve stuck open"
    "#;

    fn clean() -> SafetyModel {
        parse(CLEAN).unwrap()
    }

    fn codes_on(findings: &[Finding], subject: &str) -> Vec<FindingCode> {
        findings
            .iter()
            .filter(|f| f.subject == subject)
            .map(|f| f.code)
            .collect()
    }

    #[test]
    fn fully_assessed_model_is_clean() {
        assert_eq!(validate(&clean()), Vec::new());
    }

    #[test]
    fn e001_dangling_and_kind_mismatched_references() {
        let mut model = clean();
        model.hazards[0].accidents = vec!["A9".into()];
        let findings = validate(&model);
        assert_eq!(codes_on(&findings, "H1"), vec![FindingCode::E001]);
        assert!(findings[0].message.contains("does not resolve"));

        let mut model = clean();
        model.constraints[0].source = "CA1".into();
        let findings = validate(&model);
        assert!(codes_on(&findings, "SC1").contains(&FindingCode::E001));
        assert!(findings
            .iter()
            .any(|f| f.message.contains("is of kind action, expected hazard or uca")));
    }

    #[test]
    fn e001_feedback_target_must_be_controller() {
        let mut model = clean();
        model.feedbacks[0].target = "P".into();
        let findings = validate(&model);
        assert!(codes_on(&findings, "FB1").contains(&FindingCode::E001));
    }

    #[test]
    fn e001_scenario_factor_of_foreign_uca() {
        let source = CLEAN.to_string()
            + "uca UCA2 on CA1 category provided context \"while cold\" hazards H1\n\
               scenario SCN1 on UCA2 requires CF1 \"wrong factor\"";
        let model = parse(&source).unwrap();
        let findings = validate(&model);
        assert!(codes_on(&findings, "SCN1").contains(&FindingCode::E001));
        assert!(findings
            .iter()
            .any(|f| f.message.contains("belongs to `UCA1`")));
    }

    #[test]
    fn e002_hazard_without_accident() {
        let mut model = clean();
        model.hazards[0].accidents.clear();
        assert_eq!(codes_on(&validate(&model), "H1"), vec![FindingCode::E002]);
    }

    #[test]
    fn e003_uca_without_hazard() {
        let mut model = clean();
        model.ucas[0].hazards.clear();
        assert_eq!(codes_on(&validate(&model), "UCA1"), vec![FindingCode::E003]);
    }

    #[test]
    fn e004_action_from_non_controller() {
        let mut model = clean();
        model.actions[0].source = "P".into();
        let findings = validate(&model);
        assert!(codes_on(&findings, "CA1").contains(&FindingCode::E004));
        // Not also an E001: `P` is a component, just the wrong kind.
        assert!(!codes_on(&findings, "CA1").contains(&FindingCode::E001));
    }

    #[test]
    fn e005_rating_out_of_range() {
        let mut model = clean();
        model.ucas[0].rating = Some(Rating::new(4, 4, 3));
        assert_eq!(codes_on(&validate(&model), "UCA1"), vec![FindingCode::E005]);
    }

    #[test]
    fn e006_conflicting_assessment() {
        let source = CLEAN.to_string()
            + "safe CA1 category provided justification \"contradicts UCA1\"";
        let model = parse(&source).unwrap();
        let findings = validate(&model);
        assert_eq!(codes_on(&findings, "CA1"), vec![FindingCode::E006]);
        assert!(findings
            .iter()
            .any(|f| f.message.contains("declared unsafe by UCA1")));
    }

    #[test]
    fn e007_duplicate_id() {
        let mut model = clean();
        let mut copy = model.hazards[0].clone();
        copy.description = "same id, different text".into();
        model.hazards.push(copy);
        let findings = validate(&model);
        assert!(codes_on(&findings, "H1").contains(&FindingCode::E007));
    }

    #[test]
    fn e007_duplicate_action_key() {
        let mut model = clean();
        let mut copy = model.actions[0].clone();
        copy.id = "CA2".into();
        model.actions.push(copy);
        let findings = validate(&model);
        assert!(codes_on(&findings, "CA2").contains(&FindingCode::E007));
    }

    #[test]
    fn e007_duplicate_uca_key() {
        let mut model = clean();
        let mut copy = model.ucas[0].clone();
        copy.id = "UCA2".into();
        model.ucas.push(copy);
        let findings = validate(&model);
        assert!(codes_on(&findings, "UCA2").contains(&FindingCode::E007));
    }

    #[test]
    fn w001_open_loop() {
        let mut model = clean();
        model.feedbacks.clear();
        let findings = validate(&model);
        assert_eq!(codes_on(&findings, "Ctrl"), vec![FindingCode::W001]);
    }

    #[test]
    fn w002_unassessed_candidate() {
        let mut model = clean();
        model.safe_assessments.remove(0);
        let findings = validate(&model);
        assert_eq!(codes_on(&findings, "CA1"), vec![FindingCode::W002]);
        assert!(findings
            .iter()
            .any(|f| f.message.contains("category `not_provided`")));
    }

    #[test]
    fn w003_w006_missing_constraint_and_rating() {
        let mut model = clean();
        model.constraints.remove(1);
        model.ucas[0].rating = None;
        let findings = validate(&model);
        assert_eq!(
            codes_on(&findings, "UCA1"),
            vec![FindingCode::W003, FindingCode::W006]
        );
    }

    #[test]
    fn w004_missing_causal_factor() {
        let mut model = clean();
        model.causal_factors.clear();
        let findings = validate(&model);
        assert_eq!(codes_on(&findings, "UCA1"), vec![FindingCode::W004]);
    }

    #[test]
    fn w005_hazard_without_constraint() {
        let mut model = clean();
        model.constraints.remove(0);
        let findings = validate(&model);
        assert_eq!(codes_on(&findings, "H1"), vec![FindingCode::W005]);
    }

    #[test]
    fn errors_sort_before_warnings_regardless_of_position() {
        let mut model = clean();
        model.constraints.remove(0); // W005 on H1 (early collection)
        model.ucas[0].rating = Some(Rating::new(4, 4, 3)); // E005 on UCA1 (late)
        let findings = validate(&model);
        assert_eq!(findings[0].code, FindingCode::E005);
        assert_eq!(findings[1].code, FindingCode::W005);
    }

    #[test]
    fn findings_carry_declaration_spans() {
        let mut model = clean();
        model.ucas[0].rating = None;
        model.constraints.remove(1);
        let findings = validate(&model);
        let span = findings[0].span.as_ref().expect("span from parsed model");
        assert_eq!(span.file, "<input>");
        assert!(span.line > 1);
    }

    #[test]
    fn validation_is_deterministic() {
        let mut model = clean();
        model.feedbacks.clear();
        model.constraints.clear();
        assert_eq!(validate(&model), validate(&model));
    }
}
