//! Property-based checks of the library's structural invariants, driven by
//! the seeded model generator in `common`.

mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use stpa_core::corpus::load_corpus;
use stpa_core::model::{Rating, SafetyModel};
use stpa_core::{compute_asil, enumerate_candidates, parse, print, validate, Asil};

proptest! {
    /// Printing a model and parsing the result reproduces the model exactly.
    #[test]
    fn round_trip_identity(seed in any::<u64>()) {
        let model = common::model_from_seed(seed);
        let printed = print(&model);
        let reparsed = match parse(&printed) {
            Ok(m) => m,
            Err(diagnostics) => {
                return Err(TestCaseError::fail(format!(
                    "printed model does not parse: {diagnostics:?}\n{printed}"
                )))
            }
        };
        prop_assert_eq!(model, reparsed);
    }

    /// The printer emits a canonical form: printing a reparsed print changes
    /// nothing.
    #[test]
    fn print_is_idempotent(seed in any::<u64>()) {
        let model = common::model_from_seed(seed);
        let once = print(&model);
        let twice = print(&parse(&once).expect("canonical text parses"));
        prop_assert_eq!(once, twice);
    }

    /// Candidate enumeration always yields 4 cells per action, in an order
    /// that is a pure function of the model.
    #[test]
    fn enumeration_cardinality_and_determinism(seed in any::<u64>()) {
        let model = common::model_from_seed(seed);
        let first = enumerate_candidates(&model);
        prop_assert_eq!(first.len(), 4 * model.actions.len());
        prop_assert_eq!(first, enumerate_candidates(&model));
    }

    /// Raising any single rating class never lowers the ASIL.
    #[test]
    fn asil_is_monotone(s in 0..=3u8, e in 0..=4u8, c in 0..=3u8) {
        let here = compute_asil(&Rating::new(s, e, c)).unwrap();
        for (bs, be, bc) in [(s + 1, e, c), (s, e + 1, c), (s, e, c + 1)] {
            if let Ok(bumped) = compute_asil(&Rating::new(bs, be, bc)) {
                prop_assert!(here <= bumped);
            }
        }
    }

    /// A zero in any class means the hazard is out of scope: QM regardless of
    /// the other classes.
    #[test]
    fn asil_zero_class_is_qm(e in 0..=4u8, c in 0..=3u8) {
        prop_assert_eq!(compute_asil(&Rating::new(0, e, c)), Ok(Asil::Qm));
        prop_assert_eq!(compute_asil(&Rating::new(3, 0, c)), Ok(Asil::Qm));
        prop_assert_eq!(compute_asil(&Rating::new(3, e, 0)), Ok(Asil::Qm));
    }

    /// Loop derivation depends on actions only: reordering the feedback
    /// declarations changes neither the loops nor which feedbacks attach to
    /// which loop.
    #[test]
    fn loops_invariant_under_feedback_shuffle(seed in any::<u64>(), shuffle_seed in any::<u64>()) {
        let model = common::model_from_seed(seed);
        let before = model.control_loops();

        let mut shuffled = model.clone();
        shuffled
            .feedbacks
            .shuffle(&mut StdRng::seed_from_u64(shuffle_seed));
        let after = shuffled.control_loops();

        prop_assert_eq!(before.len(), after.len());
        for (b, a) in before.iter().zip(&after) {
            prop_assert_eq!(&b.controller, &a.controller);
            prop_assert_eq!(&b.controlled, &a.controlled);
            prop_assert_eq!(&b.actions, &a.actions);
            let b_fb: HashSet<&String> = b.feedbacks.iter().collect();
            let a_fb: HashSet<&String> = a.feedbacks.iter().collect();
            prop_assert_eq!(b_fb, a_fb);
        }
    }

    /// Findings come out sorted: errors before warnings, stable across runs.
    #[test]
    fn findings_ordered_and_deterministic(seed in any::<u64>()) {
        let model = common::model_from_seed(seed);
        let findings = validate(&model);
        let severities: Vec<_> = findings.iter().map(|f| f.severity).collect();
        let mut sorted = severities.clone();
        sorted.sort();
        prop_assert_eq!(severities, sorted);
        prop_assert_eq!(findings, validate(&model));
    }
}

fn delete_entity(model: &mut SafetyModel, id: &str) {
    model.accidents.retain(|e| e.id != id);
    model.hazards.retain(|e| e.id != id);
    model.constraints.retain(|e| e.id != id);
    model.components.retain(|e| e.id != id);
    model.actions.retain(|e| e.id != id);
    model.feedbacks.retain(|e| e.id != id);
    model.ucas.retain(|e| e.id != id);
    model.causal_factors.retain(|e| e.id != id);
    model.scenarios.retain(|e| e.id != id);
}

/// Every id the corpus references from some other declaration.
fn referenced_ids(model: &SafetyModel) -> Vec<String> {
    let mut ids: Vec<String> = Vec::new();
    for hazard in &model.hazards {
        ids.extend(hazard.accidents.iter().cloned());
    }
    for constraint in &model.constraints {
        ids.push(constraint.source.clone());
    }
    for action in &model.actions {
        ids.push(action.source.clone());
        ids.push(action.target.clone());
    }
    for feedback in &model.feedbacks {
        ids.push(feedback.source.clone());
        ids.push(feedback.target.clone());
    }
    for uca in &model.ucas {
        ids.push(uca.action.clone());
        ids.extend(uca.hazards.iter().cloned());
    }
    for safe in &model.safe_assessments {
        ids.push(safe.action.clone());
    }
    for factor in &model.causal_factors {
        ids.push(factor.uca.clone());
    }
    for scenario in &model.scenarios {
        ids.push(scenario.uca.clone());
        ids.extend(scenario.factors.iter().cloned());
    }
    ids.sort();
    ids.dedup();
    ids
}

/// Validator soundness on deletions: removing any declaration that something
/// else references must surface at least one finding, new relative to the
/// clean corpus, that names the removed id.
#[test]
fn deleting_any_referenced_corpus_declaration_is_caught() {
    let clean = load_corpus();
    let baseline = validate(&clean);
    let targets = referenced_ids(&clean);
    assert!(targets.len() > 20, "corpus should be densely cross-linked");

    for id in &targets {
        let mut mutated = clean.clone();
        delete_entity(&mut mutated, id);
        let needle = format!("`{id}`");
        let mutated_findings = validate(&mutated);
        let caught = mutated_findings
            .iter()
            .any(|f| !baseline.contains(f) && f.message.contains(&needle));
        assert!(
            caught,
            "deleting `{id}` produced no new finding naming it; findings: {mutated_findings:#?}"
        );
    }
}
