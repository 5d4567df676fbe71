//! Shared helpers for the integration and acceptance suites: an independent
//! transcription of the ISO 26262-3 ASIL determination table, and a seeded
//! generator of grammar-complete random models.

// Each test target compiles this module separately and none uses all of it.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use stpa_core::model::{
    Accident, CausalFactor, CausalScenario, Component, ComponentKind, ControlAction,
    FeedbackSignal, Hazard, Qualifier, Rating, SafeAssessment, SafetyConstraint, SafetyModel,
    UcaCategory, UcaClass, UnsafeControlAction, LOOP_ELEMENTS,
};
use stpa_core::Asil;

/// The ASIL determination table of ISO 26262-3, transcribed cell by cell as
/// the oracle of record. Rows are S1..S3, then E1..E4, then C1..C3; any class
/// at level 0 yields QM; out-of-range input yields None.
pub fn iso_table_asil(severity: u8, exposure: u8, controllability: u8) -> Option<Asil> {
    use Asil::{Qm, A, B, C, D};
    if severity > 3 || exposure > 4 || controllability > 3 {
        return None;
    }
    if severity == 0 || exposure == 0 || controllability == 0 {
        return Some(Qm);
    }
    const TABLE: [[[Asil; 3]; 4]; 3] = [
        // S1
        [
            [Qm, Qm, Qm], // E1: C1 C2 C3
            [Qm, Qm, Qm], // E2
            [Qm, Qm, A],  // E3
            [Qm, A, B],   // E4
        ],
        // S2
        [
            [Qm, Qm, Qm],
            [Qm, Qm, A],
            [Qm, A, B],
            [A, B, C],
        ],
        // S3
        [
            [Qm, Qm, A],
            [Qm, A, B],
            [A, B, C],
            [B, C, D],
        ],
    ];
    Some(TABLE[severity as usize - 1][exposure as usize - 1][controllability as usize - 1])
}

/// Words the text generator draws from; includes characters the string
/// escaping must handle (quote, backslash) and non-ASCII text.
const WORDS: [&str; 12] = [
    "platoon",
    "merge",
    "reference",
    "véhicule",
    "say \"stop\"",
    "path\\segment",
    "lateral",
    "braking",
    "urban",
    "awareness",
    "fallback",
    "G-force",
];

fn text(rng: &mut StdRng, min_words: usize) -> String {
    let count = rng.random_range(min_words..=min_words + 3);
    let picked: Vec<&str> = (0..count)
        .map(|_| WORDS[rng.random_range(0..WORDS.len())])
        .collect();
    picked.join(" ")
}

fn pick<'a>(rng: &mut StdRng, pool: &'a [String]) -> &'a str {
    &pool[rng.random_range(0..pool.len())]
}

fn pick_refs(rng: &mut StdRng, pool: &[String], max: usize) -> Vec<String> {
    let count = rng.random_range(1..=max.min(pool.len()).max(1));
    (0..count)
        .map(|_| pool[rng.random_range(0..pool.len())].clone())
        .collect()
}

fn maybe_rating(rng: &mut StdRng) -> Option<Rating> {
    // Digits beyond the ISO range are grammatical; the validator flags them.
    rng.random_bool(0.6).then(|| {
        Rating::new(
            rng.random_range(0..=9),
            rng.random_range(0..=9),
            rng.random_range(0..=9),
        )
    })
}

fn category(rng: &mut StdRng) -> UcaCategory {
    let class = match rng.random_range(0..4) {
        0 => UcaClass::Provided,
        1 => UcaClass::NotProvided,
        2 => UcaClass::WrongTiming,
        _ => UcaClass::WrongDuration,
    };
    let qualifier = match class {
        UcaClass::WrongTiming if rng.random_bool(0.5) => Some(
            [
                Qualifier::TooEarly,
                Qualifier::TooLate,
                Qualifier::OutOfSequence,
            ][rng.random_range(0..3)],
        ),
        UcaClass::WrongDuration if rng.random_bool(0.5) => {
            Some([Qualifier::TooLong, Qualifier::StoppedTooSoon][rng.random_range(0..2)])
        }
        _ => None,
    };
    UcaCategory { class, qualifier }
}

/// Build a random model that exercises the whole grammar: every declaration
/// form, optional clauses both present and absent, and strings containing
/// quotes, backslashes, and non-ASCII characters. The result is always
/// expressible in the notation (unique patterned ids, reference lists
/// non-empty, single-digit ratings), though references may dangle and
/// ratings may exceed the ISO ranges; those are validator findings, not
/// grammar violations.
pub fn model_from_seed(seed: u64) -> SafetyModel {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut model = SafetyModel::new(text(&mut rng, 1));

    let accident_ids: Vec<String> = (1..=rng.random_range(1..=4))
        .map(|i| format!("A{i}"))
        .collect();
    for id in &accident_ids {
        model.accidents.push(Accident {
            id: id.clone(),
            description: text(&mut rng, 1),
        });
    }

    let hazard_ids: Vec<String> = (1..=rng.random_range(1..=5))
        .map(|i| format!("H{i}"))
        .collect();
    for id in &hazard_ids {
        model.hazards.push(Hazard {
            id: id.clone(),
            description: text(&mut rng, 0),
            accidents: pick_refs(&mut rng, &accident_ids, 3),
        });
    }

    let component_ids: Vec<String> = (1..=rng.random_range(2..=6))
        .map(|i| format!("Comp{i}"))
        .collect();
    for id in &component_ids {
        let kind = [
            ComponentKind::Controller,
            ComponentKind::Actuator,
            ComponentKind::Sensor,
            ComponentKind::ControlledProcess,
        ][rng.random_range(0..4)];
        model.components.push(Component {
            id: id.clone(),
            kind,
            label: text(&mut rng, 0),
        });
    }

    let action_ids: Vec<String> = (1..=rng.random_range(0..=8))
        .map(|i| format!("CA{i}"))
        .collect();
    for id in &action_ids {
        model.actions.push(ControlAction {
            id: id.clone(),
            source: pick(&mut rng, &component_ids).to_string(),
            target: pick(&mut rng, &component_ids).to_string(),
            label: text(&mut rng, 1),
        });
    }

    for i in 1..=rng.random_range(0..=4) {
        model.feedbacks.push(FeedbackSignal {
            id: format!("FB{i}"),
            source: pick(&mut rng, &component_ids).to_string(),
            target: pick(&mut rng, &component_ids).to_string(),
            label: text(&mut rng, 0),
        });
    }

    let uca_ids: Vec<String> = if action_ids.is_empty() {
        Vec::new()
    } else {
        (1..=rng.random_range(0..=5))
            .map(|i| format!("UCA{i}"))
            .collect()
    };
    for id in &uca_ids {
        model.ucas.push(UnsafeControlAction {
            id: id.clone(),
            action: pick(&mut rng, &action_ids).to_string(),
            category: category(&mut rng),
            context: text(&mut rng, 0),
            hazards: pick_refs(&mut rng, &hazard_ids, 3),
            rating: maybe_rating(&mut rng),
        });
    }

    // Constraint sources mix hazards and UCAs, as real files do.
    let source_pool: Vec<String> = hazard_ids
        .iter()
        .chain(uca_ids.iter())
        .cloned()
        .collect();
    for i in 1..=rng.random_range(0..=4) {
        let asil = rng
            .random_bool(0.5)
            .then(|| [Asil::Qm, Asil::A, Asil::B, Asil::C, Asil::D][rng.random_range(0..5)]);
        model.constraints.push(SafetyConstraint {
            id: format!("SC{i}"),
            source: pick(&mut rng, &source_pool).to_string(),
            text: text(&mut rng, 1),
            asil,
        });
    }

    if !action_ids.is_empty() {
        for _ in 0..rng.random_range(0..=3) {
            model.safe_assessments.push(SafeAssessment {
                action: pick(&mut rng, &action_ids).to_string(),
                category: category(&mut rng).class,
                justification: text(&mut rng, 1),
            });
        }
    }

    let factor_ids: Vec<String> = if uca_ids.is_empty() {
        Vec::new()
    } else {
        (1..=rng.random_range(0..=4))
            .map(|i| format!("CF{i}"))
            .collect()
    };
    for id in &factor_ids {
        model.causal_factors.push(CausalFactor {
            id: id.clone(),
            uca: pick(&mut rng, &uca_ids).to_string(),
            element: LOOP_ELEMENTS[rng.random_range(0..LOOP_ELEMENTS.len())],
            description: text(&mut rng, 0),
        });
    }

    if !factor_ids.is_empty() && !uca_ids.is_empty() {
        for i in 1..=rng.random_range(0..=2) {
            model.scenarios.push(CausalScenario {
                id: format!("SCN{i}"),
                uca: pick(&mut rng, &uca_ids).to_string(),
                factors: pick_refs(&mut rng, &factor_ids, 2),
                description: text(&mut rng, 0),
            });
        }
    }

    model
}
