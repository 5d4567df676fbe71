//! STPA Step 2: a causal-factor checklist for one UCA, spanning every
//! element of its control loop.

use crate::model::{Entity, LoopElement, SafetyModel, LOOP_ELEMENTS};

use super::EngineError;

/// One checklist entry: the loop element to examine, a question phrased for
/// the UCA's loop, and the causal factors already recorded there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalPrompt {
    pub element: LoopElement,
    pub question: String,
    /// Ids of this UCA's causal factors on this element, declaration order.
    pub answered_by: Vec<String>,
}

/// Produce exactly eight prompts for the UCA, one per loop element class, in
/// canonical element order.
pub fn step2_prompts(
    model: &SafetyModel,
    uca_id: &str,
) -> Result<Vec<CausalPrompt>, EngineError> {
    let uca = match model.resolve(uca_id) {
        Some(Entity::Uca(uca)) => uca,
        Some(other) => {
            return Err(EngineError::NotAUca {
                id: uca_id.to_string(),
                kind: other.kind().to_string(),
            })
        }
        None => return Err(EngineError::UnknownId(uca_id.to_string())),
    };
    let action = model
        .action(&uca.action)
        .ok_or_else(|| EngineError::UnknownId(uca.action.clone()))?;
    // The loop exists whenever the action does; it is derived from actions.
    let control_loop = model
        .loop_of_action(&action.id)
        .expect("every declared action belongs to a derived loop");
    let controller = model.component_label(&control_loop.controller);
    let controlled = model.component_label(&control_loop.controlled);
    let act = &action.label;

    let feedback_question = if control_loop.feedbacks.is_empty() {
        format!(
            "The loop has no feedback signal: how does {controller} learn the state of \
             {controlled} at all?"
        )
    } else {
        let named: Vec<String> = control_loop
            .feedbacks
            .iter()
            .map(|id| {
                let label = model
                    .feedbacks
                    .iter()
                    .find(|f| &f.id == id)
                    .map(|f| f.label.as_str())
                    .unwrap_or("");
                format!("{id} ({label})")
            })
            .collect();
        format!(
            "Could feedback {} be missing, delayed, or wrong when {controller} relies on it?",
            named.join(", ")
        )
    };

    let prompts = LOOP_ELEMENTS
        .iter()
        .map(|&element| {
            let question = match element {
                LoopElement::ControllerProcessModel => format!(
                    "Does the process model of {controller} correctly reflect the state of \
                     {controlled} in the context `{}`?",
                    uca.context
                ),
                LoopElement::ControlAlgorithm => format!(
                    "Could the control algorithm of {controller} produce `{act}` incorrectly \
                     here (flawed logic, wrong requirements)?"
                ),
                LoopElement::ActuatorOrControlPath => format!(
                    "Could the path delivering `{act}` from {controller} to {controlled} drop, \
                     delay, or alter the action?"
                ),
                LoopElement::ControlledProcess => format!(
                    "Could {controlled} fail to execute `{act}` as commanded, or respond to it \
                     unexpectedly?"
                ),
                LoopElement::SensorOrMeasurement => format!(
                    "Could a sensor feeding {controller} measure the state of {controlled} \
                     wrongly, or stop measuring it?"
                ),
                LoopElement::FeedbackPath => feedback_question.clone(),
                LoopElement::CommunicationChannel => format!(
                    "Could communication between {controller} and other agents involved in \
                     `{act}` be lost, delayed, or corrupted?"
                ),
                LoopElement::ExternalDisturbance => format!(
                    "Could a disturbance from outside the loop keep `{act}` from having its \
                     intended effect on {controlled}?"
                ),
            };
            let answered_by = model
                .causal_factors
                .iter()
                .filter(|cf| cf.uca == uca.id && cf.element == element)
                .map(|cf| cf.id.clone())
                .collect();
            CausalPrompt {
                element,
                question,
                answered_by,
            }
        })
        .collect();
    Ok(prompts)
}
