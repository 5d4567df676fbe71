//! Translation of identified UCAs into normative safety constraints.

use crate::model::{Entity, SafetyConstraint, SafetyModel, UcaClass};

use super::{compute_asil, EngineError};

/// Derive the safety constraint that forbids a UCA.
///
/// The text is a fixed template over the category class, the issuing
/// controller's label, the action label, and the UCA context, so repeated
/// calls yield identical constraints. The new id continues the model's `SC`
/// numbering, offset by the UCA's position so that deriving for several UCAs
/// of one model cannot collide. The constraint's ASIL is computed from the
/// UCA rating when one exists and is valid.
pub fn derive_constraint(
    model: &SafetyModel,
    uca_id: &str,
) -> Result<SafetyConstraint, EngineError> {
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
    let controller = model.component_label(&action.source);
    let text = match uca.category.class {
        UcaClass::Provided => format!(
            "{controller} must not provide {} {}",
            action.label, uca.context
        ),
        UcaClass::NotProvided => format!(
            "{controller} must provide {} {}",
            action.label, uca.context
        ),
        UcaClass::WrongTiming => format!(
            "{controller} must provide {} within required timing and ordering {}",
            action.label, uca.context
        ),
        UcaClass::WrongDuration => format!(
            "{controller} must apply {} for the required duration {}",
            action.label, uca.context
        ),
    };
    let next_sc = model
        .constraints
        .iter()
        .filter_map(|c| c.id.strip_prefix("SC").and_then(|n| n.parse::<u64>().ok()))
        .max()
        .unwrap_or(0)
        + 1;
    let position = model
        .ucas
        .iter()
        .position(|u| u.id == uca.id)
        .unwrap_or(0) as u64;
    Ok(SafetyConstraint {
        id: format!("SC{}", next_sc + position),
        source: uca.id.clone(),
        text,
        asil: uca.rating.and_then(|r| compute_asil(&r).ok()),
    })
}
