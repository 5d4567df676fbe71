//! Traceability queries: walk the artifact chain downward to accidents and
//! upward to everything referencing an entity.

use std::collections::HashSet;

use crate::model::{Entity, EntityKind, SafetyModel};

use super::EngineError;

/// One entity in a trace, with its transitive children in that direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub id: String,
    pub kind: EntityKind,
    pub label: String,
    pub children: Vec<TraceNode>,
}

/// Result of [`trace`]: the root entity with its downward closure (toward
/// accidents) and upward closure (toward dependents).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceTree {
    pub id: String,
    pub kind: EntityKind,
    pub label: String,
    pub down: Vec<TraceNode>,
    pub up: Vec<TraceNode>,
}

/// Trace an entity both ways through the model's traceability links.
///
/// Child order is deterministic: stored reference order on the way down and
/// (collection, declaration) order on the way up. Every entity is expanded at
/// most once per direction; later occurrences appear as leaves, so shared
/// targets (several hazards of one accident) stay readable and traversal
/// terminates even on malformed reference graphs. Dangling references are
/// skipped; the validator is the place that reports them.
pub fn trace(model: &SafetyModel, id: &str) -> Result<TraceTree, EngineError> {
    let root = model
        .resolve(id)
        .ok_or_else(|| EngineError::UnknownId(id.to_string()))?;
    let mut down_visited: HashSet<String> = HashSet::from([id.to_string()]);
    let mut up_visited: HashSet<String> = HashSet::from([id.to_string()]);
    Ok(TraceTree {
        id: root.id().to_string(),
        kind: root.kind(),
        label: root.label().to_string(),
        down: expand(model, &root, Direction::Down, &mut down_visited),
        up: expand(model, &root, Direction::Up, &mut up_visited),
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Direction {
    Down,
    Up,
}

fn expand(
    model: &SafetyModel,
    entity: &Entity<'_>,
    direction: Direction,
    visited: &mut HashSet<String>,
) -> Vec<TraceNode> {
    let neighbor_ids = match direction {
        Direction::Down => down_refs(entity),
        Direction::Up => up_refs(model, entity),
    };
    neighbor_ids
        .into_iter()
        .filter_map(|neighbor_id| {
            let neighbor = model.resolve(&neighbor_id)?;
            let children = if visited.insert(neighbor_id) {
                expand(model, &neighbor, direction, visited)
            } else {
                Vec::new()
            };
            Some(TraceNode {
                id: neighbor.id().to_string(),
                kind: neighbor.kind(),
                label: neighbor.label().to_string(),
                children,
            })
        })
        .collect()
}

/// Stored references pointing toward accidents, in stored order.
fn down_refs(entity: &Entity<'_>) -> Vec<String> {
    match entity {
        Entity::Hazard(h) => h.accidents.clone(),
        Entity::Constraint(c) => vec![c.source.clone()],
        Entity::Uca(u) => u.hazards.clone(),
        Entity::CausalFactor(cf) => vec![cf.uca.clone()],
        Entity::Scenario(s) => s.factors.clone(),
        Entity::Accident(_) | Entity::Component(_) | Entity::Action(_) | Entity::Feedback(_) => {
            Vec::new()
        }
    }
}

/// Entities referencing this one, in (collection, declaration) order.
fn up_refs(model: &SafetyModel, entity: &Entity<'_>) -> Vec<String> {
    let id = entity.id();
    let mut refs = Vec::new();
    match entity {
        Entity::Accident(_) => {
            refs.extend(
                model
                    .hazards
                    .iter()
                    .filter(|h| h.accidents.iter().any(|a| a == id))
                    .map(|h| h.id.clone()),
            );
        }
        Entity::Hazard(_) => {
            refs.extend(
                model
                    .constraints
                    .iter()
                    .filter(|c| c.source == id)
                    .map(|c| c.id.clone()),
            );
            refs.extend(
                model
                    .ucas
                    .iter()
                    .filter(|u| u.hazards.iter().any(|h| h == id))
                    .map(|u| u.id.clone()),
            );
        }
        Entity::Uca(_) => {
            refs.extend(
                model
                    .constraints
                    .iter()
                    .filter(|c| c.source == id)
                    .map(|c| c.id.clone()),
            );
            refs.extend(
                model
                    .causal_factors
                    .iter()
                    .filter(|cf| cf.uca == id)
                    .map(|cf| cf.id.clone()),
            );
            refs.extend(
                model
                    .scenarios
                    .iter()
                    .filter(|s| s.uca == id)
                    .map(|s| s.id.clone()),
            );
        }
        Entity::CausalFactor(_) => {
            refs.extend(
                model
                    .scenarios
                    .iter()
                    .filter(|s| s.factors.iter().any(|f| f == id))
                    .map(|s| s.id.clone()),
            );
        }
        Entity::Action(_) => {
            refs.extend(
                model
                    .ucas
                    .iter()
                    .filter(|u| u.action == id)
                    .map(|u| u.id.clone()),
            );
        }
        Entity::Component(_) => {
            refs.extend(
                model
                    .actions
                    .iter()
                    .filter(|a| a.source == id || a.target == id)
                    .map(|a| a.id.clone()),
            );
            refs.extend(
                model
                    .feedbacks
                    .iter()
                    .filter(|f| f.source == id || f.target == id)
                    .map(|f| f.id.clone()),
            );
        }
        Entity::Constraint(_) | Entity::Feedback(_) | Entity::Scenario(_) => {}
    }
    refs
}

/// Flatten the ids reached in one direction (root excluded).
pub fn reached_ids(nodes: &[TraceNode]) -> HashSet<String> {
    fn walk(nodes: &[TraceNode], out: &mut HashSet<String>) {
        for node in nodes {
            out.insert(node.id.clone());
            walk(&node.children, out);
        }
    }
    let mut out = HashSet::new();
    walk(nodes, &mut out);
    out
}
