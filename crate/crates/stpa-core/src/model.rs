//! Domain types of the STAMP safety model and the traceability relations
//! among them.
//!
//! A [`SafetyModel`] is immutable after construction: every analysis
//! operation takes `&SafetyModel` and is a pure function of its input, so a
//! model may be shared across threads without synchronization.

use std::collections::HashMap;
use std::fmt;

// ============================================================================
// Source locations
// ============================================================================

/// Position of a declaration in its source file.
///
/// `line` and `column` are 1-based; `length` is measured in characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: String,
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, line: u32, column: u32, length: u32) -> Self {
        Self {
            file: file.into(),
            line,
            column,
            length,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

/// Side table mapping declarations to their source spans.
///
/// Populated by the parser; empty for models built programmatically. Kept
/// outside the entity structs so that model equality (used by round-trip
/// tests) does not depend on where a declaration happened to live in a file.
#[derive(Debug, Clone, Default)]
pub struct SpanTable {
    /// Span of the declaring id token, keyed by entity id.
    pub entities: HashMap<String, SourceSpan>,
    /// Spans of safe assessments, aligned with `SafetyModel::safe_assessments`
    /// (safe assessments carry no id of their own).
    pub safes: Vec<SourceSpan>,
}

// ============================================================================
// Enumerations
// ============================================================================

/// The four roles a component can play in a control loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Controller,
    Actuator,
    Sensor,
    ControlledProcess,
}

impl ComponentKind {
    pub fn as_keyword(self) -> &'static str {
        match self {
            ComponentKind::Controller => "controller",
            ComponentKind::Actuator => "actuator",
            ComponentKind::Sensor => "sensor",
            ComponentKind::ControlledProcess => "controlled_process",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "controller" => Some(ComponentKind::Controller),
            "actuator" => Some(ComponentKind::Actuator),
            "sensor" => Some(ComponentKind::Sensor),
            "controlled_process" => Some(ComponentKind::ControlledProcess),
            _ => None,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_keyword())
    }
}

/// The four ways a control action can be unsafe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UcaClass {
    Provided,
    NotProvided,
    WrongTiming,
    WrongDuration,
}

/// Canonical ordering of the four categories, used everywhere candidates are
/// enumerated or reported.
pub const UCA_CLASS_ORDER: [UcaClass; 4] = [
    UcaClass::Provided,
    UcaClass::NotProvided,
    UcaClass::WrongTiming,
    UcaClass::WrongDuration,
];

impl UcaClass {
    pub fn as_keyword(self) -> &'static str {
        match self {
            UcaClass::Provided => "provided",
            UcaClass::NotProvided => "not_provided",
            UcaClass::WrongTiming => "wrong_timing",
            UcaClass::WrongDuration => "wrong_duration",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "provided" => Some(UcaClass::Provided),
            "not_provided" => Some(UcaClass::NotProvided),
            "wrong_timing" => Some(UcaClass::WrongTiming),
            "wrong_duration" => Some(UcaClass::WrongDuration),
            _ => None,
        }
    }
}

impl fmt::Display for UcaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_keyword())
    }
}

/// Sub-qualifier refining `wrong_timing` / `wrong_duration` categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qualifier {
    TooEarly,
    TooLate,
    OutOfSequence,
    TooLong,
    StoppedTooSoon,
}

impl Qualifier {
    pub fn as_keyword(self) -> &'static str {
        match self {
            Qualifier::TooEarly => "too_early",
            Qualifier::TooLate => "too_late",
            Qualifier::OutOfSequence => "out_of_sequence",
            Qualifier::TooLong => "too_long",
            Qualifier::StoppedTooSoon => "stopped_too_soon",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "too_early" => Some(Qualifier::TooEarly),
            "too_late" => Some(Qualifier::TooLate),
            "out_of_sequence" => Some(Qualifier::OutOfSequence),
            "too_long" => Some(Qualifier::TooLong),
            "stopped_too_soon" => Some(Qualifier::StoppedTooSoon),
            _ => None,
        }
    }

    /// Whether this qualifier is legal for the given category class.
    pub fn allowed_for(self, class: UcaClass) -> bool {
        match self {
            Qualifier::TooEarly | Qualifier::TooLate | Qualifier::OutOfSequence => {
                class == UcaClass::WrongTiming
            }
            Qualifier::TooLong | Qualifier::StoppedTooSoon => class == UcaClass::WrongDuration,
        }
    }
}

impl fmt::Display for Qualifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_keyword())
    }
}

/// Category of an unsafe control action: class plus optional qualifier.
///
/// A qualifier is only meaningful for the `wrong_timing` and `wrong_duration`
/// classes; the parser rejects other combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UcaCategory {
    pub class: UcaClass,
    pub qualifier: Option<Qualifier>,
}

impl UcaCategory {
    pub fn new(class: UcaClass) -> Self {
        Self {
            class,
            qualifier: None,
        }
    }

    pub fn with_qualifier(class: UcaClass, qualifier: Qualifier) -> Self {
        Self {
            class,
            qualifier: Some(qualifier),
        }
    }
}

impl fmt::Display for UcaCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.qualifier {
            Some(q) => write!(f, "{} ({})", self.class, q),
            None => write!(f, "{}", self.class),
        }
    }
}

/// The eight control-loop element classes a causal factor can belong to:
/// the loop elements plus the communication channel between them and
/// disturbances from outside the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LoopElement {
    ControllerProcessModel,
    ControlAlgorithm,
    ActuatorOrControlPath,
    ControlledProcess,
    SensorOrMeasurement,
    FeedbackPath,
    CommunicationChannel,
    ExternalDisturbance,
}

/// All eight element classes in canonical order.
pub const LOOP_ELEMENTS: [LoopElement; 8] = [
    LoopElement::ControllerProcessModel,
    LoopElement::ControlAlgorithm,
    LoopElement::ActuatorOrControlPath,
    LoopElement::ControlledProcess,
    LoopElement::SensorOrMeasurement,
    LoopElement::FeedbackPath,
    LoopElement::CommunicationChannel,
    LoopElement::ExternalDisturbance,
];

impl LoopElement {
    pub fn as_keyword(self) -> &'static str {
        match self {
            LoopElement::ControllerProcessModel => "controller_process_model",
            LoopElement::ControlAlgorithm => "control_algorithm",
            LoopElement::ActuatorOrControlPath => "actuator_or_control_path",
            LoopElement::ControlledProcess => "controlled_process",
            LoopElement::SensorOrMeasurement => "sensor_or_measurement",
            LoopElement::FeedbackPath => "feedback_path",
            LoopElement::CommunicationChannel => "communication_channel",
            LoopElement::ExternalDisturbance => "external_disturbance",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        LOOP_ELEMENTS
            .iter()
            .copied()
            .find(|e| e.as_keyword() == word)
    }
}

impl fmt::Display for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_keyword())
    }
}

/// Automotive safety integrity level, ordered `QM < A < B < C < D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Asil {
    Qm,
    A,
    B,
    C,
    D,
}

impl Asil {
    pub fn as_keyword(self) -> &'static str {
        match self {
            Asil::Qm => "QM",
            Asil::A => "A",
            Asil::B => "B",
            Asil::C => "C",
            Asil::D => "D",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "QM" => Some(Asil::Qm),
            "A" => Some(Asil::A),
            "B" => Some(Asil::B),
            "C" => Some(Asil::C),
            "D" => Some(Asil::D),
            _ => None,
        }
    }
}

impl fmt::Display for Asil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_keyword())
    }
}

/// Severity / exposure / controllability triple.
///
/// Legal ranges are S 0..=3, E 0..=4, C 0..=3; the struct itself can hold
/// out-of-range values so that the validator can report them (E005).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rating {
    pub severity: u8,
    pub exposure: u8,
    pub controllability: u8,
}

impl Rating {
    pub fn new(severity: u8, exposure: u8, controllability: u8) -> Self {
        Self {
            severity,
            exposure,
            controllability,
        }
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S{} E{} C{}",
            self.severity, self.exposure, self.controllability
        )
    }
}

// ============================================================================
// Entities
// ============================================================================

/// An undesired loss event to avoid. Ids follow the pattern `A<digits>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Accident {
    pub id: String,
    pub description: String,
}

/// A system state that can lead to one or more accidents. Ids follow the
/// pattern `H<digits>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hazard {
    pub id: String,
    pub description: String,
    /// Ids of the accidents this hazard can cause (at least one).
    pub accidents: Vec<String>,
}

/// A normative safety requirement, derived from a hazard (high-level) or
/// from an unsafe control action. Ids follow the pattern `SC<digits>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyConstraint {
    pub id: String,
    /// Id of the hazard or UCA this constraint was derived from.
    pub source: String,
    pub text: String,
    pub asil: Option<Asil>,
}

/// A node of the control structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
    pub label: String,
}

/// The means by which a controller influences a controlled process.
/// Ids follow the pattern `CA<digits>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlAction {
    pub id: String,
    /// Id of the issuing component; must be a controller.
    pub source: String,
    /// Id of the component the action acts on.
    pub target: String,
    /// What the action delivers, phrased so that "provide {label}" reads as
    /// a sentence (e.g. "a reference vehicle").
    pub label: String,
}

/// A signal flowing back to a controller. Ids follow the pattern `FB<digits>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeedbackSignal {
    pub id: String,
    pub source: String,
    /// Id of the receiving component; must be a controller.
    pub target: String,
    pub label: String,
}

/// A control action that leads to a hazard in some context.
/// Ids follow the pattern `UCA<digits>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsafeControlAction {
    pub id: String,
    /// Id of the control action.
    pub action: String,
    pub category: UcaCategory,
    /// The condition under which the action is unsafe.
    pub context: String,
    /// Ids of the hazards this UCA can lead to (at least one).
    pub hazards: Vec<String>,
    pub rating: Option<Rating>,
}

/// An analyst judgement that an (action, category) pair is safe in every
/// context, recorded so that category coverage is machine-auditable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafeAssessment {
    /// Id of the control action.
    pub action: String,
    pub category: UcaClass,
    pub justification: String,
}

/// A control-loop flaw that can produce a UCA. Ids follow the pattern
/// `CF<digits>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalFactor {
    pub id: String,
    /// Id of the UCA this factor can cause.
    pub uca: String,
    pub element: LoopElement,
    pub description: String,
}

/// A conjunction of causal factors that together produce a UCA.
/// Ids follow the pattern `SCN<digits>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalScenario {
    pub id: String,
    /// Id of the UCA this scenario produces.
    pub uca: String,
    /// Ids of the causal factors that must coincide (at least one); all must
    /// belong to the same UCA as the scenario.
    pub factors: Vec<String>,
    pub description: String,
}

// ============================================================================
// Control loops
// ============================================================================

/// A derived (controller, controlled) loop with its actions and any feedback
/// signals running from the controlled side back to the controller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlLoop {
    pub controller: String,
    pub controlled: String,
    /// Control action ids, in declaration order (at least one).
    pub actions: Vec<String>,
    /// Feedback signal ids, in declaration order (may be empty; an open loop
    /// is legal but draws a W001 warning from the validator).
    pub feedbacks: Vec<String>,
}

// ============================================================================
// The model
// ============================================================================

/// The root document: every collection is kept in declaration order, and all
/// cross-references are by id (resolved on demand, closed world).
#[derive(Debug, Clone, Default)]
pub struct SafetyModel {
    pub name: String,
    pub accidents: Vec<Accident>,
    pub hazards: Vec<Hazard>,
    pub constraints: Vec<SafetyConstraint>,
    pub components: Vec<Component>,
    pub actions: Vec<ControlAction>,
    pub feedbacks: Vec<FeedbackSignal>,
    pub ucas: Vec<UnsafeControlAction>,
    pub safe_assessments: Vec<SafeAssessment>,
    pub causal_factors: Vec<CausalFactor>,
    pub scenarios: Vec<CausalScenario>,
    /// Source spans of declarations; not part of model equality.
    pub spans: SpanTable,
}

// Equality deliberately ignores the span table: two models are equal when
// they declare the same content, wherever it came from.
impl PartialEq for SafetyModel {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.accidents == other.accidents
            && self.hazards == other.hazards
            && self.constraints == other.constraints
            && self.components == other.components
            && self.actions == other.actions
            && self.feedbacks == other.feedbacks
            && self.ucas == other.ucas
            && self.safe_assessments == other.safe_assessments
            && self.causal_factors == other.causal_factors
            && self.scenarios == other.scenarios
    }
}

impl Eq for SafetyModel {}

/// What kind of entity an id refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntityKind {
    Accident,
    Hazard,
    Constraint,
    Component,
    Action,
    Feedback,
    Uca,
    CausalFactor,
    Scenario,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = match self {
            EntityKind::Accident => "accident",
            EntityKind::Hazard => "hazard",
            EntityKind::Constraint => "constraint",
            EntityKind::Component => "component",
            EntityKind::Action => "action",
            EntityKind::Feedback => "feedback",
            EntityKind::Uca => "uca",
            EntityKind::CausalFactor => "cause",
            EntityKind::Scenario => "scenario",
        };
        f.write_str(word)
    }
}

/// A borrowed view of any identifiable entity in the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Entity<'a> {
    Accident(&'a Accident),
    Hazard(&'a Hazard),
    Constraint(&'a SafetyConstraint),
    Component(&'a Component),
    Action(&'a ControlAction),
    Feedback(&'a FeedbackSignal),
    Uca(&'a UnsafeControlAction),
    CausalFactor(&'a CausalFactor),
    Scenario(&'a CausalScenario),
}

impl<'a> Entity<'a> {
    pub fn id(&self) -> &'a str {
        match self {
            Entity::Accident(e) => &e.id,
            Entity::Hazard(e) => &e.id,
            Entity::Constraint(e) => &e.id,
            Entity::Component(e) => &e.id,
            Entity::Action(e) => &e.id,
            Entity::Feedback(e) => &e.id,
            Entity::Uca(e) => &e.id,
            Entity::CausalFactor(e) => &e.id,
            Entity::Scenario(e) => &e.id,
        }
    }

    pub fn kind(&self) -> EntityKind {
        match self {
            Entity::Accident(_) => EntityKind::Accident,
            Entity::Hazard(_) => EntityKind::Hazard,
            Entity::Constraint(_) => EntityKind::Constraint,
            Entity::Component(_) => EntityKind::Component,
            Entity::Action(_) => EntityKind::Action,
            Entity::Feedback(_) => EntityKind::Feedback,
            Entity::Uca(_) => EntityKind::Uca,
            Entity::CausalFactor(_) => EntityKind::CausalFactor,
            Entity::Scenario(_) => EntityKind::Scenario,
        }
    }

    /// Human-readable text of the entity: description, label, constraint
    /// text, or UCA context, depending on the kind.
    pub fn label(&self) -> &'a str {
        match self {
            Entity::Accident(e) => &e.description,
            Entity::Hazard(e) => &e.description,
            Entity::Constraint(e) => &e.text,
            Entity::Component(e) => &e.label,
            Entity::Action(e) => &e.label,
            Entity::Feedback(e) => &e.label,
            Entity::Uca(e) => &e.context,
            Entity::CausalFactor(e) => &e.description,
            Entity::Scenario(e) => &e.description,
        }
    }
}

impl SafetyModel {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    /// Look up the unique entity with the given id.
    ///
    /// Scans collections in declaration-group order; with valid (duplicate
    /// free) models there is at most one match, and with duplicated ids the
    /// first declaration wins, so the result is never ambiguous.
    pub fn resolve(&self, id: &str) -> Option<Entity<'_>> {
        if let Some(e) = self.accidents.iter().find(|e| e.id == id) {
            return Some(Entity::Accident(e));
        }
        if let Some(e) = self.hazards.iter().find(|e| e.id == id) {
            return Some(Entity::Hazard(e));
        }
        if let Some(e) = self.constraints.iter().find(|e| e.id == id) {
            return Some(Entity::Constraint(e));
        }
        if let Some(e) = self.components.iter().find(|e| e.id == id) {
            return Some(Entity::Component(e));
        }
        if let Some(e) = self.actions.iter().find(|e| e.id == id) {
            return Some(Entity::Action(e));
        }
        if let Some(e) = self.feedbacks.iter().find(|e| e.id == id) {
            return Some(Entity::Feedback(e));
        }
        if let Some(e) = self.ucas.iter().find(|e| e.id == id) {
            return Some(Entity::Uca(e));
        }
        if let Some(e) = self.causal_factors.iter().find(|e| e.id == id) {
            return Some(Entity::CausalFactor(e));
        }
        if let Some(e) = self.scenarios.iter().find(|e| e.id == id) {
            return Some(Entity::Scenario(e));
        }
        None
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn action(&self, id: &str) -> Option<&ControlAction> {
        self.actions.iter().find(|a| a.id == id)
    }

    pub fn hazard(&self, id: &str) -> Option<&Hazard> {
        self.hazards.iter().find(|h| h.id == id)
    }

    pub fn uca(&self, id: &str) -> Option<&UnsafeControlAction> {
        self.ucas.iter().find(|u| u.id == id)
    }

    /// Label of a component, falling back to the id for unresolved refs.
    pub fn component_label<'a>(&'a self, id: &'a str) -> &'a str {
        self.component(id).map(|c| c.label.as_str()).unwrap_or(id)
    }

    /// Derive the control loops of the model.
    ///
    /// One loop per distinct (controller, action target) pair with at least
    /// one control action, in first-declaration order. Each loop carries its
    /// actions plus every feedback signal running from the controlled
    /// component back to the controller, both in declaration order. Purely a
    /// function of the action/feedback declarations, so the result is
    /// deterministic and the loop count does not depend on feedback order.
    pub fn control_loops(&self) -> Vec<ControlLoop> {
        let mut loops: Vec<ControlLoop> = Vec::new();
        let mut index: HashMap<(&str, &str), usize> = HashMap::new();
        for action in &self.actions {
            let key = (action.source.as_str(), action.target.as_str());
            match index.get(&key) {
                Some(&i) => loops[i].actions.push(action.id.clone()),
                None => {
                    index.insert(key, loops.len());
                    loops.push(ControlLoop {
                        controller: action.source.clone(),
                        controlled: action.target.clone(),
                        actions: vec![action.id.clone()],
                        feedbacks: Vec::new(),
                    });
                }
            }
        }
        for feedback in &self.feedbacks {
            if let Some(&i) = index.get(&(feedback.target.as_str(), feedback.source.as_str())) {
                loops[i].feedbacks.push(feedback.id.clone());
            }
        }
        loops
    }

    /// The loop a control action belongs to, if the action exists.
    pub fn loop_of_action(&self, action_id: &str) -> Option<ControlLoop> {
        self.control_loops()
            .into_iter()
            .find(|l| l.actions.iter().any(|a| a == action_id))
    }

    pub fn span_of(&self, id: &str) -> Option<&SourceSpan> {
        self.spans.entities.get(id)
    }
}
