//! The bundled GCDC cooperative-driving reference model.
//!
//! The corpus is compiled into the library so that `load_corpus` cannot drift
//! from the distributed file; the same file is what the CLI examples and the
//! golden reports are generated from.

use crate::dsl;
use crate::model::SafetyModel;

/// Source text of the bundled corpus.
pub const CORPUS_SOURCE: &str = include_str!("../../../corpus/gcdc.stpa");

/// Repository-relative path of the corpus file, also used in its spans.
pub const CORPUS_PATH: &str = "corpus/gcdc.stpa";

/// The seven top-level module components of the case-study architecture.
pub const MODULE_COMPONENTS: [&str; 7] = [
    "Perception",
    "WorldModel",
    "Router",
    "SupervisoryController",
    "AgentController",
    "Gateway",
    "HMI",
];

/// Loop endpoints outside the module boundary.
pub const LOOP_ENDPOINTS: [&str; 2] = ["Driver", "EgoVehicle"];

/// What the corpus is expected to contain; the golden paths are relative to
/// the repository root, next to the model itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusManifest {
    pub model_path: &'static str,
    /// (format, path) pairs for the golden reports.
    pub golden_paths: [(&'static str, &'static str); 3],
    pub accidents: usize,
    pub hazards: usize,
    pub top_components: usize,
    pub loops: usize,
}

impl Default for CorpusManifest {
    fn default() -> Self {
        Self {
            model_path: CORPUS_PATH,
            golden_paths: [
                ("md", "corpus/golden/report.md"),
                ("json", "corpus/golden/report.json"),
                ("csv", "corpus/golden/matrix.csv"),
            ],
            accidents: 3,
            hazards: 7,
            top_components: 7,
            loops: 9,
        }
    }
}

impl CorpusManifest {
    /// Check the expected counts against a parsed model; every mismatch is
    /// reported, not just the first.
    pub fn check(&self, model: &SafetyModel) -> Result<(), Vec<String>> {
        let mut problems = Vec::new();
        let mut expect = |what: &str, actual: usize, expected: usize| {
            if actual != expected {
                problems.push(format!("{what}: expected {expected}, found {actual}"));
            }
        };
        expect("accidents", model.accidents.len(), self.accidents);
        expect("hazards", model.hazards.len(), self.hazards);
        let top = model
            .components
            .iter()
            .filter(|c| MODULE_COMPONENTS.contains(&c.id.as_str()))
            .count();
        expect("top-level components", top, self.top_components);
        expect(
            "components",
            model.components.len(),
            self.top_components + LOOP_ENDPOINTS.len(),
        );
        expect("control loops", model.control_loops().len(), self.loops);
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }
}

/// Parse the bundled corpus.
///
/// Panics if the bundled text does not parse: that is a build defect, not a
/// runtime condition, and the test suite catches it before release.
pub fn load_corpus() -> SafetyModel {
    match dsl::parse_named(CORPUS_SOURCE, CORPUS_PATH) {
        Ok(model) => model,
        Err(diagnostics) => {
            let rendered: Vec<String> = diagnostics.iter().map(|d| d.to_string()).collect();
            panic!("bundled corpus failed to parse:\n{}", rendered.join("\n"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{validate, Severity};
    use crate::model::{Asil, ComponentKind, LoopElement, UcaClass};

    #[test]
    fn corpus_parses_and_matches_the_manifest() {
        let model = load_corpus();
        CorpusManifest::default()
            .check(&model)
            .unwrap_or_else(|problems| panic!("manifest mismatch: {problems:?}"));
    }

    #[test]
    fn table_rows_are_verbatim() {
        let model = load_corpus();
        assert_eq!(model.accidents[0].description, "Collision with vehicle");
        assert_eq!(model.accidents[2].description, "Driver G-force too high");
        let h7 = model.hazard("H7").unwrap();
        assert_eq!(h7.description, "Deceleration too strong");
        assert_eq!(h7.accidents, vec!["A3"]);
    }

    #[test]
    fn module_components_have_expected_kinds() {
        let model = load_corpus();
        assert_eq!(
            model.component("Perception").unwrap().kind,
            ComponentKind::Sensor
        );
        assert_eq!(
            model.component("SupervisoryController").unwrap().kind,
            ComponentKind::Controller
        );
        assert_eq!(
            model.component("WorldModel").unwrap().kind,
            ComponentKind::ControlledProcess
        );
        for endpoint in LOOP_ENDPOINTS {
            assert!(model.component(endpoint).is_some(), "missing {endpoint}");
        }
    }

    #[test]
    fn driver_loop_is_first() {
        let loops = load_corpus().control_loops();
        assert_eq!(loops[0].controller, "Driver");
        assert_eq!(loops[0].controlled, "SupervisoryController");
        assert_eq!(loops[0].actions, vec!["CA1", "CA2"]);
        assert_eq!(loops[0].feedbacks, vec!["FB1"]);
    }

    #[test]
    fn worked_example_uca_is_encoded() {
        let model = load_corpus();
        let uca1 = model.uca("UCA1").unwrap();
        assert_eq!(uca1.action, "CA4");
        assert_eq!(uca1.category.class, UcaClass::NotProvided);
        assert_eq!(uca1.hazards, vec!["H1", "H2", "H3"]);
        let rating = uca1.rating.unwrap();
        assert_eq!(
            (rating.severity, rating.exposure, rating.controllability),
            (3, 4, 3)
        );
        assert_eq!(
            model.action("CA4").unwrap().label,
            "a reference vehicle"
        );
    }

    #[test]
    fn step2_factors_and_scenario_are_encoded() {
        let model = load_corpus();
        assert_eq!(
            model.causal_factors[0].element,
            LoopElement::CommunicationChannel
        );
        assert_eq!(
            model.causal_factors[1].element,
            LoopElement::SensorOrMeasurement
        );
        assert_eq!(model.scenarios[0].factors, vec!["CF1", "CF2"]);
        assert_eq!(model.scenarios[0].uca, "UCA1");
    }

    #[test]
    fn corpus_has_no_error_findings() {
        let findings = validate(&load_corpus());
        let errors: Vec<_> = findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
            .collect();
        assert!(errors.is_empty(), "unexpected errors: {errors:?}");
    }

    #[test]
    fn declared_constraints_carry_mostly_asil_d() {
        let model = load_corpus();
        let levels: Vec<Option<Asil>> = model.constraints.iter().map(|c| c.asil).collect();
        assert_eq!(levels.len(), 11);
        assert_eq!(
            levels.iter().filter(|l| **l == Some(Asil::D)).count(),
            10
        );
        assert!(levels.contains(&Some(Asil::C)));
    }
}
