//! Scenario files: a space, an action, a pipeline of planner and bound
//! operations, and the values the run is expected to reproduce.

mod builtins;
mod model;
mod run;
mod table;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::{Invariant, VerifyParams};

pub use builtins::{builtin, builtin_names, BUILTINS};
pub use model::{build_model, signed_cross_polytope, ActionSpec, Geometry, Model, SpaceSpec, ACTION_NAMES};
pub use run::{run_scenario, Outcome, StepRecord};
pub use table::{table_csv, table_text, TableRow};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("i/o: {0}")]
    Io(String),
    #[error("malformed scenario: {0}")]
    Parse(String),
    #[error("{0}")]
    Model(String),
}

/// One pipeline operation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Step {
    /// Stage-1 cover of the underlying space.
    Farber {
        #[serde(default)]
        cat: bool,
    },
    Involution2 {
        #[serde(default)]
        cat: bool,
    },
    Involution3 {
        #[serde(default)]
        cat: bool,
    },
    AntipodalJump {
        #[serde(default)]
        cat: bool,
    },
    StrictSection {
        #[serde(default)]
        cat: bool,
    },
    CoveringLift {
        #[serde(default)]
        cat: bool,
    },
    Wedge {
        #[serde(default)]
        cat: bool,
    },
    /// Cup length of the zero-divisor ideal; `classical` uses the trivial
    /// action and bounds stage 1.
    ZeroDivisor {
        #[serde(default)]
        classical: bool,
    },
    CdCriterion,
    CdBound {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        elements: Option<Vec<usize>>,
    },
    OrbitNilpotency,
}

impl Step {
    pub fn name(&self) -> &'static str {
        match self {
            Step::Farber { .. } => "farber",
            Step::Involution2 { .. } => "involution2",
            Step::Involution3 { .. } => "involution3",
            Step::AntipodalJump { .. } => "antipodal-jump",
            Step::StrictSection { .. } => "strict-section",
            Step::CoveringLift { .. } => "covering-lift",
            Step::Wedge { .. } => "wedge",
            Step::ZeroDivisor { .. } => "zero-divisor",
            Step::CdCriterion => "cd-criterion",
            Step::CdBound { .. } => "cd-bound",
            Step::OrbitNilpotency => "orbit-nilpotency",
        }
    }
}

/// Partial [`VerifyParams`]; unset fields fall through to the next layer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ParamOverrides {
    pub fn apply(&self, mut p: VerifyParams) -> VerifyParams {
        p.grid = self.grid.unwrap_or(p.grid);
        p.epsilon = self.epsilon.unwrap_or(p.epsilon);
        p.delta = self.delta.unwrap_or(p.delta);
        p.modulus = self.modulus.unwrap_or(p.modulus);
        p.samples = self.samples.unwrap_or(p.samples);
        p.seed = self.seed.unwrap_or(p.seed);
        p
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub invariant: Invariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<usize>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// A row of the reference table: the published value of an invariant for an
/// action class on `Sⁿ` (or another space).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub class: String,
    pub n: usize,
    pub invariant: Invariant,
    pub reference: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    #[serde(default)]
    pub description: String,
    pub space: SpaceSpec,
    pub action: ActionSpec,
    pub pipeline: Vec<Step>,
    #[serde(default)]
    pub params: ParamOverrides,
    #[serde(default)]
    pub expected: Vec<Expectation>,
    #[serde(default)]
    pub table: Vec<TableEntry>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))
    }

    /// Reads a scenario file; relative paths inside it resolve against the
    /// returned directory.
    pub fn load(path: &Path) -> Result<(Self, PathBuf), ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))?;
        let s = Self::parse(&text).map_err(|e| match e {
            ScenarioError::Parse(m) => ScenarioError::Parse(format!("{}: {m}", path.display())),
            other => other,
        })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((s, base))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

/// The `*.json` scenario files of a directory, sorted by name.
pub fn scenario_files(dir: &Path) -> Result<Vec<PathBuf>, ScenarioError> {
    let entries = std::fs::read_dir(dir).map_err(|e| ScenarioError::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_parse_by_op_name() {
        let s: Vec<Step> = serde_json::from_str(
            r#"[{"op":"farber"},{"op":"involution3","cat":true},{"op":"zero-divisor","classical":true},
                {"op":"cd-bound","elements":[1]},{"op":"orbit-nilpotency"}]"#,
        )
        .unwrap();
        assert_eq!(s[1], Step::Involution3 { cat: true });
        assert_eq!(s[3].name(), "cd-bound");
        assert!(serde_json::from_str::<Step>(r#"{"op":"teleport"}"#).is_err());
        assert!(serde_json::from_str::<Step>(r#"{"op":"farber","bogus":1}"#).is_err());
    }

    #[test]
    fn actions_accept_all_forms() {
        let a: ActionSpec = serde_json::from_str(r#""antipodal""#).unwrap();
        assert_eq!(a, ActionSpec::Named("antipodal".into()));
        let a: ActionSpec = serde_json::from_str(r#"{"name":"wedge-cyclic","order":3}"#).unwrap();
        assert!(matches!(a, ActionSpec::Detailed { order: Some(3), .. }));
        let a: ActionSpec = serde_json::from_str(r#"{"file":"x.action"}"#).unwrap();
        assert!(matches!(a, ActionSpec::File { .. }));
        let a: ActionSpec = serde_json::from_str(r#"{"generators":[[1,0]]}"#).unwrap();
        assert!(matches!(a, ActionSpec::Generators { .. }));
    }

    #[test]
    fn overrides_layer() {
        let o = ParamOverrides {
            grid: Some(8),
            seed: Some(3),
            ..Default::default()
        };
        let p = o.apply(VerifyParams::default());
        assert_eq!((p.grid, p.seed, p.epsilon), (8, 3, VerifyParams::default().epsilon));
    }

    #[test]
    fn malformed_scenarios_are_parse_errors() {
        assert!(matches!(Scenario::parse("{"), Err(ScenarioError::Parse(_))));
        assert!(matches!(
            Scenario::parse(r#"{"id":"x","space":{"kind":"klein"},"action":"trivial","pipeline":[]}"#),
            Err(ScenarioError::Parse(_))
        ));
    }
}
