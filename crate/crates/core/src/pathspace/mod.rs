//! Geometric configuration spaces, sampled paths, broken paths with
//! orbit-matching joints, stage embeddings and orbit projection.

pub mod graph;
pub mod gspace;
pub mod path;
pub mod space;

pub use graph::{GraphPoint, GraphSpace};
pub use gspace::{
    project_to_orbit, section_defect, CircleDoubling, Covering, GSpace, GraphOrbitMap, HemisphereFold,
    IdentityProjection, OrbitProjection, PointMap, StrictSection, TorusHalfTurnCover,
};
pub use path::{
    embed_stage, validate_broken_path, BrokenPath, SampledPath, Tolerances, ValidationReport, DEFAULT_SAMPLES,
};
pub use space::{fold, Hemisphere, Space, Sphere, Torus};

use crate::symmetry::SymmetryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PathError {
    #[error("a sampled path needs at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("geodesic between (near-)antipodal points is not unique (separation {separation:.3e})")]
    GeodesicDegenerate { separation: f64 },
    #[error("paths do not join: endpoint gap {gap:.3e}")]
    JoinMismatch { gap: f64 },
    #[error("invalid broken path: {0}")]
    InvalidBrokenPath(String),
    #[error("the complex is not a nonempty graph")]
    NotAGraph,
    #[error("the graph is not a single cycle")]
    NotACycle,
    #[error("points lie in different components")]
    Disconnected,
    #[error("identity element does not act trivially")]
    IdentityNotTrivial,
    #[error("element {element} is not an isometry (defect {defect:.3e})")]
    NotIsometric { element: usize, defect: f64 },
    #[error("path lifting lost track at sample {step}: nearest preimage is not isolated (ratio {ratio:.3})")]
    LiftDivergence { step: usize, ratio: f64 },
    #[error("action mismatch: {0}")]
    ActionMismatch(String),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}
