//! Executable (G,k)-motion planners: open covers of X×X by ε-margin sets,
//! each with a section into broken paths of a fixed stage.

pub mod flat;
pub mod sphere;
pub mod transfer;

use std::sync::Arc;

pub use flat::{cycle_cover, torus_cover, tree_cover};
pub use sphere::{
    antipodal_jump_cover, farber_sphere_cover, hemisphere_contraction_cover, involution_three_stage_planner,
    involution_two_stage_cover,
};
pub use transfer::{cover_from_covering_lift, cover_from_strict_section, lift_path, wedge_of_cycles, wedge_planner, Wedge};

use crate::pathspace::{embed_stage, BrokenPath, PathError};
use crate::symmetry::SymmetryError;

pub type Clearance<P> = Arc<dyn Fn(&P, &P) -> f64 + Send + Sync>;
pub type Section<P> = Arc<dyn Fn(&P, &P) -> Result<BrokenPath<P>, PathError> + Send + Sync>;

/// Default membership margin.
pub const DEFAULT_EPSILON: f64 = 0.05;

/// One open set of a cover. Membership at margin ε means `clearance > ε`,
/// where the clearance measures how far the pair is from the set's boundary.
#[derive(Clone)]
pub struct CoverSet<P> {
    pub name: String,
    pub stage: usize,
    clearance: Clearance<P>,
    section: Section<P>,
}

impl<P> std::fmt::Debug for CoverSet<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoverSet").field("name", &self.name).field("stage", &self.stage).finish()
    }
}

impl<P: Clone + 'static> CoverSet<P> {
    pub fn new(name: &str, stage: usize, clearance: Clearance<P>, section: Section<P>) -> Self {
        CoverSet {
            name: name.to_string(),
            stage,
            clearance,
            section,
        }
    }

    pub fn clearance(&self, x: &P, y: &P) -> f64 {
        (self.clearance)(x, y)
    }

    pub fn contains(&self, x: &P, y: &P, epsilon: f64) -> bool {
        self.clearance(x, y) > epsilon
    }

    pub fn section(&self, x: &P, y: &P) -> Result<BrokenPath<P>, PathError> {
        let bp = (self.section)(x, y)?;
        if bp.stage() != self.stage {
            return Err(PathError::InvalidBrokenPath(format!(
                "set {} produced a stage-{} path, expected stage {}",
                self.name,
                bp.stage(),
                self.stage
            )));
        }
        Ok(bp)
    }

    /// The same set with every section output extended by a constant leg.
    pub fn embed_stage(&self) -> Self {
        let inner = self.section.clone();
        CoverSet {
            name: self.name.clone(),
            stage: self.stage + 1,
            clearance: self.clearance.clone(),
            section: Arc::new(move |x, y| Ok(embed_stage(&inner(x, y)?))),
        }
    }
}

/// A candidate witness for `tc^{G,k} ≤ |sets| − 1`.
#[derive(Clone, Debug)]
pub struct PlannerCover<P> {
    pub name: String,
    pub stage: usize,
    pub sets: Vec<CoverSet<P>>,
}

impl<P: Clone + 'static> PlannerCover<P> {
    pub fn new(name: &str, sets: Vec<CoverSet<P>>) -> Result<Self, PlannerError> {
        let stage = sets.first().ok_or(PlannerError::EmptyCover)?.stage;
        if let Some(bad) = sets.iter().find(|s| s.stage != stage) {
            return Err(PlannerError::StageMismatch {
                expected: stage,
                found: bad.stage,
            });
        }
        Ok(PlannerCover {
            name: name.to_string(),
            stage,
            sets,
        })
    }

    pub fn claimed_bound(&self) -> usize {
        self.sets.len() - 1
    }

    /// Lowest-index set containing the pair at margin ε.
    pub fn select(&self, x: &P, y: &P, epsilon: f64) -> Option<usize> {
        self.sets.iter().position(|s| s.contains(x, y, epsilon))
    }

    /// The broken path emitted by the selected set.
    pub fn plan(&self, x: &P, y: &P, epsilon: f64) -> Result<BrokenPath<P>, PlannerError> {
        let i = self.select(x, y, epsilon).ok_or(PlannerError::Uncovered)?;
        Ok(self.sets[i].section(x, y)?)
    }

    pub fn embed_stage(&self) -> Self {
        PlannerCover {
            name: format!("{}+1", self.name),
            stage: self.stage + 1,
            sets: self.sets.iter().map(CoverSet::embed_stage).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlannerError {
    #[error("a cover needs at least one set")]
    EmptyCover,
    #[error("cover sets must share a stage: expected {expected}, found {found}")]
    StageMismatch { expected: usize, found: usize },
    #[error("pair is not covered at the requested margin")]
    Uncovered,
    #[error("wrong action: {0}")]
    WrongAction(String),
    #[error("action is not free: element {element} fixes a sampled point")]
    NotFree { element: usize },
    #[error("section is not a right inverse of the orbit map (defect {defect:.3e})")]
    SectionCheckFailed { defect: f64 },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}
