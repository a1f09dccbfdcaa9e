//! Sampled paths and broken paths.

use serde::Serialize;

use super::gspace::GSpace;
use super::space::Space;
use super::PathError;

/// Largest endpoint mismatch accepted when concatenating two paths.
pub const JOIN_TOLERANCE: f64 = 1e-6;

/// Default number of samples per leg.
pub const DEFAULT_SAMPLES: usize = 64;

/// A path sampled at `N ≥ 2` uniformly spaced parameter values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledPath<P> {
    points: Vec<P>,
}

impl<P: Clone> SampledPath<P> {
    pub fn new(points: Vec<P>) -> Result<Self, PathError> {
        if points.len() < 2 {
            return Err(PathError::TooFewSamples(points.len()));
        }
        Ok(SampledPath { points })
    }

    /// The constant path `c_x`.
    pub fn constant(x: &P, n: usize) -> Result<Self, PathError> {
        Self::new(vec![x.clone(); n])
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> &P {
        &self.points[0]
    }

    pub fn end(&self) -> &P {
        self.points.last().expect("at least two samples")
    }

    pub fn reverse(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        SampledPath { points }
    }

    /// `self ∗ other`: the samples of `self` followed by those of `other`
    /// after its first, re-read as uniform on `[0, 1]`.
    pub fn concat<S: Space<Point = P>>(&self, space: &S, other: &Self) -> Result<Self, PathError> {
        let gap = space.dist(self.end(), other.start());
        if gap > JOIN_TOLERANCE {
            return Err(PathError::JoinMismatch { gap });
        }
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points[1..]);
        Ok(SampledPath { points })
    }

    /// Applies a map pointwise.
    pub fn map<Q: Clone>(&self, f: impl Fn(&P) -> Q) -> SampledPath<Q> {
        SampledPath {
            points: self.points.iter().map(f).collect(),
        }
    }

    /// Sum of the distances between consecutive samples.
    pub fn length<S: Space<Point = P>>(&self, space: &S) -> f64 {
        self.points.windows(2).map(|w| space.dist(&w[0], &w[1])).sum()
    }

    pub fn max_gap<S: Space<Point = P>>(&self, space: &S) -> f64 {
        self.points.windows(2).map(|w| space.dist(&w[0], &w[1])).fold(0.0, f64::max)
    }

    /// One sample per row: index, parameter, then the point coordinates.
    pub fn to_csv<S: Space<Point = P>>(&self, space: &S) -> String {
        let n = self.points.len();
        let mut out = String::new();
        for (i, p) in self.points.iter().enumerate() {
            let t = i as f64 / (n - 1) as f64;
            let coords: Vec<String> = space.coords(p).iter().map(|c| format!("{c:.12}")).collect();
            out.push_str(&format!("{i},{t:.12},{}\n", coords.join(",")));
        }
        out
    }
}

/// A k-tuple of paths whose consecutive break points lie in a common orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct BrokenPath<P> {
    legs: Vec<SampledPath<P>>,
}

impl<P: Clone> BrokenPath<P> {
    pub fn new(legs: Vec<SampledPath<P>>) -> Result<Self, PathError> {
        if legs.is_empty() {
            return Err(PathError::InvalidBrokenPath("a broken path needs at least one leg".into()));
        }
        Ok(BrokenPath { legs })
    }

    pub fn single(path: SampledPath<P>) -> Self {
        BrokenPath { legs: vec![path] }
    }

    pub fn stage(&self) -> usize {
        self.legs.len()
    }

    pub fn legs(&self) -> &[SampledPath<P>] {
        &self.legs
    }

    pub fn start(&self) -> &P {
        self.legs[0].start()
    }

    pub fn end(&self) -> &P {
        self.legs[self.legs.len() - 1].end()
    }

    /// The endpoint pair `(γ₁(0), γ_k(1))`.
    pub fn endpoints(&self) -> (P, P) {
        (self.start().clone(), self.end().clone())
    }
}

/// Appends the constant path at the final endpoint, giving a broken path of
/// the next stage with the same endpoints.
pub fn embed_stage<P: Clone>(bp: &BrokenPath<P>) -> BrokenPath<P> {
    let last = &bp.legs[bp.legs.len() - 1];
    let mut legs = bp.legs.clone();
    legs.push(SampledPath {
        points: vec![last.end().clone(); last.len()],
    });
    BrokenPath { legs }
}

/// Acceptance thresholds for broken-path validation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Orbit-matching tolerance at joints.
    pub delta: f64,
    /// Endpoint tolerance against the requested pair.
    pub endpoint: f64,
    /// Declared mesh: largest admissible distance between consecutive samples.
    pub max_gap: f64,
    /// Largest admissible distance of a sample from the model space.
    pub membership: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            delta: 1e-6,
            endpoint: 1e-6,
            max_gap: 0.5,
            membership: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    /// `min_g dist(g·legᵢ(1), legᵢ₊₁(0))` for each joint.
    pub joint_residuals: Vec<f64>,
    pub start_residual: f64,
    pub end_residual: f64,
    pub max_gap: f64,
    pub membership_residual: f64,
    pub valid: bool,
}

impl ValidationReport {
    pub fn max_joint_residual(&self) -> f64 {
        self.joint_residuals.iter().copied().fold(0.0, f64::max)
    }

    /// A short description of the first violated condition.
    pub fn failure(&self, tol: &Tolerances) -> Option<String> {
        if let Some((i, r)) = self.joint_residuals.iter().enumerate().find(|(_, &r)| !(r <= tol.delta)) {
            return Some(format!("joint {} orbit residual {r:.3e} exceeds {:.1e}", i + 1, tol.delta));
        }
        if !(self.start_residual <= tol.endpoint) {
            return Some(format!("start residual {:.3e}", self.start_residual));
        }
        if !(self.end_residual <= tol.endpoint) {
            return Some(format!("end residual {:.3e}", self.end_residual));
        }
        if !(self.max_gap <= tol.max_gap) {
            return Some(format!("sample gap {:.3e} exceeds mesh {:.3e}", self.max_gap, tol.max_gap));
        }
        if !(self.membership_residual <= tol.membership) {
            return Some(format!("sample off the space by {:.3e}", self.membership_residual));
        }
        None
    }
}

/// Checks orbit matching at every joint, the endpoint condition for the
/// requested pair, the sampling mesh and that every sample lies on the space.
pub fn validate_broken_path<S: Space>(
    gspace: &GSpace<S>,
    bp: &BrokenPath<S::Point>,
    request: (&S::Point, &S::Point),
    tol: &Tolerances,
) -> ValidationReport {
    let space = &gspace.space;
    let joint_residuals: Vec<f64> = bp
        .legs
        .windows(2)
        .map(|w| gspace.orbit_residual(w[0].end(), w[1].start()))
        .collect();
    let start_residual = space.dist(bp.start(), request.0);
    let end_residual = space.dist(bp.end(), request.1);
    let max_gap = bp.legs.iter().map(|l| l.max_gap(space)).fold(0.0, f64::max);
    let membership_residual = bp
        .legs
        .iter()
        .flat_map(|l| l.points())
        .map(|p| space.membership_residual(p))
        .fold(0.0, f64::max);
    let mut report = ValidationReport {
        joint_residuals,
        start_residual,
        end_residual,
        max_gap,
        membership_residual,
        valid: false,
    };
    report.valid = report.failure(tol).is_none();
    report
}
