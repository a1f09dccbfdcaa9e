//! Spaces with an isometric finite group action, and orbit-space models.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::graph::{GraphPoint, GraphSpace};
use super::path::{validate_broken_path, BrokenPath, SampledPath, Tolerances};
use super::space::{Hemisphere, Space, Sphere, Torus};
use super::PathError;
use crate::complex::Vertex;
use crate::symmetry::{quotient_complex, FiniteGroup, GroupAction};

/// Tolerance for the isometry and homomorphism checks on point maps.
pub const ISOMETRY_TOLERANCE: f64 = 1e-9;

pub type PointMap<P> = Arc<dyn Fn(&P) -> P + Send + Sync>;

/// A model space with a finite group acting by explicit isometries.
#[derive(Clone)]
pub struct GSpace<S: Space> {
    pub space: S,
    pub group: FiniteGroup,
    maps: Vec<PointMap<S::Point>>,
    pub action_name: String,
}

impl<S: Space> std::fmt::Debug for GSpace<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GSpace")
            .field("space", &self.space.name())
            .field("order", &self.group.order())
            .field("action", &self.action_name)
            .finish()
    }
}

impl<S: Space> GSpace<S> {
    /// Checks on deterministic samples that the identity acts trivially, that
    /// each map is an isometry and that the maps compose like the group.
    pub fn new(space: S, group: FiniteGroup, maps: Vec<PointMap<S::Point>>, action_name: &str) -> Result<Self, PathError> {
        if maps.len() != group.order() {
            return Err(PathError::ActionMismatch(format!(
                "{} maps for a group of order {}",
                maps.len(),
                group.order()
            )));
        }
        let gs = GSpace {
            space,
            group,
            maps,
            action_name: action_name.to_string(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0x150);
        let mut samples = gs.space.grid(12);
        let nudged: Vec<S::Point> = samples.iter().map(|p| gs.space.nudge(p, 0.3, &mut rng)).collect();
        samples.extend(nudged);
        let e = gs.group.identity();
        for p in &samples {
            if gs.space.dist(&gs.act(e, p), p) > ISOMETRY_TOLERANCE {
                return Err(PathError::IdentityNotTrivial);
            }
        }
        for g in gs.group.elements() {
            for (i, p) in samples.iter().enumerate() {
                let gp = gs.act(g, p);
                if gs.space.membership_residual(&gp) > ISOMETRY_TOLERANCE {
                    return Err(PathError::NotIsometric { element: g, defect: f64::INFINITY });
                }
                for q in samples.iter().skip(i + 1).step_by(3) {
                    let defect = (gs.space.dist(&gp, &gs.act(g, q)) - gs.space.dist(p, q)).abs();
                    if defect > ISOMETRY_TOLERANCE {
                        return Err(PathError::NotIsometric { element: g, defect });
                    }
                }
                for h in gs.group.elements() {
                    let lhs = gs.act(gs.group.mul(g, h), p);
                    let rhs = gs.act(g, &gs.act(h, p));
                    if gs.space.dist(&lhs, &rhs) > ISOMETRY_TOLERANCE {
                        return Err(PathError::ActionMismatch(format!("map({g}·{h}) differs from map({g})∘map({h})")));
                    }
                }
            }
        }
        Ok(gs)
    }

    pub fn trivial(space: S) -> Self {
        let id: PointMap<S::Point> = Arc::new(|p: &S::Point| p.clone());
        Self::new(space, FiniteGroup::trivial(), vec![id], "trivial").expect("identity action")
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn act(&self, g: usize, p: &S::Point) -> S::Point {
        (self.maps[g])(p)
    }

    pub fn orbit(&self, p: &S::Point) -> Vec<S::Point> {
        self.group.elements().map(|g| self.act(g, p)).collect()
    }

    /// `min_g dist(g·p, q)`.
    pub fn orbit_residual(&self, p: &S::Point, q: &S::Point) -> f64 {
        self.group
            .elements()
            .map(|g| self.space.dist(&self.act(g, p), q))
            .fold(f64::INFINITY, f64::min)
    }

}

impl<S: Space + Clone> GSpace<S> {
    /// Restriction to a subgroup, given by element indices.
    pub fn restrict(&self, h: &[usize]) -> Result<Self, PathError> {
        if !self.group.is_subgroup(h) {
            return Err(PathError::ActionMismatch(format!("{h:?} is not a subgroup")));
        }
        let mut h = h.to_vec();
        h.sort_unstable();
        let index: BTreeMap<usize, usize> = h.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table = h.iter().map(|&a| h.iter().map(|&b| index[&self.group.mul(a, b)]).collect()).collect();
        let group = FiniteGroup::from_table(table).map_err(|e| PathError::ActionMismatch(e.to_string()))?;
        let maps = h.iter().map(|&g| self.maps[g].clone()).collect();
        Ok(GSpace {
            space: self.space.clone(),
            group,
            maps,
            action_name: format!("{}|{:?}", self.action_name, h),
        })
    }
}

fn z2_maps<P: 'static>(g: impl Fn(&P) -> P + Send + Sync + 'static) -> Vec<PointMap<P>>
where
    P: Clone,
{
    vec![Arc::new(|p: &P| p.clone()), Arc::new(g)]
}

impl GSpace<Sphere> {
    /// `x ↦ −x`.
    pub fn sphere_antipodal(dim: usize) -> Self {
        let maps = z2_maps(|x: &Vec<f64>| x.iter().map(|v| -v).collect());
        Self::new(Sphere::new(dim), FiniteGroup::cyclic(2), maps, "antipodal").expect("antipodal map is an isometry")
    }

    /// Reflection in the hyperplane `x₀ = 0`; its fixed set is an equatorial
    /// sphere of codimension one.
    pub fn sphere_reflection(dim: usize) -> Self {
        let maps = z2_maps(|x: &Vec<f64>| {
            let mut y = x.clone();
            y[0] = -y[0];
            y
        });
        Self::new(Sphere::new(dim), FiniteGroup::cyclic(2), maps, "codim1-involution").expect("reflection is an isometry")
    }

    /// Half-turn `(x₀, x₁, …) ↦ (−x₀, −x₁, …)`, orientation preserving.
    pub fn sphere_half_turn(dim: usize) -> Self {
        assert!(dim >= 2);
        let maps = z2_maps(|x: &Vec<f64>| {
            let mut y = x.clone();
            y[0] = -y[0];
            y[1] = -y[1];
            y
        });
        Self::new(Sphere::new(dim), FiniteGroup::cyclic(2), maps, "rotation").expect("rotation is an isometry")
    }
}

impl GSpace<Torus> {
    /// Translation by half a period in the first coordinate; free.
    pub fn torus_half_turn(dim: usize) -> Self {
        let torus = Torus::standard(dim);
        let t = torus.clone();
        let maps = z2_maps(move |x: &Vec<f64>| {
            let mut y = x.clone();
            y[0] += t.periods[0] / 2.0;
            t.wrap(&y)
        });
        Self::new(torus, FiniteGroup::cyclic(2), maps, "torus-halfturn").expect("translation is an isometry")
    }
}

impl GSpace<GraphSpace> {
    /// The geometric realization of a simplicial action on a one-dimensional complex.
    pub fn from_graph_action(action: &GroupAction, name: &str) -> Result<Self, PathError> {
        let space = GraphSpace::new(action.complex().clone())?;
        let maps = action
            .group()
            .elements()
            .map(|g| {
                let a = action.clone();
                let m: PointMap<GraphPoint> = Arc::new(move |p: &GraphPoint| {
                    if p.is_vertex() {
                        GraphPoint::vertex(a.act(g, p.a))
                    } else {
                        GraphPoint::on_edge(a.act(g, p.a), a.act(g, p.b), p.t)
                    }
                });
                m
            })
            .collect();
        Self::new(space, action.group().clone(), maps, name)
    }
}

/// A model of the orbit map `ρ: X → X/G`.
pub trait OrbitProjection: Send + Sync {
    type Source: Space;
    type Quotient: Space;

    fn quotient(&self) -> &Self::Quotient;

    fn project(&self, p: &<Self::Source as Space>::Point) -> <Self::Quotient as Space>::Point;
}

/// An orbit map that is a covering, with explicit fibres.
pub trait Covering: OrbitProjection {
    fn preimages(&self, q: &<Self::Quotient as Space>::Point) -> Vec<<Self::Source as Space>::Point>;
}

/// An orbit map with a continuous right inverse `s`, `ρ∘s = id`.
pub trait StrictSection: OrbitProjection {
    fn section(&self, q: &<Self::Quotient as Space>::Point) -> <Self::Source as Space>::Point;
}

/// `ρ̄(γ₁, …, γ_k) = (ρ∘γ₁) ∗ ⋯ ∗ (ρ∘γ_k)` for a valid broken path.
pub fn project_to_orbit<R: OrbitProjection>(
    proj: &R,
    gspace: &GSpace<R::Source>,
    bp: &BrokenPath<<R::Source as Space>::Point>,
    tol: &Tolerances,
) -> Result<SampledPath<<R::Quotient as Space>::Point>, PathError> {
    let report = validate_broken_path(gspace, bp, (bp.start(), bp.end()), tol);
    if let Some(why) = report.failure(tol) {
        return Err(PathError::InvalidBrokenPath(why));
    }
    let q = proj.quotient();
    let mut out = bp.legs()[0].map(|p| proj.project(p));
    for leg in &bp.legs()[1..] {
        out = out.concat(q, &leg.map(|p| proj.project(p)))?;
    }
    Ok(out)
}

/// Identity orbit map of a trivial action.
#[derive(Clone, Debug)]
pub struct IdentityProjection<S> {
    pub space: S,
}

impl<S: Space + Clone> OrbitProjection for IdentityProjection<S> {
    type Source = S;
    type Quotient = S;

    fn quotient(&self) -> &S {
        &self.space
    }

    fn project(&self, p: &S::Point) -> S::Point {
        p.clone()
    }
}

impl<S: Space + Clone> Covering for IdentityProjection<S> {
    fn preimages(&self, q: &S::Point) -> Vec<S::Point> {
        vec![q.clone()]
    }
}

impl<S: Space + Clone> StrictSection for IdentityProjection<S> {
    fn section(&self, q: &S::Point) -> S::Point {
        q.clone()
    }
}

/// Orbit map of the reflection in `x₀ = 0`: folding onto the upper hemisphere.
#[derive(Clone, Debug)]
pub struct HemisphereFold {
    quotient: Hemisphere,
}

impl HemisphereFold {
    pub fn new(dim: usize) -> Self {
        HemisphereFold {
            quotient: Hemisphere::new(dim),
        }
    }
}

impl OrbitProjection for HemisphereFold {
    type Source = Sphere;
    type Quotient = Hemisphere;

    fn quotient(&self) -> &Hemisphere {
        &self.quotient
    }

    fn project(&self, p: &Vec<f64>) -> Vec<f64> {
        super::space::fold(p)
    }
}

impl StrictSection for HemisphereFold {
    fn section(&self, q: &Vec<f64>) -> Vec<f64> {
        q.clone()
    }
}

/// The antipodal double cover S¹ → S¹/±1, with the quotient identified with
/// a circle by angle doubling.
#[derive(Clone, Debug)]
pub struct CircleDoubling {
    quotient: Sphere,
}

impl Default for CircleDoubling {
    fn default() -> Self {
        CircleDoubling { quotient: Sphere::new(1) }
    }
}

impl OrbitProjection for CircleDoubling {
    type Source = Sphere;
    type Quotient = Sphere;

    fn quotient(&self) -> &Sphere {
        &self.quotient
    }

    fn project(&self, p: &Vec<f64>) -> Vec<f64> {
        vec![p[0] * p[0] - p[1] * p[1], 2.0 * p[0] * p[1]]
    }
}

impl Covering for CircleDoubling {
    fn preimages(&self, q: &Vec<f64>) -> Vec<Vec<f64>> {
        let half = q[1].atan2(q[0]) / 2.0;
        let p = vec![half.cos(), half.sin()];
        vec![p.clone(), vec![-p[0], -p[1]]]
    }
}

/// Quotient of a torus by the half-period translation in the first coordinate.
#[derive(Clone, Debug)]
pub struct TorusHalfTurnCover {
    quotient: Torus,
    shift: f64,
}

impl TorusHalfTurnCover {
    pub fn new(torus: &Torus) -> Self {
        let mut periods = torus.periods.clone();
        periods[0] /= 2.0;
        TorusHalfTurnCover {
            quotient: Torus { periods },
            shift: torus.periods[0] / 2.0,
        }
    }
}

impl OrbitProjection for TorusHalfTurnCover {
    type Source = Torus;
    type Quotient = Torus;

    fn quotient(&self) -> &Torus {
        &self.quotient
    }

    fn project(&self, p: &Vec<f64>) -> Vec<f64> {
        self.quotient.wrap(p)
    }
}

impl Covering for TorusHalfTurnCover {
    fn preimages(&self, q: &Vec<f64>) -> Vec<Vec<f64>> {
        let mut other = q.clone();
        other[0] += self.shift;
        vec![q.clone(), other]
    }
}

/// Orbit map of a simplicial action on a graph onto the quotient graph.
#[derive(Clone, Debug)]
pub struct GraphOrbitMap {
    action: GroupAction,
    quotient: GraphSpace,
    labels: BTreeMap<Vertex, Vertex>,
    has_section: bool,
}

impl GraphOrbitMap {
    /// Requires the action to be regular on the graph itself, so that the
    /// quotient graph needs no subdivision.
    pub fn new(action: &GroupAction) -> Result<Self, PathError> {
        let q = quotient_complex(action)?;
        if q.subdivisions > 0 {
            return Err(PathError::ActionMismatch(
                "graph action is not regular; subdivide the graph first".into(),
            ));
        }
        let quotient = GraphSpace::new(q.complex.clone())?;
        // orbit labels are the smallest vertex of each orbit, so the labelled
        // subgraph is a candidate section whenever its edges exist upstairs
        let has_section = q.complex.iter().all(|s| action.complex().contains(s));
        Ok(GraphOrbitMap {
            action: action.clone(),
            quotient,
            labels: q.orbit_map,
            has_section,
        })
    }

    pub fn has_section(&self) -> bool {
        self.has_section
    }
}

impl OrbitProjection for GraphOrbitMap {
    type Source = GraphSpace;
    type Quotient = GraphSpace;

    fn quotient(&self) -> &GraphSpace {
        &self.quotient
    }

    fn project(&self, p: &GraphPoint) -> GraphPoint {
        GraphPoint::on_edge(self.labels[&p.a], self.labels[&p.b], p.t)
    }
}

impl Covering for GraphOrbitMap {
    fn preimages(&self, q: &GraphPoint) -> Vec<GraphPoint> {
        let base = if q.is_vertex() {
            GraphPoint::vertex(q.a)
        } else {
            let e = self
                .action
                .complex()
                .simplices(1)
                .iter()
                .find(|e| {
                    let (la, lb) = (self.labels[&e[0]], self.labels[&e[1]]);
                    (la, lb) == (q.a, q.b) || (lb, la) == (q.a, q.b)
                })
                .expect("every quotient edge has a preimage");
            if self.labels[&e[0]] == q.a {
                GraphPoint::on_edge(e[0], e[1], q.t)
            } else {
                GraphPoint::on_edge(e[1], e[0], q.t)
            }
        };
        let mut out: Vec<GraphPoint> = Vec::new();
        for g in self.action.group().elements() {
            let p = if base.is_vertex() {
                GraphPoint::vertex(self.action.act(g, base.a))
            } else {
                GraphPoint::on_edge(self.action.act(g, base.a), self.action.act(g, base.b), base.t)
            };
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

impl StrictSection for GraphOrbitMap {
    fn section(&self, q: &GraphPoint) -> GraphPoint {
        q.clone()
    }
}

/// Largest sphere-coordinate disagreement between `ρ∘s` and the identity on
/// the quotient's sample grid.
pub fn section_defect<R: StrictSection>(proj: &R, r: usize) -> f64 {
    let q = proj.quotient();
    q.grid(r)
        .iter()
        .map(|p| q.dist(&proj.project(&proj.section(p)), p))
        .fold(0.0, f64::max)
}
