//! Planners transferred from a cover of the orbit space: through a strict
//! section (stage 3) or by lifting along a covering (stage 2).

use std::sync::Arc;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CoverSet, PlannerCover, PlannerError};
use crate::complex::{models, SimplicialComplex, Vertex};
use crate::pathspace::{
    section_defect, BrokenPath, Covering, GSpace, GraphOrbitMap, GraphSpace, PathError, SampledPath, Space,
    StrictSection,
};
use crate::symmetry::{FiniteGroup, GroupAction};

/// Largest admissible `ρ∘s` defect on the quotient grid.
pub const SECTION_TOLERANCE: f64 = 1e-9;

fn require_stage_one<Q>(cover: &PlannerCover<Q>) -> Result<(), PlannerError> {
    if cover.stage != 1 {
        return Err(PlannerError::Unsupported(format!(
            "orbit-space cover must have stage 1, got {}",
            cover.stage
        )));
    }
    Ok(())
}

/// `(c_x, s∘σ([x],[y]), c_y)` for each set of an orbit-space cover.
pub fn cover_from_strict_section<S, R>(
    _gspace: &GSpace<S>,
    proj: Arc<R>,
    quotient_cover: &PlannerCover<<R::Quotient as Space>::Point>,
) -> Result<PlannerCover<S::Point>, PlannerError>
where
    S: Space + Clone + 'static,
    R: StrictSection<Source = S> + 'static,
    <R::Quotient as Space>::Point: 'static,
{
    require_stage_one(quotient_cover)?;
    let defect = section_defect(proj.as_ref(), 64);
    if !(defect <= SECTION_TOLERANCE) {
        return Err(PlannerError::SectionCheckFailed { defect });
    }
    let sets = quotient_cover
        .sets
        .iter()
        .map(|qs| {
            let (qc, qsec) = (qs.clone(), qs.clone());
            let (pc, ps) = (proj.clone(), proj.clone());
            CoverSet::new(
                &qs.name,
                3,
                Arc::new(move |x: &S::Point, y: &S::Point| qc.clearance(&pc.project(x), &pc.project(y))),
                Arc::new(move |x: &S::Point, y: &S::Point| {
                    let q = qsec.section(&ps.project(x), &ps.project(y))?;
                    let middle = q.legs()[0].map(|p| ps.section(p));
                    let n = middle.len();
                    BrokenPath::new(vec![SampledPath::constant(x, n)?, middle, SampledPath::constant(y, n)?])
                }),
            )
        })
        .collect();
    PlannerCover::new(&format!("section({})", quotient_cover.name), sets)
}

/// Fails when some non-identity element moves a sampled point by less than 1e-6.
fn check_free_on_samples<S: Space>(gspace: &GSpace<S>) -> Result<(), PlannerError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf4ee);
    let mut pts = gspace.space.grid(64);
    let nudged: Vec<S::Point> = pts.iter().map(|p| gspace.space.nudge(p, 0.05, &mut rng)).collect();
    pts.extend(nudged);
    let e = gspace.group.identity();
    for g in gspace.group.elements().filter(|&g| g != e) {
        if pts.iter().any(|p| gspace.space.dist(&gspace.act(g, p), p) < 1e-6) {
            return Err(PlannerError::NotFree { element: g });
        }
    }
    Ok(())
}

/// Lifts a sampled quotient path starting at `x` by following the nearest
/// preimage. Each step must pick a preimage less than half as far as the
/// runner-up.
pub fn lift_path<S: Space, R: Covering<Source = S>>(
    space: &S,
    proj: &R,
    x: &S::Point,
    path: &SampledPath<<R::Quotient as Space>::Point>,
) -> Result<SampledPath<S::Point>, PathError> {
    let mut lifted = vec![x.clone()];
    for (step, q) in path.points().iter().enumerate().skip(1) {
        let prev = lifted.last().unwrap();
        let mut cands: Vec<(f64, S::Point)> = proj.preimages(q).into_iter().map(|p| (space.dist(prev, &p), p)).collect();
        cands.sort_by(|a, b| a.0.total_cmp(&b.0));
        if cands.len() > 1 {
            let ratio = cands[0].0 / cands[1].0;
            if !(ratio < 0.5) {
                return Err(PathError::LiftDivergence { step, ratio });
            }
        }
        lifted.push(cands.swap_remove(0).1);
    }
    SampledPath::new(lifted)
}

/// `(lift of σ([x],[y]) from x, c_y)` for each set of an orbit-space cover.
pub fn cover_from_covering_lift<S, R>(
    gspace: &GSpace<S>,
    proj: Arc<R>,
    quotient_cover: &PlannerCover<<R::Quotient as Space>::Point>,
) -> Result<PlannerCover<S::Point>, PlannerError>
where
    S: Space + Clone + 'static,
    R: Covering<Source = S> + 'static,
    <R::Quotient as Space>::Point: 'static,
{
    require_stage_one(quotient_cover)?;
    check_free_on_samples(gspace)?;
    let sets = quotient_cover
        .sets
        .iter()
        .map(|qs| {
            let (qc, qsec) = (qs.clone(), qs.clone());
            let (pc, ps) = (proj.clone(), proj.clone());
            let space = gspace.space.clone();
            CoverSet::new(
                &qs.name,
                2,
                Arc::new(move |x: &S::Point, y: &S::Point| qc.clearance(&pc.project(x), &pc.project(y))),
                Arc::new(move |x: &S::Point, y: &S::Point| {
                    let q = qsec.section(&ps.project(x), &ps.project(y))?;
                    let lift = lift_path(&space, ps.as_ref(), x, &q.legs()[0])?;
                    let n = lift.len();
                    BrokenPath::new(vec![lift, SampledPath::constant(y, n)?])
                }),
            )
        })
        .collect();
    PlannerCover::new(&format!("lift({})", quotient_cover.name), sets)
}

/// A wedge of |G| copies of an m-cycle at vertex 0, with G permuting the copies.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub action: GroupAction,
    pub gspace: GSpace<GraphSpace>,
    pub projection: GraphOrbitMap,
    /// The base cycle, equal to the orbit space.
    pub base: GraphSpace,
}

/// Copy slot `c` holds the vertices `1 + c(m−1) .. c(m−1) + m−1`; slot 0
/// belongs to the identity, so the orbit labels reproduce the base cycle.
pub fn wedge_of_cycles(group: &FiniteGroup, m: usize) -> Result<Wedge, PlannerError> {
    if m < 3 {
        return Err(PlannerError::Unsupported("wedge summands need at least 3 vertices".into()));
    }
    let e = group.identity();
    let slots: Vec<usize> = std::iter::once(e).chain(group.elements().filter(|&g| g != e)).collect();
    let slot_of = |g: usize| slots.iter().position(|&s| s == g).unwrap();
    let id = |c: usize, v: usize| -> Vertex {
        if v == 0 {
            0
        } else {
            (1 + c * (m - 1) + (v - 1)) as Vertex
        }
    };
    let mut edges = Vec::new();
    for c in 0..slots.len() {
        for v in 0..m {
            edges.push(vec![id(c, v), id(c, (v + 1) % m)]);
        }
    }
    let complex = SimplicialComplex::from_maximal(&edges).map_err(crate::symmetry::SymmetryError::from)?;
    let total = 1 + slots.len() * (m - 1);
    let maps: Vec<Vec<Vertex>> = group
        .elements()
        .map(|h| {
            let mut map = vec![0 as Vertex; total];
            for (c, &g) in slots.iter().enumerate() {
                let to = slot_of(group.mul(h, g));
                for v in 1..m {
                    map[id(c, v) as usize] = id(to, v);
                }
            }
            map
        })
        .collect();
    let action = GroupAction::new(group.clone(), complex, maps)?;
    let gspace = GSpace::from_graph_action(&action, "wedge-permutation")?;
    let projection = GraphOrbitMap::new(&action)?;
    let base = GraphSpace::new(models::cycle(m as u32))?;
    if crate::pathspace::OrbitProjection::quotient(&projection).complex() != base.complex() {
        return Err(PlannerError::Unsupported("wedge quotient differs from the base cycle".into()));
    }
    Ok(Wedge {
        action,
        gspace,
        projection,
        base,
    })
}

/// Stage-3 planner on the wedge obtained from a stage-1 cover of the base
/// cycle through the identity-copy section.
pub fn wedge_planner(
    wedge: &Wedge,
    base_cover: &PlannerCover<crate::pathspace::GraphPoint>,
) -> Result<PlannerCover<crate::pathspace::GraphPoint>, PlannerError> {
    let mut c = cover_from_strict_section(&wedge.gspace, Arc::new(wedge.projection.clone()), base_cover)?;
    c.name = format!("wedge({})", base_cover.name);
    Ok(c)
}
