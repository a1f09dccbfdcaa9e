#![allow(dead_code)]

use std::path::Path;
use std::sync::Arc;

use efftc::bounds::{verify_cover, Certificate, VerifyParams};
use efftc::complex::{models, SimplicialComplex};
use efftc::pathspace::{
    CircleDoubling, GSpace, GraphOrbitMap, GraphPoint, GraphSpace, HemisphereFold, Sphere, Torus, TorusHalfTurnCover,
};
use efftc::planners::{
    antipodal_jump_cover, cover_from_covering_lift, cover_from_strict_section, cycle_cover, farber_sphere_cover,
    hemisphere_contraction_cover, involution_three_stage_planner, involution_two_stage_cover, torus_cover,
    tree_cover, wedge_of_cycles, wedge_planner, PlannerCover,
};
use efftc::scenario::{build_model, BUILTINS, builtin};
use efftc::symmetry::{FiniteGroup, GroupAction};

pub const SAMPLES: usize = 16;

pub fn quick_params() -> VerifyParams {
    VerifyParams {
        grid: 12,
        samples: SAMPLES,
        ..VerifyParams::default()
    }
}

pub enum CatalogCover {
    Sphere(GSpace<Sphere>, PlannerCover<Vec<f64>>),
    Torus(GSpace<Torus>, PlannerCover<Vec<f64>>),
    Graph(GSpace<GraphSpace>, PlannerCover<GraphPoint>),
}

impl CatalogCover {
    pub fn name(&self) -> String {
        match self {
            CatalogCover::Sphere(g, c) => format!("{} on {}", c.name, g.action_name),
            CatalogCover::Torus(g, c) => format!("{} on {}", c.name, g.action_name),
            CatalogCover::Graph(g, c) => format!("{} on {}", c.name, g.action_name),
        }
    }

    /// Certificates of the cover and of its stage embedding.
    pub fn certify_with_embedding(&self, p: &VerifyParams) -> (Certificate, Certificate) {
        match self {
            CatalogCover::Sphere(g, c) => (verify_cover(g, c, p), verify_cover(g, &c.embed_stage(), p)),
            CatalogCover::Torus(g, c) => (verify_cover(g, c, p), verify_cover(g, &c.embed_stage(), p)),
            CatalogCover::Graph(g, c) => (verify_cover(g, c, p), verify_cover(g, &c.embed_stage(), p)),
        }
    }
}

pub fn hexagon(images: Vec<u32>) -> GroupAction {
    GroupAction::from_generators(models::cycle(6), &[images]).unwrap()
}

pub fn hexagon_antipodal() -> GroupAction {
    hexagon(vec![3, 4, 5, 0, 1, 2])
}

pub fn hexagon_reflection() -> GroupAction {
    hexagon(vec![0, 5, 4, 3, 2, 1])
}

/// ∂Δ³ with the reflection swapping two vertices.
pub fn tetrahedron_swap() -> GroupAction {
    GroupAction::from_generators(models::simplex_boundary(2), &[vec![1, 0, 2, 3]]).unwrap()
}

pub fn catalog_covers() -> Vec<CatalogCover> {
    let n = SAMPLES;
    let mut out = Vec::new();
    for d in 1..=3 {
        out.push(CatalogCover::Sphere(GSpace::trivial(Sphere::new(d)), farber_sphere_cover(d, n)));
    }
    for d in 1..=3 {
        let gs = GSpace::sphere_reflection(d);
        let c = involution_two_stage_cover(&gs, n).unwrap();
        out.push(CatalogCover::Sphere(gs, c));
    }
    let refl = GSpace::sphere_reflection(2);
    out.push(CatalogCover::Sphere(refl.clone(), involution_three_stage_planner(&refl, n).unwrap()));
    out.push(CatalogCover::Sphere(
        refl.clone(),
        cover_from_strict_section(&refl, Arc::new(HemisphereFold::new(2)), &hemisphere_contraction_cover(2, n)).unwrap(),
    ));
    let anti = GSpace::sphere_antipodal(2);
    out.push(CatalogCover::Sphere(anti.clone(), antipodal_jump_cover(&anti, n).unwrap()));
    let circle = GSpace::sphere_antipodal(1);
    out.push(CatalogCover::Sphere(
        circle.clone(),
        cover_from_covering_lift(&circle, Arc::new(CircleDoubling::default()), &farber_sphere_cover(1, n)).unwrap(),
    ));

    let t2 = Torus::standard(2);
    out.push(CatalogCover::Torus(GSpace::trivial(t2.clone()), torus_cover(&t2, n)));
    let ht = GSpace::torus_half_turn(2);
    let proj = TorusHalfTurnCover::new(&ht.space);
    let base = torus_cover(efftc::pathspace::OrbitProjection::quotient(&proj), n);
    out.push(CatalogCover::Torus(ht.clone(), cover_from_covering_lift(&ht, Arc::new(proj), &base).unwrap()));

    let hex = GraphSpace::new(models::cycle(6)).unwrap();
    out.push(CatalogCover::Graph(GSpace::trivial(hex.clone()), cycle_cover(&hex, n).unwrap()));
    let path = GraphSpace::new(SimplicialComplex::from_maximal(&[[0, 1], [1, 2], [2, 3]]).unwrap()).unwrap();
    out.push(CatalogCover::Graph(GSpace::trivial(path.clone()), tree_cover(&path, n).unwrap()));
    for action in [hexagon_antipodal(), hexagon_reflection()] {
        let gs = GSpace::from_graph_action(&action, "hexagon").unwrap();
        let proj = GraphOrbitMap::new(&action).unwrap();
        let q = efftc::pathspace::OrbitProjection::quotient(&proj).clone();
        let cover = if action.is_free() {
            cover_from_covering_lift(&gs, Arc::new(proj), &cycle_cover(&q, n).unwrap()).unwrap()
        } else {
            cover_from_strict_section(&gs, Arc::new(proj), &tree_cover(&q, n).unwrap()).unwrap()
        };
        out.push(CatalogCover::Graph(gs, cover));
    }
    for order in [2, 3] {
        let w = wedge_of_cycles(&FiniteGroup::cyclic(order), 4).unwrap();
        let c = wedge_planner(&w, &cycle_cover(&w.base, n).unwrap()).unwrap();
        out.push(CatalogCover::Graph(w.gspace.clone(), c));
    }
    out
}

/// Every combinatorial action used by the shipped scenarios, plus the
/// hexagon and tetrahedron actions.
pub fn catalog_actions() -> Vec<(String, GroupAction)> {
    let mut out: Vec<(String, GroupAction)> = BUILTINS
        .iter()
        .map(|(id, _)| {
            let s = builtin(id).unwrap();
            (id.to_string(), build_model(&s.space, &s.action, Path::new(".")).unwrap().action)
        })
        .collect();
    out.push(("hexagon-antipodal".into(), hexagon_antipodal()));
    out.push(("hexagon-reflection".into(), hexagon_reflection()));
    out.push(("hexagon-rotation3".into(), hexagon(vec![2, 3, 4, 5, 0, 1])));
    out.push(("tetrahedron-swap".into(), tetrahedron_swap()));
    out
}
