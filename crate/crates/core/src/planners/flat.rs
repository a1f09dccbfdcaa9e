//! Planners on tori and graphs.

use std::sync::Arc;

use super::{CoverSet, PlannerCover, PlannerError};
use crate::pathspace::{BrokenPath, GraphPoint, GraphSpace, PathError, Space, Torus};

/// Distance between two points of `ℝ/ℤ`.
fn circle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Stage-1 cover of the n-torus by n+1 sets.
///
/// Set k cuts each circle factor at the relative displacement
/// `c_k = 1/2 + k/(n+1)`, and moves straight along the displacement
/// representative that avoids the cut. A pair misses every set only if some
/// coordinate displacement sits on each of the n+1 cuts, which is impossible
/// with n coordinates.
pub fn torus_cover(torus: &Torus, samples: usize) -> PlannerCover<Vec<f64>> {
    let dim = torus.dim();
    let n = samples;
    let sets = (0..=dim)
        .map(|k| {
            let cut = (0.5 + k as f64 / (dim + 1) as f64).rem_euclid(1.0);
            let (tc, ts) = (torus.clone(), torus.clone());
            CoverSet::new(
                &format!("cut-{k}"),
                1,
                Arc::new(move |x: &Vec<f64>, y: &Vec<f64>| {
                    (0..tc.dim())
                        .map(|i| {
                            let p = tc.periods[i];
                            p * circle_gap((y[i] - x[i]) / p, cut)
                        })
                        .fold(f64::INFINITY, f64::min)
                }),
                Arc::new(move |x: &Vec<f64>, y: &Vec<f64>| {
                    let d: Vec<f64> = (0..ts.dim())
                        .map(|i| {
                            let p = ts.periods[i];
                            // representative in (cut − 1, cut)
                            let r = ((y[i] - x[i]) / p - cut).rem_euclid(1.0) + cut - 1.0;
                            r * p
                        })
                        .collect();
                    Ok(BrokenPath::single(ts.segment(x, &d, y, n)?))
                }),
            )
        })
        .collect();
    PlannerCover::new(&format!("farber-T{dim}"), sets).expect("nonempty cover")
}

/// Stage-1 cover of a cycle graph: geodesics away from antipodal pairs, and
/// the positive direction away from the diagonal.
pub fn cycle_cover(graph: &GraphSpace, samples: usize) -> Result<PlannerCover<GraphPoint>, PlannerError> {
    let m = graph.cycle_order().ok_or(PathError::NotACycle)?.len() as f64;
    let n = samples;
    let (g1, g2, g3, g4) = (graph.clone(), graph.clone(), graph.clone(), graph.clone());
    let short = CoverSet::new(
        "geodesic",
        1,
        Arc::new(move |x: &GraphPoint, y: &GraphPoint| m / 2.0 - g1.dist(x, y)),
        Arc::new(move |x: &GraphPoint, y: &GraphPoint| Ok(BrokenPath::single(g2.geodesic(x, y, n)?))),
    );
    let around = CoverSet::new(
        "positive",
        1,
        Arc::new(move |x: &GraphPoint, y: &GraphPoint| g3.dist(x, y)),
        Arc::new(move |x: &GraphPoint, y: &GraphPoint| Ok(BrokenPath::single(g4.positive_path(x, y, n)?))),
    );
    Ok(PlannerCover::new(&format!("farber-C{}", m as usize), vec![short, around])?)
}

/// Single-set cover of a tree by its unique geodesics.
pub fn tree_cover(graph: &GraphSpace, samples: usize) -> Result<PlannerCover<GraphPoint>, PlannerError> {
    let verts = graph.complex().vertices();
    let connected = verts.iter().all(|&v| graph.vertex_distance(verts[0], v).is_finite());
    if !connected || graph.edges().len() + 1 != verts.len() {
        return Err(PlannerError::Unsupported("tree_cover needs a tree".into()));
    }
    let g = graph.clone();
    let n = samples;
    let set = CoverSet::new(
        "geodesic",
        1,
        Arc::new(|_: &GraphPoint, _: &GraphPoint| f64::INFINITY),
        Arc::new(move |x: &GraphPoint, y: &GraphPoint| Ok(BrokenPath::single(g.geodesic(x, y, n)?))),
    );
    Ok(PlannerCover::new("tree-geodesic", vec![set])?)
}
