//! Sampled certification of planner covers.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::pathspace::{validate_broken_path, BrokenPath, GSpace, Space, Tolerances, DEFAULT_SAMPLES};
use crate::planners::{CoverSet, PlannerCover};

pub const DEFAULT_SEED: u64 = 0x5eed_ef7c;

/// Step size of the random continuity probes.
pub const PROBE_STEP: f64 = 1e-3;

/// Grid neighbours of each sample used for the adjacent-pair continuity check.
const NEIGHBOURS: usize = 2;

/// Samples on the segment joining two compared pairs.
const SEGMENT_SAMPLES: usize = 9;

/// Sampling parameters of a certification run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyParams {
    /// Grid points per factor; pairs are taken from the grid squared.
    pub grid: usize,
    pub epsilon: f64,
    pub delta: f64,
    /// Continuity modulus L.
    pub modulus: f64,
    /// Samples per path leg.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            grid: 32,
            epsilon: 0.05,
            delta: 1e-6,
            modulus: 10.0,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

impl VerifyParams {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            delta: self.delta,
            ..Tolerances::default()
        }
    }

    pub fn label(&self) -> String {
        format!(
            "certified at resolution (R={}, ε={}, δ={:e}, L={})",
            self.grid, self.epsilon, self.delta, self.modulus
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// The pair lies in no set at margin ε.
    Coverage,
    /// The selected set's section failed to produce a path.
    Section,
    /// The emitted broken path does not validate.
    Validation,
    /// Nearby inputs inside one set produced distant outputs.
    Continuity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Refutation {
    pub condition: Condition,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub set: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub cover: String,
    pub stage: usize,
    pub claimed_bound: usize,
    pub params: VerifyParams,
    pub pairs_checked: usize,
    pub continuity_checks: usize,
    pub refutation: Option<Refutation>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.refutation.is_none()
    }

    pub fn certified_bound(&self) -> Option<usize> {
        self.is_certified().then_some(self.claimed_bound)
    }
}

/// Largest sample-wise distance between two broken paths, or infinity when
/// their shapes differ.
fn output_distance<S: Space>(space: &S, a: &BrokenPath<S::Point>, b: &BrokenPath<S::Point>) -> f64 {
    if a.stage() != b.stage() || a.legs().iter().zip(b.legs()).any(|(p, q)| p.len() != q.len()) {
        return f64::INFINITY;
    }
    a.legs()
        .iter()
        .zip(b.legs())
        .flat_map(|(p, q)| p.points().iter().zip(q.points()).map(|(u, v)| space.dist(u, v)))
        .fold(0.0, f64::max)
}

fn nearest<S: Space>(space: &S, pts: &[S::Point]) -> Vec<Vec<usize>> {
    (0..pts.len())
        .map(|i| {
            let mut d: Vec<(f64, usize)> = (0..pts.len())
                .filter(|&j| j != i)
                .map(|j| (space.dist(&pts[i], &pts[j]), j))
                .collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            d.into_iter().take(NEIGHBOURS).map(|(_, j)| j).collect()
        })
        .collect()
}

/// Whether the geodesic segment from `(x, y)` to `(x2, y2)` in `X × X` stays
/// in `set` at margin ε on [`SEGMENT_SAMPLES`] samples.
fn joined_within<S: Space>(
    space: &S,
    set: &CoverSet<S::Point>,
    (x, y): (&S::Point, &S::Point),
    (x2, y2): (&S::Point, &S::Point),
    epsilon: f64,
) -> bool
where
    S::Point: 'static,
{
    let (Ok(sx), Ok(sy)) = (space.geodesic(x, x2, SEGMENT_SAMPLES), space.geodesic(y, y2, SEGMENT_SAMPLES)) else {
        return false;
    };
    sx.points().iter().zip(sy.points()).all(|(u, v)| set.contains(u, v, epsilon))
}

fn check_pair<S: Space>(
    gspace: &GSpace<S>,
    cover: &PlannerCover<S::Point>,
    params: &VerifyParams,
    probe_x: bool,
    (xs, ys): (&[S::Point], &[S::Point]),
    (nx, ny): (&[Vec<usize>], &[Vec<usize>]),
    (a, b): (usize, usize),
) -> (Option<Refutation>, usize)
where
    S::Point: 'static,
{
    let space = &gspace.space;
    let (x, y) = (&xs[a], &ys[b]);
    let refute = |condition, set: Option<&str>, detail: String| Refutation {
        condition,
        x: space.coords(x),
        y: space.coords(y),
        set: set.map(str::to_string),
        detail,
    };
    let Some(i) = cover.select(x, y, params.epsilon) else {
        return (Some(refute(Condition::Coverage, None, format!("no set has clearance above ε = {}", params.epsilon))), 0);
    };
    let set = &cover.sets[i];
    let out = match set.section(x, y) {
        Ok(bp) => bp,
        Err(e) => return (Some(refute(Condition::Section, Some(&set.name), e.to_string())), 0),
    };
    let tol = params.tolerances();
    let report = validate_broken_path(gspace, &out, (x, y), &tol);
    if let Some(why) = report.failure(&tol) {
        return (Some(refute(Condition::Validation, Some(&set.name), why)), 0);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ ((a * ys.len() + b) as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut nearby: Vec<(S::Point, S::Point)> = Vec::new();
    if probe_x {
        nearby.extend(nx[a].iter().map(|&j| (xs[j].clone(), y.clone())));
    }
    nearby.extend(ny[b].iter().map(|&j| (x.clone(), ys[j].clone())));
    if probe_x {
        nearby.push((space.nudge(x, PROBE_STEP, &mut rng), y.clone()));
    }
    nearby.push((x.clone(), space.nudge(y, PROBE_STEP, &mut rng)));

    let mut checks = 0;
    for (x2, y2) in nearby {
        if !joined_within(space, set, (x, y), (&x2, &y2), params.epsilon) {
            continue;
        }
        checks += 1;
        let other = match set.section(&x2, &y2) {
            Ok(bp) => bp,
            Err(e) => return (Some(refute(Condition::Section, Some(&set.name), format!("near this pair: {e}"))), checks),
        };
        let input = space.dist(x, &x2) + space.dist(y, &y2);
        let diff = output_distance(space, &out, &other);
        if !(diff <= params.modulus * input + params.epsilon) {
            return (
                Some(refute(
                    Condition::Continuity,
                    Some(&set.name),
                    format!("input moved {input:.3e}, output moved {diff:.3e}"),
                )),
                checks,
            );
        }
    }
    (None, checks)
}

fn verify_pairs<S: Space>(
    gspace: &GSpace<S>,
    cover: &PlannerCover<S::Point>,
    params: &VerifyParams,
    xs: &[S::Point],
    ys: &[S::Point],
    probe_x: bool,
) -> Certificate
where
    S::Point: 'static,
{
    let nx = nearest(&gspace.space, xs);
    let ny = nearest(&gspace.space, ys);
    let results: Vec<(Option<Refutation>, usize)> = (0..xs.len() * ys.len())
        .into_par_iter()
        .map(|p| check_pair(gspace, cover, params, probe_x, (xs, ys), (&nx, &ny), (p / ys.len(), p % ys.len())))
        .collect();
    let continuity_checks = results.iter().map(|r| r.1).sum();
    let refutation = results.into_iter().find_map(|r| r.0);
    Certificate {
        cover: cover.name.clone(),
        stage: cover.stage,
        claimed_bound: cover.claimed_bound(),
        params: *params,
        pairs_checked: xs.len() * ys.len(),
        continuity_checks,
        refutation,
    }
}

/// Certifies `tc^{G,k} ≤ claimed_bound` on the grid: coverage at margin ε,
/// validation of every emitted broken path, and sampled continuity with
/// modulus L (slack ε) on adjacent grid pairs and seeded probes.
pub fn verify_cover<S: Space>(gspace: &GSpace<S>, cover: &PlannerCover<S::Point>, params: &VerifyParams) -> Certificate
where
    S::Point: 'static,
{
    let grid = gspace.space.grid(params.grid);
    verify_pairs(gspace, cover, params, &grid, &grid, true)
}

/// As [`verify_cover`] on the pairs `(x₀, y)`, certifying `cat^{G,k}`.
pub fn verify_cat_cover<S: Space>(
    gspace: &GSpace<S>,
    basepoint: &S::Point,
    cover: &PlannerCover<S::Point>,
    params: &VerifyParams,
) -> Certificate
where
    S::Point: 'static,
{
    let grid = gspace.space.grid(params.grid);
    verify_pairs(gspace, cover, params, std::slice::from_ref(basepoint), &grid, false)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::models;
    use crate::pathspace::space::{chord, half_circle, neg, slerp};
    use crate::pathspace::{GraphOrbitMap, GraphSpace, OrbitProjection, Sphere};
    use crate::planners::{self, CoverSet};
    use crate::symmetry::GroupAction;

    #[test]
    fn point_space_single_set() {
        let g = GraphSpace::new(models::point()).unwrap();
        let gs = GSpace::trivial(g.clone());
        let c = planners::tree_cover(&g, 4).unwrap();
        let cert = verify_cover(&gs, &c, &VerifyParams::default());
        assert_eq!(cert.certified_bound(), Some(0));
    }

    #[test]
    fn involution_two_stage_certifies() {
        let gs = GSpace::sphere_reflection(2);
        let p = VerifyParams::default();
        let c = planners::involution_two_stage_cover(&gs, p.samples).unwrap();
        let cert = verify_cover(&gs, &c, &p);
        assert!(cert.is_certified(), "{:?}", cert.refutation);
        assert_eq!(cert.certified_bound(), Some(1));
        assert_eq!(cert.pairs_checked, 32 * 32);
        assert!(cert.continuity_checks > 0);
    }

    /// A single global "section": shortest arcs, and a fixed half circle for
    /// exactly antipodal pairs.
    fn adversarial_s2() -> PlannerCover<Vec<f64>> {
        let set = CoverSet::new(
            "everything",
            1,
            Arc::new(|_: &Vec<f64>, _: &Vec<f64>| f64::INFINITY),
            Arc::new(|x: &Vec<f64>, y: &Vec<f64>| {
                let p = if chord(x, &neg(y)) < 1e-9 {
                    let v = if x[2].abs() < 0.9 { vec![0.0, 0.0, 1.0] } else { vec![1.0, 0.0, 0.0] };
                    let t: f64 = x.iter().zip(&v).map(|(a, b)| a * b).sum();
                    let v: Vec<f64> = v.iter().zip(x).map(|(b, a)| b - t * a).collect();
                    half_circle(x, &crate::pathspace::space::normalize(v), 64)?
                } else {
                    slerp(x, y, 64)?
                };
                Ok(BrokenPath::single(p))
            }),
        );
        PlannerCover::new("adversarial", vec![set]).unwrap()
    }

    #[test]
    fn adversarial_cover_is_refuted() {
        let gs = GSpace::trivial(Sphere::new(2));
        let cert = verify_cover(&gs, &adversarial_s2(), &VerifyParams::default());
        let r = cert.refutation.expect("tc(S²) = 0 must be refuted");
        assert_eq!(r.condition, Condition::Continuity);
        // the witness pair is (nearly) antipodal
        assert!(chord(&r.x, &neg(&r.y)) < 0.5);
    }

    #[test]
    fn missing_set_is_a_coverage_failure() {
        let gs = GSpace::trivial(Sphere::new(2));
        let mut c = planners::farber_sphere_cover(2, 32);
        c.sets.truncate(1);
        let cert = verify_cover(&gs, &c, &VerifyParams::default());
        assert_eq!(cert.refutation.unwrap().condition, Condition::Coverage);
    }

    #[test]
    fn flip_circle_cat_cover() {
        let a = GroupAction::from_generators(models::cycle(6), &[vec![0, 5, 4, 3, 2, 1]]).unwrap();
        let gs = GSpace::from_graph_action(&a, "flip").unwrap();
        let rho = GraphOrbitMap::new(&a).unwrap();
        let qc = planners::tree_cover(rho.quotient(), 32).unwrap();
        let c = planners::cover_from_strict_section(&gs, Arc::new(rho), &qc).unwrap();
        let p = VerifyParams::default();
        assert_eq!(verify_cover(&gs, &c, &p).certified_bound(), Some(0));
        let x0 = gs.space.grid(1)[0].clone();
        assert_eq!(verify_cat_cover(&gs, &x0, &c, &p).certified_bound(), Some(0));
    }

    #[test]
    fn deterministic() {
        let gs = GSpace::trivial(Sphere::new(2));
        let p = VerifyParams {
            grid: 12,
            ..VerifyParams::default()
        };
        let a = verify_cover(&gs, &adversarial_s2(), &p);
        let b = verify_cover(&gs, &adversarial_s2(), &p);
        assert_eq!(a, b);
    }
}
