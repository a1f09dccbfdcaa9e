//! Planners on spheres: Farber's covers, the involution planners and the
//! antipodal jump planner.

use std::f64::consts::PI;
use std::sync::Arc;

use super::{CoverSet, PlannerCover, PlannerError};
use crate::pathspace::space::{chord, half_circle, neg, normalize, slerp};
use crate::pathspace::{fold, BrokenPath, GSpace, SampledPath, Sphere};

type P = Vec<f64>;

fn basis(m: usize, i: usize) -> P {
    let mut e = vec![0.0; m];
    e[i] = 1.0;
    e
}

/// Shortest arcs on pairs away from the antipodal set.
fn arc_set(n: usize, stage: usize) -> CoverSet<P> {
    CoverSet::new(
        "arc",
        stage,
        Arc::new(|x: &P, y: &P| chord(x, &neg(y))),
        Arc::new(move |x: &P, y: &P| {
            let mut legs = vec![slerp(x, y, n)?];
            for _ in 1..stage {
                legs.push(SampledPath::constant(y, n)?);
            }
            BrokenPath::new(legs)
        }),
    )
}

/// Half great circle from `x` to `−x` along `v`, then the shortest arc to `y`.
fn via_antipode(x: &P, v: &P, y: &P, n: usize) -> Result<SampledPath<P>, crate::pathspace::PathError> {
    half_circle(x, v, n)?.concat(&Sphere::new(x.len() - 1), &slerp(&neg(x), y, n)?)
}

/// Distance from `x` to the nearer of `±eᵢ`.
fn axis_angle(x: &P, i: usize) -> f64 {
    x[i].abs().min(1.0).acos()
}

/// Unit tangent at `x` obtained by projecting `eᵢ`; defined away from `±eᵢ`.
fn axis_field(x: &P, i: usize) -> P {
    let v: P = x.iter().enumerate().map(|(j, &xj)| (if j == i { 1.0 } else { 0.0 }) - x[i] * xj).collect();
    normalize(v)
}

/// Stage-1 cover of Sⁿ with 2 sets for odd n and 3 for even n.
pub fn farber_sphere_cover(dim: usize, samples: usize) -> PlannerCover<P> {
    assert!(dim >= 1);
    let n = samples;
    let mut sets = vec![arc_set(n, 1)];
    if dim % 2 == 1 {
        sets.push(CoverSet::new(
            "rotate",
            1,
            Arc::new(|x: &P, y: &P| chord(x, y)),
            Arc::new(move |x: &P, y: &P| {
                // a nowhere-vanishing tangent field on an odd sphere
                let v: P = x.chunks(2).flat_map(|c| [-c[1], c[0]]).collect();
                Ok(BrokenPath::single(via_antipode(x, &v, y, n)?))
            }),
        ));
    } else {
        for (name, axis) in [("field-a", dim), ("field-b", dim - 1)] {
            sets.push(CoverSet::new(
                name,
                1,
                Arc::new(move |x: &P, y: &P| (1.0 - chord(x, &neg(y))).min(axis_angle(x, axis) - PI / 6.0)),
                Arc::new(move |x: &P, y: &P| Ok(BrokenPath::single(via_antipode(x, &axis_field(x, axis), y, n)?))),
            ));
        }
    }
    PlannerCover::new(&format!("farber-S{dim}"), sets).expect("nonempty cover")
}

fn check_reflection(gs: &GSpace<Sphere>) -> Result<(), PlannerError> {
    let m = gs.space.dim + 1;
    let ok = gs.order() == 2
        && chord(&gs.act(1, &basis(m, 0)), &neg(&basis(m, 0))) < 1e-12
        && (1..m).all(|i| chord(&gs.act(1, &basis(m, i)), &basis(m, i)) < 1e-12);
    if ok {
        Ok(())
    } else {
        Err(PlannerError::WrongAction(format!(
            "expected the reflection x₀ ↦ −x₀ on S^{}, got {}",
            gs.space.dim, gs.action_name
        )))
    }
}

/// `τ(x₀, x₁, x₂, …) = (−x₀, x₂, −x₁, x₄, −x₃, …)`: the reflection composed
/// with a quarter turn in each coordinate pair. It moves every point by at
/// least √2 and never sends `x` to the antipode of `gx`.
fn tau(x: &P) -> P {
    let mut y = vec![-x[0]];
    for c in x[1..].chunks(2) {
        y.push(c[1]);
        y.push(-c[0]);
    }
    y
}

/// Two-set stage-2 cover for the reflection of Sⁿ in `x₀ = 0`.
///
/// For even n the second set jumps from `x` to `gx`, runs to `τ(x)` and then
/// takes the shortest arc to `y`; for odd n the stage-1 Farber cover already
/// has two sets and is embedded.
pub fn involution_two_stage_cover(gs: &GSpace<Sphere>, samples: usize) -> Result<PlannerCover<P>, PlannerError> {
    check_reflection(gs)?;
    let dim = gs.space.dim;
    if dim % 2 == 1 {
        let mut c = farber_sphere_cover(dim, samples).embed_stage();
        c.name = format!("involution2-S{dim}");
        return Ok(c);
    }
    let n = samples;
    let s = gs.space.clone();
    let jump = CoverSet::new(
        "jump-tau",
        2,
        Arc::new(|x: &P, y: &P| chord(y, &neg(&tau(x)))),
        Arc::new(move |x: &P, y: &P| {
            let mut gx = x.clone();
            gx[0] = -gx[0];
            let t = tau(x);
            let second = slerp(&gx, &t, n)?.concat(&s, &slerp(&t, y, n)?)?;
            BrokenPath::new(vec![SampledPath::constant(x, n)?, second])
        }),
    );
    Ok(PlannerCover::new(&format!("involution2-S{dim}"), vec![arc_set(n, 2), jump])?)
}

/// Single-set stage-3 planner for the reflection: fold both endpoints into the
/// upper hemisphere and pass through its pole.
pub fn involution_three_stage_planner(gs: &GSpace<Sphere>, samples: usize) -> Result<PlannerCover<P>, PlannerError> {
    check_reflection(gs)?;
    let n = samples;
    let s = gs.space.clone();
    let pole = s.basis(0);
    let set = CoverSet::new(
        "fold-pole",
        3,
        Arc::new(|_: &P, _: &P| f64::INFINITY),
        Arc::new(move |x: &P, y: &P| {
            let (fx, fy) = (fold(x), fold(y));
            let middle = slerp(&fx, &pole, n)?.concat(&s, &slerp(&pole, &fy, n)?)?;
            BrokenPath::new(vec![SampledPath::constant(x, n)?, middle, SampledPath::constant(y, n)?])
        }),
    );
    Ok(PlannerCover::new(&format!("involution3-S{}", gs.space.dim), vec![set])?)
}

/// Two-set stage-2 cover for the antipodal action: shortest arcs, or a jump
/// to the antipode followed by the shortest arc.
pub fn antipodal_jump_cover(gs: &GSpace<Sphere>, samples: usize) -> Result<PlannerCover<P>, PlannerError> {
    let m = gs.space.dim + 1;
    let e = basis(m, 0);
    if gs.order() != 2 || chord(&gs.act(1, &e), &neg(&e)) > 1e-12 || chord(&gs.act(1, &basis(m, m - 1)), &neg(&basis(m, m - 1))) > 1e-12 {
        return Err(PlannerError::WrongAction(format!("expected the antipodal map, got {}", gs.action_name)));
    }
    let n = samples;
    let jump = CoverSet::new(
        "jump-antipode",
        2,
        Arc::new(|x: &P, y: &P| chord(x, y)),
        Arc::new(move |x: &P, y: &P| BrokenPath::new(vec![SampledPath::constant(x, n)?, slerp(&neg(x), y, n)?])),
    );
    Ok(PlannerCover::new(&format!("antipodal-jump-S{}", gs.space.dim), vec![arc_set(n, 2), jump])?)
}

/// Single-set stage-1 cover of the closed upper hemisphere through its pole.
pub fn hemisphere_contraction_cover(dim: usize, samples: usize) -> PlannerCover<P> {
    let n = samples;
    let s = Sphere::new(dim);
    let pole = s.basis(0);
    let set = CoverSet::new(
        "pole",
        1,
        Arc::new(|_: &P, _: &P| f64::INFINITY),
        Arc::new(move |x: &P, y: &P| Ok(BrokenPath::single(slerp(x, &pole, n)?.concat(&s, &slerp(&pole, y, n)?)?))),
    );
    PlannerCover::new(&format!("contraction-D{dim}"), vec![set]).expect("nonempty cover")
}
