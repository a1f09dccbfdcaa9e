//! Execution of a scenario pipeline into reconciled bound reports.

use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::model::{build_model, Geometry, Model};
use super::table::{table_rows, TableRow};
use super::{ParamOverrides, Scenario, ScenarioError, Step};
use crate::bounds::{
    cd_bound_check, cd_positivity_criterion, chain_violations, orbit_nilpotency_lower_bound, verify_cat_cover,
    verify_cover, zero_divisor_cup_length, Bound, BoundLedger, BoundReport, CdBoundStatus, CriterionVerdict,
    Invariant, Status, VerifyParams,
};
use crate::pathspace::{
    CircleDoubling, GSpace, GraphOrbitMap, GraphPoint, GraphSpace, HemisphereFold, IdentityProjection,
    OrbitProjection, Space, TorusHalfTurnCover,
};
use crate::planners::{
    antipodal_jump_cover, cover_from_covering_lift, cover_from_strict_section, cycle_cover, farber_sphere_cover,
    hemisphere_contraction_cover, involution_three_stage_planner, involution_two_stage_cover, torus_cover,
    tree_cover, wedge_planner, PlannerCover, PlannerError,
};
use crate::symmetry::GroupAction;

/// What one pipeline operation did.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub op: String,
    pub ok: bool,
    pub detail: Value,
}

/// The result of running a scenario. `errors` is empty exactly when every
/// report is consistent, every expectation is met and no check failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub scenario: String,
    pub description: String,
    pub params: VerifyParams,
    pub free: bool,
    pub steps: Vec<StepRecord>,
    pub reports: Vec<BoundReport>,
    pub table: Vec<TableRow>,
    pub warnings: Vec<String>,
    pub errors: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn report(&self, inv: Invariant) -> Option<&BoundReport> {
        self.reports.iter().find(|r| r.invariant == inv)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcome serializes")
    }
}

struct Run<'a> {
    model: &'a Model,
    params: VerifyParams,
    ledger: BoundLedger,
    warnings: Vec<String>,
    errors: Vec<String>,
}

/// Runs `scenario` with parameters `defaults ← scenario.params ← overrides`.
pub fn run_scenario(scenario: &Scenario, base: &Path, overrides: &ParamOverrides) -> Result<Outcome, ScenarioError> {
    let params = overrides.apply(scenario.params.apply(VerifyParams::default()));
    let model = build_model(&scenario.space, &scenario.action, base)?;
    let mut run = Run {
        model: &model,
        params,
        ledger: BoundLedger::new(),
        warnings: Vec::new(),
        errors: Vec::new(),
    };
    let mut steps = Vec::new();
    for step in &scenario.pipeline {
        let (ok, detail) = match run.step(step) {
            Ok(d) => (true, d),
            Err(e) => {
                run.errors.push(format!("{}: {e}", step.name()));
                (false, json!({ "error": e }))
            }
        };
        steps.push(StepRecord {
            op: step.name().to_string(),
            ok,
            detail,
        });
    }

    let free = model.action.is_free();
    for inv in scenario.expected.iter().map(|e| e.invariant).chain(scenario.table.iter().map(|t| t.invariant)) {
        run.ledger.touch(inv);
    }
    run.ledger.propagate(free);
    let reports = run.ledger.reconcile(&scenario.id, &params);
    let mut errors = run.errors;
    for r in reports.iter().filter(|r| r.status == Status::Contradiction) {
        errors.push(format!("contradiction for {}: {}", r.invariant, r.interval()));
    }
    errors.extend(chain_violations(&reports));
    for e in &scenario.expected {
        let Some(r) = reports.iter().find(|r| r.invariant == e.invariant) else {
            errors.push(format!("no report for expected {}", e.invariant));
            continue;
        };
        if e.lower.is_some_and(|l| l != r.lower) || e.upper.is_some() && e.upper != r.upper {
            errors.push(format!(
                "{}: expected {}, got {}",
                e.invariant,
                expected_interval(e.lower, e.upper),
                r.interval()
            ));
        }
    }
    let table = table_rows(&scenario.id, &scenario.table, &reports);
    Ok(Outcome {
        scenario: scenario.id.clone(),
        description: scenario.description.clone(),
        params,
        free,
        steps,
        reports,
        table,
        warnings: run.warnings,
        errors,
    })
}

fn expected_interval(lower: Option<usize>, upper: Option<usize>) -> String {
    let show = |v: Option<usize>| v.map_or("?".to_string(), |v| v.to_string());
    format!("[{}, {}]", show(lower), show(upper))
}

fn graph_base_cover(graph: &GraphSpace, samples: usize) -> Result<PlannerCover<GraphPoint>, PlannerError> {
    if graph.cycle_order().is_some() {
        cycle_cover(graph, samples)
    } else {
        tree_cover(graph, samples)
    }
}

fn unsupported(op: &str, what: &str) -> String {
    format!("{op} is not available for {what}")
}

impl Run<'_> {
    fn step(&mut self, step: &Step) -> Result<Value, String> {
        let op = step.name();
        match step {
            Step::Farber { cat }
            | Step::Involution2 { cat }
            | Step::Involution3 { cat }
            | Step::AntipodalJump { cat }
            | Step::StrictSection { cat }
            | Step::CoveringLift { cat }
            | Step::Wedge { cat } => self.planner(step, *cat),
            Step::ZeroDivisor { classical } => {
                let (action, inv) = if *classical {
                    (GroupAction::trivial(self.model.action.complex().clone()), Invariant::Tc(1))
                } else {
                    (self.model.action.clone(), Invariant::Tc(2))
                };
                let r = zero_divisor_cup_length(&action).map_err(|e| e.to_string())?;
                self.ledger.lower(inv, Bound::new(r.cup_length, op));
                Ok(json!(r))
            }
            Step::CdCriterion => {
                let r = cd_positivity_criterion(&self.model.action).map_err(|e| e.to_string())?;
                if r.verdict == CriterionVerdict::Positive {
                    self.ledger.lower(Invariant::Tc(2), Bound::new(r.lower_bound(), op));
                }
                Ok(json!(r))
            }
            Step::CdBound { elements } => {
                let r = cd_bound_check(&self.model.action, elements.as_deref()).map_err(|e| e.to_string())?;
                match r.status {
                    CdBoundStatus::Pass => {}
                    CdBoundStatus::Fail => self.errors.push(format!("cd-bound: {} > {}", r.lhs, r.rhs)),
                    CdBoundStatus::HypothesisViolated => {
                        self.warnings.push("cd-bound: hypothesis violated, inequality not asserted".into())
                    }
                }
                Ok(json!(r))
            }
            Step::OrbitNilpotency => {
                let r = orbit_nilpotency_lower_bound(&self.model.action).map_err(|e| e.to_string())?;
                self.ledger.lower(Invariant::CatInf, Bound::new(r.nilpotency, op));
                Ok(json!(r))
            }
        }
    }

    fn planner(&mut self, step: &Step, cat: bool) -> Result<Value, String> {
        let op = step.name();
        let n = self.params.samples;
        let err = |e: PlannerError| e.to_string();
        match &self.model.geometry {
            Geometry::Sphere(gs) => {
                let dim = gs.space.dim;
                let cover = match step {
                    Step::Farber { .. } => farber_sphere_cover(dim, n),
                    Step::Involution2 { .. } => involution_two_stage_cover(gs, n).map_err(err)?,
                    Step::Involution3 { .. } => involution_three_stage_planner(gs, n).map_err(err)?,
                    Step::AntipodalJump { .. } => antipodal_jump_cover(gs, n).map_err(err)?,
                    Step::StrictSection { .. } => match gs.action_name.as_str() {
                        "codim1-involution" => cover_from_strict_section(
                            gs,
                            Arc::new(HemisphereFold::new(dim)),
                            &hemisphere_contraction_cover(dim, n),
                        )
                        .map_err(err)?,
                        "trivial" => self.identity_section(gs, farber_sphere_cover(dim, n))?,
                        other => return Err(unsupported(op, &format!("the {other} action on S^{dim}"))),
                    },
                    Step::CoveringLift { .. } => match (gs.action_name.as_str(), dim) {
                        ("antipodal", 1) => {
                            cover_from_covering_lift(gs, Arc::new(CircleDoubling::default()), &farber_sphere_cover(1, n))
                                .map_err(err)?
                        }
                        ("trivial", _) => self.identity_lift(gs, farber_sphere_cover(dim, n))?,
                        (other, _) => return Err(unsupported(op, &format!("the {other} action on S^{dim}"))),
                    },
                    _ => return Err(unsupported(op, "spheres")),
                };
                Ok(self.certify(op, gs, &cover, cat))
            }
            Geometry::Torus(gs) => {
                let cover = match step {
                    Step::Farber { .. } => torus_cover(&gs.space, n),
                    Step::CoveringLift { .. } if gs.action_name == "trivial" => {
                        self.identity_lift(gs, torus_cover(&gs.space, n))?
                    }
                    Step::CoveringLift { .. } => {
                        let proj = TorusHalfTurnCover::new(&gs.space);
                        let base = torus_cover(proj.quotient(), n);
                        cover_from_covering_lift(gs, Arc::new(proj), &base).map_err(err)?
                    }
                    Step::StrictSection { .. } if gs.action_name == "trivial" => {
                        self.identity_section(gs, torus_cover(&gs.space, n))?
                    }
                    _ => return Err(unsupported(op, &format!("the {} action on a torus", gs.action_name))),
                };
                Ok(self.certify(op, gs, &cover, cat))
            }
            Geometry::Graph(gs) => {
                let cover = match step {
                    Step::Farber { .. } => graph_base_cover(&gs.space, n).map_err(err)?,
                    Step::StrictSection { .. } | Step::CoveringLift { .. } => {
                        let proj = GraphOrbitMap::new(&self.model.action).map_err(|e| e.to_string())?;
                        let base = graph_base_cover(proj.quotient(), n).map_err(err)?;
                        if matches!(step, Step::StrictSection { .. }) {
                            cover_from_strict_section(gs, Arc::new(proj), &base).map_err(err)?
                        } else {
                            cover_from_covering_lift(gs, Arc::new(proj), &base).map_err(err)?
                        }
                    }
                    Step::Wedge { .. } => {
                        let w = self.model.wedge.as_ref().ok_or_else(|| unsupported(op, "a space that is not a wedge"))?;
                        wedge_planner(w, &cycle_cover(&w.base, n).map_err(err)?).map_err(err)?
                    }
                    _ => return Err(unsupported(op, "graphs")),
                };
                Ok(self.certify(op, gs, &cover, cat))
            }
            Geometry::None => Err(unsupported(op, "a complex without a geometric model")),
        }
    }

    fn identity_section<S: Space + Clone + 'static>(
        &self,
        gs: &GSpace<S>,
        base: PlannerCover<S::Point>,
    ) -> Result<PlannerCover<S::Point>, String> {
        cover_from_strict_section(gs, Arc::new(IdentityProjection { space: gs.space.clone() }), &base)
            .map_err(|e| e.to_string())
    }

    fn identity_lift<S: Space + Clone + 'static>(
        &self,
        gs: &GSpace<S>,
        base: PlannerCover<S::Point>,
    ) -> Result<PlannerCover<S::Point>, String> {
        cover_from_covering_lift(gs, Arc::new(IdentityProjection { space: gs.space.clone() }), &base)
            .map_err(|e| e.to_string())
    }

    fn certify<S: Space>(&mut self, op: &str, gs: &GSpace<S>, cover: &PlannerCover<S::Point>, cat: bool) -> Value
    where
        S::Point: 'static,
    {
        let cert = verify_cover(gs, cover, &self.params);
        let source = format!("{op} cover {}", cover.name);
        match cert.certified_bound() {
            Some(b) => self.ledger.upper(Invariant::Tc(cover.stage), Bound::new(b, source.clone())),
            None => self.warnings.push(format!("{op}: cover {} refuted at stage {}", cover.name, cover.stage)),
        }
        let mut detail = json!({ "tc": cert });
        if cat {
            let base = gs.space.grid(self.params.grid).into_iter().next().expect("nonempty grid");
            let cc = verify_cat_cover(gs, &base, cover, &self.params);
            match cc.certified_bound() {
                Some(b) => self.ledger.upper(Invariant::Cat(cover.stage), Bound::new(b, source)),
                None => self.warnings.push(format!("{op}: cover {} refuted as a cat cover", cover.name)),
            }
            detail["cat"] = json!(cc);
        }
        detail
    }
}
