//! Acceptance criteria. Each test prints one PASS/FAIL line straight to
//! stdout, so the lines survive output capture.

mod common;

use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use efftc::bounds::{
    cd_bound_check, cd_positivity_criterion, chain_violations, orbit_nilpotency_lower_bound, verify_cover,
    zero_divisor_cup_length, CdBoundStatus, CriterionVerdict, Invariant, VerifyParams,
};
use efftc::complex::{coboundary_matrix, cohomology, SimplicialComplex, Vertex};
use efftc::pathspace::{GSpace, Space, Sphere};
use efftc::planners::{CoverSet, PlannerCover};
use efftc::scenario::{build_model, builtin, run_scenario, ActionSpec, Outcome, ParamOverrides, SpaceSpec, BUILTINS};
use efftc::symmetry::{product_complex, saturated_diagonal};

use common::*;

fn verdict(number: &str, title: &str, ok: bool, detail: &str, elapsed: Duration) {
    let line = format!(
        "{} criterion {number}: {title} [{detail}] ({:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    writeln!(std::io::stdout().lock(), "{line}").unwrap();
    assert!(ok, "{line}");
}

fn run_builtin(id: &str) -> Outcome {
    run_scenario(&builtin(id).unwrap(), Path::new("."), &ParamOverrides::default()).unwrap()
}

fn interval(o: &Outcome, inv: Invariant) -> (usize, Option<usize>) {
    let r = o.report(inv).unwrap_or_else(|| panic!("{} has no {inv} report", o.scenario));
    (r.lower, r.upper)
}

#[test]
fn criterion_1_involution_sphere_sequence() {
    let t = Instant::now();
    let o = run_builtin("s2-involution");
    let s = builtin("s2-involution").unwrap();
    let action = build_model(&s.space, &s.action, Path::new(".")).unwrap().action;
    let crit = cd_positivity_criterion(&action).unwrap();
    let stages = [1, 2, 3].map(|k| interval(&o, Invariant::Tc(k)));
    let elapsed = t.elapsed();
    let p = o.params;
    let ok = stages[0].1 == Some(2)
        && stages[1] == (1, Some(1))
        && stages[2].1 == Some(0)
        && crit.verdict == CriterionVerdict::Positive
        && crit.lower_bound() == 1
        && (p.grid, p.epsilon, p.delta, p.modulus) == (32, 0.05, 1e-6, 10.0)
        && o.passed()
        && elapsed < Duration::from_secs(30);
    verdict(
        "1",
        "S^2 codim-1 involution gives (2, 1, 0)",
        ok,
        &format!("stage intervals {stages:?}, criterion {:?}", crit.verdict),
        elapsed,
    );
}

#[test]
fn criterion_2_free_antipodal_circle() {
    let t = Instant::now();
    let o = run_builtin("s1-antipodal");
    let elapsed = t.elapsed();
    let stage2 = o.report(Invariant::Tc(2)).unwrap();
    let inf = interval(&o, Invariant::TcInf);
    let ok = stage2.upper == Some(1)
        && stage2.upper_source.as_deref().is_some_and(|s| s.starts_with("covering-lift"))
        && stage2.lower >= 1
        && stage2.lower_source.starts_with("zero-divisor")
        && inf == (1, Some(1))
        && o.passed()
        && elapsed < Duration::from_secs(10);
    verdict("2", "hexagon antipodal gives [1, 1]", ok, &format!("tc^{{G,inf}} {inf:?}"), elapsed);
}

#[test]
fn criterion_3_flip_circle() {
    let t = Instant::now();
    let o = run_builtin("s1-flip");
    let s = builtin("s1-flip").unwrap();
    let action = build_model(&s.space, &s.action, Path::new(".")).unwrap().action;
    let crit = cd_positivity_criterion(&action).unwrap();
    let elapsed = t.elapsed();
    let stage3 = o.report(Invariant::Tc(3)).unwrap();
    let single_set = o
        .steps
        .iter()
        .find(|s| s.op == "strict-section")
        .is_some_and(|s| s.detail["tc"]["claimed_bound"] == 0);
    let ok = stage3.upper == Some(0)
        && single_set
        && crit.verdict == CriterionVerdict::Inconclusive
        && o.passed()
        && elapsed < Duration::from_secs(10);
    verdict(
        "3",
        "S^1 flip: single-set strict-section cover, criterion inconclusive",
        ok,
        &format!("tc^{{G,3}} {}, criterion {:?}", stage3.interval(), crit.verdict),
        elapsed,
    );
}

#[test]
fn criterion_4_wedge_realization() {
    let mut details = Vec::new();
    let mut ok = true;
    let t = Instant::now();
    for id in ["wedge-z2", "wedge-z3"] {
        let start = Instant::now();
        let o = run_builtin(id);
        let r = o.report(Invariant::TcInf).unwrap();
        ok &= r.upper == Some(1)
            && r.upper_source.as_deref().is_some_and(|s| s.starts_with("wedge"))
            && o.passed()
            && start.elapsed() < Duration::from_secs(10);
        details.push(format!("{id} {}", r.interval()));
    }
    verdict("4", "wedges over Z/2 and Z/3 give upper 1", ok, &details.join(", "), t.elapsed());
}

#[test]
fn criterion_5_saturated_diagonal_cd_bound() {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for (name, action) in [
        ("hexagon antipodal", hexagon_antipodal()),
        ("hexagon reflection", hexagon_reflection()),
        ("tetrahedron swap", tetrahedron_swap()),
    ] {
        let start = Instant::now();
        let r = cd_bound_check(&action, None).unwrap();
        ok &= r.status == CdBoundStatus::Pass && r.lhs <= r.rhs && start.elapsed() < Duration::from_secs(60);
        details.push(format!("{name}: {} <= {} ({} simplices)", r.lhs, r.rhs, r.simplices));
    }
    verdict("5", "cd of the saturated diagonal within cd(X) + |G| - 1", ok, &details.join("; "), t.elapsed());
}

#[test]
fn criterion_6_classical_consistency() {
    let t = Instant::now();
    let torus = build_model(&SpaceSpec::Torus { dim: 2 }, &ActionSpec::Named("trivial".into()), Path::new("."))
        .unwrap()
        .action;
    let zd = zero_divisor_cup_length(&torus).unwrap().cup_length;
    let nil = orbit_nilpotency_lower_bound(&torus).unwrap().nilpotency;
    let elapsed = t.elapsed();
    let ok = zd == 2 && nil == 2 && elapsed < Duration::from_secs(5);
    verdict(
        "6",
        "trivial T^2: zero-divisor cup length 2, nilpotency 2",
        ok,
        &format!("zero-divisors {zd}, nilpotency {nil}"),
        elapsed,
    );
}

fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let vertices: Vec<Vertex> = (0..6).collect();
    let facets: Vec<Vec<Vertex>> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let size = rng.gen_range(1..=3);
            let mut f: Vec<Vertex> = vertices.choose_multiple(rng, size).copied().collect();
            f.sort_unstable();
            f
        })
        .collect();
    SimplicialComplex::from_maximal(&facets).unwrap()
}

fn dd_vanishes(k: &SimplicialComplex) -> bool {
    (0..k.dimension().max(0) as usize).all(|d| {
        let (a, b) = (coboundary_matrix(k, d).unwrap(), coboundary_matrix(k, d + 1));
        b.map_or(true, |b| b.mul(&a).is_zero())
    })
}

fn kunneth_holds(k: &SimplicialComplex, l: &SimplicialComplex) -> bool {
    let (bk, bl) = (cohomology(k).betti, cohomology(l).betti);
    let bp = cohomology(&product_complex(k, l).complex).betti;
    (0..bp.len().max(bk.len() + bl.len() - 1)).all(|n| {
        let expected: usize = (0..=n).map(|i| bk.get(i).unwrap_or(&0) * bl.get(n - i).unwrap_or(&0)).sum();
        bp.get(n).copied().unwrap_or(0) == expected
    })
}

#[test]
fn criterion_7_property_suites() {
    let t = Instant::now();
    let mut parts = Vec::new();

    // (a) δ∘δ = 0 and Künneth on 20 seeded random complexes
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs: Vec<(SimplicialComplex, SimplicialComplex)> =
        (0..20).map(|_| (random_complex(&mut rng), random_complex(&mut rng))).collect();
    let a = pairs.iter().all(|(k, l)| dd_vanishes(k) && dd_vanishes(l) && kunneth_holds(k, l));
    parts.push(("a", a));

    // (b) embed_stage preserves certification
    let params = quick_params();
    let mut b = true;
    for c in catalog_covers() {
        let (cert, embedded) = c.certify_with_embedding(&params);
        let same = cert.is_certified() && embedded.is_certified() && embedded.claimed_bound == cert.claimed_bound;
        if !same {
            writeln!(std::io::stdout().lock(), "  7(b) {}: {:?} / {:?}", c.name(), cert.refutation, embedded.refutation)
                .unwrap();
        }
        b &= same;
    }
    parts.push(("b", b));

    // (c) ℸ_g ∩ ℸ_h is the graph of the fixed set of h⁻¹g
    let mut c = true;
    for (name, action) in catalog_actions() {
        let sd = saturated_diagonal(&action, None).unwrap();
        let group = sd.action.group().clone();
        for g in group.elements() {
            for h in group.elements() {
                let k = group.mul(group.inv(h), g);
                let meet = sd.slice(g).unwrap().intersection(sd.slice(h).unwrap());
                let fixed = sd.action.complex().filter(|s| s.iter().all(|&v| sd.action.act(k, v) == v));
                let graph: Vec<Vec<Vertex>> = fixed.iter().map(|s| sd.graph_simplex(g, s)).collect();
                let image = if graph.is_empty() {
                    SimplicialComplex::empty()
                } else {
                    SimplicialComplex::from_maximal(&graph).unwrap()
                };
                if meet != image {
                    writeln!(std::io::stdout().lock(), "  7(c) {name}: g={g}, h={h}").unwrap();
                    c = false;
                }
            }
        }
    }
    parts.push(("c", c));

    // (d) the chain check never flags a shipped scenario
    let reports: Vec<_> = BUILTINS.iter().flat_map(|(id, _)| run_builtin(id).reports).collect();
    let violations = chain_violations(&reports);
    parts.push(("d", violations.is_empty()));

    // (e) a single global planner on S² is refuted
    let gs = GSpace::trivial(Sphere::new(2));
    let space = gs.space.clone();
    let everything = CoverSet::new(
        "everything",
        1,
        Arc::new(|_: &Vec<f64>, _: &Vec<f64>| 1.0),
        Arc::new(move |x: &Vec<f64>, y: &Vec<f64>| {
            Ok(efftc::pathspace::BrokenPath::single(space.geodesic(x, y, SAMPLES)?))
        }),
    );
    let cover = PlannerCover::new("adversarial", vec![everything]).unwrap();
    let cert = verify_cover(&gs, &cover, &VerifyParams::default());
    parts.push(("e", cert.refutation.is_some()));

    let elapsed = t.elapsed();
    let ok = parts.iter().all(|p| p.1) && elapsed < Duration::from_secs(300);
    let detail = parts.iter().map(|(n, p)| format!("{n}={}", if *p { "ok" } else { "fail" })).collect::<Vec<_>>();
    verdict("7", "property suites", ok, &detail.join(" "), elapsed);
}
