mod common;

use proptest::prelude::*;

use efftc::bounds::{reconcile, Bound, BoundLedger, Invariant, Status, VerifyParams};
use efftc::complex::{coboundary_matrix, cohomology, SimplicialComplex, Vertex};
use efftc::pathspace::{validate_broken_path, GSpace, Space, Sphere, Torus};
use efftc::planners::{farber_sphere_cover, involution_two_stage_cover, torus_cover};
use efftc::symmetry::{product_complex, FiniteGroup};

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..6, 1..=3), 1..=4).prop_map(|facets| {
        let facets: Vec<Vec<Vertex>> = facets.into_iter().map(|f| f.into_iter().collect()).collect();
        SimplicialComplex::from_maximal(&facets).unwrap()
    })
}

fn unit_vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim + 1)
        .prop_filter("away from the origin", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect()
        })
}

fn stage_invariant() -> impl Strategy<Value = Invariant> {
    prop_oneof![
        (1usize..6).prop_map(Invariant::Tc),
        Just(Invariant::TcInf),
        (1usize..6).prop_map(Invariant::Cat),
        Just(Invariant::CatInf),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundary_squares_to_zero(k in complex()) {
        for d in 0..k.dimension().max(0) as usize {
            let a = coboundary_matrix(&k, d).unwrap();
            let b = coboundary_matrix(&k, d + 1).unwrap();
            prop_assert!(b.mul(&a).is_zero());
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(k in complex()) {
        let chi: isize = k.f_vector().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as isize } else { -(n as isize) }).sum();
        let betti: isize = cohomology(&k).betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as isize } else { -(b as isize) }).sum();
        prop_assert_eq!(chi, betti);
    }

    #[test]
    fn kunneth_for_staircase_products(k in complex(), l in complex()) {
        let (bk, bl) = (cohomology(&k).betti, cohomology(&l).betti);
        let bp = cohomology(&product_complex(&k, &l).complex).betti;
        for (n, &b) in bp.iter().enumerate() {
            let expected: usize = (0..=n).map(|i| bk.get(i).unwrap_or(&0) * bl.get(n - i).unwrap_or(&0)).sum();
            prop_assert_eq!(b, expected);
        }
    }

    #[test]
    fn generated_groups_satisfy_the_axioms(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let (g, _) = FiniteGroup::from_permutations(&[perm]).unwrap();
        let e = g.identity();
        for a in g.elements() {
            prop_assert_eq!(g.mul(a, e), a);
            prop_assert_eq!(g.mul(a, g.inv(a)), e);
            for b in g.elements() {
                for c in g.elements() {
                    prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn reconcile_takes_max_lower_and_min_upper(
        lows in prop::collection::vec(0usize..5, 0..4),
        ups in prop::collection::vec(0usize..5, 0..4),
    ) {
        let lb: Vec<Bound> = lows.iter().map(|&v| Bound::new(v, "l")).collect();
        let ub: Vec<Bound> = ups.iter().map(|&v| Bound::new(v, "u")).collect();
        let r = reconcile("p", Invariant::TcInf, &lb, &ub, &VerifyParams::default());
        prop_assert_eq!(r.lower, lows.iter().copied().max().unwrap_or(0));
        prop_assert_eq!(r.upper, ups.iter().copied().min());
        let contradiction = r.upper.is_some_and(|u| r.lower > u);
        prop_assert_eq!(r.status == Status::Contradiction, contradiction);
    }

    #[test]
    fn propagation_respects_stage_monotonicity(
        bounds in prop::collection::vec((stage_invariant(), 0usize..4, any::<bool>()), 1..8),
        free in any::<bool>(),
    ) {
        let mut ledger = BoundLedger::new();
        for (inv, v, is_upper) in &bounds {
            if *is_upper {
                ledger.upper(*inv, Bound::new(*v, "u"));
            } else {
                ledger.lower(*inv, Bound::new(*v, "l"));
            }
        }
        ledger.propagate(free);
        let reports = ledger.reconcile("p", &VerifyParams::default());
        let stage = |inv: Invariant| match inv {
            Invariant::Tc(k) => ("tc", k),
            Invariant::Cat(k) => ("cat", k),
            Invariant::TcInf => ("tc", usize::MAX),
            Invariant::CatInf => ("cat", usize::MAX),
        };
        for a in &reports {
            for b in &reports {
                let ((fa, ka), (fb, kb)) = (stage(a.invariant), stage(b.invariant));
                if fa == fb && ka < kb {
                    prop_assert!(a.lower >= b.lower);
                    if let (Some(ua), Some(ub)) = (a.upper, b.upper) {
                        prop_assert!(ub <= ua);
                    }
                }
            }
        }
    }

    #[test]
    fn invariant_names_round_trip(inv in stage_invariant()) {
        prop_assert_eq!(inv.to_string().parse::<Invariant>().unwrap(), inv);
        let json = serde_json::to_string(&inv).unwrap();
        prop_assert_eq!(serde_json::from_str::<Invariant>(&json).unwrap(), inv);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn farber_sections_validate_off_grid(dim in 1usize..=3, seed in any::<u64>()) {
        let gs = GSpace::trivial(Sphere::new(dim));
        let cover = farber_sphere_cover(dim, common::SAMPLES);
        let mut rng = <rand_chacha::ChaCha8Rng as rand_chacha::rand_core::SeedableRng>::seed_from_u64(seed);
        let grid = gs.space.grid(8);
        let x = gs.space.nudge(&grid[(seed % grid.len() as u64) as usize], 0.3, &mut rng);
        let y = gs.space.nudge(&grid[((seed >> 8) % grid.len() as u64) as usize], 0.3, &mut rng);
        let tol = VerifyParams::default().tolerances();
        let bp = cover.plan(&x, &y, 0.0).unwrap();
        prop_assert!(validate_broken_path(&gs, &bp, (&x, &y), &tol).failure(&tol).is_none());
    }

    #[test]
    fn involution_sections_validate_off_grid(x in unit_vector(2), y in unit_vector(2)) {
        let gs = GSpace::sphere_reflection(2);
        let cover = involution_two_stage_cover(&gs, common::SAMPLES).unwrap();
        let tol = VerifyParams::default().tolerances();
        let bp = cover.plan(&x, &y, 0.0).unwrap();
        prop_assert!(validate_broken_path(&gs, &bp, (&x, &y), &tol).failure(&tol).is_none());
    }

    #[test]
    fn torus_sections_validate_off_grid(x in prop::collection::vec(0.0f64..1.0, 2), y in prop::collection::vec(0.0f64..1.0, 2)) {
        let gs = GSpace::trivial(Torus::standard(2));
        let cover = torus_cover(&gs.space, common::SAMPLES);
        let tol = VerifyParams::default().tolerances();
        let bp = cover.plan(&x, &y, 0.0).unwrap();
        prop_assert!(validate_broken_path(&gs, &bp, (&x, &y), &tol).failure(&tol).is_none());
        prop_assert_eq!(bp.stage(), 1);
    }
}
