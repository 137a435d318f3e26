use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twenty_vertex::arctic::{branch, kappa_of_xi, saddle_solve, slope_a, BranchKind};
use twenty_vertex::enumerate::{column_marginal, column_marginal_brute, verify_inhom_relation, InhomSpectral, Sampler};
use twenty_vertex::poly::RefinedPoly;
use twenty_vertex::weights::{twenty_v_weights, PI_BAR, PI_BAR_HAT, PI_HAT};
use twenty_vertex::{BoundaryKind, Caps, TriangleDomain, WeightParams};

// 5% away from the faces of the region, where endpoint extrapolation loses digits
fn disordered() -> impl Strategy<Value = WeightParams> {
    (0.05f64..0.95, 0.05f64..0.95, -0.95f64..0.95).prop_map(|(a, b, c)| {
        let eta = a * PI / 2.0;
        let lambda = eta + b * (PI - 2.0 * eta);
        WeightParams::new(eta, lambda, c * (lambda - eta))
    })
}

fn close(a: &WeightParams, b: &WeightParams) -> bool {
    (a.eta - b.eta).abs() < 1e-12 && (a.lambda - b.lambda).abs() < 1e-12 && (a.mu - b.mu).abs() < 1e-12
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parameter_maps_compose(p in disordered()) {
        prop_assert!(close(&p.hat().hat(), &p));
        prop_assert!(close(&p.star().star(), &p));
        prop_assert!(close(&p.bar(), &p.star().hat()));
    }

    #[test]
    fn maps_permute_weights(p in disordered()) {
        let w = twenty_v_weights(&p);
        for (q, perm) in [(p.hat(), PI_HAT), (p.bar(), PI_BAR_HAT), (p.star(), PI_BAR)] {
            let lhs = twenty_v_weights(&q);
            let rhs = w.permuted(&perm);
            for i in 0..7 {
                prop_assert!((lhs.omega[i] - rhs.omega[i]).abs() <= 1e-12 * p.nu);
            }
        }
    }

    #[test]
    fn disordered_weights_are_positive(p in disordered()) {
        prop_assume!(p.is_disordered());
        prop_assert!(twenty_v_weights(&p).omega.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn sampled_configurations_are_valid(m in 1usize..7, seed in any::<u64>()) {
        let d3 = TriangleDomain::new(m, BoundaryKind::Dwbc3).unwrap();
        let d2 = TriangleDomain::new(m, BoundaryKind::Dwbc2).unwrap();
        let d1 = TriangleDomain::new(m, BoundaryKind::Dwbc1).unwrap();
        let sampler = Sampler::uniform(&d3, &Caps::default()).unwrap();
        let c = sampler.sample(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(c.validate(&d3).is_ok());
        prop_assert!(c.check_ice_rule().is_ok());
        prop_assert_eq!(c.total_flip().total_flip(), c.clone());
        let c2 = c.sr_vf().unwrap();
        prop_assert!(c2.validate(&d2).is_ok());
        prop_assert!(c2.rstar().unwrap().validate(&d1).is_ok());
        prop_assert!(c.sbar_rbar_hf().unwrap().validate(&d1).is_ok());
        let counts = c.class_counts().unwrap();
        prop_assert_eq!(counts.iter().sum::<usize>(), d3.num_vertices());
    }

    #[test]
    fn inhomogeneous_relation_holds(m in 1usize..4, seed in any::<u64>()) {
        // random spectral parameters occasionally make the sum cancel, so the gate is loose;
        // a wrong relation gives residuals of order one
        let r = verify_inhom_relation(m, &InhomSpectral::random(m, seed)).unwrap();
        prop_assert!(r <= 1e-6, "relative residual {}", r);
    }

    #[test]
    fn saddle_exit_matches_slope(p in disordered(), u in 0.05f64..0.95) {
        prop_assume!(p.is_disordered());
        let (_, end) = BranchKind::NE.xi_range(&p);
        let xi = u * end;
        let st = saddle_solve(&p, xi, None).unwrap();
        let a = slope_a(&p, xi).unwrap();
        prop_assert!((st.s * a - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn branches_are_tangent_and_inside(p in disordered()) {
        prop_assume!(p.is_disordered());
        for kind in BranchKind::ALL {
            let b = branch(&p, kind, 41).unwrap();
            prop_assert!(b.max_tangency_residual() <= 1e-8);
            prop_assert!(b.domain_excess() <= 1e-8);
        }
    }

    #[test]
    fn kappa_stays_on_the_boundary_edge(p in disordered(), u in 0.0f64..1.0) {
        prop_assume!(p.is_disordered());
        let (_, end) = BranchKind::NE.xi_range(&p);
        let k = kappa_of_xi(&p, u * end).unwrap();
        prop_assert!((-1e-9..=2.0 + 1e-9).contains(&k), "kappa = {}", k);
    }

    #[test]
    fn reversal_is_an_involution(c in proptest::collection::vec(0u64..1000, 1..10)) {
        let p = RefinedPoly::new(c.clone());
        let n = c.len();
        prop_assert_eq!(p.reversed(n).reversed(n), p);
    }
}

#[test]
fn column_marginals_agree() {
    for m in 1..=4 {
        for bc in [BoundaryKind::Dwbc3, BoundaryKind::Dwbc2, BoundaryKind::Dwbc1] {
            let d = TriangleDomain::new(m, bc).unwrap();
            for x in -(m as i32)..=0 {
                if let Ok(t) = column_marginal(&d, x) {
                    assert_eq!(t, column_marginal_brute(&d, x), "m = {m}, {bc:?}, x = {x}");
                }
            }
        }
    }
}

#[test]
fn combinatorial_point_is_uniform() {
    let w = twenty_v_weights(&WeightParams::combinatorial());
    assert!(w.omega.iter().all(|&x| (x - 1.0).abs() < 1e-14));
}
