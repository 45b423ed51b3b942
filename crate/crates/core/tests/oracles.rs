//! Library results against closed forms and brute-force computations done
//! here from scratch.

use std::f64::consts::PI;

use qsl_core::bounds::{Attainability, BoundAnalysis, DEFAULT_ATTAINABILITY_TOL};
use qsl_core::dynamics::{evolve, model_from_json, stationary_state, CatalogModel};
use qsl_core::state::{trace_distance, DensityMatrix};

fn analysis(m: &CatalogModel, tau: f64, steps: usize) -> BoundAnalysis {
    let traj = evolve(&m.build(), &m.initial_state(), tau, steps).unwrap();
    BoundAnalysis::new(&traj, DEFAULT_ATTAINABILITY_TOL).unwrap()
}

/// Bures speed of the spiral from its Bloch trajectory
/// `r(t) = e^{-2 gamma t} (cos wt, sin wt, 0)`, written out directly.
fn spiral_speed(gamma: f64, omega: f64, t: f64) -> f64 {
    let big_r = (-2.0 * gamma * t).exp();
    let (c, s) = ((omega * t).cos(), (omega * t).sin());
    let r = [big_r * c, big_r * s, 0.0];
    let v = [
        big_r * (-2.0 * gamma * c - omega * s),
        big_r * (-2.0 * gamma * s + omega * c),
        0.0,
    ];
    let rr: f64 = r.iter().map(|x| x * x).sum();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let rv: f64 = r.iter().zip(&v).map(|(a, b)| a * b).sum();
    (0.5 * (vv + rv * rv / (1.0 - rr)).sqrt()).max(0.0)
}

/// Midpoint rule in `u = sqrt(t)` with a million nodes; the integrand
/// `2u * speed(u^2)` is bounded, so this converges quadratically.
fn brute_force_spiral_length(gamma: f64, omega: f64, tau: f64) -> f64 {
    let n = 1_000_000;
    let umax = tau.sqrt();
    let du = umax / n as f64;
    (0..n)
        .map(|k| {
            let u = (k as f64 + 0.5) * du;
            2.0 * u * spiral_speed(gamma, omega, u * u) * du
        })
        .sum()
}

#[test]
fn spiral_length_matches_brute_force() {
    for (gamma, omega, tau) in [(0.5, 5.0, 2.0), (1.0, 1.0, 3.0), (0.2, 5.0, 4.0)] {
        let m = CatalogModel::Spiral { gamma, omega };
        let oracle = brute_force_spiral_length(gamma, omega, tau);
        let numeric = analysis(&m, tau, 4000).path().total();
        assert!(
            (numeric - oracle).abs() < 1e-4,
            "gamma {gamma} omega {omega}: {numeric} vs {oracle}"
        );
        assert!(
            (m.path_length(tau) - oracle).abs() < 1e-6,
            "closed form {} vs {oracle}",
            m.path_length(tau)
        );
    }
}

#[test]
fn amplitude_damping_is_a_geodesic_everywhere() {
    let m = CatalogModel::AmplitudeDamping { gamma: 2.0 };
    let a = analysis(&m, 3.0, 4000);
    for (i, (&b, &l)) in a.angles().iter().zip(&a.path().length).enumerate() {
        let t = a.path().times[i];
        // B(|1>, rho_t) = acos sqrt(p), p = e^{-gamma t}
        let exact = (-2.0f64 * t / 2.0).exp().acos();
        assert!((b - exact).abs() < 1e-7, "t {t}: {b} vs {exact}");
        assert!((l - b).abs() < 1e-4, "t {t}: l {l} B {b}");
    }
}

#[test]
fn dephasing_is_a_geodesic_everywhere() {
    let m = CatalogModel::PureDephasing { gamma: 1.0 };
    let a = analysis(&m, 3.0, 3000);
    for (i, (&b, &l)) in a.angles().iter().zip(&a.path().length).enumerate() {
        let t = a.path().times[i];
        // F = sqrt((1 + e^{-2 gamma t}) / 2)
        let exact = ((1.0 + (-2.0 * t).exp()) / 2.0).sqrt().acos();
        assert!((b - exact).abs() < 1e-7);
        assert!((l - b).abs() < 1e-4, "t {t}: l {l} B {b}");
    }
}

#[test]
fn precession_is_geodesic_for_half_a_turn() {
    let omega = 2.0;
    let m = CatalogModel::Precession { omega };
    let tau = 0.9 * PI / omega;
    let r = analysis(&m, tau, 2000).final_report().unwrap();
    assert!((r.path_length - omega * tau / 2.0).abs() < 1e-10);
    assert!((r.bures_angle - omega * tau / 2.0).abs() < 1e-7);
    assert_eq!(r.verdict.kind, Attainability::Attainable);

    // past half a turn the path keeps growing while the angle folds back
    let r = analysis(&m, 1.5 * PI / omega, 2000).final_report().unwrap();
    assert_eq!(r.verdict.kind, Attainability::Unattainable);
    assert!((r.bures_angle - PI / 4.0).abs() < 1e-7);
}

#[test]
fn pi_over_three_at_ln_four() {
    let m = CatalogModel::AmplitudeDamping { gamma: 1.0 };
    let r = analysis(&m, 4f64.ln(), 4000).final_report().unwrap();
    assert!((r.path_length - PI / 3.0).abs() < 1e-4);
    assert!((r.bures_angle - PI / 3.0).abs() < 1e-9);
}

#[test]
fn schatten_bounds_against_closed_forms() {
    // amplitude damping from |1>: ||rho_dot|| = gamma e^{-gamma t} x (1, sqrt 2, 2)
    // and sin^2 B = 1 - e^{-gamma tau}, so tau_x = tau x (1, 1/sqrt 2, 1/2)
    for gamma in [0.5, 1.0, 2.0] {
        let m = CatalogModel::AmplitudeDamping { gamma };
        let tau = 2.0 / gamma;
        let r = analysis(&m, tau, 4000).final_report().unwrap();
        assert!((r.tau_op.unwrap() / tau - 1.0).abs() < 1e-6);
        assert!((r.tau_hs.unwrap() / tau - 0.5f64.sqrt()).abs() < 1e-6);
        assert!((r.tau_tr.unwrap() / tau - 0.5).abs() < 1e-6);
    }
}

#[test]
fn three_level_cascade_relaxes_to_ground() {
    // |2> -> |1> -> |0> decay
    let json = r#"{
        "dim": 3,
        "name": "cascade",
        "hamiltonian": [[[0,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[2,0]]],
        "jumps": [
            {"rate": 1.0, "matrix": [[[0,0],[1,0],[0,0]], [[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0]]]},
            {"rate": 0.5, "matrix": [[[0,0],[0,0],[0,0]], [[0,0],[0,0],[1,0]], [[0,0],[0,0],[0,0]]]}
        ]
    }"#;
    let model = model_from_json(json).unwrap();
    let (rho_f, asymptotic) = stationary_state(&model).unwrap();
    assert!(asymptotic);
    let ground = DensityMatrix::basis(3, 0).unwrap();
    assert!(trace_distance(&rho_f, &ground).unwrap() < 1e-9);

    // population of |2> decays as e^{-t/2}
    let rho0 = DensityMatrix::basis(3, 2).unwrap();
    let traj = evolve(&model, &rho0, 2.0, 400).unwrap();
    let p2 = traj.states()[400].matrix()[(2, 2)].re;
    assert!((p2 - (-1.0f64).exp()).abs() < 1e-9);
}

#[test]
fn rk4_global_error_is_fourth_order() {
    let m = CatalogModel::Spiral { gamma: 0.5, omega: 3.0 };
    let tau = 2.0;
    let err = |n: usize| {
        let traj = evolve(&m.build(), &m.initial_state(), tau, n).unwrap();
        traj.states()[n].matrix().max_abs_diff(m.state(tau).matrix())
    };
    let (e1, e2) = (err(32), err(64));
    let order = (e1 / e2).log2();
    assert!((3.5..=4.5).contains(&order), "order {order} ({e1:e}, {e2:e})");
}
