//! A three-level cascade loaded from JSON: stationary state, path length
//! and bound report.

use qsl_core::bounds::{BoundAnalysis, DEFAULT_ATTAINABILITY_TOL};
use qsl_core::dynamics::{evolve, model_from_json, stationary_state};
use qsl_core::state::{trace_distance, DensityMatrix};

const CASCADE: &str = r#"{
    "name": "cascade",
    "dim": 3,
    "hamiltonian": [[[0, 0], [0, 0], [0, 0]],
                    [[0, 0], [1, 0], [0, 0]],
                    [[0, 0], [0, 0], [2, 0]]],
    "jumps": [
        {"rate": 1.0, "matrix": [[[0, 0], [1, 0], [0, 0]], [[0, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [0, 0]]]},
        {"rate": 0.5, "matrix": [[[0, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [1, 0]], [[0, 0], [0, 0], [0, 0]]]}
    ]
}"#;

fn main() -> qsl_core::Result<()> {
    let model = model_from_json(CASCADE)?;
    let (rho_f, _) = stationary_state(&model)?;
    println!(
        "stationary state is ground: D = {:.2e}",
        trace_distance(&rho_f, &DensityMatrix::basis(3, 0)?)?
    );

    let rho0 = DensityMatrix::uniform_superposition(3)?;
    let traj = evolve(&model, &rho0, 6.0, 3000)?;
    let analysis = BoundAnalysis::new(&traj, DEFAULT_ATTAINABILITY_TOL)?;
    for t in [0.5, 1.0, 2.0, 4.0, 6.0] {
        let r = analysis.report_near(t)?;
        println!(
            "tau {:>4}: B {:.5}  l {:.5}  tau_min {:.5}  tau_av {:.5}  {}",
            r.tau, r.bures_angle, r.path_length, r.tau_min.time, r.tau_av, r.verdict.kind
        );
    }
    Ok(())
}
