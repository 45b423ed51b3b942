//! On amplitude damping the path is a geodesic, so every speed-limit time
//! collapses onto the actual time.

use qsl_core::bounds::{BoundAnalysis, DEFAULT_ATTAINABILITY_TOL};
use qsl_core::dynamics::{evolve, CatalogModel};

fn main() -> qsl_core::Result<()> {
    let m = CatalogModel::AmplitudeDamping { gamma: 1.0 };
    let tau = 4f64.ln();
    let traj = evolve(&m.build(), &m.initial_state(), tau, 4000)?;
    let r = BoundAnalysis::new(&traj, DEFAULT_ATTAINABILITY_TOL)?.final_report()?;

    println!("tau        = {tau:.9}");
    println!(
        "B          = {:.9}  (pi/3 = {:.9})",
        r.bures_angle,
        std::f64::consts::FRAC_PI_3
    );
    println!("l          = {:.9}", r.path_length);
    println!("tau_min    = {:.9}", r.tau_min.time);
    println!("tau_av     = {:.9}", r.tau_av);
    println!("tau_op/tau = {:.6}", r.tau_op.unwrap_or(f64::NAN) / tau);
    println!("tau_hs/tau = {:.6}", r.tau_hs.unwrap_or(f64::NAN) / tau);
    println!("tau_tr/tau = {:.6}", r.tau_tr.unwrap_or(f64::NAN) / tau);
    println!("verdict    = {} (gap {:.2e})", r.verdict.kind, r.verdict.gap);
    Ok(())
}
