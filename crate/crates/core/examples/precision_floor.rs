//! Stopping times T(eps) under pure dephasing: linear in ln(1/eps) until
//! the distance to the stationary state sinks into rounding noise.

use qsl_core::dynamics::{evolve, CatalogModel};
use qsl_core::stopping::stopping_time_curve;

fn main() -> qsl_core::Result<()> {
    let gamma = 1.0;
    let m = CatalogModel::PureDephasing { gamma };
    let traj = evolve(&m.build(), &m.initial_state(), 50.0, 100_000)?;
    let (rho_f, _) = m.stationary().expect("dephasing has a stationary state");
    let eps: Vec<f64> = (1..=20).map(|k| 10f64.powi(-k)).collect();
    let curve = stopping_time_curve(&traj, &rho_f, &eps)?;

    println!("floor_epsilon = {:.3e}", curve.floor_epsilon);
    println!("{:>8} {:>10} {:>10}  saturated", "eps", "T", "exact");
    for e in &curve.entries {
        let exact = (1.0 / (2.0 * e.epsilon)).ln() / (2.0 * gamma);
        let t = e.time.map_or("-".to_string(), |t| format!("{t:.4}"));
        println!("{:>8.0e} {t:>10} {exact:>10.4}  {}", e.epsilon, e.saturated);
    }
    Ok(())
}
