//! The spiral never follows a geodesic: tau_min converges to a finite but
//! unattainable value while the norm-based bounds grow without limit.

use qsl_core::bounds::{divergence_scan, DEFAULT_ATTAINABILITY_TOL};
use qsl_core::dynamics::CatalogModel;

fn main() -> qsl_core::Result<()> {
    let m = CatalogModel::Spiral { gamma: 0.5, omega: 5.0 };
    let taus = [1.0, 2.0, 4.0, 8.0, 16.0];
    let rows = divergence_scan(&m.build(), &m.initial_state(), &taus, 1000.0, DEFAULT_ATTAINABILITY_TOL)?;

    println!(
        "{:>5} {:>9} {:>9} {:>9} {:>9} {:>9}  verdict",
        "tau", "B", "l", "tau_min", "tau_av", "tau_op"
    );
    for r in rows {
        println!(
            "{:>5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}  {}",
            r.tau,
            r.bures_angle,
            r.path_length,
            r.tau_min.time,
            r.tau_av,
            r.tau_op.unwrap_or(f64::NAN),
            r.verdict.kind
        );
    }
    Ok(())
}
