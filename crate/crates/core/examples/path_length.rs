//! Bures speed and cumulative path length of the spiral, next to its
//! closed-form quadrature.

use qsl_core::dynamics::{evolve, CatalogModel};
use qsl_core::geometry::{path_length, speed_profile};

fn main() -> qsl_core::Result<()> {
    let m = CatalogModel::Spiral { gamma: 0.5, omega: 5.0 };
    let traj = evolve(&m.build(), &m.initial_state(), 4.0, 4000)?;
    let profile = speed_profile(&traj)?;
    let path = path_length(&profile)?;

    println!("{:>6} {:>12} {:>12} {:>12}", "t", "speed", "l(t)", "l exact");
    for i in (0..=traj.steps()).step_by(500) {
        let t = traj.time(i);
        println!(
            "{t:>6.2} {:>12.6} {:>12.8} {:>12.8}",
            profile.speed[i],
            path.length[i],
            m.path_length(t)
        );
    }
    Ok(())
}
