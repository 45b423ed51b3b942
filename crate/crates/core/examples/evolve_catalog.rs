//! Integrates every catalog model and compares the final state with its
//! closed form.

use qsl_core::dynamics::{evolve, CatalogModel, MODEL_NAMES};
use qsl_core::state::{state_to_bloch, trace_distance};

fn main() -> qsl_core::Result<()> {
    let tau = 2.0;
    for name in MODEL_NAMES {
        let m = CatalogModel::from_name(name, 0.5, 3.0)?;
        let traj = evolve(&m.build(), &m.initial_state(), tau, 2000)?;
        let last = &traj.states()[traj.steps()];
        let r = state_to_bloch(last)?;
        println!("{name:<18} {}", m.description());
        println!(
            "  r(tau) = ({:+.6}, {:+.6}, {:+.6})   D(numeric, exact) = {:.2e}",
            r.x,
            r.y,
            r.z,
            trace_distance(last, &m.state(tau))?
        );
    }
    Ok(())
}
