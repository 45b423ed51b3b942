//! Plugging a caller-defined speed functional into the bound machinery.
//! Here the functional is the Bures speed itself, which turns the bound
//! into sin^2(B) / v_av.

use qsl_core::bounds::{functional_bound, SpeedFunctional};
use qsl_core::dynamics::{evolve, CatalogModel};
use qsl_core::geometry::qfi_rate;
use qsl_core::linalg::{HermitianMatrix, Norm};
use qsl_core::state::{bures_angle, DensityMatrix};

struct BuresSpeed;

impl SpeedFunctional for BuresSpeed {
    fn name(&self) -> &str {
        "bures"
    }

    fn speed(&self, rho: &DensityMatrix, rho_dot: &HermitianMatrix) -> qsl_core::Result<f64> {
        Ok(0.5 * qfi_rate(rho, rho_dot)?.sqrt())
    }
}

struct OperatorNorm;

impl SpeedFunctional for OperatorNorm {
    fn name(&self) -> &str {
        "op"
    }

    fn speed(&self, _: &DensityMatrix, rho_dot: &HermitianMatrix) -> qsl_core::Result<f64> {
        rho_dot.schatten_norm(Norm::Operator)
    }
}

fn main() -> qsl_core::Result<()> {
    let m = CatalogModel::Spiral { gamma: 0.5, omega: 5.0 };
    let traj = evolve(&m.build(), &m.initial_state(), 2.0, 4000)?;
    let angle = bures_angle(traj.initial(), &traj.states()[traj.steps()])?;
    for f in [&BuresSpeed as &dyn SpeedFunctional, &OperatorNorm] {
        println!("tau_{:<6} = {:.6}", f.name(), functional_bound(&traj, f, angle)?);
    }
    Ok(())
}
