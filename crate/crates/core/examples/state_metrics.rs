//! Fidelity, Bures angle, trace distance and Schatten norms on a few qubit
//! states.

use qsl_core::linalg::{pauli, HermitianMatrix, Norm};
use qsl_core::state::{bloch_to_state, bures_angle, fidelity, trace_distance, BlochVector, DensityMatrix};

fn main() -> qsl_core::Result<()> {
    let zero = DensityMatrix::basis(2, 0)?;
    let one = DensityMatrix::basis(2, 1)?;
    let mixed = DensityMatrix::maximally_mixed(2)?;
    let tilted = bloch_to_state(&BlochVector::new(0.6, 0.0, 0.0))?;

    let pairs = [
        ("|0>, |1>", &zero, &one),
        ("|0>, I/2", &zero, &mixed),
        ("|0>, (I + 0.6 X)/2", &zero, &tilted),
        ("I/2, (I + 0.6 X)/2", &mixed, &tilted),
    ];
    println!("{:<22} {:>10} {:>10} {:>10}", "pair", "F", "B", "D");
    for (label, a, b) in pairs {
        println!(
            "{label:<22} {:>10.6} {:>10.6} {:>10.6}",
            fidelity(a, b)?,
            bures_angle(a, b)?,
            trace_distance(a, b)?
        );
    }

    let [_, _, z] = pauli();
    let z = HermitianMatrix::new(z)?;
    println!();
    for which in Norm::ALL {
        println!("||sigma_z||_{} = {}", which.label(), z.schatten_norm(which)?);
    }
    Ok(())
}
