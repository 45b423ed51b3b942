//! Random states and operators for property checks.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, HermitianMatrix};
use crate::state::{BlochVector, DensityMatrix};

fn standard_normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn ginibre(rng: &mut impl Rng, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, |_, _| C64::new(standard_normal(rng), standard_normal(rng)))
}

/// Hermitian matrix with independent uniform entries in `[-1, 1]`.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> HermitianMatrix {
    let m = CMatrix::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    HermitianMatrix::from_hermitian_part(&m).expect("supported dimension")
}

/// Full-rank mixed state `G G^dagger / Tr(G G^dagger)` from a Ginibre matrix.
pub fn random_density_matrix(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let g = ginibre(rng, dim);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_matrix(m.hermitian_part().scale_re(1.0 / tr)).expect("valid state")
}

/// Haar-random pure state.
pub fn random_pure_state(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let psi: Vec<C64> = (0..dim)
        .map(|_| C64::new(standard_normal(rng), standard_normal(rng)))
        .collect();
    DensityMatrix::pure(&psi).expect("non-zero vector")
}

/// Uniformly random direction scaled to `radius`.
pub fn random_bloch(rng: &mut impl Rng, radius: f64) -> BlochVector {
    loop {
        let v = BlochVector::new(standard_normal(rng), standard_normal(rng), standard_normal(rng));
        let n = v.norm();
        if n > 1e-12 {
            return BlochVector::new(v.x * radius / n, v.y * radius / n, v.z * radius / n);
        }
    }
}

/// Random traceless Hermitian velocity with entries of order one.
pub fn random_velocity(rng: &mut impl Rng, dim: usize) -> HermitianMatrix {
    let h = random_hermitian(rng, dim);
    let shift = h.trace() / dim as f64;
    let m = h.matrix() - &CMatrix::identity(dim).scale_re(shift);
    HermitianMatrix::from_hermitian_part(&m).expect("supported dimension")
}
