use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qsl_core::bounds::{BoundAnalysis, DEFAULT_ATTAINABILITY_TOL};
use qsl_core::dynamics::{evolve, Jump, LindbladModel};
use qsl_core::linalg::CMatrix;
use qsl_core::sample::{random_density_matrix, random_hermitian};
use qsl_core::state::trace_distance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_model(rng: &mut ChaCha8Rng, dim: usize) -> LindbladModel {
    let h = random_hermitian(rng, dim);
    let jumps = (0..2)
        .map(|_| Jump {
            operator: CMatrix::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
            rate: rng.gen_range(0.0..1.0),
        })
        .collect();
    LindbladModel::new("random", h, jumps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_positivity_and_contraction(seed in any::<u64>(), dim in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_model(&mut rng, dim);
        let a = random_density_matrix(&mut rng, dim);
        let b = random_density_matrix(&mut rng, dim);
        let ta = evolve(&model, &a, 2.0, 400).unwrap();
        let tb = evolve(&model, &b, 2.0, 400).unwrap();
        let mut prev = f64::INFINITY;
        for (x, y) in ta.states().iter().zip(tb.states()) {
            prop_assert!((x.matrix().trace().re - 1.0).abs() < 1e-12);
            prop_assert!(x.hermitian().eigh().unwrap().min() > -1e-8);
            let d = trace_distance(x, y).unwrap();
            prop_assert!(d <= prev + 1e-10, "distance grew: {prev} -> {d}");
            prev = d;
        }
    }

    #[test]
    fn angle_never_exceeds_length(seed in any::<u64>(), dim in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_model(&mut rng, dim);
        let rho0 = random_density_matrix(&mut rng, dim);
        let traj = evolve(&model, &rho0, 1.5, 600).unwrap();
        let a = BoundAnalysis::new(&traj, DEFAULT_ATTAINABILITY_TOL).unwrap();
        for (&b, &l) in a.angles().iter().zip(&a.path().length) {
            prop_assert!(b <= l + 1e-4, "B {b} > l {l}");
        }
        let r = a.final_report().unwrap();
        prop_assert!(r.tau_min.time <= r.tau + 1e-12 && r.tau_av <= r.tau);
        prop_assert!(r.tau_min.time <= r.tau_av + 1e-3 * r.tau || r.ratio < 1.0);
    }
}
