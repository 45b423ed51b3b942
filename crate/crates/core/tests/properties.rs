use proptest::prelude::*;
use qsl_core::geometry::{qfi_rate, qfi_rate_bloch};
use qsl_core::linalg::CMatrix;
use qsl_core::sample::{random_density_matrix, random_hermitian, random_pure_state};
use qsl_core::state::{bloch_to_state, bures_angle, fidelity, state_to_bloch, trace_distance, BlochVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn bloch_in_ball(max_radius: f64) -> impl Strategy<Value = BlochVector> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, 0.0..max_radius).prop_filter_map("zero direction", |(x, y, z, r)| {
        let n = (x * x + y * y + z * z).sqrt();
        (n > 1e-6).then(|| BlochVector::new(r * x / n, r * y / n, r * z / n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fidelity_is_symmetric(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = rng(seed);
        let a = random_density_matrix(&mut r, dim);
        let b = random_density_matrix(&mut r, dim);
        let (fab, fba) = (fidelity(&a, &b).unwrap(), fidelity(&b, &a).unwrap());
        prop_assert!((fab - fba).abs() < 1e-10, "{fab} vs {fba}");
    }

    #[test]
    fn pure_state_reduction(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = rng(seed);
        let psi = random_pure_state(&mut r, dim);
        let sigma = random_density_matrix(&mut r, dim);
        // <psi|sigma|psi> = Tr(|psi><psi| sigma)
        let expect = (psi.matrix() * sigma.matrix()).trace().re.sqrt();
        let f = fidelity(&psi, &sigma).unwrap();
        prop_assert!((f - expect).abs() < 1e-9, "{f} vs {expect}");
    }

    #[test]
    fn fuchs_van_de_graaf(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = rng(seed);
        let a = random_density_matrix(&mut r, dim);
        let b = random_density_matrix(&mut r, dim);
        let f = fidelity(&a, &b).unwrap();
        let d = trace_distance(&a, &b).unwrap();
        prop_assert!(1.0 - f <= d + 1e-9);
        prop_assert!(d <= (1.0 - f * f).sqrt() + 1e-9);
    }

    #[test]
    fn trace_distance_triangle(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = rng(seed);
        let (a, b, c) = (
            random_density_matrix(&mut r, dim),
            random_density_matrix(&mut r, dim),
            random_density_matrix(&mut r, dim),
        );
        let ab = trace_distance(&a, &b).unwrap();
        let bc = trace_distance(&b, &c).unwrap();
        let ac = trace_distance(&a, &c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert!((ab - trace_distance(&b, &a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn bures_angle_in_range(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = rng(seed);
        let a = random_density_matrix(&mut r, dim);
        let b = random_pure_state(&mut r, dim);
        let angle = bures_angle(&a, &b).unwrap();
        prop_assert!((0.0..=std::f64::consts::FRAC_PI_2).contains(&angle));
    }

    #[test]
    fn schatten_norms_ordered(seed in any::<u64>(), dim in 2usize..=8) {
        let h = random_hermitian(&mut rng(seed), dim);
        let s = h.schatten_norms().unwrap();
        prop_assert!(s.op <= s.hs && s.hs <= s.tr, "{s:?}");
    }

    #[test]
    fn eigh_reconstructs_and_is_unitary(seed in any::<u64>(), dim in 2usize..=8) {
        let h = random_hermitian(&mut rng(seed), dim);
        let sp = h.eigh().unwrap();
        prop_assert!(sp.reconstruct().max_abs_diff(h.matrix()) < 1e-10);
        let v = &sp.eigenvectors;
        prop_assert!((&v.adjoint() * v).max_abs_diff(&CMatrix::identity(dim)) < 1e-10);
        prop_assert!(sp.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn bloch_round_trip(v in bloch_in_ball(1.0)) {
        let back = state_to_bloch(&bloch_to_state(&v).unwrap()).unwrap();
        prop_assert!((back.x - v.x).abs() < 1e-12 && (back.y - v.y).abs() < 1e-12 && (back.z - v.z).abs() < 1e-12);
    }

    #[test]
    fn qfi_matches_bloch_form(r in bloch_in_ball(0.99), v in bloch_in_ball(3.0)) {
        let rho = bloch_to_state(&r).unwrap();
        let spectral = qfi_rate(&rho, &v.to_traceless()).unwrap();
        let closed = qfi_rate_bloch(&r, &v).unwrap();
        prop_assert!((spectral - closed).abs() <= 1e-6 * closed.max(1e-9), "{spectral} vs {closed}");
    }
}
