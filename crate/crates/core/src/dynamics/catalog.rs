//! Qubit models with closed-form solutions.
//!
//! Each entry fixes a canonical initial state; its oracles (state, speed,
//! path length, Bures angle from the start) refer to that start.

use num_complex::Complex64 as C64;

use crate::dynamics::model::{Jump, LindbladModel};
use crate::error::{Error, Result};
use crate::linalg::{pauli, CMatrix, HermitianMatrix};
use crate::quadrature::integrate_from_zero;
use crate::state::{bloch_to_state, BlochVector, DensityMatrix};

/// Catalog entry together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogModel {
    /// `L = sigma_- = |0><1|` at rate gamma, `H = 0`, from `|1><1|`.
    AmplitudeDamping { gamma: f64 },
    /// `L = sigma_z` at rate gamma, `H = 0`, from `|+><+|`.
    PureDephasing { gamma: f64 },
    /// `H = (omega/2) sigma_z`, no jumps, from `|+><+|`.
    Precession { omega: f64 },
    /// Precession plus dephasing: the Bloch vector spirals into the centre
    /// of the ball and only reaches it as `t -> inf`.
    Spiral { gamma: f64, omega: f64 },
}

/// Names accepted by [`CatalogModel::from_name`].
pub const MODEL_NAMES: [&str; 4] = ["amplitude-damping", "pure-dephasing", "precession", "spiral"];

impl CatalogModel {
    pub fn from_name(name: &str, gamma: f64, omega: f64) -> Result<Self> {
        for (label, v) in [("gamma", gamma), ("omega", omega)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "{label} must be finite and >= 0, got {v}"
                )));
            }
        }
        match name {
            "amplitude-damping" => Ok(CatalogModel::AmplitudeDamping { gamma }),
            "pure-dephasing" | "dephasing" => Ok(CatalogModel::PureDephasing { gamma }),
            "precession" => Ok(CatalogModel::Precession { omega }),
            "spiral" => Ok(CatalogModel::Spiral { gamma, omega }),
            other => Err(Error::InvalidArgument(format!(
                "unknown model '{other}' (known: {})",
                MODEL_NAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatalogModel::AmplitudeDamping { .. } => "amplitude-damping",
            CatalogModel::PureDephasing { .. } => "pure-dephasing",
            CatalogModel::Precession { .. } => "precession",
            CatalogModel::Spiral { .. } => "spiral",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            CatalogModel::AmplitudeDamping { .. } => {
                "L = sigma_- at rate gamma, H = 0; start |1><1|; Bures geodesic toward |0><0|"
            }
            CatalogModel::PureDephasing { .. } => {
                "L = sigma_z at rate gamma, H = 0; start |+><+|; Bures geodesic toward I/2"
            }
            CatalogModel::Precession { .. } => {
                "H = (omega/2) sigma_z, no jumps; start |+><+|; geodesic for omega*tau <= pi"
            }
            CatalogModel::Spiral { .. } => {
                "H = (omega/2) sigma_z plus L = sigma_z at rate gamma; start |+><+|; non-geodesic, reaches I/2 only as t -> inf"
            }
        }
    }

    pub fn gamma(&self) -> f64 {
        match *self {
            CatalogModel::AmplitudeDamping { gamma }
            | CatalogModel::PureDephasing { gamma }
            | CatalogModel::Spiral { gamma, .. } => gamma,
            CatalogModel::Precession { .. } => 0.0,
        }
    }

    pub fn omega(&self) -> f64 {
        match *self {
            CatalogModel::Precession { omega } | CatalogModel::Spiral { omega, .. } => omega,
            _ => 0.0,
        }
    }

    /// Rate at which the canonical trajectory relaxes (or rotates, for
    /// precession): `gamma` for damping, `2 gamma` for coherence decay.
    pub fn relaxation_rate(&self) -> f64 {
        match *self {
            CatalogModel::AmplitudeDamping { gamma } => gamma,
            CatalogModel::PureDephasing { gamma } | CatalogModel::Spiral { gamma, .. } => 2.0 * gamma,
            CatalogModel::Precession { omega } => omega,
        }
    }

    pub fn build(&self) -> LindbladModel {
        let [_, _, sz] = pauli();
        let zero = HermitianMatrix::zeros(2).expect("dim 2");
        let precession = |omega: f64| HermitianMatrix::new(sz.scale_re(0.5 * omega)).expect("hermitian");
        let mut sigma_minus = CMatrix::zeros(2);
        sigma_minus[(0, 1)] = C64::new(1.0, 0.0);

        let (hamiltonian, jumps) = match *self {
            CatalogModel::AmplitudeDamping { gamma } => (
                zero,
                vec![Jump {
                    operator: sigma_minus,
                    rate: gamma,
                }],
            ),
            CatalogModel::PureDephasing { gamma } => (
                zero,
                vec![Jump {
                    operator: sz.clone(),
                    rate: gamma,
                }],
            ),
            CatalogModel::Precession { omega } => (precession(omega), vec![]),
            CatalogModel::Spiral { gamma, omega } => (
                precession(omega),
                vec![Jump {
                    operator: sz.clone(),
                    rate: gamma,
                }],
            ),
        };
        LindbladModel::new(self.name(), hamiltonian, jumps)
            .expect("catalog models are valid")
            .with_catalog(*self)
    }

    pub fn initial_state(&self) -> DensityMatrix {
        match self {
            CatalogModel::AmplitudeDamping { .. } => DensityMatrix::basis(2, 1),
            _ => DensityMatrix::uniform_superposition(2),
        }
        .expect("valid qubit state")
    }

    /// Asymptotic state of the canonical trajectory, flagged as reached only
    /// as `t -> inf`. `None` where no attractor exists.
    pub fn stationary(&self) -> Option<(DensityMatrix, bool)> {
        self.stationary_from(&self.initial_state())
    }

    /// Asymptotic state reached from an arbitrary qubit start. Dephasing
    /// keeps the populations, so its limit depends on the start.
    pub fn stationary_from(&self, rho0: &DensityMatrix) -> Option<(DensityMatrix, bool)> {
        if rho0.dim() != 2 {
            return None;
        }
        let state = match *self {
            CatalogModel::AmplitudeDamping { gamma } if gamma > 0.0 => DensityMatrix::basis(2, 0),
            CatalogModel::PureDephasing { gamma } | CatalogModel::Spiral { gamma, .. } if gamma > 0.0 => {
                let m = rho0.matrix();
                HermitianMatrix::diagonal(&[m[(0, 0)].re, m[(1, 1)].re]).and_then(DensityMatrix::new)
            }
            _ => return None,
        };
        Some((state.expect("valid qubit state"), true))
    }

    /// Closed-form Bloch vector at time `t`.
    pub fn bloch(&self, t: f64) -> BlochVector {
        match *self {
            CatalogModel::AmplitudeDamping { gamma } => BlochVector::new(0.0, 0.0, 1.0 - 2.0 * (-gamma * t).exp()),
            CatalogModel::PureDephasing { gamma } => BlochVector::new((-2.0 * gamma * t).exp(), 0.0, 0.0),
            CatalogModel::Precession { omega } => BlochVector::new((omega * t).cos(), (omega * t).sin(), 0.0),
            CatalogModel::Spiral { gamma, omega } => {
                let r = (-2.0 * gamma * t).exp();
                BlochVector::new(r * (omega * t).cos(), r * (omega * t).sin(), 0.0)
            }
        }
    }

    pub fn state(&self, t: f64) -> DensityMatrix {
        let v = self.bloch(t);
        // clamp away rounding outside the ball
        let n = v.norm();
        let v = if n > 1.0 {
            BlochVector::new(v.x / n, v.y / n, v.z / n)
        } else {
            v
        };
        bloch_to_state(&v).expect("closed-form state is valid")
    }

    /// Closed-form Bures speed `sqrt(zeta_Q)/2`; infinite at `t = 0` for the
    /// models that leave a pure state radially.
    pub fn speed(&self, t: f64) -> f64 {
        match *self {
            CatalogModel::AmplitudeDamping { gamma } => {
                if gamma == 0.0 {
                    return 0.0;
                }
                let p = (-gamma * t).exp();
                0.5 * gamma * (p / -(-gamma * t).exp_m1()).sqrt()
            }
            CatalogModel::PureDephasing { gamma } => {
                if gamma == 0.0 {
                    return 0.0;
                }
                let x = (-2.0 * gamma * t).exp();
                gamma * x / (-(-4.0 * gamma * t).exp_m1()).sqrt()
            }
            CatalogModel::Precession { omega } => 0.5 * omega,
            CatalogModel::Spiral { gamma, omega } => {
                let r2 = (-4.0 * gamma * t).exp();
                let radial = if gamma == 0.0 {
                    0.0
                } else {
                    4.0 * gamma * gamma * r2 * r2 / -(-4.0 * gamma * t).exp_m1()
                };
                0.5 * (r2 * (4.0 * gamma * gamma + omega * omega) + radial).sqrt()
            }
        }
    }

    /// Closed-form path length `int_0^t speed`. The spiral has no elementary
    /// antiderivative; it is integrated in `u = sqrt(t)` with Gauss-Legendre.
    pub fn path_length(&self, t: f64) -> f64 {
        match *self {
            CatalogModel::AmplitudeDamping { gamma } => (-0.5 * gamma * t).exp().acos(),
            CatalogModel::PureDephasing { gamma } => 0.5 * (-2.0 * gamma * t).exp().acos(),
            CatalogModel::Precession { omega } => 0.5 * omega * t,
            CatalogModel::Spiral { gamma, omega } => {
                if gamma == 0.0 || t == 0.0 {
                    return 0.5 * omega * t;
                }
                let panels = 64 + (16.0 * (2.0 * gamma * t).sqrt()) as usize;
                integrate_from_zero(|s| self.speed(s), t, panels)
            }
        }
    }

    /// Closed-form Bures angle between the initial state and the state at `t`.
    pub fn bures_from_start(&self, t: f64) -> f64 {
        match *self {
            CatalogModel::AmplitudeDamping { gamma } => (-0.5 * gamma * t).exp().acos(),
            // start is |+>: F = sqrt((1 + x)/2), so B = acos(x)/2
            _ => 0.5 * self.bloch(t).x.clamp(-1.0, 1.0).acos(),
        }
    }
}

/// All catalog models at the given parameters.
pub fn catalog_with(gamma: f64, omega: f64) -> Vec<LindbladModel> {
    [
        CatalogModel::AmplitudeDamping { gamma },
        CatalogModel::PureDephasing { gamma },
        CatalogModel::Precession { omega },
        CatalogModel::Spiral { gamma, omega },
    ]
    .iter()
    .map(CatalogModel::build)
    .collect()
}

/// The catalog at `gamma = 1`, `omega = 1`.
pub fn catalog() -> Vec<LindbladModel> {
    catalog_with(1.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::bures_angle;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn names_round_trip() {
        for name in MODEL_NAMES {
            let m = CatalogModel::from_name(name, 0.5, 2.0).unwrap();
            assert_eq!(m.name(), name);
            assert_eq!(m.build().name(), name);
        }
        assert!(CatalogModel::from_name("nope", 1.0, 1.0).is_err());
        assert!(CatalogModel::from_name("spiral", -1.0, 1.0).is_err());
    }

    #[test]
    fn spiral_without_rotation_is_dephasing() {
        let s = CatalogModel::Spiral { gamma: 0.7, omega: 0.0 };
        let d = CatalogModel::PureDephasing { gamma: 0.7 };
        for t in [0.01, 0.3, 2.0] {
            assert!((s.speed(t) - d.speed(t)).abs() < 1e-12 * d.speed(t));
            assert!((s.path_length(t) - d.path_length(t)).abs() < 1e-10);
            assert_eq!(s.bloch(t), d.bloch(t));
        }
    }

    #[test]
    fn spiral_radius() {
        let s = CatalogModel::Spiral { gamma: 0.5, omega: 5.0 };
        for t in [0.0, 0.4, 3.0] {
            assert!((s.bloch(t).norm() - (-t).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn amplitude_damping_path_length_matches_antiderivative() {
        // 1/2 (pi/2 - asin(2 e^{-gamma t} - 1)) equals acos(e^{-gamma t/2})
        let m = CatalogModel::AmplitudeDamping { gamma: 1.3 };
        for t in [0.1f64, 1.0, 4.0] {
            let alt = 0.5 * (FRAC_PI_2 - (2.0 * (-1.3f64 * t).exp() - 1.0).asin());
            assert!((m.path_length(t) - alt).abs() < 1e-13);
        }
        let t = 4f64.ln();
        assert!(
            (CatalogModel::AmplitudeDamping { gamma: 1.0 }.path_length(t) - std::f64::consts::FRAC_PI_3).abs() < 1e-15
        );
    }

    #[test]
    fn closed_form_angles_match_state_metric() {
        for m in [
            CatalogModel::AmplitudeDamping { gamma: 0.9 },
            CatalogModel::PureDephasing { gamma: 0.9 },
            CatalogModel::Precession { omega: 0.9 },
            CatalogModel::Spiral { gamma: 0.4, omega: 3.0 },
        ] {
            let rho0 = m.initial_state();
            for t in [0.2, 1.1, 2.5] {
                let b = bures_angle(&rho0, &m.state(t)).unwrap();
                assert!((b - m.bures_from_start(t)).abs() < 1e-7, "{} at {t}", m.name());
            }
        }
    }

    #[test]
    fn stationary_entries() {
        let (s, flag) = CatalogModel::AmplitudeDamping { gamma: 1.0 }.stationary().unwrap();
        assert!(flag);
        assert!(s.matrix().max_abs_diff(DensityMatrix::basis(2, 0).unwrap().matrix()) < 1e-15);
        assert!(CatalogModel::Precession { omega: 1.0 }.stationary().is_none());
        assert_eq!(catalog().len(), 4);
    }
}
