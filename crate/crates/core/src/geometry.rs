//! Bures speed from the quantum Fisher information, cumulative path length,
//! and the Schatten-norm speeds of `rho_dot`.
//!
//! The path length `l(t) = int_0^t sqrt(zeta_Q)/2 dt` is integrated with the
//! composite trapezoid rule, except on the first cells of the grid. A path
//! leaving a pure state has speed `~ t^{-1/2}` at the start, so those cells
//! are integrated in `u = sqrt(t)` with an eight-point Gauss-Legendre rule,
//! using states propagated off the grid from the trajectory's model.

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::linalg::{eigh, HermitianMatrix, Norm, SchattenNorms};
use crate::quadrature::sqrt_substituted_rule;
use crate::state::{BlochVector, DensityMatrix};

/// Eigenvalue pairs with `p_j + p_k <= QFI_SUPPORT_EPS` are dropped from the QFI sum.
pub const QFI_SUPPORT_EPS: f64 = 1e-12;

/// Quantum Fisher information of the time parameter,
/// `2 sum_{j,k} |<j|rho_dot|k>|^2 / (p_j + p_k)` over the eigenbasis of `rho`.
pub fn qfi_rate(rho: &DensityMatrix, rho_dot: &HermitianMatrix) -> Result<f64> {
    if rho.dim() != rho_dot.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: rho_dot.dim(),
        });
    }
    let spectrum = eigh(rho.hermitian())?;
    let v = &spectrum.eigenvectors;
    let rotated = &(&v.adjoint() * rho_dot.matrix()) * v;
    let p: Vec<f64> = spectrum.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let n = p.len();
    let mut sum = 0.0;
    for j in 0..n {
        for k in 0..n {
            let denom = p[j] + p[k];
            if denom > QFI_SUPPORT_EPS {
                sum += rotated[(j, k)].norm_sqr() / denom;
            }
        }
    }
    Ok(2.0 * sum)
}

/// Qubit QFI from the Bloch vector `r` and its velocity:
/// `|v|^2 + (r.v)^2 / (1 - |r|^2)`, dropping the second term on the surface.
pub fn qfi_rate_bloch(r: &BlochVector, velocity: &BlochVector) -> Result<f64> {
    let r2 = r.dot(r);
    let v2 = velocity.dot(velocity);
    let radial = r.dot(velocity);
    if r2.sqrt() > 1.0 + 1e-10 {
        return Err(Error::BlochOutOfBall(r2.sqrt()));
    }
    if (1.0 - r2.sqrt()).abs() <= 1e-9 {
        if radial.abs() > 1e-9 {
            return Err(Error::IllPosedQfi(radial));
        }
        return Ok(v2);
    }
    Ok(v2 + radial * radial / (1.0 - r2))
}

/// Integrals of the speed and the three norm speeds over one grid cell.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CellIntegral {
    pub length: f64,
    pub norms: SchattenNorms,
}

/// Per-grid-point speeds, plus refined integrals over the leading cells.
#[derive(Debug, Clone)]
pub struct SpeedProfile {
    pub times: Vec<f64>,
    /// `zeta_Q(t_i)`.
    pub qfi: Vec<f64>,
    /// `sqrt(zeta_Q(t_i)) / 2`.
    pub speed: Vec<f64>,
    /// `||rho_dot_i||_{op, hs, tr}`.
    pub norm_speeds: Vec<SchattenNorms>,
    /// Integrals over cells `[t_i, t_{i+1}]` for `i < head.len()`.
    pub head: Vec<CellIntegral>,
}

impl SpeedProfile {
    pub fn step_size(&self) -> f64 {
        self.times[1] - self.times[0]
    }
}

/// Number of leading cells integrated with the substituted rule.
pub fn head_cells(steps: usize) -> usize {
    steps.min((steps / 20).max(16))
}

/// QFI speed and Schatten norms at every grid point.
pub fn speed_profile(traj: &Trajectory) -> Result<SpeedProfile> {
    let n = traj.len();
    let mut qfi = Vec::with_capacity(n);
    let mut speed = Vec::with_capacity(n);
    let mut norm_speeds = Vec::with_capacity(n);
    for (i, (rho, d)) in traj.states().iter().zip(traj.derivatives()).enumerate() {
        let z = qfi_rate(rho, d).map_err(|e| e.at(i))?;
        qfi.push(z);
        speed.push(z.sqrt() / 2.0);
        norm_speeds.push(d.schatten_norms().map_err(|e| e.at(i))?);
    }

    let mut head = Vec::with_capacity(head_cells(traj.steps()));
    for i in 0..head_cells(traj.steps()) {
        let mut cell = CellIntegral::default();
        for (t, w) in sqrt_substituted_rule(traj.time(i), traj.time(i + 1)) {
            let (rho, d) = traj.state_at(t).map_err(|e| e.at(i))?;
            let z = qfi_rate(&rho, &d).map_err(|e| e.at(i))?;
            let norms = d.schatten_norms().map_err(|e| e.at(i))?;
            cell.length += w * z.sqrt() / 2.0;
            cell.norms.op += w * norms.op;
            cell.norms.hs += w * norms.hs;
            cell.norms.tr += w * norms.tr;
        }
        head.push(cell);
    }

    Ok(SpeedProfile {
        times: traj.times(),
        qfi,
        speed,
        norm_speeds,
        head,
    })
}

/// Cumulative Bures length and norm integrals on the trajectory grid.
#[derive(Debug, Clone)]
pub struct PathLength {
    pub times: Vec<f64>,
    /// `l(t_i)`, nondecreasing, `l(0) = 0`.
    pub length: Vec<f64>,
    /// `int_0^{t_i} ||rho_dot||_x dt`.
    pub norm_integrals: Vec<SchattenNorms>,
}

impl PathLength {
    pub fn total(&self) -> f64 {
        *self.length.last().expect("non-empty grid")
    }

    pub fn norm_integral(&self, index: usize, which: Norm) -> f64 {
        self.norm_integrals[index].get(which)
    }

    /// Grid index of `t`, if `t` lies on the grid.
    pub fn grid_index(&self, t: f64) -> Option<usize> {
        let h = self.times[1] - self.times[0];
        let i = (t / h).round();
        if i < 0.0 || i as usize >= self.times.len() {
            return None;
        }
        let i = i as usize;
        ((self.times[i] - t).abs() <= 1e-9 * h.max(t.abs())).then_some(i)
    }
}

/// Cumulative quadrature of the speed profile.
pub fn path_length(profile: &SpeedProfile) -> Result<PathLength> {
    let n = profile.times.len();
    let mut length = Vec::with_capacity(n);
    let mut norm_integrals = Vec::with_capacity(n);
    length.push(0.0);
    norm_integrals.push(SchattenNorms::default());

    for i in 1..n {
        let cell = match profile.head.get(i - 1) {
            Some(c) => *c,
            None => {
                let h = profile.times[i] - profile.times[i - 1];
                let (a, b) = (profile.speed[i - 1], profile.speed[i]);
                if !a.is_finite() {
                    return Err(Error::NonFiniteSpeed(i - 1));
                }
                if !b.is_finite() {
                    return Err(Error::NonFiniteSpeed(i));
                }
                let (na, nb) = (profile.norm_speeds[i - 1], profile.norm_speeds[i]);
                CellIntegral {
                    length: 0.5 * h * (a + b),
                    norms: SchattenNorms {
                        op: 0.5 * h * (na.op + nb.op),
                        hs: 0.5 * h * (na.hs + nb.hs),
                        tr: 0.5 * h * (na.tr + nb.tr),
                    },
                }
            }
        };
        if !cell.length.is_finite() || cell.length < 0.0 {
            return Err(Error::NonFiniteSpeed(i - 1));
        }
        let prev = length[i - 1];
        let prev_n: SchattenNorms = norm_integrals[i - 1];
        length.push(prev + cell.length);
        norm_integrals.push(SchattenNorms {
            op: prev_n.op + cell.norms.op,
            hs: prev_n.hs + cell.norms.hs,
            tr: prev_n.tr + cell.norms.tr,
        });
    }

    Ok(PathLength {
        times: profile.times.clone(),
        length,
        norm_integrals,
    })
}

/// Speed profile and path length of a trajectory in one call.
pub fn trajectory_path_length(traj: &Trajectory) -> Result<PathLength> {
    path_length(&speed_profile(traj)?)
}

/// `l(tau) / tau` for a grid time `tau`.
pub fn average_speed(pl: &PathLength, tau: f64) -> Result<f64> {
    if tau == 0.0 {
        return Err(Error::UndefinedAverage);
    }
    let i = pl
        .grid_index(tau)
        .ok_or_else(|| Error::InvalidArgument(format!("tau = {tau} is not a grid time")))?;
    Ok(pl.length[i] / tau)
}
