//! Speed-limit times and the attainability verdict.
//!
//! For a trajectory of horizon `tau` with Bures angle `B = B(rho_0, rho_tau)`
//! and path length `l = l(tau)`:
//!
//! * `tau_min` is the time at which the actual path has covered length `B`;
//! * `tau_av = B / (l / tau) = (B / l) tau`;
//! * `tau_x = sin^2(B) / Lambda_x` with `Lambda_x = (1/tau) int_0^tau ||rho_dot||_x dt`
//!   for the operator, Hilbert-Schmidt and trace norms (pure initial states).
//!
//! Every one of them equals `tau` only when the path is a Bures geodesic,
//! so each estimate is reported alongside the gap `l - B` and a verdict.

use std::fmt;

use crate::dynamics::{evolve, LindbladModel, Trajectory};
use crate::error::{Error, Result};
use crate::geometry::{path_length, speed_profile, PathLength, SpeedProfile};
use crate::linalg::{HermitianMatrix, Norm};
use crate::quadrature::sqrt_substituted_rule;
use crate::state::{bures_angle, DensityMatrix};

/// Default attainability tolerance, in Bures radians.
pub const DEFAULT_ATTAINABILITY_TOL: f64 = 1e-3;
/// Amount by which `B` may exceed `l` before it is treated as an inconsistency.
pub const CONSISTENCY_TOL: f64 = 1e-4;
/// Purity an initial state needs for the norm bounds.
pub const PURITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attainability {
    Attainable,
    Unattainable,
}

impl fmt::Display for Attainability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Attainability::Attainable => "attainable",
            Attainability::Unattainable => "unattainable",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttainabilityVerdict {
    pub kind: Attainability,
    /// `l - B`, floored at zero.
    pub gap: f64,
    pub tolerance: f64,
}

/// Attainable iff the path is no longer than the geodesic plus `tol`.
pub fn classify_attainability(angle: f64, length: f64, tol: f64) -> AttainabilityVerdict {
    let gap = (length - angle).max(0.0);
    let kind = if gap <= tol {
        Attainability::Attainable
    } else {
        Attainability::Unattainable
    };
    AttainabilityVerdict {
        kind,
        gap,
        tolerance: tol,
    }
}

/// First crossing time with the width of the grid cell it was interpolated in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauMin {
    pub time: f64,
    pub cell_width: f64,
}

/// Smallest `t` with `l(t) = angle`, over the whole table.
pub fn tau_min(pl: &PathLength, angle: f64) -> Result<TauMin> {
    tau_min_upto(pl, angle, pl.times.len() - 1)
}

/// As [`tau_min`], restricted to `[0, t_end]`.
pub fn tau_min_upto(pl: &PathLength, angle: f64, end: usize) -> Result<TauMin> {
    let lengths = &pl.length[..=end];
    let total = lengths[end];
    let width = if end > 0 { pl.times[1] - pl.times[0] } else { 0.0 };
    if angle > total + CONSISTENCY_TOL {
        return Err(Error::AngleExceedsLength {
            angle,
            length: total,
            tolerance: CONSISTENCY_TOL,
        });
    }
    if angle <= 0.0 {
        return Ok(TauMin {
            time: 0.0,
            cell_width: 0.0,
        });
    }
    if angle >= total {
        return Ok(TauMin {
            time: pl.times[end],
            cell_width: width,
        });
    }
    // first index with l >= angle; l is nondecreasing
    let hi = lengths.partition_point(|&l| l < angle);
    let lo = hi - 1;
    let (l0, l1) = (lengths[lo], lengths[hi]);
    let frac = if l1 > l0 { (angle - l0) / (l1 - l0) } else { 0.0 };
    Ok(TauMin {
        time: pl.times[lo] + frac * (pl.times[hi] - pl.times[lo]),
        cell_width: width,
    })
}

/// `B / v_av` with `v_av = l(tau) / tau`; never exceeds `tau`.
pub fn tau_av(pl: &PathLength, angle: f64, tau: f64) -> Result<f64> {
    let i = pl
        .grid_index(tau)
        .ok_or_else(|| Error::InvalidArgument(format!("tau = {tau} is not a grid time")))?;
    tau_av_from_length(pl.length[i], angle, tau)
}

fn tau_av_from_length(length: f64, angle: f64, tau: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::UndefinedAverage);
    }
    if angle > length + CONSISTENCY_TOL {
        return Err(Error::AngleExceedsLength {
            angle,
            length,
            tolerance: CONSISTENCY_TOL,
        });
    }
    if length == 0.0 {
        return Ok(0.0);
    }
    let average = length / tau;
    Ok((angle / average).min(tau))
}

/// `sin^2(B) / Lambda_x` for a pure initial state.
pub fn deffner_lutz(pl: &PathLength, angle: f64, tau: f64, which: Norm, initial: &DensityMatrix) -> Result<f64> {
    let i = pl
        .grid_index(tau)
        .ok_or_else(|| Error::InvalidArgument(format!("tau = {tau} is not a grid time")))?;
    deffner_lutz_at(pl, angle, i, which, initial.purity())
}

fn deffner_lutz_at(pl: &PathLength, angle: f64, index: usize, which: Norm, purity: f64) -> Result<f64> {
    if purity < 1.0 - PURITY_TOL {
        return Err(Error::MixedInitialState(purity));
    }
    let tau = pl.times[index];
    if tau == 0.0 {
        return Err(Error::UndefinedAverage);
    }
    let lambda = pl.norm_integral(index, which) / tau;
    if !(lambda > 0.0) {
        return Err(Error::FrozenDynamics(which.label()));
    }
    Ok(angle.sin().powi(2) / lambda)
}

/// A caller-supplied speed `||rho_dot||`-like functional, for speed limits
/// outside the built-in Schatten family.
pub trait SpeedFunctional {
    fn name(&self) -> &str;
    fn speed(&self, rho: &DensityMatrix, rho_dot: &HermitianMatrix) -> Result<f64>;
}

/// `sin^2(B) / ((1/tau) int_0^tau f dt)` for an arbitrary speed functional,
/// integrated with the same rule as the built-in bounds.
pub fn functional_bound(traj: &Trajectory, functional: &dyn SpeedFunctional, angle: f64) -> Result<f64> {
    let head = crate::geometry::head_cells(traj.steps());
    let h = traj.step_size();
    let mut integral = 0.0;
    for i in 0..head {
        for (t, w) in sqrt_substituted_rule(traj.time(i), traj.time(i + 1)) {
            let (rho, d) = traj.state_at(t)?;
            integral += w * functional.speed(&rho, &d).map_err(|e| e.at(i))?;
        }
    }
    let values = traj.states()[head..]
        .iter()
        .zip(&traj.derivatives()[head..])
        .map(|(rho, d)| functional.speed(rho, d))
        .collect::<Result<Vec<f64>>>()?;
    integral += values.windows(2).map(|w| 0.5 * h * (w[0] + w[1])).sum::<f64>();
    let lambda = integral / traj.horizon();
    if !(lambda > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "average '{}' speed is {lambda}",
            functional.name()
        )));
    }
    Ok(angle.sin().powi(2) / lambda)
}

/// Everything known about one horizon of one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub tau: f64,
    pub grid_index: usize,
    pub bures_angle: f64,
    pub path_length: f64,
    /// `B / l`, clamped to `[0, 1]`; zero for a zero-length path.
    pub ratio: f64,
    pub tau_min: TauMin,
    pub tau_av: f64,
    /// `None` for mixed initial states or frozen dynamics.
    pub tau_op: Option<f64>,
    pub tau_hs: Option<f64>,
    pub tau_tr: Option<f64>,
    pub verdict: AttainabilityVerdict,
}

impl BoundReport {
    pub fn tau_norm(&self, which: Norm) -> Option<f64> {
        match which {
            Norm::Operator => self.tau_op,
            Norm::HilbertSchmidt => self.tau_hs,
            Norm::Trace => self.tau_tr,
        }
    }
}

/// Speed profile, path length and Bures angles of a trajectory, from which
/// reports at any grid horizon are read off.
#[derive(Debug, Clone)]
pub struct BoundAnalysis {
    profile: SpeedProfile,
    path: PathLength,
    angles: Vec<f64>,
    initial_purity: f64,
    tolerance: f64,
}

impl BoundAnalysis {
    pub fn new(traj: &Trajectory, tolerance: f64) -> Result<Self> {
        let profile = speed_profile(traj)?;
        let path = path_length(&profile)?;
        let rho0 = traj.initial();
        let angles = traj
            .states()
            .iter()
            .enumerate()
            .map(|(i, rho)| bures_angle(rho0, rho).map_err(|e| e.at(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundAnalysis {
            profile,
            path,
            angles,
            initial_purity: rho0.purity(),
            tolerance,
        })
    }

    pub fn profile(&self) -> &SpeedProfile {
        &self.profile
    }

    pub fn path(&self) -> &PathLength {
        &self.path
    }

    /// `B(rho_0, rho_i)` at every grid point.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn last_index(&self) -> usize {
        self.angles.len() - 1
    }

    pub fn report_at(&self, index: usize) -> Result<BoundReport> {
        if index == 0 || index > self.last_index() {
            return Err(Error::InvalidArgument(format!(
                "horizon index {index} outside 1..={}",
                self.last_index()
            )));
        }
        let tau = self.path.times[index];
        let angle = self.angles[index];
        let length = self.path.length[index];
        let tau_min = tau_min_upto(&self.path, angle, index).map_err(|e| e.at(index))?;
        let tau_av = tau_av_from_length(length, angle, tau).map_err(|e| e.at(index))?;
        let ratio = if length > 0.0 { (angle / length).min(1.0) } else { 0.0 };
        let norm_bound = |which| deffner_lutz_at(&self.path, angle, index, which, self.initial_purity).ok();
        Ok(BoundReport {
            tau,
            grid_index: index,
            bures_angle: angle,
            path_length: length,
            ratio,
            tau_min,
            tau_av,
            tau_op: norm_bound(Norm::Operator),
            tau_hs: norm_bound(Norm::HilbertSchmidt),
            tau_tr: norm_bound(Norm::Trace),
            verdict: classify_attainability(angle, length, self.tolerance),
        })
    }

    /// Report at the grid point nearest to `t`.
    pub fn report_near(&self, t: f64) -> Result<BoundReport> {
        let h = self.path.times[1] - self.path.times[0];
        let i = ((t / h).round().max(0.0) as usize).min(self.last_index());
        self.report_at(i)
    }

    pub fn final_report(&self) -> Result<BoundReport> {
        self.report_at(self.last_index())
    }
}

/// Evolves once to the longest horizon and reports at each requested one.
///
/// The grid has `ceil(steps_per_unit * tau_max)` steps, so reports at
/// different horizons share one step size.
pub fn divergence_scan(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    taus: &[f64],
    steps_per_unit: f64,
    tolerance: f64,
) -> Result<Vec<BoundReport>> {
    if taus.is_empty() {
        return Err(Error::InvalidArgument("empty horizon list".into()));
    }
    if taus.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
        return Err(Error::InvalidArgument("horizons must be positive".into()));
    }
    if taus.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("horizons must be strictly ascending".into()));
    }
    if !(steps_per_unit > 0.0) {
        return Err(Error::InvalidArgument("steps per unit time must be positive".into()));
    }
    let tau_max = *taus.last().expect("non-empty");
    let steps = ((steps_per_unit * tau_max).ceil() as usize).max(crate::dynamics::MIN_STEPS);
    let traj = evolve(model, rho0, tau_max, steps)?;
    let analysis = BoundAnalysis::new(&traj, tolerance)?;
    taus.iter().map(|&t| analysis.report_near(t)).collect()
}
