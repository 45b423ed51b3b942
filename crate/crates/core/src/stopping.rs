//! First times at which the trace distance to the asymptotic state drops
//! below a threshold, and the arithmetic floor below which those times stop
//! meaning anything.

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::state::{trace_distance, DensityMatrix};

/// Thresholds below this multiple of machine epsilon are always saturated.
const FLOOR_EPS_MULTIPLE: f64 = 4.0;
/// Fraction of the grid, at the end, used to measure the noise level.
const TAIL_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingEntry {
    pub epsilon: f64,
    /// First grid time with `D(rho_t, rho_f) < epsilon`; for saturated
    /// entries, the crossing time of the floor itself. `None` if not reached.
    pub time: Option<f64>,
    pub saturated: bool,
}

#[derive(Debug, Clone)]
pub struct StoppingTimeCurve {
    pub entries: Vec<StoppingEntry>,
    /// Smallest threshold distinguishable from arithmetic noise on this run.
    pub floor_epsilon: f64,
    /// `D(rho_i, rho_f)` on the grid.
    pub distances: Vec<f64>,
}

/// Median of `|D_{i+1} - D_i|` over the last tenth of the grid, floored at
/// `4 * f64::EPSILON`.
pub fn floor_epsilon(distances: &[f64]) -> f64 {
    let base = FLOOR_EPS_MULTIPLE * f64::EPSILON;
    let n = distances.len();
    let tail_len = ((n as f64 * TAIL_FRACTION).ceil() as usize).clamp(2.min(n), n);
    let tail = &distances[n - tail_len..];
    let mut diffs: Vec<f64> = tail.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    if diffs.is_empty() {
        return base;
    }
    diffs.sort_by(f64::total_cmp);
    let mid = diffs.len() / 2;
    let median = if diffs.len().is_multiple_of(2) {
        0.5 * (diffs[mid - 1] + diffs[mid])
    } else {
        diffs[mid]
    };
    median.max(base)
}

pub fn stopping_time_curve(
    traj: &Trajectory,
    stationary: &DensityMatrix,
    epsilons: &[f64],
) -> Result<StoppingTimeCurve> {
    if epsilons.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::InvalidArgument("thresholds must be positive".into()));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("thresholds must be strictly descending".into()));
    }
    let distances = traj
        .states()
        .iter()
        .enumerate()
        .map(|(i, rho)| trace_distance(rho, stationary).map_err(|e| e.at(i)))
        .collect::<Result<Vec<_>>>()?;
    let floor = floor_epsilon(&distances);
    let crossing = |eps: f64| distances.iter().position(|&d| d < eps).map(|i| traj.time(i));
    let floor_time = crossing(floor);

    let entries = epsilons
        .iter()
        .map(|&epsilon| {
            if epsilon < floor {
                StoppingEntry {
                    epsilon,
                    time: floor_time,
                    saturated: true,
                }
            } else {
                StoppingEntry {
                    epsilon,
                    time: crossing(epsilon),
                    saturated: false,
                }
            }
        })
        .collect();

    Ok(StoppingTimeCurve {
        entries,
        floor_epsilon: floor,
        distances,
    })
}
