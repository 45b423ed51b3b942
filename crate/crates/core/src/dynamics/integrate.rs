//! Fixed-step RK4 propagation of the master equation.

use log::warn;

use crate::dynamics::model::LindbladModel;
use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix, HermitianMatrix};
use crate::state::{trace_distance, DensityMatrix};

pub const MIN_STEPS: usize = 16;

/// Minimum eigenvalue tolerated on a stored state before integration aborts.
const POSITIVITY_TOL: f64 = 1e-8;
const RENORM_WARN: f64 = 1e-6;

/// States and generator-evaluated derivatives on the uniform grid
/// `t_i = i * tau / steps`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    model: LindbladModel,
    tau: f64,
    steps: usize,
    states: Vec<DensityMatrix>,
    derivatives: Vec<HermitianMatrix>,
}

impl Trajectory {
    pub fn model(&self) -> &LindbladModel {
        &self.model
    }

    pub fn horizon(&self) -> f64 {
        self.tau
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step_size(&self) -> f64 {
        self.tau / self.steps as f64
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.tau * i as f64 / self.steps as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|i| self.time(i)).collect()
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn derivatives(&self) -> &[HermitianMatrix] {
        &self.derivatives
    }

    pub fn initial(&self) -> &DensityMatrix {
        &self.states[0]
    }

    /// Grid index closest to `t`.
    pub fn nearest_index(&self, t: f64) -> usize {
        let i = (t / self.step_size()).round();
        (i.max(0.0) as usize).min(self.steps)
    }

    /// State and derivative at an arbitrary `t` in `[0, tau]`, propagated
    /// from the grid point below with RK4 sub-steps of at most `h/4`.
    pub fn state_at(&self, t: f64) -> Result<(DensityMatrix, HermitianMatrix)> {
        if !(0.0..=self.tau).contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "t = {t} outside trajectory [0, {}]",
                self.tau
            )));
        }
        let h = self.step_size();
        let i = ((t / h).floor() as usize).min(self.steps);
        let delta = t - self.time(i);
        let mut rho = self.states[i].matrix().clone();
        if delta > 0.0 {
            let sub = ((4.0 * delta / h).ceil() as usize).max(1);
            let dt = delta / sub as f64;
            for _ in 0..sub {
                rho = rk4_step(&self.model, &rho, dt);
            }
        }
        let rho = normalize(&rho).map_err(|e| e.at(i))?;
        let d = HermitianMatrix::from_hermitian_part(&self.model.apply(rho.matrix()))?;
        Ok((rho, d))
    }
}

fn rk4_step(model: &LindbladModel, rho: &CMatrix, h: f64) -> CMatrix {
    let k1 = model.apply(rho);
    let mut tmp = rho.clone();
    tmp.add_scaled(0.5 * h, &k1);
    let k2 = model.apply(&tmp);
    let mut tmp = rho.clone();
    tmp.add_scaled(0.5 * h, &k2);
    let k3 = model.apply(&tmp);
    let mut tmp = rho.clone();
    tmp.add_scaled(h, &k3);
    let k4 = model.apply(&tmp);

    let mut out = rho.clone();
    out.add_scaled(h / 6.0, &k1);
    out.add_scaled(h / 3.0, &k2);
    out.add_scaled(h / 3.0, &k3);
    out.add_scaled(h / 6.0, &k4);
    out
}

/// Hermitian projection and trace renormalization of a propagated state.
fn normalize(rho: &CMatrix) -> Result<DensityMatrix> {
    if !rho.is_finite() {
        return Err(Error::InvalidArgument("non-finite state".into()));
    }
    let herm = rho.hermitian_part();
    let tr = herm.trace().re;
    if !(tr > 0.0) {
        return Err(Error::InvalidArgument(format!("trace collapsed to {tr}")));
    }
    if (tr - 1.0).abs() > RENORM_WARN {
        warn!("trace renormalization factor {tr} exceeds 1 +/- {RENORM_WARN}");
    }
    let m = HermitianMatrix::from_hermitian_part(&herm.scale_re(1.0 / tr))?;
    let min = eigh(&m)?.min();
    if min < -POSITIVITY_TOL {
        return Err(Error::NotPsd(min));
    }
    Ok(DensityMatrix::from_trusted(m))
}

/// Integrates `rho0` over `[0, tau]` with `steps` classical RK4 steps.
///
/// Each stored state is re-symmetrized and trace-renormalized; derivatives
/// come from the generator at the stored state.
pub fn evolve(model: &LindbladModel, rho0: &DensityMatrix, tau: f64, steps: usize) -> Result<Trajectory> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidArgument(format!("horizon must be positive, got {tau}")));
    }
    if steps < MIN_STEPS {
        return Err(Error::InvalidArgument(format!(
            "steps must be >= {MIN_STEPS}, got {steps}"
        )));
    }
    if model.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            left: model.dim(),
            right: rho0.dim(),
        });
    }

    let h = tau / steps as f64;
    let mut states = Vec::with_capacity(steps + 1);
    let mut derivatives = Vec::with_capacity(steps + 1);
    let mut current = rho0.clone();
    for step in 0..=steps {
        derivatives.push(HermitianMatrix::from_hermitian_part(&model.apply(current.matrix()))?);
        let next = if step < steps {
            let raw = rk4_step(model, current.matrix(), h);
            Some(normalize(&raw).map_err(|e| Error::IntegrationFailure {
                step: step + 1,
                reason: e.to_string(),
            })?)
        } else {
            None
        };
        states.push(current);
        match next {
            Some(n) => current = n,
            None => break,
        }
    }

    Ok(Trajectory {
        model: model.clone(),
        tau,
        steps,
        states,
        derivatives,
    })
}

const STATIONARY_TOL: f64 = 1e-12;
const STATIONARY_MAX_CHECKPOINTS: usize = 10_000;

/// Stationary state and whether it is reached only asymptotically.
///
/// Catalog models return their closed form. Otherwise the maximally mixed
/// state is propagated in checkpoints spaced `1 / gamma_max` until successive
/// checkpoints are within trace distance `1e-12`.
pub fn stationary_state(model: &LindbladModel) -> Result<(DensityMatrix, bool)> {
    if let Some(known) = model.analytic_stationary() {
        return Ok(known);
    }
    if model.catalog_entry().is_some() {
        return Err(Error::NoStationaryState(format!(
            "model '{}' has no attractor for these parameters",
            model.name()
        )));
    }
    let gamma_max = model.max_rate();
    if gamma_max == 0.0 {
        return Err(Error::NoStationaryState(
            "unitary dynamics has no unique attractor".into(),
        ));
    }
    let spacing = 1.0 / gamma_max;
    let substeps = ((model.generator_scale() * spacing * 4.0).ceil() as usize).clamp(MIN_STEPS, 100_000);
    let dt = spacing / substeps as f64;

    let mut current = DensityMatrix::maximally_mixed(model.dim())?;
    for checkpoint in 0..STATIONARY_MAX_CHECKPOINTS {
        let mut rho = current.matrix().clone();
        for _ in 0..substeps {
            rho = rk4_step(model, &rho, dt);
        }
        let next = normalize(&rho).map_err(|e| Error::IntegrationFailure {
            step: (checkpoint + 1) * substeps,
            reason: e.to_string(),
        })?;
        let moved = trace_distance(&current, &next)?;
        current = next;
        if moved < STATIONARY_TOL {
            return Ok((current, true));
        }
    }
    Err(Error::NoStationaryState(format!(
        "no convergence within {STATIONARY_MAX_CHECKPOINTS} checkpoints"
    )))
}

/// Asymptotic state for a trajectory started at `rho0`: the closed form
/// for catalog models, otherwise [`stationary_state`].
pub fn asymptotic_state(model: &LindbladModel, rho0: &DensityMatrix) -> Result<(DensityMatrix, bool)> {
    match model.catalog_entry() {
        Some(entry) => entry.stationary_from(rho0).ok_or_else(|| {
            Error::NoStationaryState(format!(
                "model '{}' has no attractor for these parameters",
                model.name()
            ))
        }),
        None => stationary_state(model),
    }
}
