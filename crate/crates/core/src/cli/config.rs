//! Option merging and validation for the command front end.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::bounds::DEFAULT_ATTAINABILITY_TOL;
use crate::dynamics::{model_from_json, state_from_json, CatalogModel, LindbladModel, MIN_STEPS};
use crate::state::{bloch_to_state, BlochVector, DensityMatrix};

pub const DEFAULT_GAMMA: f64 = 1.0;
pub const DEFAULT_OMEGA: f64 = 1.0;
pub const DEFAULT_STEPS: usize = 4000;

/// Every option any command accepts. Each field is optional so that a
/// `--config` document and command-line flags can be layered.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub model: Option<String>,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
    pub tau: Option<f64>,
    #[serde(alias = "tau-list")]
    pub tau_list: Option<Vec<f64>>,
    pub steps: Option<usize>,
    pub init: Option<String>,
    #[serde(alias = "eps-list")]
    pub eps_list: Option<Vec<f64>>,
    #[serde(alias = "atol-attainable")]
    pub atol_attainable: Option<f64>,
    pub out: Option<PathBuf>,
}

impl Options {
    /// `other` wins wherever it sets a field.
    pub fn overlay(self, other: Options) -> Options {
        Options {
            model: other.model.or(self.model),
            gamma: other.gamma.or(self.gamma),
            omega: other.omega.or(self.omega),
            tau: other.tau.or(self.tau),
            tau_list: other.tau_list.or(self.tau_list),
            steps: other.steps.or(self.steps),
            init: other.init.or(self.init),
            eps_list: other.eps_list.or(self.eps_list),
            atol_attainable: other.atol_attainable.or(self.atol_attainable),
            out: other.out.or(self.out),
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Options, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("--config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| {
            format!(
                "--config {}: line {} column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            )
        })
    }
}

/// Selected model: a catalog entry or a model loaded from JSON.
#[derive(Debug, Clone)]
pub enum ModelChoice {
    Catalog(CatalogModel),
    Custom { path: PathBuf, model: LindbladModel },
}

impl ModelChoice {
    pub fn build(&self) -> LindbladModel {
        match self {
            ModelChoice::Catalog(c) => c.build(),
            ModelChoice::Custom { model, .. } => model.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModelChoice::Catalog(c) => c.name().to_string(),
            ModelChoice::Custom { path, .. } => path.display().to_string(),
        }
    }

    /// `(gamma, omega)` for catalog models.
    pub fn parameters(&self) -> Option<(f64, f64)> {
        match self {
            ModelChoice::Catalog(c) => Some((c.gamma(), c.omega())),
            ModelChoice::Custom { .. } => None,
        }
    }
}

/// Validated configuration shared by the trajectory commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: ModelChoice,
    pub init_label: String,
    pub initial: DensityMatrix,
    pub horizons: Vec<f64>,
    pub steps: usize,
    pub tolerance: f64,
    pub epsilons: Vec<f64>,
    pub out: Option<PathBuf>,
}

/// Thresholds `1e-1, 1e-2, ..., 1e-20`.
pub fn default_epsilons() -> Vec<f64> {
    (1..=20).map(|k| 10f64.powi(-k)).collect()
}

fn resolve_model(opts: &Options) -> Result<ModelChoice, String> {
    let name = opts.model.as_deref().ok_or("--model is required")?;
    let gamma = opts.gamma.unwrap_or(DEFAULT_GAMMA);
    let omega = opts.omega.unwrap_or(DEFAULT_OMEGA);
    if name.ends_with(".json") || Path::new(name).is_file() {
        let path = PathBuf::from(name);
        let text = fs::read_to_string(&path).map_err(|e| format!("--model {name}: {e}"))?;
        let model = model_from_json(&text).map_err(|e| format!("--model {name}: {e}"))?;
        return Ok(ModelChoice::Custom { path, model });
    }
    CatalogModel::from_name(name, gamma, omega)
        .map(ModelChoice::Catalog)
        .map_err(|e| e.to_string())
}

fn resolve_initial(spec: Option<&str>, model: &ModelChoice, dim: usize) -> Result<(String, DensityMatrix), String> {
    let spec = match (spec, model) {
        (Some(s), _) => s.to_string(),
        (None, ModelChoice::Catalog(CatalogModel::AmplitudeDamping { .. })) => "excited".into(),
        (None, _) => "plus".into(),
    };
    let state = match spec.as_str() {
        "excited" => DensityMatrix::basis(dim, dim - 1),
        "ground" => DensityMatrix::basis(dim, 0),
        "plus" => DensityMatrix::uniform_superposition(dim),
        "mixed" => DensityMatrix::maximally_mixed(dim),
        other if other.contains(',') => {
            let parts = parse_list(other).map_err(|e| format!("--init: {e}"))?;
            if parts.len() != 3 {
                return Err(format!("--init: Bloch vector needs 3 components, got {}", parts.len()));
            }
            if dim != 2 {
                return Err(format!("--init: Bloch vectors need a qubit model, model has dim {dim}"));
            }
            bloch_to_state(&BlochVector::new(parts[0], parts[1], parts[2]))
        }
        path => {
            let text = fs::read_to_string(path).map_err(|e| format!("--init {path}: {e}"))?;
            state_from_json(&text)
        }
    }
    .map_err(|e| format!("--init {spec}: {e}"))?;
    if state.dim() != dim {
        return Err(format!("--init: state has dim {}, model has dim {dim}", state.dim()));
    }
    Ok((spec, state))
}

/// Comma-separated floats.
pub fn parse_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|e| format!("'{s}': {e}")))
        .collect()
}

/// Which horizon options a command consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HorizonMode {
    /// `--tau` or `--tau-list`.
    Single,
    /// `--tau-list` (or a lone `--tau`), strictly ascending.
    Scan,
}

pub fn resolve(opts: &Options, mode: HorizonMode) -> Result<RunConfig, String> {
    let model = resolve_model(opts)?;
    let dim = model.build().dim();
    let (init_label, initial) = resolve_initial(opts.init.as_deref(), &model, dim)?;

    let horizons = match (&opts.tau_list, opts.tau) {
        (Some(list), _) => list.clone(),
        (None, Some(t)) => vec![t],
        (None, None) => {
            return Err(match mode {
                HorizonMode::Single => "--tau or --tau-list is required".into(),
                HorizonMode::Scan => "--tau-list is required".into(),
            })
        }
    };
    if horizons.is_empty() {
        return Err("horizon list is empty".into());
    }
    if let Some(t) = horizons.iter().find(|t| !(**t > 0.0) || !t.is_finite()) {
        return Err(format!("horizons must be positive and finite, got {t}"));
    }
    if mode == HorizonMode::Scan && horizons.windows(2).any(|w| w[1] <= w[0]) {
        return Err("--tau-list must be strictly ascending".into());
    }

    let steps = opts.steps.unwrap_or(DEFAULT_STEPS);
    if steps < MIN_STEPS {
        return Err(format!("--steps must be >= {MIN_STEPS}, got {steps}"));
    }
    let tolerance = opts.atol_attainable.unwrap_or(DEFAULT_ATTAINABILITY_TOL);
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(format!("--atol-attainable must be positive, got {tolerance}"));
    }
    let epsilons = opts.eps_list.clone().unwrap_or_else(default_epsilons);
    if epsilons.is_empty() || epsilons.iter().any(|e| !(*e > 0.0)) {
        return Err("--eps-list must contain positive thresholds".into());
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err("--eps-list must be strictly descending".into());
    }

    Ok(RunConfig {
        model,
        init_label,
        initial,
        horizons,
        steps,
        tolerance,
        epsilons,
        out: opts.out.clone(),
    })
}
