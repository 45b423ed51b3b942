//! Lindblad models, the RK4 integrator and the closed-form model catalog.

pub mod catalog;
pub mod integrate;
pub mod json;
pub mod model;

pub use catalog::{catalog, catalog_with, CatalogModel, MODEL_NAMES};
pub use integrate::{asymptotic_state, evolve, stationary_state, Trajectory, MIN_STEPS};
pub use json::{model_from_json, state_from_json, ModelSpec};
pub use model::{lindblad_rhs, Jump, LindbladModel};
