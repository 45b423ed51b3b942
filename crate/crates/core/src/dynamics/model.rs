use num_complex::Complex64 as C64;

use crate::dynamics::catalog::CatalogModel;
use crate::error::{Error, Result};
use crate::linalg::{check_dim, CMatrix, HermitianMatrix};
use crate::state::DensityMatrix;

/// Jump operator with its rate `gamma_k >= 0` (inverse time).
#[derive(Debug, Clone, PartialEq)]
pub struct Jump {
    pub operator: CMatrix,
    pub rate: f64,
}

/// Time-independent GKSL generator
/// `d rho/dt = -i[H, rho] + sum_k gamma_k (L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho})`
/// with `hbar = 1`.
#[derive(Debug, Clone)]
pub struct LindbladModel {
    name: String,
    hamiltonian: HermitianMatrix,
    jumps: Vec<Jump>,
    /// `H - i/2 sum_k gamma_k L_k^dagger L_k`
    effective: CMatrix,
    catalog: Option<CatalogModel>,
}

impl LindbladModel {
    pub fn new(name: impl Into<String>, hamiltonian: HermitianMatrix, jumps: Vec<Jump>) -> Result<Self> {
        let dim = hamiltonian.dim();
        check_dim(dim)?;
        let mut effective = hamiltonian.matrix().clone();
        for (k, jump) in jumps.iter().enumerate() {
            if jump.operator.dim() != dim {
                return Err(Error::Model(format!(
                    "jumps[{k}]: operator is {}x{}, hamiltonian is {dim}x{dim}",
                    jump.operator.dim(),
                    jump.operator.dim()
                )));
            }
            if !(jump.rate >= 0.0) || !jump.rate.is_finite() {
                return Err(Error::Model(format!(
                    "jumps[{k}]: rate {} must be finite and >= 0",
                    jump.rate
                )));
            }
            if !jump.operator.is_finite() {
                return Err(Error::Model(format!("jumps[{k}]: non-finite operator entry")));
            }
            let ldl = &jump.operator.adjoint() * &jump.operator;
            effective = &effective - &ldl.scale(C64::new(0.0, 0.5 * jump.rate));
        }
        Ok(LindbladModel {
            name: name.into(),
            hamiltonian,
            jumps,
            effective,
            catalog: None,
        })
    }

    pub(crate) fn with_catalog(mut self, entry: CatalogModel) -> Self {
        self.catalog = Some(entry);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn hamiltonian(&self) -> &HermitianMatrix {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    /// The catalog entry this model was built from, which carries the
    /// closed-form oracles.
    pub fn catalog_entry(&self) -> Option<&CatalogModel> {
        self.catalog.as_ref()
    }

    /// Known stationary state and whether it is only approached as `t -> inf`.
    pub fn analytic_stationary(&self) -> Option<(DensityMatrix, bool)> {
        self.catalog.as_ref().and_then(|c| c.stationary())
    }

    /// Largest jump rate.
    pub fn max_rate(&self) -> f64 {
        self.jumps
            .iter()
            .filter(|j| j.operator.max_abs() > 0.0)
            .map(|j| j.rate)
            .fold(0.0, f64::max)
    }

    /// Rough bound on the generator's norm, for picking integration steps.
    pub fn generator_scale(&self) -> f64 {
        let h = self.hamiltonian.matrix().max_abs() * self.dim() as f64;
        let d: f64 = self
            .jumps
            .iter()
            .map(|j| j.rate * j.operator.max_abs().powi(2) * self.dim() as f64)
            .sum();
        2.0 * h + 2.0 * d
    }

    /// Generator applied to an arbitrary matrix; no Hermitian projection.
    pub(crate) fn apply(&self, rho: &CMatrix) -> CMatrix {
        let minus_i = C64::new(0.0, -1.0);
        let left = &self.effective * rho;
        let right = rho * &self.effective.adjoint();
        let mut out = (&left - &right).scale(minus_i);
        for jump in &self.jumps {
            if jump.rate == 0.0 {
                continue;
            }
            let l = &jump.operator;
            let sandwich = &(l * rho) * &l.adjoint();
            out.add_scaled(jump.rate, &sandwich);
        }
        out
    }
}

/// `d rho / dt` for a density matrix.
pub fn lindblad_rhs(model: &LindbladModel, rho: &DensityMatrix) -> Result<HermitianMatrix> {
    if model.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: model.dim(),
            right: rho.dim(),
        });
    }
    HermitianMatrix::from_hermitian_part(&model.apply(rho.matrix()))
}
