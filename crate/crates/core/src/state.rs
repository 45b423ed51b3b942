//! Density matrices and the distances between them: Uhlmann fidelity, Bures
//! angle and trace distance.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, matrix_sqrt, pauli, sqrt_eigenvalues, CMatrix, HermitianMatrix, PSD_TOL};

/// Tolerance on `Re Tr rho - 1`.
pub const TRACE_TOL: f64 = 1e-10;
/// Tolerance on `Im Tr rho`.
pub const TRACE_IM_TOL: f64 = 1e-12;
/// Fidelities outside `[0, 1]` by less than this are clamped.
pub const FIDELITY_CLAMP_TOL: f64 = 1e-8;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        Self::with_trace_tolerance(matrix, TRACE_TOL)
    }

    pub(crate) fn with_trace_tolerance(matrix: HermitianMatrix, trace_tol: f64) -> Result<Self> {
        let tr = matrix.matrix().trace();
        if (tr.re - 1.0).abs() > trace_tol || tr.im.abs() > TRACE_IM_TOL || !tr.re.is_finite() {
            return Err(Error::InvalidTrace { re: tr.re, im: tr.im });
        }
        let min = eigh(&matrix)?.min();
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(DensityMatrix(matrix))
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let normalized: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::from_matrix(CMatrix::outer(&normalized))
    }

    /// Computational basis state `|index><index|`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dim {dim}"
            )));
        }
        let mut psi = vec![C64::new(0.0, 0.0); dim];
        psi[index] = C64::new(1.0, 0.0);
        Self::pure(&psi)
    }

    /// Uniform superposition of all basis states; `|+><+|` for a qubit.
    pub fn uniform_superposition(dim: usize) -> Result<Self> {
        Self::pure(&vec![C64::new(1.0, 0.0); dim])
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(HermitianMatrix::from_hermitian_part(
            &CMatrix::identity(dim).scale_re(1.0 / dim as f64),
        )?)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn matrix(&self) -> &CMatrix {
        self.0.matrix()
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        let m = self.matrix();
        m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Bypasses validation for states produced by the integrator, which
    /// checks its own tolerances.
    pub(crate) fn from_trusted(m: HermitianMatrix) -> Self {
        DensityMatrix(m)
    }
}

/// Uhlmann fidelity `Tr sqrt(sqrt(rho) sigma sqrt(rho))`, the square-root convention.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let root = matrix_sqrt(rho.hermitian())?;
    let inner = root.matrix() * &(sigma.matrix() * root.matrix());
    let spectrum = eigh(&HermitianMatrix::from_hermitian_part(&inner)?)?;
    let f: f64 = sqrt_eigenvalues(&spectrum)?.iter().sum();
    clamp_unit(f).ok_or(Error::FidelityOutOfRange(f))
}

fn clamp_unit(x: f64) -> Option<f64> {
    if (-FIDELITY_CLAMP_TOL..=1.0 + FIDELITY_CLAMP_TOL).contains(&x) {
        Some(x.clamp(0.0, 1.0))
    } else {
        None
    }
}

/// Fidelities within this of 1 give a zero angle; `acos` would turn a few
/// ulps of rounding into an angle near `1e-8`.
const UNIT_FIDELITY_ULPS: f64 = 8.0 * f64::EPSILON;

/// `arccos F(rho, sigma)`, in `[0, pi/2]`.
pub fn bures_angle(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let f = fidelity(rho, sigma)?;
    if f >= 1.0 - UNIT_FIDELITY_ULPS {
        return Ok(0.0);
    }
    Ok(f.acos())
}

/// `1/2 sum |lambda_i(rho - sigma)|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let diff = HermitianMatrix::from_hermitian_part(&(rho.matrix() - sigma.matrix()))?;
    Ok(0.5 * eigh(&diff)?.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
}

/// Qubit state `rho = 1/2 (I + x sigma_x + y sigma_y + z sigma_z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// `1/2 v.sigma`, the traceless part of a qubit operator; used for
    /// velocities `rho_dot = 1/2 r_dot.sigma`.
    pub fn to_traceless(&self) -> HermitianMatrix {
        let [sx, sy, sz] = pauli();
        let mut m = CMatrix::zeros(2);
        m.add_scaled(0.5 * self.x, &sx);
        m.add_scaled(0.5 * self.y, &sy);
        m.add_scaled(0.5 * self.z, &sz);
        HermitianMatrix::from_hermitian_part(&m).expect("dim 2")
    }

    /// Components `Tr(A sigma_i)` of a qubit operator.
    pub fn from_operator(a: &CMatrix) -> Result<Self> {
        if a.dim() != 2 {
            return Err(Error::UnsupportedDimension(a.dim()));
        }
        Ok(BlochVector {
            x: 2.0 * a[(0, 1)].re,
            y: -2.0 * a[(0, 1)].im,
            z: (a[(0, 0)] - a[(1, 1)]).re,
        })
    }
}

pub fn bloch_to_state(v: &BlochVector) -> Result<DensityMatrix> {
    let r = v.norm();
    if !(r <= 1.0 + 1e-10) {
        return Err(Error::BlochOutOfBall(r));
    }
    let mut m = v.to_traceless().into_matrix();
    m.add_scaled(0.5, &CMatrix::identity(2));
    DensityMatrix::from_matrix(m)
}

pub fn state_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    BlochVector::from_operator(rho.matrix())
}
