//! Small dense complex matrices and the Hermitian eigensolver.
//!
//! Everything here targets dimensions 2 through 8, so matrices are plain
//! row-major `Vec<Complex64>` and the eigensolver is a cyclic complex Jacobi
//! iteration.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

/// Absolute tolerance on `A - A^dagger` for Hermitian inputs.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues in `(-PSD_TOL, 0)` are clamped to zero; below is an error.
pub const PSD_TOL: f64 = 1e-10;

const JACOBI_THRESHOLD: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            m[(j, j)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                data.push(f(j, k));
            }
        }
        CMatrix { dim, data }
    }

    /// Builds a matrix from a flat row-major slice; its length must be a perfect square.
    pub fn from_row_major(data: Vec<C64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Ok(CMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("rows are not all of equal length".into()));
        }
        Ok(CMatrix {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (j, &v) in values.iter().enumerate() {
            m[(j, j)] = C64::new(v, 0.0);
        }
        m
    }

    /// `|psi><psi|`.
    pub fn outer(psi: &[C64]) -> Self {
        Self::from_fn(psi.len(), |j, k| psi[j] * psi[k].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |j, k| self[(k, j)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|j| self[(j, j)]).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    /// `self + factor * other`, in place.
    pub fn add_scaled(&mut self, factor: f64, other: &CMatrix) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * factor;
        }
    }

    pub fn commutator(&self, other: &CMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &CMatrix) -> Self {
        &(self * other) + &(other * self)
    }

    /// `(A + A^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |j, k| (self[(j, k)] + self[(k, j)].conj()) * 0.5)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |A - A^dagger|` entrywise.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for j in 0..self.dim {
            for k in j..self.dim {
                dev = dev.max((self[(j, k)] - self[(k, j)].conj()).norm());
            }
        }
        dev
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_same_dim(&self, other: &CMatrix) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (j, k): (usize, usize)) -> &C64 {
        &self.data[j * self.dim + k]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut C64 {
        &mut self.data[j * self.dim + k]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.check_same_dim(rhs);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.check_same_dim(rhs);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.check_same_dim(rhs);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for j in 0..n {
            for l in 0..n {
                let a = self.data[j * n + l];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    out.data[j * n + k] += a * rhs.data[l * n + k];
                }
            }
        }
        out
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for j in 0..self.dim {
            write!(f, "  ")?;
            for k in 0..self.dim {
                let z = self[(j, k)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Which Schatten norm to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    /// Largest singular value.
    Operator,
    /// Square root of the sum of squared singular values.
    HilbertSchmidt,
    /// Sum of singular values.
    Trace,
}

impl Norm {
    pub const ALL: [Norm; 3] = [Norm::Operator, Norm::HilbertSchmidt, Norm::Trace];

    pub fn label(self) -> &'static str {
        match self {
            Norm::Operator => "op",
            Norm::HilbertSchmidt => "hs",
            Norm::Trace => "tr",
        }
    }
}

/// All three Schatten norms of one Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SchattenNorms {
    pub op: f64,
    pub hs: f64,
    pub tr: f64,
}

impl SchattenNorms {
    pub fn get(&self, which: Norm) -> f64 {
        match which {
            Norm::Operator => self.op,
            Norm::HilbertSchmidt => self.hs,
            Norm::Trace => self.tr,
        }
    }

    fn from_eigenvalues(eigenvalues: &[f64]) -> Self {
        let op = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
        let tr: f64 = eigenvalues.iter().map(|l| l.abs()).sum();
        let hs = eigenvalues.iter().map(|l| l * l).sum::<f64>().sqrt();
        // rounding can push hs one ulp outside [op, tr]
        SchattenNorms {
            op,
            hs: hs.min(tr).max(op),
            tr,
        }
    }
}

/// A complex Hermitian matrix with `2 <= dim <= 8`.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates dimension and Hermiticity (absolute tolerance 1e-12), then
    /// stores the exact Hermitian part.
    pub fn new(m: CMatrix) -> Result<Self> {
        check_dim(m.dim())?;
        let dev = m.hermiticity_deviation();
        if !(dev <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(HermitianMatrix(m.hermitian_part()))
    }

    /// Projects onto the Hermitian part without checking the deviation.
    pub fn from_hermitian_part(m: &CMatrix) -> Result<Self> {
        check_dim(m.dim())?;
        Ok(HermitianMatrix(m.hermitian_part()))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(HermitianMatrix(CMatrix::zeros(dim)))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(HermitianMatrix(CMatrix::identity(dim)))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        check_dim(values.len())?;
        Ok(HermitianMatrix(CMatrix::diagonal(values)))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn eigh(&self) -> Result<Spectrum> {
        eigh(self)
    }

    pub fn schatten_norm(&self, which: Norm) -> Result<f64> {
        schatten_norm(self, which)
    }

    pub fn schatten_norms(&self) -> Result<SchattenNorms> {
        Ok(SchattenNorms::from_eigenvalues(&eigh(self)?.eigenvalues))
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Eigen-decomposition `A = V diag(eigenvalues) V^dagger`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns.
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    /// `V diag(f(lambda)) V^dagger`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        CMatrix::from_fn(n, |j, k| (0..n).map(|m| v[(j, m)] * fl[m] * v[(k, m)].conj()).sum())
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|l| l)
    }

    /// Smallest eigenvalue.
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }
}

fn max_off_diagonal(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut off: f64 = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            off = off.max(a[(j, k)].norm());
        }
    }
    off
}

/// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
///
/// Sweeps stop once the largest off-diagonal modulus is at most `1e-13`
/// times the largest entry of the input, so tiny matrices (differences of
/// nearby states) keep their relative accuracy.
pub fn eigh(matrix: &HermitianMatrix) -> Result<Spectrum> {
    let mut a = matrix.matrix().clone();
    let n = a.dim();
    let mut v = CMatrix::identity(n);

    let scale = a.max_abs();
    if !a.is_finite() {
        return Err(Error::EigenNonConvergence {
            residual: f64::NAN,
            sweeps: 0,
        });
    }
    let threshold = JACOBI_THRESHOLD * scale;

    let mut sweeps = 0;
    loop {
        let off = max_off_diagonal(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigenNonConvergence { residual: off, sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let eigenvalues = order.iter().map(|&j| a[(j, j)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, |row, col| v[(row, order[col])]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi rotation annihilating `a[p][q]`.
///
/// The phase of `a[p][q]` is first absorbed into column `q`, which reduces
/// the 2x2 block to the real symmetric case.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * mag, 0.0);
    a[(q, q)] = C64::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Eigenvalues below this multiple of `EPSILON * max|lambda|` are rounding
/// noise; their square roots (about `1e-8`) would otherwise leak into
/// fidelities of rank-deficient states.
const SQRT_NOISE_ULPS: f64 = 16.0;

/// `sqrt(max(lambda, 0))` with eigenvalues at the rounding level of the
/// spectrum treated as exact zeros.
pub(crate) fn sqrt_eigenvalues(spectrum: &Spectrum) -> Result<Vec<f64>> {
    let min = spectrum.min();
    if min < -PSD_TOL {
        return Err(Error::NotPsd(min));
    }
    let scale = spectrum.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let noise = SQRT_NOISE_ULPS * f64::EPSILON * scale;
    Ok(spectrum
        .eigenvalues
        .iter()
        .map(|&l| if l <= noise { 0.0 } else { l.sqrt() })
        .collect())
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn matrix_sqrt(matrix: &HermitianMatrix) -> Result<HermitianMatrix> {
    let spectrum = eigh(matrix)?;
    let roots = sqrt_eigenvalues(&spectrum)?;
    let rooted = Spectrum {
        eigenvalues: roots,
        eigenvectors: spectrum.eigenvectors,
    };
    HermitianMatrix::from_hermitian_part(&rooted.reconstruct())
}

pub fn schatten_norm(matrix: &HermitianMatrix, which: Norm) -> Result<f64> {
    Ok(matrix.schatten_norms()?.get(which))
}

/// Pauli matrices `(sigma_x, sigma_y, sigma_z)`.
pub fn pauli() -> [CMatrix; 3] {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        CMatrix::from_row_major(vec![o, one, one, o]).unwrap(),
        CMatrix::from_row_major(vec![o, -i, i, o]).unwrap(),
        CMatrix::from_row_major(vec![one, o, o, -one]).unwrap(),
    ]
}
