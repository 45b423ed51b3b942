//! The invariant suite behind `qsl verify`.
//!
//! Every group draws from a fixed seed, so a failure reproduces exactly.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{Attainability, BoundAnalysis, CONSISTENCY_TOL, DEFAULT_ATTAINABILITY_TOL};
use crate::dynamics::{evolve, CatalogModel};
use crate::geometry::{qfi_rate, qfi_rate_bloch};
use crate::linalg::{HermitianMatrix, Norm};
use crate::sample::{random_bloch, random_density_matrix, random_hermitian, random_pure_state};
use crate::state::{bloch_to_state, bures_angle, fidelity, trace_distance, BlochVector};
use crate::Result;

const SEED: u64 = 0x5eed_0001;

/// Outcome of one invariant group.
#[derive(Debug, Clone)]
pub struct GroupResult {
    pub name: &'static str,
    pub checks: usize,
    /// Inputs and observed values of the first violation.
    pub counterexample: Option<String>,
}

impl GroupResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

type Outcome = Result<std::result::Result<usize, String>>;

fn group(name: &'static str, body: impl FnOnce(&mut ChaCha8Rng) -> Outcome) -> GroupResult {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (checks, counterexample) = match body(&mut rng) {
        Ok(Ok(n)) => (n, None),
        Ok(Err(c)) => (0, Some(c)),
        Err(e) => (0, Some(format!("numerical error: {e}"))),
    };
    GroupResult {
        name,
        checks,
        counterexample,
    }
}

fn eigh_residuals(rng: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    for dim in 2..=8 {
        for _ in 0..10 {
            let h = random_hermitian(rng, dim);
            let res = h.eigh()?.reconstruct().max_abs_diff(h.matrix());
            if res > 1e-10 {
                return Ok(Err(format!(
                    "dim {dim}: reconstruction residual {res:.3e}\n{:?}",
                    h.matrix()
                )));
            }
            n += 1;
        }
    }
    Ok(Ok(n))
}

fn fidelity_symmetry(rng: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    for k in 0..100 {
        let dim = 2 + k % 3;
        let a = random_density_matrix(rng, dim);
        let b = random_density_matrix(rng, dim);
        let (fab, fba) = (fidelity(&a, &b)?, fidelity(&b, &a)?);
        if (fab - fba).abs() > 1e-9 {
            return Ok(Err(format!(
                "F(a,b) = {fab}, F(b,a) = {fba}\na = {:?}\nb = {:?}",
                a.matrix(),
                b.matrix()
            )));
        }
        // pure states: F = |<psi|phi>|
        let p = random_pure_state(rng, dim);
        let q = random_pure_state(rng, dim);
        let overlap = (p.matrix() * q.matrix()).trace().re.max(0.0).sqrt();
        let f = fidelity(&p, &q)?;
        if (f - overlap).abs() > 1e-7 {
            return Ok(Err(format!("pure pair: F = {f}, |<p|q>| = {overlap}")));
        }
        n += 2;
    }
    Ok(Ok(n))
}

fn fuchs_van_de_graaf(rng: &mut ChaCha8Rng) -> Outcome {
    for k in 0..100 {
        let dim = 2 + k % 4;
        let a = random_density_matrix(rng, dim);
        let b = random_density_matrix(rng, dim);
        let f = fidelity(&a, &b)?;
        let d = trace_distance(&a, &b)?;
        let upper = (1.0 - f * f).max(0.0).sqrt();
        if d < 1.0 - f - 1e-10 || d > upper + 1e-10 {
            return Ok(Err(format!(
                "1 - F = {}, D = {d}, sqrt(1 - F^2) = {upper}\na = {:?}\nb = {:?}",
                1.0 - f,
                a.matrix(),
                b.matrix()
            )));
        }
    }
    Ok(Ok(100))
}

fn norm_ordering(rng: &mut ChaCha8Rng) -> Outcome {
    for k in 0..100 {
        let h = random_hermitian(rng, 2 + k % 7);
        let s = h.schatten_norms()?;
        if !(s.op <= s.hs && s.hs <= s.tr) {
            return Ok(Err(format!("op {} hs {} tr {}\n{:?}", s.op, s.hs, s.tr, h.matrix())));
        }
    }
    Ok(Ok(100))
}

fn qfi_agreement(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..100 {
        let radius = rng.gen_range(0.0..0.99);
        let r = random_bloch(rng, radius);
        let v = BlochVector::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let rho = bloch_to_state(&r)?;
        let spectral = qfi_rate(&rho, &v.to_traceless())?;
        let closed = qfi_rate_bloch(&r, &v)?;
        if (spectral - closed).abs() > 1e-6 * closed.max(1e-12) {
            return Ok(Err(format!(
                "r = {r:?}, v = {v:?}: spectral {spectral}, Bloch {closed}"
            )));
        }
    }
    Ok(Ok(100))
}

fn catalog_grid() -> Vec<CatalogModel> {
    let mut out = Vec::new();
    for &g in &[0.5, 2.0] {
        for &w in &[0.5, 2.0] {
            out.push(CatalogModel::AmplitudeDamping { gamma: g });
            out.push(CatalogModel::PureDephasing { gamma: g });
            out.push(CatalogModel::Precession { omega: w });
            out.push(CatalogModel::Spiral { gamma: g, omega: w });
        }
    }
    out
}

fn length_inequality(_: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    for m in catalog_grid() {
        let tau = 4.0 / m.relaxation_rate();
        let traj = evolve(&m.build(), &m.initial_state(), tau, 1000)?;
        let a = BoundAnalysis::new(&traj, DEFAULT_ATTAINABILITY_TOL)?;
        for (i, (&b, &l)) in a.angles().iter().zip(&a.path().length).enumerate() {
            if b > l + CONSISTENCY_TOL {
                return Ok(Err(format!("{m:?} at t = {}: B = {b}, l = {l}", traj.time(i))));
            }
            n += 1;
        }
        // Deffner-Lutz ordering on the same run
        let r = a.final_report()?;
        if let (Some(op), Some(hs), Some(tr)) = (r.tau_op, r.tau_hs, r.tau_tr) {
            if !(op >= hs && hs >= tr) {
                return Ok(Err(format!("{m:?}: tau_op {op}, tau_hs {hs}, tau_tr {tr}")));
            }
        }
    }
    Ok(Ok(n))
}

fn average_identity(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..20 {
        let gamma = rng.gen_range(0.1..3.0);
        let omega = rng.gen_range(0.0..6.0);
        let m = CatalogModel::Spiral { gamma, omega };
        let radius = rng.gen_range(0.0..1.0);
        let rho0 = bloch_to_state(&random_bloch(rng, radius))?;
        let tau = rng.gen_range(0.2..4.0);
        let traj = evolve(&m.build(), &rho0, tau, 200)?;
        let r = BoundAnalysis::new(&traj, DEFAULT_ATTAINABILITY_TOL)?.final_report()?;
        if (r.tau_av - r.ratio * r.tau).abs() > 1e-12 * r.tau {
            return Ok(Err(format!(
                "gamma {gamma}, omega {omega}, tau {tau}: tau_av {} vs ratio*tau {}",
                r.tau_av,
                r.ratio * r.tau
            )));
        }
    }
    Ok(Ok(20))
}

fn geodesic_collapse(_: &mut ChaCha8Rng) -> Outcome {
    let m = CatalogModel::AmplitudeDamping { gamma: 1.0 };
    let tau = 4f64.ln();
    let traj = evolve(&m.build(), &m.initial_state(), tau, 4000)?;
    let r = BoundAnalysis::new(&traj, DEFAULT_ATTAINABILITY_TOL)?.final_report()?;
    let checks = [
        ("l - pi/3", (r.path_length - PI / 3.0).abs(), 1e-4),
        ("tau_min - tau", (r.tau_min.time - tau).abs(), 1e-3 * tau),
        ("tau_av - tau", (r.tau_av - tau).abs(), 1e-3 * tau),
        (
            "tau_op / tau - 1",
            (r.tau_norm(Norm::Operator).unwrap_or(f64::NAN) / tau - 1.0).abs(),
            1e-3,
        ),
    ];
    for (what, err, tol) in checks {
        if !(err <= tol) {
            return Ok(Err(format!(
                "amplitude damping gamma 1, tau ln 4: |{what}| = {err:.3e} > {tol:.1e}"
            )));
        }
    }
    if r.verdict.kind != Attainability::Attainable {
        return Ok(Err(format!(
            "amplitude damping gamma 1, tau ln 4: verdict {}",
            r.verdict.kind
        )));
    }
    let m = CatalogModel::PureDephasing { gamma: 1.0 };
    let traj = evolve(&m.build(), &m.initial_state(), 2.0, 2000)?;
    let a = BoundAnalysis::new(&traj, DEFAULT_ATTAINABILITY_TOL)?;
    for (i, (&b, &l)) in a.angles().iter().zip(&a.path().length).enumerate() {
        if (b - l).abs() > 1e-4 {
            return Ok(Err(format!(
                "dephasing gamma 1 at t = {}: B = {b}, l = {l}",
                traj.time(i)
            )));
        }
    }
    Ok(Ok(4 + a.angles().len()))
}

fn trace_distance_contraction(rng: &mut ChaCha8Rng) -> Outcome {
    for m in catalog_grid() {
        let a = bloch_to_state(&random_bloch(rng, 0.9))?;
        let b = bloch_to_state(&random_bloch(rng, 0.5))?;
        let ta = evolve(&m.build(), &a, 2.0, 200)?;
        let tb = evolve(&m.build(), &b, 2.0, 200)?;
        let mut prev = f64::INFINITY;
        for (i, (x, y)) in ta.states().iter().zip(tb.states()).enumerate() {
            let d = trace_distance(x, y)?;
            if d > prev + 1e-12 {
                return Ok(Err(format!("{m:?} at t = {}: D rose from {prev} to {d}", ta.time(i))));
            }
            prev = d;
        }
    }
    Ok(Ok(catalog_grid().len()))
}

fn bures_range(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..50 {
        let a = random_density_matrix(rng, 3);
        let b = random_density_matrix(rng, 3);
        let angle = bures_angle(&a, &b)?;
        let self_fidelity = fidelity(&a, &a)?;
        if !(0.0..=PI / 2.0).contains(&angle) || self_fidelity < 1.0 - 1e-8 {
            return Ok(Err(format!("B(a,b) = {angle}, F(a,a) = {self_fidelity}")));
        }
    }
    let zero = HermitianMatrix::diagonal(&[1.0, 0.0])?;
    let one = HermitianMatrix::diagonal(&[0.0, 1.0])?;
    let orth = bures_angle(
        &crate::state::DensityMatrix::new(zero)?,
        &crate::state::DensityMatrix::new(one)?,
    )?;
    if (orth - PI / 2.0).abs() > 1e-12 {
        return Ok(Err(format!("orthogonal pure states: B = {orth}")));
    }
    Ok(Ok(51))
}

/// Runs every group in a fixed order.
pub fn run_suite() -> Vec<GroupResult> {
    vec![
        group("eigensolver-residuals", eigh_residuals),
        group("fidelity-symmetry", fidelity_symmetry),
        group("fuchs-van-de-graaf", fuchs_van_de_graaf),
        group("bures-angle-range", bures_range),
        group("schatten-norm-ordering", norm_ordering),
        group("qfi-spectral-vs-bloch", qfi_agreement),
        group("angle-below-length", length_inequality),
        group("average-time-identity", average_identity),
        group("geodesic-collapse", geodesic_collapse),
        group("trace-distance-contraction", trace_distance_contraction),
    ]
}
