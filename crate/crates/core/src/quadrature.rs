//! Fixed-order Gauss-Legendre rules used by the path-length integrator and
//! the closed-form oracles.

/// Eight-point Gauss-Legendre nodes on `[-1, 1]` (positive half; the rule is symmetric).
#[allow(clippy::excessive_precision)]
const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Nodes and weights of the eight-point rule mapped to `[a, b]`.
pub fn gauss_legendre_8(a: f64, b: f64) -> [(f64, f64); 8] {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = [(0.0, 0.0); 8];
    for (i, (&x, &w)) in GL8_NODES.iter().zip(&GL8_WEIGHTS).enumerate() {
        out[2 * i] = (mid - half * x, half * w);
        out[2 * i + 1] = (mid + half * x, half * w);
    }
    out
}

/// Nodes `t` and weights for `int_a^b f(t) dt` after substituting `t = u^2`.
///
/// The weights absorb the Jacobian `2u`, so an integrand behaving like
/// `t^{-1/2}` near zero becomes smooth in `u` and is integrated to full order.
pub fn sqrt_substituted_rule(a: f64, b: f64) -> [(f64, f64); 8] {
    let mut rule = gauss_legendre_8(a.max(0.0).sqrt(), b.max(0.0).sqrt());
    for (node, weight) in rule.iter_mut() {
        let u = *node;
        *node = u * u;
        *weight *= 2.0 * u;
    }
    rule
}

/// `int_0^t f` for an integrand with at most a `t^{-1/2}` singularity at zero,
/// using `panels` equal panels in `u = sqrt(t)`.
pub fn integrate_from_zero(f: impl Fn(f64) -> f64, t: f64, panels: usize) -> f64 {
    let root = t.max(0.0).sqrt();
    let mut sum = 0.0;
    for p in 0..panels {
        let a = root * p as f64 / panels as f64;
        let b = root * (p + 1) as f64 / panels as f64;
        sum += gauss_legendre_8(a, b)
            .iter()
            .map(|&(u, w)| w * 2.0 * u * f(u * u))
            .sum::<f64>();
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_degree_fifteen() {
        let got: f64 = gauss_legendre_8(-1.0, 2.0).iter().map(|&(x, w)| w * x.powi(15)).sum();
        let exact = (2f64.powi(16) - 1.0) / 16.0;
        assert!((got - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn weights_sum_to_length() {
        let s: f64 = gauss_legendre_8(0.5, 3.0).iter().map(|p| p.1).sum();
        assert!((s - 2.5).abs() < 1e-14);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        // int_0^4 t^{-1/2} dt = 4
        let got = integrate_from_zero(|t| 1.0 / t.sqrt(), 4.0, 1);
        assert!((got - 4.0).abs() < 1e-13);
        let cell: f64 = sqrt_substituted_rule(0.0, 1e-3)
            .iter()
            .map(|&(t, w)| w / t.sqrt())
            .sum();
        assert!((cell - 2.0 * 1e-3f64.sqrt()).abs() < 1e-14);
    }
}
