//! Integrals `∫_0^1 p_{n,k}(t) f(t) dt`.
//!
//! Monomials have the closed form `n! (k+m)! / (k! (n+m+1)!)`; everything else
//! goes through Gauss-Legendre rules mapped to [0, 1], split into panels at the
//! target's declared breakpoints.

use std::f64::consts::PI;

use statrs::function::factorial::ln_factorial;

use crate::basis::{bernstein_row, bernstein_unchecked, BasisIndex};
use crate::compensated::{self, NeumaierSum};
use crate::error::{Error, Result};
use crate::target::TargetFunction;

/// Panels per breakpoint-delimited segment for non-smooth targets.
pub const PANELS_PER_SEGMENT: usize = 4;

/// Node/weight rule on [0, 1] (possibly composite).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Highest polynomial degree integrated exactly.
    pub order: usize,
}

impl QuadratureRule {
    /// `m`-point Gauss-Legendre rule on [0, 1].
    pub fn gauss_legendre(m: usize) -> Self {
        assert!(m > 0, "a quadrature rule needs at least one node");
        let (nodes, weights) = gauss_legendre_unit(m);
        Self {
            nodes,
            weights,
            order: 2 * m - 1,
        }
    }

    /// Composite rule: `m` Gauss nodes on every panel `[cuts[i], cuts[i+1]]`,
    /// so `cuts` must include both ends.
    pub fn composite(cuts: &[f64], m: usize) -> Self {
        let (base_nodes, base_weights) = gauss_legendre_unit(m);
        let mut nodes = Vec::with_capacity(m * cuts.len());
        let mut weights = Vec::with_capacity(m * cuts.len());
        for pair in cuts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let h = b - a;
            if h <= 0.0 {
                continue;
            }
            for (t, w) in base_nodes.iter().zip(&base_weights) {
                nodes.push(a + h * t);
                weights.push(h * w);
            }
        }
        Self {
            nodes,
            weights,
            order: 2 * m - 1,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        compensated::sum(self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)))
    }
}

/// Gauss-Legendre nodes (ascending) and weights on [0, 1], by Newton iteration
/// on the three-term Legendre recurrence.
fn gauss_legendre_unit(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root on [-1, 1]
        let theta = PI * (i as f64 + 0.75) / (mf + 0.5);
        let mut z = (theta.cos())
            * (1.0
                - (mf - 1.0) / (8.0 * mf * mf * mf)
                - 1.0 / (384.0 * mf.powi(4)) * (39.0 - 28.0 / (theta.sin().powi(2))));
        if !z.is_finite() || z.abs() >= 1.0 {
            z = theta.cos();
        }
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() <= 1e-16 * z.abs().max(1.0) {
                let (_, d) = legendre_with_derivative(m, z);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        // on [0,1]: t = (1 + z) / 2, weight halves
        nodes[m - 1 - i] = 0.5 * (1.0 + z);
        weights[m - 1 - i] = 0.5 * w;
        nodes[i] = 0.5 * (1.0 - z);
        weights[i] = 0.5 * w;
    }
    if m % 2 == 1 {
        // the middle root is exactly zero on [-1, 1]
        let mid = m / 2;
        let (_, d) = legendre_with_derivative(m, 0.0);
        nodes[mid] = 0.5;
        weights[mid] = 1.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for j in 2..=m {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let d = m as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule on [0,1] exact for degree `min_exactness`.
pub fn make_rule(min_exactness: usize) -> QuadratureRule {
    QuadratureRule::gauss_legendre((min_exactness + 2) / 2)
}

/// Node count used by the operators for degree-`n` integrands.
pub fn default_node_count(n: usize) -> usize {
    64usize.max((n + 16).div_ceil(2) + 2)
}

/// Default rule for `∫ p_{n,k} f`: one panel for smooth targets, otherwise
/// [`PANELS_PER_SEGMENT`] panels between consecutive breakpoints.
pub fn default_rule(n: usize, f: &TargetFunction) -> QuadratureRule {
    let m = default_node_count(n);
    let inner: Vec<f64> = f
        .breakpoints()
        .iter()
        .copied()
        .filter(|b| *b > 0.0 && *b < 1.0)
        .collect();
    if inner.is_empty() {
        return QuadratureRule::gauss_legendre(m);
    }
    let mut segment_ends = vec![0.0];
    segment_ends.extend(inner);
    segment_ends.push(1.0);
    segment_ends.sort_by(f64::total_cmp);
    segment_ends.dedup();
    let mut cuts = vec![0.0];
    for pair in segment_ends.windows(2) {
        let h = (pair[1] - pair[0]) / PANELS_PER_SEGMENT as f64;
        for j in 1..=PANELS_PER_SEGMENT {
            cuts.push(if j == PANELS_PER_SEGMENT {
                pair[1]
            } else {
                pair[0] + h * j as f64
            });
        }
    }
    QuadratureRule::composite(&cuts, m)
}

/// `∫_0^1 p_{n,k}(t) t^m dt = n! (k+m)! / (k! (n+m+1)!)`.
pub fn basis_monomial_integral(n: usize, k: usize, m: usize) -> Result<f64> {
    if k > n {
        return Err(Error::domain(format!("index k = {k} outside 0..={n}")));
    }
    Ok(monomial_integral_unchecked(n, k, m))
}

/// Up to this power the integral is a short product `1/(n+1) * prod (k+j)/(n+1+j)`
/// accurate to a few ulps; beyond it log-gamma is used.
const PRODUCT_FORM_MAX_POWER: usize = 64;

pub(crate) fn monomial_integral_unchecked(n: usize, k: usize, m: usize) -> f64 {
    if m <= PRODUCT_FORM_MAX_POWER {
        let (nf, kf) = (n as f64, k as f64);
        (1..=m).fold(1.0 / (nf + 1.0), |acc, j| acc * (kf + j as f64) / (nf + 1.0 + j as f64))
    } else {
        let (n, k, m) = (n as u64, k as u64, m as u64);
        (ln_factorial(n) + ln_factorial(k + m) - ln_factorial(k) - ln_factorial(n + m + 1)).exp()
    }
}

/// Quadrature approximation of `∫_0^1 p_{n,k}(t) f(t) dt`.
pub fn basis_function_integral(n: usize, k: usize, f: &TargetFunction, rule: &QuadratureRule) -> f64 {
    let idx = BasisIndex::new(n, k as i64);
    rule.integrate(|t| bernstein_unchecked(idx, t) * f.eval(t))
}

/// `∫ p_{n,k} f` for every `k = 0..=n`.
///
/// Polynomial targets use the closed-form monomial integrals; other targets
/// use [`default_rule`].
pub fn basis_integrals(n: usize, f: &TargetFunction) -> Vec<f64> {
    match f.polynomial_coeffs() {
        Some(coeffs) => (0..=n)
            .map(|k| {
                compensated::sum(
                    coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0.0)
                        .map(|(m, c)| c * monomial_integral_unchecked(n, k, m)),
                )
            })
            .collect(),
        None => basis_integrals_with_rule(n, f, &default_rule(n, f)),
    }
}

/// `∫ p_{n,k} f` for every `k` with an explicit rule.
pub fn basis_integrals_with_rule(n: usize, f: &TargetFunction, rule: &QuadratureRule) -> Vec<f64> {
    let mut acc = vec![NeumaierSum::new(); n + 1];
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let wf = w * f.eval(t);
        if wf == 0.0 {
            continue;
        }
        for (a, p) in acc.iter_mut().zip(bernstein_row(n, t)) {
            a.add(wf * p);
        }
    }
    acc.iter().map(NeumaierSum::value).collect()
}
