//! Error curves, empirical convergence orders, Voronovskaja residuals, moduli
//! of continuity and the explicit error bound for order-I operators.

use std::collections::VecDeque;
use std::f64::consts::SQRT_2;

use rayon::prelude::*;

use crate::basis::LinearCoeff;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::moments::closed_central_m1;
use crate::operators::{apply_on_grid, OperatorSpec, SequenceFamily};
use crate::target::TargetFunction;

/// Sample count used for moduli of continuity unless told otherwise.
pub const DEFAULT_MODULUS_RESOLUTION: usize = 10_000;

/// Sup-errors below this are treated as exact reproduction and left out of fits.
pub const FIT_FLOOR: f64 = 1e-12;

/// Rounding allowance when comparing an error against a bound that may be 0.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub label: String,
    pub n: usize,
    /// `(x, |f(x) - D(f; x)|)`
    pub per_point: Vec<(f64, f64)>,
    pub sup_error: f64,
}

impl ErrorReport {
    /// The point where the error peaks (first one on ties).
    pub fn argmax(&self) -> f64 {
        self.per_point
            .iter()
            .fold(
                (f64::NAN, f64::NEG_INFINITY),
                |best, &(x, e)| if e > best.1 { (x, e) } else { best },
            )
            .0
    }
}

pub fn error_report(spec: &OperatorSpec, f: &TargetFunction, grid: &Grid) -> ErrorReport {
    let per_point: Vec<(f64, f64)> = apply_on_grid(spec, f, grid)
        .into_iter()
        .map(|(x, v)| (x, (f.eval(x) - v).abs()))
        .collect();
    let sup_error = per_point.iter().map(|p| p.1).fold(0.0, f64::max);
    ErrorReport {
        label: spec.label().to_string(),
        n: spec.n(),
        per_point,
        sup_error,
    }
}

/// Least-squares line through `(ln n, ln sup_error)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub n_values: Vec<usize>,
    pub sup_errors: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Degrees whose error fell below [`FIT_FLOOR`] and were excluded.
    pub dropped: Vec<usize>,
}

impl RateFit {
    /// Slope between consecutive fitted points.
    pub fn local_slopes(&self) -> Vec<f64> {
        let kept: Vec<(f64, f64)> = self
            .n_values
            .iter()
            .zip(&self.sup_errors)
            .filter(|(n, _)| !self.dropped.contains(n))
            .map(|(&n, &e)| ((n as f64).ln(), e.ln()))
            .collect();
        kept.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect()
    }
}

/// Fits `ln e = slope ln n + intercept`, skipping errors below [`FIT_FLOOR`].
pub fn fit_loglog(n_values: &[usize], sup_errors: &[f64]) -> Result<RateFit> {
    if n_values.len() != sup_errors.len() {
        return Err(Error::InvalidConfig(format!(
            "{} degrees but {} errors",
            n_values.len(),
            sup_errors.len()
        )));
    }
    let mut dropped = Vec::new();
    let mut pts = Vec::new();
    for (&n, &e) in n_values.iter().zip(sup_errors) {
        if e.is_finite() && e >= FIT_FLOOR {
            pts.push(((n as f64).ln(), e.ln()));
        } else {
            dropped.push(n);
        }
    }
    if pts.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "{} of {} errors are below {FIT_FLOOR:e}; the target looks reproduced",
            dropped.len(),
            n_values.len()
        )));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all fitted degrees coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(RateFit {
        n_values: n_values.to_vec(),
        sup_errors: sup_errors.to_vec(),
        slope,
        intercept,
        r_squared,
        dropped,
    })
}

/// Sup-errors of `family` at every degree, fitted on a log-log scale.
///
/// Needs at least four distinct degrees, each at or above the family minimum.
pub fn convergence_order(
    family: &SequenceFamily,
    f: &TargetFunction,
    n_values: &[usize],
    grid: &Grid,
) -> Result<RateFit> {
    let mut distinct = n_values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(Error::InvalidConfig(format!(
            "a rate fit needs at least 4 distinct degrees, got {n_values:?}"
        )));
    }
    let specs = n_values.iter().map(|&n| family.at(n)).collect::<Result<Vec<_>>>()?;
    let errors: Vec<f64> = specs
        .par_iter()
        .map(|spec| error_report(spec, f, grid).sup_error)
        .collect();
    fit_loglog(n_values, &errors)
}

/// `n (D_n f - f)(x)` minus its limit
/// `(1-2x)(2 l1 + 3 l0) f'(x) + x(1-x)(2 l0 + l1) f''(x)` on the grid.
pub fn voronovskaja_residual(
    family: &SequenceFamily,
    f: &TargetFunction,
    n: usize,
    grid: &Grid,
) -> Result<Vec<(f64, f64)>> {
    let (l0, l1) = family.limits().ok_or_else(|| {
        Error::MissingLimits(format!(
            "family `{}` has no limits (l0, l1); supply them to form the Voronovskaja limit",
            family.name
        ))
    })?;
    let spec = family.at(n)?;
    let nf = n as f64;
    Ok(apply_on_grid(&spec, f, grid)
        .into_iter()
        .map(|(x, v)| {
            let limit = (1.0 - 2.0 * x) * (2.0 * l1 + 3.0 * l0) * f.first_derivative(x)
                + x * (1.0 - x) * (2.0 * l0 + l1) * f.second_derivative(x);
            (x, nf * (v - f.eval(x)) - limit)
        })
        .collect())
}

/// Result of the quantitative Voronovskaja comparison for the reproducing
/// order-I operator (`a0 = 2`, `a1 = -3`).
#[derive(Debug, Clone, PartialEq)]
pub struct VoronovskajaCheck {
    /// `(x, D f - f - D((t-x)^2) f'' / 2)`
    pub lhs: Vec<(f64, f64)>,
    pub sup_lhs: f64,
    /// `omega(f'', 1/sqrt(n))`
    pub omega: f64,
    /// `sup|lhs| / (omega / n)`, or `n sup|lhs|` when `omega` is 0.
    pub ratio: f64,
}

pub fn quantitative_voronovskaja_check(f: &TargetFunction, n: usize, grid: &Grid) -> Result<VoronovskajaCheck> {
    let c = LinearCoeff::new(2.0, -3.0);
    let spec = OperatorSpec::m1(n, c)?;
    let lhs = apply_on_grid(&spec, f, grid)
        .into_iter()
        .map(|(x, v)| {
            let c2 = closed_central_m1(&c, n, 2, x)?;
            Ok((x, v - f.eval(x) - 0.5 * c2 * f.second_derivative(x)))
        })
        .collect::<Result<Vec<_>>>()?;
    let sup_lhs = lhs.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let omega = modulus_first(
        |x| f.second_derivative(x),
        1.0 / (n as f64).sqrt(),
        DEFAULT_MODULUS_RESOLUTION,
    );
    let nf = n as f64;
    let ratio = if omega == 0.0 {
        sup_lhs * nf
    } else {
        sup_lhs * nf / omega
    };
    Ok(VoronovskajaCheck {
        lhs,
        sup_lhs,
        omega,
        ratio,
    })
}

fn samples(f: impl Fn(f64) -> f64, resolution: usize) -> Vec<f64> {
    let r = resolution as f64;
    (0..=resolution).map(|i| f(i as f64 / r)).collect()
}

fn window(delta: f64, resolution: usize) -> usize {
    ((delta.clamp(0.0, 1.0) * resolution as f64) + 1e-9).floor() as usize
}

/// `max |f(s) - f(t)|` over sample pairs `i/res`, `j/res` with `|s - t| <= delta`.
///
/// Sliding-window max and min, linear in `resolution`.
pub fn modulus_first(f: impl Fn(f64) -> f64, delta: f64, resolution: usize) -> f64 {
    let resolution = resolution.max(1);
    let v = samples(f, resolution);
    let w = window(delta, resolution);
    if w == 0 {
        return 0.0;
    }
    let mut hi: VecDeque<usize> = VecDeque::new();
    let mut lo: VecDeque<usize> = VecDeque::new();
    let mut best = 0.0f64;
    for (i, &y) in v.iter().enumerate() {
        while hi.back().is_some_and(|&j| v[j] <= y) {
            hi.pop_back();
        }
        hi.push_back(i);
        while lo.back().is_some_and(|&j| v[j] >= y) {
            lo.pop_back();
        }
        lo.push_back(i);
        let start = i.saturating_sub(w);
        while hi.front().is_some_and(|&j| j < start) {
            hi.pop_front();
        }
        while lo.front().is_some_and(|&j| j < start) {
            lo.pop_front();
        }
        best = best.max(v[hi[0]] - v[lo[0]]);
    }
    best
}

/// `max |f(x-h) - 2f(x) + f(x+h)|` over samples with `0 < h <= delta` and
/// `x +- h` in [0, 1].
pub fn modulus_second(f: impl Fn(f64) -> f64, delta: f64, resolution: usize) -> f64 {
    let resolution = resolution.max(2);
    let v = samples(f, resolution);
    let w = window(delta, resolution);
    (1..resolution)
        .into_par_iter()
        .map(|i| {
            let reach = w.min(i).min(resolution - i);
            (1..=reach)
                .map(|h| (v[i - h] - 2.0 * v[i] + v[i + h]).abs())
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
}

/// Both sides of `sup|D f - f| <= (3|a1| + 1)(1 + sqrt 2) omega(f, 1/sqrt n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub bound: f64,
    pub actual: f64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.actual <= self.bound + BOUND_SLACK
    }
}

/// Direct estimate for an order-I operator, with the actual sup-error taken
/// on the default 201-point grid.
pub fn direct_bound(c: LinearCoeff, n: usize, f: &TargetFunction) -> Result<BoundCheck> {
    let spec = OperatorSpec::m1(n, c)?;
    let actual = error_report(&spec, f, &Grid::default()).sup_error;
    let omega = modulus_first(|x| f.eval(x), 1.0 / (n as f64).sqrt(), DEFAULT_MODULUS_RESOLUTION);
    let bound = (3.0 * c.a1.abs() + 1.0) * (1.0 + SQRT_2) * omega;
    Ok(BoundCheck { bound, actual })
}
