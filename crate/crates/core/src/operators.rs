//! The classical Durrmeyer operator and its modified families
//!
//! ```text
//! D(f; x) = (n + 1) * sum_k q_{n,k}(x) * ∫_0^1 p_{n,k}(t) f(t) dt
//! ```
//!
//! where `q_{n,k}` is the Bernstein basis (classical) or one of the modified
//! bases. Every modified basis is a weighted combination of shifted rows of a
//! lower-degree Bernstein basis, `q_{n,k}(x) = sum_j w_j(x) p_{m,k-j}(x)`, and
//! evaluation sums the individual products `w_j p_{m,i} I_{i+j}` with
//! compensated summation instead of forming `q_{n,k}` first.

use std::fmt;

use rayon::prelude::*;

use crate::basis::{self, bernstein_row, check_unit, LinearCoeff, QuadraticCoeffSet, QuarticCoeffSet};
use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::grid::Grid;
use crate::quadrature::basis_integrals;
pub use crate::target::{Smoothness, TargetFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Classical,
    M1,
    M2,
    M2Tilde,
    M3Tilde,
}

impl Family {
    pub fn min_degree(self) -> usize {
        match self {
            Family::Classical => 0,
            Family::M1 => 1,
            Family::M2 | Family::M2Tilde => 2,
            Family::M3Tilde => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Classical => "classical",
            Family::M1 => "m1",
            Family::M2 => "m2",
            Family::M2Tilde => "m2-tilde",
            Family::M3Tilde => "m3-tilde",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coefficients {
    None,
    Linear(LinearCoeff),
    Quadratic(QuadraticCoeffSet),
    Quartic(QuarticCoeffSet),
}

/// A fully specified operator at a fixed degree.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    family: Family,
    n: usize,
    coeffs: Coefficients,
    label: String,
}

impl OperatorSpec {
    pub fn new(family: Family, n: usize, coeffs: Coefficients) -> Result<Self> {
        if n < family.min_degree() {
            return Err(Error::spec(format!(
                "{family} needs degree n >= {}, got n = {n}",
                family.min_degree()
            )));
        }
        let kind_ok = matches!(
            (family, &coeffs),
            (Family::Classical, Coefficients::None)
                | (Family::M1, Coefficients::Linear(_))
                | (Family::M2 | Family::M2Tilde, Coefficients::Quadratic(_))
                | (Family::M3Tilde, Coefficients::Quartic(_))
        );
        if !kind_ok {
            return Err(Error::spec(format!("{family} cannot take coefficients {coeffs:?}")));
        }
        let finite = match &coeffs {
            Coefficients::None => true,
            Coefficients::Linear(c) => c.a0.is_finite() && c.a1.is_finite(),
            Coefficients::Quadratic(c) => [c.b0, c.b1, c.b2, c.d0].iter().all(|v| v.is_finite()),
            Coefficients::Quartic(c) => c.bt.iter().chain(&c.dt).all(|v| v.is_finite()) && c.et0.is_finite(),
        };
        if !finite {
            return Err(Error::spec("coefficients must be finite"));
        }
        Ok(Self {
            family,
            n,
            coeffs,
            label: family.name().to_string(),
        })
    }

    pub fn classical(n: usize) -> Result<Self> {
        Self::new(Family::Classical, n, Coefficients::None)
    }

    pub fn m1(n: usize, c: LinearCoeff) -> Result<Self> {
        Self::new(Family::M1, n, Coefficients::Linear(c))
    }

    pub fn m2(n: usize, c: QuadraticCoeffSet) -> Result<Self> {
        Self::new(Family::M2, n, Coefficients::Quadratic(c))
    }

    pub fn m2_tilde(n: usize) -> Result<Self> {
        Self::new(Family::M2Tilde, n, Coefficients::Quadratic(QuadraticCoeffSet::tilde(n)))
    }

    pub fn m3_tilde(n: usize) -> Result<Self> {
        Self::new(Family::M3Tilde, n, Coefficients::Quartic(QuarticCoeffSet::tilde(n)))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &Coefficients {
        &self.coeffs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn linear_coeff(&self) -> Option<LinearCoeff> {
        match self.coeffs {
            Coefficients::Linear(c) => Some(c),
            _ => None,
        }
    }

    pub fn quadratic_coeffs(&self) -> Option<QuadraticCoeffSet> {
        match self.coeffs {
            Coefficients::Quadratic(c) => Some(c),
            _ => None,
        }
    }

    /// Validation mode: the operator must reproduce `e0`.
    pub fn check_constrained(&self) -> Result<()> {
        match &self.coeffs {
            Coefficients::None | Coefficients::Quartic(_) => Ok(()),
            Coefficients::Linear(c) => c.check_constraint(),
            Coefficients::Quadratic(c) => c.check_constraint(),
        }
    }

    /// Whether every basis function is non-negative on [0, 1].
    ///
    /// For order I this is exactly `a0 >= 0, a0 + a1 >= 0`. For order II the
    /// weights `b(x)`, `b(1-x)`, `d(x)` are checked on [0, 1]. The third-order
    /// preset is never positive.
    pub fn is_positive(&self) -> bool {
        match &self.coeffs {
            Coefficients::None => true,
            Coefficients::Linear(c) => c.is_positive_case(),
            Coefficients::Quadratic(c) => c.d0 >= 0.0 && quadratic_min_on_unit(c) >= 0.0,
            Coefficients::Quartic(_) => false,
        }
    }

    /// Degree `m` of the underlying Bernstein row and the weights `w_j(x)` of
    /// `p_{m,k-j}(x)` in the basis `q_{n,k}(x)`.
    pub(crate) fn kernel(&self, x: f64) -> (usize, Vec<f64>) {
        match &self.coeffs {
            Coefficients::None => (self.n, vec![1.0]),
            Coefficients::Linear(c) => (self.n - 1, vec![c.eval(x), c.eval(1.0 - x)]),
            Coefficients::Quadratic(c) => (self.n - 2, vec![c.b(x), c.d(x), c.b(1.0 - x)]),
            Coefficients::Quartic(c) => (self.n - 4, basis::m3_weights(c, x).to_vec()),
        }
    }

    /// Basis values `q_{n,k}(x)` for `k = 0..=n`.
    pub fn basis_row(&self, x: f64) -> Result<Vec<f64>> {
        check_unit(x)?;
        let (m, weights) = self.kernel(x);
        let p = bernstein_row(m, x);
        Ok((0..=self.n)
            .map(|k| {
                weights
                    .iter()
                    .enumerate()
                    .map(|(j, w)| w * basis::shifted(&p, k, j))
                    .sum()
            })
            .collect())
    }

    /// `(n+1) sum_k q_{n,k}(x) integrals[k]` for a precomputed integral table.
    pub fn evaluate_with(&self, integrals: &[f64], x: f64) -> f64 {
        debug_assert_eq!(integrals.len(), self.n + 1);
        let (m, weights) = self.kernel(x);
        combine(m, &weights, x, integrals, self.n)
    }
}

fn quadratic_min_on_unit(c: &QuadraticCoeffSet) -> f64 {
    // b(1-x) on [0,1] has the same range as b(x)
    let mut candidates = vec![c.b(0.0), c.b(1.0)];
    if c.b2 != 0.0 {
        let v = -c.b1 / (2.0 * c.b2);
        if (0.0..=1.0).contains(&v) {
            candidates.push(c.b(v));
        }
    }
    candidates.into_iter().fold(f64::INFINITY, f64::min)
}

fn combine(m: usize, weights: &[f64], x: f64, integrals: &[f64], n: usize) -> f64 {
    let p = bernstein_row(m, x);
    let scale = (n + 1) as f64;
    let mut acc = NeumaierSum::new();
    for (j, w) in weights.iter().enumerate() {
        if *w == 0.0 {
            continue;
        }
        for (i, pi) in p.iter().enumerate() {
            acc.add(w * pi * (scale * integrals[i + j]));
        }
    }
    acc.value()
}

/// `D(f; x)` for one point.
pub fn apply(spec: &OperatorSpec, f: &TargetFunction, x: f64) -> Result<f64> {
    check_unit(x)?;
    let integrals = basis_integrals(spec.n, f);
    Ok(spec.evaluate_with(&integrals, x))
}

/// `D(f; x)` over a grid; the integral table is built once and shared.
pub fn apply_on_grid(spec: &OperatorSpec, f: &TargetFunction, grid: &Grid) -> Vec<(f64, f64)> {
    let integrals = basis_integrals(spec.n, f);
    grid.points()
        .par_iter()
        .map(|&x| (x, spec.evaluate_with(&integrals, x)))
        .collect()
}

/// Splits an order-I operator as `D = D_2 - D_1` with
///
/// ```text
/// D_1 basis: -a1 x p_{n-1,k} - a1 p_{n-1,k-1}
/// D_2 basis:  a0 p_{n-1,k} + (a0 - a1 x) p_{n-1,k-1}
/// ```
///
/// Returns `(D_1(f;x), D_2(f;x))`.
pub fn decompose_m1(spec: &OperatorSpec, f: &TargetFunction, x: f64) -> Result<(f64, f64)> {
    let c = match (spec.family, spec.linear_coeff()) {
        (Family::M1, Some(c)) => c,
        _ => {
            return Err(Error::spec(format!(
                "decomposition needs an order-I operator, got {}",
                spec.family
            )))
        }
    };
    check_unit(x)?;
    let integrals = basis_integrals(spec.n, f);
    let m = spec.n - 1;
    let d1 = combine(m, &[-c.a1 * x, -c.a1], x, &integrals, spec.n);
    let d2 = combine(m, &[c.a0, c.a0 - c.a1 * x], x, &integrals, spec.n);
    Ok((d1, d2))
}

/// Built-in preset names accepted by [`preset`] and [`SequenceFamily::named`].
pub const PRESETS: &[&str] = &[
    "classical",
    "m1-example1",
    "m1-example2",
    "m1-reproducing",
    "m2-tilde",
    "m3-tilde",
];

/// Coefficient sequences as functions of `n`.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceRule {
    Classical,
    Linear {
        a0: Expr,
        a1: Expr,
        /// `(l0, l1)`, the limits of `a0(n)` and `a1(n)`.
        limits: Option<(f64, f64)>,
    },
    Quadratic {
        b0: Expr,
        b1: Expr,
        b2: Expr,
        d0: Expr,
    },
    M2Tilde,
    M3Tilde,
}

/// A named operator family whose coefficients depend on `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceFamily {
    pub name: String,
    pub rule: SequenceRule,
}

impl SequenceFamily {
    pub fn named(name: &str) -> Result<Self> {
        let lin = |a0: &str, a1: &str, l: (f64, f64)| SequenceRule::Linear {
            a0: Expr::parse(a0).expect("preset expression"),
            a1: Expr::parse(a1).expect("preset expression"),
            limits: Some(l),
        };
        let rule = match name {
            "classical" => SequenceRule::Classical,
            "m1-example1" => lin("(n-1)/(2n)", "1/n", (0.5, 0.0)),
            "m1-example2" => lin("-n/(2n+1)", "(4n+1)/(2n+1)", (-0.5, 2.0)),
            "m1-reproducing" => lin("2", "-3", (2.0, -3.0)),
            "m2-tilde" => SequenceRule::M2Tilde,
            "m3-tilde" => SequenceRule::M3Tilde,
            _ => {
                return Err(Error::UnknownPreset {
                    name: name.to_string(),
                    known: PRESETS.join(", "),
                })
            }
        };
        Ok(Self {
            name: name.to_string(),
            rule,
        })
    }

    /// Order-I family from expressions in `n`.
    pub fn linear(name: impl Into<String>, a0: Expr, a1: Expr, limits: Option<(f64, f64)>) -> Self {
        Self {
            name: name.into(),
            rule: SequenceRule::Linear { a0, a1, limits },
        }
    }

    pub fn min_degree(&self) -> usize {
        match self.rule {
            SequenceRule::Classical => 0,
            SequenceRule::Linear { .. } => 1,
            SequenceRule::Quadratic { .. } | SequenceRule::M2Tilde => 2,
            SequenceRule::M3Tilde => 4,
        }
    }

    pub fn limits(&self) -> Option<(f64, f64)> {
        match &self.rule {
            SequenceRule::Linear { limits, .. } => *limits,
            SequenceRule::Classical => Some((1.0, -1.0)),
            _ => None,
        }
    }

    /// Order-I coefficients at `n` (classical counts as `(1, -1)`).
    pub fn linear_at(&self, n: usize) -> Option<LinearCoeff> {
        match &self.rule {
            SequenceRule::Linear { a0, a1, .. } => Some(LinearCoeff::new(a0.eval(n), a1.eval(n))),
            SequenceRule::Classical => Some(LinearCoeff::CLASSICAL),
            _ => None,
        }
    }

    pub fn at(&self, n: usize) -> Result<OperatorSpec> {
        let spec = match &self.rule {
            SequenceRule::Classical => OperatorSpec::classical(n),
            SequenceRule::Linear { a0, a1, .. } => OperatorSpec::m1(n, LinearCoeff::new(a0.eval(n), a1.eval(n))),
            SequenceRule::Quadratic { b0, b1, b2, d0 } => OperatorSpec::m2(
                n,
                QuadraticCoeffSet::new(b0.eval(n), b1.eval(n), b2.eval(n), d0.eval(n)),
            ),
            SequenceRule::M2Tilde => OperatorSpec::m2_tilde(n),
            SequenceRule::M3Tilde => OperatorSpec::m3_tilde(n),
        }?;
        Ok(spec.with_label(self.name.clone()))
    }
}

/// Preset operator at degree `n`.
pub fn preset(name: &str, n: usize) -> Result<OperatorSpec> {
    SequenceFamily::named(name)?.at(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid101() -> Grid {
        Grid::uniform(101).unwrap()
    }

    #[test]
    fn preset_coefficients() {
        let s = preset("m1-example1", 10).unwrap();
        let c = s.linear_coeff().unwrap();
        assert!((c.a0 - 0.45).abs() < 1e-15 && (c.a1 - 0.1).abs() < 1e-15);
        assert_eq!(s.label(), "m1-example1");
        for n in [1usize, 7, 1000] {
            let c = preset("m1-reproducing", n).unwrap().linear_coeff().unwrap();
            assert_eq!((c.a0, c.a1), (2.0, -3.0));
        }
        let q = preset("m2-tilde", 10).unwrap().quadratic_coeffs().unwrap();
        assert_eq!((q.b0, q.b1, q.b2, q.d0), (1.5, -10.0, 8.0, 16.0));
        for name in ["m1-example1", "m1-example2", "m1-reproducing"] {
            for n in [1usize, 2, 3, 10, 99, 1000] {
                preset(name, n).unwrap().check_constrained().unwrap();
            }
        }
        assert!(matches!(preset("m4", 10), Err(Error::UnknownPreset { .. })));
    }

    #[test]
    fn sequence_limits_agree_numerically() {
        for name in ["m1-example1", "m1-example2", "m1-reproducing", "classical"] {
            let fam = SequenceFamily::named(name).unwrap();
            let (l0, l1) = fam.limits().unwrap();
            let c = fam.linear_at(1_000_000).unwrap();
            assert!((c.a0 - l0).abs() < 1e-5 && (c.a1 - l1).abs() < 1e-5, "{name}");
        }
    }

    #[test]
    fn degree_and_kind_validation() {
        assert!(OperatorSpec::m1(0, LinearCoeff::CLASSICAL).is_err());
        assert!(OperatorSpec::m2_tilde(1).is_err());
        assert!(OperatorSpec::m3_tilde(3).is_err());
        assert!(preset("m3-tilde", 3).is_err());
        assert!(OperatorSpec::new(Family::M1, 5, Coefficients::None).is_err());
        assert!(OperatorSpec::m1(5, LinearCoeff::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn positivity_flag() {
        assert!(preset("m1-example1", 10).unwrap().is_positive());
        assert!(!preset("m1-example2", 10).unwrap().is_positive());
        assert!(!preset("m1-reproducing", 10).unwrap().is_positive());
        assert!(OperatorSpec::classical(5).unwrap().is_positive());
        assert!(OperatorSpec::m2(5, QuadraticCoeffSet::CLASSICAL).unwrap().is_positive());
        assert!(!preset("m2-tilde", 10).unwrap().is_positive());
    }

    #[test]
    fn classical_e1_at_zero() {
        let spec = OperatorSpec::classical(2).unwrap();
        let v = apply(&spec, &TargetFunction::monomial(1), 0.0).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_points_outside_unit_interval() {
        let spec = OperatorSpec::classical(3).unwrap();
        assert!(matches!(
            apply(&spec, &TargetFunction::monomial(0), 1.01),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn constrained_specs_map_e0_to_one() {
        let e0 = TargetFunction::monomial(0);
        for name in PRESETS {
            for n in [4usize, 9, 33] {
                let spec = preset(name, n).unwrap();
                let tol = if *name == "m3-tilde" { 1e-11 } else { 1e-13 };
                for (_, v) in apply_on_grid(&spec, &e0, &grid101()) {
                    assert!((v - 1.0).abs() < tol, "{name} n={n} v={v}");
                }
            }
        }
    }

    #[test]
    fn reproducing_presets_map_e1_to_e1() {
        let e1 = TargetFunction::monomial(1);
        for name in ["m1-reproducing", "m2-tilde"] {
            let spec = preset(name, 10).unwrap();
            for (x, v) in apply_on_grid(&spec, &e1, &grid101()) {
                assert!((v - x).abs() < 1e-13, "{name} x={x} v={v}");
            }
        }
        let spec = preset("m2-tilde", 10).unwrap();
        let g = Grid::new(vec![0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        for (x, v) in apply_on_grid(&spec, &e1, &g) {
            assert!((v - x).abs() < 1e-13);
        }
    }

    #[test]
    fn reductions_match_classical() {
        let fs = [
            TargetFunction::monomial(0),
            TargetFunction::monomial(1),
            TargetFunction::monomial(2),
            TargetFunction::sin2pi(),
        ];
        for n in [2usize, 3, 10, 27, 50] {
            let classical = OperatorSpec::classical(n).unwrap();
            let m1 = OperatorSpec::m1(n, LinearCoeff::CLASSICAL).unwrap();
            let m2 = OperatorSpec::m2(n, QuadraticCoeffSet::CLASSICAL).unwrap();
            for f in &fs {
                let c = apply_on_grid(&classical, f, &grid101());
                let a = apply_on_grid(&m1, f, &grid101());
                let b = apply_on_grid(&m2, f, &grid101());
                for ((c, a), b) in c.iter().zip(&a).zip(&b) {
                    assert!((c.1 - a.1).abs() < 1e-12 && (c.1 - b.1).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn basis_row_matches_pointwise_bases() {
        let n = 10;
        let x = 0.3;
        let c = LinearCoeff::new(0.45, 0.1);
        let row = OperatorSpec::m1(n, c).unwrap().basis_row(x).unwrap();
        for (k, r) in row.iter().enumerate() {
            let v = basis::modified_basis_m1(basis::BasisIndex::new(n, k as i64), x, &c).unwrap();
            assert!((r - v).abs() < 1e-15);
        }
        let q = QuarticCoeffSet::tilde(9);
        let row = OperatorSpec::m3_tilde(9).unwrap().basis_row(0.7).unwrap();
        for (k, r) in row.iter().enumerate() {
            let v = basis::modified_basis_m3(basis::BasisIndex::new(9, k as i64), 0.7, &q).unwrap();
            assert!((r - v).abs() < 1e-13);
        }
    }

    #[test]
    fn decomposition_difference_identity() {
        let fs = [
            TargetFunction::monomial(0),
            TargetFunction::monomial(2),
            TargetFunction::example1(),
            TargetFunction::example2(),
            TargetFunction::example3(),
        ];
        for name in ["m1-example1", "m1-example2", "m1-reproducing"] {
            let spec = preset(name, 10).unwrap();
            for f in &fs {
                for x in [0.0, 0.3, 0.5, 0.91, 1.0] {
                    let (d1, d2) = decompose_m1(&spec, f, x).unwrap();
                    let v = apply(&spec, f, x).unwrap();
                    assert!((d2 - d1 - v).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn decomposition_e0_parts() {
        let n = 10;
        let spec = preset("m1-example2", n).unwrap();
        let a1 = 41.0 / 21.0;
        let a0 = -10.0 / 21.0;
        let (d1, d2) = decompose_m1(&spec, &TargetFunction::monomial(0), 0.5).unwrap();
        assert!((d1 - (-a1 * 1.5)).abs() < 1e-13);
        assert!((d2 - (2.0 * a0 - a1 * 0.5)).abs() < 1e-13);
        assert!(decompose_m1(&OperatorSpec::classical(5).unwrap(), &TargetFunction::monomial(0), 0.5).is_err());
    }

    #[test]
    fn decomposition_with_classical_coefficients() {
        let spec = OperatorSpec::m1(12, LinearCoeff::CLASSICAL).unwrap();
        let classical = OperatorSpec::classical(12).unwrap();
        let f = TargetFunction::example3();
        for x in [0.1, 0.45, 0.8] {
            let (d1, d2) = decompose_m1(&spec, &f, x).unwrap();
            assert!((d2 - d1 - apply(&classical, &f, x).unwrap()).abs() < 1e-13);
        }
    }
}
