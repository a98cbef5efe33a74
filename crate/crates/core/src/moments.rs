//! Raw moments `D(e_i; x)` and central moments `D((t-x)^r; x)`.
//!
//! The `closed_*` functions evaluate the known closed forms literally. Some of
//! them (higher central moments of the tilde operators) are only known up to
//! their leading term and are tagged [`Accuracy::Leading`].
//! [`moment_bruteforce`] computes any moment by summing the operator directly
//! and serves as the oracle for all of them.

use std::fmt;

use crate::basis::{bernstein_row, check_unit, LinearCoeff, QuadraticCoeffSet};
use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::operators::{Family, OperatorSpec};
use crate::quadrature::{make_rule, monomial_integral_unchecked};

/// Highest moment order accepted by [`moment_bruteforce`].
pub const MAX_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentKind {
    /// `D(e_i; x)`
    Raw,
    /// `D((t-x)^r; x)`
    Central,
}

impl fmt::Display for MomentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MomentKind::Raw => "raw",
            MomentKind::Central => "central",
        })
    }
}

#[derive(Debug, Clone)]
pub struct MomentQuery {
    pub spec: OperatorSpec,
    pub kind: MomentKind,
    pub order: usize,
    pub x: f64,
}

impl MomentQuery {
    pub fn raw(spec: OperatorSpec, order: usize, x: f64) -> Self {
        Self {
            spec,
            kind: MomentKind::Raw,
            order,
            x,
        }
    }

    pub fn central(spec: OperatorSpec, order: usize, x: f64) -> Self {
        Self {
            spec,
            kind: MomentKind::Central,
            order,
            x,
        }
    }
}

/// Whether a closed-form value is the whole story.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accuracy {
    Exact,
    /// Only the leading term; the remainder is `O(n^-remainder_order)`.
    Leading {
        remainder_order: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub value: f64,
    pub accuracy: Accuracy,
}

impl ClosedForm {
    fn exact(value: f64) -> Self {
        Self {
            value,
            accuracy: Accuracy::Exact,
        }
    }

    fn leading(value: f64, remainder_order: u32) -> Self {
        Self {
            value,
            accuracy: Accuracy::Leading { remainder_order },
        }
    }

    pub fn is_exact(&self) -> bool {
        self.accuracy == Accuracy::Exact
    }
}

/// Family/kind/order combinations with a closed form, for error messages.
pub const SUPPORTED: &[(&str, &str, &str)] = &[
    ("classical", "raw", "0,1,2"),
    ("classical", "central", "1,2,4"),
    ("m1", "raw", "0,1,2"),
    ("m1", "central", "1,2,4"),
    ("m2", "raw", "0,1,2"),
    ("m2-tilde", "raw", "0,1,2"),
    ("m2-tilde", "central", "2,3 exact; 4,5,6 leading term"),
    ("m3-tilde", "central", "1,2,3 exact; 4,5,6 leading term"),
];

fn supported_list() -> String {
    SUPPORTED
        .iter()
        .map(|(f, k, o)| format!("{f} {k} {o}"))
        .collect::<Vec<_>>()
        .join("; ")
}

fn unsupported(what: impl fmt::Display) -> Error {
    Error::UnsupportedMoment(format!("{what}; closed forms exist for: {}", supported_list()))
}

fn pochhammer(n: usize, from: usize, to: usize) -> f64 {
    (from..=to).map(|k| (n + k) as f64).product()
}

fn check_degree(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::domain(format!("degree n = {n} is below the minimum {min}")));
    }
    Ok(())
}

/// `D^{M,1}(e_i; x)` for `i = 0, 1, 2`.
pub fn closed_moment_m1(c: &LinearCoeff, n: usize, i: usize, x: f64) -> Result<f64> {
    check_degree(n, 1)?;
    check_unit(x)?;
    let (a0, a1) = (c.a0, c.a1);
    let nf = n as f64;
    let s = 2.0 * a0 + a1;
    match i {
        0 => Ok(s),
        1 => Ok(s * x + (1.0 - 2.0 * x) * (3.0 * a0 + 2.0 * a1) / (nf + 2.0)),
        2 => {
            let d = (nf + 2.0) * (nf + 3.0);
            Ok(s * x * x
                - ((8.0 * x * x - 5.0 * x) * a0 + (5.0 * x * x - 3.0 * x) * a1) * 2.0 * nf / d
                - 2.0 * ((x * x + 5.0 * x - 3.0) * a1 + (4.0 * x * x + 5.0 * x - 4.0) * a0) / d)
        }
        _ => Err(unsupported(format!("m1 raw moment of order {i}"))),
    }
}

/// `D^{M,1}((t-x)^r; x)` for `r = 1, 2, 4`.
pub fn closed_central_m1(c: &LinearCoeff, n: usize, r: usize, x: f64) -> Result<f64> {
    check_degree(n, 1)?;
    check_unit(x)?;
    let (a0, a1) = (c.a0, c.a1);
    let nf = n as f64;
    let s = 2.0 * a0 + a1;
    let x2 = x * x;
    match r {
        1 => Ok((1.0 - 2.0 * x) * (2.0 * a1 + 3.0 * a0) / (nf + 2.0)),
        2 => {
            let d = (nf + 2.0) * (nf + 3.0);
            let low = 3.0 * a1 + 4.0 * a0 - 11.0 * a1 * x + 14.0 * x2 * a0 + 11.0 * a1 * x2 - 14.0 * a0 * x;
            Ok(2.0 * low / d + 2.0 * (1.0 - x) * x * s * nf / d)
        }
        4 => {
            let u = x * (1.0 - x);
            let x3 = x2 * x;
            let x4 = x2 * x2;
            let quad = u * u * s * nf * nf;
            let lin =
                3.0 * u * (15.0 * a1 * x2 + 22.0 * x2 * a0 - 15.0 * a1 * x - 22.0 * a0 * x + 6.0 * a0 + 4.0 * a1) * nf;
            let cst = 10.0 * a1 + 12.0 * a0 - 68.0 * a1 * x
                + 124.0 * x4 * a0
                + 202.0 * x2 * a0
                + 114.0 * x4 * a1
                + 182.0 * a1 * x2
                - 78.0 * a0 * x
                - 228.0 * a1 * x3
                - 248.0 * a0 * x3;
            Ok(12.0 * (quad + lin + cst) / pochhammer(n, 2, 5))
        }
        _ => Err(unsupported(format!("m1 central moment of order {r}"))),
    }
}

/// `D^{M,2}(e_i; x)` for `i = 0, 1, 2` and arbitrary coefficients.
pub fn closed_moment_m2(c: &QuadraticCoeffSet, n: usize, i: usize, x: f64) -> Result<f64> {
    check_degree(n, 2)?;
    check_unit(x)?;
    let (b0, b1, b2, d0) = (c.b0, c.b1, c.b2, c.d0);
    let nf = n as f64;
    let g = 2.0 * b2 - d0;
    let s = 2.0 * b0 + b1 + b2;
    let (x2, x3) = (x * x, x * x * x);
    let x4 = x2 * x2;
    match i {
        0 => Ok(g * x2 - g * x + s),
        1 => {
            let lead = (g * x3 - g * x2 + s * x) * nf;
            let rest = -2.0 * g * x3
                + 4.0 * g * x2
                + (-4.0 * b0 - 4.0 * b1 - 8.0 * b2 + 2.0 * d0) * x
                + 4.0 * b0
                + 3.0 * b1
                + 3.0 * b2;
            Ok((lead + rest) / (nf + 2.0))
        }
        2 => {
            let quad = (g * x4 - g * x3 + s * x2) * nf * nf;
            let lin = (-5.0 * g * x4
                + 11.0 * g * x3
                + (-10.0 * b0 - 9.0 * b1 - 21.0 * b2 + 6.0 * d0) * x2
                + (12.0 * b0 + 8.0 * b1 + 8.0 * b2) * x)
                * nf;
            let cst = 6.0 * g * x4 - 18.0 * g * x3
                + (12.0 * b0 + 14.0 * b1 + 52.0 * b2 - 18.0 * d0) * x2
                + (-24.0 * b0 - 26.0 * b1 - 40.0 * b2 + 6.0 * d0) * x
                + 14.0 * b0
                + 12.0 * b1
                + 12.0 * b2;
            Ok((quad + lin + cst) / ((nf + 2.0) * (nf + 3.0)))
        }
        _ => Err(unsupported(format!("m2 raw moment of order {i}"))),
    }
}

/// Central moments of the tilde order-II operator: exact for `r = 2, 3`,
/// leading term for `r = 4, 5, 6`.
pub fn closed_central_m2_tilde(n: usize, r: usize, x: f64) -> Result<ClosedForm> {
    check_degree(n, 2)?;
    check_unit(x)?;
    let nf = n as f64;
    let u = x * (1.0 - x);
    let v = 1.0 - 2.0 * x;
    match r {
        2 => Ok(ClosedForm::exact((20.0 * u - 3.0) / pochhammer(n, 2, 3))),
        3 => Ok(ClosedForm::exact(
            3.0 * v * (-4.0 * nf * u - 48.0 * x * x + 48.0 * x - 7.0) / pochhammer(n, 2, 4),
        )),
        4 => Ok(ClosedForm::leading(-12.0 * u * u * nf * nf / pochhammer(n, 2, 5), 3)),
        5 => Ok(ClosedForm::leading(
            -360.0 * v * u * u * nf * nf / pochhammer(n, 2, 6),
            4,
        )),
        6 => Ok(ClosedForm::leading(
            -240.0 * u * u * u * nf.powi(3) / pochhammer(n, 2, 7),
            4,
        )),
        _ => Err(unsupported(format!("m2-tilde central moment of order {r}"))),
    }
}

/// Central moments of the tilde order-III operator: zero for `r = 1, 2, 3`,
/// leading term for `r = 4, 5, 6`.
///
/// The denominators are the products `(n+2)(n+3)...`.
pub fn closed_central_m3_tilde(n: usize, r: usize, x: f64) -> Result<ClosedForm> {
    check_degree(n, 4)?;
    check_unit(x)?;
    let nf = n as f64;
    let u = x * (1.0 - x);
    let v = 1.0 - 2.0 * x;
    match r {
        1..=3 => Ok(ClosedForm::exact(0.0)),
        4 => Ok(ClosedForm::leading(
            20.0 * u * (21.0 * x * x - 21.0 * x + 5.0) * nf / pochhammer(n, 2, 5),
            4,
        )),
        5 => Ok(ClosedForm::leading(
            180.0 * v * u * u * nf * nf / pochhammer(n, 2, 6),
            4,
        )),
        6 => Ok(ClosedForm::leading(
            120.0 * u * u * u * nf.powi(3) / pochhammer(n, 2, 7),
            4,
        )),
        _ => Err(unsupported(format!("m3-tilde central moment of order {r}"))),
    }
}

/// The closed form matching a query, if one exists.
pub fn closed_form(q: &MomentQuery) -> Result<ClosedForm> {
    let n = q.spec.n();
    let family = q.spec.family();
    match (family, q.kind) {
        (Family::Classical, MomentKind::Raw) => {
            closed_moment_m1(&LinearCoeff::CLASSICAL, n, q.order, q.x).map(ClosedForm::exact)
        }
        (Family::Classical, MomentKind::Central) => {
            closed_central_m1(&LinearCoeff::CLASSICAL, n, q.order, q.x).map(ClosedForm::exact)
        }
        (Family::M1, kind) => {
            let c = q.spec.linear_coeff().expect("order-I spec carries linear coefficients");
            match kind {
                MomentKind::Raw => closed_moment_m1(&c, n, q.order, q.x),
                MomentKind::Central => closed_central_m1(&c, n, q.order, q.x),
            }
            .map(ClosedForm::exact)
        }
        (Family::M2 | Family::M2Tilde, MomentKind::Raw) => {
            let c = q
                .spec
                .quadratic_coeffs()
                .expect("order-II spec carries quadratic coefficients");
            closed_moment_m2(&c, n, q.order, q.x).map(ClosedForm::exact)
        }
        (Family::M2Tilde, MomentKind::Central) => closed_central_m2_tilde(n, q.order, q.x),
        (Family::M3Tilde, MomentKind::Central) => closed_central_m3_tilde(n, q.order, q.x),
        (family, kind) => Err(unsupported(format!("no closed form for {family} {kind} moments"))),
    }
}

/// `∫_0^1 p_{n,k}(t) (t-x)^r dt` for every `k`, by a Gauss rule that is exact
/// for the degree `n + r` integrand.
///
/// The integrand is evaluated directly rather than expanded around the origin,
/// so nothing cancels inside a single integral.
pub fn central_integrals(n: usize, r: usize, x: f64) -> Vec<f64> {
    let rule = make_rule(n + r);
    let mut acc = vec![NeumaierSum::new(); n + 1];
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let wt = w * (t - x).powi(r as i32);
        for (a, p) in acc.iter_mut().zip(bernstein_row(n, t)) {
            a.add(wt * p);
        }
    }
    acc.iter().map(NeumaierSum::value).collect()
}

/// `∫_0^1 p_{n,k}(t) t^i dt` for every `k`.
pub fn raw_integrals(n: usize, i: usize) -> Vec<f64> {
    (0..=n).map(|k| monomial_integral_unchecked(n, k, i)).collect()
}

/// Moment by direct summation of the operator.
pub fn moment_bruteforce(q: &MomentQuery) -> Result<f64> {
    check_unit(q.x)?;
    if q.order > MAX_ORDER {
        return Err(Error::UnsupportedMoment(format!(
            "order {} exceeds the maximum {MAX_ORDER}",
            q.order
        )));
    }
    let n = q.spec.n();
    let table = match q.kind {
        MomentKind::Raw => raw_integrals(n, q.order),
        MomentKind::Central => central_integrals(n, q.order, q.x),
    };
    Ok(q.spec.evaluate_with(&table, q.x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::preset;

    fn m1(a0: f64, a1: f64, n: usize) -> OperatorSpec {
        OperatorSpec::m1(n, LinearCoeff::new(a0, a1)).unwrap()
    }

    fn brute(spec: &OperatorSpec, kind: MomentKind, r: usize, x: f64) -> f64 {
        moment_bruteforce(&MomentQuery {
            spec: spec.clone(),
            kind,
            order: r,
            x,
        })
        .unwrap()
    }

    #[test]
    fn m1_examples() {
        let c = LinearCoeff::new(0.45, 0.1);
        assert_eq!(closed_moment_m1(&c, 10, 0, 0.3).unwrap(), 1.0);
        assert!((closed_moment_m1(&c, 10, 1, 0.5).unwrap() - 0.5).abs() < 1e-15);
        let spec = m1(0.45, 0.1, 10);
        let b = brute(&spec, MomentKind::Raw, 2, 0.3);
        assert!((closed_moment_m1(&c, 10, 2, 0.3).unwrap() - b).abs() < 1e-12);
        let r = LinearCoeff::new(2.0, -3.0);
        for x in [0.0, 0.2, 0.7, 1.0] {
            assert_eq!(closed_central_m1(&r, 17, 1, x).unwrap(), 0.0);
        }
        let v = closed_central_m1(&LinearCoeff::CLASSICAL, 2, 2, 0.0).unwrap();
        assert!((v - 0.1).abs() < 1e-15);
        assert_eq!(closed_central_m1(&c, 9, 1, 0.5).unwrap(), 0.0);
        assert!(closed_central_m1(&c, 9, 3, 0.5).is_err());
        assert!(closed_moment_m1(&c, 9, 3, 0.5).is_err());
    }

    #[test]
    fn m1_central_two_from_raw() {
        for (a0, a1) in [(0.45, 0.1), (2.0, -3.0), (-0.3, 1.7), (1.2, 0.4)] {
            let c = LinearCoeff::new(a0, a1);
            for x in [0.0, 0.13, 0.5, 0.77, 1.0] {
                let m = |i| closed_moment_m1(&c, 12, i, x).unwrap();
                let composed = m(2) - 2.0 * x * m(1) + x * x * m(0);
                let direct = closed_central_m1(&c, 12, 2, x).unwrap();
                assert!((composed - direct).abs() < 1e-12, "{a0} {a1} {x}");
            }
        }
    }

    #[test]
    fn m1_closed_forms_match_bruteforce() {
        for (a0, a1) in [(0.45, 0.1), (2.0, -3.0), (-0.3, 1.7), (0.8, 0.3)] {
            let c = LinearCoeff::new(a0, a1);
            for n in [1usize, 2, 5, 23, 64] {
                let spec = m1(a0, a1, n);
                for x in [0.0, 0.1, 0.5, 0.66, 1.0] {
                    for i in 0..=2 {
                        let d = closed_moment_m1(&c, n, i, x).unwrap() - brute(&spec, MomentKind::Raw, i, x);
                        assert!(d.abs() < 1e-12, "raw {i} n={n} x={x} {d}");
                    }
                    for r in [1, 2, 4] {
                        let d = closed_central_m1(&c, n, r, x).unwrap() - brute(&spec, MomentKind::Central, r, x);
                        assert!(d.abs() < 1e-12, "central {r} n={n} x={x} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn m2_general_moments_match_bruteforce() {
        let sets = [
            QuadraticCoeffSet::CLASSICAL,
            QuadraticCoeffSet::tilde(9),
            QuadraticCoeffSet::new(0.7, -1.1, 2.3, 0.4),
            QuadraticCoeffSet::new(-1.0, 3.0, 0.5, 5.0),
        ];
        for c in sets {
            for n in [2usize, 3, 9, 40] {
                let spec = OperatorSpec::m2(n, c).unwrap();
                for x in [0.0, 0.2, 0.5, 0.9, 1.0] {
                    for i in 0..=2 {
                        let d = closed_moment_m2(&c, n, i, x).unwrap() - brute(&spec, MomentKind::Raw, i, x);
                        assert!(d.abs() < 1e-11, "{c:?} i={i} n={n} x={x} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn m2_classical_reduction_first_moment() {
        let v = closed_moment_m2(&QuadraticCoeffSet::CLASSICAL, 5, 1, 0.2).unwrap();
        assert!((v - 2.0 / 7.0).abs() < 1e-12);
        for x in [0.0, 0.3, 1.0] {
            let v = closed_moment_m2(&QuadraticCoeffSet::tilde(14), 14, 1, x).unwrap();
            assert!((v - x).abs() < 1e-13);
            let v = closed_moment_m2(&QuadraticCoeffSet::tilde(14), 14, 0, x).unwrap();
            assert!((v - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn m2_tilde_exact_central_moments() {
        let v = closed_central_m2_tilde(10, 2, 0.0).unwrap();
        assert!(v.is_exact());
        assert!((v.value + 3.0 / 156.0).abs() < 1e-16);
        assert_eq!(closed_central_m2_tilde(10, 3, 0.5).unwrap().value, 0.0);
        for n in [2usize, 7, 30, 100] {
            let spec = OperatorSpec::m2_tilde(n).unwrap();
            for x in [0.0, 0.25, 0.6, 1.0] {
                for r in [2, 3] {
                    let d = closed_central_m2_tilde(n, r, x).unwrap().value - brute(&spec, MomentKind::Central, r, x);
                    assert!(d.abs() < 1e-12, "r={r} n={n} x={x} {d}");
                }
            }
            let ends = -3.0 / ((n + 2) * (n + 3)) as f64;
            assert!((brute(&spec, MomentKind::Central, 2, 0.0) - ends).abs() < 1e-14);
            assert!(brute(&spec, MomentKind::Central, 2, 1.0) < 0.0);
        }
    }

    fn remainder(
        spec_of: impl Fn(usize) -> OperatorSpec,
        closed: impl Fn(usize) -> f64,
        r: usize,
        n: usize,
        x: f64,
    ) -> f64 {
        (brute(&spec_of(n), MomentKind::Central, r, x) - closed(n)).abs()
    }

    #[test]
    fn m2_tilde_fourth_moment_remainder_is_cubic() {
        let spec = |n| OperatorSpec::m2_tilde(n).unwrap();
        let lead = |n| closed_central_m2_tilde(n, 4, 0.5).unwrap().value;
        let ratio = remainder(spec, lead, 4, 100, 0.5) / remainder(spec, lead, 4, 200, 0.5);
        assert!((6.5..9.5).contains(&ratio), "ratio {ratio}");
        assert!(!closed_central_m2_tilde(200, 4, 0.5).unwrap().is_exact());
    }

    #[test]
    fn m3_tilde_low_moments_vanish() {
        for n in [4usize, 8, 33, 100] {
            let spec = OperatorSpec::m3_tilde(n).unwrap();
            for x in [0.0, 0.1, 0.5, 0.83, 1.0] {
                for r in 1..=3 {
                    let b = brute(&spec, MomentKind::Central, r, x);
                    assert!(b.abs() < 1e-11, "r={r} n={n} x={x} {b}");
                    assert_eq!(closed_central_m3_tilde(n, r, x).unwrap().value, 0.0);
                }
            }
        }
        assert_eq!(closed_central_m3_tilde(20, 5, 0.5).unwrap().value, 0.0);
    }

    #[test]
    fn m3_tilde_leading_terms_converge() {
        for (r, x) in [(4, 0.25), (6, 0.4)] {
            let ratio = |n: usize| {
                let spec = OperatorSpec::m3_tilde(n).unwrap();
                brute(&spec, MomentKind::Central, r, x) / closed_central_m3_tilde(n, r, x).unwrap().value
            };
            let (a, b, c) = (ratio(100), ratio(200), ratio(400));
            assert!((a - 1.0).abs() < 0.1, "r={r} {a}");
            assert!((c - 1.0).abs() < (b - 1.0).abs() && (b - 1.0).abs() < (a - 1.0).abs());
        }
    }

    #[test]
    fn routing_and_errors() {
        let q = MomentQuery::raw(preset("classical", 8).unwrap(), 0, 0.7);
        assert_eq!(closed_form(&q).unwrap().value, 1.0);
        assert!((moment_bruteforce(&q).unwrap() - 1.0).abs() < 1e-13);
        let q = MomentQuery::central(preset("m1-example1", 8).unwrap(), 1, 0.5);
        assert!(moment_bruteforce(&q).unwrap().abs() < 1e-13);
        let q = MomentQuery::raw(preset("m3-tilde", 8).unwrap(), 1, 0.5);
        match closed_form(&q) {
            Err(Error::UnsupportedMoment(msg)) => assert!(msg.contains("m3-tilde central")),
            other => panic!("{other:?}"),
        }
        let q = MomentQuery::central(preset("m2-tilde", 8).unwrap(), 11, 0.5);
        assert!(moment_bruteforce(&q).is_err());
        let q = MomentQuery::central(preset("m2-tilde", 8).unwrap(), 2, 1.5);
        assert!(moment_bruteforce(&q).is_err());
        assert!(closed_central_m3_tilde(3, 2, 0.5).is_err());
    }

    #[test]
    fn constrained_m1_decay_rates() {
        let ns = [32usize, 64, 128, 256, 512];
        for (r, want) in [(2usize, -1.0), (4, -2.0)] {
            let pts: Vec<(f64, f64)> = ns
                .iter()
                .map(|&n| {
                    let spec = preset("m1-example1", n).unwrap();
                    ((n as f64).ln(), brute(&spec, MomentKind::Central, r, 0.3).ln())
                })
                .collect();
            let k = pts.len() as f64;
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
            let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
                / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
            assert!((slope - want).abs() < 0.1, "r={r} slope {slope}");
        }
    }
}
