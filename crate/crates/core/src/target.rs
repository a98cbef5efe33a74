//! Closed-form target functions on [0, 1].

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Declared smoothness class, used to pick which order theorem applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Smoothness {
    C0,
    C2,
    C6,
    C10,
}

/// Named functions accepted by [`TargetFunction::named`] besides the monomials `e0..e10`.
pub const NAMED_FUNCTIONS: &[&str] = &["example1", "example2", "example3", "sin2pi", "abs-half"];

const FD_STEP: f64 = 1e-4;

#[derive(Clone)]
pub struct TargetFunction {
    id: String,
    eval: RealFn,
    first: Option<RealFn>,
    second: Option<RealFn>,
    breakpoints: Vec<f64>,
    smoothness: Smoothness,
    /// Monomial coefficients, lowest degree first, when the function is a polynomial.
    polynomial: Option<Vec<f64>>,
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("id", &self.id)
            .field("smoothness", &self.smoothness)
            .field("breakpoints", &self.breakpoints)
            .field("polynomial", &self.polynomial)
            .finish()
    }
}

impl TargetFunction {
    /// An arbitrary function; assumed `C0` with no breakpoints until told otherwise.
    pub fn new(id: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            id: id.into(),
            eval: Arc::new(f),
            first: None,
            second: None,
            breakpoints: Vec::new(),
            smoothness: Smoothness::C0,
            polynomial: None,
        }
    }

    pub fn with_derivatives(
        mut self,
        first: impl Fn(f64) -> f64 + Send + Sync + 'static,
        second: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.first = Some(Arc::new(first));
        self.second = Some(Arc::new(second));
        self
    }

    pub fn with_breakpoints(mut self, breakpoints: Vec<f64>) -> Self {
        self.breakpoints = breakpoints;
        self
    }

    pub fn with_smoothness(mut self, smoothness: Smoothness) -> Self {
        self.smoothness = smoothness;
        self
    }

    /// `sum c_i x^i`.
    pub fn polynomial(id: impl Into<String>, coeffs: Vec<f64>) -> Self {
        let c0 = coeffs.clone();
        let c1 = derivative_coeffs(&coeffs);
        let c2 = derivative_coeffs(&c1);
        let (c1a, c2a) = (c1.clone(), c2.clone());
        let mut f = Self::new(id, move |x| horner(&c0, x))
            .with_derivatives(move |x| horner(&c1a, x), move |x| horner(&c2a, x))
            .with_smoothness(Smoothness::C10);
        f.polynomial = Some(coeffs);
        f
    }

    /// `e_i(x) = x^i`.
    pub fn monomial(i: usize) -> Self {
        let mut coeffs = vec![0.0; i + 1];
        coeffs[i] = 1.0;
        Self::polynomial(format!("e{i}"), coeffs)
    }

    /// `sin(2 pi x) + 2 sin(pi x / 2)`.
    pub fn example1() -> Self {
        Self::new("example1", |x| (2.0 * PI * x).sin() + 2.0 * (0.5 * PI * x).sin())
            .with_derivatives(
                |x| 2.0 * PI * (2.0 * PI * x).cos() + PI * (0.5 * PI * x).cos(),
                |x| -4.0 * PI * PI * (2.0 * PI * x).sin() - 0.5 * PI * PI * (0.5 * PI * x).sin(),
            )
            .with_smoothness(Smoothness::C10)
    }

    /// `|x - 1/2| cos(2 pi x)`, kinked at 1/2.
    pub fn example2() -> Self {
        Self::new("example2", |x| (x - 0.5).abs() * (2.0 * PI * x).cos()).with_breakpoints(vec![0.5])
    }

    /// `(x - 1/4) sin(2 pi x)`.
    pub fn example3() -> Self {
        Self::new("example3", |x| (x - 0.25) * (2.0 * PI * x).sin())
            .with_derivatives(
                |x| (2.0 * PI * x).sin() + 2.0 * PI * (x - 0.25) * (2.0 * PI * x).cos(),
                |x| 4.0 * PI * (2.0 * PI * x).cos() - 4.0 * PI * PI * (x - 0.25) * (2.0 * PI * x).sin(),
            )
            .with_smoothness(Smoothness::C10)
    }

    pub fn sin2pi() -> Self {
        Self::new("sin2pi", |x| (2.0 * PI * x).sin())
            .with_derivatives(
                |x| 2.0 * PI * (2.0 * PI * x).cos(),
                |x| -4.0 * PI * PI * (2.0 * PI * x).sin(),
            )
            .with_smoothness(Smoothness::C10)
    }

    /// `|x - 1/2|`, Lipschitz of order 1 with constant 1.
    pub fn abs_half() -> Self {
        Self::new("abs-half", |x| (x - 0.5).abs()).with_breakpoints(vec![0.5])
    }

    /// Looks up a named function or a monomial `e<i>` with `i <= 10`.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "example1" => Ok(Self::example1()),
            "example2" => Ok(Self::example2()),
            "example3" => Ok(Self::example3()),
            "sin2pi" => Ok(Self::sin2pi()),
            "abs-half" => Ok(Self::abs_half()),
            _ => match name.strip_prefix('e').map(str::parse::<usize>) {
                Some(Ok(i)) if i <= 10 => Ok(Self::monomial(i)),
                _ => Err(Error::UnknownFunction {
                    name: name.to_string(),
                    known: format!("{}, e0..e10", NAMED_FUNCTIONS.join(", ")),
                }),
            },
        }
    }

    /// `alpha f + beta g`.
    pub fn linear_combination(alpha: f64, f: &Self, beta: f64, g: &Self) -> Self {
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        let mut breakpoints: Vec<f64> = f.breakpoints.iter().chain(&g.breakpoints).copied().collect();
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();
        let mut out = Self::new(format!("{alpha}*{}+{beta}*{}", f.id, g.id), move |x| {
            alpha * fe(x) + beta * ge(x)
        })
        .with_breakpoints(breakpoints)
        .with_smoothness(f.smoothness.min(g.smoothness));
        if let (Some(p), Some(q)) = (&f.polynomial, &g.polynomial) {
            let len = p.len().max(q.len());
            let coeff = |v: &Vec<f64>, i: usize| v.get(i).copied().unwrap_or(0.0);
            let combined = (0..len).map(|i| alpha * coeff(p, i) + beta * coeff(q, i)).collect();
            let id = out.id.clone();
            out = Self::polynomial(id, combined);
        } else if let (Some(f1), Some(f2), Some(g1), Some(g2)) = (&f.first, &f.second, &g.first, &g.second) {
            let (f1, f2, g1, g2) = (f1.clone(), f2.clone(), g1.clone(), g2.clone());
            out = out.with_derivatives(
                move |x| alpha * f1(x) + beta * g1(x),
                move |x| alpha * f2(x) + beta * g2(x),
            );
        }
        out
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn polynomial_coeffs(&self) -> Option<&[f64]> {
        self.polynomial.as_deref()
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.first.is_some() && self.second.is_some()
    }

    /// `f'(x)`: analytic when available, otherwise a 5-point central difference.
    pub fn first_derivative(&self, x: f64) -> f64 {
        match &self.first {
            Some(d) => d(x),
            None => {
                let h = FD_STEP;
                let f = |t: f64| self.eval(t);
                (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
            }
        }
    }

    /// `f''(x)`: analytic when available, otherwise a 5-point central difference.
    pub fn second_derivative(&self, x: f64) -> f64 {
        match &self.second {
            Some(d) => d(x),
            None => {
                let h = FD_STEP;
                let f = |t: f64| self.eval(t);
                (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h * h)
            }
        }
    }

    /// `f''` as a standalone target function.
    pub fn second_derivative_fn(&self) -> TargetFunction {
        let this = self.clone();
        TargetFunction::new(format!("{}''", self.id), move |x| this.second_derivative(x))
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect()
}
