//! Bernstein basis and the three modified bases built from lower-degree
//! Bernstein polynomials.
//!
//! Single values are evaluated in log space (Stirling-corrected binomial plus
//! the `k ln x + (n-k) ln(1-x)` terms, rearranged as deviances) so that degrees
//! in the thousands neither overflow nor underflow. Whole rows
//! `p_{m,0..=m}(x)` are anchored at the mode in log space and extended outward
//! with the exact term ratio; every entry of a row then shares the rounding of
//! the anchor, which keeps cancelling combinations of shifted rows consistent.

use crate::error::{Error, Result};

/// Degree `n` and (possibly out-of-range) index `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    pub n: usize,
    pub k: i64,
}

impl BasisIndex {
    pub fn new(n: usize, k: i64) -> Self {
        Self { n, k }
    }

    fn in_range(&self) -> bool {
        self.k >= 0 && self.k as u64 <= self.n as u64
    }
}

/// `a(x,n) = a1 x + a0`, the weight of the order-I modified basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearCoeff {
    pub a0: f64,
    pub a1: f64,
}

impl LinearCoeff {
    /// `(a0, a1) = (1, -1)`: the modified basis collapses to the Bernstein basis.
    pub const CLASSICAL: LinearCoeff = LinearCoeff { a0: 1.0, a1: -1.0 };

    pub fn new(a0: f64, a1: f64) -> Self {
        Self { a0, a1 }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.a1 * x + self.a0
    }

    /// `2 a0 + a1`, the image of `e0`.
    pub fn total(&self) -> f64 {
        2.0 * self.a0 + self.a1
    }

    /// Checks `2 a0 + a1 = 1` to 1e-15.
    pub fn check_constraint(&self) -> Result<()> {
        if (self.total() - 1.0).abs() <= 1e-15 {
            Ok(())
        } else {
            Err(Error::spec(format!(
                "2*a0 + a1 = {} violates the unit-sum constraint (a0={}, a1={})",
                self.total(),
                self.a0,
                self.a1
            )))
        }
    }

    /// `a0 >= 0` and `a0 + a1 >= 0`: both weights are non-negative on [0,1].
    pub fn is_positive_case(&self) -> bool {
        self.a0 >= 0.0 && self.a0 + self.a1 >= 0.0
    }
}

/// `b(x,n) = b2 x^2 + b1 x + b0` and `d(x,n) = d0 x (1-x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticCoeffSet {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub d0: f64,
}

impl QuadraticCoeffSet {
    pub const CLASSICAL: QuadraticCoeffSet = QuadraticCoeffSet {
        b0: 1.0,
        b1: -2.0,
        b2: 1.0,
        d0: 2.0,
    };

    pub fn new(b0: f64, b1: f64, b2: f64, d0: f64) -> Self {
        Self { b0, b1, b2, d0 }
    }

    /// `b0 = 3/2`, `b1 = -n`, `b2 = n - 2`, `d0 = 2(n - 2)`.
    pub fn tilde(n: usize) -> Self {
        let n = n as f64;
        Self {
            b0: 1.5,
            b1: -n,
            b2: n - 2.0,
            d0: 2.0 * (n - 2.0),
        }
    }

    #[inline]
    pub fn b(&self, x: f64) -> f64 {
        (self.b2 * x + self.b1) * x + self.b0
    }

    #[inline]
    pub fn d(&self, x: f64) -> f64 {
        self.d0 * x * (1.0 - x)
    }

    /// `2 b2 - d0 = 0` and `b2 + 2 b0 + b1 = 1`, i.e. `e0` is reproduced.
    pub fn check_constraint(&self) -> Result<()> {
        let quad = 2.0 * self.b2 - self.d0;
        let lin = self.b2 + 2.0 * self.b0 + self.b1 - 1.0;
        let scale = 1.0f64.max(self.b2.abs()).max(self.b1.abs());
        if quad.abs() <= 1e-15 * scale && lin.abs() <= 1e-15 * scale {
            Ok(())
        } else {
            Err(Error::spec(format!(
                "quadratic coefficients do not reproduce e0: 2*b2-d0 = {quad}, b2+2*b0+b1-1 = {lin}"
            )))
        }
    }
}

/// Coefficients of the order-III basis: `b~`, `d~` quartics and `e~0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoeffSet {
    /// `b~_0 .. b~_4`, lowest degree first.
    pub bt: [f64; 5],
    /// `d~_0 .. d~_4`, lowest degree first.
    pub dt: [f64; 5],
    pub et0: f64,
}

impl QuarticCoeffSet {
    /// The third-order preset at degree `n`.
    pub fn tilde(n: usize) -> Self {
        let n = n as f64;
        let n2 = n * n;
        Self {
            bt: [
                10.0 / 3.0,
                -53.0 / 3.0 - 11.0 / 6.0 * n,
                0.5 * n2 + 29.0 / 6.0 * n + 89.0 / 3.0,
                -n2 - 3.0 * n - 16.0,
                0.5 * n2,
            ],
            dt: [
                -10.0 / 3.0,
                80.0 / 3.0 + 10.0 / 3.0 * n,
                -2.0 * n2 - 28.0 / 3.0 * n - 161.0 / 3.0,
                4.0 * n2 + 6.0 * n + 32.0,
                -2.0 * n2,
            ],
            et0: 3.0 * n2,
        }
    }

    #[inline]
    pub fn b(&self, x: f64) -> f64 {
        horner(&self.bt, x)
    }

    #[inline]
    pub fn d(&self, x: f64) -> f64 {
        horner(&self.dt, x)
    }

    #[inline]
    pub fn e(&self, x: f64) -> f64 {
        let w = x * (1.0 - x);
        self.et0 * w * w
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

pub(crate) fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(format!("x = {x} is outside [0, 1]")))
    }
}

/// `ln k! - ln(sqrt(2 pi k) (k/e)^k)` for `k = 0..=15`.
const STIRLING_ERROR: [f64; 16] = [
    0.0,
    0.08106146679532726,
    0.0413406959554093,
    0.02767792568499834,
    0.020790672103765093,
    0.016644691189821193,
    0.013876128823070748,
    0.01189670994589177,
    0.010411265261972096,
    0.009255462182712733,
    0.00833056343336287,
    0.007573675487951841,
    0.00694284010720953,
    0.006408994188004207,
    0.0059513701127588475,
    0.005554733551962801,
];

/// Error of Stirling's approximation to `ln k!`.
fn stirling_error(k: usize) -> f64 {
    if k < STIRLING_ERROR.len() {
        return STIRLING_ERROR[k];
    }
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    let k = k as f64;
    let k2 = k * k;
    if k > 500.0 {
        (S0 - S1 / k2) / k
    } else if k > 80.0 {
        (S0 - (S1 - S2 / k2) / k2) / k
    } else if k > 35.0 {
        (S0 - (S1 - (S2 - S3 / k2) / k2) / k2) / k
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / k2) / k2) / k2) / k2) / k
    }
}

/// Deviance term `x ln(x/m) + m - x`, evaluated by series when `x` is close to `m`.
fn deviance(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let mut v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return next;
            }
            s = next;
        }
        s
    } else {
        x * (x / m).ln() + m - x
    }
}

/// Saddle-point evaluation of `p_{n,k}(x)` for in-range `k` and `0 < x < 1`.
///
/// Every term is `O(1)` in magnitude, so the result carries a few ulps of
/// relative error independent of `n` (the log-gamma difference
/// `ln n! - ln k! - ln (n-k)!` alone loses `ulp(ln n!)`).
fn bernstein_interior(n: usize, k: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let q = 1.0 - x;
    let nf = n as f64;
    if k == 0 {
        let lc = if x < 0.1 {
            -deviance(nf, nf * q) - nf * x
        } else {
            nf * q.ln()
        };
        return lc.exp();
    }
    if k == n {
        let lc = if q < 0.1 {
            -deviance(nf, nf * x) - nf * q
        } else {
            nf * x.ln()
        };
        return lc.exp();
    }
    let kf = k as f64;
    let lc = stirling_error(n)
        - stirling_error(k)
        - stirling_error(n - k)
        - deviance(kf, nf * x)
        - deviance(nf - kf, nf * q);
    let lf = (2.0 * std::f64::consts::PI).ln() + kf.ln() + (-kf / nf).ln_1p();
    (lc - 0.5 * lf).exp()
}

/// `p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k)`, zero for `k` outside `0..=n`.
pub fn bernstein(idx: BasisIndex, x: f64) -> Result<f64> {
    check_unit(x)?;
    Ok(bernstein_unchecked(idx, x))
}

pub(crate) fn bernstein_unchecked(idx: BasisIndex, x: f64) -> f64 {
    if !idx.in_range() {
        return 0.0;
    }
    let (n, k) = (idx.n, idx.k as usize);
    if x == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if x == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    bernstein_interior(n, k, x)
}

/// All values `p_{m,k}(x)` for `k = 0..=m`. `x` must lie in [0,1].
pub fn bernstein_row(m: usize, x: f64) -> Vec<f64> {
    let mut row = vec![0.0; m + 1];
    if x <= 0.0 {
        row[0] = 1.0;
        return row;
    }
    if x >= 1.0 {
        row[m] = 1.0;
        return row;
    }
    let mode = (((m + 1) as f64 * x).floor() as usize).min(m);
    row[mode] = bernstein_interior(m, mode, x);
    let ratio = x / (1.0 - x);
    for k in mode..m {
        row[k + 1] = row[k] * ((m - k) as f64 / (k + 1) as f64) * ratio;
    }
    for k in (1..=mode).rev() {
        row[k - 1] = row[k] * (k as f64 / (m - k + 1) as f64) / ratio;
    }
    row
}

/// Value of row `row` (degree `row.len() - 1`) at index `k - shift`, zero when out of range.
#[inline]
pub(crate) fn shifted(row: &[f64], k: usize, shift: usize) -> f64 {
    k.checked_sub(shift).and_then(|j| row.get(j)).copied().unwrap_or(0.0)
}

fn min_degree(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        Err(Error::domain(format!(
            "{what} basis needs degree n >= {min}, got n = {n}"
        )))
    } else {
        Ok(())
    }
}

/// `a(x,n) p_{n-1,k}(x) + a(1-x,n) p_{n-1,k-1}(x)`.
pub fn modified_basis_m1(idx: BasisIndex, x: f64, c: &LinearCoeff) -> Result<f64> {
    min_degree(idx.n, 1, "order-I")?;
    check_unit(x)?;
    if !idx.in_range() {
        return Ok(0.0);
    }
    let m = idx.n - 1;
    let p = |k: i64| bernstein_unchecked(BasisIndex::new(m, k), x);
    Ok(c.eval(x) * p(idx.k) + c.eval(1.0 - x) * p(idx.k - 1))
}

/// `b(x,n) p_{n-2,k} + d(x,n) p_{n-2,k-1} + b(1-x,n) p_{n-2,k-2}`.
pub fn modified_basis_m2(idx: BasisIndex, x: f64, c: &QuadraticCoeffSet) -> Result<f64> {
    min_degree(idx.n, 2, "order-II")?;
    check_unit(x)?;
    if !idx.in_range() {
        return Ok(0.0);
    }
    let m = idx.n - 2;
    let p = |k: i64| bernstein_unchecked(BasisIndex::new(m, k), x);
    Ok(c.b(x) * p(idx.k) + c.d(x) * p(idx.k - 1) + c.b(1.0 - x) * p(idx.k - 2))
}

/// Five-term order-III combination of `p_{n-4, k-j}`, `j = 0..=4`.
pub fn modified_basis_m3(idx: BasisIndex, x: f64, c: &QuarticCoeffSet) -> Result<f64> {
    min_degree(idx.n, 4, "order-III")?;
    check_unit(x)?;
    if !idx.in_range() {
        return Ok(0.0);
    }
    let m = idx.n - 4;
    let p = |k: i64| bernstein_unchecked(BasisIndex::new(m, k), x);
    let weights = m3_weights(c, x);
    Ok(weights.iter().enumerate().map(|(j, w)| w * p(idx.k - j as i64)).sum())
}

/// Weights of `p_{n-4,k-j}` in the order-III basis, `j = 0..=4`.
pub(crate) fn m3_weights(c: &QuarticCoeffSet, x: f64) -> [f64; 5] {
    [c.b(x), c.d(x), c.e(x), c.d(1.0 - x), c.b(1.0 - x)]
}
