//! Exact rational reference implementations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(v: f64) -> Q {
    Q::from_float(v).expect("finite")
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn frac(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

pub fn f(r: &Q) -> f64 {
    r.to_f64().expect("representable")
}

pub fn binom(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, j| a * BigInt::from(j))
}

pub fn pow(x: &Q, e: u64) -> Q {
    num_traits::pow(x.clone(), e as usize)
}

/// `[p_{m,0}(x), ..., p_{m,m}(x)]`.
pub fn bernstein_row(m: i64, x: &Q) -> Vec<Q> {
    let m = m as u64;
    let y = Q::one() - x;
    let mut xp = vec![Q::one()];
    let mut yp = vec![Q::one()];
    for _ in 0..m {
        let nx = xp.last().unwrap() * x;
        xp.push(nx);
        let ny = yp.last().unwrap() * &y;
        yp.push(ny);
    }
    let mut c = BigInt::one();
    (0..=m)
        .map(|k| {
            let v = Q::from_integer(c.clone()) * &xp[k as usize] * &yp[(m - k) as usize];
            c = &c * BigInt::from(m - k) / BigInt::from(k + 1);
            v
        })
        .collect()
}

/// `p_{n,k}(x)`, zero outside `0..=n`.
pub fn bernstein(n: i64, k: i64, x: &Q) -> Q {
    if k < 0 || k > n {
        return Q::zero();
    }
    let (n, k) = (n as u64, k as u64);
    Q::from_integer(binom(n, k)) * pow(x, k) * pow(&(Q::one() - x), n - k)
}

/// `∫_0^1 p_{n,k}(t) t^j dt = n! (k+j)! / (k! (n+j+1)!)`.
pub fn monomial_integral(n: u64, k: u64, j: u64) -> Q {
    let mut num = BigInt::one();
    let mut den = BigInt::from(n + 1);
    for i in 1..=j {
        num *= BigInt::from(k + i);
        den *= BigInt::from(n + 1 + i);
    }
    Q::new(num, den)
}

fn poly(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// Outer weights `w_j(x)` of `p_{m,k-j}(x)` and the base degree `m`.
#[derive(Clone, Debug)]
pub enum Kernel {
    Classical,
    M1 { a0: Q, a1: Q },
    M2 { b0: Q, b1: Q, b2: Q, d0: Q },
    M3Tilde,
}

impl Kernel {
    pub fn m2_tilde(n: i64) -> Self {
        Kernel::M2 {
            b0: frac(3, 2),
            b1: qi(-n),
            b2: qi(n - 2),
            d0: qi(2 * (n - 2)),
        }
    }

    pub fn weights(&self, n: i64, x: &Q) -> (i64, Vec<Q>) {
        let y = Q::one() - x;
        match self {
            Kernel::Classical => (n, vec![Q::one()]),
            Kernel::M1 { a0, a1 } => (n - 1, vec![a1 * x + a0, a1 * &y + a0]),
            Kernel::M2 { b0, b1, b2, d0 } => {
                let b = |t: &Q| b2 * t * t + b1 * t + b0;
                (n - 2, vec![b(x), d0 * x * &y, b(&y)])
            }
            Kernel::M3Tilde => {
                let nq = qi(n);
                let n2 = &nq * &nq;
                let bt = [
                    frac(10, 3),
                    frac(-53, 3) - frac(11, 6) * &nq,
                    frac(1, 2) * &n2 + frac(29, 6) * &nq + frac(89, 3),
                    -&n2 - qi(3) * &nq - qi(16),
                    frac(1, 2) * &n2,
                ];
                let dt = [
                    frac(-10, 3),
                    frac(80, 3) + frac(10, 3) * &nq,
                    qi(-2) * &n2 - frac(28, 3) * &nq - frac(161, 3),
                    qi(4) * &n2 + qi(6) * &nq + qi(32),
                    qi(-2) * &n2,
                ];
                let u = x * &y;
                let e = qi(3) * &n2 * &u * &u;
                (n - 4, vec![poly(&bt, x), poly(&dt, x), e, poly(&dt, &y), poly(&bt, &y)])
            }
        }
    }

    /// `q_{n,k}(x)`.
    pub fn basis(&self, n: i64, k: i64, x: &Q) -> Q {
        let (m, w) = self.weights(n, x);
        w.iter()
            .enumerate()
            .map(|(j, wj)| wj * bernstein(m, k - j as i64, x))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// `(n+1) sum_k q_{n,k}(x) sum_j c_j ∫ p_{n,k} t^j` for a polynomial target.
    pub fn apply_poly(&self, n: i64, coeffs: &[Q], x: &Q) -> Q {
        let (m, w) = self.weights(n, x);
        let row = bernstein_row(m, x);
        let mut acc = Q::zero();
        for k in 0..=n {
            let qk = w
                .iter()
                .enumerate()
                .filter_map(|(j, wj)| {
                    let i = k - j as i64;
                    (0..=m).contains(&i).then(|| wj * &row[i as usize])
                })
                .fold(Q::zero(), |a, b| a + b);
            if qk.is_zero() {
                continue;
            }
            let integral = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| c * monomial_integral(n as u64, k as u64, j as u64))
                .fold(Q::zero(), |a, b| a + b);
            acc += qk * integral;
        }
        acc * qi(n + 1)
    }

    /// `D((t-x)^r; x)`, expanding `(t-x)^r` exactly.
    pub fn central_moment(&self, n: i64, r: u64, x: &Q) -> Q {
        let coeffs: Vec<Q> = (0..=r)
            .map(|j| {
                let sign = if (r - j).is_multiple_of(2) { qi(1) } else { qi(-1) };
                sign * Q::from_integer(binom(r, j)) * pow(x, r - j)
            })
            .collect();
        self.apply_poly(n, &coeffs, x)
    }

    pub fn raw_moment(&self, n: i64, i: usize, x: &Q) -> Q {
        let mut coeffs = vec![Q::zero(); i + 1];
        coeffs[i] = Q::one();
        self.apply_poly(n, &coeffs, x)
    }
}
