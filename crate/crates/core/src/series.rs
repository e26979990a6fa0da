//! Power series of 2F1, Appell F1 and Lauricella F_D inside the unit polydisc.
//!
//! The multivariate series is summed by total-degree shells
//! `m_1 + ... + m_n = k`. Each shell factors as `(a)_k / (c)_k * h_k` where
//! `h_k` is the degree-`k` coefficient of `prod_i sum_m (b_i)_m x_i^m / m!`,
//! so shells are built by a running convolution in `O(n k)` work each.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_TOL: f64 = 1e-12;
/// Terms allowed for the one-variable series.
const MAX_TERMS: usize = 1_000_000;
/// Shells allowed for the multivariate series (work grows like `n k^2`).
const MAX_SHELLS: usize = 40_000;
/// Consecutive small contributions required before stopping.
const SMALL_RUN: usize = 3;

/// Parameters `(a; b_1, ..., b_n; c)` of `F_D^(n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HgParams {
    pub a: f64,
    pub b: Vec<f64>,
    pub c: f64,
}

impl HgParams {
    pub fn new(a: f64, b: Vec<f64>, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn gauss(a: f64, b: f64, c: f64) -> Self {
        Self::new(a, vec![b], c)
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.c <= 0.0 && self.c == self.c.round() {
            return Err(Error::InvalidC(self.c));
        }
        if self.b.is_empty() {
            return Err(Error::DomainViolation("F_D needs at least one b parameter".into()));
        }
        Ok(())
    }

    /// `Re(c) > Re(a) > 0`, the range of the Euler integral.
    pub fn in_euler_range(&self) -> bool {
        self.a > 0.0 && self.c > self.a
    }
}

/// Arguments `x_1, ..., x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalPoint<S> {
    pub x: Vec<S>,
}

impl<S: Scalar> EvalPoint<S> {
    pub fn new(x: Vec<S>) -> Self {
        Self { x }
    }

    pub fn max_modulus(&self) -> f64 {
        self.x.iter().map(|v| v.modulus()).fold(0.0, f64::max)
    }
}

fn check_disc<S: Scalar>(x: &[S]) -> Result<()> {
    for v in x {
        let m = v.modulus();
        if !(m < 1.0) {
            return Err(Error::OutsideDisc(m));
        }
    }
    Ok(())
}

/// Incremental shell generator for `F_D`.
struct Shells<'a, S> {
    params: &'a HgParams,
    x: &'a [S],
    /// `e[i][m] = (b_i)_m x_i^m / m!`
    e: Vec<Vec<S>>,
    /// `conv[j][k]`: degree-k coefficient of the product of the first j+1 series.
    conv: Vec<Vec<S>>,
    ratio: f64,
    k: usize,
}

impl<'a, S: Scalar> Shells<'a, S> {
    fn new(params: &'a HgParams, x: &'a [S]) -> Self {
        let n = x.len();
        Self {
            params,
            x,
            e: vec![Vec::new(); n],
            conv: vec![Vec::new(); n],
            ratio: 1.0,
            k: 0,
        }
    }

    /// Returns `(a)_k / (c)_k * h_k` for the next `k`.
    fn next_shell(&mut self) -> S {
        let k = self.k;
        for (i, e) in self.e.iter_mut().enumerate() {
            let v = if k == 0 {
                S::from_real(1.0)
            } else {
                e[k - 1] * self.x[i] * ((self.params.b[i] + (k - 1) as f64) / k as f64)
            };
            e.push(v);
        }
        for j in 0..self.x.len() {
            let v = if j == 0 {
                self.e[0][k]
            } else {
                let prev = &self.conv[j - 1];
                let ej = &self.e[j];
                let mut acc = S::from_real(0.0);
                for l in 0..=k {
                    acc += prev[k - l] * ej[l];
                }
                acc
            };
            self.conv[j].push(v);
        }
        if k > 0 {
            let kf = (k - 1) as f64;
            self.ratio *= (self.params.a + kf) / (self.params.c + kf);
        }
        self.k += 1;
        self.conv[self.x.len() - 1][k] * self.ratio
    }
}

/// The first `count` shell contributions of `F_D`; a diagnostic for the
/// summation order.
pub fn fd_shells<S: Scalar>(params: &HgParams, pt: &EvalPoint<S>, count: usize) -> Result<Vec<S>> {
    params.validate()?;
    check_arity(params, &pt.x)?;
    let mut shells = Shells::new(params, &pt.x);
    Ok((0..count).map(|_| shells.next_shell()).collect())
}

fn check_arity<S>(params: &HgParams, x: &[S]) -> Result<()> {
    if params.b.len() != x.len() {
        return Err(Error::DomainViolation(format!(
            "{} b parameters but {} arguments",
            params.b.len(),
            x.len()
        )));
    }
    Ok(())
}

/// Lauricella `F_D^(n)(a; b; c; x)` by its multiple power series.
pub fn lauricella_fd_series<S: Scalar>(params: &HgParams, pt: &EvalPoint<S>, tol: f64) -> Result<S> {
    params.validate()?;
    check_arity(params, &pt.x)?;
    check_disc(&pt.x)?;
    if params.n() == 1 {
        return gauss_2f1_series(params, pt.x[0], tol);
    }
    let mut shells = Shells::new(params, &pt.x);
    let mut sum = S::from_real(0.0);
    let mut small = 0;
    for _ in 0..MAX_SHELLS {
        let s = shells.next_shell();
        sum += s;
        if !sum.is_finite_value() {
            return Err(Error::NonConvergent("F_D series"));
        }
        if s.modulus() < tol * sum.modulus() || s.modulus() == 0.0 {
            small += 1;
            if small >= SMALL_RUN {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergent("F_D series"))
}

/// Gauss `2F1(a, b; c; z)` for `|z| < 1`.
pub fn gauss_2f1_series<S: Scalar>(params: &HgParams, z: S, tol: f64) -> Result<S> {
    params.validate()?;
    check_arity(params, &[z])?;
    check_disc(&[z])?;
    let (a, b, c) = (params.a, params.b[0], params.c);
    let mut term = S::from_real(1.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term = term * z * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)));
        sum += term;
        if !sum.is_finite_value() {
            return Err(Error::NonConvergent("2F1 series"));
        }
        if term.modulus() < tol * sum.modulus() || term.modulus() == 0.0 {
            small += 1;
            if small >= SMALL_RUN {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergent("2F1 series"))
}

/// Appell `F1(a; b, b'; c; x, y)`.
pub fn appell_f1_series<S: Scalar>(a: f64, b: f64, b2: f64, c: f64, x: S, y: S, tol: f64) -> Result<S> {
    lauricella_fd_series(&HgParams::new(a, vec![b, b2], c), &EvalPoint::new(vec![x, y]), tol)
}
