//! Closed forms for one-dimensional integrals
//! `int_{x1}^{x2} prod_i |x - x_i|^(-mu_i) dx` with `sum mu_i = 2`.
//!
//! The Moebius map sending `x1, x2, x3` to `0, 1, inf` turns the integral
//! into an Euler integral of `F_D^(n-3)` in the cross-ratios of the remaining
//! poles.

use crate::engine::{fd, Engine};
use crate::error::{Error, Result};
use crate::gamma::beta;
use crate::series::{EvalPoint, HgParams};
use crate::singular::{ExtReal, SingularIntegrand};

const SUM_TOL: f64 = 1e-9;

/// `C * F_D(params; point)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FDRepresentation {
    pub constant: f64,
    pub params: HgParams,
    pub point: EvalPoint<f64>,
}

impl FDRepresentation {
    pub fn value(&self, engine: Engine, tol: f64) -> Result<f64> {
        Ok(self.constant * fd(&self.params, &self.point.x, engine, tol)?)
    }
}

/// `R = (xi - x3)(x2 - x1) / ((xi - x1)(x2 - x3))`, with the limits for
/// `x3 = inf` or `xi = inf`.
pub fn cross_ratio(x1: ExtReal, x2: ExtReal, x3: ExtReal, xi: ExtReal) -> Result<f64> {
    let (Some(a), Some(b)) = (x1.finite(), x2.finite()) else {
        return Err(Error::DomainViolation("x1 and x2 must be finite".into()));
    };
    if a == b || x3 == x1 || x3 == x2 || xi == x1 {
        return Err(Error::CoincidentPoints);
    }
    match (x3, xi) {
        (ExtReal::Infinity, ExtReal::Infinity) => Err(Error::CoincidentPoints),
        (ExtReal::Infinity, ExtReal::Finite(v)) => Ok((b - a) / (v - a)),
        (ExtReal::Finite(c), ExtReal::Infinity) => Ok((b - a) / (b - c)),
        (ExtReal::Finite(c), ExtReal::Finite(v)) => Ok((v - c) * (b - a) / ((v - a) * (b - c))),
    }
}

fn check_sum(integrand: &SingularIntegrand) -> Result<()> {
    let s = integrand.exponent_sum();
    if (s - 2.0).abs() > SUM_TOL {
        return Err(Error::ExponentSumViolation(s));
    }
    Ok(())
}

fn finite_tail(integrand: &SingularIntegrand) -> Result<Vec<f64>> {
    integrand.poles[3..]
        .iter()
        .map(|p| {
            p.finite()
                .ok_or_else(|| Error::DomainViolation("a pole at infinity must sit in the x3 slot".into()))
        })
        .collect()
}

fn build(
    integrand: &SingularIntegrand,
    constant: f64,
    args: Vec<f64>,
) -> Result<FDRepresentation> {
    let mu = &integrand.exponents;
    for &r in &args {
        if r >= 1.0 {
            return Err(Error::ArgumentOnCut(r));
        }
    }
    // with no poles beyond x3 the F_D factor is 1; keep a zero slot
    let (b, x) = if args.is_empty() { (vec![0.0], vec![0.0]) } else { (mu[3..].to_vec(), args) };
    Ok(FDRepresentation {
        constant,
        params: HgParams::new(1.0 - mu[0], b, 2.0 - mu[0] - mu[1]),
        point: EvalPoint::new(x),
    })
}

/// Four-pole reduction with a finite `x3`.
pub fn reduce_4pole(integrand: &SingularIntegrand) -> Result<FDRepresentation> {
    if integrand.poles.len() < 3 {
        return Err(Error::DomainViolation("need at least three poles".into()));
    }
    let Some(x3) = integrand.poles[2].finite() else {
        return reduce_infinity(integrand);
    };
    check_sum(integrand)?;
    let (x1, x2) = integrand.interval();
    let mu = &integrand.exponents;
    let tail = finite_tail(integrand)?;
    let mut c = (x2 - x3).abs().powf(mu[0] - 1.0)
        * (x2 - x1).powf(1.0 - mu[0] - mu[1])
        * (x1 - x3).abs().powf(1.0 - mu[0] - mu[2])
        * beta(1.0 - mu[0], 1.0 - mu[1])?;
    let mut args = Vec::with_capacity(tail.len());
    for (&xi, &m) in tail.iter().zip(&mu[3..]) {
        c *= (x1 - xi).abs().powf(-m);
        args.push(cross_ratio(x1.into(), x2.into(), x3.into(), xi.into())?);
    }
    build(integrand, c, args)
}

/// Reduction when `x3` is the point at infinity.
pub fn reduce_infinity(integrand: &SingularIntegrand) -> Result<FDRepresentation> {
    if integrand.poles.len() < 3 || integrand.poles[2] != ExtReal::Infinity {
        return Err(Error::DomainViolation("the x3 slot must hold the pole at infinity".into()));
    }
    check_sum(integrand)?;
    let (x1, x2) = integrand.interval();
    let mu = &integrand.exponents;
    let tail = finite_tail(integrand)?;
    let mut c = (x2 - x1).powf(1.0 - mu[0] - mu[1]) * beta(1.0 - mu[0], 1.0 - mu[1])?;
    let mut args = Vec::with_capacity(tail.len());
    for (&xi, &m) in tail.iter().zip(&mu[3..]) {
        c *= (x1 - xi).abs().powf(-m);
        args.push(cross_ratio(x1.into(), x2.into(), ExtReal::Infinity, xi.into())?);
    }
    build(integrand, c, args)
}

/// Three-pole closed form; `x3 = inf` gives `(x2 - x1)^(1 - mu1 - mu2) B`.
pub fn reduce_3pole(x1: f64, x2: f64, x3: ExtReal, mu1: f64, mu2: f64, mu3: f64) -> Result<f64> {
    let integrand = SingularIntegrand::new(vec![x1.into(), x2.into(), x3], vec![mu1, mu2, mu3])?;
    check_sum(&integrand)?;
    let b = beta(1.0 - mu1, 1.0 - mu2)?;
    Ok(match x3 {
        ExtReal::Infinity => (x2 - x1).powf(1.0 - mu1 - mu2) * b,
        ExtReal::Finite(x3) => {
            (x2 - x1).powf(mu3 - 1.0) * (x2 - x3).abs().powf(mu1 - 1.0) * (x1 - x3).abs().powf(mu2 - 1.0) * b
        }
    })
}
