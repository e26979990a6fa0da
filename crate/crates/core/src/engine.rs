//! Engine selection for `F_D`: power series inside the disc, Euler integral
//! as continuation outside it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{lauricella_fd_series, EvalPoint, HgParams};
use crate::singular::euler_fd;

/// Largest `max |x_i|` that `Auto` still sends to the series.
pub const AUTO_SWITCH: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Series,
    Euler,
    Auto,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Series => "series",
            Engine::Euler => "euler",
            Engine::Auto => "auto",
        })
    }
}

impl FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "series" => Ok(Engine::Series),
            "euler" => Ok(Engine::Euler),
            "auto" => Ok(Engine::Auto),
            _ => Err(format!("unknown engine `{s}` (series|euler|auto)")),
        }
    }
}

/// Euler integral, letting `2F1` use its `a <-> b` symmetry.
fn euler_any<S: Scalar>(params: &HgParams, x: &[S], tol: f64) -> Result<S> {
    if params.n() == 1 && !params.in_euler_range() {
        let swapped = HgParams::gauss(params.b[0], params.a, params.c);
        if swapped.in_euler_range() {
            return euler_fd(&swapped, x, tol);
        }
    }
    euler_fd(params, x, tol)
}

/// Evaluates `F_D(params; x)` and reports which engine produced the value.
pub fn eval_fd<S: Scalar>(params: &HgParams, x: &[S], engine: Engine, tol: f64) -> Result<(S, Engine)> {
    let pt = EvalPoint::new(x.to_vec());
    match engine {
        Engine::Series => Ok((lauricella_fd_series(params, &pt, tol)?, Engine::Series)),
        Engine::Euler => Ok((euler_any(params, x, tol)?, Engine::Euler)),
        Engine::Auto => {
            let m = pt.max_modulus();
            if m < AUTO_SWITCH {
                return Ok((lauricella_fd_series(params, &pt, tol)?, Engine::Series));
            }
            match euler_any(params, x, tol) {
                Ok(v) => Ok((v, Engine::Euler)),
                Err(Error::ParameterOutOfEulerRange { .. }) if m < 1.0 => {
                    Ok((lauricella_fd_series(params, &pt, tol)?, Engine::Series))
                }
                Err(e) => Err(e),
            }
        }
    }
}

/// `F_D` value only.
pub fn fd<S: Scalar>(params: &HgParams, x: &[S], engine: Engine, tol: f64) -> Result<S> {
    eval_fd(params, x, engine, tol).map(|(v, _)| v)
}

/// `2F1(a, b; c; z)`.
pub fn hyp2f1<S: Scalar>(a: f64, b: f64, c: f64, z: S, engine: Engine, tol: f64) -> Result<S> {
    fd(&HgParams::gauss(a, b, c), &[z], engine, tol)
}
