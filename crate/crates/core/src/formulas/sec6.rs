//! Appell `F1` identities from a parabola and two lines, their degenerations,
//! the two quadratic transformations of Goursat type and the Remark constant.

use num_complex::Complex64;
use serde::Serialize;

use super::{check_arity, inside, pos_pow, real, require, EvalCtx, Identity, OracleProblem};
use crate::error::{Error, Result};
use crate::gamma::{beta, gamma};
use crate::period::{Axis, BiPoly, Boundary, RegionSpec, Slicing, TwoForm};
use crate::singular::integrate_singular;

/// `F1(a; b, b2; c; x, y)`.
fn f1(ctx: &EvalCtx, a: f64, b: f64, b2: f64, c: f64, x: f64, y: f64) -> Result<f64> {
    ctx.fd(a, &[b, b2], c, &[x, y])
}

/// `F1(a; b, b2; c; x, x)`, checked against its collapse to `2F1(a, b+b2; c; x)`.
fn f1_diagonal(ctx: &EvalCtx, a: f64, b: f64, b2: f64, c: f64, x: f64) -> Result<f64> {
    let v = f1(ctx, a, b, b2, c, x, x)?;
    let tight = EvalCtx::new(ctx.engine, ctx.tol * 1e-2);
    let w = tight.f21(a, b + b2, c, x)?;
    if (v - w).abs() > 1e-10 * w.abs().max(1e-300) {
        return Err(Error::NonConvergent("F1 diagonal collapse check"));
    }
    Ok(v)
}

/// Shared parabola `x = y^2` with lines `x = 1`, `x = t2^2`, `y = t1`.
fn parabola_form(a: f64, b: f64, t1: f64, t2: f64, flip: bool) -> TwoForm {
    let t22 = if flip { BiPoly::new(vec![(1, 0, 1.0), (0, 0, -t2 * t2)]) } else { BiPoly::new(vec![(1, 0, -1.0), (0, 0, t2 * t2)]) };
    TwoForm::new(vec![
        (BiPoly::new(vec![(1, 0, 1.0), (0, 2, -1.0)]), a + b),
        (BiPoly::new(vec![(0, 0, 1.0), (1, 0, -1.0)]), 1.0 - b),
        (t22, 1.0 - a),
        (BiPoly::new(vec![(0, 1, 1.0), (0, 0, -t1)]), 2.0 - 2.0 * a - 2.0 * b),
    ])
}

pub struct T61;

impl T61 {
    fn lhs_f(p: &[f64], ctx: &EvalCtx) -> Result<f64> {
        let (a, b, s, t) = (p[0], p[1], p[2], p[3]);
        f1(ctx, 1.5 - a - b, 1.0 - a - b, 1.0 - b, 1.5 - b, s * s, t * t)
    }
}

impl Identity for T61 {
    fn id(&self) -> &'static str {
        "T6.1"
    }
    fn reference(&self) -> &'static str {
        "Theorem 6.1"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "s", "t"]
    }
    fn domain(&self) -> &'static str {
        "a > 0, a+b < 1, 0 < t < 1, t < s < 1"
    }
    fn validate(&self, p: &[f64]) -> Result<()> {
        check_arity(p, 4)?;
        let (a, b, s, t) = (p[0], p[1], p[2], p[3]);
        require(a > 0.0, "a > 0")?;
        require(a + b < 1.0, "a+b < 1")?;
        require(0.0 < t && t < 1.0, "0 < t < 1")?;
        require(t < s && s < 1.0, "t < s < 1")
    }
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let a = inside(0.0, 1.0, u[0]);
        let b = inside(-0.5, 1.0 - a, u[1]);
        let t = inside(0.0, 1.0, u[3]);
        let s = inside(t, 1.0, u[2]);
        Ok(vec![a, b, s, t])
    }
    fn lhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        Ok(real(Self::lhs_f(p, ctx)?))
    }
    fn rhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, s, t) = (p[0], p[1], p[2], p[3]);
        let x = -4.0 * t / (1.0 - t).powi(2);
        let y = 2.0 * (s - t) / ((1.0 - t) * (1.0 + s));
        Ok(real(self.constant(p)? * f1(ctx, 1.0 - b, a, 2.0 - 2.0 * a - 2.0 * b, 2.0 - 2.0 * b, x, y)?))
    }
    fn constant(&self, p: &[f64]) -> Result<f64> {
        let (a, b, s, t) = (p[0], p[1], p[2], p[3]);
        Ok((1.0 - t).powf(2.0 * b - 2.0) * (1.0 + s).powf(2.0 * a + 2.0 * b - 2.0))
    }
    fn has_oracle(&self) -> bool {
        true
    }
    fn oracle(&self, p: &[f64], ctx: &EvalCtx) -> Option<Result<OracleProblem>> {
        let (a, b, s, t) = (p[0], p[1], p[2], p[3]);
        let (t2, t1) = (t, t / s);
        let run = || -> Result<OracleProblem> {
            let c1 = 2f64.powf(1.0 - 2.0 * a - 2.0 * b)
                * beta(1.0 - a - b, 1.0 - a - b)?
                * beta(1.5 - a - b, a)?
                * t2.powf(1.0 - 2.0 * b)
                * t1.powf(2.0 * a + 2.0 * b - 2.0);
            let closed_form = c1 * Self::lhs_f(p, ctx)?;
            let form = parabola_form(a, b, t1, t2, false);
            let x_outer = Slicing {
                outer: Axis::X,
                lo: 0.0,
                hi: t2 * t2,
                mu_lo: a + b - 0.5,
                mu_hi: 1.0 - a,
                lower: Boundary::new(|x: f64| -x.sqrt(), Some(0)),
                upper: Boundary::new(|x: f64| x.sqrt(), Some(0)),
                lo_line: None,
                hi_line: Some(2),
            };
            let y_outer = Slicing {
                outer: Axis::Y,
                lo: -t2,
                hi: t2,
                mu_lo: b,
                mu_hi: b,
                lower: Boundary::new(|y| y * y, Some(0)),
                upper: Boundary::constant(t2 * t2, Some(2)),
                lo_line: None,
                hi_line: None,
            };
            Ok(OracleProblem { region: RegionSpec { x_outer, y_outer }, form, closed_form })
        };
        Some(run())
    }
}

fn sector_validate(p: &[f64], n: usize) -> Result<()> {
    check_arity(p, n)?;
    let (a, b, t1) = (p[0], p[1], p[2]);
    require(b > 0.0, "b > 0")?;
    require(0.5 < a + b && a + b < 1.0, "1/2 < a+b < 1")?;
    require(0.0 < t1 && t1 < 1.0, "0 < t1 < 1")
}

/// `(a, b)` with `b > 0` and `a + b` in `(1/2, 1)`.
fn sector_ab(u0: f64, u1: f64) -> (f64, f64) {
    let sum = inside(0.5, 1.0, u0);
    let b = inside(0.0, sum, u1);
    (sum - b, b)
}

pub struct T62;

impl T62 {
    fn rhs_f(p: &[f64], ctx: &EvalCtx) -> Result<f64> {
        let (a, b, t1, t2) = (p[0], p[1], p[2], p[3]);
        let x = (t1 * t1 - 1.0) / (t1 * t1);
        let y = (t1 * t1 - 1.0) / (t1 * t1 - t2 * t2);
        f1(ctx, a + b, a + b - 0.5, 1.0 - a, a + 2.0 * b, x, y)
    }
}

impl Identity for T62 {
    fn id(&self) -> &'static str {
        "T6.2"
    }
    fn reference(&self) -> &'static str {
        "Theorem 6.2"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "t1", "t2"]
    }
    fn domain(&self) -> &'static str {
        "b > 0, 1/2 < a+b < 1, 0 < t1 < 1, 0 <= t2 < t1"
    }
    fn validate(&self, p: &[f64]) -> Result<()> {
        sector_validate(p, 4)?;
        require(0.0 <= p[3] && p[3] < p[2], "0 <= t2 < t1")
    }
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let (a, b) = sector_ab(u[0], u[1]);
        let t1 = inside(0.0, 1.0, u[2]);
        Ok(vec![a, b, t1, inside(0.0, t1, u[3])])
    }
    fn lhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, t1, t2) = (p[0], p[1], p[2], p[3]);
        let x = (1.0 - t1) * (t2 + 1.0) / (2.0 * (t2 - t1));
        let y = (1.0 - t1) * (t2 - 1.0) / (2.0 * (t2 + t1));
        let pre = t1.powf(2.0 * a + 2.0 * b - 1.0) * (1.0 - t2 * t2).powf(a + b - 1.0);
        Ok(real(pre * f1(ctx, 2.0 * a + 2.0 * b - 1.0, b, b, a + 2.0 * b, x, y)?))
    }
    fn rhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, t1, t2) = (p[0], p[1], p[2], p[3]);
        Ok(real((t1 * t1 - t2 * t2).powf(a + b - 1.0) * Self::rhs_f(p, ctx)?))
    }
    /// Ratio of the right prefactor to the left one.
    fn constant(&self, p: &[f64]) -> Result<f64> {
        let (a, b, t1, t2) = (p[0], p[1], p[2], p[3]);
        Ok((t1 * t1 - t2 * t2).powf(a + b - 1.0) / (t1.powf(2.0 * a + 2.0 * b - 1.0) * (1.0 - t2 * t2).powf(a + b - 1.0)))
    }
    fn has_oracle(&self) -> bool {
        true
    }
    fn oracle(&self, p: &[f64], ctx: &EvalCtx) -> Option<Result<OracleProblem>> {
        let (a, b, t1, t2) = (p[0], p[1], p[2], p[3]);
        let run = || -> Result<OracleProblem> {
            let c1 = 2f64.powf(1.0 - 2.0 * a - 2.0 * b)
                * beta(2.0 * a + 2.0 * b - 1.0, 1.0 - a - b)?
                * beta(a + b, b)?
                * t1.powf(1.0 - 2.0 * a - 2.0 * b)
                * (1.0 - t1 * t1).powf(a + 2.0 * b - 1.0)
                * (t1 * t1 - t2 * t2).powf(a - 1.0);
            let closed_form = c1 * Self::rhs_f(p, ctx)?;
            let form = parabola_form(a, b, t1, t2, true);
            let x_outer = Slicing {
                outer: Axis::X,
                lo: t1 * t1,
                hi: 1.0,
                mu_lo: 1.0 - a - b,
                mu_hi: 1.0 - b,
                lower: Boundary::constant(t1, Some(3)),
                upper: Boundary::new(|x: f64| x.sqrt(), Some(0)),
                lo_line: None,
                hi_line: Some(1),
            };
            let y_outer = Slicing {
                outer: Axis::Y,
                lo: t1,
                hi: 1.0,
                mu_lo: 2.0 - 2.0 * a - 2.0 * b,
                mu_hi: a,
                lower: Boundary::new(|y| y * y, Some(0)),
                upper: Boundary::constant(1.0, Some(1)),
                lo_line: Some(3),
                hi_line: None,
            };
            Ok(OracleProblem { region: RegionSpec { x_outer, y_outer }, form, closed_form })
        };
        Some(run())
    }
}

/// `t2 = 0` degeneration: both sides become `F1` on the diagonal.
pub struct Degen0;

impl Identity for Degen0 {
    fn id(&self) -> &'static str {
        "E6.degen0"
    }
    fn reference(&self) -> &'static str {
        "Theorem 6.2, degeneration t2 -> 0"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "t1"]
    }
    fn domain(&self) -> &'static str {
        "b > 0, 1/2 < a+b < 1, 0 < t1 < 1"
    }
    fn validate(&self, p: &[f64]) -> Result<()> {
        sector_validate(p, 3)
    }
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let (a, b) = sector_ab(u[0], u[1]);
        Ok(vec![a, b, inside(0.0, 1.0, u[2])])
    }
    fn lhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, t1) = (p[0], p[1], p[2]);
        let x = (t1 - 1.0) / (2.0 * t1);
        Ok(real(t1 * f1_diagonal(ctx, 2.0 * a + 2.0 * b - 1.0, b, b, a + 2.0 * b, x)?))
    }
    fn rhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, t1) = (p[0], p[1], p[2]);
        let y = (t1 * t1 - 1.0) / (t1 * t1);
        Ok(real(f1_diagonal(ctx, a + b, 1.0 - a, a + b - 0.5, a + 2.0 * b, y)?))
    }
    fn constant(&self, p: &[f64]) -> Result<f64> {
        Ok(1.0 / p[2])
    }
}

/// `t2 -> t1` degeneration, with `t1` renamed `t`.
pub struct Degen1;

impl Identity for Degen1 {
    fn id(&self) -> &'static str {
        "E6.degen1"
    }
    fn reference(&self) -> &'static str {
        "Theorem 6.2, degeneration t2 -> t1"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "t"]
    }
    fn domain(&self) -> &'static str {
        "a > 0, b > 0, 1/2 < a+b < 1, 0 < t < 1"
    }
    fn validate(&self, p: &[f64]) -> Result<()> {
        sector_validate(p, 3)?;
        require(p[0] > 0.0, "a > 0")
    }
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let sum = inside(0.5, 1.0, u[0]);
        let a = inside(0.0, sum, u[1]);
        Ok(vec![a, sum - a, inside(0.0, 1.0, u[2])])
    }
    fn lhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, t) = (p[0], p[1], p[2]);
        Ok(real(ctx.f21(2.0 * a + b - 1.0, a + b - 0.5, 2.0 * a + 2.0 * b - 1.0, (t * t - 1.0) / (t * t))?))
    }
    fn rhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, t) = (p[0], p[1], p[2]);
        let z = -(1.0 - t).powi(2) / (4.0 * t);
        Ok(real(self.constant(p)? * ctx.f21(2.0 * a + b - 1.0, b, a + b, z)?))
    }
    fn constant(&self, p: &[f64]) -> Result<f64> {
        Ok(p[2].powf(2.0 * p[0] + p[1] - 1.0))
    }
}

pub struct Goursat1;

impl Identity for Goursat1 {
    fn id(&self) -> &'static str {
        "C6.G1"
    }
    fn reference(&self) -> &'static str {
        "Corollary Goursat1"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "z"]
    }
    fn domain(&self) -> &'static str {
        "b < 1, 1/2 < a < b+1/2, z < 0"
    }
    fn validate(&self, p: &[f64]) -> Result<()> {
        check_arity(p, 3)?;
        let (a, b, z) = (p[0], p[1], p[2]);
        require(b < 1.0, "b < 1")?;
        require(0.5 < a && a < b + 0.5, "1/2 < a < b+1/2")?;
        require(z <= 0.0, "z <= 0")
    }
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let b = inside(0.0, 1.0, u[1]);
        Ok(vec![inside(0.5, b + 0.5, u[0]), b, inside(-10.0, 0.0, u[2])])
    }
    fn lhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, z) = (p[0], p[1], p[2]);
        Ok(real(ctx.f21(a, b, a + b - 0.5, z)?))
    }
    fn rhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, z) = (p[0], p[1], p[2]);
        let w = 0.5 - 0.5 * (1.0 - z).sqrt();
        Ok(real(self.constant(p)? * ctx.f21(2.0 * a - 1.0, 2.0 * b - 1.0, a + b - 0.5, w)?))
    }
    fn constant(&self, p: &[f64]) -> Result<f64> {
        pos_pow("1-z", 1.0 - p[2], -0.5)
    }
}

pub struct Goursat2;

impl Identity for Goursat2 {
    fn id(&self) -> &'static str {
        "C6.G2"
    }
    fn reference(&self) -> &'static str {
        "Corollary Goursat2"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "z"]
    }
    fn domain(&self) -> &'static str {
        "0 < b < 1/2, a < 2b, z < 0"
    }
    fn validate(&self, p: &[f64]) -> Result<()> {
        check_arity(p, 3)?;
        let (a, b, z) = (p[0], p[1], p[2]);
        require(0.0 < b && b < 0.5, "0 < b < 1/2")?;
        require(a < 2.0 * b, "a < 2b")?;
        require(z <= 0.0, "z <= 0")
    }
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let b = inside(0.0, 0.5, u[1]);
        Ok(vec![inside(-1.0, 2.0 * b, u[0]), b, inside(-10.0, 0.0, u[2])])
    }
    fn lhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, z) = (p[0], p[1], p[2]);
        Ok(real(ctx.f21(a, b, 2.0 * b, z)?))
    }
    fn rhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (a, b, z) = (p[0], p[1], p[2]);
        let r = (1.0 - z).sqrt();
        let w = -0.25 * (1.0 - r).powi(2) / r;
        Ok(real(self.constant(p)? * ctx.f21(a, 2.0 * b - a, b + 0.5, w)?))
    }
    fn constant(&self, p: &[f64]) -> Result<f64> {
        pos_pow("1-z", 1.0 - p[2], -p[0] / 2.0)
    }
}

/// Both integrals of the Remark and the predicted constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DmCheck {
    pub eta: f64,
    pub omega: f64,
    pub c: f64,
    /// `(eta / omega) / c - 1`
    pub residual: f64,
}

pub fn dm_constant(a: f64, b: f64) -> Result<f64> {
    Ok(2f64.powf(2.0 * a + 2.0 * b - 3.0) * gamma(3.0 - 2.0 * a - 2.0 * b)? * gamma(a)?
        / (gamma(2.0 - a - b)? * gamma(1.0 - b)?))
}

fn dm_validate(p: &[f64]) -> Result<()> {
    check_arity(p, 4)?;
    let (a, b, t1, t2) = (p[0], p[1], p[2], p[3]);
    require(a > 0.0 && b > 0.0, "a > 0, b > 0")?;
    require(0.5 < a + b && a + b < 1.0, "1/2 < a+b < 1")?;
    require(0.0 < t1 && t1 < 1.0 && 1.0 < t2, "0 < t1 < 1 < t2")
}

/// `int_1^t2 eta` against `c int_1^(t2^2) omega`.
pub fn verify_remark_dm(a: f64, b: f64, t1: f64, t2: f64, tol: f64) -> Result<DmCheck> {
    dm_validate(&[a, b, t1, t2])?;
    let eta = integrate_singular(
        1.0,
        t2,
        2.0 * a + 2.0 * b - 2.0,
        1.0 - a,
        |z| (t2 * t2 - t1).powf(1.0 - a - b) * (t2 + z.x).powf(a - 1.0) * (z.x * z.x - t1).powf(b - 1.0),
        tol,
    )?;
    let omega = integrate_singular(
        1.0,
        t2 * t2,
        a + b - 1.0,
        b,
        |z| (z.x - t1).powf(-a) * z.x.powf(a + b - 1.5),
        tol,
    )?;
    let c = dm_constant(a, b)?;
    Ok(DmCheck { eta, omega, c, residual: eta / omega / c - 1.0 })
}

pub struct RemarkDm;

const DM_QUAD_TOL: f64 = 1e-12;

impl Identity for RemarkDm {
    fn id(&self) -> &'static str {
        "R6.dm"
    }
    fn reference(&self) -> &'static str {
        "§6 Remark, coincides with the formula [DM, 13.9]"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "t1", "t2"]
    }
    fn domain(&self) -> &'static str {
        "a > 0, b > 0, 1/2 < a+b < 1, 0 < t1 < 1 < t2"
    }
    fn validate(&self, p: &[f64]) -> Result<()> {
        dm_validate(p)
    }
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let sum = inside(0.5, 1.0, u[0]);
        let a = inside(0.0, sum, u[1]);
        Ok(vec![a, sum - a, inside(0.0, 1.0, u[2]), inside(1.0, 3.0, u[3])])
    }
    fn lhs(&self, p: &[f64], _v: &str, _ctx: &EvalCtx) -> Result<Complex64> {
        Ok(real(verify_remark_dm(p[0], p[1], p[2], p[3], DM_QUAD_TOL)?.eta))
    }
    fn rhs(&self, p: &[f64], _v: &str, _ctx: &EvalCtx) -> Result<Complex64> {
        let d = verify_remark_dm(p[0], p[1], p[2], p[3], DM_QUAD_TOL)?;
        Ok(real(d.c * d.omega))
    }
    fn constant(&self, p: &[f64]) -> Result<f64> {
        dm_constant(p[0], p[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;

    fn sides(f: &dyn Identity, p: &[f64]) -> (f64, f64) {
        f.validate(p).unwrap();
        let ctx = EvalCtx::new(Engine::Auto, 1e-13);
        (f.lhs(p, "printed", &ctx).unwrap().re, f.rhs(p, "printed", &ctx).unwrap().re)
    }

    #[test]
    fn reference_values() {
        let cases: [(&dyn Identity, &[f64], f64, f64); 6] = [
            (&T61, &[0.3, 0.4, 0.6, 0.2], 1.1198522334, 1e-9),
            (&T62, &[0.3, 0.4, 0.7, 0.3], 0.82815994268535, 1e-12),
            (&Degen0, &[0.3, 0.4, 0.7], 0.6612299642889, 1e-12),
            (&Degen1, &[0.45, 0.35, 0.7], 0.911523000645138971, 1e-13),
            (&Goursat1, &[0.6, 0.7, -3.0], 0.4794756206892528837, 1e-13),
            (&Goursat2, &[0.3, 0.4, -3.0], 0.7963338054084599178, 1e-13),
        ];
        for (f, p, v, tol) in cases {
            let (l, r) = sides(f, p);
            assert!((l - v).abs() < tol, "{} lhs {l}", f.id());
            assert!((r - v).abs() < tol, "{} rhs {r}", f.id());
        }
    }

    #[test]
    fn goursat_at_zero() {
        let (l, r) = sides(&Goursat1, &[0.6, 0.7, 0.0]);
        assert_eq!((l, r), (1.0, 1.0));
    }

    #[test]
    fn t62_at_t2_zero_matches_degen0() {
        let (l, r) = sides(&T62, &[0.3, 0.4, 0.7, 0.0]);
        let (l0, r0) = sides(&Degen0, &[0.3, 0.4, 0.7]);
        let k = 0.7f64.powf(2.0 * 0.7 - 2.0);
        let (l, r) = (l / k, r / k);
        assert!((l - l0).abs() < 1e-12 && (r - r0).abs() < 1e-12);
    }

    #[test]
    fn remark_ratio() {
        for p in [[0.3, 0.35, 0.5, 1.5], [0.6, 0.3, 0.2, 1.3]] {
            let d = verify_remark_dm(p[0], p[1], p[2], p[3], 1e-12).unwrap();
            assert!(d.residual.abs() < 1e-9, "{d:?}");
        }
        assert!(matches!(verify_remark_dm(0.2, 0.3, 0.5, 1.5, 1e-10), Err(Error::DomainViolation(_))));
    }
}
