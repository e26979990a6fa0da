//! An `F_D^(4)` identity from a conic with two tangent lines.

use num_complex::Complex64;

use super::{check_arity, inside, pos_pow, real, require, EvalCtx, Identity, OracleProblem};
use crate::error::{Error, Result};
use crate::gamma::beta;
use crate::period::{Axis, BiPoly, Boundary, RegionSpec, Slicing, TwoForm};
use crate::polyroots::quadratic_roots;

pub struct T71;

/// Roots `r1 <= r2` of `A z^2 + B z + C` given a discriminant computed in
/// factored form.
fn roots_with_disc(qa: f64, qb: f64, qc: f64, disc: f64) -> Result<(f64, f64)> {
    if disc < 0.0 {
        return Err(Error::DomainViolation(format!("negative discriminant {disc}")));
    }
    let q = -0.5 * (qb + qb.signum() * disc.sqrt());
    let (r1, r2) = if q == 0.0 { (-qb / (2.0 * qa), -qb / (2.0 * qa)) } else { (q / qa, qc / q) };
    Ok((r1.min(r2), r1.max(r2)))
}

#[derive(Clone, Copy)]
struct P {
    a: f64,
    p: f64,
    q: f64,
    s: f64,
    t: f64,
}

impl P {
    fn new(v: &[f64]) -> Self {
        Self { a: v[0], p: v[1], q: v[2], s: v[3], t: v[4] }
    }

    /// Roots in `x` of `f(x, y) = 0`.
    fn x_pm(&self, y: f64) -> Result<(f64, f64)> {
        let P { p, q, .. } = *self;
        let disc = 4.0 * y * (p * q - 1.0) * (-2.0 * q * y * y + (1.0 - p * q) * y + 2.0 * p);
        roots_with_disc((y + p).powi(2), 2.0 * q * y * y - 2.0 * p, (q * y - 1.0).powi(2), disc)
    }

    /// Roots in `y` of `f(x, y) = 0`.
    fn y_pm(&self, x: f64) -> Result<(f64, f64)> {
        let P { p, q, .. } = *self;
        let disc = 4.0 * x * (p * q - 1.0) * self.g(x);
        roots_with_disc((x + q).powi(2), 2.0 * p * x * x - 2.0 * q, (p * x - 1.0).powi(2), disc)
    }

    fn g(&self, x: f64) -> f64 {
        let P { p, q, .. } = *self;
        -2.0 * p * x * x + (1.0 - p * q) * x + 2.0 * q
    }

    fn xs(&self) -> Result<(f64, f64)> {
        let r = quadratic_roots(-2.0 * self.p, 1.0 - self.p * self.q, 2.0 * self.q)?.real_roots_sorted;
        Ok((r[0], r[1]))
    }

    fn ys(&self) -> Result<(f64, f64)> {
        let r = quadratic_roots(-2.0 * self.q, 1.0 - self.p * self.q, 2.0 * self.p)?.real_roots_sorted;
        Ok((r[0], r[1]))
    }

    fn lhs_f(&self, variant: &str, ctx: &EvalCtx) -> Result<f64> {
        let P { a, s, t, .. } = *self;
        let (x1, x2) = self.xs()?;
        let (xm, xp) = self.x_pm(s)?;
        let third = match variant {
            "printed" => xm,
            "x_plus" => xp,
            other => return Err(Error::DomainViolation(format!("unknown variant {other}"))),
        };
        ctx.fd(1.5 - a, &[a - 0.5, a - 0.5, 1.0 - a, 1.0 - a], 0.5 + a, &[t / x1, t / x2, t / xm, t / third])
    }

    fn delta(&self) -> Result<f64> {
        let P { p, q, t, .. } = *self;
        Ok(pos_pow("delta^2", 4.0 * (p * q - 1.0) * t * self.g(t), 0.5)? / (t + q).powi(2))
    }
}

impl Identity for T71 {
    fn id(&self) -> &'static str {
        "T7.1"
    }
    fn reference(&self) -> &'static str {
        "§7 Theorem"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "p", "q", "s", "t"]
    }
    fn domain(&self) -> &'static str {
        "1/2 < a < 1, 1 < p < q, 1/q < s < y2, 0 < t < x-(s)"
    }
    fn variants(&self) -> &'static [&'static str] {
        &["printed", "x_plus"]
    }

    fn validate(&self, v: &[f64]) -> Result<()> {
        check_arity(v, 5)?;
        let P { a, p, q, s, t } = P::new(v);
        require(0.5 < a && a < 1.0, "1/2 < a < 1")?;
        require(1.0 < p && p < q, "1 < p < q")?;
        let (_, y2) = P::new(v).ys()?;
        require(1.0 / q < s && s < y2, "1/q < s < y2")?;
        let (xm, _) = P::new(v).x_pm(s)?;
        require(0.0 < t && t < xm, "0 < t < x-(s)")
    }

    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let a = inside(0.5, 1.0, u[0]);
        let p = inside(1.0, 3.0, u[1]);
        let q = inside(p, p + 3.0, u[2]);
        let mut v = P { a, p, q, s: 0.0, t: 0.0 };
        let (_, y2) = v.ys()?;
        v.s = inside(1.0 / q, y2, u[3]);
        let (xm, _) = v.x_pm(v.s)?;
        v.t = inside(0.0, xm, u[4]);
        Ok(vec![v.a, v.p, v.q, v.s, v.t])
    }

    fn lhs(&self, v: &[f64], variant: &str, ctx: &EvalCtx) -> Result<Complex64> {
        Ok(real(P::new(v).lhs_f(variant, ctx)?))
    }

    fn rhs(&self, v: &[f64], _variant: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let w = P::new(v);
        let (y1, y2) = w.ys()?;
        let (ym, _) = w.y_pm(w.t)?;
        let d = w.delta()?;
        let a = w.a;
        let args = [d / (w.s - ym), -d / ym, d / (y2 - ym), d / (y1 - ym)];
        let f = ctx.fd(a, &[2.0 - 2.0 * a, a - 0.5, a - 0.5, a - 0.5], 2.0 * a, &args)?;
        Ok(real(self.constant(v)? * f))
    }

    fn constant(&self, v: &[f64]) -> Result<f64> {
        let w = P::new(v);
        let P { a, p, q, s, t } = w;
        let (ym, _) = w.y_pm(t)?;
        let inner = ym * (-ym * ym + (1.0 - p * q) / (2.0 * q) * ym + p / q);
        Ok(2f64.powf(1.0 - 2.0 * a)
            * (t + q).powf(-2.0 * a)
            * pos_pow("(s-y-)/(qs-1)", (s - ym) / (q * s - 1.0), 2.0 * a - 2.0)?
            * pos_pow("C base", (p * q - 1.0) * w.g(t) / inner, a - 0.5)?)
    }

    fn has_oracle(&self) -> bool {
        true
    }

    fn oracle(&self, v: &[f64], ctx: &EvalCtx) -> Option<Result<OracleProblem>> {
        Some(oracle(P::new(v), ctx))
    }
}

fn oracle(w: P, ctx: &EvalCtx) -> Result<OracleProblem> {
    let P { a, p, q, s, t } = w;
    let (x1, x2) = w.xs()?;
    let (xm, xp) = w.x_pm(s)?;
    let c1 = beta(1.0 - a, 1.0 - a)?
        * (8.0 * p * (p * q - 1.0)).powf(0.5 - a)
        * (s + p).powf(2.0 * a - 2.0)
        * t.powf(a - 0.5)
        * (x1.abs() * x2.abs()).powf(0.5 - a)
        * pos_pow("x-(s) x+(s)", xm * xp, a - 1.0)?
        * beta(1.5 - a, 2.0 * a - 1.0)?;
    let closed_form = c1 * w.lhs_f("x_plus", ctx)?;
    // (qy-1)^2 + x(2qy^2 - 2p) + x^2 (y+p)^2
    let f = BiPoly::new(vec![
        (0, 2, q * q),
        (0, 1, -2.0 * q),
        (0, 0, 1.0),
        (1, 0, -2.0 * p),
        (1, 2, 2.0 * q),
        (2, 2, 1.0),
        (2, 1, 2.0 * p),
        (2, 0, p * p),
    ]);
    let form = TwoForm::new(vec![
        (f, a),
        (BiPoly::new(vec![(1, 0, 1.0), (0, 0, -t)]), 2.0 - 2.0 * a),
        (BiPoly::new(vec![(0, 1, 1.0), (0, 0, -s)]), 2.0 - 2.0 * a),
    ]);
    let (ymt, ypt) = w.y_pm(t)?;
    let x_outer = Slicing {
        outer: Axis::X,
        lo: 0.0,
        hi: t,
        mu_lo: a - 0.5,
        mu_hi: 2.0 - 2.0 * a,
        lower: Boundary::new(move |x| w.y_pm(x).map(|r| r.0).unwrap_or(f64::NAN), Some(0)),
        upper: Boundary::new(move |x| w.y_pm(x).map(|r| r.1).unwrap_or(f64::NAN), Some(0)),
        lo_line: None,
        hi_line: Some(1),
    };
    let y_outer = Slicing {
        outer: Axis::Y,
        lo: ymt,
        hi: ypt,
        mu_lo: 1.0 - a,
        mu_hi: 1.0 - a,
        lower: Boundary::new(move |y| w.x_pm(y).map(|r| r.0).unwrap_or(f64::NAN), Some(0)),
        upper: Boundary::constant(t, Some(1)),
        lo_line: None,
        hi_line: None,
    };
    Ok(OracleProblem { region: RegionSpec { x_outer, y_outer }, form, closed_form })
}
