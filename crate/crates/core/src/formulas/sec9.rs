//! A cubic curve with two vertical lines, and its one-variable corollary.

use num_complex::Complex64;

use super::{check_arity, inside, off_cut, pos_pow, real, require, EvalCtx, Identity, OracleProblem};
use crate::error::{Error, Result};
use crate::gamma::beta;
use crate::period::{Axis, BiPoly, Boundary, RegionSpec, Slicing, TwoForm};
use crate::polyroots::cubic_roots_real;

pub struct T91;

#[derive(Clone, Copy)]
struct P {
    t: f64,
    a: f64,
    s: f64,
    w: f64,
}

impl P {
    fn new(v: &[f64]) -> Self {
        Self { t: v[0], a: v[1], s: v[2], w: v[3] }
    }

    fn f(&self, x: f64, y: f64) -> f64 {
        let t = self.t;
        y * y * y + t * y * y - (3.0 + 2.0 * t) * x * y + (2.0 + t) * x
    }

    /// Roots `r1 < r2 < r3` in `y` of `f(x, y) = 0`.
    fn r(&self, x: f64) -> Result<[f64; 3]> {
        let t = self.t;
        let rs = cubic_roots_real(1.0, t, -(3.0 + 2.0 * t) * x, (2.0 + t) * x)?.real_roots_sorted;
        if rs.len() != 3 {
            return Err(Error::DomainViolation(format!("cubic has {} real roots at x = {x}", rs.len())));
        }
        Ok([rs[0], rs[1], rs[2]])
    }

    fn x0(&self) -> f64 {
        let t = self.t;
        -t.powi(3) * (t + 2.0) / (2.0 * t + 3.0).powi(3)
    }

    fn lhs_args(&self) -> [f64; 3] {
        [self.s, self.s / self.x0(), self.s / self.w]
    }

    fn rhs_args(&self) -> Result<[f64; 3]> {
        let [r1, r2, r3] = self.r(self.s)?;
        let big_r = |x: f64| (r2 - r1) * (x - r3) / ((r2 - r3) * (x - r1));
        let rw = self.r(self.w)?;
        Ok([big_r(rw[0]), big_r(rw[1]), big_r(rw[2])])
    }

    fn lhs_f(&self, ctx: &EvalCtx) -> Result<f64> {
        let a = self.a;
        ctx.fd(5.0 / 6.0, &[1.0 / 6.0, 1.0 / 6.0, 4.0 / 3.0 - a], 11.0 / 6.0 - a, &self.lhs_args())
    }
}

impl Identity for T91 {
    fn id(&self) -> &'static str {
        "T9.1"
    }
    fn reference(&self) -> &'static str {
        "Theorem 9.1"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["t", "a", "s", "w"]
    }
    fn domain(&self) -> &'static str {
        "-3/2 < t < -1, a < 1, 0 < s < w < 1"
    }

    fn validate(&self, v: &[f64]) -> Result<()> {
        check_arity(v, 4)?;
        let P { t, a, s, w } = P::new(v);
        require(-1.5 < t && t < -1.0, "-3/2 < t < -1")?;
        require(a < 1.0, "a < 1")?;
        require(0.0 < s && s < w && w < 1.0, "0 < s < w < 1")
    }

    fn admissible(&self, v: &[f64]) -> Result<()> {
        self.validate(v)?;
        let q = P::new(v);
        off_cut(&q.lhs_args())?;
        off_cut(&q.rhs_args()?)?;
        self.constant(v).map(|_| ())
    }

    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let t = inside(-1.5, -1.0, u[0]);
        let a = inside(-1.0, 1.0, u[1]);
        let w = inside(0.0, 1.0, u[3]);
        Ok(vec![t, a, inside(0.0, w, u[2]), w])
    }

    fn lhs(&self, v: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        Ok(real(P::new(v).lhs_f(ctx)?))
    }

    fn rhs(&self, v: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let q = P::new(v);
        let a = q.a;
        let f = ctx.fd(4.0 / 3.0 - a, &[1.0 - a; 3], 8.0 / 3.0 - 2.0 * a, &q.rhs_args()?)?;
        Ok(real(self.constant(v)? * f))
    }

    fn constant(&self, v: &[f64]) -> Result<f64> {
        let q = P::new(v);
        let P { t, a, s, w } = q;
        let [r1, r2, r3] = q.r(s)?;
        let num = (-t).sqrt()
            * (t + 2.0).powf(1.0 / 6.0)
            * w.powf(4.0 / 3.0 - a)
            * pos_pow("C base", (s - 1.0) * ((3.0 + 2.0 * t).powi(3) * s + t.powi(4) + 2.0 * t.powi(3)), 5.0 / 6.0 - a)?;
        let den = (w - s).powf(1.0 / 3.0)
            * pos_pow("r3(s) - r2(s)", r3 - r2, 3.0 - 3.0 * a)?
            * pos_pow("f(w, r1(s))", q.f(w, r1), 1.0 - a)?;
        Ok(num / den)
    }

    fn has_oracle(&self) -> bool {
        true
    }

    fn oracle(&self, v: &[f64], ctx: &EvalCtx) -> Option<Result<OracleProblem>> {
        Some(oracle(P::new(v), ctx))
    }
}

fn oracle(q: P, ctx: &EvalCtx) -> Result<OracleProblem> {
    let P { t, a, s, w } = q;
    let c1 = beta(1.0 / 3.0, 1.0 / 3.0)?
        * (4.0 * (3.0 + 2.0 * t).powi(3)).powf(-1.0 / 6.0)
        * s.powf(5.0 / 6.0 - a)
        * q.x0().powf(-1.0 / 6.0)
        * w.powf(a - 4.0 / 3.0)
        * beta(5.0 / 6.0, 1.0 - a)?;
    let closed_form = c1 * q.lhs_f(ctx)?;
    let form = TwoForm::new(vec![
        (BiPoly::new(vec![(0, 3, 1.0), (0, 2, t), (1, 1, -(3.0 + 2.0 * t)), (1, 0, 2.0 + t)]), 2.0 / 3.0),
        (BiPoly::new(vec![(0, 0, s), (1, 0, -1.0)]), a),
        (BiPoly::new(vec![(0, 0, w), (1, 0, -1.0)]), 4.0 / 3.0 - a),
    ]);
    let [r1s, r2s, _] = q.r(s)?;
    let x_outer = Slicing {
        outer: Axis::X,
        lo: 0.0,
        hi: s,
        mu_lo: 1.0 / 6.0,
        mu_hi: a,
        lower: Boundary::new(move |x| q.r(x).map(|r| r[0]).unwrap_or(f64::NAN), Some(0)),
        upper: Boundary::new(move |x| q.r(x).map(|r| r[1]).unwrap_or(f64::NAN), Some(0)),
        lo_line: None,
        hi_line: Some(1),
    };
    let y_outer = Slicing {
        outer: Axis::Y,
        lo: r1s,
        hi: r2s,
        mu_lo: a - 1.0 / 3.0,
        mu_hi: a - 1.0 / 3.0,
        lower: Boundary::new(move |y| (y * y * y + t * y * y) / ((3.0 + 2.0 * t) * y - (2.0 + t)), Some(0)),
        upper: Boundary::constant(s, Some(1)),
        lo_line: None,
        hi_line: None,
    };
    Ok(OracleProblem { region: RegionSpec { x_outer, y_outer }, form, closed_form })
}

pub struct C92;

impl Identity for C92 {
    fn id(&self) -> &'static str {
        "C9.2"
    }
    fn reference(&self) -> &'static str {
        "Corollary 9.2"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["t", "a"]
    }
    fn domain(&self) -> &'static str {
        "-3/2 < t < -1, a < 5/6"
    }
    fn validate(&self, v: &[f64]) -> Result<()> {
        check_arity(v, 2)?;
        require(-1.5 < v[0] && v[0] < -1.0, "-3/2 < t < -1")?;
        require(v[1] < 5.0 / 6.0, "a < 5/6")
    }
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(vec![inside(-1.5, -1.0, u[0]), inside(-0.5, 5.0 / 6.0, u[1])])
    }
    fn lhs(&self, v: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (t, a) = (v[0], v[1]);
        let z = -t * (2.0 * t + 3.0) / (t + 2.0);
        Ok(real(ctx.f21(4.0 / 3.0 - a, 2.0 - 2.0 * a, 3.0 - 3.0 * a, z)?))
    }
    fn rhs(&self, v: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let (t, a) = (v[0], v[1]);
        let z = -(2.0 * t + 3.0).powi(3) / (t.powi(3) * (t + 2.0));
        Ok(real(self.constant(v)? * ctx.f21(5.0 / 6.0, 1.5 - a, 5.0 / 3.0 - a, z)?))
    }
    fn constant(&self, v: &[f64]) -> Result<f64> {
        let (t, a) = (v[0], v[1]);
        Ok(2f64.powf(2.0 * a - 2.0)
            * 3f64.powf(2.5 - 3.0 * a)
            * (-t).powf(3.0 * a - 4.5)
            * (t + 2.0).powf(0.5 - a)
            * (t + 3.0).powi(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;

    #[test]
    fn reference_values() {
        let ctx = EvalCtx::new(Engine::Auto, 1e-13);
        let p = [-1.25, 0.4, 0.3, 0.6];
        T91.admissible(&p).unwrap();
        let (l, r) = (T91.lhs(&p, "printed", &ctx).unwrap().re, T91.rhs(&p, "printed", &ctx).unwrap().re);
        assert!((l - 1.4991079158773438).abs() < 1e-12, "{l}");
        assert!((r - l).abs() < 1e-12, "{r}");
        let p = [-1.25, 0.4];
        let (l, r) = (C92.lhs(&p, "printed", &ctx).unwrap().re, C92.rhs(&p, "printed", &ctx).unwrap().re);
        assert!((l - 2.7593253871846312).abs() < 1e-12, "{l}");
        assert!((r - l).abs() < 1e-12, "{r}");
    }

    #[test]
    fn stricter_w_bound() {
        assert!(T91.validate(&[-1.25, 0.4, 0.3, 1.2]).is_err());
    }
}
