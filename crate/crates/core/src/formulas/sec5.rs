//! Quadric with a tangent pencil: a three-variable `F_D` identity.

use num_complex::Complex64;

use super::{check_arity, inside, off_cut, pos_pow, real, require, EvalCtx, Identity, OracleProblem};
use crate::error::Result;
use crate::gamma::beta;
use crate::period::{Axis, BiPoly, Boundary, RegionSpec, Slicing, TwoForm};

pub struct T51;

struct P {
    t: f64,
    a1: f64,
    a2: f64,
    a: f64,
    b1: f64,
    b2: f64,
}

impl P {
    fn new(p: &[f64]) -> Self {
        let (t, a1, a2, a) = (p[0], p[1], p[2], p[3]);
        let beta = |al: f64| -al * (al + 2.0 * t) / (2.0 * al + (1.0 + t).powi(2));
        Self { t, a1, a2, a, b1: beta(a1), b2: beta(a2) }
    }

    fn lhs_args(&self) -> [f64; 3] {
        let P { t, a1, a2, b1, b2, .. } = *self;
        [2.0 * (b2 - b1) * t / (a2 * b1 - a1 * b2), -2.0 * t / a1, -2.0 * t / a2]
    }

    fn rhs_args(&self) -> [f64; 3] {
        [1.0 / (self.t * self.t), 1.0 / self.b1, 1.0 / self.b2]
    }

    fn c_base(&self) -> f64 {
        let P { t, a1, a2, .. } = *self;
        t * t * (a1 + 2.0 * t) * (a2 + 2.0 * t) / (a1 * a2 * (1.0 - t).powi(2))
    }

    fn rhs_f(&self, ctx: &EvalCtx) -> Result<f64> {
        let a = self.a;
        ctx.fd(1.0 - a, &[a - 0.5, 1.0 - a, 1.0 - a], 2.5 - 2.0 * a, &self.rhs_args())
    }
}

impl Identity for T51 {
    fn id(&self) -> &'static str {
        "T5.1"
    }
    fn reference(&self) -> &'static str {
        "Theorem 5.1"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["t", "alpha1", "alpha2", "a"]
    }
    fn domain(&self) -> &'static str {
        "t < -1, alpha1 < alpha2 < -(1+t)^2/2, a < 1"
    }

    fn validate(&self, p: &[f64]) -> Result<()> {
        check_arity(p, 4)?;
        let (t, a1, a2, a) = (p[0], p[1], p[2], p[3]);
        require(t < -1.0, "t < -1")?;
        require(a1 < a2 && a2 < -(1.0 + t).powi(2) / 2.0, "alpha1 < alpha2 < -(1+t)^2/2")?;
        require(a < 1.0, "a < 1")?;
        pos_pow("C base", P::new(p).c_base(), 1.0).map(|_| ())
    }

    fn admissible(&self, p: &[f64]) -> Result<()> {
        self.validate(p)?;
        let q = P::new(p);
        off_cut(&q.lhs_args())?;
        off_cut(&q.rhs_args())?;
        require(q.b1 > 1.0 || q.b1 < 0.0, "beta1 outside [0, 1]")?;
        require(q.b2 > 1.0 || q.b2 < 0.0, "beta2 outside [0, 1]")
    }

    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let t = inside(-4.0, -1.0, u[0]);
        let top = -(1.0 + t).powi(2) / 2.0;
        let a2 = inside(top - 6.0, top, u[1]);
        let a1 = inside(a2 - 6.0, a2, u[2]);
        let a = inside(-1.0, 1.0, u[3]);
        Ok(vec![t, a1, a2, a])
    }

    fn lhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let q = P::new(p);
        let a = q.a;
        Ok(real(ctx.fd(2.0 - 2.0 * a, &[1.0 - a; 3], 4.0 - 4.0 * a, &q.lhs_args())?))
    }

    fn rhs(&self, p: &[f64], _v: &str, ctx: &EvalCtx) -> Result<Complex64> {
        Ok(real(self.constant(p)? * P::new(p).rhs_f(ctx)?))
    }

    fn constant(&self, p: &[f64]) -> Result<f64> {
        let q = P::new(p);
        pos_pow("C base", q.c_base(), q.a - 1.0)
    }

    fn has_oracle(&self) -> bool {
        true
    }

    fn oracle(&self, p: &[f64], ctx: &EvalCtx) -> Option<Result<OracleProblem>> {
        Some(oracle(P::new(p), ctx))
    }
}

fn oracle(q: P, ctx: &EvalCtx) -> Result<OracleProblem> {
    let P { t, a1, a2, a, b1, b2 } = q;
    let (q1, q2, q3) = (b2 - b1, a2 - a1, a1 * b2 - a2 * b1);
    let c1 = beta(1.0 - a, 1.0 - a)?
        * beta(1.0 - a, 1.5 - a)?
        * pos_pow("-2t", -2.0 * t, 1.0 - 2.0 * a)?
        * pos_pow("pencil discriminant", (q2 * q2 + 2.0 * q1 * q2) * b1 * b2, a - 1.0)?;
    let closed_form = c1 * q.rhs_f(ctx)?;
    let s = (1.0 + t).powi(2);
    // -(y^2 + 2(x+t)y + (1+t)^2 x)
    let quadric = BiPoly::new(vec![(0, 2, -1.0), (1, 1, -2.0), (0, 1, -2.0 * t), (1, 0, -s)]);
    let form = TwoForm::new(vec![
        (BiPoly::new(vec![(1, 0, 1.0)]), a),
        (quadric, a),
        (BiPoly::new(vec![(0, 1, q1), (1, 0, -q2), (0, 0, -q3)]), 2.0 - 2.0 * a),
    ]);
    let disc = move |x: f64| ((1.0 - x) * (t * t - x)).max(0.0).sqrt();
    let x_outer = Slicing {
        outer: Axis::X,
        lo: 0.0,
        hi: 1.0,
        mu_lo: a,
        mu_hi: a - 0.5,
        lower: Boundary::new(move |x| -(x + t) - disc(x), Some(1)),
        upper: Boundary::new(move |x| -(x + t) + disc(x), Some(1)),
        lo_line: Some(0),
        hi_line: None,
    };
    let y_outer = Slicing {
        outer: Axis::Y,
        lo: 0.0,
        hi: -2.0 * t,
        mu_lo: 2.0 * a - 1.0,
        mu_hi: 2.0 * a - 1.0,
        lower: Boundary::constant(0.0, Some(0)),
        upper: Boundary::new(move |y| -(y * y + 2.0 * t * y) / (2.0 * y + s), Some(1)),
        lo_line: None,
        hi_line: None,
    };
    Ok(OracleProblem { region: RegionSpec { x_outer, y_outer }, form, closed_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;

    #[test]
    fn sample_point_value() {
        let p = [-2.0, -6.0, -2.0, 0.5];
        T51.validate(&p).unwrap();
        let ctx = EvalCtx::new(Engine::Auto, 1e-13);
        let l = T51.lhs(&p, "printed", &ctx).unwrap().re;
        let r = T51.rhs(&p, "printed", &ctx).unwrap().re;
        assert!((l - 0.7268671048114644).abs() < 1e-11, "{l}");
        assert!((r - 0.7268671048114644).abs() < 1e-11, "{r}");
    }

    #[test]
    fn domain_rejects() {
        assert!(T51.validate(&[-0.5, -6.0, -2.0, 0.5]).is_err());
        assert!(T51.validate(&[-2.0, -2.0, -6.0, 0.5]).is_err());
        assert!(T51.validate(&[-2.0, -6.0, -2.0, 1.0]).is_err());
    }
}
