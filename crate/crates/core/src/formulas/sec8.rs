//! An `F_D^(3)` identity whose arguments come from the roots of a quartic.

use num_complex::Complex64;

use super::{check_arity, inside, off_cut, require, EvalCtx, Identity, OracleProblem};
use crate::error::{Error, Result};
use crate::gamma::beta;
use crate::period::{Axis, BiPoly, Boundary, RegionSpec, Slicing, TwoForm};
use crate::polyroots::roots_of;

pub struct T81;

const B: [f64; 3] = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0];

/// Quartic in `y` whose smallest positive root is the corner `y0`.
fn quartic(v: &[f64], variant: &str) -> Result<Vec<f64>> {
    let (a, b, c, t) = (v[0], v[1], v[2], v[3]);
    match variant {
        // a t^2 y^4 - t^2 y^3 + b t y + c
        "printed" => Ok(vec![a * t * t, -t * t, 0.0, b * t, c]),
        // a t^2 y^4 - t^2 y^3 + b t y^2 + c
        "corrected_quartic" => Ok(vec![a * t * t, -t * t, b * t, 0.0, c]),
        other => Err(Error::DomainViolation(format!("unknown variant {other}"))),
    }
}

/// `y0` and the remaining roots labelled `y1, y2, y3`: `y1` is the other
/// positive real root when there is one, `y2, y3` follow in (re, im) order.
struct Roots {
    y0: f64,
    y: [Complex64; 3],
}

fn labelled(v: &[f64], variant: &str) -> Result<Roots> {
    let rs = roots_of(&quartic(v, variant)?)?;
    let y0 = rs.smallest_positive_real()?;
    let mut rest = rs.roots.clone();
    let k = (0..rest.len())
        .min_by(|&i, &j| (rest[i] - y0).norm().total_cmp(&(rest[j] - y0).norm()))
        .unwrap();
    rest.remove(k);
    let pick = rest
        .iter()
        .position(|r| r.im == 0.0 && r.re > 0.0)
        .or_else(|| rest.iter().position(|r| r.im == 0.0))
        .unwrap_or(0);
    let y1 = rest.remove(pick);
    Ok(Roots { y0, y: [y1, rest[0], rest[1]] })
}

fn lhs_args(v: &[f64], r: &Roots) -> [Complex64; 3] {
    let (a, b, c) = (v[0], v[1], v[2]);
    let y0 = Complex64::from(r.y0);
    let [y1, y2, y3] = r.y;
    let d = b * b - 4.0 * a * c;
    [
        y0 * (y2 - y1) / (y2 * (y0 - y1)),
        y0 * (y3 - y1) / (y3 * (y0 - y1)),
        y0 * (y1 * d + 4.0 * c) / (4.0 * c * (y0 - y1)),
    ]
}

fn rhs_args(r: &Roots) -> [Complex64; 3] {
    let y0 = Complex64::from(r.y0);
    let [y1, y2, y3] = r.y;
    let (s0, s1) = (y0 * y0, y1 * y1);
    [
        s0 * (y2 * y2 - s1) / (y2 * y2 * (s0 - s1)),
        s0 * (y3 * y3 - s1) / (y3 * y3 * (s0 - s1)),
        s0 / (s0 - s1),
    ]
}

fn lhs_f(v: &[f64], variant: &str, ctx: &EvalCtx) -> Result<Complex64> {
    let r = labelled(v, variant)?;
    ctx.fd(0.5, &B, 7.0 / 6.0, &lhs_args(v, &r))
}

fn real_parts_off_cut(args: &[Complex64]) -> Result<()> {
    let reals: Vec<f64> = args.iter().filter(|z| z.im == 0.0).map(|z| z.re).collect();
    off_cut(&reals)
}

impl Identity for T81 {
    fn id(&self) -> &'static str {
        "T8.1"
    }
    fn reference(&self) -> &'static str {
        "§8 Theorem"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["a", "b", "c", "t"]
    }
    fn domain(&self) -> &'static str {
        "a, b, c > 0, b^2 > 4ac, t > (a+b+c)^2"
    }
    fn variants(&self) -> &'static [&'static str] {
        &["printed", "corrected_quartic"]
    }

    fn validate(&self, v: &[f64]) -> Result<()> {
        check_arity(v, 4)?;
        let (a, b, c, t) = (v[0], v[1], v[2], v[3]);
        require(a > 0.0 && b > 0.0 && c > 0.0, "a, b, c > 0")?;
        require(b * b > 4.0 * a * c, "b^2 > 4ac")?;
        require(t > (a + b + c).powi(2), "t > (a+b+c)^2")
    }

    fn admissible(&self, v: &[f64]) -> Result<()> {
        self.validate(v)?;
        let r = labelled(v, "corrected_quartic")?;
        let [y1, y2, y3] = r.y;
        require(y1.im == 0.0 && y1.re > 0.0, "second positive real root")?;
        require(y2.im != 0.0 && y3.im != 0.0, "complex pair")?;
        require(1.0 - v[0] * r.y0 > 0.0, "1 - a y0 > 0")?;
        real_parts_off_cut(&lhs_args(v, &r))?;
        real_parts_off_cut(&rhs_args(&r))
    }

    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let a = inside(0.2, 1.5, u[0]);
        let c = inside(0.2, 1.5, u[2]);
        let bmin = 2.0 * (a * c).sqrt();
        let b = inside(bmin, bmin + 3.0, u[1]);
        let s = (a + b + c).powi(2);
        Ok(vec![a, b, c, inside(s, 4.0 * s, u[3])])
    }

    fn has_complex_arguments(&self, v: &[f64]) -> bool {
        labelled(v, "corrected_quartic")
            .map(|r| lhs_args(v, &r).iter().chain(rhs_args(&r).iter()).any(|z| z.im != 0.0))
            .unwrap_or(false)
    }

    fn lhs(&self, v: &[f64], variant: &str, ctx: &EvalCtx) -> Result<Complex64> {
        Ok(v[2].powf(1.0 / 6.0) * lhs_f(v, variant, ctx)?)
    }

    fn rhs(&self, v: &[f64], variant: &str, ctx: &EvalCtx) -> Result<Complex64> {
        let r = labelled(v, variant)?;
        let y0 = Complex64::from(r.y0);
        let pre = (y0 * r.y[0] / (y0 + r.y[0])).sqrt() * v[3].powf(1.0 / 3.0);
        Ok(pre * ctx.fd(0.5, &B, 7.0 / 6.0, &rhs_args(&r))?)
    }

    /// `c^(-1/6) (y0 y1 / (y0 + y1))^(1/2) t^(1/3)` for the corrected quartic.
    fn constant(&self, v: &[f64]) -> Result<f64> {
        let r = labelled(v, "corrected_quartic")?;
        let y1 = r.y[0].re;
        Ok(v[2].powf(-1.0 / 6.0) * (r.y0 * y1 / (r.y0 + y1)).sqrt() * v[3].powf(1.0 / 3.0))
    }

    fn has_oracle(&self) -> bool {
        true
    }

    fn oracle(&self, v: &[f64], ctx: &EvalCtx) -> Option<Result<OracleProblem>> {
        Some(oracle(v, ctx))
    }
}

fn oracle(v: &[f64], ctx: &EvalCtx) -> Result<OracleProblem> {
    let (a, b, c, t) = (v[0], v[1], v[2], v[3]);
    let r = labelled(v, "corrected_quartic")?;
    let y0 = r.y0;
    let [y1, y2, y3] = r.y;
    let d = b * b - 4.0 * a * c;
    let e = -4.0 * c / d;
    let lemma = (y0 - y1.re).abs().powf(-0.5)
        * y0.powf(1.0 / 6.0)
        * y1.norm().powf(1.0 / 6.0)
        * (y2.norm() * y3.norm()).powf(-1.0 / 3.0)
        * e.abs().powf(-1.0 / 6.0)
        * beta(0.5, 2.0 / 3.0)?;
    let c1 = beta(1.0 / 3.0, 1.0 / 3.0)? * (a * t * t).powf(-1.0 / 3.0) * d.powf(-1.0 / 6.0) * lemma;
    let closed_form = c1 * lhs_f(v, "corrected_quartic", ctx)?.re;
    let form = TwoForm::new(vec![
        (BiPoly::new(vec![(2, 1, a), (1, 1, b), (0, 1, c), (2, 0, -1.0)]), 2.0 / 3.0),
        (BiPoly::new(vec![(1, 0, 1.0), (0, 2, -t)]), 2.0 / 3.0),
    ]);
    let r_plus = move |y: f64| (b * y + (b * b * y * y + 4.0 * c * y * (1.0 - a * y)).sqrt()) / (2.0 * (1.0 - a * y));
    let y_outer = Slicing {
        outer: Axis::Y,
        lo: 0.0,
        hi: y0,
        mu_lo: 0.5,
        mu_hi: 1.0 / 3.0,
        lower: Boundary::new(move |y| t * y * y, Some(1)),
        upper: Boundary::new(r_plus, Some(0)),
        lo_line: None,
        hi_line: None,
    };
    let x_outer = Slicing {
        outer: Axis::X,
        lo: 0.0,
        hi: t * y0 * y0,
        mu_lo: 0.5,
        mu_hi: 1.0 / 3.0,
        lower: Boundary::new(move |x| x * x / (a * x * x + b * x + c), Some(0)),
        upper: Boundary::new(move |x| (x / t).sqrt(), Some(1)),
        lo_line: None,
        hi_line: None,
    };
    Ok(OracleProblem { region: RegionSpec { x_outer, y_outer }, form, closed_form })
}
