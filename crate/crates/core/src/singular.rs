//! Quadrature for integrands with algebraic endpoint singularities, and the
//! Euler integral of `F_D` built on it.
//!
//! `integrate_singular` computes
//! `int_lo^hi (x - lo)^(-mu_lo) (hi - x)^(-mu_hi) g(x) dx` for smooth `g`.
//! The interval is split at its midpoint; on the half touching an endpoint
//! with exponent `mu > 0` the substitution `x = lo + h u^p`, `p = 1/(1 - mu)`,
//! turns the weight into the constant `p h^(1 - mu)`. Both halves share one
//! adaptive Gauss-Legendre run driven by a max-error heap.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::gamma::ln_beta_signed;
use crate::scalar::Scalar;
use crate::series::HgParams;

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
const MAX_PANELS: usize = 1 << 18;
/// Exponents closer than this to 1 are rejected.
const MU_MARGIN: f64 = 1e-6;

const GL_NODES: [f64; 5] = [
    0.148_874_338_981_631_210_884_826_0,
    0.433_395_394_129_247_190_799_265_9,
    0.679_409_568_299_024_406_234_327_4,
    0.865_063_366_688_984_510_732_096_7,
    0.973_906_528_517_171_720_077_964_0,
];
const GL_WEIGHTS: [f64; 5] = [
    0.295_524_224_714_752_870_173_893_0,
    0.269_266_719_309_996_355_091_226_9,
    0.219_086_362_515_982_043_995_534_9,
    0.149_451_349_150_580_593_145_776_3,
    0.066_671_344_308_688_137_593_568_8,
];

/// A quadrature node with its distances to both ends of the interval, each
/// computed without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_lo: f64,
    pub to_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Lo,
    Hi,
}

/// Substitution data for one half of the interval.
struct HalfMap {
    side: Side,
    h: f64,
    p: f64,
    /// `p h^(1 - mu)`
    scale: f64,
    /// power of `u` left in the weight after substitution
    residual: f64,
    /// exponent of the far endpoint, applied numerically
    mu_far: f64,
}

impl HalfMap {
    fn new(side: Side, h: f64, mu: f64, mu_far: f64) -> Self {
        let (p, residual) = if mu > 0.0 { (1.0 / (1.0 - mu), 0.0) } else { (1.0, -mu) };
        Self { side, h, p, scale: p * h.powf(1.0 - mu), residual, mu_far }
    }

    /// Weighted integrand at local coordinate `u` in (0, 1]; `u = 0` is the
    /// singular endpoint.
    fn eval<S: Scalar, F: Fn(Abscissa) -> S>(&self, lo: f64, len: f64, u: f64, g: &F) -> S {
        let d = self.h * u.powf(self.p);
        let far = len - d;
        let at = match self.side {
            Side::Lo => Abscissa { x: lo + d, from_lo: d, to_hi: far },
            Side::Hi => Abscissa { x: lo + far, from_lo: far, to_hi: d },
        };
        let mut w = self.scale * far.powf(-self.mu_far);
        if self.residual != 0.0 {
            w *= u.powf(self.residual);
        }
        g(at) * w
    }
}

struct Panel<S> {
    half: usize,
    a: f64,
    b: f64,
    left: S,
    right: S,
    abs: f64,
    err: f64,
}

impl<S> PartialEq for Panel<S> {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl<S> Eq for Panel<S> {}
impl<S> PartialOrd for Panel<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<S> Ord for Panel<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gauss_legendre<S: Scalar>(a: f64, b: f64, f: &impl Fn(f64) -> S) -> (S, f64) {
    let mid = 0.5 * (a + b);
    let rad = 0.5 * (b - a);
    let mut acc = S::from_real(0.0);
    let mut abs = 0.0;
    for (xi, wi) in GL_NODES.iter().zip(GL_WEIGHTS) {
        let lo = f(mid - rad * xi);
        let hi = f(mid + rad * xi);
        acc += (lo + hi) * wi;
        abs += (lo.modulus() + hi.modulus()) * wi;
    }
    (acc * rad, abs * rad)
}

/// `int_lo^hi (x-lo)^(-mu_lo) (hi-x)^(-mu_hi) g(x) dx` to relative accuracy `tol`.
pub fn integrate_singular<S, F>(lo: f64, hi: f64, mu_lo: f64, mu_hi: f64, g: F, tol: f64) -> Result<S>
where
    S: Scalar,
    F: Fn(Abscissa) -> S,
{
    for mu in [mu_lo, mu_hi] {
        if !(mu < 1.0 - MU_MARGIN) {
            return Err(Error::NonIntegrable(mu));
        }
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::DomainViolation(format!("bad interval [{lo}, {hi}]")));
    }
    let len = hi - lo;
    let h = 0.5 * len;
    let halves = [HalfMap::new(Side::Lo, h, mu_lo, mu_hi), HalfMap::new(Side::Hi, h, mu_hi, mu_lo)];

    let make = |half: usize, a: f64, b: f64| -> Result<Panel<S>> {
        let map = &halves[half];
        let f = |u: f64| map.eval(lo, len, u, &g);
        let (whole, _) = gauss_legendre(a, b, &f);
        let m = 0.5 * (a + b);
        let (left, abs_l) = gauss_legendre(a, m, &f);
        let (right, abs_r) = gauss_legendre(m, b, &f);
        let sum = left + right;
        if !sum.is_finite_value() || !whole.is_finite_value() {
            return Err(Error::NonConvergent("singular quadrature"));
        }
        Ok(Panel { half, a, b, left, right, abs: abs_l + abs_r, err: (whole - sum).modulus() })
    };

    let mut heap = BinaryHeap::new();
    for half in 0..2 {
        for (a, b) in [(0.0, 0.125), (0.125, 0.25), (0.25, 0.5), (0.5, 1.0)] {
            heap.push(make(half, a, b)?);
        }
    }
    let mut count = heap.len();
    loop {
        let mut total = S::from_real(0.0);
        let mut l1 = 0.0;
        let mut err = 0.0;
        for p in heap.iter() {
            total += p.left + p.right;
            l1 += p.abs;
            err += p.err;
        }
        if err <= tol * total.modulus() || err <= 1e-15 * l1 {
            return Ok(total);
        }
        // refine a batch of the worst panels before re-summing
        let batch = (count / 8).max(1);
        for _ in 0..batch {
            let worst = heap.pop().expect("heap is never empty");
            let m = 0.5 * (worst.a + worst.b);
            if !(worst.a < m && m < worst.b) {
                return Err(Error::NonConvergent("singular quadrature"));
            }
            heap.push(make(worst.half, worst.a, m)?);
            heap.push(make(worst.half, m, worst.b)?);
            count += 1;
            if count > MAX_PANELS {
                return Err(Error::NonConvergent("singular quadrature"));
            }
        }
    }
}

/// A point of the extended real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinity => None,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::Finite(v)
    }
}

/// The form `prod_i |x - x_i|^(-mu_i) dx` integrated over `[x_1, x_2]`.
///
/// `poles[0] < poles[1]` are the interval ends; the remaining poles lie
/// outside it and at most one of them is infinite (its exponent only enters
/// the exponent sum).
#[derive(Debug, Clone, PartialEq)]
pub struct SingularIntegrand {
    pub poles: Vec<ExtReal>,
    pub exponents: Vec<f64>,
}

impl SingularIntegrand {
    pub fn new(poles: Vec<ExtReal>, exponents: Vec<f64>) -> Result<Self> {
        if poles.len() != exponents.len() || poles.len() < 2 {
            return Err(Error::DomainViolation("poles and exponents must match, n >= 2".into()));
        }
        let (Some(x1), Some(x2)) = (poles[0].finite(), poles[1].finite()) else {
            return Err(Error::DomainViolation("interval ends must be finite".into()));
        };
        if !(x1 < x2) {
            return Err(Error::DomainViolation(format!("need x1 < x2, got {x1}, {x2}")));
        }
        if poles.iter().filter(|p| p.finite().is_none()).count() > 1 {
            return Err(Error::DomainViolation("at most one pole at infinity".into()));
        }
        for p in &poles[2..] {
            if let Some(v) = p.finite() {
                if v > x1 && v < x2 {
                    return Err(Error::ExteriorPoleInsideInterval(v));
                }
                if v == x1 || v == x2 {
                    return Err(Error::CoincidentPoints);
                }
            }
        }
        for &mu in &exponents[..2] {
            if !(mu < 1.0) {
                return Err(Error::NonIntegrable(mu));
            }
        }
        Ok(Self { poles, exponents })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.poles[0].finite().unwrap(), self.poles[1].finite().unwrap())
    }

    pub fn exponent_sum(&self) -> f64 {
        self.exponents.iter().sum()
    }

    /// `int_{x1}^{x2} omega` by direct quadrature.
    pub fn integrate(&self, tol: f64) -> Result<f64> {
        let (x1, x2) = self.interval();
        let exterior: Vec<(f64, f64)> = self.poles[2..]
            .iter()
            .zip(&self.exponents[2..])
            .filter_map(|(p, &m)| p.finite().map(|v| (v, m)))
            .collect();
        let g = |at: Abscissa| {
            exterior
                .iter()
                .map(|&(v, m)| (at.x - v).abs().powf(-m))
                .product::<f64>()
        };
        integrate_singular(x1, x2, self.exponents[0], self.exponents[1], g, tol)
    }
}

fn check_cut<S: Scalar>(x: &[S]) -> Result<()> {
    for v in x {
        let z = v.to_complex();
        if z.im == 0.0 && z.re >= 1.0 {
            return Err(Error::ArgumentOnCut(z.re));
        }
    }
    Ok(())
}

/// `F_D` through its Euler integral; valid on `C \ [1, inf)` in each argument.
pub fn euler_fd<S: Scalar>(params: &HgParams, x: &[S], tol: f64) -> Result<S> {
    params.validate()?;
    if params.b.len() != x.len() {
        return Err(Error::DomainViolation("arity mismatch".into()));
    }
    if !params.in_euler_range() {
        return Err(Error::ParameterOutOfEulerRange { a: params.a, c: params.c });
    }
    check_cut(x)?;
    if x.iter().all(|v| v.modulus() == 0.0) || params.b.iter().all(|&b| b == 0.0) {
        return Ok(S::from_real(1.0));
    }
    let (a, c) = (params.a, params.c);
    let (ln_b, sign) = ln_beta_signed(a, c - a)?;
    let one = S::from_real(1.0);
    let g = |at: Abscissa| {
        let mut acc = one;
        for (&xi, &bi) in x.iter().zip(&params.b) {
            // 1 - x t = (1 - t) + (1 - x) t
            let base = S::from_real(at.to_hi) + (one - xi) * at.x;
            acc = acc * base.pow_real(-bi);
        }
        acc
    };
    let integral = integrate_singular(0.0, 1.0, 1.0 - a, 1.0 - (c - a), g, tol)?;
    Ok(integral * (sign * (-ln_b).exp()))
}

/// `2F1(a, b; c; z)` through the Euler integral, exchanging `a` and `b` when
/// only `b` lies in the Euler range.
pub fn euler_2f1<S: Scalar>(a: f64, b: f64, c: f64, z: S, tol: f64) -> Result<S> {
    let p = HgParams::gauss(a, b, c);
    if p.in_euler_range() {
        return euler_fd(&p, &[z], tol);
    }
    let swapped = HgParams::gauss(b, a, c);
    if swapped.in_euler_range() {
        return euler_fd(&swapped, &[z], tol);
    }
    Err(Error::ParameterOutOfEulerRange { a, c })
}
