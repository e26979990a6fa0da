//! Nested quadrature of `prod_i |f_i(x, y)|^(-e_i) dx dy` over planar regions
//! bounded by the curves `f_i = 0`.
//!
//! A region is described by slices: an outer interval and, for each outer
//! value, an inner interval between two boundary curves. Every boundary
//! records which factor vanishes on it, so the inner endpoint exponent is that
//! factor's exponent. On each slice the factors are restricted to univariate
//! polynomials and factored once; the root lying on a boundary is replaced by
//! the exactly computed distance to that boundary.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyroots::roots_of;
use crate::singular::{integrate_singular, Abscissa};

pub const DEFAULT_ORACLE_TOL: f64 = 1e-6;
/// Outer nodes are kept this far (relative to the interval) from its ends.
const OUTER_END_GAP: f64 = 1e-10;

/// Polynomial in `x` and `y` as a list of `(i, j, c)` terms `c x^i y^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly {
    terms: Vec<(u32, u32, f64)>,
}

impl BiPoly {
    pub fn new(terms: Vec<(u32, u32, f64)>) -> Self {
        Self { terms: terms.into_iter().filter(|t| t.2 != 0.0).collect() }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|&(i, j, c)| c * x.powi(i as i32) * y.powi(j as i32)).sum()
    }

    /// Coefficients of `v -> f(u, v)` (or `f(v, u)`), highest degree first.
    fn restrict(&self, outer: Axis, u: f64) -> Vec<f64> {
        let deg = self
            .terms
            .iter()
            .map(|&(i, j, _)| if outer == Axis::X { j } else { i })
            .max()
            .unwrap_or(0) as usize;
        let mut c = vec![0.0; deg + 1];
        for &(i, j, k) in &self.terms {
            let (pu, pv) = if outer == Axis::X { (i, j) } else { (j, i) };
            c[deg - pv as usize] += k * u.powi(pu as i32);
        }
        c
    }

    /// Quotient `q` with `f = (u - c) q`, where `u` is the `outer` variable;
    /// the remainder is dropped.
    fn divide_line(&self, outer: Axis, c: f64) -> BiPoly {
        let split = |&(i, j, k): &(u32, u32, f64)| if outer == Axis::X { (i, j, k) } else { (j, i, k) };
        let n = self.terms.iter().map(|t| split(t).0).max().unwrap_or(0);
        let m = self.terms.iter().map(|t| split(t).1).max().unwrap_or(0);
        let mut terms = Vec::new();
        for j in 0..=m {
            let mut a = vec![0.0; n as usize + 1];
            for t in &self.terms {
                let (pu, pv, k) = split(t);
                if pv == j {
                    a[pu as usize] += k;
                }
            }
            let mut carry = 0.0;
            for i in (1..=n as usize).rev() {
                carry = a[i] + c * carry;
                let pu = i as u32 - 1;
                terms.push(if outer == Axis::X { (pu, j, carry) } else { (j, pu, carry) });
            }
        }
        BiPoly::new(terms)
    }
}

/// `prod_i |f_i|^(-e_i) dx dy`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    pub factors: Vec<(BiPoly, f64)>,
}

impl TwoForm {
    pub fn new(factors: Vec<(BiPoly, f64)>) -> Self {
        Self { factors }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.factors.iter().map(|(f, e)| f.eval(x, y).abs().powf(-e)).product()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

pub type Curve = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An inner boundary `v = curve(u)` lying on factor `divisor` (or on none).
#[derive(Clone)]
pub struct Boundary {
    pub curve: Curve,
    pub divisor: Option<usize>,
}

impl Boundary {
    pub fn new(curve: impl Fn(f64) -> f64 + Send + Sync + 'static, divisor: Option<usize>) -> Self {
        Self { curve: Arc::new(curve), divisor }
    }

    pub fn constant(v: f64, divisor: Option<usize>) -> Self {
        Self::new(move |_| v, divisor)
    }
}

impl fmt::Debug for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Boundary").field("divisor", &self.divisor).finish_non_exhaustive()
    }
}

/// One slicing order: `lo < u < hi`, `lower(u) < v < upper(u)`.
///
/// `mu_lo` and `mu_hi` are the exponents of the inner integral at the ends of
/// the outer interval, i.e. it behaves like `(u - lo)^(-mu_lo)` there.
/// `lo_line` / `hi_line` name a factor vanishing on the whole line `u = lo`
/// (`u = hi`); it is then evaluated as the exact distance to that line times
/// a quotient polynomial, which keeps full relative accuracy near the end.
#[derive(Clone, Debug)]
pub struct Slicing {
    pub outer: Axis,
    pub lo: f64,
    pub hi: f64,
    pub mu_lo: f64,
    pub mu_hi: f64,
    pub lower: Boundary,
    pub upper: Boundary,
    pub lo_line: Option<usize>,
    pub hi_line: Option<usize>,
}

impl Slicing {
    fn point(&self, u: f64, v: f64) -> (f64, f64) {
        match self.outer {
            Axis::X => (u, v),
            Axis::Y => (v, u),
        }
    }

    /// Same region restricted to `lo < u < new_hi`; the exponent at the new
    /// end is zero since it is not a corner.
    pub fn truncated(&self, new_hi: f64) -> Self {
        Self { hi: new_hi, mu_hi: 0.0, hi_line: None, ..self.clone() }
    }
}

/// A region with both slicing orders.
#[derive(Clone, Debug)]
pub struct RegionSpec {
    pub x_outer: Slicing,
    pub y_outer: Slicing,
}

impl RegionSpec {
    pub fn slicing(&self, outer: Axis) -> &Slicing {
        match outer {
            Axis::X => &self.x_outer,
            Axis::Y => &self.y_outer,
        }
    }

    /// Checks that every factor keeps one strict sign on a grid of interior
    /// points, so the region does not cross any divisor.
    pub fn check_signs(&self, form: &TwoForm, grid: usize) -> Result<()> {
        let s = &self.x_outer;
        let mut signs: Vec<f64> = vec![0.0; form.factors.len()];
        for i in 1..grid {
            let u = s.lo + (s.hi - s.lo) * i as f64 / grid as f64;
            let (a, b) = ((s.lower.curve)(u), (s.upper.curve)(u));
            if !(a < b) {
                return Err(Error::DomainViolation(format!("empty slice at {u}")));
            }
            for j in 1..grid {
                let v = a + (b - a) * j as f64 / grid as f64;
                let (x, y) = s.point(u, v);
                for (k, (f, _)) in form.factors.iter().enumerate() {
                    let val = f.eval(x, y);
                    let sg = val.signum();
                    if val == 0.0 || (signs[k] != 0.0 && sg != signs[k]) {
                        return Err(Error::DomainViolation(format!("factor {k} changes sign inside the region")));
                    }
                    signs[k] = sg;
                }
            }
        }
        Ok(())
    }
}

struct SliceFactor {
    lead: f64,
    roots: Vec<Complex64>,
    /// index into `roots` of the root lying on the lower/upper boundary
    at_lower: Option<usize>,
    at_upper: Option<usize>,
    exponent: f64,
}

fn nearest(roots: &[Complex64], v: f64, skip: Option<usize>) -> Option<usize> {
    roots
        .iter()
        .enumerate()
        .filter(|(k, _)| Some(*k) != skip)
        .min_by(|a, b| (a.1 - v).norm().total_cmp(&(b.1 - v).norm()))
        .map(|(k, _)| k)
}

fn factor_slice(coeffs: Vec<f64>, exponent: f64) -> Result<SliceFactor> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let start = coeffs.iter().position(|c| c.abs() > 1e-14 * scale).unwrap_or(coeffs.len() - 1);
    let c = &coeffs[start..];
    if c.len() == 1 {
        return Ok(SliceFactor { lead: c[0], roots: Vec::new(), at_lower: None, at_upper: None, exponent });
    }
    let rs = roots_of(c)?;
    Ok(SliceFactor { lead: c[0], roots: rs.roots, at_lower: None, at_upper: None, exponent })
}

/// Factors of the form with those vanishing on an outer end line replaced by
/// their quotients.
struct Prepared {
    polys: Vec<BiPoly>,
}

impl Prepared {
    fn new(s: &Slicing, form: &TwoForm) -> Self {
        let mut polys: Vec<BiPoly> = form.factors.iter().map(|(f, _)| f.clone()).collect();
        if let Some(k) = s.lo_line {
            polys[k] = polys[k].divide_line(s.outer, s.lo);
        }
        if let Some(k) = s.hi_line {
            polys[k] = polys[k].divide_line(s.outer, s.hi);
        }
        Self { polys }
    }
}

/// Inner integral at outer abscissa `at`.
fn inner(s: &Slicing, form: &TwoForm, prep: &Prepared, at: Abscissa, tol: f64) -> Result<f64> {
    let u = at.x;
    let a = (s.lower.curve)(u);
    let b = (s.upper.curve)(u);
    if !(a < b) {
        return Err(Error::DomainViolation(format!("empty slice at {u}: [{a}, {b}]")));
    }
    let mut facs = Vec::with_capacity(form.factors.len());
    for (k, (p, (_, e))) in prep.polys.iter().zip(&form.factors).enumerate() {
        let mut f = factor_slice(p.restrict(s.outer, u), *e)?;
        if s.lo_line == Some(k) {
            f.lead *= at.from_lo;
        }
        if s.hi_line == Some(k) {
            f.lead *= at.to_hi;
        }
        facs.push(f);
    }
    let mut mu_lo = 0.0;
    let mut mu_hi = 0.0;
    if let Some(d) = s.lower.divisor {
        let f = &mut facs[d];
        f.at_lower = nearest(&f.roots, a, None);
        mu_lo = f.exponent;
    }
    if let Some(d) = s.upper.divisor {
        let f = &mut facs[d];
        f.at_upper = nearest(&f.roots, b, f.at_lower);
        mu_hi = f.exponent;
    }
    for mu in [mu_lo, mu_hi] {
        if mu >= 1.0 {
            return Err(Error::NonIntegrableBoundary(mu));
        }
    }
    let g = |at: Abscissa| -> f64 {
        let mut acc = 1.0;
        for f in &facs {
            let mut m = f.lead.abs();
            for (k, r) in f.roots.iter().enumerate() {
                if Some(k) != f.at_lower && Some(k) != f.at_upper {
                    m *= (at.x - r).norm();
                }
            }
            // the boundary roots are carried by the quadrature weight
            acc *= m.powf(-f.exponent);
        }
        acc
    };
    integrate_singular(a, b, mu_lo, mu_hi, g, tol)
}

/// Nested integral for one slicing order.
pub fn integrate_slicing(s: &Slicing, form: &TwoForm, tol: f64) -> Result<f64> {
    for mu in [s.mu_lo, s.mu_hi] {
        if mu >= 1.0 {
            return Err(Error::NonIntegrableBoundary(mu));
        }
    }
    let inner_tol = (tol * 1e-2).max(1e-13);
    let prep = Prepared::new(s, form);
    let failure = std::cell::RefCell::new(None);
    let len = s.hi - s.lo;
    let gap = OUTER_END_GAP * len;
    let g = |at: Abscissa| -> f64 {
        // nodes closer to an end than rounding allows would give empty slices
        let at = if at.from_lo < gap {
            Abscissa { x: s.lo + gap, from_lo: gap, to_hi: len - gap }
        } else if at.to_hi < gap {
            Abscissa { x: s.hi - gap, from_lo: len - gap, to_hi: gap }
        } else {
            at
        };
        match inner(s, form, &prep, at, inner_tol) {
            // strip the singular behaviour the outer weight supplies
            Ok(v) => v * at.from_lo.powf(s.mu_lo) * at.to_hi.powf(s.mu_hi),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let value = integrate_singular(s.lo, s.hi, s.mu_lo, s.mu_hi, g, tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    value
}

/// `int_sigma omega` using the slicing with the given outer variable.
pub fn integrate_region(region: &RegionSpec, form: &TwoForm, outer: Axis, tol: f64) -> Result<f64> {
    integrate_slicing(region.slicing(outer), form, tol)
}

/// Both slicing orders, `(x outer, y outer)`.
pub fn fubini_pair(region: &RegionSpec, form: &TwoForm, tol: f64) -> Result<(f64, f64)> {
    Ok((
        integrate_region(region, form, Axis::X, tol)?,
        integrate_region(region, form, Axis::Y, tol)?,
    ))
}
