//! Catalogue of transformation formulas.
//!
//! Each record evaluates both sides of one identity, validates its parameter
//! domain, maps the unit cube onto that domain for sampling, and (where a
//! planar region is attached) builds the double integral whose two iterated
//! evaluations produce the identity.

use std::sync::Mutex;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::{eval_fd, Engine};
use crate::error::{Error, Result};
use crate::period::{integrate_region, Axis, RegionSpec, TwoForm};
use crate::scalar::Scalar;
use crate::series::HgParams;

mod sec5;
mod sec6;
mod sec7;
mod sec8;
mod sec9;

pub use sec6::{verify_remark_dm, DmCheck};

/// Relative agreement required between the double integral and its closed form.
pub const ORACLE_TOL: f64 = 1e-4;
/// Relative agreement required between the two slicing orders.
pub const FUBINI_TOL: f64 = 1e-5;
/// Quadrature target for the double integrals.
pub const ORACLE_QUAD_TOL: f64 = 1e-8;
/// Engine tolerance used for closed-form sides.
pub const SIDE_TOL: f64 = 1e-12;

/// Engine choice and tolerance for one evaluation, recording which engine
/// actually ran.
pub struct EvalCtx {
    pub engine: Engine,
    pub tol: f64,
    used: Mutex<Vec<Engine>>,
}

impl EvalCtx {
    pub fn new(engine: Engine, tol: f64) -> Self {
        Self { engine, tol, used: Mutex::new(Vec::new()) }
    }

    pub fn fd<S: Scalar>(&self, a: f64, b: &[f64], c: f64, x: &[S]) -> Result<S> {
        let (v, e) = eval_fd(&HgParams::new(a, b.to_vec(), c), x, self.engine, self.tol)?;
        self.used.lock().unwrap().push(e);
        Ok(v)
    }

    pub fn f21(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
        self.fd(a, &[b], c, &[z])
    }

    /// Engines used since the last call, deduplicated in order.
    pub fn take_used(&self) -> Vec<Engine> {
        let mut v = std::mem::take(&mut *self.used.lock().unwrap());
        v.dedup();
        let mut out: Vec<Engine> = Vec::new();
        for e in v {
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }
}

/// Planar region, two-form and the closed form of its integral.
pub struct OracleProblem {
    pub region: RegionSpec,
    pub form: TwoForm,
    pub closed_form: f64,
}

/// One transformation identity.
pub trait Identity: Send + Sync {
    fn id(&self) -> &'static str;
    fn reference(&self) -> &'static str;
    fn param_names(&self) -> &'static [&'static str];
    /// Human-readable parameter domain.
    fn domain(&self) -> &'static str;
    fn validate(&self, p: &[f64]) -> Result<()>;
    /// Maps a point of the unit cube (one coordinate per parameter) into the
    /// sampling box; the caller re-checks `admissible`.
    fn sample_point(&self, u: &[f64]) -> Result<Vec<f64>>;
    /// Validation plus whatever the evaluators need (e.g. arguments off the cut).
    fn admissible(&self, p: &[f64]) -> Result<()> {
        self.validate(p)
    }
    /// Alternative readings of the formula, tried in order.
    fn variants(&self) -> &'static [&'static str] {
        &["printed"]
    }
    fn lhs(&self, p: &[f64], variant: &str, ctx: &EvalCtx) -> Result<Complex64>;
    fn rhs(&self, p: &[f64], variant: &str, ctx: &EvalCtx) -> Result<Complex64>;
    /// The elementary constant of the identity.
    fn constant(&self, p: &[f64]) -> Result<f64>;
    /// Arguments handed to `F_D`, for flagging complex ones.
    fn has_complex_arguments(&self, _p: &[f64]) -> bool {
        false
    }
    fn oracle(&self, _p: &[f64], _ctx: &EvalCtx) -> Option<Result<OracleProblem>> {
        None
    }
    fn has_oracle(&self) -> bool {
        false
    }
}

pub(crate) fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `base^e` for a base the domain guarantees to be positive.
pub(crate) fn pos_pow(name: &str, base: f64, e: f64) -> Result<f64> {
    if base > 0.0 && base.is_finite() {
        Ok(base.powf(e))
    } else {
        Err(Error::DomainViolation(format!("{name} = {base} must be positive")))
    }
}

pub(crate) fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::DomainViolation(what.to_string()))
    }
}

pub(crate) fn check_arity(p: &[f64], n: usize) -> Result<()> {
    require(p.len() == n, &format!("expected {n} parameters, got {}", p.len()))?;
    require(p.iter().all(|v| v.is_finite()), "parameters must be finite")
}

/// Real arguments must stay off `[1, inf)`.
pub(crate) fn off_cut(args: &[f64]) -> Result<()> {
    for &x in args {
        if x >= 1.0 {
            return Err(Error::ArgumentOnCut(x));
        }
    }
    Ok(())
}

/// `lo + (hi - lo) u` restricted to the inner 90% of the interval.
pub(crate) fn inside(lo: f64, hi: f64, u: f64) -> f64 {
    lo + (hi - lo) * (0.05 + 0.9 * u)
}

pub fn catalogue() -> Vec<Box<dyn Identity>> {
    vec![
        Box::new(sec5::T51),
        Box::new(sec6::T61),
        Box::new(sec6::T62),
        Box::new(sec6::Degen0),
        Box::new(sec6::Degen1),
        Box::new(sec6::Goursat1),
        Box::new(sec6::Goursat2),
        Box::new(sec6::RemarkDm),
        Box::new(sec7::T71),
        Box::new(sec8::T81),
        Box::new(sec9::T91),
        Box::new(sec9::C92),
    ]
}

pub fn list_formulas() -> Vec<&'static str> {
    catalogue().iter().map(|f| f.id()).collect()
}

pub fn find(id: &str) -> Result<Box<dyn Identity>> {
    catalogue()
        .into_iter()
        .find(|f| f.id() == id)
        .ok_or_else(|| Error::UnknownFormula(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogueEntry {
    pub id: String,
    pub reference: String,
    pub parameters: Vec<String>,
    pub domain: String,
    pub variants: Vec<String>,
    pub oracle: bool,
}

pub fn catalogue_entries() -> Vec<CatalogueEntry> {
    catalogue()
        .iter()
        .map(|f| CatalogueEntry {
            id: f.id().into(),
            reference: f.reference().into(),
            parameters: f.param_names().iter().map(|s| s.to_string()).collect(),
            domain: f.domain().into(),
            variants: f.variants().iter().map(|s| s.to_string()).collect(),
            oracle: f.has_oracle(),
        })
        .collect()
}

/// Both sides of the identity under one variant.
pub fn evaluate_sides(id: &str, p: &[f64], variant: Option<&str>, engine: Engine, tol: f64) -> Result<(Complex64, Complex64)> {
    let f = find(id)?;
    f.validate(p)?;
    let variant = variant.unwrap_or(f.variants()[0]);
    let ctx = EvalCtx::new(engine, tol);
    Ok((f.lhs(p, variant, &ctx)?, f.rhs(p, variant, &ctx)?))
}

pub fn relative_residual(lhs: Complex64, rhs: Complex64) -> f64 {
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}

/// Outcome of the double-integral check for one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    /// x-outer nested integral
    pub value: f64,
    /// y-outer nested integral
    pub fubini: f64,
    pub closed_form: f64,
    pub residual: f64,
    pub fubini_residual: f64,
}

impl OracleCheck {
    pub fn passes(&self) -> bool {
        self.residual <= ORACLE_TOL && self.fubini_residual <= FUBINI_TOL
    }
}

pub fn run_oracle(f: &dyn Identity, p: &[f64], ctx: &EvalCtx) -> Option<Result<OracleCheck>> {
    let problem = f.oracle(p, ctx)?;
    Some(problem.and_then(|pr| {
        pr.region.check_signs(&pr.form, 12)?;
        let value = integrate_region(&pr.region, &pr.form, Axis::X, ORACLE_QUAD_TOL)?;
        let fubini = integrate_region(&pr.region, &pr.form, Axis::Y, ORACLE_QUAD_TOL)?;
        Ok(OracleCheck {
            value,
            fubini,
            closed_form: pr.closed_form,
            residual: relative_residual(real(value), real(pr.closed_form)),
            fubini_residual: relative_residual(real(value), real(fubini)),
        })
    }))
}

/// One verified parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub formula_id: String,
    pub sample_index: usize,
    pub params: Vec<(String, f64)>,
    pub variant: Option<String>,
    /// variants tried before the validated one, with their residual or error
    pub rejected_variants: Vec<(String, String)>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub lhs_im: Option<f64>,
    pub rhs_im: Option<f64>,
    pub complex_arguments: bool,
    pub engines_lhs: Vec<Engine>,
    pub engines_rhs: Vec<Engine>,
    pub residual: Option<f64>,
    pub oracle: Option<OracleCheck>,
    pub pass: bool,
    pub error: Option<String>,
    pub ms: f64,
}

impl Row {
    pub fn param_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> =
            self.params.iter().map(|(k, v)| (k.clone(), serde_json::json!(v))).collect();
        serde_json::Value::Object(map).to_string()
    }
}

struct SideValues {
    lhs: Complex64,
    rhs: Complex64,
    engines_lhs: Vec<Engine>,
    engines_rhs: Vec<Engine>,
}

fn sides(f: &dyn Identity, p: &[f64], variant: &str, ctx: &EvalCtx) -> Result<SideValues> {
    let lhs = f.lhs(p, variant, ctx)?;
    let engines_lhs = ctx.take_used();
    let rhs = f.rhs(p, variant, ctx)?;
    let engines_rhs = ctx.take_used();
    Ok(SideValues { lhs, rhs, engines_lhs, engines_rhs })
}

/// Evaluates the identity at `p`; variants are tried in order until one
/// reaches `tol`. Errors are recorded in the row, not returned.
pub fn verify_identity(f: &dyn Identity, p: &[f64], tol: f64, engine: Engine, oracle: bool, sample_index: usize) -> Row {
    let start = Instant::now();
    let mut row = Row {
        formula_id: f.id().into(),
        sample_index,
        params: f.param_names().iter().map(|s| s.to_string()).zip(p.iter().copied()).collect(),
        variant: None,
        rejected_variants: Vec::new(),
        lhs: None,
        rhs: None,
        lhs_im: None,
        rhs_im: None,
        complex_arguments: false,
        engines_lhs: Vec::new(),
        engines_rhs: Vec::new(),
        residual: None,
        oracle: None,
        pass: false,
        error: None,
        ms: 0.0,
    };
    let ctx = EvalCtx::new(engine, SIDE_TOL);
    if let Err(e) = f.validate(p) {
        row.error = Some(e.to_string());
        row.ms = start.elapsed().as_secs_f64() * 1e3;
        return row;
    }
    row.complex_arguments = f.has_complex_arguments(p);
    let variants = f.variants();
    for (k, v) in variants.iter().enumerate() {
        match sides(f, p, v, &ctx) {
            Ok(s) => {
                let res = relative_residual(s.lhs, s.rhs);
                let last = k + 1 == variants.len();
                if res <= tol || last {
                    row.variant = Some(v.to_string());
                    row.lhs = Some(s.lhs.re);
                    row.rhs = Some(s.rhs.re);
                    row.lhs_im = Some(s.lhs.im);
                    row.rhs_im = Some(s.rhs.im);
                    row.engines_lhs = s.engines_lhs;
                    row.engines_rhs = s.engines_rhs;
                    row.residual = Some(res);
                    row.pass = res <= tol;
                    break;
                }
                row.rejected_variants.push((v.to_string(), format!("residual {res:.3e}")));
            }
            Err(e) => {
                row.rejected_variants.push((v.to_string(), e.to_string()));
                if k + 1 == variants.len() {
                    row.error = Some(e.to_string());
                }
            }
        }
    }
    if oracle && row.pass {
        if let Some(check) = run_oracle(f, p, &ctx) {
            match check {
                Ok(c) => {
                    row.pass = c.passes();
                    row.oracle = Some(c);
                }
                Err(e) => {
                    row.pass = false;
                    row.error = Some(format!("oracle: {e}"));
                }
            }
        }
    }
    row.ms = start.elapsed().as_secs_f64() * 1e3;
    row
}

fn halton(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
/// Halton points tried per requested sample before giving up.
const ATTEMPTS_PER_SAMPLE: usize = 200;

/// Deterministic low-discrepancy samples inside the record's domain.
///
/// A Halton sequence shifted by a seeded random rotation is mapped through
/// the record's sampling box; points failing `admissible` are skipped.
pub fn sample_domain(f: &dyn Identity, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if count == 0 {
        return Err(Error::DomainViolation("count must be at least 1".into()));
    }
    let dim = f.param_names().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    let mut out = Vec::with_capacity(count);
    for i in 1..=(count * ATTEMPTS_PER_SAMPLE) as u64 {
        let u: Vec<f64> = (0..dim).map(|d| (halton(i, PRIMES[d]) + shift[d]).fract()).collect();
        if let Ok(p) = f.sample_point(&u) {
            if f.admissible(&p).is_ok() {
                out.push(p);
                if out.len() == count {
                    return Ok(out);
                }
            }
        }
    }
    Err(Error::EmptyDomain(format!("{}: {} of {count} samples found", f.id(), out.len())))
}
