//! Roots of real quadratics, cubics and quartics.
//!
//! Closed forms (stable quadratic formula, trigonometric/Cardano cubic,
//! Ferrari quartic) seed a few Newton/Aberth polishing sweeps on the original
//! polynomial. Roots are returned sorted by `(re, im)`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative imaginary part below which a root counts as real.
const REAL_TOL: f64 = 1e-9;
/// Relative separation below which two roots are reported as one cluster.
const CLUSTER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    /// Coefficients, highest degree first.
    pub coefficients: Vec<f64>,
    pub roots: Vec<Complex64>,
    pub real_roots_sorted: Vec<f64>,
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Evaluates a polynomial (highest degree first) at `z`.
pub fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

impl RootSet {
    fn build(coefficients: Vec<f64>, mut roots: Vec<Complex64>) -> Self {
        // conjugate pairs of a real polynomial: snap near-real roots onto the axis
        for r in roots.iter_mut() {
            if r.im.abs() <= REAL_TOL * r.norm().max(1.0) {
                r.im = 0.0;
            }
        }
        // make conjugate pairs exact so ordering ties are deterministic
        let mut paired = vec![false; roots.len()];
        for i in 0..roots.len() {
            if roots[i].im <= 0.0 || paired[i] {
                continue;
            }
            let partner = (0..roots.len())
                .filter(|&j| !paired[j] && roots[j].im < 0.0)
                .min_by(|&j, &k| {
                    (roots[j] - roots[i].conj())
                        .norm()
                        .total_cmp(&(roots[k] - roots[i].conj()).norm())
                });
            if let Some(j) = partner {
                let mid = (roots[i] + roots[j].conj()) * 0.5;
                roots[i] = mid;
                roots[j] = mid.conj();
                paired[i] = true;
                paired[j] = true;
            }
        }
        roots.sort_by(cmp_complex);
        let real_roots_sorted = roots.iter().filter(|r| r.im == 0.0).map(|r| r.re).collect();
        Self { coefficients, roots, real_roots_sorted }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coefficients, z)
    }

    fn scale(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(1.0, f64::max)
    }

    /// Groups roots closer than `1e-8 * scale` and reports their multiplicity.
    pub fn clusters(&self) -> Vec<(Complex64, usize)> {
        let tol = CLUSTER_TOL * self.scale();
        let mut out: Vec<(Complex64, usize)> = Vec::new();
        for r in &self.roots {
            match out.iter_mut().find(|(c, _)| (*c - *r).norm() < tol) {
                Some((c, m)) => {
                    *c = (*c * *m as f64 + *r) / (*m as f64 + 1.0);
                    *m += 1;
                }
                None => out.push((*r, 1)),
            }
        }
        out
    }

    /// Smallest strictly positive real root.
    pub fn smallest_positive_real(&self) -> Result<f64> {
        self.real_roots_sorted
            .iter()
            .copied()
            .find(|&r| r > 0.0)
            .ok_or(Error::NoPositiveRealRoot)
    }
}

fn quadratic_complex(c2: Complex64, c1: Complex64, c0: Complex64) -> [Complex64; 2] {
    let disc = (c1 * c1 - c2 * c0 * 4.0).sqrt();
    // choose the sign that avoids cancellation
    let q = if (c1.conj() * disc).re >= 0.0 {
        -(c1 + disc) * 0.5
    } else {
        -(c1 - disc) * 0.5
    };
    if q.norm() == 0.0 {
        return [Complex64::new(0.0, 0.0); 2];
    }
    [q / c2, c0 / q]
}

/// Both roots of `c2 x^2 + c1 x + c0`.
pub fn quadratic_roots(c2: f64, c1: f64, c0: f64) -> Result<RootSet> {
    if c2 == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    let roots = if disc >= 0.0 {
        let q = -0.5 * (c1 + c1.signum_or_one() * disc.sqrt());
        if q == 0.0 {
            vec![Complex64::new(0.0, 0.0); 2]
        } else {
            vec![Complex64::new(q / c2, 0.0), Complex64::new(c0 / q, 0.0)]
        }
    } else {
        let re = -c1 / (2.0 * c2);
        let im = (-disc).sqrt() / (2.0 * c2.abs());
        vec![Complex64::new(re, -im), Complex64::new(re, im)]
    };
    Ok(RootSet::build(vec![c2, c1, c0], roots))
}

trait SignumOrOne {
    fn signum_or_one(self) -> f64;
}

impl SignumOrOne for f64 {
    fn signum_or_one(self) -> f64 {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

fn newton_polish(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut best = z;
    let mut best_res = horner(coeffs, z).norm();
    let mut cur = z;
    for _ in 0..8 {
        let (p, dp) = horner_with_derivative(coeffs, cur);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        cur -= p / dp;
        let res = horner(coeffs, cur).norm();
        if res < best_res {
            best = cur;
            best_res = res;
        } else {
            break;
        }
    }
    best
}

/// Simultaneous Aberth sweeps; keeps distinct approximations apart.
fn aberth_polish(coeffs: &[f64], roots: &mut [Complex64]) {
    let n = roots.len();
    for _ in 0..60 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(coeffs, roots[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = roots[k] - roots[j];
                    if d.norm() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() > 0.0 { ratio / denom } else { ratio };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            let candidate = roots[k] - step;
            if horner(coeffs, candidate).norm() <= p.norm() {
                roots[k] = candidate;
                max_step = max_step.max(step.norm() / roots[k].norm().max(1e-300));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
}

/// All three roots of `c3 x^3 + c2 x^2 + c1 x + c0`.
pub fn cubic_roots_real(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<RootSet> {
    if c3 == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let coeffs = vec![c3, c2, c1, c0];
    let (a, b, c) = (c2 / c3, c1 / c3, c0 / c3);
    // x = s - a/3 gives s^3 + p s + q
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots: Vec<Complex64> = if p < 0.0 && disc <= 0.0 {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| Complex64::new(m * (theta - 2.0 * PI * k as f64 / 3.0).cos() - shift, 0.0))
            .collect()
    } else {
        let sd = disc.max(0.0).sqrt();
        let u = (-q / 2.0 + if q <= 0.0 { sd } else { -sd }).cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { (-q).cbrt() };
        let real = u + v - shift;
        // deflate: x^2 + (a + real) x + (b + real (a + real))
        let e1 = a + real;
        let e0 = b + real * e1;
        let [r1, r2] = quadratic_complex(
            Complex64::new(1.0, 0.0),
            Complex64::new(e1, 0.0),
            Complex64::new(e0, 0.0),
        );
        vec![Complex64::new(real, 0.0), r1, r2]
    };
    for r in roots.iter_mut() {
        *r = newton_polish(&coeffs, *r);
    }
    aberth_polish(&coeffs, &mut roots);
    Ok(RootSet::build(coeffs, roots))
}

/// All four roots of `c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0`.
pub fn quartic_roots(c4: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> Result<RootSet> {
    if c4 == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let coeffs = vec![c4, c3, c2, c1, c0];
    let (a, b, c, d) = (c3 / c4, c2 / c4, c1 / c4, c0 / c4);
    // x = z - a/4 gives z^4 + p z^2 + q z + r
    let shift = a / 4.0;
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    let one = Complex64::new(1.0, 0.0);
    let scale = p.abs().max(r.abs().sqrt()).max(1e-300);
    let mut z: Vec<Complex64> = if q.abs() <= 1e-14 * scale.powf(1.5) {
        let [w1, w2] = quadratic_complex(one, Complex64::new(p, 0.0), Complex64::new(r, 0.0));
        vec![w1.sqrt(), -w1.sqrt(), w2.sqrt(), -w2.sqrt()]
    } else {
        // resolvent 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0 has a positive root
        let res = cubic_roots_real(8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -q * q)?;
        let m = res
            .roots
            .iter()
            .filter(|z| z.im == 0.0 && z.re > 0.0)
            .map(|z| z.re)
            .fold(f64::NAN, f64::max);
        let m = if m.is_nan() {
            res.roots.iter().map(|z| z.re).fold(0.0, f64::max).max(1e-300)
        } else {
            m
        };
        let s = (2.0 * m).sqrt();
        let t = q / (2.0 * s);
        let [z1, z2] = quadratic_complex(one, Complex64::new(-s, 0.0), Complex64::new(p / 2.0 + m + t, 0.0));
        let [z3, z4] = quadratic_complex(one, Complex64::new(s, 0.0), Complex64::new(p / 2.0 + m - t, 0.0));
        vec![z1, z2, z3, z4]
    };
    for v in z.iter_mut() {
        *v -= shift;
    }
    for v in z.iter_mut() {
        *v = newton_polish(&coeffs, *v);
    }
    aberth_polish(&coeffs, &mut z);
    Ok(RootSet::build(coeffs, z))
}

/// Dispatches on degree (1..=4); leading zeros are not stripped.
pub fn roots_of(coeffs: &[f64]) -> Result<RootSet> {
    match coeffs {
        [c1, c0] => {
            if *c1 == 0.0 {
                return Err(Error::DegenerateLeadingCoefficient);
            }
            Ok(RootSet::build(coeffs.to_vec(), vec![Complex64::new(-c0 / c1, 0.0)]))
        }
        [c2, c1, c0] => quadratic_roots(*c2, *c1, *c0),
        [c3, c2, c1, c0] => cubic_roots_real(*c3, *c2, *c1, *c0),
        [c4, c3, c2, c1, c0] => quartic_roots(*c4, *c3, *c2, *c1, *c0),
        _ => Err(Error::DegenerateLeadingCoefficient),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_real_roots(rs: &RootSet, want: &[f64], tol: f64) {
        assert_eq!(rs.real_roots_sorted.len(), want.len(), "{rs:?}");
        for (g, w) in rs.real_roots_sorted.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{g} vs {w}");
        }
    }

    #[test]
    fn quadratic_examples() {
        // -2p x^2 + (1 - pq) x + 2q with p = 2, q = 3
        let rs = quadratic_roots(-4.0, -5.0, 6.0).unwrap();
        assert_real_roots(&rs, &[-2.0, 0.75], 1e-15);
        assert_real_roots(&quadratic_roots(1.0, -3.0, 2.0).unwrap(), &[1.0, 2.0], 1e-15);
        let rs = quadratic_roots(1.0, 0.0, 1.0).unwrap();
        assert!(rs.real_roots_sorted.is_empty());
        assert_eq!(rs.roots, vec![Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)]);
        assert_eq!(quadratic_roots(0.0, 1.0, 1.0), Err(Error::DegenerateLeadingCoefficient));
    }

    #[test]
    fn quadratic_is_stable_against_cancellation() {
        let rs = quadratic_roots(1.0, -1e8, 1.0).unwrap();
        assert!((rs.real_roots_sorted[0] - 1e-8).abs() < 1e-22);
    }

    #[test]
    fn cubic_examples() {
        assert_real_roots(&cubic_roots_real(1.0, -6.0, 11.0, -6.0).unwrap(), &[1.0, 2.0, 3.0], 1e-14);
        let rs = cubic_roots_real(1.0, 0.0, 0.0, 1.0).unwrap();
        assert_real_roots(&rs, &[-1.0], 1e-15);
        assert_eq!(rs.roots.len(), 3);
        assert!(cubic_roots_real(0.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn cubic_three_real_roots_in_pencil_regime() {
        // f(x, y) = y^3 + t y^2 - (3 + 2t) x y + (2 + t) x at t = -1.25, x = 0.5
        let (t, x) = (-1.25, 0.5);
        let f = |y: f64| y * y * y + t * y * y - (3.0 + 2.0 * t) * x * y + (2.0 + t) * x;
        let rs = cubic_roots_real(1.0, t, -(3.0 + 2.0 * t) * x, (2.0 + t) * x).unwrap();
        assert_eq!(rs.real_roots_sorted.len(), 3);
        // bisection oracle on each sign change of f over a fine grid
        let mut oracle = Vec::new();
        let n = 4000;
        let (lo, hi) = (-3.0, 3.0);
        for i in 0..n {
            let (mut a, mut b) = (lo + (hi - lo) * i as f64 / n as f64, lo + (hi - lo) * (i + 1) as f64 / n as f64);
            if f(a) * f(b) < 0.0 {
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if f(a) * f(m) <= 0.0 {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                oracle.push(0.5 * (a + b));
            }
        }
        assert_real_roots(&rs, &oracle, 1e-13);
    }

    #[test]
    fn quartic_examples() {
        let rs = quartic_roots(1.0, 0.0, 0.0, 0.0, -1.0).unwrap();
        assert_real_roots(&rs, &[-1.0, 1.0], 1e-15);
        assert_eq!(rs.smallest_positive_real().unwrap(), 1.0);
        assert_eq!(rs.roots.len(), 4);
        // (y - 2)^2 (y^2 + 1) = y^4 - 4y^3 + 5y^2 - 4y + 4
        let rs = quartic_roots(1.0, -4.0, 5.0, -4.0, 4.0).unwrap();
        let clusters = rs.clusters();
        let double = clusters.iter().find(|(c, _)| (c.re - 2.0).abs() < 1e-6).unwrap();
        assert_eq!(double.1, 2);
        assert!((rs.smallest_positive_real().unwrap() - 2.0).abs() < 1e-7);
        assert_eq!(rs.real_roots_sorted.len(), 2);
        assert!(quartic_roots(0.0, 1.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn quartic_without_positive_root() {
        let rs = quartic_roots(1.0, 4.0, 6.0, 4.0, 1.0).unwrap(); // (y + 1)^4
        assert_eq!(rs.smallest_positive_real(), Err(Error::NoPositiveRealRoot));
    }

    #[test]
    fn quartic_intersection_polynomial_matches_bisection_deflation() {
        // a t^2 y^4 - t^2 y^3 + b t y^2 + c with a = 1, b = 3, c = 1, t = 30
        let (a, b, c, t) = (1.0, 3.0, 1.0, 30.0);
        let coeffs = [a * t * t, -t * t, b * t, 0.0, c];
        let rs = quartic_roots(coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]).unwrap();
        let f = |y: f64| coeffs.iter().fold(0.0, |acc, &k| acc * y + k);
        // bisection for the real roots
        let mut real = Vec::new();
        let n = 20_000;
        for i in 0..n {
            let (mut lo, mut hi) = (-2.0 + 4.0 * i as f64 / n as f64, -2.0 + 4.0 * (i + 1) as f64 / n as f64);
            if f(lo) * f(hi) < 0.0 {
                for _ in 0..200 {
                    let m = 0.5 * (lo + hi);
                    if f(lo) * f(m) <= 0.0 {
                        hi = m;
                    } else {
                        lo = m;
                    }
                }
                real.push(0.5 * (lo + hi));
            }
        }
        assert_eq!(real.len(), 2);
        assert_real_roots(&rs, &real, 1e-13);
        // deflate the two real roots and compare the remaining quadratic
        let (r0, r1) = (real[0], real[1]);
        let lead = coeffs[0];
        // (y^2 - (r0 + r1) y + r0 r1) (lead y^2 + e1 y + e0)
        let s = r0 + r1;
        let p = r0 * r1;
        let e1 = coeffs[1] + lead * s;
        let e0 = coeffs[2] - lead * p + e1 * s;
        let [z1, z2] = quadratic_complex(
            Complex64::new(lead, 0.0),
            Complex64::new(e1, 0.0),
            Complex64::new(e0, 0.0),
        );
        let mut deflated = vec![z1, z2];
        deflated.sort_by(|a, b| a.im.total_cmp(&b.im));
        let complex: Vec<_> = rs.roots.iter().filter(|z| z.im != 0.0).collect();
        assert_eq!(complex.len(), 2);
        for (g, w) in complex.iter().zip(&deflated) {
            assert!((**g - *w).norm() < 1e-9, "{g} vs {w}");
        }
        assert!((rs.smallest_positive_real().unwrap() - 0.1676400269575354735).abs() < 1e-14);
    }
}
