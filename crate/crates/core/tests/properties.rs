use lkit::cli::parse_real;
use lkit::engine::{fd, hyp2f1, Engine};
use lkit::formulas::{find, sample_domain};
use lkit::gamma::{beta, ln_gamma, pochhammer};
use lkit::polyroots::{cubic_roots_real, quartic_roots};
use lkit::reduction::reduce_4pole;
use lkit::series::{lauricella_fd_series, EvalPoint, HgParams};
use lkit::singular::{ExtReal, SingularIntegrand};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn beta_is_symmetric(p in 0.05f64..8.0, q in 0.05f64..8.0) {
        prop_assert!(rel(beta(p, q).unwrap(), beta(q, p).unwrap()) < 1e-13);
    }

    #[test]
    fn gamma_recurrence(x in 0.1f64..30.0) {
        let lhs = ln_gamma(x + 1.0).unwrap();
        let rhs = ln_gamma(x).unwrap() + x.ln();
        prop_assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn pochhammer_recurrence(q in -5.0f64..5.0, n in 0u32..20) {
        let next = pochhammer(q, n + 1);
        let step = pochhammer(q, n) * (q + n as f64);
        prop_assert!((next - step).abs() <= 1e-12 * next.abs().max(1e-300));
    }

    #[test]
    fn cubic_recovers_real_roots(r in prop::array::uniform3(-5.0f64..5.0), lead in 0.2f64..4.0) {
        let mut r = r;
        r.sort_by(f64::total_cmp);
        prop_assume!(r[1] - r[0] > 1e-3 && r[2] - r[1] > 1e-3);
        let c2 = -lead * (r[0] + r[1] + r[2]);
        let c1 = lead * (r[0] * r[1] + r[1] * r[2] + r[0] * r[2]);
        let c0 = -lead * r[0] * r[1] * r[2];
        let got = cubic_roots_real(lead, c2, c1, c0).unwrap().real_roots_sorted;
        prop_assert_eq!(got.len(), 3);
        for (g, w) in got.iter().zip(r) {
            prop_assert!((g - w).abs() < 1e-7 * (1.0 + w.abs()), "{:?} vs {:?}", got, r);
        }
    }

    #[test]
    fn quartic_vieta(c in prop::array::uniform4(-3.0f64..3.0), lead in 0.5f64..3.0) {
        let rs = quartic_roots(lead, c[0], c[1], c[2], c[3]).unwrap();
        prop_assert_eq!(rs.roots.len(), 4);
        let sum: num_complex::Complex64 = rs.roots.iter().sum();
        let prod: num_complex::Complex64 = rs.roots.iter().product();
        prop_assert!((sum + c[0] / lead).norm() < 1e-8 * (1.0 + c[0].abs()));
        prop_assert!((prod - c[3] / lead).norm() < 1e-7 * (1.0 + c[3].abs() / lead));
        for z in &rs.roots {
            let scale: f64 = rs.coefficients.iter().enumerate().map(|(k, a)| a.abs() * z.norm().powi(4 - k as i32)).sum();
            prop_assert!(rs.eval(*z).norm() < 1e-9 * scale);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fd_is_symmetric_under_permutation(
        a in 0.1f64..2.0,
        b in prop::array::uniform3(-1.0f64..2.0),
        x in prop::array::uniform3(-0.6f64..0.6),
        c in 0.5f64..4.0,
    ) {
        let v = lauricella_fd_series(&HgParams::new(a, b.to_vec(), c), &EvalPoint::new(x.to_vec()), 1e-15).unwrap();
        let perm = [2, 0, 1];
        let bp: Vec<f64> = perm.iter().map(|&k| b[k]).collect();
        let xp: Vec<f64> = perm.iter().map(|&k| x[k]).collect();
        let w = lauricella_fd_series(&HgParams::new(a, bp, c), &EvalPoint::new(xp), 1e-15).unwrap();
        prop_assert!(rel(v, w) < 1e-12);
    }

    #[test]
    fn f1_on_the_diagonal_is_2f1(a in 0.1f64..2.0, b in -1.0f64..2.0, b2 in -1.0f64..2.0, c in 0.5f64..4.0, x in -0.8f64..0.8) {
        let f1 = fd(&HgParams::new(a, vec![b, b2], c), &[x, x], Engine::Series, 1e-16).unwrap();
        let g = hyp2f1(a, b + b2, c, x, Engine::Series, 1e-16).unwrap();
        prop_assert!(rel(f1, g) < 1e-12);
    }

    #[test]
    fn series_and_euler_agree(a in 0.1f64..2.0, gap in 0.1f64..3.0, b in -1.5f64..2.5, z in -0.9f64..0.9) {
        let c = a + gap;
        let s = hyp2f1(a, b, c, z, Engine::Series, 1e-15).unwrap();
        let e = hyp2f1(a, b, c, z, Engine::Euler, 1e-13).unwrap();
        prop_assert!(rel(s, e) < 1e-10, "{} {}", s, e);
    }

    /// `x -> alpha x + beta` rescales the integral by `alpha^(1 - sum mu) = 1/alpha`.
    #[test]
    fn integral_is_affine_covariant(
        x1 in -2.0f64..2.0,
        len in 0.3f64..3.0,
        mu in prop::array::uniform2(0.0f64..0.8),
        m4 in -0.5f64..0.8,
        alpha in 0.2f64..5.0,
        beta_ in -3.0f64..3.0,
    ) {
        let x2 = x1 + len;
        let poles = [x1, x2, x1 - 1.0, x2 + 0.7];
        let exps = vec![mu[0], mu[1], 2.0 - mu[0] - mu[1] - m4, m4];
        let i0 = SingularIntegrand::new(poles.iter().map(|&p| p.into()).collect(), exps.clone()).unwrap().integrate(1e-12).unwrap();
        let moved = SingularIntegrand::new(poles.iter().map(|&p| (alpha * p + beta_).into()).collect(), exps).unwrap();
        prop_assert!(rel(i0, alpha * moved.integrate(1e-12).unwrap()) < 1e-9);
    }

    #[test]
    fn reduction_matches_quadrature(
        x1 in -2.0f64..2.0,
        len in 0.3f64..3.0,
        mu in prop::array::uniform2(-0.5f64..0.85),
        gaps in prop::array::uniform3(0.2f64..3.0),
        sides in prop::array::uniform3(any::<bool>()),
        tail in prop::array::uniform2(-0.8f64..1.2),
        n in 3usize..=5,
        infinite in any::<bool>(),
    ) {
        let x2 = x1 + len;
        let place = |k: usize| if sides[k] { x2 + gaps[k] * (k + 1) as f64 } else { x1 - gaps[k] * (k + 1) as f64 };
        let mut poles: Vec<ExtReal> = vec![x1.into(), x2.into(), if infinite { ExtReal::Infinity } else { place(0).into() }];
        let mut exps = vec![mu[0], mu[1], 0.0];
        for k in 3..n {
            poles.push(place(k - 2).into());
            exps.push(tail[k - 3]);
        }
        exps[2] = 2.0 - exps.iter().sum::<f64>();
        let integrand = SingularIntegrand::new(poles, exps).unwrap();
        let direct = integrand.integrate(1e-12).unwrap();
        let closed = reduce_4pole(&integrand).unwrap().value(Engine::Auto, 1e-13).unwrap();
        prop_assert!(rel(direct, closed) < 1e-8, "{} vs {}", direct, closed);
    }

    #[test]
    fn samples_satisfy_domain(seed in any::<u64>()) {
        for id in ["T5.1", "T6.2", "T7.1", "T8.1", "T9.1", "C9.2"] {
            let f = find(id).unwrap();
            for p in sample_domain(f.as_ref(), 3, seed).unwrap() {
                prop_assert!(f.admissible(&p).is_ok(), "{} {:?}", id, p);
            }
        }
    }

    #[test]
    fn ratio_flags_parse_exactly(n in -50i32..50, d in 1i32..50) {
        prop_assert_eq!(parse_real(&format!("{n}/{d}")).unwrap(), n as f64 / d as f64);
    }
}
