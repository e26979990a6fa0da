//! Reference values computed independently at 30 digits (mpmath: `hyp2f1`,
//! `appellf1`, and direct quadrature of the Euler integral).

use lkit::engine::{eval_fd, Engine};
use lkit::formulas::{evaluate_sides, find, relative_residual};
use lkit::series::HgParams;
use num_complex::Complex64;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn real_case(a: f64, b: &[f64], c: f64, x: &[f64], engine: Engine) -> (f64, Engine) {
    eval_fd(&HgParams::new(a, b.to_vec(), c), x, engine, 1e-15).unwrap()
}

#[test]
fn gauss_values() {
    let cases: [(f64, f64, f64, f64, f64); 3] = [
        (0.3, 0.7, 1.9, 0.6, 1.089_464_800_785_896_1),
        (0.6, -1.3, 2.2, -7.5, 4.549_231_061_624_948_9),
        (0.4, 0.9, 2.1, 0.97, 1.383_285_000_030_232_1),
    ];
    for (a, b, c, z, want) in cases {
        let (v, used) = real_case(a, &[b], c, &[z], Engine::Auto);
        assert!(rel(v, want) < 1e-13, "2F1({a},{b};{c};{z}) = {v} via {used}");
    }
    let (_, used) = real_case(0.6, &[-1.3], 2.2, &[-7.5], Engine::Auto);
    assert_eq!(used, Engine::Euler);
}

#[test]
fn appell_values() {
    let (v, _) = real_case(0.8, &[0.3, -0.6], 1.7, &[0.5, -0.4], Engine::Series);
    assert!(rel(v, 1.214_895_779_619_883_0) < 1e-14);
    let (v, _) = real_case(0.8, &[0.3, -0.6], 1.7, &[0.5, -0.4], Engine::Euler);
    assert!(rel(v, 1.214_895_779_619_883_0) < 1e-12);
    let (v, used) = real_case(0.8, &[0.3, -0.6], 1.7, &[-3.0, 0.9], Engine::Auto);
    assert_eq!(used, Engine::Euler);
    assert!(rel(v, 0.571_924_059_133_744_42) < 1e-12);
}

#[test]
fn lauricella_values() {
    let (v, _) = real_case(1.2, &[0.2, 0.5, -0.7], 2.9, &[0.3, -2.5, 0.96], Engine::Auto);
    assert!(rel(v, 0.533_821_526_768_805_75) < 1e-12);
}

#[test]
fn complex_arguments() {
    let b = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0];
    let p = HgParams::new(0.5, b.to_vec(), 7.0 / 6.0);
    let x = [Complex64::new(0.4, 0.3), Complex64::new(0.4, -0.3), Complex64::new(-0.8, 0.0)];
    for engine in [Engine::Series, Engine::Euler] {
        let (v, _) = eval_fd(&p, &x, engine, 1e-14).unwrap();
        assert!((v - Complex64::new(1.074_829_934_973_756, 0.0)).norm() < 1e-12, "{engine}: {v}");
    }
    let x = [Complex64::new(0.9, 1.2), Complex64::new(-2.0, 0.5), Complex64::new(0.2, 0.0)];
    let (v, used) = eval_fd(&p, &x, Engine::Auto, 1e-14).unwrap();
    assert_eq!(used, Engine::Euler);
    assert!((v - Complex64::new(0.831_784_732_052_117_9, 0.195_632_928_353_797_35)).norm() < 1e-12);
}

/// Both sides at the reference points, with each engine that applies.
#[test]
fn identities_at_reference_points() {
    let cases: [(&str, &[f64], f64); 9] = [
        ("T5.1", &[-2.0, -6.0, -2.0, 0.5], 0.726_867_104_811_464_4),
        ("T6.1", &[0.3, 0.4, 0.6, 0.2], 1.119_852_233_4),
        ("T6.2", &[0.3, 0.4, 0.7, 0.3], 0.828_159_942_685_35),
        ("E6.degen0", &[0.3, 0.4, 0.7], 0.661_229_964_288_9),
        ("E6.degen1", &[0.45, 0.35, 0.7], 0.911_523_000_645_138_97),
        ("C6.G1", &[0.6, 0.7, -3.0], 0.479_475_620_689_252_88),
        ("C6.G2", &[0.3, 0.4, -3.0], 0.796_333_805_408_459_92),
        ("T9.1", &[-1.25, 0.4, 0.3, 0.6], 1.499_107_915_877_343_8),
        ("C9.2", &[-1.25, 0.4], 2.759_325_387_184_631_2),
    ];
    for (id, p, want) in cases {
        let (l, r) = evaluate_sides(id, p, None, Engine::Auto, 1e-14).unwrap();
        assert!(rel(l.re, want) < 1e-10, "{id} lhs {l}");
        assert!(relative_residual(l, r) < 1e-11, "{id}: {l} vs {r}");
        if let Ok((le, re)) = evaluate_sides(id, p, None, Engine::Euler, 1e-13) {
            assert!(relative_residual(le, l) < 1e-10 && relative_residual(re, r) < 1e-10, "{id} euler");
        }
    }
}

#[test]
fn goursat_at_the_origin() {
    let (l, r) = evaluate_sides("C6.G1", &[0.6, 0.7, 0.0], None, Engine::Auto, 1e-12).unwrap();
    assert_eq!((l.re, r.re), (1.0, 1.0));
}

#[test]
fn sector_identity_degenerates() {
    let t62 = |t2: f64| evaluate_sides("T6.2", &[0.3, 0.4, 0.7, t2], None, Engine::Auto, 1e-14).unwrap();
    let (l, r) = t62(0.0);
    let (l0, r0) = evaluate_sides("E6.degen0", &[0.3, 0.4, 0.7], None, Engine::Auto, 1e-14).unwrap();
    let k = 0.7f64.powf(0.6);
    assert!(rel(l.re * k, l0.re) < 1e-12 && rel(r.re * k, r0.re) < 1e-12);
}

/// As `t2 -> t1` the right side, normalised by
/// `K (t1^2 - t2^2)^b (1 - t1^2)^(a-1)`, tends to the `t2 = t1` identity
/// with error of order `eps^(2a+b-1)`.
#[test]
fn sector_identity_approaches_the_diagonal_limit() {
    use lkit::gamma::gamma;
    let (a, b, t1) = (0.6, 0.3, 0.7);
    let k = gamma(a + 2.0 * b).unwrap() * gamma(2.0 * a + b - 1.0).unwrap()
        / (gamma(a + b).unwrap() * gamma(2.0 * a + 2.0 * b - 1.0).unwrap());
    let (limit, _) = evaluate_sides("E6.degen1", &[a, b, t1], None, Engine::Auto, 1e-14).unwrap();
    let mut last = f64::INFINITY;
    for eps in [1e-2, 1e-3, 1e-4] {
        let t2 = t1 - eps;
        let (_, r) = evaluate_sides("T6.2", &[a, b, t1, t2], None, Engine::Auto, 1e-14).unwrap();
        let scaled = r.re / (k * (t1 * t1 - t2 * t2).powf(b) * (1.0 - t1 * t1).powf(a - 1.0));
        let err = rel(scaled, limit.re);
        assert!(err < last, "eps {eps}: {err} not below {last}");
        last = err;
    }
    assert!(last < 0.05);
}

#[test]
fn t7_printed_reading_fails_and_x_plus_holds() {
    let f = find("T7.1").unwrap();
    let p = lkit::formulas::sample_domain(f.as_ref(), 1, 3).unwrap().remove(0);
    let row = lkit::formulas::verify_identity(f.as_ref(), &p, 1e-6, Engine::Auto, false, 0);
    assert!(row.pass);
    assert_eq!(row.variant.as_deref(), Some("x_plus"));
    assert_eq!(row.rejected_variants[0].0, "printed");
}
