use std::f64::consts::PI;

use num_complex::Complex64 as C;

use tautcalc::period::{
    cauchy_kernel_coeffs, cauchy_kernel_coeffs_with, compute_d, compute_g, contour_integrate, cycles, inner_integral_quadrature,
    inner_integral_residue, integrate_cycle, normalized_basis, period_matrix, period_table, rho4, y_on_path, CircleNodes,
    HyperellipticCurve, InnerRule, PathPiece, PeriodConfig, PeriodError, QuadRule, Sheet,
};

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn cfg() -> PeriodConfig {
    PeriodConfig::default()
}

#[test]
fn base_value_of_y() {
    let c1 = HyperellipticCurve::base_c1();
    let y0 = c1.y_base();
    assert!((y0 * y0 - C::new(720.0, 0.0)).norm() < 1e-9);
    assert!(y0.re > 0.0);
    let lower = c1.clone().with_sheet(Sheet::Lower);
    assert_eq!(lower.y_base(), -y0);
}

#[test]
fn monodromy() {
    let c = HyperellipticCurve::base_c1();
    let one = PathPiece::loop_around(C::new(1.0, 0.0), 0.4, 0.4, false);
    let start = c.y_near(one.point(0.0), c.y_at(one.point(0.0)).unwrap());
    let p = y_on_path(&c, vec![one], start).unwrap();
    assert!((p.end_value() + p.start_value()).norm() < 1e-9 * start.norm());
    let two = PathPiece::loop_around(C::new(1.5, 0.0), 0.9, 0.4, true);
    let start = c.y_at(two.point(0.0)).unwrap();
    let p = y_on_path(&c, vec![two], start).unwrap();
    assert!((p.end_value() - p.start_value()).norm() < 1e-9 * start.norm());
    assert!(p.min_clearance() > 0.3);
}

#[test]
fn clearance_error() {
    let c = HyperellipticCurve::base_c1();
    let through = PathPiece::Segment { from: C::new(0.5, 0.0), to: C::new(1.5, 0.0) };
    let err = y_on_path(&c, vec![through], c.y_base()).unwrap_err();
    assert!(matches!(err, PeriodError::Clearance { .. }));
}

#[test]
fn elementary_contours() {
    // far from the branch points the sheet value is irrelevant to these integrands
    let c = HyperellipticCurve::real([10.0, 11.0, 12.0, 13.0, 14.0, 15.0]).unwrap();
    let circle = PathPiece::loop_around(C::new(0.0, 0.0), 1.0, 1.0, false);
    let p = y_on_path(&c, vec![circle], c.y_at(C::new(0.0, 1.0)).unwrap()).unwrap();
    let (v, e) = contour_integrate(&p, |z, _| 1.0 / z, 1e-13).unwrap();
    assert!((v - C::new(0.0, 2.0 * PI)).norm() < 1e-12, "{v}");
    assert!(e <= 1e-12);
    let (v, _) = contour_integrate(&p, |z, _| z, 1e-13).unwrap();
    assert!(v.norm() < 1e-12);
    let ellipse = PathPiece::loop_around(C::new(2.0, 1.0), 3.0, 0.5, true);
    let p = y_on_path(&c, vec![ellipse], C::new(1.0, 0.0)).unwrap();
    let (v, _) = contour_integrate(&p, |z, _| z, 1e-12).unwrap();
    assert!(v.norm() < 1e-11);
}

#[test]
fn a_period_cross_rules() {
    let c = HyperellipticCurve::base_c1();
    let cyc = cycles(&c, &cfg()).unwrap();
    let base = integrate_cycle(&cyc.a[0], |_| C::new(1.0, 0.0), QuadRule::Segments, 1e-11).unwrap().0;
    for rule in [QuadRule::LoopsAdaptive, QuadRule::LoopsTrapezoid] {
        let v = integrate_cycle(&cyc.a[0], |_| C::new(1.0, 0.0), rule, 1e-11).unwrap().0;
        assert!(rel(v, base) < 1e-8, "{rule}: {v} vs {base}");
    }
}

fn check_riemann(c: &HyperellipticCurve) {
    let t = period_matrix(c, &cfg()).unwrap();
    assert!(t.asymmetry() < 1e-8, "{}", t.asymmetry());
    let ev = t.imag_eigenvalues();
    assert!(ev[0] > 1e-8 && ev[1] > 1e-8, "{ev:?}");
}

#[test]
fn riemann_relations() {
    check_riemann(&HyperellipticCurve::base_c1());
    check_riemann(&HyperellipticCurve::base_c2());
    check_riemann(&HyperellipticCurve::real([-3.0, -1.5, 0.5, 1.0, 2.5, 6.0]).unwrap());
    check_riemann(&HyperellipticCurve::real([-7.0, -2.0, -1.0, 1.2, 1.3, 9.0]).unwrap());
}

#[test]
fn deformation_independence() {
    let c = HyperellipticCurve::base_c1();
    let loops = cfg().with_rule(QuadRule::LoopsAdaptive);
    let wide = PeriodConfig { radius: loops.radius * 1.2, ..loops.clone() };
    let (t0, t1) = (period_matrix(&c, &loops).unwrap(), period_matrix(&c, &wide).unwrap());
    for i in 0..2 {
        for j in 0..2 {
            assert!(rel(t0.tau[i][j], t1.tau[i][j]) < 1e-6);
        }
    }
    let (b0, b1) = (normalized_basis(&c, &loops).unwrap(), normalized_basis(&c, &wide).unwrap());
    for (x, y) in [(b0.a, b1.a), (b0.b, b1.b), (b0.c, b1.c), (b0.d, b1.d)] {
        assert!(rel(x, y) < 1e-6);
    }
    let (k0, k1) = (cauchy_kernel_coeffs(&c, &loops).unwrap(), cauchy_kernel_coeffs(&c, &wide).unwrap());
    assert!(rel(k0.h2(), k1.h2()) < 1e-6);
    assert!(rel(k0.k2(), k1.k2()) < 1e-6);
}

#[test]
fn duality_and_conditioning() {
    for c in [HyperellipticCurve::base_c1(), HyperellipticCurve::base_c2()] {
        let nb = normalized_basis(&c, &cfg()).unwrap();
        assert!(nb.residual < 1e-8);
        assert!(nb.det().norm() > 0.0);
        assert!(nb.conditioning > 1e-3, "{}", nb.conditioning);
        // independent check of the dual relation against a fresh period table
        let alt = cfg().with_rule(QuadRule::LoopsTrapezoid);
        let cyc = cycles(&c, &alt).unwrap();
        let t = period_table(&c, &cyc, &alt).unwrap();
        for (i, row) in t.a.iter().enumerate() {
            let v1 = nb.a * row[0] + nb.b * row[1];
            let v2 = nb.c * row[0] + nb.d * row[1];
            let (e1, e2) = if i == 0 { (1.0, 0.0) } else { (0.0, 1.0) };
            assert!((v1 - e1).norm() < 1e-8 && (v2 - e2).norm() < 1e-8);
        }
    }
}

#[test]
fn cauchy_coefficients() {
    let c = HyperellipticCurve::base_c1();
    let a = cauchy_kernel_coeffs(&c, &cfg()).unwrap();
    let b = cauchy_kernel_coeffs(&c, &cfg().with_rule(QuadRule::LoopsTrapezoid)).unwrap();
    assert!(a.residual0 < 1e-8);
    assert!(rel(a.h2(), b.h2()) < 1e-6);
    assert!(rel(a.k2(), b.k2()) < 1e-6);
    // a higher-order solve keeps the low coefficients
    let cyc = cycles(&c, &cfg()).unwrap();
    let t = period_table(&c, &cyc, &cfg()).unwrap();
    let more = cauchy_kernel_coeffs_with(&c, &cyc, &t, &cfg(), 4).unwrap();
    assert_eq!(more.h[2], a.h2());
    assert_eq!(more.k[2], a.k2());
}

#[test]
fn inner_integral_residue_vs_circle() {
    let c = HyperellipticCurve::base_c1();
    let config = cfg();
    let cyc = cycles(&c, &config).unwrap();
    let t = period_table(&c, &cyc, &config).unwrap();
    let hk = cauchy_kernel_coeffs_with(&c, &cyc, &t, &config, 2).unwrap();
    let ys = c.y_series_at_base(2);
    let nodes = CircleNodes::new(&c, &cyc, &t, &config, 48).unwrap();
    for x in [2.3, 2.5, 2.8, 4.2, 4.5, 4.9] {
        for y in [c.y_at(C::new(x, 1e-9)).unwrap(), -c.y_at(C::new(x, 1e-9)).unwrap()] {
            let z = C::new(x, 0.0);
            let (r, q) = (inner_integral_residue(&ys, &hk, z, y), inner_integral_quadrature(&nodes, z, y));
            assert!(rel(r, q) < 1e-8, "x = {x}: {r} vs {q}");
        }
    }
}

#[test]
fn g_is_stable() {
    let c = HyperellipticCurve::base_c1();
    for i in 1..=2 {
        let (r, _) = compute_g(&c, i, &cfg()).unwrap();
        let circ = PeriodConfig { inner: InnerRule::Circle(48), ..cfg() };
        let (q, _) = compute_g(&c, i, &circ).unwrap();
        assert!(rel(r, q) < 1e-6, "G{i}: {r} vs {q}");
        let wide = PeriodConfig { eps: 0.1, ..circ };
        let (w, _) = compute_g(&c, i, &wide).unwrap();
        assert!(rel(q, w) < 1e-6, "G{i} eps: {q} vs {w}");
        let cross = compute_g(&c, i, &cfg().with_rule(QuadRule::LoopsTrapezoid)).unwrap().0;
        assert!(rel(r, cross) < 1e-6);
    }
    assert!(compute_g(&c, 3, &cfg()).is_err());
}

#[test]
fn epsilon_too_large() {
    let c = HyperellipticCurve::base_c1();
    let err = compute_g(&c, 1, &PeriodConfig { eps: 1.5, ..cfg() }).unwrap_err();
    assert!(matches!(err, PeriodError::EpsilonTooLarge { .. }));
}

#[test]
fn d_constants() {
    let c2 = HyperellipticCurve::base_c2();
    let nb = normalized_basis(&c2, &cfg()).unwrap();
    let d = compute_d(&c2, &nb).unwrap();
    // oracle: Y'(0) by central differences on the upper sheet
    let h = 1e-5;
    let y0 = c2.y_base();
    let yp = (c2.y_near(C::new(h, 0.0), y0) - c2.y_near(C::new(-h, 0.0), y0)) / (2.0 * h);
    let oracle = [(nb.a * yp / y0 - nb.b) / y0, (nb.c * yp / y0 - nb.d) / y0];
    for k in 0..2 {
        assert!(rel(d[k], oracle[k]) < 1e-7, "{} vs {}", d[k], oracle[k]);
    }
    let mut zeroed = nb.clone();
    zeroed.b = nb.a * yp / y0;
    let dz = compute_d(&c2, &zeroed).unwrap();
    assert!(dz[0].norm() < 1e-9 * d[0].norm().max(1.0));
    let flipped = compute_d(&c2.clone().with_sheet(Sheet::Lower), &nb).unwrap();
    for k in 0..2 {
        assert!((flipped[k] + d[k]).norm() < 1e-12 * d[k].norm());
    }
    let other = normalized_basis(&c2, &cfg().with_rule(QuadRule::LoopsTrapezoid)).unwrap();
    let d2 = compute_d(&c2, &other).unwrap();
    for k in 0..2 {
        assert!(rel(d[k], d2[k]) < 1e-6);
    }
}

#[test]
fn rho4_certificate() {
    let cert = rho4(&cfg()).unwrap();
    assert!(cert.passed());
    assert!(cert.margin >= 10.0);
    assert!(cert.value.norm() > 10.0 * cert.quadrature_error);
    assert!(rel(cert.primary.value, cert.coarse.value) < 1e-6);
    assert!(rel(cert.primary.value, cert.cross.value) < 1e-6);
    let wide = rho4(&PeriodConfig { eps: 0.1, ..cfg() }).unwrap();
    assert!(rel(cert.value, wide.value) < 1e-6);
    let circle = rho4(&PeriodConfig { inner: InnerRule::Circle(48), ..cfg() }).unwrap();
    assert!(rel(cert.value, circle.value) < 1e-6);
    assert!(cert.digest.contains("C1=[1,2,3,4,5,6]"));
    let again = rho4(&cfg()).unwrap();
    assert_eq!(again.value, cert.value);
    let report = cert.primary.to_string();
    for name in ["a\t", "b\t", "c\t", "d\t", "h2\t", "k2\t", "G1\t", "G2\t", "D1\t", "D2\t", "rho4\t"] {
        assert!(report.contains(name), "{name}");
    }
}

#[test]
fn degenerate_curves() {
    assert!(HyperellipticCurve::real([1.0, 1.0, 3.0, 4.0, 5.0, 6.0]).is_err());
    assert!(HyperellipticCurve::real([0.0, 1.0, 3.0, 4.0, 5.0, 6.0]).is_err());
}
