use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use tautcalc::algebra::{rat, rint, Rational};
use tautcalc::chern::{
    c1_log_abar, ch_log_cotangent, ch_structure_sheaves, ch_tangent_ag, ch_tangent_moduli, chern_tangent_moduli,
    reduce_hodge, ChernError, HodgeExpression, LogDivisor,
};
use tautcalc::tautring::{one_edge_graphs, Ambient, DecoratedGraph, Policy, TautClass};

fn ct(g: u32, n: usize) -> Ambient {
    Ambient::mgn(g, n, Policy::CompactType).unwrap()
}

fn generator(a: &Ambient, s: &str, c: Rational) -> TautClass {
    TautClass::generator(a, s.parse::<DecoratedGraph>().unwrap(), c).unwrap()
}

fn kappa_coeff(c: &TautClass, i: u32) -> Rational {
    let k = TautClass::kappa(c.ambient(), 0, i);
    let (g, _) = k.terms().next().unwrap();
    c.coeff(g)
}

#[test]
fn chiodo_coefficients() {
    let m5 = ct(5, 0);
    let ch2 = ch_log_cotangent(&m5, 2).unwrap().restrict_interior();
    assert_eq!(ch2, TautClass::kappa(&m5, 0, 2).scale(&rat(1, 2)));
    // B_2(x) = x^2 - x + 1/6 at x = 2, over 2!
    let b2 = (rint(4) - rint(2) + rat(1, 6)) / rint(2);
    assert_eq!(kappa_coeff(&ch_log_cotangent(&m5, 1).unwrap(), 1), b2);
    assert_eq!(b2, rat(13, 12));
    let t3 = ch_tangent_moduli(&m5, 3).unwrap().restrict_interior();
    assert_eq!(t3, TautClass::kappa(&m5, 0, 3).scale(&rat(-119, 720)));
    assert_eq!(ch_log_cotangent(&m5, 0), Err(ChernError::ZeroDegree));
}

#[test]
fn structure_sheaves() {
    let m4 = ct(4, 0);
    assert_eq!(ch_structure_sheaves(&m4, 1).unwrap(), TautClass::delta(&m4));
    assert!(ch_structure_sheaves(&m4, 0).unwrap().is_zero());
    let ch2 = ch_structure_sheaves(&m4, 2).unwrap();
    let mut expected = TautClass::zero(&m4);
    for (g, w) in one_edge_graphs(&m4, 0) {
        for side in 0..2 {
            let mut d = g.clone();
            d.edges[0].end_mut(side).psi = 1;
            expected = expected.add(&TautClass::generator(&m4, d, &w / rint(2)).unwrap());
        }
    }
    assert_eq!(ch2, expected);
    assert_eq!(ch2, generator(&m4, "V 1 3; E 0-1; L ; decor h0.0:psi^1", rat(1, 2))
        .add(&generator(&m4, "V 1 3; E 0-1; L ; decor h0.1:psi^1", rat(1, 2)))
        .add(&generator(&m4, "V 2 2; E 0-1; L ; decor h0.0:psi^1", rat(1, 2))));
}

fn c1_closed_form(a: &Ambient) -> TautClass {
    TautClass::delta(a).scale(&rint(2)).sub(&TautClass::lambda(a, 0, 1).scale(&rint(13))).sub(&TautClass::psi_sum(a, 0))
}

#[test]
fn first_chern_class_examples() {
    let m4 = ct(4, 0);
    assert_eq!(chern_tangent_moduli(&m4, 1).unwrap()[0], c1_closed_form(&m4));
    let a = Ambient::single(3, &["q", "y"], Policy::CompactType).unwrap();
    let expected = TautClass::delta(&a)
        .scale(&rint(2))
        .sub(&TautClass::lambda(&a, 0, 1).scale(&rint(13)))
        .sub(&TautClass::psi(&a, "q", 1).unwrap())
        .sub(&TautClass::psi(&a, "y", 1).unwrap());
    assert_eq!(chern_tangent_moduli(&a, 1).unwrap()[0], expected);
}

#[test]
fn first_chern_class_grid() {
    for g in 0..=5u32 {
        for n in 0..=2usize {
            if 2 * g as i64 - 2 + n as i64 <= 0 {
                continue;
            }
            let Ok(a) = Ambient::mgn(g, n, Policy::CompactType) else { continue };
            let c1 = chern_tangent_moduli(&a, 1).unwrap().remove(0);
            assert_eq!(c1, c1_closed_form(&a), "g = {g}, n = {n}");
            let other = ch_log_cotangent(&a, 1).unwrap().sub(&ch_structure_sheaves(&a, 1).unwrap()).neg().kappa1_expand();
            assert_eq!(other, c1);
        }
    }
}

#[test]
fn second_chern_class_genus4() {
    let m4 = ct(4, 0);
    let c2 = chern_tangent_moduli(&m4, 2).unwrap().remove(1);
    assert_eq!(kappa_coeff(&c2, 2), rat(-1, 2));
    assert_ne!(kappa_coeff(&c2, 2), rat(-1, 3));
    let l = TautClass::lambda(&m4, 0, 1).scale(&rint(13)).sub(&TautClass::delta(&m4).scale(&rint(2)));
    let expected = TautClass::kappa(&m4, 0, 2)
        .scale(&rat(-1, 2))
        .add(&l.multiply(&l).unwrap().scale(&rat(1, 2)))
        .add(&generator(&m4, "V 1 3; E 0-1; L ; decor h0.0:psi^1", rat(1, 2)))
        .add(&generator(&m4, "V 1 3; E 0-1; L ; decor h0.1:psi^1", rat(1, 2)))
        .add(&generator(&m4, "V 2 2; E 0-1; L ; decor h0.0:psi^1", rat(1, 2)));
    assert_eq!(c2, expected);
    assert!(matches!(chern_tangent_moduli(&m4, 4), Err(ChernError::DegreeBeyond(4))));
}

fn hodge(terms: &[(&[(u32, u32)], Rational)], g: u32) -> HodgeExpression {
    let mut e = HodgeExpression { g, poly: Default::default(), reduced: false };
    for (mono, c) in terms {
        let mut exps = vec![0u32; 8];
        for &(i, k) in *mono {
            exps[i as usize - 1] += k;
        }
        e.poly.add_term(tautcalc::algebra::Monomial::new(exps), c.clone());
    }
    e
}

#[test]
fn abelian_tangent_examples() {
    for g in 1..=7 {
        let ch1 = ch_tangent_ag(g, 1, false).unwrap();
        assert_eq!(ch1.poly, hodge(&[(&[(1, 1)], rint(-(g as i64) - 1))], g).poly);
    }
    for g in 2..=6 {
        assert_eq!(ch_tangent_ag(g, 2, true).unwrap().poly, hodge(&[(&[(2, 1)], Rational::one())], g).poly);
    }
    let raw = ch_tangent_ag(5, 3, false).unwrap();
    let expected = hodge(&[(&[(1, 3)], rat(-12, 6)), (&[(1, 1), (2, 1)], rat(33, 6)), (&[(3, 1)], rat(-27, 6))], 5);
    assert_eq!(raw.poly, expected.poly);
}

fn elementary_c(roots: &[Complex64], k: usize) -> Complex64 {
    let mut e = vec![Complex64::new(0.0, 0.0); k + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for r in roots {
        for j in (1..=k).rev() {
            let prev = e[j - 1];
            e[j] += prev * r;
        }
    }
    e[k]
}

fn eval(e: &HodgeExpression, roots: &[Complex64]) -> Complex64 {
    let lambdas: Vec<Complex64> = (1..=e.g as usize).map(|i| elementary_c(roots, i)).collect();
    e.poly
        .terms()
        .map(|(m, c)| {
            let mut v = Complex64::new(c.to_f64().unwrap(), 0.0);
            for (i, &k) in m.exps().iter().enumerate() {
                v *= lambdas[i].powu(k);
            }
            v
        })
        .sum()
}

// ch_m(S^2 E^v) summed over explicit roots.
fn ch_from_roots(roots: &[Complex64], m: u32) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..roots.len() {
        for j in i..roots.len() {
            acc += (-(roots[i] + roots[j])).powu(m);
        }
    }
    acc / (1..=m).map(f64::from).product::<f64>()
}

#[test]
fn reduced_forms_agree_where_even_power_sums_vanish() {
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    for g in 3..=6u32 {
        let mut roots = vec![Complex64::new(0.7, 0.0), 0.7 * w, 0.7 * w * w];
        if g >= 6 {
            roots.extend([Complex64::new(-1.3, 0.0), -1.3 * w, -1.3 * w * w]);
        }
        roots.resize(g as usize, Complex64::new(0.0, 0.0));
        for m in 1..=4 {
            let raw = ch_tangent_ag(g, m, false).unwrap();
            let red = reduce_hodge(&raw).unwrap();
            assert!(red.reduced);
            let (a, b) = (eval(&raw, &roots), eval(&red, &roots));
            assert!((a - b).norm() < 1e-9, "g = {g}, m = {m}: {a} vs {b}");
        }
    }
}

#[test]
fn log_abar() {
    let c = c1_log_abar(4);
    assert_eq!(c, LogDivisor { lambda1: rint(5), boundary: rint(-1) });
    assert_eq!(c.to_string(), "5*lambda1 - D");
    assert_eq!(c.negate().to_string(), "-5*lambda1 + D");
    let m4 = Ambient::mgn(4, 0, Policy::Stable).unwrap();
    let pulled = c.pullback_torelli(&m4);
    assert_eq!(pulled, TautClass::lambda(&m4, 0, 1).scale(&rint(5)).sub(&TautClass::delta_irr(&m4, 0)));
}

fn small_roots() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), 1..=6)
}

proptest! {
    #[test]
    fn abelian_raw_matches_roots(rs in small_roots(), m in 1u32..=4) {
        let roots: Vec<Complex64> = rs.iter().map(|&(p, q)| Complex64::new(p as f64 / q as f64, 0.0)).collect();
        let g = roots.len() as u32;
        let raw = ch_tangent_ag(g, m, false).unwrap();
        let (a, b) = (eval(&raw, &roots), ch_from_roots(&roots, m));
        prop_assert!((a - b).norm() < 1e-8 * (1.0 + b.norm()), "{} vs {}", a, b);
    }
}
