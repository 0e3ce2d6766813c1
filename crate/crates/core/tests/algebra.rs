use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use tautcalc::algebra::{
    bernoulli_polynomial, bernoulli_polynomial_capped, ch_from_chern, chern_from_ch, fmt_rational, parse_rational, rat,
    rint, AlgebraError, Poly, Rational, TruncatedSeries,
};

fn series(c: &[i64], cap: usize) -> TruncatedSeries {
    TruncatedSeries::from_ints(c, cap).unwrap()
}

#[test]
fn bernoulli_examples() {
    assert_eq!(bernoulli_polynomial(1, &rint(1)).unwrap(), rat(1, 2));
    assert_eq!(bernoulli_polynomial(2, &rint(2)).unwrap(), rat(13, 6));
    assert_eq!(bernoulli_polynomial(3, &rint(2)).unwrap(), rint(3));
}

#[test]
fn bernoulli_cap() {
    assert!(matches!(bernoulli_polynomial(33, &rint(0)), Err(AlgebraError::DegreeLimit { .. })));
    assert!(bernoulli_polynomial_capped(5, &rint(0), 4).is_err());
}

// B_m(x+1) - B_m(x) = m x^{m-1} determines B_m up to its mean, which is zero on [0,1].
#[test]
fn bernoulli_difference_equation() {
    for m in 1..=12usize {
        for x in [rint(0), rint(2), rat(1, 3), rat(-5, 2)] {
            let lhs = bernoulli_polynomial(m, &(&x + rint(1))).unwrap() - bernoulli_polynomial(m, &x).unwrap();
            let mut rhs = rint(m as i64);
            for _ in 0..m - 1 {
                rhs *= &x;
            }
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }
}

#[test]
fn series_mul_examples() {
    let a = series(&[1, 1], 2).mul(&series(&[1, -1], 2)).unwrap();
    assert_eq!(a, series(&[1, 0, -1], 2));
    let c = TruncatedSeries::chern_polynomial(&[2, 2, 2], 3).unwrap();
    assert_eq!(c.mul(&c).unwrap(), series(&[1, 12, 60, 160], 3));
    let p = series(&[1, 4, 4], 2).mul(&series(&[1, -2, 3], 2)).unwrap();
    assert_eq!(p.coeff(1).unwrap(), &rint(2));
}

#[test]
fn series_errors() {
    assert_eq!(series(&[1], 2).mul(&series(&[1], 3)), Err(AlgebraError::CapMismatch(2, 3)));
    assert_eq!(series(&[0, 1], 3).inv(), Err(AlgebraError::NotInvertible));
    assert!(series(&[1], 2).coeff(3).is_err());
}

#[test]
fn series_inv_examples() {
    assert_eq!(series(&[1, 1], 3).inv().unwrap(), series(&[1, -1, 1, -1], 3));
    let cube = series(&[1, 1], 3).pow(3).unwrap();
    assert_eq!(cube.inv().unwrap(), series(&[1, -3, 6, -10], 3));
    assert_eq!(TruncatedSeries::one(4).inv().unwrap(), TruncatedSeries::one(4));
}

#[test]
fn chern_from_ch_examples() {
    let zero = vec![Poly::zero(); 3];
    assert!(chern_from_ch(&zero, 3).unwrap().iter().all(Poly::is_zero));
    let (a, b) = (Poly::var(0), Poly::var(1));
    let c = chern_from_ch(&[a.clone(), b.clone()], 2).unwrap();
    let expected = a.pow(2).minus(&b.scale_by(&rint(2))).scale_by(&rat(1, 2));
    assert_eq!(c[1], expected);
    assert!(matches!(chern_from_ch(&[a], 2), Err(AlgebraError::MissingCh { given: 1, needed: 2 })));
}

#[test]
fn rational_format() {
    assert_eq!(fmt_rational(&rat(-6, 4)), "-3/2");
    assert_eq!(fmt_rational(&rint(7)), "7");
    assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
    assert!(parse_rational("1/0").is_err());
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn constant(r: &Rational) -> Poly {
    Poly::constant(r.clone())
}

// Elementary symmetric functions of explicit roots.
fn elementary(roots: &[Rational], k: usize) -> Rational {
    let mut e = vec![Rational::zero(); k + 1];
    e[0] = Rational::one();
    for r in roots {
        for j in (1..=k).rev() {
            let prev = e[j - 1].clone();
            e[j] += prev * r;
        }
    }
    e[k].clone()
}

fn power_sum_ch(roots: &[Rational], k: usize) -> Rational {
    let mut fact = Rational::one();
    for i in 1..=k {
        fact *= rint(i as i64);
    }
    roots.iter().map(|r| (0..k).fold(Rational::one(), |acc, _| acc * r)).sum::<Rational>() / fact
}

proptest! {
    #[test]
    fn series_inverse_law(coeffs in prop::collection::vec(rational(), 1..9)) {
        let cap = coeffs.len() - 1;
        let mut coeffs = coeffs;
        if coeffs[0].is_zero() {
            coeffs[0] = Rational::one();
        }
        let s = TruncatedSeries::new(coeffs, cap).unwrap();
        prop_assert!(s.mul(&s.inv().unwrap()).unwrap().is_one());
    }

    #[test]
    fn series_mul_matches_naive(a in prop::collection::vec(rational(), 5), b in prop::collection::vec(rational(), 5)) {
        let cap = 4;
        let prod = TruncatedSeries::new(a.clone(), cap).unwrap().mul(&TruncatedSeries::new(b.clone(), cap).unwrap()).unwrap();
        for k in 0..=cap {
            let naive: Rational = (0..=k).map(|i| &a[i] * &b[k - i]).sum();
            prop_assert_eq!(prod.coeff(k).unwrap(), &naive);
        }
    }

    #[test]
    fn bernoulli_endpoints(m in 2usize..=20) {
        prop_assert_eq!(bernoulli_polynomial(m, &rint(1)).unwrap(), bernoulli_polynomial(m, &rint(0)).unwrap());
    }

    #[test]
    fn newton_against_roots(roots in prop::collection::vec(rational(), 1..5)) {
        let k = 5;
        let ch: Vec<Poly> = (1..=k).map(|i| constant(&power_sum_ch(&roots, i))).collect();
        let c = chern_from_ch(&ch, k).unwrap();
        for i in 1..=k {
            prop_assert_eq!(&c[i - 1], &constant(&elementary(&roots, i)));
        }
    }

    #[test]
    fn newton_round_trip(c in prop::collection::vec(rational(), 5)) {
        let c: Vec<Poly> = c.iter().map(constant).collect();
        let ch = ch_from_chern(&c, 5).unwrap();
        prop_assert_eq!(chern_from_ch(&ch, 5).unwrap(), c);
    }
}
