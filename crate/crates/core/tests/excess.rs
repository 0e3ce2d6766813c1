use num_bigint::BigInt;
use proptest::prelude::*;

use tautcalc::algebra::rint;
use tautcalc::excess::{
    binomial_identity_check, chern_quotient_degree, multiplicity, multiplicity_shifted, oracle_multiplicity,
    verify_residual_model, ExcessDims, ExcessError, LocalModel, Sub,
};

fn m(a: u32, b: u32) -> BigInt {
    multiplicity(ExcessDims { d_a: a, d_b: b })
}

fn choose(n: i128, k: i128) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r = 1i128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

// Direct evaluation of the closed sum in machine integers.
fn m_naive(a: i128, b: i128) -> i128 {
    let d = a + b;
    let s = |e: i128| if e % 2 == 0 { 1 } else { -1 };
    let mut acc = (1i128 << d) - 2;
    for k in 1..d {
        acc += s(k + 1) * ((1i128 << (d - k)) - 1) * choose(d, k) * (choose(k - 1, a - 1) * s(a) + choose(k - 1, b - 1) * s(b));
    }
    acc
}

#[test]
fn multiplicity_examples() {
    assert_eq!(m(1, 1), BigInt::from(-2));
    assert_eq!(m(2, 1), BigInt::from(-3));
    assert_eq!(m(3, 3), BigInt::from(-20));
}

#[test]
fn dimensions_must_be_positive() {
    assert_eq!(ExcessDims::new(0, 1), Err(ExcessError::Dimension(0, 1)));
    assert!(ExcessDims::new(1, -2).is_err());
}

#[test]
fn shifted() {
    assert_eq!(multiplicity_shifted(3, 3, 0).unwrap(), BigInt::from(-20));
    assert_eq!(multiplicity_shifted(3, 3, 1).unwrap(), BigInt::from(m_naive(2, 2)));
    assert_eq!(multiplicity_shifted(2, 1, 1), Err(ExcessError::Dimension(1, 0)));
}

#[test]
fn quotient_degrees() {
    assert_eq!(chern_quotient_degree(&LocalModel::b2(), Sub::A, 3).unwrap(), rint(42));
    assert_eq!(chern_quotient_degree(&LocalModel::b3(), Sub::B, 1).unwrap(), rint(2));
    let d = ExcessDims { d_a: 1, d_b: 1 };
    let same = LocalModel::new("same", 2, vec![1, 3], vec![1, 3], vec![1], d).unwrap();
    for k in 1..=2 {
        assert_eq!(chern_quotient_degree(&same, Sub::A, k).unwrap(), rint(0));
    }
    assert!(matches!(chern_quotient_degree(&same, Sub::A, 3), Err(ExcessError::DegreeTooLarge { .. })));
}

#[test]
fn oracle_on_models() {
    assert_eq!(oracle_multiplicity(&LocalModel::b2()).unwrap(), BigInt::from(-20));
    assert_eq!(oracle_multiplicity(&LocalModel::b3()).unwrap(), BigInt::from(-3));
    assert_eq!(oracle_multiplicity(&LocalModel::b4()).unwrap(), BigInt::from(-2));
    for model in LocalModel::builtins() {
        assert_eq!(oracle_multiplicity(&model).unwrap(), multiplicity(model.dims), "{}", model.name);
    }
}

#[test]
fn model_validation() {
    let d = ExcessDims { d_a: 1, d_b: 1 };
    assert!(matches!(LocalModel::new("x", 2, vec![1], vec![], vec![], d), Err(ExcessError::Rank { .. })));
    assert!(matches!(LocalModel::new("x", 3, vec![1; 3], vec![], vec![], d), Err(ExcessError::DimensionSum(..))));
    assert!(matches!(LocalModel::builtin("b9"), Err(ExcessError::UnknownModel(_))));
}

#[test]
fn binomial_identity() {
    assert!(binomial_identity_check(3, 1));
    for d in 1..=12 {
        assert!(binomial_identity_check(d, d - 1));
        for k in 0..d {
            assert!(binomial_identity_check(d, k), "d = {d}, k = {k}");
        }
    }
    assert!(!binomial_identity_check(3, 3));
}

#[test]
fn residual_model() {
    let r = verify_residual_model().unwrap();
    assert_eq!(r.total, BigInt::from(8));
    assert_eq!(r.divisor_part, rint(7));
    assert_eq!(r.residual_part, rint(1));
}

proptest! {
    #[test]
    fn formula_matches_naive_sum(a in 1u32..=20, b in 1u32..=20) {
        prop_assert_eq!(m(a, b), BigInt::from(m_naive(a as i128, b as i128)));
    }

    #[test]
    fn symmetric(a in 1u32..=8, b in 1u32..=8) {
        prop_assert_eq!(m(a, b), m(b, a));
    }

    #[test]
    fn shift_depends_on_difference(a in 1i64..=6, b in 1i64..=6, k in 0i64..=6) {
        prop_assert_eq!(multiplicity_shifted(a + k, b + k, k).unwrap(), m(a as u32, b as u32));
    }
}
