use num_complex::Complex64;

use super::PeriodError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Maximum number of subintervals before giving up.
pub const SUBDIVISION_BUDGET: usize = 4000;

fn gk15<F: FnMut(f64) -> Result<Complex64, PeriodError>>(
    f: &mut F,
    a: f64,
    b: f64,
) -> Result<(Complex64, f64), PeriodError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let (f1, f2) = (f(c - x)?, f(c + x)?);
        kron += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    Ok((kron * h, ((kron - gauss) * h).norm()))
}

/// Adaptive Gauss–Kronrod (7, 15) on `[a, b]` with absolute tolerance
/// `max(tol, tol * |I|)`. Intervals are refined in a fixed order.
pub fn adaptive<F: FnMut(f64) -> Result<Complex64, PeriodError>>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(Complex64, f64), PeriodError> {
    let mut intervals = vec![(a, b, gk15(&mut f, a, b)?)];
    loop {
        let total: Complex64 = intervals.iter().map(|i| i.2 .0).sum();
        let err: f64 = intervals.iter().map(|i| i.2 .1).sum();
        if !(total.is_finite() && err.is_finite()) {
            return Err(PeriodError::NoConvergence { err, tol });
        }
        if err <= tol.max(tol * total.norm()) {
            return Ok((total, err));
        }
        if intervals.len() >= SUBDIVISION_BUDGET {
            return Err(PeriodError::NoConvergence { err, tol });
        }
        let (k, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .expect("non-empty");
        let (lo, hi, _) = intervals.remove(k);
        let mid = 0.5 * (lo + hi);
        let left = (lo, mid, gk15(&mut f, lo, mid)?);
        let right = (mid, hi, gk15(&mut f, mid, hi)?);
        intervals.insert(k, right);
        intervals.insert(k, left);
    }
}

/// Trapezoid rule with `n` points for a smooth periodic integrand on `[0, 1)`.
/// The error estimate compares with the rule on every other point.
pub fn periodic_trapezoid<F: FnMut(f64) -> Result<Complex64, PeriodError>>(
    mut f: F,
    n: usize,
) -> Result<(Complex64, f64), PeriodError> {
    let vals: Vec<Complex64> = (0..n).map(|k| f(k as f64 / n as f64)).collect::<Result<_, _>>()?;
    let full: Complex64 = vals.iter().sum::<Complex64>() / n as f64;
    let half: Complex64 = vals.iter().step_by(2).sum::<Complex64>() / (n / 2) as f64;
    Ok((full, (full - half).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let (v, _) = adaptive(|x| Ok(Complex64::new(x.powi(5), 0.0)), 0.0, 1.0, 1e-12).unwrap();
        assert!((v.re - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn budget() {
        let r = adaptive(|x| Ok(Complex64::new(1.0 / (x * x), 0.0)), -1.0, 1.0, 1e-10);
        assert!(matches!(r, Err(PeriodError::NoConvergence { .. })), "{r:?}");
    }

    #[test]
    fn integrable_endpoint_singularity() {
        let (v, _) = adaptive(|x| Ok(Complex64::new(1.0 / x.sqrt(), 0.0)), 0.0, 1.0, 1e-10).unwrap();
        assert!((v.re - 2.0).abs() < 1e-8);
    }
}
