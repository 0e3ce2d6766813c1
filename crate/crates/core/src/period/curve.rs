use std::f64::consts::PI;

use num_complex::Complex64;

use super::PeriodError;

type C = Complex64;

/// Reference samples per path piece used for sheet tracking.
pub const TRACK_SAMPLES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    Upper,
    Lower,
}

impl Sheet {
    pub fn sign(self) -> f64 {
        match self {
            Sheet::Upper => 1.0,
            Sheet::Lower => -1.0,
        }
    }
}

/// `Y² = Π (x - e_k)` with six distinct branch points, cut along
/// `[e_1, e_2]`, `[e_3, e_4]`, `[e_5, e_6]` after sorting by real part.
///
/// The upper branch is the principal square root at the base point `0`,
/// continued through the upper half plane.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticCurve {
    pub roots: [C; 6],
    pub sheet: Sheet,
    pub clearance: f64,
}

impl HyperellipticCurve {
    pub fn new(roots: [C; 6]) -> Result<Self, PeriodError> {
        let mut roots = roots;
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        for i in 0..6 {
            for j in i + 1..6 {
                if (roots[i] - roots[j]).norm() < 1e-9 {
                    return Err(PeriodError::DegenerateCurve(format!("repeated branch point {}", roots[i])));
                }
            }
        }
        if roots.iter().any(|r| r.norm() < 1e-9) {
            return Err(PeriodError::DegenerateCurve("base point 0 is a branch point".into()));
        }
        Ok(Self { roots, sheet: Sheet::Upper, clearance: 1e-3 })
    }

    pub fn real(roots: [f64; 6]) -> Result<Self, PeriodError> {
        Self::new(roots.map(|r| C::new(r, 0.0)))
    }

    /// `C_1`: branch points `1, ..., 6`.
    pub fn base_c1() -> Self {
        Self::real([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).expect("distinct")
    }

    /// `C_2`: branch points `1, 2, 3, 4, 5, 7`.
    pub fn base_c2() -> Self {
        Self::real([1.0, 2.0, 3.0, 4.0, 5.0, 7.0]).expect("distinct")
    }

    pub fn with_sheet(mut self, sheet: Sheet) -> Self {
        self.sheet = sheet;
        self
    }

    pub fn is_real(&self) -> bool {
        self.roots.iter().all(|r| r.im == 0.0)
    }

    pub fn real_roots(&self) -> Result<[f64; 6], PeriodError> {
        if !self.is_real() {
            return Err(PeriodError::Geometry("cycles are built for real branch points only".into()));
        }
        Ok(self.roots.map(|r| r.re))
    }

    pub fn poly(&self, z: C) -> C {
        self.roots.iter().map(|r| z - r).product()
    }

    pub fn poly_deriv(&self, z: C) -> C {
        (0..6)
            .map(|i| (0..6).filter(|&j| j != i).map(|j| z - self.roots[j]).product::<C>())
            .sum()
    }

    /// Polynomial coefficients of `Π (x - e_k)`, constant term first.
    pub fn coefficients(&self) -> Vec<C> {
        let mut c = vec![C::new(1.0, 0.0)];
        for r in &self.roots {
            let mut next = vec![C::new(0.0, 0.0); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        c
    }

    pub fn distance_to_branch(&self, z: C) -> f64 {
        self.roots.iter().map(|r| (z - r).norm()).fold(f64::INFINITY, f64::min)
    }

    /// `Y(0)` on the configured sheet.
    pub fn y_base(&self) -> C {
        self.poly(C::new(0.0, 0.0)).sqrt() * self.sheet.sign()
    }

    /// Square root of `P(z)` with the sign closest to `reference`.
    pub fn y_near(&self, z: C, reference: C) -> C {
        let s = self.poly(z).sqrt();
        if (s - reference).norm() <= (s + reference).norm() {
            s
        } else {
            -s
        }
    }

    /// Continues `Y` from `(start, y_start)` through the points of `pts`.
    pub fn continue_along(&self, y_start: C, pts: impl IntoIterator<Item = C>) -> Result<C, PeriodError> {
        let mut y = y_start;
        for z in pts {
            if self.distance_to_branch(z) < self.clearance {
                return Err(PeriodError::Clearance { z, clearance: self.clearance });
            }
            y = self.y_near(z, y);
        }
        Ok(y)
    }

    /// `Y(z)` on the configured sheet, continued from `0` along
    /// `0 → iH → Re z + iH → z` with `H = max(1, Im z)`.
    pub fn y_at(&self, z: C) -> Result<C, PeriodError> {
        let h = 1.0f64.max(z.im + 1.0);
        let corners = [C::new(0.0, 0.0), C::new(0.0, h), C::new(z.re, h), z];
        let n = TRACK_SAMPLES;
        let pts = corners.windows(2).flat_map(|w| {
            let (a, b) = (w[0], w[1]);
            (1..=n).map(move |k| a + (b - a) * (k as f64 / n as f64))
        });
        self.continue_along(self.y_base(), pts)
    }

    /// Taylor coefficients `Y_0..Y_m` of `Y` at `0` on the configured sheet.
    pub fn y_series_at_base(&self, m: usize) -> Vec<C> {
        let p = self.coefficients();
        let mut y = vec![self.y_base()];
        for n in 1..=m {
            let mut acc = p.get(n).copied().unwrap_or_default();
            for k in 1..n {
                acc -= y[k] * y[n - k];
            }
            y.push(acc / (2.0 * y[0]));
        }
        y
    }
}

/// Piece of a parametrized contour, `s ∈ [0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum PathPiece {
    Segment { from: C, to: C },
    /// `center + a cos θ + i b sin θ` for `θ` from `theta0` to `theta1`.
    Ellipse { center: C, a: f64, b: f64, theta0: f64, theta1: f64 },
}

impl PathPiece {
    pub fn point(&self, s: f64) -> C {
        match *self {
            PathPiece::Segment { from, to } => from + (to - from) * s,
            PathPiece::Ellipse { center, a, b, theta0, theta1 } => {
                let t = theta0 + (theta1 - theta0) * s;
                center + C::new(a * t.cos(), b * t.sin())
            }
        }
    }

    pub fn deriv(&self, s: f64) -> C {
        match *self {
            PathPiece::Segment { from, to } => to - from,
            PathPiece::Ellipse { a, b, theta0, theta1, .. } => {
                let t = theta0 + (theta1 - theta0) * s;
                C::new(-a * t.sin(), b * t.cos()) * (theta1 - theta0)
            }
        }
    }

    /// Full ellipse starting and ending at the top point.
    pub fn loop_around(center: C, a: f64, b: f64, clockwise: bool) -> Self {
        let (theta0, theta1) = if clockwise { (PI / 2.0, -1.5 * PI) } else { (PI / 2.0, 2.5 * PI) };
        PathPiece::Ellipse { center, a, b, theta0, theta1 }
    }
}

/// A path together with branch-consistent reference values of `Y`.
#[derive(Clone, Debug)]
pub struct TrackedPath {
    pub pieces: Vec<PathPiece>,
    reference: Vec<Vec<C>>,
    curve: HyperellipticCurve,
}

impl TrackedPath {
    pub fn curve(&self) -> &HyperellipticCurve {
        &self.curve
    }

    /// `Y` at parameter `s` of piece `i`.
    pub fn y(&self, i: usize, s: f64) -> C {
        let k = ((s * TRACK_SAMPLES as f64).round() as usize).min(TRACK_SAMPLES);
        self.curve.y_near(self.pieces[i].point(s), self.reference[i][k])
    }

    pub fn start_value(&self) -> C {
        self.reference[0][0]
    }

    pub fn end_value(&self) -> C {
        *self.reference.last().and_then(|r| r.last()).expect("non-empty path")
    }

    pub fn min_clearance(&self) -> f64 {
        self.pieces
            .iter()
            .flat_map(|p| (0..=TRACK_SAMPLES).map(move |k| p.point(k as f64 / TRACK_SAMPLES as f64)))
            .map(|z| self.curve.distance_to_branch(z))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Samples `Y` continuously along `pieces`, starting from `y_start` at the
/// first point.
pub fn y_on_path(curve: &HyperellipticCurve, pieces: Vec<PathPiece>, y_start: C) -> Result<TrackedPath, PeriodError> {
    if pieces.is_empty() {
        return Err(PeriodError::Geometry("empty path".into()));
    }
    let mut y = y_start;
    let mut reference = Vec::with_capacity(pieces.len());
    for p in &pieces {
        let mut row = Vec::with_capacity(TRACK_SAMPLES + 1);
        for k in 0..=TRACK_SAMPLES {
            let z = p.point(k as f64 / TRACK_SAMPLES as f64);
            if curve.distance_to_branch(z) < curve.clearance {
                return Err(PeriodError::Clearance { z, clearance: curve.clearance });
            }
            y = curve.y_near(z, y);
            row.push(y);
        }
        reference.push(row);
    }
    Ok(TrackedPath { pieces, reference, curve: curve.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_value() {
        let c = HyperellipticCurve::base_c1();
        assert!((c.y_base() * c.y_base() - C::new(720.0, 0.0)).norm() < 1e-9);
        assert!(c.y_base().re > 0.0);
    }

    #[test]
    fn monodromy() {
        let c = HyperellipticCurve::base_c1();
        let one = PathPiece::loop_around(C::new(1.0, 0.0), 0.3, 0.3, false);
        let start = c.y_at(one.point(0.0)).unwrap();
        let t = y_on_path(&c, vec![one], start).unwrap();
        assert!((t.end_value() + start).norm() < 1e-9 * start.norm());
        let two = PathPiece::loop_around(C::new(1.5, 0.0), 0.8, 0.3, false);
        let start = c.y_at(two.point(0.0)).unwrap();
        let t = y_on_path(&c, vec![two], start).unwrap();
        assert!((t.end_value() - start).norm() < 1e-9 * start.norm());
    }

    #[test]
    fn series() {
        let c = HyperellipticCurve::base_c1();
        let ys = c.y_series_at_base(3);
        let z = C::new(0.01, 0.005);
        let approx: C = ys.iter().enumerate().map(|(k, a)| a * z.powu(k as u32)).sum();
        assert!((approx - c.y_at(z).unwrap()).norm() < 1e-6);
    }
}
