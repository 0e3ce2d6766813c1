use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::curve::{y_on_path, HyperellipticCurve, PathPiece, TrackedPath, TRACK_SAMPLES};
use super::quad::{adaptive, periodic_trapezoid};
use super::PeriodError;

type C = Complex64;

const TRAPEZOID_START: usize = 64;
const TRAPEZOID_MAX: usize = 1 << 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadRule {
    /// Adaptive Gauss–Kronrod over the real segments between branch points,
    /// with `x = m - h cos θ` absorbing the endpoint singularities.
    Segments,
    /// Adaptive Gauss–Kronrod along the elliptic loops.
    LoopsAdaptive,
    /// Periodic trapezoid rule along the elliptic loops.
    LoopsTrapezoid,
}

impl fmt::Display for QuadRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadRule::Segments => "segments",
            QuadRule::LoopsAdaptive => "loops-adaptive",
            QuadRule::LoopsTrapezoid => "loops-trapezoid",
        })
    }
}

/// How the inner integral over `|z_1| = ε` in `G_i` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerRule {
    /// `2πi` times the `z_1²` Taylor coefficient.
    Residue,
    /// Trapezoid rule with this many nodes on the circle.
    Circle(usize),
}

impl fmt::Display for InnerRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerRule::Residue => f.write_str("residue"),
            InnerRule::Circle(n) => write!(f, "circle{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodConfig {
    pub tol: f64,
    pub eps: f64,
    pub clearance: f64,
    pub margin: f64,
    /// Loop radius as a fraction of the smallest gap between branch points.
    pub radius: f64,
    pub rule: QuadRule,
    /// Second rule used for the cross-check in [`rho4`].
    pub cross_rule: QuadRule,
    pub inner: InnerRule,
    /// Tolerance of the coarse evaluation in the resolution ladder.
    pub coarse_tol: f64,
}

impl Default for PeriodConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            eps: 0.05,
            clearance: 1e-3,
            margin: 10.0,
            radius: 0.35,
            rule: QuadRule::Segments,
            cross_rule: QuadRule::LoopsTrapezoid,
            inner: InnerRule::Residue,
            coarse_tol: 1e-7,
        }
    }
}

impl PeriodConfig {
    pub fn with_rule(&self, rule: QuadRule) -> Self {
        Self { rule, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycleLabel {
    A1,
    A2,
    B1,
    B2,
}

impl fmt::Display for CycleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleLabel::A1 => "A1",
            CycleLabel::A2 => "A2",
            CycleLabel::B1 => "B1",
            CycleLabel::B2 => "B2",
        })
    }
}

/// A homology class given both as a sheet-tracked loop and as a signed sum of
/// real segments `∫_α^β f(x) dx / Y(x + i0)` on the configured sheet.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub label: CycleLabel,
    pub path: TrackedPath,
    pub segments: Vec<(f64, f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct Cycles {
    pub a: [Cycle; 2],
    pub b: [Cycle; 2],
}

fn make_loop(
    curve: &HyperellipticCurve,
    label: CycleLabel,
    lo: f64,
    hi: f64,
    r: f64,
    clockwise: bool,
    segments: Vec<(f64, f64, f64)>,
) -> Result<Cycle, PeriodError> {
    let piece = PathPiece::loop_around(C::new(0.5 * (lo + hi), 0.0), 0.5 * (hi - lo) + r, r, clockwise);
    let start = curve.y_at(piece.point(0.0))?;
    let path = y_on_path(curve, vec![piece], start)?;
    if (path.end_value() - start).norm() > 1e-8 * start.norm() {
        return Err(PeriodError::Geometry(format!("{label} does not close on the surface")));
    }
    Ok(Cycle { label, path, segments })
}

/// `A_1`, `A_2` clockwise around the first two cuts; `B_1` around
/// `e_2..e_5` and `B_2` around `e_4, e_5`, also clockwise. All loops start
/// at their top point on the configured sheet.
pub fn cycles(curve: &HyperellipticCurve, cfg: &PeriodConfig) -> Result<Cycles, PeriodError> {
    let e = curve.real_roots()?;
    let gap = e.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let r = cfg.radius * gap;
    if !(cfg.radius > 0.0 && cfg.radius < 0.5) {
        return Err(PeriodError::Geometry(format!("loop radius fraction {} outside (0, 0.5)", cfg.radius)));
    }
    let mut curve = curve.clone();
    curve.clearance = cfg.clearance;
    let a1 = make_loop(&curve, CycleLabel::A1, e[0], e[1], r, true, vec![(2.0, e[0], e[1])])?;
    let a2 = make_loop(&curve, CycleLabel::A2, e[2], e[3], r, true, vec![(2.0, e[2], e[3])])?;
    let b1 = make_loop(&curve, CycleLabel::B1, e[1], e[4], r, true, vec![(2.0, e[1], e[2]), (2.0, e[3], e[4])])?;
    let b2 = make_loop(&curve, CycleLabel::B2, e[3], e[4], r, true, vec![(2.0, e[3], e[4])])?;
    Ok(Cycles { a: [a1, a2], b: [b1, b2] })
}

/// Adaptive quadrature of `∫ f(z, Y(z)) dz` along a tracked path.
pub fn contour_integrate<F: Fn(C, C) -> C>(path: &TrackedPath, f: F, tol: f64) -> Result<(C, f64), PeriodError> {
    let mut total = C::new(0.0, 0.0);
    let mut err = 0.0;
    for (i, piece) in path.pieces.iter().enumerate() {
        let (v, e) = adaptive(|s| Ok(f(piece.point(s), path.y(i, s)) * piece.deriv(s)), 0.0, 1.0, tol)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

fn trapezoid_loop<F: Fn(C) -> C>(path: &TrackedPath, f: &F, tol: f64) -> Result<(C, f64), PeriodError> {
    let mut total = C::new(0.0, 0.0);
    let mut err = 0.0;
    for (i, piece) in path.pieces.iter().enumerate() {
        let mut n = TRAPEZOID_START;
        loop {
            let (v, e) = periodic_trapezoid(|s| Ok(f(piece.point(s)) / path.y(i, s) * piece.deriv(s)), n)?;
            if e <= tol.max(tol * v.norm()) {
                total += v;
                err += e;
                break;
            }
            if n >= TRAPEZOID_MAX {
                return Err(PeriodError::NoConvergence { err: e, tol });
            }
            n *= 2;
        }
    }
    Ok((total, err))
}

/// `∫_α^β f(x) dx / Y(x + i0)` with `Y` continued from the base point.
pub fn segment_integral<F: Fn(C) -> C>(
    curve: &HyperellipticCurve,
    alpha: f64,
    beta: f64,
    f: &F,
    tol: f64,
) -> Result<(C, f64), PeriodError> {
    let m = 0.5 * (alpha + beta);
    let h = 0.5 * (beta - alpha);
    let point = |t: f64| C::new(m - h * t.cos(), 0.0);
    // W = Y / sqrt((x - α)(β - x)), W² = -Q with Q the remaining four factors.
    let w2 = |z: C| -> C {
        -curve.roots.iter().filter(|r| (r.re - alpha).abs() > 1e-12 && (r.re - beta).abs() > 1e-12).map(|r| z - r).product::<C>()
    };
    let near = |z: C, reference: C| {
        let s = w2(z).sqrt();
        if (s - reference).norm() <= (s + reference).norm() {
            s
        } else {
            -s
        }
    };
    let y_mid = curve.y_at(C::new(m, 0.0))?;
    let w_mid = y_mid / h;
    let n = TRACK_SAMPLES;
    let mut reference = vec![C::new(0.0, 0.0); n + 1];
    reference[n / 2] = w_mid;
    for k in (0..n / 2).rev() {
        reference[k] = near(point(PI * k as f64 / n as f64), reference[k + 1]);
    }
    for k in n / 2 + 1..=n {
        reference[k] = near(point(PI * k as f64 / n as f64), reference[k - 1]);
    }
    adaptive(
        |t| {
            let z = point(t);
            let k = ((t / PI * n as f64).round() as usize).min(n);
            Ok(f(z) / near(z, reference[k]))
        },
        0.0,
        PI,
        tol,
    )
}

/// `∮ f(z) dz / Y` over a cycle with the chosen rule.
pub fn integrate_cycle<F: Fn(C) -> C>(cycle: &Cycle, f: F, rule: QuadRule, tol: f64) -> Result<(C, f64), PeriodError> {
    match rule {
        QuadRule::Segments => {
            let mut total = C::new(0.0, 0.0);
            let mut err = 0.0;
            for &(coef, lo, hi) in &cycle.segments {
                let (v, e) = segment_integral(cycle.path.curve(), lo, hi, &f, tol)?;
                total += v * coef;
                err += e * coef.abs();
            }
            Ok((total, err))
        }
        QuadRule::LoopsAdaptive => contour_integrate(&cycle.path, |z, y| f(z) / y, tol),
        QuadRule::LoopsTrapezoid => trapezoid_loop(&cycle.path, &f, tol),
    }
}

fn solve2(m: [[C; 2]; 2], rhs: [C; 2]) -> Result<[C; 2], PeriodError> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
    if det.norm() <= 1e-12 * scale * scale {
        return Err(PeriodError::Singular(det.norm()));
    }
    Ok([(rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det, (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det])
}

/// Periods of `dz/Y` and `z dz/Y` over the four cycles.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodTable {
    /// `a[i][j] = ∮_{A_i} z^j dz / Y`.
    pub a: [[C; 2]; 2],
    /// `b[i][j] = ∮_{B_i} z^j dz / Y`.
    pub b: [[C; 2]; 2],
    pub error: f64,
}

pub fn period_table(curve: &HyperellipticCurve, cyc: &Cycles, cfg: &PeriodConfig) -> Result<PeriodTable, PeriodError> {
    let mut t = PeriodTable { a: [[C::default(); 2]; 2], b: [[C::default(); 2]; 2], error: 0.0 };
    let _ = curve;
    for i in 0..2 {
        for j in 0..2 {
            let (v, e) = integrate_cycle(&cyc.a[i], |z| z.powu(j as u32), cfg.rule, cfg.tol)?;
            t.a[i][j] = v;
            t.error += e;
            let (v, e) = integrate_cycle(&cyc.b[i], |z| z.powu(j as u32), cfg.rule, cfg.tol)?;
            t.b[i][j] = v;
            t.error += e;
        }
    }
    Ok(t)
}

/// `v_1 = (a + bz) dz/Y`, `v_2 = (c + dz) dz/Y` dual to `A_1, A_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedBasis {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
    pub residual: f64,
    /// `|det| / (max |entry|)²` of the A-period matrix.
    pub conditioning: f64,
}

impl NormalizedBasis {
    pub fn det(&self) -> C {
        self.a * self.d - self.b * self.c
    }

    fn coeffs(&self, j: usize) -> [C; 2] {
        if j == 0 {
            [self.a, self.b]
        } else {
            [self.c, self.d]
        }
    }
}

fn basis_from_table(t: &PeriodTable) -> Result<NormalizedBasis, PeriodError> {
    let [v1, v2] = [solve2(t.a, [C::new(1.0, 0.0), C::default()])?, solve2(t.a, [C::default(), C::new(1.0, 0.0)])?];
    let scale = t.a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
    let det = t.a[0][0] * t.a[1][1] - t.a[0][1] * t.a[1][0];
    let mut nb = NormalizedBasis { a: v1[0], b: v1[1], c: v2[0], d: v2[1], residual: 0.0, conditioning: det.norm() / (scale * scale) };
    for i in 0..2 {
        for j in 0..2 {
            let [p, q] = nb.coeffs(j);
            let target = if i == j { 1.0 } else { 0.0 };
            nb.residual = nb.residual.max((p * t.a[i][0] + q * t.a[i][1] - target).norm());
        }
    }
    Ok(nb)
}

pub fn normalized_basis(curve: &HyperellipticCurve, cfg: &PeriodConfig) -> Result<NormalizedBasis, PeriodError> {
    let cyc = cycles(curve, cfg)?;
    basis_from_table(&period_table(curve, &cyc, cfg)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMatrix {
    pub tau: [[C; 2]; 2],
    pub error: f64,
}

impl PeriodMatrix {
    pub fn asymmetry(&self) -> f64 {
        (self.tau[0][1] - self.tau[1][0]).norm()
    }

    /// Eigenvalues of the symmetrized imaginary part.
    pub fn imag_eigenvalues(&self) -> [f64; 2] {
        let (p, r) = (self.tau[0][0].im, self.tau[1][1].im);
        let q = 0.5 * (self.tau[0][1].im + self.tau[1][0].im);
        let mean = 0.5 * (p + r);
        let disc = (0.25 * (p - r) * (p - r) + q * q).sqrt();
        [mean - disc, mean + disc]
    }
}

fn tau_from(t: &PeriodTable, nb: &NormalizedBasis) -> [[C; 2]; 2] {
    let mut tau = [[C::default(); 2]; 2];
    for (i, row) in tau.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let [p, q] = nb.coeffs(j);
            *x = p * t.b[i][0] + q * t.b[i][1];
        }
    }
    tau
}

/// `τ_ij = ∮_{B_i} v_j`.
pub fn period_matrix(curve: &HyperellipticCurve, cfg: &PeriodConfig) -> Result<PeriodMatrix, PeriodError> {
    let cyc = cycles(curve, cfg)?;
    let t = period_table(curve, &cyc, cfg)?;
    let nb = basis_from_table(&t)?;
    Ok(PeriodMatrix { tau: tau_from(&t, &nb), error: t.error })
}

/// Taylor coefficients in `z_1` of `h(z_1)`, `k(z_1)` at `z_1 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyCoeffs {
    pub h: Vec<C>,
    pub k: Vec<C>,
    /// `max_i |∮_{A_i} K_1|` at order 0.
    pub residual0: f64,
    pub error: f64,
}

impl CauchyCoeffs {
    pub fn h2(&self) -> C {
        self.h[2]
    }
    pub fn k2(&self) -> C {
        self.k[2]
    }
}

/// Expands `(y_1 + y)/(2(z - z_1) y)` in `z_1` and solves
/// `∮_{A_i} K_1(·, z_1) = 0` order by order up to `z_1^order`.
pub fn cauchy_kernel_coeffs_with(
    curve: &HyperellipticCurve,
    cyc: &Cycles,
    table: &PeriodTable,
    cfg: &PeriodConfig,
    order: usize,
) -> Result<CauchyCoeffs, PeriodError> {
    let ys = curve.y_series_at_base(order);
    // j[i][n] = ∮_{A_i} z^{-n-1} dz / y; the sheet-even part ∮ z^{-m-1} dz vanishes.
    let mut j = [vec![], vec![]];
    let mut error = table.error;
    for (i, ji) in j.iter_mut().enumerate() {
        for n in 0..=order {
            let (v, e) = integrate_cycle(&cyc.a[i], |z| z.powi(-(n as i32) - 1), cfg.rule, cfg.tol)?;
            ji.push(v);
            error += e;
        }
    }
    let mut out = CauchyCoeffs { h: vec![], k: vec![], residual0: 0.0, error };
    for m in 0..=order {
        let rhs: Vec<C> = (0..2).map(|i| (0..=m).map(|p| ys[p] * j[i][m - p]).sum::<C>() * 0.5).collect();
        let [h, k] = solve2(table.a, [-rhs[0], -rhs[1]])?;
        if m == 0 {
            out.residual0 = (0..2).map(|i| (rhs[i] + h * table.a[i][0] + k * table.a[i][1]).norm()).fold(0.0, f64::max);
        }
        out.h.push(h);
        out.k.push(k);
    }
    Ok(out)
}

pub fn cauchy_kernel_coeffs(curve: &HyperellipticCurve, cfg: &PeriodConfig) -> Result<CauchyCoeffs, PeriodError> {
    let cyc = cycles(curve, cfg)?;
    let table = period_table(curve, &cyc, cfg)?;
    cauchy_kernel_coeffs_with(curve, &cyc, &table, cfg, 2)
}

/// `h(z_1)`, `k(z_1)` at a point by direct normalization, with `y_1` on the
/// configured sheet near the base point.
pub fn cauchy_hk_at(cyc: &Cycles, table: &PeriodTable, z1: C, y1: C, cfg: &PeriodConfig) -> Result<[C; 2], PeriodError> {
    let mut rhs = [C::default(); 2];
    for (i, r) in rhs.iter_mut().enumerate() {
        let (v, _) = integrate_cycle(&cyc.a[i], |z| 1.0 / (z - z1), cfg.rule, cfg.tol)?;
        *r = -0.5 * y1 * v;
    }
    solve2(table.a, rhs)
}

/// Integrand of `G_i` at a point `(z, y)` of `B_i`: `2πi` times the
/// `z_1²`-coefficient of `K_1(z, z_1)`, excluding the exact term `z^{-3} dz / 2`.
pub fn g_density(ys: &[C], hk: &CauchyCoeffs, z: C, y: C) -> C {
    let series = (ys[0] / z.powu(3) + ys[1] / z.powu(2) + ys[2] / z) * 0.5;
    C::new(0.0, 2.0 * PI) * (series + hk.h2() + hk.k2() * z) / y
}

/// Trapezoid nodes on `|z_1| = ε` with `h(z_1)`, `k(z_1)` solved at each node.
#[derive(Clone, Debug)]
pub struct CircleNodes {
    /// `(z_1, y_1, h, k)`.
    pub nodes: Vec<(C, C, C, C)>,
}

impl CircleNodes {
    pub fn new(curve: &HyperellipticCurve, cyc: &Cycles, table: &PeriodTable, cfg: &PeriodConfig, n: usize) -> Result<Self, PeriodError> {
        check_eps(curve, cfg)?;
        let y0 = curve.y_base();
        let mut nodes = Vec::with_capacity(n);
        for k in 0..n {
            let z1 = C::from_polar(cfg.eps, 2.0 * PI * k as f64 / n as f64);
            let y1 = curve.continue_along(y0, (1..=64).map(|s| z1 * (s as f64 / 64.0)))?;
            let [h, kk] = cauchy_hk_at(cyc, table, z1, y1, cfg)?;
            nodes.push((z1, y1, h, kk));
        }
        Ok(Self { nodes })
    }

    /// Sheet-odd part of the inner integral, times `y`.
    pub fn odd_times_y(&self, z: C) -> C {
        let w = 2.0 * PI / self.nodes.len() as f64;
        // dz_1 = i z_1 dθ
        self.nodes.iter().map(|&(z1, y1, h, k)| (y1 / (2.0 * (z - z1)) + h + k * z) / z1.powu(2) * C::new(0.0, w)).sum()
    }

    /// Sheet-even part `∮ dz_1 / (2 (z - z_1) z_1³)`.
    pub fn even(&self, z: C) -> C {
        let w = 2.0 * PI / self.nodes.len() as f64;
        self.nodes.iter().map(|&(z1, ..)| 1.0 / (2.0 * (z - z1) * z1.powu(2)) * C::new(0.0, w)).sum()
    }
}

/// `∮_{|z_1| = ε} K_1(z, z_1) z_1^{-3} dz_1` by the trapezoid rule at a point `(z, y)`.
pub fn inner_integral_quadrature(nodes: &CircleNodes, z: C, y: C) -> C {
    nodes.odd_times_y(z) / y + nodes.even(z)
}

/// Same quantity as [`inner_integral_quadrature`] from the residue at `z_1 = 0`.
pub fn inner_integral_residue(ys: &[C], hk: &CauchyCoeffs, z: C, y: C) -> C {
    g_density(ys, hk, z, y) + C::new(0.0, PI) / z.powu(3)
}

fn check_eps(curve: &HyperellipticCurve, cfg: &PeriodConfig) -> Result<(), PeriodError> {
    let nearest = curve.distance_to_branch(C::default());
    if !(cfg.eps > 0.0 && cfg.eps < nearest - cfg.clearance) {
        return Err(PeriodError::EpsilonTooLarge { eps: cfg.eps, nearest });
    }
    Ok(())
}

/// `G_i = ∫_{B_i} ∮_{|z_1| = ε} K_1(z, z_1) z_1^{-3} dz_1`, `i ∈ {1, 2}`.
pub fn compute_g(curve: &HyperellipticCurve, i: usize, cfg: &PeriodConfig) -> Result<(C, f64), PeriodError> {
    let cyc = cycles(curve, cfg)?;
    let table = period_table(curve, &cyc, cfg)?;
    let hk = cauchy_kernel_coeffs_with(curve, &cyc, &table, cfg, 2)?;
    g_with(curve, &cyc, &table, &hk, i, cfg)
}

/// The sheet-even part of `K_1` contributes `∮_B ∮ dz_1 dz / (2(z - z_1) z_1³)`,
/// which vanishes because `B_i` does not wind around the circle `|z_1| = ε`.
fn g_with(
    curve: &HyperellipticCurve,
    cyc: &Cycles,
    table: &PeriodTable,
    hk: &CauchyCoeffs,
    i: usize,
    cfg: &PeriodConfig,
) -> Result<(C, f64), PeriodError> {
    if !(1..=2).contains(&i) {
        return Err(PeriodError::Geometry(format!("G index {i} not in {{1, 2}}")));
    }
    check_eps(curve, cfg)?;
    let b = &cyc.b[i - 1];
    let (v, e) = match cfg.inner {
        InnerRule::Residue => {
            let ys = curve.y_series_at_base(2);
            integrate_cycle(b, |z| g_density(&ys, hk, z, C::new(1.0, 0.0)), cfg.rule, cfg.tol)?
        }
        InnerRule::Circle(n) => {
            let nodes = CircleNodes::new(curve, cyc, table, cfg, n)?;
            integrate_cycle(b, |z| nodes.odd_times_y(z), cfg.rule, cfg.tol)?
        }
    };
    Ok((v, e + hk.error))
}

/// `(a Y'(0)/Y(0) - b)/Y(0)`: the `s²/z_1³` coefficient of `(a + bz) dz/Y`
/// pulled back along `z = s/z_1`.
pub fn d_from_coefficients(a: C, b: C, y0: C, y0_prime: C) -> C {
    (a * y0_prime / y0 - b) / y0
}

pub fn compute_d(curve2: &HyperellipticCurve, nb: &NormalizedBasis) -> Result<[C; 2], PeriodError> {
    let y0 = curve2.y_base();
    if y0.norm() < 1e-12 {
        return Err(PeriodError::DegenerateCurve("Y(0) vanishes".into()));
    }
    let y0p = curve2.poly_deriv(C::default()) / (2.0 * y0);
    Ok([d_from_coefficients(nb.a, nb.b, y0, y0p), d_from_coefficients(nb.c, nb.d, y0, y0p)])
}

/// `-c_1c_2 G_1D_1 + c_1a_2 G_1D_2 + a_1c_2 G_2D_1 - a_1a_2 G_2D_2`, where
/// index 1 refers to the basis of the first curve and 2 to the second.
pub fn rho4_combination(first: &NormalizedBasis, second: &NormalizedBasis, g: [C; 2], d: [C; 2]) -> C {
    let (a1, c1, a2, c2) = (first.a, first.c, second.a, second.c);
    -c1 * c2 * g[0] * d[0] + c1 * a2 * g[0] * d[1] + a1 * c2 * g[1] * d[0] - a1 * a2 * g[1] * d[1]
}

/// Intermediate values of one `ρ_4` evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Rho4Table {
    pub rule: QuadRule,
    pub basis1: NormalizedBasis,
    pub basis2: NormalizedBasis,
    pub tau1: [[C; 2]; 2],
    pub h2: C,
    pub k2: C,
    pub g: [C; 2],
    pub d: [C; 2],
    pub value: C,
    pub error: f64,
}

impl fmt::Display for Rho4Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |x: C| format!("{:+.12e} {:+.12e}i", x.re, x.im);
        writeln!(f, "rule\t{}", self.rule)?;
        for (name, x) in [("a", self.basis1.a), ("b", self.basis1.b), ("c", self.basis1.c), ("d", self.basis1.d)] {
            writeln!(f, "{name}\t{}", c(x))?;
        }
        for (name, x) in [("a'", self.basis2.a), ("b'", self.basis2.b), ("c'", self.basis2.c), ("d'", self.basis2.d)] {
            writeln!(f, "{name}\t{}", c(x))?;
        }
        writeln!(f, "h2\t{}", c(self.h2))?;
        writeln!(f, "k2\t{}", c(self.k2))?;
        writeln!(f, "G1\t{}", c(self.g[0]))?;
        writeln!(f, "G2\t{}", c(self.g[1]))?;
        writeln!(f, "D1\t{}", c(self.d[0]))?;
        writeln!(f, "D2\t{}", c(self.d[1]))?;
        write!(f, "rho4\t{}", c(self.value))
    }
}

pub fn rho4_table(c1: &HyperellipticCurve, c2: &HyperellipticCurve, cfg: &PeriodConfig) -> Result<Rho4Table, PeriodError> {
    check_eps(c1, cfg)?;
    let cyc1 = cycles(c1, cfg)?;
    let t1 = period_table(c1, &cyc1, cfg)?;
    let basis1 = basis_from_table(&t1)?;
    let hk = cauchy_kernel_coeffs_with(c1, &cyc1, &t1, cfg, 2)?;
    let (g1, e1) = g_with(c1, &cyc1, &t1, &hk, 1, cfg)?;
    let (g2, e2) = g_with(c1, &cyc1, &t1, &hk, 2, cfg)?;
    let basis2 = normalized_basis(c2, cfg)?;
    let d = compute_d(c2, &basis2)?;
    let g = [g1, g2];
    let value = rho4_combination(&basis1, &basis2, g, d);
    Ok(Rho4Table {
        rule: cfg.rule,
        tau1: tau_from(&t1, &basis1),
        basis1,
        basis2,
        h2: hk.h2(),
        k2: hk.k2(),
        g,
        d,
        value,
        error: e1 + e2,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rho4Certificate {
    pub value: C,
    /// Largest disagreement with the cross-rule and coarse evaluations plus
    /// the reported quadrature estimates.
    pub quadrature_error: f64,
    pub margin: f64,
    pub digest: String,
    pub primary: Rho4Table,
    pub cross: Rho4Table,
    pub coarse: Rho4Table,
}

impl Rho4Certificate {
    pub fn passed(&self) -> bool {
        self.value.norm() > self.margin * self.quadrature_error
    }
}

/// `ρ_4` for the curves `C_1`, `C_2` at `x = 0`.
pub fn rho4(cfg: &PeriodConfig) -> Result<Rho4Certificate, PeriodError> {
    rho4_for(&HyperellipticCurve::base_c1(), &HyperellipticCurve::base_c2(), cfg)
}

pub fn rho4_for(c1: &HyperellipticCurve, c2: &HyperellipticCurve, cfg: &PeriodConfig) -> Result<Rho4Certificate, PeriodError> {
    let primary = rho4_table(c1, c2, cfg)?;
    let cross = rho4_table(c1, c2, &cfg.with_rule(cfg.cross_rule))?;
    let coarse = rho4_table(c1, c2, &PeriodConfig { tol: cfg.coarse_tol, ..cfg.clone() })?;
    let spread = (primary.value - cross.value).norm().max((primary.value - coarse.value).norm());
    let quadrature_error = spread + primary.error + cross.error;
    let roots = |c: &HyperellipticCurve| c.roots.iter().map(|r| format!("{}", r.re)).collect::<Vec<_>>().join(",");
    let digest = format!(
        "C1=[{}] C2=[{}] tol={:e} coarse_tol={:e} eps={} clearance={:e} radius={} rules={}/{} inner={}",
        roots(c1),
        roots(c2),
        cfg.tol,
        cfg.coarse_tol,
        cfg.eps,
        cfg.clearance,
        cfg.radius,
        cfg.rule,
        cfg.cross_rule,
        cfg.inner
    );
    let cert = Rho4Certificate { value: primary.value, quadrature_error, margin: cfg.margin, digest, primary, cross, coarse };
    if !cert.passed() {
        return Err(PeriodError::Certificate(Box::new(cert)));
    }
    Ok(cert)
}
