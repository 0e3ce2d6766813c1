use std::fmt::{self, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use tautcalc::algebra::{fmt_rational, rint, Rational};
use tautcalc::checks;
use tautcalc::chern::{c1_log_abar, ch_tangent_ag, ch_tangent_moduli, chern_tangent_moduli};
use tautcalc::constants::reference_constants;
use tautcalc::ctp::{
    check_pairing, component_dimension, enumerate_components, enumerate_stable_trees, one_edge_intersections,
    pairing_equivalent, Component, HalfEdgePairing,
};
use tautcalc::excess::{
    binomial_identity_check, chern_quotient_degree, multiplicity, multiplicity_shifted, oracle_multiplicity,
    verify_residual_model, ExcessDims, LocalModel, Sub,
};
use tautcalc::period::{
    cauchy_kernel_coeffs, compute_d, compute_g, normalized_basis, period_matrix, rho4_for, HyperellipticCurve, InnerRule,
    PeriodConfig, QuadRule,
};
use tautcalc::pipeline::{multiple_of, t_pullback_g4, t_pullback_g5, t_pushforward_abar4, torelli_dimension, var_name};
use tautcalc::tautring::{canonicalize, Ambient, DecoratedGraph, Policy, TautClass};

#[derive(Parser, Debug)]
#[command(name = "tautcalc", version, about = "Tautological classes, Torelli pullbacks, excess multiplicities and period certificates")]
struct Cli {
    /// Emit `key<TAB>value` records.
    #[arg(long, global = true)]
    machine: bool,
    /// Print the ingredients a pipeline command relies on.
    #[arg(long, global = true)]
    explain: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Chern characters and classes of moduli tangent bundles.
    #[command(subcommand)]
    Chern(ChernCmd),
    /// Operations on tautological classes.
    #[command(subcommand)]
    Taut(TautCmd),
    /// Excess intersection multiplicities.
    #[command(subcommand)]
    Excess(ExcessCmd),
    /// Combinatorial Torelli pairs.
    #[command(subcommand)]
    Ctp(CtpCmd),
    /// Genus-2 period numerics.
    #[command(subcommand)]
    Period(PeriodCmd),
    /// Torelli pullbacks and pushforwards.
    #[command(subcommand)]
    Torelli(TorelliCmd),
    /// Imported reference constants.
    Constants,
    /// Run the acceptance suites.
    Selftest {
        #[arg(long)]
        criterion: Option<u8>,
        #[arg(long, default_value_t = checks::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
struct ModuliArgs {
    #[arg(long)]
    g: u32,
    /// Number of markings, named p1, p2, ...
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Full compactification instead of compact type.
    #[arg(long)]
    stable: bool,
}

impl ModuliArgs {
    fn ambient(&self) -> Result<Ambient, CliError> {
        let policy = if self.stable { Policy::Stable } else { Policy::CompactType };
        Ambient::mgn(self.g, self.n, policy).map_err(usage)
    }
}

#[derive(Subcommand, Debug)]
enum ChernCmd {
    /// Chern classes c_1..c_k of the tangent bundle of the moduli space.
    Classes {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Chern character ch_m of the tangent bundle of the moduli space.
    Ch {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long)]
        m: u32,
    },
    /// ch_m of the tangent bundle of A_g in lambda classes.
    Ag {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        m: u32,
        /// Reduce modulo the vanishing even power sums.
        #[arg(long)]
        reduced: bool,
    },
    /// c_1 of the log cotangent bundle of the partial compactification of A_g.
    LogAbar {
        #[arg(long, default_value_t = 4)]
        g: u32,
    },
}

#[derive(Subcommand, Debug)]
enum TautCmd {
    /// Canonical form and automorphism count of a decorated graph.
    Canon { graph: String },
    /// Pullback along the map forgetting a new marking.
    PullForget {
        #[command(flatten)]
        moduli: ModuliArgs,
        /// Terms `COEF GRAPH`.
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
        #[arg(long, default_value = "x")]
        x: String,
    },
    /// Pushforward forgetting marking `x` (the last of p1..pn if omitted).
    PushForget {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
        #[arg(long)]
        x: Option<String>,
    },
    /// Replace kappa1 by 12 lambda1 + psi - delta.
    Kappa1Expand {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
    },
    /// pi_*(pi^* alpha * psi_x) for a named class alpha.
    RoundTrip {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long, value_enum)]
        class: NamedClass,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum NamedClass {
    Lambda1,
    Kappa1,
    Kappa2,
    Delta,
    Psi,
}

#[derive(Subcommand, Debug)]
enum ExcessCmd {
    /// Multiplicity m(d_A, d_B), optionally shifted by k.
    M {
        #[arg(long)]
        da: i64,
        #[arg(long)]
        db: i64,
        #[arg(long, default_value_t = 0)]
        shift: i64,
    },
    /// Multiplicity from the Chern-class computation on a built-in model.
    Oracle {
        #[arg(long, default_value = "b2")]
        model: String,
    },
    /// Degree of c_k(N/N_A) or c_k(N/N_B) on a built-in model.
    Quotient {
        #[arg(long, default_value = "b2")]
        model: String,
        #[arg(long, value_enum)]
        sub: SubArg,
        #[arg(long)]
        k: usize,
    },
    /// The binomial identity for (d, k).
    Identity {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k: u64,
    },
    /// Residual local model with an embedded point.
    Residual,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SubArg {
    A,
    B,
}

#[derive(Subcommand, Debug)]
enum CtpCmd {
    /// Stable trees of genus g.
    Trees {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        positive: bool,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Components up to isomorphism.
    Components {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Dimension of a component given as `T1 | T2 | nu: .. | sigma: ..`.
    Dim { component: String },
    /// Bipartite condition for a half-edge pairing.
    CheckPairing { pairing: String },
    /// Equivalence of two admissible pairings.
    Equivalent { p: String, q: String },
    /// Pairwise intersections of one-edge components.
    Intersections {
        #[arg(long, default_value_t = 4)]
        g: u32,
    },
}

#[derive(Args, Debug, Clone)]
struct NumArgs {
    /// Base curve, or six comma-separated real branch points.
    #[arg(long, default_value = "c1")]
    curve: String,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = RuleArg::Segments)]
    rule: RuleArg,
    /// Loop radius as a fraction of the smallest branch-point gap.
    #[arg(long, default_value_t = 0.35)]
    radius: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RuleArg {
    Segments,
    LoopsAdaptive,
    LoopsTrapezoid,
}

impl From<RuleArg> for QuadRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Segments => QuadRule::Segments,
            RuleArg::LoopsAdaptive => QuadRule::LoopsAdaptive,
            RuleArg::LoopsTrapezoid => QuadRule::LoopsTrapezoid,
        }
    }
}

impl NumArgs {
    fn config(&self) -> Result<PeriodConfig, CliError> {
        positive("tol", self.tol)?;
        Ok(PeriodConfig { tol: self.tol, rule: self.rule.into(), radius: self.radius, ..Default::default() })
    }

    fn curve(&self) -> Result<HyperellipticCurve, CliError> {
        parse_curve(&self.curve)
    }
}

fn parse_curve(s: &str) -> Result<HyperellipticCurve, CliError> {
    match s {
        "c1" => Ok(HyperellipticCurve::base_c1()),
        "c2" => Ok(HyperellipticCurve::base_c2()),
        list => {
            let roots: Vec<f64> = list
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad branch point {t:?}"))))
                .collect::<Result<_, _>>()?;
            let roots: [f64; 6] =
                roots.try_into().map_err(|_| CliError::Usage("expected six branch points".into()))?;
            HyperellipticCurve::real(roots).map_err(usage)
        }
    }
}

#[derive(Subcommand, Debug)]
enum PeriodCmd {
    /// Period matrix of the A-normalized basis.
    Tau {
        #[command(flatten)]
        num: NumArgs,
    },
    /// Coefficients a, b, c, d of the A-normalized basis.
    Basis {
        #[command(flatten)]
        num: NumArgs,
    },
    /// z_1^2 coefficients h_2, k_2 of the Cauchy kernel normalization.
    Kernel {
        #[command(flatten)]
        num: NumArgs,
    },
    /// The integral G_i.
    G {
        #[command(flatten)]
        num: NumArgs,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// Evaluate the inner integral with this many circle nodes instead of the residue.
        #[arg(long)]
        circle: Option<usize>,
    },
    /// The constants D_1, D_2 of a curve.
    D {
        #[command(flatten)]
        num: NumArgs,
    },
    /// Certificate that rho_4 is nonzero.
    Rho4 {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 10.0)]
        margin: f64,
        #[arg(long, default_value = "c1")]
        first: String,
        #[arg(long, default_value = "c2")]
        second: String,
        /// Print every intermediate value.
        #[arg(long)]
        report: bool,
    },
}

#[derive(Subcommand, Debug)]
enum TorelliCmd {
    /// t^*T_4 on the compact-type moduli space.
    G4 {
        #[arg(long)]
        ledger: bool,
    },
    /// t^*T_5 restricted to M_5.
    G5,
    /// t^* t_*[M4bar] on curves with at most one nonseparating node.
    Abar4 {
        #[arg(long)]
        ledger: bool,
    },
    /// Expected dimension of t^*T_g.
    Dim {
        #[arg(long)]
        g: u32,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Mismatch(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Mismatch(m) => write!(f, "computation failed: {m}"),
        }
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn mismatch(e: impl fmt::Display) -> CliError {
    CliError::Mismatch(e.to_string())
}

fn positive(name: &str, x: f64) -> Result<(), CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} must be positive, got {x}")))
    }
}

/// Output sink for the two modes.
struct Out {
    machine: bool,
    buf: String,
}

impl Out {
    fn kv(&mut self, key: &str, value: impl fmt::Display) {
        if self.machine {
            let value = value.to_string().replace(['\n', '\t'], " ");
            let _ = writeln!(self.buf, "{key}\t{value}");
        }
    }

    fn human(&mut self, line: impl fmt::Display) {
        if !self.machine {
            let _ = writeln!(self.buf, "{line}");
        }
    }

    /// Same record in both modes.
    fn both(&mut self, key: &str, value: impl fmt::Display) {
        if self.machine {
            self.kv(key, value);
        } else {
            let _ = writeln!(self.buf, "{key}: {value}");
        }
    }

    fn complex(&mut self, key: &str, z: Complex64, err: Option<f64>) {
        let v = format!("{:+.15e} {:+.15e}i", z.re, z.im);
        if self.machine {
            self.kv(key, &v);
            if let Some(e) = err {
                self.kv(&format!("{key}.err"), format!("{e:.3e}"));
            }
        } else {
            match err {
                Some(e) => self.human(format!("{key} = {v}  (err {e:.1e})")),
                None => self.human(format!("{key} = {v}")),
            }
        }
    }
}

fn explain(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Torelli(TorelliCmd::G4 { .. }) => {
            "components of the genus-4 Torelli self-fiber product (diagonal, elliptic-tail and genus-2 pairs); \
             excess multiplicities m(1,1) and m(2,1); residual model for the conjugate-point loci; \
             Chiodo's formula for ch(TM) and ch(S^2 E^v) for TA"
        }
        Cmd::Torelli(TorelliCmd::G5) => {
            "ch(TA5) - ch(TM5) on the interior; Mumford's relations for lambda in kappa; Faber's proportionalities in R^3(M5); \
             m(3,3) times the imported class of the hyperelliptic locus"
        }
        Cmd::Torelli(TorelliCmd::Abar4 { .. }) => {
            "genus-4 ledger extended over one nonseparating node; c1 of the log cotangent bundle of the partial compactification"
        }
        Cmd::Torelli(TorelliCmd::Dim { .. }) => "expected dimension (-g^2 + 11g - 12)/2 of the Torelli pullback",
        Cmd::Chern(_) => "Chiodo's formula for the log cotangent bundle; GRR correction by boundary structure sheaves; power sums of the Hodge bundle",
        Cmd::Excess(_) => "closed formula for m(d_A, d_B); Segre-class oracle on split-bundle models; residual intersection with an embedded point",
        Cmd::Ctp(_) => "stable trees, vertex pairing, signs and the bipartite half-edge condition; component dimension formula",
        Cmd::Period(_) => "A-normalized basis; Cauchy kernel normalized on A-cycles; G_i, D_i and the combination rho_4",
        Cmd::Taut(_) => "decorated stable graphs; forgetful and gluing maps; products with divisors",
        Cmd::Constants => "imported literals, displayed only",
        Cmd::Selftest { .. } => "acceptance criteria 1-7",
    }
}

fn parse_terms(amb: &Ambient, terms: &[String]) -> Result<TautClass, CliError> {
    let mut lines = Vec::new();
    for t in terms {
        let (c, g) = t.trim().split_once(char::is_whitespace).ok_or_else(|| CliError::Usage(format!("term {t:?} needs COEF GRAPH")))?;
        lines.push(format!("{c}\t{}", g.trim()));
    }
    TautClass::parse(amb, &lines.join("\n")).map_err(usage)
}

fn emit_class(out: &mut Out, key: &str, c: &TautClass) {
    if out.machine {
        out.kv(key, c.pretty());
        for (g, coef) in c.terms() {
            out.kv(&format!("{key}.term"), format!("{} {}", fmt_rational(coef), g));
        }
    } else {
        out.human(format!("{key} = {}", c.pretty()));
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<(), CliError> {
    if cli.explain {
        out.both("explain", explain(&cli.cmd));
    }
    match &cli.cmd {
        Cmd::Chern(c) => chern(c, out),
        Cmd::Taut(c) => taut(c, out),
        Cmd::Excess(c) => excess(c, out),
        Cmd::Ctp(c) => ctp(c, out),
        Cmd::Period(c) => period(c, out),
        Cmd::Torelli(c) => torelli(c, out),
        Cmd::Constants => {
            for c in reference_constants() {
                if out.machine {
                    out.kv(c.name, c.value);
                    out.kv(&format!("{}.source", c.name), c.source);
                    out.kv(&format!("{}.tag", c.name), c.tag);
                } else {
                    out.human(format!("{} = {}\n    [{}] {}", c.name, c.value, c.tag, c.source));
                }
            }
            Ok(())
        }
        Cmd::Selftest { criterion, seed } => {
            let reports = match criterion {
                Some(id) if !(1..=7).contains(id) => return Err(CliError::Usage(format!("no criterion {id}"))),
                Some(id) => vec![checks::run(*id, *seed)],
                None => checks::run_all(*seed),
            };
            for r in &reports {
                if out.machine {
                    out.kv(&format!("criterion.{}", r.id), if r.passed { "pass" } else { "fail" });
                    out.kv(&format!("criterion.{}.seconds", r.id), format!("{:.3}", r.elapsed.as_secs_f64()));
                } else {
                    out.human(r);
                }
            }
            if reports.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(CliError::Mismatch("selftest failed".into()))
            }
        }
    }
}

fn chern(c: &ChernCmd, out: &mut Out) -> Result<(), CliError> {
    match c {
        ChernCmd::Classes { moduli, k } => {
            let amb = moduli.ambient()?;
            let cs = chern_tangent_moduli(&amb, *k).map_err(usage)?;
            for (i, x) in cs.iter().enumerate() {
                emit_class(out, &format!("c{}", i + 1), x);
            }
        }
        ChernCmd::Ch { moduli, m } => {
            let amb = moduli.ambient()?;
            emit_class(out, &format!("ch{m}"), &ch_tangent_moduli(&amb, *m).map_err(usage)?);
        }
        ChernCmd::Ag { g, m, reduced } => {
            let e = ch_tangent_ag(*g, *m, *reduced).map_err(usage)?;
            out.both(&format!("ch{m}"), e);
        }
        ChernCmd::LogAbar { g } => out.both("c1", c1_log_abar(*g)),
    }
    Ok(())
}

fn taut(c: &TautCmd, out: &mut Out) -> Result<(), CliError> {
    match c {
        TautCmd::Canon { graph } => {
            let g: DecoratedGraph = graph.parse().map_err(usage)?;
            let (c, aut) = canonicalize(&g);
            out.both("canonical", c);
            out.both("automorphisms", aut);
        }
        TautCmd::PullForget { moduli, terms, x } => {
            let amb = moduli.ambient()?;
            let c = parse_terms(&amb, terms)?;
            emit_class(out, "pullback", &c.pullback_forgetful(x, 0).map_err(usage)?);
        }
        TautCmd::PushForget { moduli, terms, x } => {
            let amb = moduli.ambient()?;
            let x = match x {
                Some(x) => x.clone(),
                None => amb.factors[0].markings.last().cloned().ok_or_else(|| CliError::Usage("no marking to forget".into()))?,
            };
            let c = parse_terms(&amb, terms)?;
            emit_class(out, "pushforward", &c.pushforward_forgetful(&x).map_err(usage)?);
        }
        TautCmd::Kappa1Expand { moduli, terms } => {
            let amb = moduli.ambient()?;
            emit_class(out, "expanded", &parse_terms(&amb, terms)?.kappa1_expand());
        }
        TautCmd::RoundTrip { moduli, class } => {
            let amb = moduli.ambient()?;
            let alpha = match class {
                NamedClass::Lambda1 => TautClass::lambda(&amb, 0, 1),
                NamedClass::Kappa1 => TautClass::kappa(&amb, 0, 1),
                NamedClass::Kappa2 => TautClass::kappa(&amb, 0, 2),
                NamedClass::Delta => TautClass::delta(&amb),
                NamedClass::Psi => TautClass::psi_sum(&amb, 0),
            };
            let r = checks::forgetful_round_trip(&alpha).map_err(usage)?;
            emit_class(out, "alpha", &alpha);
            emit_class(out, "round_trip", &r);
            let expected = rint(2 * moduli.g as i64 - 2 + moduli.n as i64);
            let ok = r == alpha.scale(&expected);
            out.both("equals", format!("{} * alpha: {ok}", fmt_rational(&expected)));
            if !ok {
                return Err(CliError::Mismatch("round trip differs from (2g-2+n) alpha".into()));
            }
        }
    }
    Ok(())
}

fn excess(c: &ExcessCmd, out: &mut Out) -> Result<(), CliError> {
    match c {
        ExcessCmd::M { da, db, shift } => {
            let m = if *shift == 0 {
                multiplicity(ExcessDims::new(*da, *db).map_err(usage)?)
            } else {
                multiplicity_shifted(*da, *db, *shift).map_err(usage)?
            };
            if out.machine {
                out.kv("m", &m);
            } else {
                out.human(&m);
            }
        }
        ExcessCmd::Oracle { model } => {
            let model = LocalModel::builtin(model).map_err(usage)?;
            let o = oracle_multiplicity(&model).map_err(mismatch)?;
            let m = multiplicity(model.dims);
            out.both("oracle", &o);
            out.both("formula", &m);
            if o != m {
                return Err(CliError::Mismatch(format!("oracle {o} differs from formula {m}")));
            }
        }
        ExcessCmd::Quotient { model, sub, k } => {
            let model = LocalModel::builtin(model).map_err(usage)?;
            let s = match sub {
                SubArg::A => Sub::A,
                SubArg::B => Sub::B,
            };
            out.both("degree", fmt_rational(&chern_quotient_degree(&model, s, *k).map_err(usage)?));
        }
        ExcessCmd::Identity { d, k } => {
            if k >= d {
                return Err(CliError::Usage(format!("need k < d, got k = {k}, d = {d}")));
            }
            let ok = binomial_identity_check(*d, *k);
            out.both("holds", ok);
            if !ok {
                return Err(CliError::Mismatch("identity fails".into()));
            }
        }
        ExcessCmd::Residual => {
            let r = verify_residual_model().map_err(mismatch)?;
            out.both("total", &r.total);
            out.both("divisor_part", fmt_rational(&r.divisor_part));
            out.both("residual_part", fmt_rational(&r.residual_part));
        }
    }
    Ok(())
}

fn ctp(c: &CtpCmd, out: &mut Out) -> Result<(), CliError> {
    match c {
        CtpCmd::Trees { g, positive, max_edges } => {
            let trees = enumerate_stable_trees(*g, *positive, *max_edges);
            out.both("count", trees.len());
            for t in trees {
                out.both("tree", t);
            }
        }
        CtpCmd::Components { g, max_edges } => {
            let cs = enumerate_components(*g, *max_edges).map_err(usage)?;
            out.both("count", cs.len());
            for c in cs {
                if out.machine {
                    out.kv("component", &c);
                    out.kv("component.dim", c.dimension());
                } else {
                    out.human(format!("[dim {}] {}", c.dimension(), c));
                }
            }
        }
        CtpCmd::Dim { component } => {
            let c: Component = component.parse().map_err(usage)?;
            c.validate().map_err(usage)?;
            out.both("dim", component_dimension(&c));
        }
        CtpCmd::CheckPairing { pairing } => {
            let p: HalfEdgePairing = pairing.parse().map_err(usage)?;
            let v = check_pairing(&p).map_err(usage)?;
            out.both("admissible", v.ok);
            if let Some(d) = v.diagnostic {
                out.both("diagnostic", d);
            }
        }
        CtpCmd::Equivalent { p, q } => {
            let p: HalfEdgePairing = p.parse().map_err(usage)?;
            let q: HalfEdgePairing = q.parse().map_err(usage)?;
            out.both("equivalent", pairing_equivalent(&p, &q).map_err(usage)?);
        }
        CtpCmd::Intersections { g } => {
            for s in one_edge_intersections(*g).map_err(usage)? {
                let line = format!(
                    "{}{}: dim {}, image dim {}{}{}",
                    s.name,
                    if s.name.contains('&') { String::new() } else { format!(" ({} & {})", s.first, s.second) },
                    s.dim,
                    s.image_dim,
                    if s.hyperelliptic { ", hyperelliptic" } else { "" },
                    if s.in_divisor_ledger(*g) { ", divisorial" } else { "" }
                );
                out.both("stratum", line);
            }
        }
    }
    Ok(())
}

fn period(c: &PeriodCmd, out: &mut Out) -> Result<(), CliError> {
    match c {
        PeriodCmd::Tau { num } => {
            let pm = period_matrix(&num.curve()?, &num.config()?).map_err(mismatch)?;
            for i in 0..2 {
                for j in 0..2 {
                    out.complex(&format!("tau{}{}", i + 1, j + 1), pm.tau[i][j], Some(pm.error));
                }
            }
            out.both("asymmetry", format!("{:.3e}", pm.asymmetry()));
            let [a, b] = pm.imag_eigenvalues();
            out.both("im_eigenvalues", format!("{a:.12e} {b:.12e}"));
        }
        PeriodCmd::Basis { num } => {
            let nb = normalized_basis(&num.curve()?, &num.config()?).map_err(mismatch)?;
            for (k, v) in [("a", nb.a), ("b", nb.b), ("c", nb.c), ("d", nb.d)] {
                out.complex(k, v, None);
            }
            out.both("residual", format!("{:.3e}", nb.residual));
            out.both("conditioning", format!("{:.3e}", nb.conditioning));
        }
        PeriodCmd::Kernel { num } => {
            let hk = cauchy_kernel_coeffs(&num.curve()?, &num.config()?).map_err(mismatch)?;
            out.complex("h2", hk.h2(), Some(hk.error));
            out.complex("k2", hk.k2(), Some(hk.error));
            out.both("residual0", format!("{:.3e}", hk.residual0));
        }
        PeriodCmd::G { num, i, eps, circle } => {
            let mut cfg = num.config()?;
            positive("eps", *eps)?;
            cfg.eps = *eps;
            if let Some(n) = circle {
                cfg.inner = InnerRule::Circle(*n);
            }
            let (v, e) = compute_g(&num.curve()?, *i, &cfg).map_err(usage)?;
            out.complex(&format!("G{i}"), v, Some(e));
        }
        PeriodCmd::D { num } => {
            let curve = num.curve()?;
            let nb = normalized_basis(&curve, &num.config()?).map_err(mismatch)?;
            let d = compute_d(&curve, &nb).map_err(mismatch)?;
            out.complex("D1", d[0], None);
            out.complex("D2", d[1], None);
        }
        PeriodCmd::Rho4 { tol, eps, margin, first, second, report } => {
            positive("tol", *tol)?;
            positive("eps", *eps)?;
            positive("margin", *margin)?;
            let cfg = PeriodConfig { tol: *tol, eps: *eps, margin: *margin, ..Default::default() };
            let (c1, c2) = (parse_curve(first)?, parse_curve(second)?);
            let cert = match rho4_for(&c1, &c2, &cfg) {
                Ok(c) => c,
                Err(tautcalc::period::PeriodError::Certificate(c)) => {
                    out.both("report", format!("\n{}", c.primary));
                    return Err(CliError::Mismatch(format!(
                        "|rho4| = {:.3e} not above {} x error {:.3e}",
                        c.value.norm(),
                        c.margin,
                        c.quadrature_error
                    )));
                }
                Err(e) => return Err(usage(e)),
            };
            if *report {
                if out.machine {
                    for line in cert.primary.to_string().lines() {
                        let (k, v) = line.split_once('\t').unwrap_or((line, ""));
                        out.kv(k, v);
                    }
                } else {
                    out.human(&cert.primary);
                    out.human(format!("cross-check ({}): rho4 = {:+.12e}", cert.cross.rule, cert.cross.value.re));
                    out.human(format!("coarse tolerance: rho4 = {:+.12e}", cert.coarse.value.re));
                }
            }
            out.complex("rho4", cert.value, Some(cert.quadrature_error));
            out.both("margin", format!("{:.3e}", cert.value.norm() / cert.quadrature_error.max(f64::MIN_POSITIVE)));
            out.both("certificate", if cert.passed() { "nonzero" } else { "failed" });
            out.both("digest", &cert.digest);
        }
    }
    Ok(())
}

fn torelli(c: &TorelliCmd, out: &mut Out) -> Result<(), CliError> {
    match c {
        TorelliCmd::G4 { ledger } => {
            let (total, led) = t_pullback_g4().map_err(mismatch)?;
            let lambda1 = TautClass::lambda(total.ambient(), 0, 1);
            let k = multiple_of(&total, &lambda1).ok_or_else(|| CliError::Mismatch(total.pretty()))?;
            if out.machine {
                out.kv("t*T4", format!("{} lambda1", fmt_rational(&k)));
            } else {
                out.human(format!("t*T4 = {} lambda1", fmt_rational(&k)));
            }
            if *ledger {
                ledger_lines(out, &led);
            }
            if k != rint(16) {
                return Err(CliError::Mismatch(format!("expected 16 lambda1, got {}", fmt_rational(&k))));
            }
        }
        TorelliCmd::G5 => {
            let (v, r) = t_pullback_g5().map_err(mismatch)?;
            for (i, p) in r.ch_normal.iter().enumerate() {
                out.both(&format!("ch{}(N)", i + 1), p.display_with(var_name));
            }
            out.both("2c3(N)", format!("{} kappa3", fmt_rational(&r.twice_c3)));
            out.both("m(3,3)", fmt_rational(&r.multiplicity));
            out.both("[H5]", format!("{} kappa3", fmt_rational(&r.hyperelliptic)));
            if out.machine {
                out.kv("t*T5", format!("{} kappa3", fmt_rational(&v)));
            } else {
                out.human(format!("t*T5 = {} kappa3", fmt_rational(&v)));
            }
        }
        TorelliCmd::Abar4 { ledger } => {
            let r = t_pushforward_abar4().map_err(mismatch)?;
            out.both("t^*t_*[M4bar]", &r.divisor);
            if *ledger {
                ledger_lines(out, &r.ledger);
            }
        }
        TorelliCmd::Dim { g } => {
            let d = torelli_dimension(*g);
            out.both("dim", d.dim);
            out.both("verdict", d.verdict);
        }
    }
    Ok(())
}

fn ledger_lines(out: &mut Out, led: &tautcalc::pipeline::ContributionLedger) {
    for e in &led.entries {
        let m: &Rational = &e.multiplicity;
        if out.machine {
            out.kv(&format!("ledger.{}", e.source), format!("{} * ({})", fmt_rational(m), e.class.pretty()));
        } else {
            out.human(format!("  {:<7} {:>3} x ({})   [{}]", e.source, fmt_rational(m), e.class.pretty(), e.anchor));
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = Out { machine: cli.machine, buf: String::new() };
    let result = run(&cli, &mut out);
    print!("{}", out.buf);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            if let CliError::Usage(_) = e {
                eprintln!("run `tautcalc --help` for the synopsis");
            }
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Mismatch(_) => 1,
            })
        }
    }
}
