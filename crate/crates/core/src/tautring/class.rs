use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::graph::{canonicalize, DecoratedGraph, Edge, Leg, Mono, Vertex};
use super::{ops, Ambient, Policy, TautError};
use crate::algebra::{fmt_rational, parse_rational, AlgebraError, Rational, Ring};

/// Exact rational combination of decorated generators `ξ_Γ*(α)` on an ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautClass {
    ambient: Ambient,
    terms: BTreeMap<DecoratedGraph, Rational>,
}

/// Graph of the unit class: one bare vertex per factor.
pub(crate) fn unit_graph(ambient: &Ambient) -> DecoratedGraph {
    let mut g = DecoratedGraph::default();
    for (i, f) in ambient.factors.iter().enumerate() {
        g.vertices.push(Vertex::bare(f.genus));
        for m in &f.markings {
            g.legs.push(Leg { label: m.clone(), vertex: i, psi: 0 });
        }
    }
    g
}

/// Vertices of `g` lying in the component of factor `f` of `ambient`.
pub(crate) fn factor_vertices(ambient: &Ambient, g: &DecoratedGraph, f: usize) -> Vec<usize> {
    let comps = g.components();
    if ambient.factors.len() == 1 {
        return (0..g.vertices.len()).collect();
    }
    let label = &ambient.factors[f].markings[0];
    let v = g.legs.iter().find(|l| &l.label == label).map(|l| l.vertex).expect("marking present");
    comps.into_iter().find(|c| c.contains(&v)).unwrap_or_default()
}

/// One-edge boundary graphs of factor `f`, each paired with `1/|Aut|`.
/// Self-edges appear only under the stable policy.
pub fn one_edge_graphs(ambient: &Ambient, f: usize) -> Vec<(DecoratedGraph, Rational)> {
    let factor = &ambient.factors[f];
    let base = unit_graph(ambient);
    let v = f;
    let marks: Vec<usize> = base.legs.iter().enumerate().filter(|(_, l)| l.vertex == v).map(|(i, _)| i).collect();
    let mut seen: BTreeMap<DecoratedGraph, u64> = BTreeMap::new();
    for mask in 0u64..(1 << marks.len()) {
        for g1 in 0..=factor.genus {
            let g2 = factor.genus - g1;
            let n1 = mask.count_ones() as i64 + 1;
            let n2 = marks.len() as i64 - n1 + 2;
            if 2 * g1 as i64 - 2 + n1 <= 0 || 2 * g2 as i64 - 2 + n2 <= 0 {
                continue;
            }
            let mut g = base.clone();
            let w = g.vertices.len();
            g.vertices[v].genus = g1;
            g.vertices.push(Vertex::bare(g2));
            for (k, &li) in marks.iter().enumerate() {
                if mask & (1 << k) == 0 {
                    g.legs[li].vertex = w;
                }
            }
            g.edges.push(Edge::new(v, 0, w, 0));
            let (c, aut) = canonicalize(&g);
            seen.insert(c, aut);
        }
    }
    if ambient.policy == Policy::Stable && factor.genus >= 1 {
        let mut g = base.clone();
        g.vertices[v].genus -= 1;
        g.edges.push(Edge::new(v, 0, v, 0));
        let (c, aut) = canonicalize(&g);
        seen.insert(c, aut);
    }
    seen.into_iter().map(|(g, aut)| (g, Rational::new(1.into(), aut.into()))).collect()
}

impl TautClass {
    pub fn zero(ambient: &Ambient) -> Self {
        TautClass { ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    pub fn unit(ambient: &Ambient) -> Self {
        let mut c = Self::zero(ambient);
        c.push(unit_graph(ambient), Rational::one());
        c
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DecoratedGraph, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · g` after canonicalization. Vanishing generators are dropped.
    pub(crate) fn push(&mut self, g: DecoratedGraph, c: Rational) {
        if c.is_zero() || g.vanishes() {
            return;
        }
        let (g, _) = canonicalize(&g);
        let entry = self.terms.entry(g.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// Validated single-generator class `c · ξ_Γ*(decoration)`.
    pub fn generator(ambient: &Ambient, g: DecoratedGraph, c: Rational) -> Result<Self, TautError> {
        validate(ambient, &g)?;
        let mut out = Self::zero(ambient);
        out.push(g, c);
        Ok(out)
    }

    /// Parses the line serialization produced by `Display`.
    pub fn parse(ambient: &Ambient, text: &str) -> Result<Self, TautError> {
        let mut out = Self::zero(ambient);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && *l != "0") {
            let (c, g) = line.split_once('\t').ok_or_else(|| TautError::Parse(line.to_string()))?;
            let c = parse_rational(c.trim())?;
            let g: DecoratedGraph = g.parse()?;
            validate(ambient, &g)?;
            out.push(g, c);
        }
        Ok(out)
    }

    fn vertex_class(ambient: &Ambient, f: usize, edit: impl FnOnce(&mut Vertex)) -> Self {
        let mut g = unit_graph(ambient);
        edit(&mut g.vertices[f]);
        let mut c = Self::zero(ambient);
        c.push(g, Rational::one());
        c
    }

    /// `λ_i` on factor `f`.
    pub fn lambda(ambient: &Ambient, f: usize, i: u32) -> Self {
        if i == 0 {
            return Self::unit(ambient);
        }
        Self::vertex_class(ambient, f, |v| v.lambda.add(i, 1))
    }

    /// `κ_i` on factor `f`, with `κ_0 = 2g-2+n`.
    pub fn kappa(ambient: &Ambient, f: usize, i: u32) -> Self {
        if i == 0 {
            let fac = &ambient.factors[f];
            return Self::unit(ambient).scale(&Rational::from_integer((2 * fac.genus as i64 - 2 + fac.markings.len() as i64).into()));
        }
        Self::vertex_class(ambient, f, |v| v.kappa.add(i, 1))
    }

    /// Monomial `Π κ` on factor `f`.
    pub fn kappa_mono(ambient: &Ambient, f: usize, m: &Mono) -> Self {
        Self::vertex_class(ambient, f, |v| v.kappa = m.clone())
    }

    pub fn lambda_mono(ambient: &Ambient, f: usize, m: &Mono) -> Self {
        Self::vertex_class(ambient, f, |v| v.lambda = m.clone())
    }

    /// `ψ_p^e` for the marking `p`.
    pub fn psi(ambient: &Ambient, label: &str, e: u32) -> Result<Self, TautError> {
        let mut g = unit_graph(ambient);
        let i = g.leg_index(label).ok_or_else(|| TautError::MissingMarking(label.to_string()))?;
        g.legs[i].psi = e;
        let mut c = Self::zero(ambient);
        c.push(g, Rational::one());
        Ok(c)
    }

    /// Sum of all ψ classes at markings of factor `f`.
    pub fn psi_sum(ambient: &Ambient, f: usize) -> Self {
        let mut out = Self::zero(ambient);
        for m in &ambient.factors[f].markings {
            out = out.add(&Self::psi(ambient, m, 1).expect("marking of ambient"));
        }
        out
    }

    /// Total boundary divisor `Σ_Γ ξ_Γ*(1)/|Aut Γ|` over every factor.
    pub fn delta(ambient: &Ambient) -> Self {
        let mut out = Self::zero(ambient);
        for f in 0..ambient.factors.len() {
            for (g, w) in one_edge_graphs(ambient, f) {
                out.push(g, w);
            }
        }
        out
    }

    /// Part of `δ` on factor `f` whose graph has a vertex of genus `g1` carrying
    /// exactly the markings `marks`, the complement on the other side.
    pub fn delta_split(ambient: &Ambient, f: usize, g1: u32, marks: &[&str]) -> Result<Self, TautError> {
        let mut want: Vec<String> = marks.iter().map(|s| s.to_string()).collect();
        want.sort();
        let fac = &ambient.factors[f];
        if g1 > fac.genus || want.iter().any(|m| !fac.markings.contains(m)) {
            return Err(TautError::AmbientMismatch(format!("no split ({g1}, {want:?}) of {fac}")));
        }
        let mut out = Self::zero(ambient);
        for (g, w) in one_edge_graphs(ambient, f) {
            if g.edges.iter().any(|e| e.is_loop()) {
                continue;
            }
            let verts = factor_vertices(ambient, &g, f);
            let hit = verts.iter().any(|&v| {
                g.vertices[v].genus == g1 && {
                    let mut l: Vec<String> =
                        g.legs.iter().filter(|l| l.vertex == v).map(|l| l.label.clone()).collect();
                    l.sort();
                    l == want
                }
            });
            if hit {
                out.push(g, w);
            }
        }
        if out.is_zero() {
            return Err(TautError::AmbientMismatch(format!("split ({g1}, {want:?}) is unstable")));
        }
        Ok(out)
    }

    /// `δ_{0,{p,x}}`: the rational tail carrying exactly `p` and `x`.
    pub fn delta_0(ambient: &Ambient, p: &str, x: &str) -> Result<Self, TautError> {
        let f = ambient.factor_of_marking(p).ok_or_else(|| TautError::MissingMarking(p.into()))?;
        Self::delta_split(ambient, f, 0, &[p, x])
    }

    /// Self-edge part `δ_irr` on factor `f` (zero under the compact-type policy).
    pub fn delta_irr(ambient: &Ambient, f: usize) -> Self {
        let mut out = Self::zero(ambient);
        for (g, w) in one_edge_graphs(ambient, f) {
            if g.edges.iter().any(|e| e.is_loop()) {
                out.push(g, w);
            }
        }
        out
    }

    /// Plain generator `ξ_Γ*(1)` of a boundary graph `g`.
    pub fn boundary(ambient: &Ambient, g: DecoratedGraph) -> Result<Self, TautError> {
        Self::generator(ambient, g, Rational::one())
    }

    pub fn coeff(&self, g: &DecoratedGraph) -> Rational {
        let (c, _) = canonicalize(g);
        self.terms.get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "adding classes on different ambients");
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.push(g.clone(), c.clone());
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, TautError> {
        if self.ambient != other.ambient {
            return Err(TautError::AmbientMismatch(format!("{} vs {}", self.ambient, other.ambient)));
        }
        Ok(self.add(other))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.ambient);
        if c.is_zero() {
            return out;
        }
        for (g, v) in &self.terms {
            out.terms.insert(g.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Homogeneous degree, `None` for zero or mixed classes.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(DecoratedGraph::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(DecoratedGraph::degree).max().unwrap_or(0)
    }

    /// Degree-`d` part.
    pub fn part(&self, d: u32) -> Self {
        let mut out = Self::zero(&self.ambient);
        for (g, c) in &self.terms {
            if g.degree() == d {
                out.terms.insert(g.clone(), c.clone());
            }
        }
        out
    }

    /// Drops every generator supported on the boundary.
    pub fn restrict_interior(&self) -> Self {
        let mut out = Self::zero(&self.ambient);
        for (g, c) in &self.terms {
            if g.edges.is_empty() {
                out.terms.insert(g.clone(), c.clone());
            }
        }
        out
    }

    /// The class on `self.ambient × other.ambient` given by `pr_1^*a · pr_2^*b`.
    pub fn external_product(&self, other: &Self) -> Result<Self, TautError> {
        let amb = self.ambient.product(&other.ambient)?;
        let mut out = Self::zero(&amb);
        for (g1, c1) in &self.terms {
            for (g2, c2) in &other.terms {
                out.push(g1.disjoint_union(g2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Same terms on a different but equal-shaped ambient, e.g. after a policy change.
    pub fn with_ambient(&self, ambient: &Ambient) -> Result<Self, TautError> {
        let mut out = Self::zero(ambient);
        for (g, c) in &self.terms {
            validate(ambient, g)?;
            out.push(g.clone(), c.clone());
        }
        Ok(out)
    }

    /// Renames a marking.
    pub fn relabel(&self, from: &str, to: &str) -> Result<Self, TautError> {
        let f = self.ambient.factor_of_marking(from).ok_or_else(|| TautError::MissingMarking(from.into()))?;
        if self.ambient.factor_of_marking(to).is_some() {
            return Err(TautError::MarkingCollision(to.into()));
        }
        let mut amb = self.ambient.clone();
        for m in &mut amb.factors[f].markings {
            if m == from {
                *m = to.to_string();
            }
        }
        amb.factors[f].markings.sort();
        let mut out = Self::zero(&amb);
        for (g, c) in &self.terms {
            let mut g = g.clone();
            for l in &mut g.legs {
                if l.label == from {
                    l.label = to.to_string();
                }
            }
            out.push(g, c.clone());
        }
        Ok(out)
    }

    /// Multiplication by a class all of whose terms have degree at most one.
    pub fn multiply(&self, other: &Self) -> Result<Self, TautError> {
        ops::multiply(self, other)
    }

    pub fn kappa1_expand(&self) -> Self {
        ops::kappa1_expand(self)
    }

    /// Human-readable rendering with symbolic names where available.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (g, c) in &self.terms {
            let name = generator_name(&self.ambient, g);
            let coef = if c.is_one() && name != "1" {
                String::new()
            } else if *c == -Rational::one() && name != "1" {
                "-".into()
            } else if name == "1" {
                fmt_rational(c)
            } else {
                format!("{}*", fmt_rational(c))
            };
            let body = if name == "1" { String::new() } else { name };
            parts.push(format!("{coef}{body}"));
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    s.push_str(" - ");
                    s.push_str(rest);
                }
                None => {
                    s.push_str(" + ");
                    s.push_str(p);
                }
            }
        }
        s
    }
}

fn mono_name(out: &mut Vec<String>, sym: &str, m: &Mono, suffix: &str) {
    for (i, e) in &m.0 {
        if *e == 1 {
            out.push(format!("{sym}{i}{suffix}"));
        } else {
            out.push(format!("{sym}{i}{suffix}^{e}"));
        }
    }
}

fn generator_name(ambient: &Ambient, g: &DecoratedGraph) -> String {
    if !g.edges.is_empty() {
        return format!("xi[{g}]");
    }
    let multi = ambient.factors.len() > 1;
    let mut parts: Vec<String> = Vec::new();
    for (i, v) in g.vertices.iter().enumerate() {
        let suffix = if multi {
            let marks: Vec<&str> = g.legs.iter().filter(|l| l.vertex == i).map(|l| l.label.as_str()).collect();
            format!("({})", marks.join(","))
        } else {
            String::new()
        };
        mono_name(&mut parts, "kappa", &v.kappa, &suffix);
        mono_name(&mut parts, "lambda", &v.lambda, &suffix);
    }
    for l in &g.legs {
        match l.psi {
            0 => {}
            1 => parts.push(format!("psi_{}", l.label)),
            e => parts.push(format!("psi_{}^{e}", l.label)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Checks stability, the boundary policy and that components match the factors.
pub(crate) fn validate(ambient: &Ambient, g: &DecoratedGraph) -> Result<(), TautError> {
    g.check_stable()?;
    if ambient.policy == Policy::CompactType && !g.is_forest() {
        return Err(TautError::NotCompactType(g.to_string()));
    }
    let comps = g.components();
    if comps.len() != ambient.factors.len() {
        return Err(TautError::AmbientMismatch(format!("{} components for {}", comps.len(), ambient)));
    }
    let mut shapes: Vec<(u32, Vec<String>)> =
        comps.iter().map(|c| (g.component_genus(c), g.component_legs(c))).collect();
    let mut want: Vec<(u32, Vec<String>)> = ambient.factors.iter().map(|f| (f.genus, f.markings.clone())).collect();
    shapes.sort();
    want.sort();
    if shapes != want {
        return Err(TautError::AmbientMismatch(format!("graph {g} does not live on {ambient}")));
    }
    Ok(())
}

impl fmt::Display for TautClass {
    /// One term per line: `<p/q>\t<generator>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let lines: Vec<String> = self.terms.iter().map(|(g, c)| format!("{}\t{}", fmt_rational(c), g)).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

impl Ring for TautClass {
    fn zero_like(&self) -> Self {
        TautClass::zero(&self.ambient)
    }

    fn one_like(&self) -> Self {
        TautClass::unit(&self.ambient)
    }

    fn add(&self, other: &Self) -> Self {
        TautClass::add(self, other)
    }

    fn scale(&self, c: &Rational) -> Self {
        TautClass::scale(self, c)
    }

    fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let small = |c: &TautClass| c.terms.keys().all(|g| g.degree() <= 1);
        let scalar = |c: &TautClass| c.terms.keys().all(|g| g.degree() == 0);
        let r = if scalar(other) {
            ops::multiply(other, self)
        } else if small(self) {
            ops::multiply(self, other)
        } else if small(other) {
            ops::multiply(other, self)
        } else {
            return Err(AlgebraError::Product(format!(
                "neither factor is a divisor (degrees {} and {})",
                self.max_degree(),
                other.max_degree()
            )));
        };
        r.map_err(|e| AlgebraError::Product(e.to_string()))
    }
}
