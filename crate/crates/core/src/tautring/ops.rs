use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::class::{factor_vertices, TautClass};
use super::graph::{DecoratedGraph, Edge, Leg, Mono, Special, Vertex};
use super::{Ambient, Factor, Policy, TautError};
use crate::algebra::Rational;

fn ri(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Expands `Π_j (κ_{i_j} - ψ_x^{i_j})` into `(sign, remaining κ, ψ_x exponent)`.
fn kappa_pullback_terms(m: &Mono) -> Vec<(i64, Mono, u32)> {
    let fs = m.factors();
    let mut out = Vec::new();
    for mask in 0u64..(1 << fs.len()) {
        let mut rest = Vec::new();
        let mut e = 0;
        for (k, &i) in fs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                e += i;
            } else {
                rest.push(i);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.push((sign, Mono::from_factors(rest), e));
    }
    out
}

/// Distributions of a vertex decoration over two vertices obtained by splitting:
/// κ additively, λ through the Whitney formula. Returns `(κ, λ)` pairs per side with multiplicity.
fn split_decorations(v: &Vertex) -> Vec<((Mono, Mono), (Mono, Mono), i64)> {
    let ks = v.kappa.factors();
    let mut kappas: BTreeMap<(Mono, Mono), i64> = BTreeMap::new();
    for mask in 0u64..(1 << ks.len()) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (k, &i) in ks.iter().enumerate() {
            if mask & (1 << k) != 0 {
                a.push(i)
            } else {
                b.push(i)
            }
        }
        *kappas.entry((Mono::from_factors(a), Mono::from_factors(b))).or_insert(0) += 1;
    }
    let mut lambdas: BTreeMap<(Mono, Mono), i64> = BTreeMap::new();
    lambdas.insert((Mono::one(), Mono::one()), 1);
    for i in v.lambda.factors() {
        let mut next: BTreeMap<(Mono, Mono), i64> = BTreeMap::new();
        for ((a, b), c) in &lambdas {
            for j in 0..=i {
                let (mut a2, mut b2) = (a.clone(), b.clone());
                a2.add(j, (j > 0) as u32);
                b2.add(i - j, (i - j > 0) as u32);
                *next.entry((a2, b2)).or_insert(0) += c;
            }
        }
        lambdas = next;
    }
    let mut out = Vec::new();
    for ((ka, kb), c1) in &kappas {
        for ((la, lb), c2) in &lambdas {
            out.push(((ka.clone(), la.clone()), (kb.clone(), lb.clone()), c1 * c2));
        }
    }
    out
}

/// Splits vertex `v` into `v` (genus `a`, specials `side1`) and a new last vertex
/// carrying the rest; decorations are distributed. No edge is added between them.
fn split_vertex(g: &DecoratedGraph, v: usize, a: u32, side1: &[Special]) -> Option<Vec<(DecoratedGraph, i64)>> {
    let gv = g.vertices[v].genus;
    if a > gv {
        return None;
    }
    let specials = g.specials(v);
    let n1 = side1.len() as i64 + 1;
    let n2 = specials.len() as i64 - side1.len() as i64 + 1;
    if 2 * a as i64 - 2 + n1 <= 0 || 2 * (gv - a) as i64 - 2 + n2 <= 0 {
        return None;
    }
    let mut base = g.clone();
    let w = base.vertices.len();
    base.vertices.push(Vertex::bare(gv - a));
    base.vertices[v] = Vertex::bare(a);
    for s in specials {
        if !side1.contains(&s) {
            base.set_special_vertex(s, w);
        }
    }
    let mut out = Vec::new();
    for ((k1, l1), (k2, l2), c) in split_decorations(&g.vertices[v]) {
        let mut h = base.clone();
        h.vertices[v].kappa = k1;
        h.vertices[v].lambda = l1;
        h.vertices[w].kappa = k2;
        h.vertices[w].lambda = l2;
        out.push((h, c));
    }
    Some(out)
}

fn subsets<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    (0u64..(1 << items.len()))
        .map(|mask| items.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &x)| x).collect())
        .collect()
}

fn rebuild(ambient: &Ambient, out: &mut TautClass, g: DecoratedGraph, c: Rational) {
    debug_assert!(super::class::validate(ambient, &g).is_ok(), "invalid generator {g} on {ambient}");
    out.push(g, c);
}

/// Pullback along the map forgetting marking `x`, which is added to factor `f`.
pub fn pullback_forgetful(c: &TautClass, x: &str, f: usize) -> Result<TautClass, TautError> {
    let amb = c.ambient();
    if amb.factor_of_marking(x).is_some() {
        return Err(TautError::MarkingCollision(x.into()));
    }
    if f >= amb.factors.len() {
        return Err(TautError::AmbientMismatch(format!("no factor {f} in {amb}")));
    }
    let mut factors = amb.factors.clone();
    let mut marks: Vec<&str> = factors[f].markings.iter().map(String::as_str).collect();
    marks.push(x);
    factors[f] = Factor::new(factors[f].genus, &marks);
    let target = Ambient::new(factors, amb.policy)?;
    let mut out = TautClass::zero(&target);
    for (g, coef) in c.terms() {
        for v in factor_vertices(amb, g, f) {
            let mut with_x = g.clone();
            with_x.legs.push(Leg { label: x.into(), vertex: v, psi: 0 });
            let xi = with_x.legs.len() - 1;
            for (sign, rest, e) in kappa_pullback_terms(&g.vertices[v].kappa) {
                let mut h = with_x.clone();
                h.vertices[v].kappa = rest;
                h.legs[xi].psi = e;
                rebuild(&target, &mut out, h, coef * ri(sign));
            }
            for s in g.specials(v) {
                let a = g.special_psi(s);
                if a == 0 {
                    continue;
                }
                let mut h = g.clone();
                let w = h.vertices.len();
                h.vertices.push(Vertex::bare(0));
                *h.special_psi_mut(s) = 0;
                h.set_special_vertex(s, w);
                h.legs.push(Leg { label: x.into(), vertex: w, psi: 0 });
                h.edges.push(Edge::new(v, a - 1, w, 0));
                rebuild(&target, &mut out, h, -coef.clone());
            }
        }
    }
    Ok(out)
}

/// Pushforward along the map forgetting marking `x`.
pub fn pushforward_forgetful(c: &TautClass, x: &str) -> Result<TautClass, TautError> {
    let amb = c.ambient();
    let f = amb.factor_of_marking(x).ok_or_else(|| TautError::MissingMarking(x.into()))?;
    let mut factors = amb.factors.clone();
    let marks: Vec<&str> = factors[f].markings.iter().map(String::as_str).filter(|m| *m != x).collect();
    factors[f] = Factor::new(factors[f].genus, &marks);
    if !factors[f].is_stable() {
        return Err(TautError::UnstableAmbient(factors[f].to_string()));
    }
    let target = Ambient::new(factors, amb.policy)?;
    let mut out = TautClass::zero(&target);
    for (g, coef) in c.terms() {
        let xi = g.leg_index(x).expect("marking on generator");
        let v = g.legs[xi].vertex;
        let b = g.legs[xi].psi;
        let mut h = g.clone();
        h.legs.remove(xi);
        if h.vertex_is_stable(v) {
            let gv = h.vertices[v].genus as i64;
            let kappa0 = 2 * gv - 2 + h.valence(v) as i64;
            let ks = g.vertices[v].kappa.factors();
            let idx: Vec<usize> = (0..ks.len()).collect();
            for s in subsets(&idx) {
                let cexp = b + s.iter().map(|&k| ks[k]).sum::<u32>();
                let rest = Mono::from_factors(idx.iter().filter(|k| !s.contains(k)).map(|&k| ks[k]));
                let mut t = h.clone();
                t.vertices[v].kappa = rest;
                match cexp {
                    0 => {
                        for sp in t.specials(v) {
                            if t.special_psi(sp) > 0 {
                                let mut u = t.clone();
                                *u.special_psi_mut(sp) -= 1;
                                rebuild(&target, &mut out, u, coef.clone());
                            }
                        }
                    }
                    1 => rebuild(&target, &mut out, t, coef * ri(kappa0)),
                    _ => {
                        t.vertices[v].kappa.add(cexp - 1, 1);
                        rebuild(&target, &mut out, t, coef.clone());
                    }
                }
            }
        } else {
            // genus-0 vertex left with two special points: contract it
            if h.vertex_degree(v) > 0 {
                continue;
            }
            let sp = h.specials(v);
            match (sp[0], sp[1]) {
                (Special::Half(e1, s1), Special::Half(e2, s2)) if e1 != e2 => {
                    let o1 = h.edges[e1].end(1 - s1);
                    let o2 = h.edges[e2].end(1 - s2);
                    h.edges.push(Edge { a: o1, b: o2 });
                    for e in [e1.max(e2), e1.min(e2)] {
                        h.edges.remove(e);
                    }
                }
                (Special::Leg(l), Special::Half(e, s)) | (Special::Half(e, s), Special::Leg(l)) => {
                    let o = h.edges[e].end(1 - s);
                    h.legs[l].vertex = o.vertex;
                    h.legs[l].psi = o.psi;
                    h.edges.remove(e);
                }
                _ => return Err(TautError::UnsupportedPushforward(g.to_string())),
            }
            h.remove_vertex(v);
            rebuild(&target, &mut out, h, coef.clone());
        }
    }
    Ok(out)
}

/// Pushforward along the gluing map joining markings `a` and `b` into a node.
/// No automorphism factor is applied.
pub fn pushforward_gluing(c: &TautClass, a: &str, b: &str) -> Result<TautClass, TautError> {
    let amb = c.ambient();
    let fa = amb.factor_of_marking(a).ok_or_else(|| TautError::MissingMarking(a.into()))?;
    let fb = amb.factor_of_marking(b).ok_or_else(|| TautError::MissingMarking(b.into()))?;
    if fa == fb && amb.policy == Policy::CompactType {
        return Err(TautError::NotCompactType(format!("self-gluing of {a} and {b}")));
    }
    let strip = |f: &Factor| -> Vec<String> { f.markings.iter().filter(|m| *m != a && *m != b).cloned().collect() };
    let mut factors: Vec<Factor> = Vec::new();
    let (lo, hi) = (fa.min(fb), fa.max(fb));
    for (i, f) in amb.factors.iter().enumerate() {
        if i == hi && fa != fb {
            continue;
        }
        if i == lo {
            let (genus, mut marks) = if fa == fb {
                (f.genus + 1, strip(f))
            } else {
                let mut m = strip(f);
                m.extend(strip(&amb.factors[hi]));
                (f.genus + amb.factors[hi].genus, m)
            };
            marks.sort();
            factors.push(Factor { genus, markings: marks });
        } else {
            factors.push(f.clone());
        }
    }
    let target = Ambient::new(factors, amb.policy)?;
    let mut out = TautClass::zero(&target);
    for (g, coef) in c.terms() {
        let ia = g.leg_index(a).expect("marking on generator");
        let ib = g.leg_index(b).expect("marking on generator");
        let mut h = g.clone();
        let (la, lb) = (h.legs[ia].clone(), h.legs[ib].clone());
        h.edges.push(Edge::new(la.vertex, la.psi, lb.vertex, lb.psi));
        h.legs.retain(|l| l.label != a && l.label != b);
        rebuild(&target, &mut out, h, coef.clone());
    }
    Ok(out)
}

/// Gluing map `M_{g1, P1+h} × M_{g2, P2+h'} → M_{g, P1+P2}` onto factor `factor`
/// of an ambient; a separating one-edge boundary graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneEdgeGluing {
    pub factor: usize,
    pub genus1: u32,
    pub side1: Vec<String>,
    pub h: String,
    pub h2: String,
}

impl OneEdgeGluing {
    pub fn new(target: &Ambient, factor: usize, genus1: u32, side1: &[&str], h: &str, h2: &str) -> Result<Self, TautError> {
        let f = target.factors.get(factor).ok_or_else(|| TautError::AmbientMismatch(format!("no factor {factor}")))?;
        let mut side1: Vec<String> = side1.iter().map(|s| s.to_string()).collect();
        side1.sort();
        if let Some(m) = side1.iter().find(|m| !f.markings.contains(m)) {
            return Err(TautError::MissingMarking(m.clone()));
        }
        if genus1 > f.genus {
            return Err(TautError::AmbientMismatch(format!("genus {genus1} exceeds {f}")));
        }
        for l in [h, h2] {
            if target.factor_of_marking(l).is_some() || h == h2 {
                return Err(TautError::MarkingCollision(l.into()));
            }
        }
        let gl = OneEdgeGluing { factor, genus1, side1, h: h.into(), h2: h2.into() };
        gl.source(target)?;
        Ok(gl)
    }

    /// The product ambient the gluing map starts from.
    pub fn source(&self, target: &Ambient) -> Result<Ambient, TautError> {
        let f = &target.factors[self.factor];
        let mut m1: Vec<&str> = self.side1.iter().map(String::as_str).collect();
        m1.push(&self.h);
        let mut m2: Vec<&str> =
            f.markings.iter().filter(|m| !self.side1.contains(m)).map(String::as_str).collect();
        m2.push(&self.h2);
        let mut factors = target.factors.clone();
        factors.splice(
            self.factor..=self.factor,
            [Factor::new(self.genus1, &m1), Factor::new(f.genus - self.genus1, &m2)],
        );
        Ambient::new(factors, target.policy)
    }

    fn side_matches(&self, g: &DecoratedGraph) -> bool {
        let hv = g.legs[g.leg_index(&self.h).unwrap()].vertex;
        let h2v = g.legs[g.leg_index(&self.h2).unwrap()].vertex;
        let comps = g.components();
        let c1 = comps.iter().find(|c| c.contains(&hv)).unwrap();
        if c1.contains(&h2v) {
            return false;
        }
        let mut want = self.side1.clone();
        want.push(self.h.clone());
        want.sort();
        g.component_genus(c1) == self.genus1 && g.component_legs(c1) == want
    }

    /// `ξ^*` of a class on the target ambient.
    pub fn pullback(&self, c: &TautClass) -> Result<TautClass, TautError> {
        let amb = c.ambient();
        let source = self.source(amb)?;
        let mut out = TautClass::zero(&source);
        for (g, coef) in c.terms() {
            let verts = factor_vertices(amb, g, self.factor);
            // edges of the generator identified with the glued node: excess term
            for (ei, e) in g.edges.iter().enumerate() {
                if !verts.contains(&e.a.vertex) || e.is_loop() {
                    continue;
                }
                for side in 0..2 {
                    let mut h = g.clone();
                    h.edges.remove(ei);
                    let (p, q) = (e.end(side), e.end(1 - side));
                    h.legs.push(Leg { label: self.h.clone(), vertex: p.vertex, psi: p.psi });
                    h.legs.push(Leg { label: self.h2.clone(), vertex: q.vertex, psi: q.psi });
                    if !self.side_matches(&h) {
                        continue;
                    }
                    let n = h.legs.len();
                    for k in [n - 2, n - 1] {
                        let mut t = h.clone();
                        t.legs[k].psi += 1;
                        rebuild(&source, &mut out, t, -coef.clone());
                    }
                }
            }
            // a vertex splits off the new node
            for &v in &verts {
                let specials = g.specials(v);
                for s1 in subsets(&specials) {
                    for a in 0..=g.vertices[v].genus {
                        let Some(splits) = split_vertex(g, v, a, &s1) else { continue };
                        for (mut h, m) in splits {
                            let w = h.vertices.len() - 1;
                            h.legs.push(Leg { label: self.h.clone(), vertex: v, psi: 0 });
                            h.legs.push(Leg { label: self.h2.clone(), vertex: w, psi: 0 });
                            if self.side_matches(&h) {
                                rebuild(&source, &mut out, h, coef * ri(m));
                            } else {
                                break;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

const GLUE_A: &str = "#node-a";
const GLUE_B: &str = "#node-b";

/// `d · c` where every term of `d` has degree at most one: scalars, `λ_1`, `κ_1`,
/// `ψ_p` and undecorated separating one-edge generators.
pub fn multiply(d: &TautClass, c: &TautClass) -> Result<TautClass, TautError> {
    let amb = c.ambient();
    if d.ambient() != amb {
        return Err(TautError::AmbientMismatch(format!("{} vs {}", d.ambient(), amb)));
    }
    let mut out = TautClass::zero(amb);
    for (dg, dc) in d.terms() {
        let deg = dg.degree();
        if deg == 0 {
            out = out.add(&c.scale(dc));
            continue;
        }
        if deg > 1 {
            return Err(TautError::UnsupportedDivisor(dg.to_string()));
        }
        if dg.edges.is_empty() {
            if let Some(l) = dg.legs.iter().find(|l| l.psi == 1) {
                for (g, coef) in c.terms() {
                    let mut h = g.clone();
                    let i = h.leg_index(&l.label).unwrap();
                    h.legs[i].psi += 1;
                    rebuild(amb, &mut out, h, coef * dc);
                }
                continue;
            }
            let (u, vert) = dg.vertices.iter().enumerate().find(|(_, v)| !v.is_bare()).unwrap();
            let is_lambda = vert.lambda.exp(1) == 1;
            let f = factor_of_vertex(amb, dg, u);
            for (g, coef) in c.terms() {
                for v in factor_vertices(amb, g, f) {
                    let mut h = g.clone();
                    if is_lambda {
                        h.vertices[v].lambda.add(1, 1);
                    } else {
                        h.vertices[v].kappa.add(1, 1);
                    }
                    rebuild(amb, &mut out, h, coef * dc);
                }
            }
            continue;
        }
        let e = dg.edges[0];
        if e.is_loop() {
            return Err(TautError::UnsupportedDivisor(format!("self-edge generator {dg}")));
        }
        let f = factor_of_vertex(amb, dg, e.a.vertex);
        let mut cut = dg.clone();
        cut.edges.clear();
        let comps = cut.components();
        let side = comps.iter().find(|k| k.contains(&e.a.vertex)).unwrap();
        let marks = cut.component_legs(side);
        let refs: Vec<&str> = marks.iter().map(String::as_str).collect();
        let gl = OneEdgeGluing::new(amb, f, cut.component_genus(side), &refs, GLUE_A, GLUE_B)?;
        let pulled = gl.pullback(c)?;
        let back = pushforward_gluing(&pulled, GLUE_A, GLUE_B)?;
        out = out.add(&back.with_ambient(amb)?.scale(dc));
    }
    Ok(out)
}

fn factor_of_vertex(amb: &Ambient, g: &DecoratedGraph, v: usize) -> usize {
    (0..amb.factors.len()).find(|&f| factor_vertices(amb, g, f).contains(&v)).unwrap_or(0)
}

/// Replaces every `κ_1` at a vertex by `12λ_1 + Σ_h ψ_h - δ_v`.
pub fn kappa1_expand(c: &TautClass) -> TautClass {
    let amb = c.ambient().clone();
    let mut done = TautClass::zero(&amb);
    let mut pending: Vec<(DecoratedGraph, Rational)> = c.terms().map(|(g, r)| (g.clone(), r.clone())).collect();
    while let Some((g, coef)) = pending.pop() {
        let Some(v) = (0..g.vertices.len()).find(|&v| g.vertices[v].kappa.exp(1) > 0) else {
            done.push(g, coef);
            continue;
        };
        let mut rest = g.clone();
        rest.vertices[v].kappa.remove_one(1);
        let mut step = TautClass::zero(&amb);
        let mut l = rest.clone();
        l.vertices[v].lambda.add(1, 1);
        step.push(l, ri(12));
        for s in rest.specials(v) {
            let mut t = rest.clone();
            *t.special_psi_mut(s) += 1;
            step.push(t, Rational::one());
        }
        let half = Rational::new(1.into(), 2.into());
        let specials = rest.specials(v);
        for s1 in subsets(&specials) {
            for a in 0..=rest.vertices[v].genus {
                let Some(splits) = split_vertex(&rest, v, a, &s1) else { continue };
                for (mut h, m) in splits {
                    let w = h.vertices.len() - 1;
                    h.edges.push(Edge::new(v, 0, w, 0));
                    step.push(h, -&half * ri(m));
                }
            }
        }
        if amb.policy == Policy::Stable && rest.vertices[v].genus >= 1 {
            let mut h = rest.clone();
            h.vertices[v].genus -= 1;
            h.edges.push(Edge::new(v, 0, v, 0));
            step.push(h, -half.clone());
        }
        for (t, r) in step.terms() {
            pending.push((t.clone(), r * &coef));
        }
    }
    done
}

impl TautClass {
    pub fn pullback_forgetful(&self, x: &str, factor: usize) -> Result<TautClass, TautError> {
        pullback_forgetful(self, x, factor)
    }

    pub fn pushforward_forgetful(&self, x: &str) -> Result<TautClass, TautError> {
        pushforward_forgetful(self, x)
    }

    pub fn pushforward_gluing(&self, a: &str, b: &str) -> Result<TautClass, TautError> {
        pushforward_gluing(self, a, b)
    }

    /// Sum of all coefficients.
    pub fn total_coefficient(&self) -> Rational {
        self.terms().map(|(_, c)| c.clone()).fold(Rational::zero(), |a, b| a + b)
    }
}
