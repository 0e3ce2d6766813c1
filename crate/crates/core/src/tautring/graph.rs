use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::TautError;

/// Monomial `Π x_i^{e_i}` in indexed classes (κ_i or λ_i), stored as index → exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub BTreeMap<u32, u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(BTreeMap::new())
    }

    pub fn single(i: u32, e: u32) -> Self {
        let mut m = Mono::one();
        m.add(i, e);
        m
    }

    pub fn add(&mut self, i: u32, e: u32) {
        if e > 0 {
            *self.0.entry(i).or_insert(0) += e;
        }
    }

    /// Removes one factor `x_i`; returns false when absent.
    pub fn remove_one(&mut self, i: u32) -> bool {
        match self.0.get_mut(&i) {
            Some(e) => {
                *e -= 1;
                if *e == 0 {
                    self.0.remove(&i);
                }
                true
            }
            None => false,
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(i, e)| i * e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Factors with repetition, e.g. κ_1^2 κ_3 ↦ [1, 1, 3].
    pub fn factors(&self) -> Vec<u32> {
        self.0.iter().flat_map(|(&i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    pub fn from_factors(fs: impl IntoIterator<Item = u32>) -> Self {
        let mut m = Mono::one();
        for i in fs {
            m.add(i, 1);
        }
        m
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.clone();
        for (&i, &e) in &other.0 {
            m.add(i, e);
        }
        m
    }

    pub fn exp(&self, i: u32) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub genus: u32,
    pub kappa: Mono,
    pub lambda: Mono,
}

impl Vertex {
    pub fn bare(genus: u32) -> Self {
        Vertex { genus, kappa: Mono::one(), lambda: Mono::one() }
    }

    pub fn is_bare(&self) -> bool {
        self.kappa.is_one() && self.lambda.is_one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub vertex: usize,
    pub psi: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: HalfEdge,
    pub b: HalfEdge,
}

impl Edge {
    pub fn new(va: usize, pa: u32, vb: usize, pb: u32) -> Self {
        Edge { a: HalfEdge { vertex: va, psi: pa }, b: HalfEdge { vertex: vb, psi: pb } }
    }

    pub fn end(&self, side: usize) -> HalfEdge {
        if side == 0 {
            self.a
        } else {
            self.b
        }
    }

    pub fn end_mut(&mut self, side: usize) -> &mut HalfEdge {
        if side == 0 {
            &mut self.a
        } else {
            &mut self.b
        }
    }

    pub fn is_loop(&self) -> bool {
        self.a.vertex == self.b.vertex
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Leg {
    pub label: String,
    pub vertex: usize,
    pub psi: u32,
}

/// Special point at a vertex: a leg or one side of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Special {
    Leg(usize),
    Half(usize, usize),
}

/// A stable graph decorated by κ/λ monomials on vertices and ψ powers on
/// half-edges and legs. It stands for the class `ξ_Γ*(decoration)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub legs: Vec<Leg>,
}

impl DecoratedGraph {
    pub fn single(genus: u32, legs: &[String]) -> Self {
        DecoratedGraph {
            vertices: vec![Vertex::bare(genus)],
            edges: Vec::new(),
            legs: legs.iter().map(|l| Leg { label: l.clone(), vertex: 0, psi: 0 }).collect(),
        }
    }

    pub fn leg_index(&self, label: &str) -> Option<usize> {
        self.legs.iter().position(|l| l.label == label)
    }

    pub fn specials(&self, v: usize) -> Vec<Special> {
        let mut out: Vec<Special> = Vec::new();
        for (i, l) in self.legs.iter().enumerate() {
            if l.vertex == v {
                out.push(Special::Leg(i));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            for side in 0..2 {
                if e.end(side).vertex == v {
                    out.push(Special::Half(i, side));
                }
            }
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.legs.iter().filter(|l| l.vertex == v).count()
            + self
                .edges
                .iter()
                .map(|e| (e.a.vertex == v) as usize + (e.b.vertex == v) as usize)
                .sum::<usize>()
    }

    pub fn special_psi(&self, s: Special) -> u32 {
        match s {
            Special::Leg(i) => self.legs[i].psi,
            Special::Half(e, side) => self.edges[e].end(side).psi,
        }
    }

    pub fn special_psi_mut(&mut self, s: Special) -> &mut u32 {
        match s {
            Special::Leg(i) => &mut self.legs[i].psi,
            Special::Half(e, side) => &mut self.edges[e].end_mut(side).psi,
        }
    }

    pub fn set_special_vertex(&mut self, s: Special, v: usize) {
        match s {
            Special::Leg(i) => self.legs[i].vertex = v,
            Special::Half(e, side) => self.edges[e].end_mut(side).vertex = v,
        }
    }

    /// Degree of the decoration at `v`, ψ powers included.
    pub fn vertex_degree(&self, v: usize) -> u32 {
        let vert = &self.vertices[v];
        vert.kappa.degree()
            + vert.lambda.degree()
            + self.specials(v).into_iter().map(|s| self.special_psi(s)).sum::<u32>()
    }

    /// Codimension of the generator.
    pub fn degree(&self) -> u32 {
        (0..self.vertices.len()).map(|v| self.vertex_degree(v)).sum::<u32>() + self.edges.len() as u32
    }

    pub fn is_undecorated(&self) -> bool {
        self.vertices.iter().all(Vertex::is_bare)
            && self.legs.iter().all(|l| l.psi == 0)
            && self.edges.iter().all(|e| e.a.psi == 0 && e.b.psi == 0)
    }

    pub fn strip(&self) -> DecoratedGraph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.kappa = Mono::one();
            v.lambda = Mono::one();
        }
        for l in &mut g.legs {
            l.psi = 0;
        }
        for e in &mut g.edges {
            e.a.psi = 0;
            e.b.psi = 0;
        }
        g
    }

    pub fn check_stable(&self) -> Result<(), TautError> {
        for (v, vert) in self.vertices.iter().enumerate() {
            let n = self.valence(v);
            if 2 * vert.genus as i64 - 2 + n as i64 <= 0 {
                return Err(TautError::Unstable { vertex: v, genus: vert.genus, valence: n });
            }
        }
        Ok(())
    }

    pub fn vertex_is_stable(&self, v: usize) -> bool {
        2 * self.vertices[v].genus as i64 - 2 + self.valence(v) as i64 > 0
    }

    /// True when the generator vanishes for dimension reasons or because
    /// `λ_i = 0` for `i` above the vertex genus.
    pub fn vanishes(&self) -> bool {
        (0..self.vertices.len()).any(|v| {
            let vert = &self.vertices[v];
            let dim = 3 * vert.genus as i64 - 3 + self.valence(v) as i64;
            self.vertex_degree(v) as i64 > dim || vert.lambda.max_index() > vert.genus
        })
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.a.vertex, e.b.vertex);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Arithmetic genus of the component spanned by `verts`.
    pub fn component_genus(&self, verts: &[usize]) -> u32 {
        let inside = |v: usize| verts.contains(&v);
        let e = self.edges.iter().filter(|e| inside(e.a.vertex)).count() as i64;
        let g: i64 = verts.iter().map(|&v| self.vertices[v].genus as i64).sum();
        (g + e - verts.len() as i64 + 1) as u32
    }

    pub fn component_legs(&self, verts: &[usize]) -> Vec<String> {
        let mut out: Vec<String> =
            self.legs.iter().filter(|l| verts.contains(&l.vertex)).map(|l| l.label.clone()).collect();
        out.sort();
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edges.iter().all(|e| !e.is_loop())
            && self.edges.len() + self.components().len() == self.vertices.len()
    }

    /// Removes vertex `v`, which must carry no legs or edges any more.
    pub fn remove_vertex(&mut self, v: usize) {
        self.vertices.remove(v);
        let shift = |x: &mut usize| {
            if *x > v {
                *x -= 1
            }
        };
        for l in &mut self.legs {
            shift(&mut l.vertex);
        }
        for e in &mut self.edges {
            shift(&mut e.a.vertex);
            shift(&mut e.b.vertex);
        }
    }

    /// Undecorated graph obtained by contracting every edge not in `keep`.
    pub fn contract_except(&self, keep: &[usize]) -> DecoratedGraph {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for (i, e) in self.edges.iter().enumerate() {
            if !keep.contains(&i) {
                uf.union(e.a.vertex, e.b.vertex);
            }
        }
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..n {
            let r = uf.find(v);
            let next = index.len();
            index.entry(r).or_insert(next);
        }
        let mut genus = vec![0i64; index.len()];
        let mut count = vec![0i64; index.len()];
        for v in 0..n {
            let k = index[&uf.find(v)];
            genus[k] += self.vertices[v].genus as i64;
            count[k] += 1;
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !keep.contains(&i) {
                genus[index[&uf.find(e.a.vertex)]] += 1;
            }
        }
        let root: Vec<usize> = (0..n).map(|v| index[&uf.find(v)]).collect();
        let map = |v: usize| root[v];
        DecoratedGraph {
            vertices: (0..index.len()).map(|k| Vertex::bare((genus[k] - count[k] + 1) as u32)).collect(),
            edges: keep.iter().map(|&i| Edge::new(map(self.edges[i].a.vertex), 0, map(self.edges[i].b.vertex), 0)).collect(),
            legs: self.legs.iter().map(|l| Leg { label: l.label.clone(), vertex: map(l.vertex), psi: 0 }).collect(),
        }
    }

    /// Disjoint union; vertex indices of `other` are shifted.
    pub fn disjoint_union(&self, other: &DecoratedGraph) -> DecoratedGraph {
        let k = self.vertices.len();
        let mut g = self.clone();
        g.vertices.extend(other.vertices.iter().cloned());
        g.edges.extend(other.edges.iter().map(|e| Edge::new(e.a.vertex + k, e.a.psi, e.b.vertex + k, e.b.psi)));
        g.legs.extend(other.legs.iter().map(|l| Leg { label: l.label.clone(), vertex: l.vertex + k, psi: l.psi }));
        g
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}


fn initial_colors(g: &DecoratedGraph) -> Vec<usize> {
    let keys: Vec<(u32, Mono, Mono, Vec<(String, u32)>, Vec<u32>)> = (0..g.vertices.len())
        .map(|v| {
            let vert = &g.vertices[v];
            let mut legs: Vec<(String, u32)> =
                g.legs.iter().filter(|l| l.vertex == v).map(|l| (l.label.clone(), l.psi)).collect();
            legs.sort();
            let mut halves: Vec<u32> = Vec::new();
            for e in &g.edges {
                if e.a.vertex == v {
                    halves.push(e.a.psi);
                }
                if e.b.vertex == v {
                    halves.push(e.b.psi);
                }
            }
            halves.sort();
            (vert.genus, vert.kappa.clone(), vert.lambda.clone(), legs, halves)
        })
        .collect();
    rank(&keys)
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

/// Colour refinement: a vertex colour absorbs the multiset of neighbour colours.
fn refine(g: &DecoratedGraph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.vertices.len();
    loop {
        let keys: Vec<(usize, Vec<(usize, u32, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32, u32)> = Vec::new();
                for e in &g.edges {
                    if e.a.vertex == v {
                        nb.push((colors[e.b.vertex], e.a.psi, e.b.psi));
                    }
                    if e.b.vertex == v {
                        nb.push((colors[e.a.vertex], e.b.psi, e.a.psi));
                    }
                }
                nb.sort();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&keys);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn normalized_edges(g: &DecoratedGraph, pos: &[usize]) -> Vec<Edge> {
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|e| {
            let a = HalfEdge { vertex: pos[e.a.vertex], psi: e.a.psi };
            let b = HalfEdge { vertex: pos[e.b.vertex], psi: e.b.psi };
            if (a.vertex, a.psi) <= (b.vertex, b.psi) {
                Edge { a, b }
            } else {
                Edge { a: b, b: a }
            }
        })
        .collect();
    edges.sort();
    edges
}

/// Canonical representative of the isomorphism class of `g` together with the
/// order of its decoration-preserving automorphism group.
pub fn canonicalize(g: &DecoratedGraph) -> (DecoratedGraph, u64) {
    let n = g.vertices.len();
    let colors = refine(g, initial_colors(g));
    // class members in colour order
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(colors[v]).or_default().push(v);
    }
    let groups: Vec<Vec<usize>> = classes.into_values().collect();

    let mut best: Option<Vec<Edge>> = None;
    let mut best_pos: Vec<usize> = Vec::new();
    let mut ties: u64 = 0;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    search(g, &groups, 0, &mut order, &mut best, &mut best_pos, &mut ties);

    let pos = best_pos;
    let mut vertices = vec![Vertex::bare(0); n];
    for v in 0..n {
        vertices[pos[v]] = g.vertices[v].clone();
    }
    let edges = best.unwrap_or_default();
    let mut legs: Vec<Leg> =
        g.legs.iter().map(|l| Leg { label: l.label.clone(), vertex: pos[l.vertex], psi: l.psi }).collect();
    legs.sort_by(|a, b| a.label.cmp(&b.label));

    let mut aut = ties;
    let mut run = 1u64;
    for i in 0..edges.len() {
        if i > 0 && edges[i] == edges[i - 1] {
            run += 1;
            aut *= run;
        } else {
            run = 1;
        }
        if edges[i].is_loop() && edges[i].a.psi == edges[i].b.psi {
            aut *= 2;
        }
    }
    (DecoratedGraph { vertices, edges, legs }, aut)
}

fn search(
    g: &DecoratedGraph,
    groups: &[Vec<usize>],
    gi: usize,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<Edge>>,
    best_pos: &mut Vec<usize>,
    ties: &mut u64,
) {
    if gi == groups.len() {
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let enc = normalized_edges(g, &pos);
        match best {
            Some(b) if enc > *b => {}
            Some(b) if enc == *b => *ties += 1,
            _ => {
                *best = Some(enc);
                *best_pos = pos;
                *ties = 1;
            }
        }
        return;
    }
    permute(&groups[gi], &mut Vec::new(), &mut vec![false; groups[gi].len()], &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        search(g, groups, gi + 1, order, best, best_pos, ties);
        order.truncate(len);
    });
}

fn permute(items: &[usize], cur: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permute(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

fn fmt_mono(out: &mut Vec<String>, target: &str, name: &str, m: &Mono) {
    for (i, e) in &m.0 {
        out.push(format!("{target}:{name}{i}^{e}"));
    }
}

impl fmt::Display for DecoratedGraph {
    /// `V <genus> ...; E <i>-<j> ...; L <label>@<i> ...; decor <target>:<symbol>^<exp> ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.genus.to_string()).collect();
        let es: Vec<String> = self.edges.iter().map(|e| format!("{}-{}", e.a.vertex, e.b.vertex)).collect();
        let ls: Vec<String> = self.legs.iter().map(|l| format!("{}@{}", l.label, l.vertex)).collect();
        let mut ds: Vec<String> = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            fmt_mono(&mut ds, &format!("v{i}"), "kappa", &v.kappa);
            fmt_mono(&mut ds, &format!("v{i}"), "lambda", &v.lambda);
        }
        for (i, e) in self.edges.iter().enumerate() {
            for (side, h) in [(0, e.a), (1, e.b)] {
                if h.psi > 0 {
                    ds.push(format!("h{i}.{side}:psi^{}", h.psi));
                }
            }
        }
        for l in &self.legs {
            if l.psi > 0 {
                ds.push(format!("@{}:psi^{}", l.label, l.psi));
            }
        }
        write!(f, "V {}; E {}; L {}; decor {}", vs.join(" "), es.join(" "), ls.join(" "), ds.join(" "))
    }
}

impl FromStr for DecoratedGraph {
    type Err = TautError;

    fn from_str(s: &str) -> Result<Self, TautError> {
        let err = |m: &str| TautError::Parse(format!("{m} in {s:?}"));
        let mut g = DecoratedGraph::default();
        let mut decor: Vec<&str> = Vec::new();
        for section in s.split(';') {
            let section = section.trim();
            if section.is_empty() {
                continue;
            }
            let (head, rest) = section.split_once(char::is_whitespace).unwrap_or((section, ""));
            let items = rest.split_whitespace();
            match head {
                "V" => {
                    for it in items {
                        g.vertices.push(Vertex::bare(it.parse().map_err(|_| err("bad genus"))?));
                    }
                }
                "E" => {
                    for it in items {
                        let (a, b) = it.split_once('-').ok_or_else(|| err("bad edge"))?;
                        let a = a.parse().map_err(|_| err("bad edge"))?;
                        let b = b.parse().map_err(|_| err("bad edge"))?;
                        g.edges.push(Edge::new(a, 0, b, 0));
                    }
                }
                "L" => {
                    for it in items {
                        let (l, v) = it.rsplit_once('@').ok_or_else(|| err("bad leg"))?;
                        let v = v.parse().map_err(|_| err("bad leg"))?;
                        g.legs.push(Leg { label: l.to_string(), vertex: v, psi: 0 });
                    }
                }
                "decor" => decor.extend(items),
                _ => return Err(err("unknown section")),
            }
        }
        let n = g.vertices.len();
        if g.edges.iter().any(|e| e.a.vertex >= n || e.b.vertex >= n) || g.legs.iter().any(|l| l.vertex >= n) {
            return Err(err("vertex index out of range"));
        }
        for d in decor {
            let (target, sym) = d.rsplit_once(':').ok_or_else(|| err("bad decoration"))?;
            let (sym, exp) = sym.split_once('^').unwrap_or((sym, "1"));
            let exp: u32 = exp.parse().map_err(|_| err("bad exponent"))?;
            if let Some(label) = target.strip_prefix('@') {
                let i = g.leg_index(label).ok_or_else(|| err("unknown leg"))?;
                g.legs[i].psi += exp;
            } else if let Some(h) = target.strip_prefix('h') {
                let (e, side) = h.split_once('.').ok_or_else(|| err("bad half-edge"))?;
                let e: usize = e.parse().map_err(|_| err("bad half-edge"))?;
                let side: usize = side.parse().map_err(|_| err("bad half-edge"))?;
                if e >= g.edges.len() || side > 1 {
                    return Err(err("half-edge out of range"));
                }
                g.edges[e].end_mut(side).psi += exp;
            } else if let Some(v) = target.strip_prefix('v') {
                let v: usize = v.parse().map_err(|_| err("bad vertex"))?;
                if v >= n {
                    return Err(err("vertex out of range"));
                }
                if let Some(i) = sym.strip_prefix("kappa") {
                    g.vertices[v].kappa.add(i.parse().map_err(|_| err("bad kappa"))?, exp);
                } else if let Some(i) = sym.strip_prefix("lambda") {
                    g.vertices[v].lambda.add(i.parse().map_err(|_| err("bad lambda"))?, exp);
                } else {
                    return Err(err("unknown vertex symbol"));
                }
            } else {
                return Err(err("unknown decoration target"));
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex(g1: u32, g2: u32) -> DecoratedGraph {
        DecoratedGraph {
            vertices: vec![Vertex::bare(g1), Vertex::bare(g2)],
            edges: vec![Edge::new(0, 0, 1, 0)],
            legs: vec![],
        }
    }

    #[test]
    fn automorphisms() {
        assert_eq!(canonicalize(&DecoratedGraph::single(4, &[])).1, 1);
        assert_eq!(canonicalize(&two_vertex(2, 2)).1, 2);
        assert_eq!(canonicalize(&two_vertex(1, 3)).1, 1);
        let mut loop_graph = DecoratedGraph::single(3, &[]);
        loop_graph.edges.push(Edge::new(0, 0, 0, 0));
        assert_eq!(canonicalize(&loop_graph).1, 2);
        loop_graph.edges[0].a.psi = 1;
        assert_eq!(canonicalize(&loop_graph).1, 1);
    }

    #[test]
    fn roundtrip_text() {
        let s = "V 1 3; E 0-1; L p@1; decor v1:kappa2^1 h0.0:psi^1 @p:psi^2";
        let g: DecoratedGraph = s.parse().unwrap();
        assert_eq!(g.to_string(), s);
        assert_eq!(g.degree(), 2 + 1 + 2 + 1);
    }

    #[test]
    fn contraction_genus() {
        let g: DecoratedGraph = "V 1 0 2; E 0-1 1-2 1-2; L".parse().unwrap();
        let c = g.contract_except(&[0]);
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(c.vertices.iter().map(|v| v.genus).sum::<u32>(), 4);
    }
}
