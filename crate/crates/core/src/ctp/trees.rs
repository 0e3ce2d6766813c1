use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::CtpError;

/// Tree of curve components; vertex `i` has genus `genus[i]`, edges are unordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenusTree {
    pub genus: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
}

impl GenusTree {
    pub fn new(genus: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self, CtpError> {
        let t = GenusTree { genus, edges: edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect() };
        if !t.is_tree() {
            return Err(CtpError::NotATree(t.to_string()));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.genus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genus.is_empty()
    }

    pub fn total_genus(&self) -> u32 {
        self.genus.iter().sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    fn is_tree(&self) -> bool {
        let n = self.len();
        if n == 0 || self.edges.len() != n - 1 || self.edges.iter().any(|&(a, b)| a == b || b >= n) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Genus-0 vertices need three edges, a lone genus-1 vertex is allowed.
    pub fn is_stable(&self) -> bool {
        (0..self.len()).all(|v| {
            let d = self.degree(v);
            match self.genus[v] {
                0 => d >= 3,
                _ => true,
            }
        })
    }

    fn centers(&self) -> Vec<usize> {
        let n = self.len();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        let mut remaining = n;
        let mut removed = vec![false; n];
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                removed[v] = true;
            }
            for &v in &layer {
                for w in self.neighbours(v) {
                    if !removed[w] {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        (0..n).filter(|&v| !removed[v]).collect()
    }

    fn encode(&self, v: usize, parent: Option<usize>, order: &mut Vec<usize>) -> String {
        let mut kids: Vec<(String, Vec<usize>)> = self
            .neighbours(v)
            .into_iter()
            .filter(|&w| Some(w) != parent)
            .map(|w| {
                let mut o = Vec::new();
                (self.encode(w, Some(v), &mut o), o)
            })
            .collect();
        kids.sort();
        order.push(v);
        let mut s = format!("({}", self.genus[v]);
        for (k, o) in kids {
            s.push_str(&k);
            order.extend(o);
        }
        s.push(')');
        s
    }

    /// Isomorphism-invariant string and the vertex order realising it.
    pub fn canonical_key(&self) -> (String, Vec<usize>) {
        self.centers()
            .into_iter()
            .map(|c| {
                let mut order = Vec::new();
                (self.encode(c, None, &mut order), order)
            })
            .min()
            .expect("non-empty tree")
    }

    /// The tree relabelled in canonical vertex order.
    pub fn canonical(&self) -> GenusTree {
        let (_, order) = self.canonical_key();
        let mut pos = vec![0; self.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b]))).collect();
        edges.sort();
        GenusTree { genus: order.iter().map(|&v| self.genus[v]).collect(), edges }
    }
}

impl fmt::Display for GenusTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.genus.iter().map(u32::to_string).collect();
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "V {}; E {}", g.join(" "), e.join(" "))
    }
}

impl FromStr for GenusTree {
    type Err = CtpError;

    fn from_str(s: &str) -> Result<Self, CtpError> {
        let bad = || CtpError::Parse(s.to_string());
        let mut genus = None;
        let mut edges = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some(rest) = part.strip_prefix('V') {
                genus = Some(rest.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<Vec<u32>, _>>()?);
            } else if let Some(rest) = part.strip_prefix('E') {
                for t in rest.split_whitespace() {
                    let (a, b) = t.split_once('-').ok_or_else(bad)?;
                    edges.push((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
                }
            } else {
                return Err(bad());
            }
        }
        GenusTree::new(genus.ok_or_else(bad)?, edges)
    }
}

/// All stable trees of genus `g` without markings, up to isomorphism.
pub fn enumerate_stable_trees(g: u32, positive_only: bool, max_edges: Option<usize>) -> Vec<GenusTree> {
    let max_vertices = if g <= 1 { 1 } else { 2 * g as usize - 2 };
    let max_vertices = max_edges.map_or(max_vertices, |e| max_vertices.min(e + 1));
    let min_genus = if positive_only { 1 } else { 0 };
    let mut out = BTreeSet::new();
    let mut layer: BTreeSet<GenusTree> =
        (min_genus..=g).map(|a| GenusTree { genus: vec![a], edges: vec![] }).collect();
    for n in 1..=max_vertices {
        for t in &layer {
            if t.total_genus() == g && t.is_stable() {
                out.insert(t.clone());
            }
        }
        if n == max_vertices {
            break;
        }
        let mut next = BTreeSet::new();
        for t in &layer {
            for a in min_genus..=g - t.total_genus() {
                for v in 0..t.len() {
                    let mut genus = t.genus.clone();
                    genus.push(a);
                    let mut edges = t.edges.clone();
                    edges.push((v, n));
                    next.insert(GenusTree { genus, edges }.canonical());
                }
            }
        }
        layer = next;
    }
    out.into_iter().collect()
}
