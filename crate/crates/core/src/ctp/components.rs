use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::trees::{enumerate_stable_trees, GenusTree};
use super::CtpError;

/// Above this many candidate labelings enumeration refuses to run.
pub const ENUMERATION_LIMIT: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
    PlusMinus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::PlusMinus => "+-",
        })
    }
}

impl FromStr for Sign {
    type Err = CtpError;

    fn from_str(s: &str) -> Result<Self, CtpError> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            "+-" | "±" | "pm" => Ok(Sign::PlusMinus),
            _ => Err(CtpError::Parse(s.to_string())),
        }
    }
}

/// Pair of trees with a genus-preserving vertex bijection `nu` from the
/// vertices of `t1` to those of `t2` and signs on the vertices of `t1` of
/// genus at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub t1: GenusTree,
    pub t2: GenusTree,
    pub nu: Vec<usize>,
    pub sigma: Vec<Option<Sign>>,
}

impl Component {
    pub fn new(t1: GenusTree, t2: GenusTree, nu: Vec<usize>, sigma: Vec<Option<Sign>>) -> Result<Self, CtpError> {
        let c = Component { t1, t2, nu, sigma };
        c.validate()?;
        Ok(c)
    }

    pub fn genus(&self) -> u32 {
        self.t1.total_genus()
    }

    pub fn validate(&self) -> Result<(), CtpError> {
        let n = self.t1.len();
        let fail = |why: &str| Err(CtpError::InvalidComponent(format!("{why}: {self}")));
        if self.t2.len() != n || self.nu.len() != n || self.sigma.len() != n {
            return fail("size mismatch");
        }
        let image: BTreeSet<usize> = self.nu.iter().copied().collect();
        if image.len() != n || image.iter().any(|&w| w >= n) {
            return fail("nu is not a bijection");
        }
        for v in 0..n {
            let g = self.t1.genus[v];
            if g == 0 {
                return fail("genus-0 vertex");
            }
            if self.t2.genus[self.nu[v]] != g {
                return fail("nu does not preserve genus");
            }
            match (g, self.sigma[v]) {
                (1, None) | (2, Some(Sign::PlusMinus)) => {}
                (g, Some(Sign::Plus | Sign::Minus)) if g >= 3 => {}
                _ => return fail("sign function"),
            }
        }
        for &(a, b) in &self.t1.edges {
            if self.t1.genus[a] == 1 && self.t1.genus[b] == 1 && self.t2.has_edge(self.nu[a], self.nu[b]) {
                return fail("elliptic pair");
            }
        }
        Ok(())
    }

    /// Same component with the roles of the two curves exchanged.
    pub fn swapped(&self) -> Component {
        let n = self.nu.len();
        let mut inv = vec![0; n];
        let mut sigma = vec![None; n];
        for v in 0..n {
            inv[self.nu[v]] = v;
            sigma[self.nu[v]] = self.sigma[v];
        }
        Component { t1: self.t2.clone(), t2: self.t1.clone(), nu: inv, sigma }
    }

    /// Representative of the class under relabelling the vertices of both trees.
    pub fn canonical(&self) -> Component {
        let n = self.nu.len();
        // identify the vertices of t2 with those of t1 through nu
        let mut inv = vec![0; n];
        for v in 0..n {
            inv[self.nu[v]] = v;
        }
        let e2: Vec<(usize, usize)> = self.t2.edges.iter().map(|&(a, b)| (inv[a], inv[b])).collect();
        let label: Vec<(u32, Option<Sign>)> = (0..n).map(|v| (self.t1.genus[v], self.sigma[v])).collect();
        let mut best: Option<(Vec<(u32, Option<Sign>)>, Vec<(usize, usize)>, Vec<(usize, usize)>)> = None;
        for perm in label_permutations(&label) {
            let relabel = |es: &[(usize, usize)]| {
                let mut out: Vec<(usize, usize)> = es
                    .iter()
                    .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
                    .collect();
                out.sort();
                out
            };
            let mut lab = vec![label[0]; n];
            for v in 0..n {
                lab[perm[v]] = label[v];
            }
            let cand = (lab, relabel(&self.t1.edges), relabel(&e2));
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        let (lab, e1, e2) = best.expect("at least the identity");
        let genus: Vec<u32> = lab.iter().map(|l| l.0).collect();
        Component {
            t1: GenusTree { genus: genus.clone(), edges: e1 },
            t2: GenusTree { genus, edges: e2 },
            nu: (0..n).collect(),
            sigma: lab.iter().map(|l| l.1).collect(),
        }
    }

    /// `Σ_v (3g(v) - 3 + 2d(v) - [g(v) = 1])` over the vertices of `t1`.
    pub fn dimension(&self) -> i64 {
        (0..self.t1.len())
            .map(|v| {
                let g = self.t1.genus[v] as i64;
                3 * g - 3 + 2 * self.t1.degree(v) as i64 - i64::from(g == 1)
            })
            .sum()
    }
}

/// Permutations `perm` (old index to new index) that keep the sorted label order,
/// i.e. only permute within equal-label blocks after sorting.
fn label_permutations<L: Ord + Copy>(label: &[L]) -> Vec<Vec<usize>> {
    let n = label.len();
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by_key(|&v| label[v]);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &sorted {
        match blocks.last_mut() {
            Some(b) if label[b[0]] == label[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut out = vec![vec![0; n]];
    let mut offset = 0;
    for b in blocks {
        let mut next = Vec::new();
        for p in &out {
            for order in permutations(&b) {
                let mut q = p.clone();
                for (i, &v) in order.iter().enumerate() {
                    q[v] = offset + i;
                }
                next.push(q);
            }
        }
        offset += b.len();
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Labelled trees on `n` vertices from Prüfer sequences.
fn labelled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![vec![]];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).expect("leaf exists");
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

fn sign_choices(genus: &[u32]) -> Vec<Vec<Option<Sign>>> {
    let mut out = vec![Vec::new()];
    for &g in genus {
        let opts: Vec<Option<Sign>> = match g {
            1 => vec![None],
            2 => vec![Some(Sign::PlusMinus)],
            _ => vec![Some(Sign::Plus), Some(Sign::Minus)],
        };
        out = out
            .into_iter()
            .flat_map(|p| {
                opts.iter().map(move |o| {
                    let mut q = p.clone();
                    q.push(*o);
                    q
                })
            })
            .collect();
    }
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Irreducible components of the genus-`g` fiber product, up to relabelling.
pub fn enumerate_components(g: u32, max_edges: Option<usize>) -> Result<Vec<Component>, CtpError> {
    let trees = enumerate_stable_trees(g, true, max_edges);
    let mut cost = 0u64;
    for t in &trees {
        let n = t.len();
        cost += (n as u64).saturating_pow(n.saturating_sub(2) as u32) * factorial(n) * (1u64 << n);
    }
    if cost > ENUMERATION_LIMIT {
        return Err(CtpError::TooLarge { g, cost });
    }
    let mut out = BTreeSet::new();
    for t1 in &trees {
        let n = t1.len();
        for e2 in labelled_trees(n) {
            if max_edges.is_some_and(|m| e2.len() > m) {
                continue;
            }
            let t2 = GenusTree { genus: t1.genus.clone(), edges: e2 };
            for sigma in sign_choices(&t1.genus) {
                let c = Component { t1: t1.clone(), t2: t2.clone(), nu: (0..n).collect(), sigma };
                if c.validate().is_ok() {
                    out.insert(c.canonical());
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nu: Vec<String> = self.nu.iter().map(usize::to_string).collect();
        let sigma: Vec<String> =
            self.sigma.iter().enumerate().filter_map(|(v, s)| s.map(|s| format!("{v}:{s}"))).collect();
        write!(f, "{} | {} | nu: {} | sigma: {}", self.t1, self.t2, nu.join(" "), sigma.join(" "))
    }
}

impl FromStr for Component {
    type Err = CtpError;

    /// Sections separated by `|` or newlines: two trees, `nu:` and `sigma:`.
    fn from_str(s: &str) -> Result<Self, CtpError> {
        let bad = || CtpError::Parse(s.to_string());
        let parts: Vec<&str> = s.split(['|', '\n']).map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.len() < 2 {
            return Err(bad());
        }
        let t1: GenusTree = parts[0].parse()?;
        let t2: GenusTree = parts[1].parse()?;
        let n = t1.len();
        let mut nu: Vec<usize> = (0..n).collect();
        let mut sigma = vec![None; n];
        for p in &parts[2..] {
            if let Some(rest) = p.strip_prefix("nu:") {
                nu = rest.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
            } else if let Some(rest) = p.strip_prefix("sigma:") {
                for t in rest.split_whitespace() {
                    let (v, sg) = t.split_once(':').ok_or_else(bad)?;
                    let v: usize = v.parse().map_err(|_| bad())?;
                    *sigma.get_mut(v).ok_or_else(bad)? = Some(sg.parse()?);
                }
            } else {
                return Err(bad());
            }
        }
        Component::new(t1, t2, nu, sigma)
    }
}
