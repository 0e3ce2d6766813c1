use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{CtpError, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
}

/// Bipartite multigraph between the half-edges at `v` (left) and at `ν(v)` (right):
/// blue edges from `γ⁺`, red edges from `γ⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgePairing {
    pub genus: u32,
    pub left: usize,
    pub right: usize,
    pub blue: Vec<(usize, usize)>,
    pub red: Vec<(usize, usize)>,
    pub sign: Option<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingVerdict {
    pub ok: bool,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    Path(usize),
    Cycle(usize),
}

/// Node of the bipartite graph: `(false, i)` is left half-edge `i`.
type Node = (bool, usize);

impl HalfEdgePairing {
    pub fn new(genus: u32, left: usize, right: usize, blue: Vec<(usize, usize)>, red: Vec<(usize, usize)>) -> Self {
        HalfEdgePairing { genus, left, right, blue, red, sign: None }
    }

    fn edges(&self) -> impl Iterator<Item = (Color, usize, usize)> + '_ {
        self.blue
            .iter()
            .map(|&(l, r)| (Color::Blue, l, r))
            .chain(self.red.iter().map(|&(l, r)| (Color::Red, l, r)))
    }

    /// Rejects out-of-range endpoints, a repeated color at a vertex and
    /// colors forbidden by the sign.
    pub fn well_formed(&self) -> Result<(), CtpError> {
        let bad = |why: String| Err(CtpError::MalformedPairing(why));
        let mut seen = BTreeSet::new();
        for (c, l, r) in self.edges() {
            if l >= self.left || r >= self.right {
                return bad(format!("edge ({l}, {r}) out of range"));
            }
            if !seen.insert((c, (false, l))) || !seen.insert((c, (true, r))) {
                return bad(format!("two {c:?} edges at an endpoint of ({l}, {r})"));
            }
        }
        match self.sign {
            Some(Sign::Plus) if !self.red.is_empty() => bad("red edges with sign +".into()),
            Some(Sign::Minus) if !self.blue.is_empty() => bad("blue edges with sign -".into()),
            _ => Ok(()),
        }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, Node)>> {
        let n = self.left + self.right;
        let idx = |(side, i): Node| if side { self.left + i } else { i };
        let mut adj = vec![Vec::new(); n];
        for (k, (_, l, r)) in self.edges().enumerate() {
            adj[idx((false, l))].push((k, (true, r)));
            adj[idx((true, r))].push((k, (false, l)));
        }
        adj
    }

    /// Path and cycle components with their lengths in edges.
    pub fn pieces(&self) -> Result<Vec<Piece>, CtpError> {
        self.well_formed()?;
        let adj = self.adjacency();
        let n = adj.len();
        let idx = |(side, i): Node| if side { self.left + i } else { i };
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        // paths start at vertices of degree at most one
        for start in 0..n {
            if seen[start] || adj[start].len() > 1 {
                continue;
            }
            seen[start] = true;
            let mut len = 0;
            let mut prev_edge = None;
            let mut cur = start;
            while let Some(&(e, nb)) = adj[cur].iter().find(|(e, _)| Some(*e) != prev_edge) {
                len += 1;
                prev_edge = Some(e);
                cur = idx(nb);
                seen[cur] = true;
            }
            out.push(Piece::Path(len));
        }
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut prev_edge = None;
            let mut cur = start;
            loop {
                seen[cur] = true;
                let &(e, nb) = adj[cur].iter().find(|(e, _)| Some(*e) != prev_edge).expect("cycle vertex");
                len += 1;
                prev_edge = Some(e);
                cur = idx(nb);
                if cur == start {
                    break;
                }
            }
            out.push(Piece::Cycle(len));
        }
        Ok(out)
    }

    /// Closes every path of length three to a 4-cycle.
    pub fn completion(&self) -> Result<HalfEdgePairing, CtpError> {
        self.well_formed()?;
        let mut out = self.clone();
        let adj = self.adjacency();
        let idx = |(side, i): Node| if side { self.left + i } else { i };
        let colors: Vec<Color> = self.edges().map(|(c, _, _)| c).collect();
        for start in 0..self.left {
            if adj[start].len() != 1 {
                continue;
            }
            let mut walk = vec![(false, start)];
            let mut used = Vec::new();
            let mut cur = start;
            let mut prev_edge = None;
            while let Some(&(e, nb)) = adj[cur].iter().find(|(e, _)| Some(*e) != prev_edge) {
                prev_edge = Some(e);
                used.push(colors[e]);
                walk.push(nb);
                cur = idx(nb);
            }
            if used.len() == 3 {
                let end = walk[3];
                let closing = (start, end.1);
                match used[1] {
                    Color::Blue => out.blue.push(closing),
                    Color::Red => out.red.push(closing),
                }
            }
        }
        out.blue.sort();
        out.red.sort();
        Ok(out)
    }
}

/// The bipartite graph condition: cycles of length 2 or 4, paths of length at
/// most 3, at most `2g + 2` cycles of length 2.
pub fn check_pairing(p: &HalfEdgePairing) -> Result<PairingVerdict, CtpError> {
    let pieces = p.pieces()?;
    let fail = |d: String| Ok(PairingVerdict { ok: false, diagnostic: Some(d) });
    for piece in &pieces {
        match *piece {
            Piece::Cycle(k) if k != 2 && k != 4 => return fail(format!("cycle of length {k}")),
            Piece::Path(k) if k > 3 => return fail(format!("path of length {k}")),
            _ => {}
        }
    }
    let two = pieces.iter().filter(|&&x| x == Piece::Cycle(2)).count();
    if two > 2 * p.genus as usize + 2 {
        return fail(format!("{two} cycles of length 2, at most {} allowed", 2 * p.genus + 2));
    }
    Ok(PairingVerdict { ok: true, diagnostic: None })
}

/// Equality after closing length-three paths.
pub fn pairing_equivalent(p: &HalfEdgePairing, q: &HalfEdgePairing) -> Result<bool, CtpError> {
    for x in [p, q] {
        let v = check_pairing(x)?;
        if !v.ok {
            return Err(CtpError::MalformedPairing(v.diagnostic.unwrap_or_default()));
        }
    }
    let (a, b) = (p.completion()?, q.completion()?);
    Ok(a.left == b.left && a.right == b.right && a.blue == b.blue && a.red == b.red)
}

impl fmt::Display for HalfEdgePairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |es: &[(usize, usize)]| es.iter().map(|(l, r)| format!("{l}-{r}")).collect::<Vec<_>>().join(" ");
        write!(f, "g {}; L {}; R {}; blue {}; red {}", self.genus, self.left, self.right, list(&self.blue), list(&self.red))?;
        if let Some(s) = self.sign {
            write!(f, "; sign {s}")?;
        }
        Ok(())
    }
}

impl FromStr for HalfEdgePairing {
    type Err = CtpError;

    /// `g 2; L 3; R 3; blue 0-0 1-1; red 0-1`.
    fn from_str(s: &str) -> Result<Self, CtpError> {
        let bad = || CtpError::Parse(s.to_string());
        let mut p = HalfEdgePairing::new(0, 0, 0, vec![], vec![]);
        let mut have = (false, false, false);
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let list = |t: &str| -> Result<Vec<(usize, usize)>, CtpError> {
            t.split_whitespace()
                .map(|e| {
                    let (l, r) = e.split_once('-').ok_or_else(bad)?;
                    Ok((num(l)?, num(r)?))
                })
                .collect()
        };
        for part in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, rest) = part.split_once(char::is_whitespace).unwrap_or((part, ""));
            match key {
                "g" => {
                    p.genus = num(rest)? as u32;
                    have.0 = true;
                }
                "L" => {
                    p.left = num(rest)?;
                    have.1 = true;
                }
                "R" => {
                    p.right = num(rest)?;
                    have.2 = true;
                }
                "blue" => p.blue = list(rest)?,
                "red" => p.red = list(rest)?,
                "sign" => p.sign = Some(rest.trim().parse()?),
                _ => return Err(bad()),
            }
        }
        if have != (true, true, true) {
            return Err(bad());
        }
        p.well_formed()?;
        Ok(p)
    }
}
