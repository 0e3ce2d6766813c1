use super::{enumerate_components, Component, CtpError, Sign};

/// Intersection of two components along a common one-edge specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionStratum {
    pub name: String,
    pub first: String,
    pub second: String,
    /// Dimension of the stratum in the fiber product.
    pub dim: i64,
    /// Dimension of its image in the moduli space of the first curve.
    pub image_dim: i64,
    /// Needs a hyperelliptic vertex of genus at least three.
    pub hyperelliptic: bool,
    /// Half-edge pairings imposed, as `(vertex genus, sign)`.
    pub pairings: Vec<(u32, Sign)>,
}

impl IntersectionStratum {
    /// Contributes to a divisor class: image of codimension one and not
    /// supported on a hyperelliptic locus.
    pub fn in_divisor_ledger(&self, g: u32) -> bool {
        !self.hyperelliptic && self.image_dim == 3 * g as i64 - 4
    }
}

/// Name of a genus-4 component with at most one edge.
pub fn component_name(c: &Component) -> String {
    let sign = c.sigma.iter().flatten().find(|s| **s != Sign::PlusMinus).map(|s| s.to_string()).unwrap_or_default();
    match c.t1.genus.as_slice() {
        [4] => format!("Delta{sign}"),
        [1, 3] | [3, 1] => format!("A{sign}"),
        [2, 2] => "B".to_string(),
        _ => c.to_string(),
    }
}

fn codim_hyperelliptic(g: u32) -> i64 {
    g as i64 - 2
}

/// Meeting of a zero-edge component `d` with a one-edge component `y`, or of two
/// components on the same trees whose signs differ.
fn intersect(x: &Component, y: &Component) -> Option<IntersectionStratum> {
    let g = x.genus() as i64;
    if x.t1.edges.is_empty() && x.t2.edges.is_empty() && !y.t1.edges.is_empty() {
        // The diagonal specializes to y's trees with every node paired with
        // itself: a pairing with the diagonal's sign at each vertex of genus ≥ 2.
        let s = x.sigma[0]?;
        let mut pairings = Vec::new();
        let mut hyper = false;
        let mut dim = y.dimension();
        let mut image_dim = 3 * g - 3 - y.t1.edges.len() as i64;
        for v in 0..y.t1.len() {
            let gv = y.t1.genus[v];
            if gv < 2 {
                continue;
            }
            match y.sigma[v] {
                Some(Sign::PlusMinus) => {}
                Some(t) if t == s => {}
                _ => {
                    hyper = true;
                    dim -= codim_hyperelliptic(gv);
                    image_dim -= codim_hyperelliptic(gv);
                }
            }
            pairings.push((gv, s));
            dim -= 1;
        }
        return Some(IntersectionStratum {
            name: String::new(),
            first: component_name(x),
            second: component_name(y),
            dim,
            image_dim,
            hyperelliptic: hyper,
            pairings,
        });
    }
    if x.t1 == y.t1 && x.t2 == y.t2 && x.nu == y.nu && x != y {
        // same trees, opposite signs somewhere: both automorphisms at once
        let mut dim = x.dimension();
        let mut image_dim = 3 * g - 3 - x.t1.edges.len() as i64;
        for v in 0..x.t1.len() {
            if x.sigma[v] != y.sigma[v] {
                dim -= codim_hyperelliptic(x.t1.genus[v]);
                image_dim -= codim_hyperelliptic(x.t1.genus[v]);
            }
        }
        return Some(IntersectionStratum {
            name: String::new(),
            first: component_name(x),
            second: component_name(y),
            dim,
            image_dim,
            hyperelliptic: true,
            pairings: Vec::new(),
        });
    }
    None
}

/// Pairwise intersections of the genus-4 components with at most one edge.
/// `Z1..Z4` are the divisorial ones, the rest are hyperelliptic-supported.
pub fn one_edge_intersections(g: u32) -> Result<Vec<IntersectionStratum>, CtpError> {
    if g != 4 {
        return Err(CtpError::Scope(format!("one-edge intersections implemented for genus 4, got {g}")));
    }
    let comps = enumerate_components(g, Some(1))?;
    let mut out = Vec::new();
    for (i, x) in comps.iter().enumerate() {
        for y in &comps[i + 1..] {
            let z = intersect(x, y).or_else(|| intersect(y, x));
            if let Some(z) = z {
                out.push(z);
            }
        }
    }
    let order = ["Delta+ A+", "Delta- A-", "Delta+ B", "Delta- B"];
    for z in &mut out {
        let key = format!("{} {}", z.first, z.second);
        z.name = match order.iter().position(|k| *k == key) {
            Some(i) if z.in_divisor_ledger(g) => format!("Z{}", i + 1),
            _ => format!("{}&{}", z.first, z.second),
        };
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}
