use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use tautcalc::ctp::{
    check_pairing, component_dimension, component_name, enumerate_components, enumerate_stable_trees,
    one_edge_intersections, pairing_equivalent, Component, CtpError, GenusTree, HalfEdgePairing, Sign,
};

fn names(g: u32, max_edges: Option<usize>) -> BTreeMap<String, i64> {
    enumerate_components(g, max_edges).unwrap().iter().map(|c| (component_name(c), c.dimension())).collect()
}

// AHU encoding of an unlabeled vertex-weighted tree, minimized over roots.
fn tree_code(genus: &[u32], edges: &[(usize, usize)]) -> String {
    let n = genus.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn enc(v: usize, parent: usize, genus: &[u32], adj: &[Vec<usize>]) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| enc(w, v, genus, adj)).collect();
        kids.sort();
        format!("({}{})", genus[v], kids.concat())
    }
    (0..n).map(|r| enc(r, usize::MAX, genus, &adj)).min().unwrap()
}

fn prufer_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![vec![]];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::new();
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

fn compositions(total: u32, parts: usize, min: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in min..=total {
        for mut rest in compositions(total - first, parts - 1, min) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

// Brute force over labeled trees and genus labels, deduplicated by tree code.
fn tree_count_oracle(g: u32, positive: bool, max_edges: usize) -> usize {
    let mut codes = BTreeSet::new();
    let min = if positive { 1 } else { 0 };
    for n in 1..=max_edges + 1 {
        for edges in prufer_trees(n) {
            for genus in compositions(g, n, min) {
                let mut deg = vec![0; n];
                for &(a, b) in &edges {
                    deg[a] += 1;
                    deg[b] += 1;
                }
                let stable = (0..n).all(|v| match genus[v] {
                    0 => deg[v] >= 3,
                    1 => deg[v] >= 1 || n == 1,
                    _ => true,
                });
                if stable {
                    codes.insert(tree_code(&genus, &edges));
                }
            }
        }
    }
    codes.len()
}

#[test]
fn stable_tree_examples() {
    let t1 = enumerate_stable_trees(1, true, None);
    assert_eq!(t1, vec![GenusTree::new(vec![1], vec![]).unwrap()]);
    assert_eq!(enumerate_stable_trees(2, true, None).len(), 2);
    let t4 = enumerate_stable_trees(4, true, Some(1));
    let mut shapes: Vec<Vec<u32>> = t4.iter().map(|t| {
        let mut g = t.genus.clone();
        g.sort();
        g
    }).collect();
    shapes.sort();
    assert_eq!(shapes, vec![vec![1, 3], vec![2, 2], vec![4]]);
}

#[test]
fn stable_trees_against_brute_force() {
    for g in 1..=5 {
        for positive in [true, false] {
            let max = if g <= 1 { 0 } else { 2 * g as usize - 3 };
            let max = max.min(5);
            let got = enumerate_stable_trees(g, positive, Some(max)).len();
            assert_eq!(got, tree_count_oracle(g, positive, max), "g = {g}, positive = {positive}");
        }
    }
}

#[test]
fn genus4_one_edge_components() {
    let expected: BTreeMap<String, i64> =
        [("Delta+", 9), ("Delta-", 9), ("A+", 9), ("A-", 9), ("B", 10)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    assert_eq!(names(4, Some(1)), expected);
}

#[test]
fn small_genus_components() {
    let g5 = enumerate_components(5, Some(0)).unwrap();
    assert_eq!(g5.len(), 2);
    let signs: BTreeSet<_> = g5.iter().map(|c| c.sigma[0]).collect();
    assert_eq!(signs, [Some(Sign::Plus), Some(Sign::Minus)].into_iter().collect());
    let g2 = enumerate_components(2, None).unwrap();
    assert_eq!(g2.len(), 1);
    assert_eq!(g2[0].sigma, vec![Some(Sign::PlusMinus)]);
}

#[test]
fn component_validation() {
    let tree = |g: Vec<u32>, e: Vec<(usize, usize)>| GenusTree::new(g, e).unwrap();
    let pair = tree(vec![1, 1], vec![(0, 1)]);
    let err = Component::new(pair.clone(), pair, vec![0, 1], vec![None, None]);
    assert!(matches!(err, Err(CtpError::InvalidComponent(_))));
    let single = tree(vec![3], vec![]);
    assert!(Component::new(single.clone(), single.clone(), vec![0], vec![Some(Sign::PlusMinus)]).is_err());
    assert!(Component::new(single.clone(), single, vec![0], vec![Some(Sign::Minus)]).is_ok());
}

#[test]
fn dimension_examples() {
    let dims = names(4, Some(1));
    assert_eq!(dims["Delta+"], 9);
    assert_eq!(dims["B"], 10);
    assert_eq!(dims["A-"], 9);
    let c: Component = "V 2 2; E 0-1 | V 2 2; E 0-1 | nu: 0 1 | sigma: 0:+- 1:+-".parse().unwrap();
    assert_eq!(component_dimension(&c), 10);
}

#[test]
fn zero_edge_dimension() {
    for g in 2..=8u32 {
        let t = GenusTree::new(vec![g], vec![]).unwrap();
        let sign = if g == 2 { Sign::PlusMinus } else { Sign::Plus };
        let c = Component::new(t.clone(), t, vec![0], vec![Some(sign)]).unwrap();
        assert_eq!(component_dimension(&c), 3 * g as i64 - 3);
    }
}

#[test]
fn component_text_round_trip() {
    for c in enumerate_components(4, Some(1)).unwrap() {
        let back: Component = c.to_string().parse().unwrap();
        assert_eq!(back, c);
    }
}

#[test]
fn swap_invariance() {
    for (g, e) in [(3, None), (4, Some(1)), (4, Some(2)), (5, Some(1))] {
        let list = enumerate_components(g, e).unwrap();
        let set: BTreeSet<Component> = list.iter().cloned().collect();
        let swapped: BTreeSet<Component> = list.iter().map(|c| c.swapped().canonical()).collect();
        assert_eq!(set, swapped, "g = {g}");
    }
}

#[test]
fn genus4_intersections() {
    let zs = one_edge_intersections(4).unwrap();
    let by_name: BTreeMap<&str, _> = zs.iter().map(|z| (z.name.as_str(), z)).collect();
    for (name, first, second) in [("Z1", "Delta+", "A+"), ("Z2", "Delta-", "A-"), ("Z3", "Delta+", "B"), ("Z4", "Delta-", "B")] {
        let z = by_name[name];
        assert_eq!((z.first.as_str(), z.second.as_str()), (first, second));
        assert_eq!(z.dim, 8);
        assert!(z.in_divisor_ledger(4));
    }
    let dd = zs.iter().find(|z| z.first.starts_with("Delta") && z.second.starts_with("Delta")).unwrap();
    assert!(dd.hyperelliptic);
    assert!(!dd.in_divisor_ledger(4));
    assert_eq!(zs.iter().filter(|z| z.in_divisor_ledger(4)).count(), 4);
    assert!(one_edge_intersections(5).is_err());
}

fn two_cycles(k: usize, genus: u32) -> HalfEdgePairing {
    let e: Vec<(usize, usize)> = (0..k).map(|i| (i, i)).collect();
    HalfEdgePairing::new(genus, k, k, e.clone(), e)
}

#[test]
fn pairing_examples() {
    assert!(check_pairing(&two_cycles(1, 2)).unwrap().ok);
    assert!(check_pairing(&two_cycles(6, 2)).unwrap().ok);
    let seven = check_pairing(&two_cycles(7, 2)).unwrap();
    assert!(!seven.ok);
    assert!(seven.diagnostic.is_some());
    let six_cycle = HalfEdgePairing::new(3, 3, 3, vec![(0, 0), (1, 1), (2, 2)], vec![(1, 0), (2, 1), (0, 2)]);
    assert!(!check_pairing(&six_cycle).unwrap().ok);
    let doubled = HalfEdgePairing::new(2, 2, 2, vec![(0, 0), (0, 1)], vec![]);
    assert!(matches!(check_pairing(&doubled), Err(CtpError::MalformedPairing(_))));
}

#[test]
fn pairing_equivalence_examples() {
    // Two length-three paths on the same half-edges with equal completions.
    let p: HalfEdgePairing = "g 2; L 2; R 2; blue 0-0 1-1; red 1-0".parse().unwrap();
    let q: HalfEdgePairing = "g 2; L 2; R 2; blue 0-0 1-1; red 0-1".parse().unwrap();
    assert!(check_pairing(&p).unwrap().ok && check_pairing(&q).unwrap().ok);
    assert!(pairing_equivalent(&p, &q).unwrap());
    assert!(pairing_equivalent(&p, &p).unwrap());
    let two = two_cycles(1, 2);
    let two = HalfEdgePairing { left: 2, right: 2, ..two };
    let four: HalfEdgePairing = "g 2; L 2; R 2; blue 0-0 1-1; red 1-0 0-1".parse().unwrap();
    assert!(!pairing_equivalent(&two, &four).unwrap());
}

// Walks the pieces directly: every vertex has at most one edge per color.
fn walk_oracle(p: &HalfEdgePairing) -> Option<bool> {
    let node = |side: usize, i: usize| if side == 0 { i } else { p.left + i };
    let n = p.left + p.right;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut color_seen = BTreeSet::new();
    for (color, list) in [(0usize, &p.blue), (1, &p.red)] {
        for (id, &(l, r)) in list.iter().enumerate() {
            if l >= p.left || r >= p.right {
                return None;
            }
            for v in [node(0, l), node(1, r)] {
                if !color_seen.insert((v, color)) {
                    return None;
                }
            }
            let eid = color * 1000 + id;
            adj[node(0, l)].push((node(1, r), eid));
            adj[node(1, r)].push((node(0, l), eid));
        }
    }
    let mut visited = vec![false; n];
    let mut paths = Vec::new();
    let mut cycles = Vec::new();
    for start in 0..n {
        if visited[start] || adj[start].len() == 2 {
            continue;
        }
        let (mut cur, mut prev_edge, mut len) = (start, usize::MAX, 0);
        visited[start] = true;
        while let Some(&(next, e)) = adj[cur].iter().find(|&&(_, e)| e != prev_edge) {
            visited[next] = true;
            len += 1;
            prev_edge = e;
            cur = next;
        }
        paths.push(len);
    }
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let (mut cur, mut prev_edge, mut len) = (start, usize::MAX, 0);
        loop {
            visited[cur] = true;
            let &(next, e) = adj[cur].iter().find(|&&(_, e)| e != prev_edge).unwrap();
            len += 1;
            prev_edge = e;
            cur = next;
            if cur == start {
                break;
            }
        }
        cycles.push(len);
    }
    let twos = cycles.iter().filter(|&&c| c == 2).count();
    Some(
        paths.iter().all(|&l| l <= 3)
            && cycles.iter().all(|&c| c == 2 || c == 4)
            && twos <= 2 * p.genus as usize + 2,
    )
}

fn random_pairing() -> impl Strategy<Value = HalfEdgePairing> {
    (0u32..=4, 1usize..=10, 1usize..=10, any::<u64>(), 0usize..=10, 0usize..=10).prop_map(|(genus, left, right, seed, nb, nr)| {
        let mut state = seed;
        let mut next = move |m: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as usize) % m
        };
        let mut colored = |count: usize| {
            let mut ls: Vec<usize> = (0..left).collect();
            let mut rs: Vec<usize> = (0..right).collect();
            let mut out = Vec::new();
            for _ in 0..count.min(left).min(right) {
                let l = ls.swap_remove(next(ls.len()));
                let r = rs.swap_remove(next(rs.len()));
                out.push((l, r));
            }
            out
        };
        let blue = colored(nb);
        let red = colored(nr);
        HalfEdgePairing::new(genus, left, right, blue, red)
    })
}

fn admissible(p: &HalfEdgePairing) -> bool {
    check_pairing(p).map(|v| v.ok).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn checker_matches_walk(p in random_pairing()) {
        prop_assert_eq!(check_pairing(&p).ok().map(|v| v.ok), walk_oracle(&p));
    }
}

proptest! {
    #[test]
    fn equivalence_laws(p in random_pairing(), q in random_pairing(), r in random_pairing()) {
        if admissible(&p) {
            prop_assert!(pairing_equivalent(&p, &p).unwrap());
            let c = p.completion().unwrap();
            prop_assert!(pairing_equivalent(&p, &c).unwrap());
        }
        if admissible(&p) && admissible(&q) {
            prop_assert_eq!(pairing_equivalent(&p, &q).unwrap(), pairing_equivalent(&q, &p).unwrap());
        }
        // transitivity through shared completions
        for x in [&q, &r] {
            if admissible(&p) && admissible(x) && pairing_equivalent(&p, x).unwrap() {
                let c = p.completion().unwrap();
                prop_assert!(pairing_equivalent(&c, x).unwrap());
            }
        }
    }
}

proptest! {
    #[test]
    fn equivalence_transitive_on_variants(p in random_pairing()) {
        prop_assume!(admissible(&p));
        let vs: Vec<HalfEdgePairing> = tautcalc::checks::equivalent_variants(&p).into_iter().filter(admissible).collect();
        for a in &vs {
            for b in &vs {
                let ab = pairing_equivalent(a, b).unwrap();
                let pa = pairing_equivalent(&p, a).unwrap();
                let pb = pairing_equivalent(&p, b).unwrap();
                prop_assert!(!(pa && pb) || ab);
            }
        }
    }
}
