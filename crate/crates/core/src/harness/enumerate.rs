//! Small graphs up to isomorphism.
//!
//! Graphs on `n ≤ 8` vertices are stored as a bitmask over vertex pairs.
//! The canonical form is the largest mask over all vertex relabelings that
//! respect a refinement of vertices by (degree, sorted neighbor degrees);
//! that invariant is preserved by isomorphism, so two graphs are isomorphic
//! exactly when their canonical masks agree.

use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::graph::Graph;

pub const MAX_N: usize = 8;

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

pub fn mask_of(g: &Graph) -> u64 {
    g.edges()
        .iter()
        .fold(0u64, |m, &(u, v)| m | 1 << pair_index(g.n(), u, v))
}

pub fn graph_of(n: usize, mask: u64) -> Graph {
    let edges = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e);
    Graph::new(n, edges).expect("pairs are valid edges")
}

/// Canonical pair mask of a graph on at most [`MAX_N`] vertices.
pub fn canonical_mask(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > MAX_N {
        return invalid(format!("canonical form supports n <= {MAX_N}"));
    }
    let deg = g.degrees();
    let invariant: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&(w, _)| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut classes: Vec<&(usize, Vec<usize>)> = invariant.iter().collect();
    classes.sort();
    classes.dedup();
    // cells in a fixed invariant order; new labels are handed out cell by cell
    let cells: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| (0..n).filter(|&v| &invariant[v] == *c).collect())
        .collect();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect();
    let mut label = vec![usize::MAX; n];
    let mut best = 0u64;
    let mut found = false;
    label_cells(&cells, 0, 0, &mut label, &adj, &mut best, &mut found);
    Ok(best)
}

fn label_cells(
    cells: &[Vec<usize>],
    ci: usize,
    next: usize,
    label: &mut [usize],
    adj: &[Vec<bool>],
    best: &mut u64,
    found: &mut bool,
) {
    if ci == cells.len() {
        let n = label.len();
        let mut mask = 0u64;
        for u in 0..n {
            for v in u + 1..n {
                if adj[u][v] {
                    mask |= 1 << pair_index(n, label[u], label[v]);
                }
            }
        }
        if !*found || mask > *best {
            *best = mask;
            *found = true;
        }
        return;
    }
    let cell = &cells[ci];
    let placed = next - cells[..ci].iter().map(Vec::len).sum::<usize>();
    if placed == cell.len() {
        label_cells(cells, ci + 1, next, label, adj, best, found);
        return;
    }
    for &v in cell {
        if label[v] == usize::MAX {
            label[v] = next;
            label_cells(cells, ci, next + 1, label, adj, best, found);
            label[v] = usize::MAX;
        }
    }
}

/// Isomorphism by trying every vertex permutation.
pub fn are_isomorphic_brute(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v])) {
            return true;
        }
        if !crate::alternation::next_permutation(&mut perm) {
            return false;
        }
    }
}

/// All graphs on exactly `n` vertices up to isomorphism, as canonical masks,
/// grown one edge at a time from the empty graph.
pub fn all_graphs(n: usize) -> Result<Vec<u64>> {
    if n > MAX_N {
        return invalid(format!("enumeration supports n <= {MAX_N}"));
    }
    let total_pairs = n * n.saturating_sub(1) / 2;
    let mut all: BTreeSet<u64> = BTreeSet::new();
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    all.insert(0);
    for _ in 0..total_pairs {
        let mut next = BTreeSet::new();
        for &mask in &level {
            for p in 0..total_pairs {
                if mask >> p & 1 == 0 {
                    next.insert(canonical_mask(&graph_of(n, mask | 1 << p))?);
                }
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    Ok(all.into_iter().collect())
}

/// Connected graphs on exactly `n` vertices up to isomorphism, ordered by edge count, then canonical mask.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    let mut gs: Vec<(usize, u64)> = all_graphs(n)?
        .into_iter()
        .filter(|&m| graph_of(n, m).is_connected())
        .map(|m| (m.count_ones() as usize, m))
        .collect();
    gs.sort_unstable();
    Ok(gs.into_iter().map(|(_, m)| graph_of(n, m)).collect())
}

/// Disjoint union; the vertices of `b` are shifted past those of `a`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::new(a.n() + b.n(), edges).expect("disjoint union is simple")
}

/// Disconnected graphs without isolated vertices, on at most `max_n`
/// vertices, whose components each have at most `max_component` vertices.
/// Each is a multiset of at least two connected components, which fixes it
/// up to isomorphism.
pub fn disconnected_graphs(max_n: usize, max_component: usize) -> Result<Vec<Graph>> {
    let mut parts: Vec<Graph> = Vec::new();
    for k in 2..=max_component.min(max_n) {
        parts.extend(connected_graphs(k)?);
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    multisets(&parts, 0, max_n, &mut chosen, &mut out);
    Ok(out)
}

fn multisets(
    parts: &[Graph],
    from: usize,
    room: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Graph>,
) {
    if chosen.len() >= 2 {
        let g = chosen[1..]
            .iter()
            .fold(parts[chosen[0]].clone(), |acc, &i| {
                disjoint_union(&acc, &parts[i])
            });
        out.push(g);
    }
    for i in from..parts.len() {
        if parts[i].n() <= room {
            chosen.push(i);
            multisets(parts, i, room - parts[i].n(), chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| connected_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        let all: Vec<usize> = (1..=5).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn canonical_form_agrees_with_brute_force() {
        let gs: Vec<Graph> = (1..=5)
            .flat_map(|n| {
                all_graphs(n)
                    .unwrap()
                    .into_iter()
                    .map(move |m| graph_of(n, m))
            })
            .collect();
        for (i, a) in gs.iter().enumerate() {
            for b in &gs[i + 1..] {
                assert!(!are_isomorphic_brute(a, b));
            }
        }
        // relabeled copies get the same canonical mask
        let c5 = make_cycle(5).unwrap();
        let relabeled = Graph::new(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert!(are_isomorphic_brute(&c5, &relabeled));
        assert_eq!(
            canonical_mask(&c5).unwrap(),
            canonical_mask(&relabeled).unwrap()
        );
    }

    #[test]
    fn disconnected_unions() {
        let gs = disconnected_graphs(10, 2).unwrap();
        let sizes: Vec<usize> = gs.iter().map(Graph::m).collect();
        assert_eq!(sizes, vec![2, 3, 4, 5]);
        assert!(gs.iter().all(|g| !g.is_connected()));
    }
}
