//! Maximum matchings, Tutte–Berge certificates and r-matching enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A set of pairwise vertex-disjoint edges, as ascending edge indices of its host graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<usize>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks indices and vertex-disjointness against `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n()];
        self.edges.iter().all(|&e| {
            if e >= g.m() {
                return false;
            }
            let (u, v) = g.edge(e);
            !std::mem::replace(&mut used[u], true) & !std::mem::replace(&mut used[v], true)
        })
    }
}

/// A maximum-cardinality matching (Edmonds' blossom algorithm).
pub fn max_matching(g: &Graph) -> Matching {
    let mate = blossom_mates(g);
    let mut edges: Vec<usize> = (0..g.n())
        .filter_map(|v| match mate[v] {
            Some(w) if v < w => g.edge_index(v, w),
            _ => None,
        })
        .collect();
    edges.sort_unstable();
    Matching { edges }
}

/// Matching number ν(g).
pub fn matching_number(g: &Graph) -> usize {
    max_matching(g).len()
}

/// True iff `g` contains a matching with `r` edges.
pub fn has_r_matching(g: &Graph, r: usize) -> bool {
    matching_number(g) >= r
}

fn blossom_mates(g: &Graph) -> Vec<Option<usize>> {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let mut mate = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut in_blossom = vec![false; n];
    let mut queue = Vec::with_capacity(n);

    // Greedy start.
    for &(u, v) in g.edges() {
        if mate[u] == NONE && mate[v] == NONE {
            mate[u] = v;
            mate[v] = u;
        }
    }

    let lca =
        |mut a: usize, mut b: usize, base: &[usize], mate: &[usize], parent: &[usize]| -> usize {
            let mut seen = vec![false; n];
            loop {
                a = base[a];
                seen[a] = true;
                if mate[a] == NONE {
                    break;
                }
                a = parent[mate[a]];
            }
            loop {
                b = base[b];
                if seen[b] {
                    return b;
                }
                b = parent[mate[b]];
            }
        };

    fn mark_path(
        mut v: usize,
        b: usize,
        mut child: usize,
        base: &[usize],
        mate: &[usize],
        parent: &mut [usize],
        in_blossom: &mut [bool],
    ) {
        while base[v] != b {
            in_blossom[base[v]] = true;
            in_blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        used.iter_mut().for_each(|x| *x = false);
        parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        queue.clear();
        queue.push(root);
        let mut head = 0;
        let mut found = NONE;
        'bfs: while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &(to, _) in g.neighbors(v) {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                    let cur = lca(v, to, &base, &mate, &parent);
                    in_blossom.iter_mut().for_each(|x| *x = false);
                    mark_path(v, cur, to, &base, &mate, &mut parent, &mut in_blossom);
                    mark_path(to, cur, v, &base, &mate, &mut parent, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push(i);
                            }
                        }
                    }
                } else if parent[to] == NONE {
                    parent[to] = v;
                    if mate[to] == NONE {
                        found = to;
                        break 'bfs;
                    }
                    let nxt = mate[to];
                    used[nxt] = true;
                    queue.push(nxt);
                }
            }
        }
        let mut v = found;
        while v != NONE {
            let pv = parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

/// A Tutte–Berge set `S` attaining `ν = (n − o(G−S) + |S|) / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteBergeWitness {
    pub s: Vec<usize>,
    /// `o(G−S) − |S|`
    pub deficiency: i64,
    pub nu: usize,
}

/// Default vertex bound for exhaustive Tutte–Berge minimization.
pub const TUTTE_BERGE_MAX_N: usize = 20;

/// Minimizes `n − o(G−S) + |S|` over all `2^n` subsets and checks the
/// result against [`max_matching`]. Among minimizers, the subset with the
/// smallest bitmask is returned.
pub fn tutte_berge(g: &Graph) -> Result<TutteBergeWitness> {
    tutte_berge_bounded(g, TUTTE_BERGE_MAX_N)
}

pub fn tutte_berge_bounded(g: &Graph, max_n: usize) -> Result<TutteBergeWitness> {
    let n = g.n();
    if n > max_n || n > 63 {
        return Err(Error::Capacity(format!(
            "tutte_berge: n = {n} exceeds bound {max_n}"
        )));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &(w, _)| m | 1 << w))
        .collect();
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut best = (usize::MAX, 0u64);
    for s in 0..=all {
        let odd = odd_components_mask(&adj, all & !s);
        let size = s.count_ones() as usize;
        let value = n + size - odd;
        if value < best.0 {
            best = (value, s);
        }
    }
    let (value, s) = best;
    let nu = value / 2;
    let check = matching_number(g);
    assert_eq!(
        nu, check,
        "Tutte–Berge minimum disagrees with blossom matching"
    );
    let set: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
    let odd = odd_components_mask(&adj, all & !s);
    Ok(TutteBergeWitness {
        deficiency: odd as i64 - set.len() as i64,
        s: set,
        nu,
    })
}

fn odd_components_mask(adj: &[u64], alive: u64) -> usize {
    let mut rest = alive;
    let mut odd = 0;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        let mut comp = 1u64 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & alive & !comp;
            comp |= new;
            frontier |= new;
        }
        rest &= !comp;
        if comp.count_ones() % 2 == 1 {
            odd += 1;
        }
    }
    odd
}

/// All matchings with exactly `r` edges, each once, in lexicographic order of
/// their ascending edge-index lists.
pub fn enumerate_matchings(g: &Graph, r: usize) -> Result<Vec<Matching>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.n()];
    let mut cur = Vec::with_capacity(r);
    enumerate_rec(g, r, 0, &mut used, &mut cur, &mut out);
    Ok(out)
}

fn enumerate_rec(
    g: &Graph,
    r: usize,
    from: usize,
    used: &mut [bool],
    cur: &mut Vec<usize>,
    out: &mut Vec<Matching>,
) {
    if cur.len() == r {
        out.push(Matching { edges: cur.clone() });
        return;
    }
    for e in from..g.m() {
        if g.m() - e < r - cur.len() {
            break;
        }
        let (u, v) = g.edge(e);
        if used[u] || used[v] {
            continue;
        }
        used[u] = true;
        used[v] = true;
        cur.push(e);
        enumerate_rec(g, r, e + 1, used, cur, out);
        cur.pop();
        used[u] = false;
        used[v] = false;
    }
}

/// Matching tests on subsets of a fixed host's edges, encoded as `u64` masks.
#[derive(Clone, Debug)]
pub struct EdgeMaskMatcher {
    // edges sharing an endpoint with e, including e
    conflict: Vec<u64>,
}

impl EdgeMaskMatcher {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.m() > 64 {
            return Err(Error::Capacity(format!(
                "edge mask needs m <= 64, got {}",
                g.m()
            )));
        }
        let conflict = (0..g.m())
            .map(|a| {
                (0..g.m())
                    .filter(|&b| g.edges_share_vertex(a, b))
                    .fold(0u64, |m, b| m | 1 << b)
            })
            .collect();
        Ok(EdgeMaskMatcher { conflict })
    }

    /// True iff the edges in `mask` contain `k` pairwise disjoint edges.
    pub fn contains_matching(&self, mask: u64, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if (mask.count_ones() as usize) < k {
            return false;
        }
        let e = mask.trailing_zeros() as usize;
        self.contains_matching(mask & !self.conflict[e], k - 1)
            || self.contains_matching(mask & !(1u64 << e), k)
    }

    /// True iff the spanning subgraph on `mask` is `rK_2`-free.
    pub fn is_free(&self, mask: u64, r: usize) -> bool {
        !self.contains_matching(mask, r)
    }

    pub fn matching_number(&self, mask: u64) -> usize {
        let mut k = 0;
        while self.contains_matching(mask, k + 1) {
            k += 1;
        }
        k
    }
}
