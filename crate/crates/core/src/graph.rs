//! Finite simple graphs with stable edge indices.
//!
//! Edge indices are the canonical reference for edge orderings, sign
//! vectors and certificates, so they are fixed at construction and never
//! renumbered. Every generator documents its indexing.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`; the position in the edge list
/// is the edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // (neighbor, edge index), ascending by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Pairs are normalized to `u < v`;
    /// loops, duplicates and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == b {
                return invalid(format!("loop at vertex {a}"));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for n = {n}"));
            }
            if !seen.insert((u, v)) {
                return invalid(format!("duplicate edge ({u}, {v})"));
            }
            list.push((u, v));
        }
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    /// `(neighbor, edge index)` pairs, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|k| self.adj[u][k].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edges_share_vertex(&self, a: usize, b: usize) -> bool {
        let (p, q) = self.edges[a];
        let (r, s) = self.edges[b];
        p == r || p == s || q == r || q == s
    }

    /// Connected components as ascending vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&vec![false; self.n])
    }

    fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected in the usual sense; the graph on zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when all vertices of positive degree lie in one component.
    pub fn edges_connected(&self) -> bool {
        self.components().iter().filter(|c| c.len() > 1).count() <= 1
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Spanning subgraph on a subset of edge indices; the new edge `k` is
    /// the `k`-th smallest index of `edge_set`.
    pub fn spanning_subgraph(&self, edge_set: &[usize]) -> Graph {
        let mut idx: Vec<usize> = edge_set.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Graph::new(self.n, idx.iter().map(|&i| self.edges[i])).expect("subgraph of a simple graph")
    }

    /// Line graph: vertices are edge indices, adjacent when edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let mut pairs = Vec::new();
        for a in 0..self.m() {
            for b in a + 1..self.m() {
                if self.edges_share_vertex(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Graph::new(self.m(), pairs).expect("line graph is simple")
    }

    /// Writes the plain text format: `n m`, then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Parses the plain text format. Lines beginning with `#` are ignored.
    /// Errors carry the 1-based line number.
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let [u, v] = parse_pair(lineno, line)?;
            if u >= v || v >= n {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("edge must satisfy 0 <= u < v < {n}, got {u} {v}"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges).map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })
    }

    /// DIMACS `.col` export, 1-indexed.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p edge {} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "e {} {}", u + 1, v + 1);
        }
        s
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut it = text.split(' ');
    let mut out = [0usize; 2];
    for slot in &mut out {
        let tok = it.next().filter(|t| !t.is_empty()).ok_or(Error::Parse {
            line,
            message: format!("expected two integers, got {text:?}"),
        })?;
        *slot = tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("not a non-negative integer: {tok:?}"),
        })?;
    }
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            message: format!("trailing tokens in {text:?}"),
        });
    }
    Ok(out)
}

/// A multigraph built on top of a simple graph. The base edges keep their
/// indices `0..m`; edges added later get `m, m+1, ...`, and may repeat pairs.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    n: usize,
    base_edges: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn from_graph(g: &Graph) -> Self {
        MultiGraph {
            n: g.n(),
            base_edges: g.m(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn with_vertices(n: usize) -> Self {
        MultiGraph {
            n,
            base_edges: 0,
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Adds an edge and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        if u == v || u >= self.n || v >= self.n {
            return invalid(format!("bad multigraph edge ({u}, {v})"));
        }
        self.edges.push((u.min(v), u.max(v)));
        Ok(self.edges.len() - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn base_edges(&self) -> usize {
        self.base_edges
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Adjacency lists of `(neighbor, edge index)` sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }
}

/// Cycle `C_n`: edge `i` joins `i` and `i+1` for `i < n-1`; the last edge is `(0, n-1)`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return invalid(format!("cycle needs n >= 3, got {n}"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `K_{m,n}` with left side `0..m`, right side `m..m+n`, edges lexicographic by (left, right).
pub fn make_complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return invalid(format!(
            "complete bipartite needs m, n >= 1, got ({m}, {n})"
        ));
    }
    Graph::new(m + n, (0..m).flat_map(|a| (0..n).map(move |b| (a, m + b))))
}

/// `nK_2`: edge `i` is `(2i, 2i+1)`.
pub fn make_disjoint_matching(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("disjoint matching needs n >= 1");
    }
    Graph::new(2 * n, (0..n).map(|i| (2 * i, 2 * i + 1)))
}

/// `K_n` with edges lexicographic.
pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("complete graph needs n >= 1");
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Path on `n` vertices, edge `i` = `(i, i+1)`.
pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("path needs n >= 1");
    }
    Graph::new(n, (0..n - 1).map(|i| (i, i + 1)))
}

/// Star `K_{1,k}` with center 0.
pub fn make_star(k: usize) -> Result<Graph> {
    if k == 0 {
        return invalid("star needs k >= 1");
    }
    Graph::new(k + 1, (1..=k).map(|i| (0, i)))
}

/// Number of odd components of `g - removed`.
pub fn odd_components(g: &Graph, removed: &[usize]) -> usize {
    let mut mask = vec![false; g.n()];
    for &v in removed {
        mask[v] = true;
    }
    g.components_avoiding(&mask)
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count()
}

/// Length of a shortest odd cycle, `None` when the graph is bipartite.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n()];
    for root in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                } else if dist[w] == dist[u] {
                    let len = 2 * dist[u] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Two-coloring by BFS; `None` when the graph has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &(w, _) in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    _ => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap()).collect())
}

/// How ties among equal degrees were resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TiePolicy {
    /// Ascending vertex index inside each degree class.
    AscendingIndex,
    /// Ascending index, except that the boundary class was permuted to make
    /// the first `k` vertices independent.
    IndependentPrefix { k: usize },
}

/// Vertices in non-increasing degree order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOrder {
    pub perm: Vec<usize>,
    pub tie_policy: TiePolicy,
}

impl DegreeOrder {
    pub fn last(&self) -> Option<usize> {
        self.perm.last().copied()
    }
}

/// Non-increasing degree order. With `Some(k)`, looks for a reordering
/// inside tie classes whose first `k` vertices are pairwise non-adjacent and
/// returns `None` if no degree-respecting order has that property.
pub fn degree_order(g: &Graph, require_independent_prefix: Option<usize>) -> Option<DegreeOrder> {
    let mut base: Vec<usize> = (0..g.n()).collect();
    base.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let k = match require_independent_prefix {
        None => {
            return Some(DegreeOrder {
                perm: base,
                tie_policy: TiePolicy::AscendingIndex,
            })
        }
        Some(k) => k,
    };
    if k > g.n() {
        return None;
    }
    if k == 0 {
        return Some(DegreeOrder {
            perm: base,
            tie_policy: TiePolicy::IndependentPrefix { k },
        });
    }
    // Vertices of strictly larger degree than the k-th vertex are forced into the prefix.
    let boundary_deg = g.degree(base[k - 1]);
    let forced: Vec<usize> = base
        .iter()
        .copied()
        .filter(|&v| g.degree(v) > boundary_deg)
        .collect();
    if !g.is_independent(&forced) {
        return None;
    }
    let class: Vec<usize> = base
        .iter()
        .copied()
        .filter(|&v| g.degree(v) == boundary_deg)
        .collect();
    let candidates: Vec<usize> = class
        .iter()
        .copied()
        .filter(|&v| forced.iter().all(|&f| !g.has_edge(f, v)))
        .collect();
    let need = k - forced.len();
    let mut chosen = Vec::with_capacity(need);
    if !pick_independent(g, &candidates, 0, need, &mut chosen) {
        return None;
    }
    let chosen_set: BTreeSet<usize> = chosen.iter().copied().collect();
    let mut perm = forced;
    perm.extend(&chosen);
    perm.extend(class.iter().copied().filter(|v| !chosen_set.contains(v)));
    perm.extend(base.iter().copied().filter(|&v| g.degree(v) < boundary_deg));
    Some(DegreeOrder {
        perm,
        tie_policy: TiePolicy::IndependentPrefix { k },
    })
}

fn pick_independent(
    g: &Graph,
    cands: &[usize],
    from: usize,
    need: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if need == 0 {
        return true;
    }
    for i in from..cands.len() {
        if cands.len() - i < need {
            break;
        }
        let v = cands[i];
        if chosen.iter().all(|&c| !g.has_edge(c, v)) {
            chosen.push(v);
            if pick_independent(g, cands, i + 1, need - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
