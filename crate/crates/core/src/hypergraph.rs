//! Hypergraphs, the general Kneser graph KG(H), and matching graphs KG(G, rK₂).

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::matching::enumerate_matchings;

/// A simple hypergraph on the ground set `0..ground_n`.
///
/// Hyperedges are stored as ascending vertex lists and keep the index they
/// were given at construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    ground_n: usize,
    hyperedges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Rejects empty or duplicate hyperedges and out-of-range elements.
    pub fn new(ground_n: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(hyperedges.len());
        for (i, mut e) in hyperedges.into_iter().enumerate() {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return invalid(format!("hyperedge {i} is empty"));
            }
            if let Some(&x) = e.iter().find(|&&x| x >= ground_n) {
                return invalid(format!("hyperedge {i} contains {x} >= {ground_n}"));
            }
            if !seen.insert(e.clone()) {
                return invalid(format!("hyperedge {i} is a duplicate"));
            }
            out.push(e);
        }
        Ok(Hypergraph {
            ground_n,
            hyperedges: out,
        })
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    /// Hyperedges as bitmasks over the ground set (requires `ground_n <= 64`).
    pub fn masks(&self) -> Result<Vec<u64>> {
        if self.ground_n > 64 {
            return Err(Error::Capacity(format!(
                "bitmask needs ground set <= 64, got {}",
                self.ground_n
            )));
        }
        Ok(self
            .hyperedges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &x| m | 1 << x))
            .collect())
    }

    /// Keeps the hyperedges whose indices are listed, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Hypergraph {
        Hypergraph {
            ground_n: self.ground_n,
            hyperedges: keep.iter().map(|&i| self.hyperedges[i].clone()).collect(),
        }
    }

    /// Text format: `n k`, then one line of ascending elements per hyperedge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.ground_n, self.hyperedges.len());
        for e in &self.hyperedges {
            let line: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Hypergraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let head = parse_ints(hline, header)?;
        let [n, k] = head[..] else {
            return Err(Error::Parse {
                line: hline,
                message: "header must be `n k`".into(),
            });
        };
        let mut edges = Vec::with_capacity(k);
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let e = parse_ints(lineno, line)?;
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse {
                    line: lineno,
                    message: "elements must be strictly ascending".into(),
                });
            }
            edges.push(e);
        }
        if edges.len() != k {
            return Err(Error::Parse {
                line: hline,
                message: format!("header declares {k} hyperedges, found {}", edges.len()),
            });
        }
        Hypergraph::new(n, edges).map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })
    }
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split(' ')
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                line,
                message: format!("not a non-negative integer: {t:?}"),
            })
        })
        .collect()
}

/// KG(H): vertex `i` is hyperedge `i`; adjacency is disjointness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserGraph {
    pub graph: Graph,
    pub source: Hypergraph,
}

pub fn general_kneser(h: &Hypergraph) -> KneserGraph {
    let k = h.len();
    let sets: Vec<HashSet<usize>> = h
        .hyperedges()
        .iter()
        .map(|e| e.iter().copied().collect())
        .collect();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if sets[i].is_disjoint(&sets[j]) {
                pairs.push((i, j));
            }
        }
    }
    KneserGraph {
        graph: Graph::new(k, pairs).expect("disjointness graph is simple"),
        source: h.clone(),
    }
}

/// Ground set = edge indices of `g`; hyperedges = all `r`-matchings of `g`.
pub fn matching_hypergraph(g: &Graph, r: usize) -> Result<Hypergraph> {
    let ms = enumerate_matchings(g, r)?;
    Ok(Hypergraph {
        ground_n: g.m(),
        hyperedges: ms.into_iter().map(|m| m.edges).collect(),
    })
}

/// KG(G, rK₂): the `r`-matchings of `g`, adjacent when edge-disjoint.
pub fn matching_graph(g: &Graph, r: usize) -> Result<KneserGraph> {
    Ok(general_kneser(&matching_hypergraph(g, r)?))
}

/// Hypergraph on `E(g)` whose hyperedges are the edge sets of subgraphs of
/// `g` isomorphic to `pattern` (isolated vertices of `pattern` ignored).
/// `cap` bounds the number of candidate edge subsets examined.
pub fn f_subgraph_hypergraph(g: &Graph, pattern: &Graph, cap: u64) -> Result<Hypergraph> {
    let k = pattern.m();
    if k == 0 {
        return invalid("pattern must have at least one edge");
    }
    let candidates = binomial(g.m() as u64, k as u64);
    if candidates > cap {
        return Err(Error::Capacity(format!(
            "{candidates} candidate edge subsets exceed cap {cap}"
        )));
    }
    let target = EdgePattern::from_edges(pattern.edges());
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    subsets_rec(g.m(), k, 0, &mut cur, &mut |subset| {
        let edges: Vec<(usize, usize)> = subset.iter().map(|&e| g.edge(e)).collect();
        if target.isomorphic_to(&EdgePattern::from_edges(&edges)) {
            out.push(subset.to_vec());
        }
    });
    Ok(Hypergraph {
        ground_n: g.m(),
        hyperedges: out,
    })
}

fn subsets_rec(
    m: usize,
    k: usize,
    from: usize,
    cur: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for e in from..m {
        if m - e < k - cur.len() {
            break;
        }
        cur.push(e);
        subsets_rec(m, k, e + 1, cur, f);
        cur.pop();
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Edge set relabelled on its non-isolated vertices, for brute-force isomorphism.
struct EdgePattern {
    n: usize,
    adj: Vec<Vec<bool>>,
    degrees: Vec<usize>,
}

impl EdgePattern {
    fn from_edges(edges: &[(usize, usize)]) -> Self {
        let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let n = verts.len();
        let pos = |x: usize| verts.binary_search(&x).unwrap();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            let (a, b) = (pos(u), pos(v));
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let degrees = adj
            .iter()
            .map(|r| r.iter().filter(|&&x| x).count())
            .collect();
        EdgePattern { n, adj, degrees }
    }

    fn isomorphic_to(&self, other: &EdgePattern) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut a = self.degrees.clone();
        let mut b = other.degrees.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend(other, 0, &mut map, &mut used)
    }

    fn extend(&self, other: &EdgePattern, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if v == self.n {
            return true;
        }
        for w in 0..other.n {
            if used[w] || self.degrees[v] != other.degrees[w] {
                continue;
            }
            if (0..v).all(|u| self.adj[v][u] == other.adj[w][map[u]]) {
                map[v] = w;
                used[w] = true;
                if self.extend(other, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
}
