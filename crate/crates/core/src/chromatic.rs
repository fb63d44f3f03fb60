//! Exact chromatic numbers with certificates.
//!
//! The solver is a DSATUR branch-and-bound seeded with a maximum clique (the
//! clique is precolored) and a DSATUR greedy upper bound. A caller may pass
//! an externally proven lower bound, such as an alternation bound; it is
//! recorded as the lower witness when it is what closes the gap. When the
//! node budget runs out the result is an interval, never an unproven value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::matching_hypergraph;
use crate::matching::matching_number;

/// Default node budget for the branch-and-bound.
pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

/// Why the chromatic number cannot be smaller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerWitness {
    /// Empty or edgeless graph.
    Trivial,
    /// A clique of size χ.
    Clique { vertices: Vec<usize> },
    /// The branch-and-bound exhausted every coloring with `colors` colors.
    Exhaustive { colors: usize, nodes: u64 },
    /// A bound proven outside the solver, such as `|V(H)| - alt_σ(H)`.
    External {
        bound: usize,
        source: String,
        ordering: Option<Vec<usize>>,
    },
}

impl LowerWitness {
    pub fn bound(&self) -> Option<usize> {
        match self {
            LowerWitness::Trivial => None,
            LowerWitness::Clique { vertices } => Some(vertices.len()),
            LowerWitness::Exhaustive { colors, .. } => Some(colors + 1),
            LowerWitness::External { bound, .. } => Some(*bound),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticCertificate {
    pub chi: usize,
    /// Colors in `0..chi`, renumbered by first occurrence.
    pub coloring: Vec<usize>,
    pub lower_witness: LowerWitness,
    pub nodes: u64,
}

/// Bounds left open when the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticInterval {
    pub lower: usize,
    pub upper: usize,
    pub coloring: Vec<usize>,
    pub lower_witness: LowerWitness,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChromaticResult {
    Exact(ChromaticCertificate),
    Interval(ChromaticInterval),
}

impl ChromaticResult {
    pub fn exact(&self) -> Option<usize> {
        match self {
            ChromaticResult::Exact(c) => Some(c.chi),
            ChromaticResult::Interval(_) => None,
        }
    }

    pub fn bounds(&self) -> (usize, usize) {
        match self {
            ChromaticResult::Exact(c) => (c.chi, c.chi),
            ChromaticResult::Interval(i) => (i.lower, i.upper),
        }
    }

    pub fn coloring(&self) -> &[usize] {
        match self {
            ChromaticResult::Exact(c) => &c.coloring,
            ChromaticResult::Interval(i) => &i.coloring,
        }
    }

    pub fn lower_witness(&self) -> &LowerWitness {
        match self {
            ChromaticResult::Exact(c) => &c.lower_witness,
            ChromaticResult::Interval(i) => &i.lower_witness,
        }
    }
}

/// A lower bound proven by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalBound {
    pub bound: usize,
    pub source: String,
    pub ordering: Option<Vec<usize>>,
}

pub fn chromatic_number(g: &Graph, budget: &Budget) -> ChromaticResult {
    chromatic_number_with(g, budget, None).expect("no external bound to contradict")
}

/// Like [`chromatic_number`], with an extra lower bound proven elsewhere.
/// Fails if that bound exceeds the number of colors of a proper coloring
/// the solver already holds.
pub fn chromatic_number_with(
    g: &Graph,
    budget: &Budget,
    external: Option<ExternalBound>,
) -> Result<ChromaticResult> {
    chromatic_number_seeded(g, budget, external, None)
}

/// Like [`chromatic_number_with`], also starting from a known proper coloring.
pub fn chromatic_number_seeded(
    g: &Graph,
    budget: &Budget,
    external: Option<ExternalBound>,
    initial: Option<&[usize]>,
) -> Result<ChromaticResult> {
    let n = g.n();
    let (mut ub, mut greedy) = dsatur_greedy(g);
    if let Some(c) = initial {
        if !is_proper(g, c)? {
            return Err(Error::InvalidCertificate(
                "initial coloring is not proper".into(),
            ));
        }
        let c = canonical(c);
        let k = c.iter().max().map_or(0, |&x| x + 1);
        if k < ub {
            ub = k;
            greedy = c;
        }
    }
    if let Some(e) = &external {
        if e.bound > ub {
            return Err(Error::InvalidCertificate(format!(
                "external lower bound {} exceeds a proper {ub}-coloring",
                e.bound
            )));
        }
    }
    if n == 0 {
        return Ok(exact(0, Vec::new(), LowerWitness::Trivial, 0));
    }
    if g.m() == 0 {
        return Ok(exact(1, vec![0; n], LowerWitness::Trivial, 0));
    }
    let clique = max_clique(g, budget.max_nodes / 10 + 1000);

    let ext_witness = |e: &ExternalBound| LowerWitness::External {
        bound: e.bound,
        source: e.source.clone(),
        ordering: e.ordering.clone(),
    };
    let clique_witness = LowerWitness::Clique {
        vertices: clique.clone(),
    };
    let (lb, lb_witness) = match &external {
        Some(e) if e.bound > clique.len() => (e.bound, ext_witness(e)),
        _ => (clique.len(), clique_witness.clone()),
    };
    if lb >= ub {
        return Ok(exact(ub, canonical(&greedy), lb_witness, 0));
    }

    let mut s = Search::new(g, ub, greedy, lb, budget.max_nodes);
    let finished = s.run(&clique);
    let coloring = canonical(&s.best);
    if finished {
        let chi = s.ub;
        let witness = if chi == clique.len() {
            clique_witness
        } else if chi == lb {
            lb_witness
        } else {
            LowerWitness::Exhaustive {
                colors: chi - 1,
                nodes: s.nodes,
            }
        };
        Ok(exact(chi, coloring, witness, s.nodes))
    } else {
        Ok(ChromaticResult::Interval(ChromaticInterval {
            lower: lb,
            upper: s.ub,
            coloring,
            lower_witness: lb_witness,
            nodes: s.nodes,
        }))
    }
}

fn exact(
    chi: usize,
    coloring: Vec<usize>,
    lower_witness: LowerWitness,
    nodes: u64,
) -> ChromaticResult {
    ChromaticResult::Exact(ChromaticCertificate {
        chi,
        coloring,
        lower_witness,
        nodes,
    })
}

/// Renumbers colors by first occurrence along the vertex order.
pub fn canonical(coloring: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    coloring
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// True iff no edge is monochromatic. The coloring must assign every vertex.
pub fn is_proper(g: &Graph, coloring: &[usize]) -> Result<bool> {
    if coloring.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "coloring covers {} of {} vertices",
            coloring.len(),
            g.n()
        )));
    }
    Ok(g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v]))
}

/// Colors every `r`-matching of `g` by the first edge it uses outside the
/// `rK_2`-free edge set `extremal`; color `k` is the `k`-th edge of
/// `E(g) \ extremal`. Indexed like [`crate::hypergraph::matching_graph`].
pub fn coloring_from_extremal(g: &Graph, r: usize, extremal: &[usize]) -> Result<Vec<usize>> {
    let mut inside = vec![false; g.m()];
    for &e in extremal {
        if e >= g.m() || std::mem::replace(&mut inside[e], true) {
            return Err(Error::InvalidCertificate(format!(
                "edge {e} is out of range or repeated"
            )));
        }
    }
    if matching_number(&g.spanning_subgraph(extremal)) >= r {
        return Err(Error::InvalidCertificate(format!(
            "edge set contains a {r}-matching"
        )));
    }
    let mut rank = vec![usize::MAX; g.m()];
    let mut next = 0;
    for e in 0..g.m() {
        if !inside[e] {
            rank[e] = next;
            next += 1;
        }
    }
    let h = matching_hypergraph(g, r)?;
    Ok(h.hyperedges()
        .iter()
        .map(|m| {
            let e = *m
                .iter()
                .find(|&&e| !inside[e])
                .expect("free set cannot contain an r-matching");
            rank[e]
        })
        .collect())
}

/// DSATUR greedy coloring: returns (number of colors, coloring).
pub fn dsatur_greedy(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; n + 1]; n];
    let mut sat = vec![0usize; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..=n).find(|&c| !seen[v][c]).unwrap();
        color[v] = c;
        used = used.max(c + 1);
        for &(w, _) in g.neighbors(v) {
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    (used, color)
}

/// Maximum clique by branch-and-bound with a greedy-coloring bound. Falls
/// back to the best clique found when the node budget runs out.
pub fn max_clique(g: &Graph, max_nodes: u64) -> Vec<usize> {
    let n = g.n();
    let words = n.div_ceil(64).max(1);
    let mut adj = vec![vec![0u64; words]; n];
    for &(u, v) in g.edges() {
        adj[u][v / 64] |= 1 << (v % 64);
        adj[v][u / 64] |= 1 << (u % 64);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut cq = CliqueSearch {
        adj,
        best: Vec::new(),
        cur: Vec::new(),
        nodes: 0,
        max_nodes,
    };
    cq.expand(order);
    let mut best = cq.best;
    best.sort_unstable();
    best
}

struct CliqueSearch {
    adj: Vec<Vec<u64>>,
    best: Vec<usize>,
    cur: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl CliqueSearch {
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v / 64] >> (v % 64) & 1 == 1
    }

    fn expand(&mut self, cands: Vec<usize>) {
        self.nodes += 1;
        if cands.is_empty() {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
            return;
        }
        // Greedy color classes bound the clique size within `cands`.
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut bound_of = Vec::with_capacity(cands.len());
        for &v in &cands {
            let k = classes
                .iter()
                .position(|cl| cl.iter().all(|&u| !self.adjacent(u, v)))
                .unwrap_or_else(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
            classes[k].push(v);
            bound_of.push((v, k + 1));
        }
        // Visit in decreasing color number so the bound tightens as we go.
        bound_of.sort_by_key(|&(v, k)| (std::cmp::Reverse(k), v));
        let mut remaining: Vec<usize> = bound_of.iter().map(|&(v, _)| v).collect();
        for &(v, k) in &bound_of {
            if self.cur.len() + k <= self.best.len() {
                return;
            }
            if self.nodes >= self.max_nodes && !self.best.is_empty() {
                return;
            }
            remaining.retain(|&u| u != v);
            let next: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&u| self.adjacent(u, v))
                .collect();
            self.cur.push(v);
            self.expand(next);
            self.cur.pop();
        }
    }
}

const NONE: usize = usize::MAX;

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    ub: usize,
    lb: usize,
    best: Vec<usize>,
    color: Vec<usize>,
    // forb[v * width + c] = number of neighbors of v colored c
    forb: Vec<u32>,
    width: usize,
    sat: Vec<usize>,
    free_deg: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, ub: usize, greedy: Vec<usize>, lb: usize, max_nodes: u64) -> Self {
        let n = g.n();
        let width = ub;
        Search {
            g,
            n,
            ub,
            lb,
            best: greedy,
            color: vec![NONE; n],
            forb: vec![0; n * width],
            width,
            sat: vec![0; n],
            free_deg: g.degrees(),
            nodes: 0,
            max_nodes,
            aborted: false,
        }
    }

    /// Returns true when the search finished (optimality proven).
    fn run(&mut self, clique: &[usize]) -> bool {
        for (c, &v) in clique.iter().enumerate() {
            self.assign(v, c);
        }
        self.dfs(clique.len(), clique.len());
        !self.aborted
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &(w, _) in self.g.neighbors(v) {
            self.free_deg[w] -= 1;
            let slot = &mut self.forb[w * self.width + c];
            *slot += 1;
            if *slot == 1 {
                self.sat[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = NONE;
        for &(w, _) in self.g.neighbors(v) {
            self.free_deg[w] += 1;
            let slot = &mut self.forb[w * self.width + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn select(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.n {
            if self.color[v] != NONE {
                continue;
            }
            let key = (self.sat[v], self.free_deg[v]);
            if best.is_none_or(|(s, d, _)| key > (s, d)) {
                best = Some((key.0, key.1, v));
            }
        }
        best.map(|(_, _, v)| v)
    }

    /// Some uncolored neighbor of `v` has no color left below `limit`.
    fn neighbor_blocked(&self, v: usize, limit: usize) -> bool {
        self.g.neighbors(v).iter().any(|&(w, _)| {
            self.color[w] == NONE && (0..limit).all(|c| self.forb[w * self.width + c] > 0)
        })
    }

    fn dfs(&mut self, colored: usize, used: usize) {
        if self.nodes >= self.max_nodes {
            self.aborted = true;
            return;
        }
        self.nodes += 1;
        if colored == self.n {
            self.ub = used;
            self.best = self.color.clone();
            return;
        }
        let Some(v) = self.select() else { return };
        let mut c = 0;
        while c < (used + 1).min(self.ub - 1) {
            if self.forb[v * self.width + c] == 0 {
                self.assign(v, c);
                let limit = self.ub - 1;
                if !self.neighbor_blocked(v, limit) {
                    self.dfs(colored + 1, used.max(c + 1));
                }
                self.unassign(v, c);
                if self.aborted || self.ub <= self.lb {
                    return;
                }
            }
            c += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::hypergraph::matching_graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// k-colorability by plain backtracking in vertex order.
    fn colorable(g: &Graph, k: usize) -> bool {
        fn rec(g: &Graph, k: usize, v: usize, col: &mut Vec<usize>) -> bool {
            if v == g.n() {
                return true;
            }
            for c in 0..k {
                if g.neighbors(v).iter().all(|&(w, _)| w > v || col[w] != c) {
                    col[v] = c;
                    if rec(g, k, v + 1, col) {
                        return true;
                    }
                }
            }
            false
        }
        rec(g, k, 0, &mut vec![0; g.n()])
    }

    fn brute_chi(g: &Graph) -> usize {
        (0..=g.n()).find(|&k| colorable(g, k)).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    e.push((u, v));
                }
            }
        }
        Graph::new(n, e).unwrap()
    }

    #[test]
    fn small_examples() {
        let b = Budget::default();
        assert_eq!(
            chromatic_number(&make_cycle(5).unwrap(), &b).exact(),
            Some(3)
        );
        let sg72 = matching_graph(&make_cycle(7).unwrap(), 2).unwrap().graph;
        assert_eq!(chromatic_number(&sg72, &b).exact(), Some(5));
        let k42 = matching_graph(&make_disjoint_matching(4).unwrap(), 2)
            .unwrap()
            .graph;
        assert_eq!(brute_chi(&k42), 2);
        assert_eq!(chromatic_number(&k42, &b).exact(), Some(2));
        assert_eq!(chromatic_number(&Graph::empty(0), &b).exact(), Some(0));
        assert_eq!(chromatic_number(&Graph::empty(3), &b).exact(), Some(1));
    }

    #[test]
    fn agrees_with_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = Budget::default();
        for _ in 0..500 {
            let n = rng.gen_range(1..=9);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let res = chromatic_number(&g, &b);
            let chi = res.exact().expect("small graphs finish");
            assert_eq!(chi, brute_chi(&g), "{g:?}");
            assert!(is_proper(&g, res.coloring()).unwrap());
            assert!(res.coloring().iter().all(|&c| c < chi));
        }
    }

    #[test]
    fn tiny_budget_gives_sound_interval() {
        let g = matching_graph(&make_complete_bipartite(4, 3).unwrap(), 2)
            .unwrap()
            .graph;
        match chromatic_number(&g, &Budget { max_nodes: 5 }) {
            ChromaticResult::Interval(i) => {
                assert!(i.lower <= 8 && 8 <= i.upper);
                assert!(is_proper(&g, &i.coloring).unwrap());
            }
            ChromaticResult::Exact(c) => assert_eq!(c.chi, 8),
        }
    }

    #[test]
    fn external_bound_closes_gap() {
        let g = matching_graph(&make_cycle(5).unwrap(), 2).unwrap().graph;
        let ext = ExternalBound {
            bound: 3,
            source: "test".into(),
            ordering: None,
        };
        let res = chromatic_number_with(&g, &Budget::default(), Some(ext)).unwrap();
        assert_eq!(res.exact(), Some(3));
        assert!(matches!(
            res.lower_witness(),
            LowerWitness::External { bound: 3, .. }
        ));
        let bogus = ExternalBound {
            bound: 4,
            source: "test".into(),
            ordering: None,
        };
        assert!(chromatic_number_with(&g, &Budget::default(), Some(bogus)).is_err());
    }

    #[test]
    fn seeded_coloring_and_external_bound_meet() {
        let k43 = make_complete_bipartite(4, 3).unwrap();
        let kg = matching_graph(&k43, 2).unwrap().graph;
        let col = coloring_from_extremal(&k43, 2, &[0, 3, 6, 9]).unwrap();
        let ext = ExternalBound {
            bound: 8,
            source: "test".into(),
            ordering: None,
        };
        let res =
            chromatic_number_seeded(&kg, &Budget { max_nodes: 1 }, Some(ext), Some(&col)).unwrap();
        assert_eq!(res.exact(), Some(8));
        let improper = vec![0; kg.n()];
        assert!(chromatic_number_seeded(&kg, &Budget::default(), None, Some(&improper)).is_err());
    }

    #[test]
    fn is_proper_examples() {
        let c4 = make_cycle(4).unwrap();
        assert!(is_proper(&c4, &[0, 1, 0, 1]).unwrap());
        assert!(!is_proper(&make_complete(3).unwrap(), &[0, 1, 0]).unwrap());
        assert!(is_proper(&Graph::empty(3), &[0, 0, 0]).unwrap());
        assert!(is_proper(&c4, &[0, 1]).is_err());
    }

    #[test]
    fn extremal_coloring_examples() {
        let c5 = make_cycle(5).unwrap();
        let col = coloring_from_extremal(&c5, 2, &[0, 1]).unwrap();
        let kg = matching_graph(&c5, 2).unwrap().graph;
        assert!(is_proper(&kg, &col).unwrap());
        assert!(col.iter().all(|&c| c < 3));

        // right vertex 4 of K_{4,3} is incident to edges 0, 3, 6, 9
        let k43 = make_complete_bipartite(4, 3).unwrap();
        let col = coloring_from_extremal(&k43, 2, &[0, 3, 6, 9]).unwrap();
        let kg = matching_graph(&k43, 2).unwrap().graph;
        assert!(is_proper(&kg, &col).unwrap());
        assert_eq!(col.iter().max().unwrap() + 1, 8);

        // a star at a left vertex has only 3 edges but is still 2K2-free
        assert!(coloring_from_extremal(&k43, 2, &[0, 1, 2]).is_ok());
        assert!(matches!(
            coloring_from_extremal(&k43, 2, &[0, 4]),
            Err(Error::InvalidCertificate(_))
        ));
        assert!(matches!(
            coloring_from_extremal(&c5, 1, &[0]),
            Err(Error::InvalidCertificate(_))
        ));
        // the empty set has no 1-matching, so every edge gets its own color
        assert_eq!(
            coloring_from_extremal(&c5, 1, &[]).unwrap(),
            vec![0, 1, 2, 3, 4]
        );
    }

    #[test]
    fn canonical_renumbers_by_first_occurrence() {
        assert_eq!(canonical(&[4, 4, 1, 7, 1]), vec![0, 0, 1, 2, 1]);
    }
}
