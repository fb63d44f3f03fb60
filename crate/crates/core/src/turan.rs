//! Generalized Turán numbers ex(G, rK₂) with extremal certificates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{matching_number, EdgeMaskMatcher};

/// Edge bound for plain subset enumeration.
pub const EXHAUSTIVE_MAX_EDGES: usize = 24;
pub const DEFAULT_MAX_NODES: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TuranMethod {
    Exhaustive,
    StarConstruction,
    BranchBound,
}

/// `extremal_edges` is an `rK_2`-free edge set of size `ex_value`. When
/// `upper == ex_value` the value is certified; otherwise the search ran out
/// of budget and `ex(G, rK₂)` lies in `[ex_value, upper]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranCertificate {
    pub ex_value: usize,
    pub extremal_edges: Vec<usize>,
    pub method: TuranMethod,
    pub upper: usize,
}

impl TuranCertificate {
    pub fn is_exact(&self) -> bool {
        self.upper == self.ex_value
    }
}

/// True iff the spanning subgraph on `edges` has no `r`-matching.
pub fn is_f_free(edges: &[usize], g: &Graph, r: usize) -> bool {
    matching_number(&g.spanning_subgraph(edges)) < r
}

/// Best choice of `r − 1` vertices by number of incident edges; returns
/// that count and the edges meeting the chosen vertices (ascending).
pub fn star_lower_bound(g: &Graph, r: usize) -> (usize, Vec<usize>) {
    let k = r.saturating_sub(1).min(g.n());
    let mut best: (usize, Vec<usize>) = (0, Vec::new());
    let mut chosen = Vec::with_capacity(k);
    let mut visit = |set: &[usize]| {
        let edges: Vec<usize> = (0..g.m())
            .filter(|&e| {
                let (u, v) = g.edge(e);
                set.contains(&u) || set.contains(&v)
            })
            .collect();
        if edges.len() > best.0 {
            best = (edges.len(), edges);
        }
    };
    combos(g.n(), k, 0, &mut chosen, &mut visit);
    best
}

fn combos(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for v in from..n {
        if n - v < k - cur.len() {
            break;
        }
        cur.push(v);
        combos(n, k, v + 1, cur, f);
        cur.pop();
    }
}

/// Upper bound from a maximal matching: an `rK₂`-free edge set is covered by
/// at most `2(r − 1)` vertices.
fn cover_upper_bound(g: &Graph, r: usize) -> usize {
    let mut d = g.degrees();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d.iter()
        .take(2 * r.saturating_sub(1))
        .sum::<usize>()
        .min(g.m())
}

/// Exact `ex(G, rK₂)` by branch-and-bound with the default node budget.
pub fn turan_matchings(g: &Graph, r: usize) -> Result<TuranCertificate> {
    turan_matchings_with(g, r, DEFAULT_MAX_NODES)
}

/// Branch-and-bound over edges in index order, including before excluding,
/// so the reported extremal set is the lexicographically smallest one.
pub fn turan_matchings_with(g: &Graph, r: usize, max_nodes: u64) -> Result<TuranCertificate> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let matcher = EdgeMaskMatcher::new(g)?;
    let (star_value, star_edges) = star_lower_bound(g, r);
    let mut bb = TuranSearch {
        matcher: &matcher,
        m: g.m(),
        r,
        threshold: star_value as i64 - 1,
        best: None,
        nodes: 0,
        max_nodes,
    };
    let finished = bb.dfs(0, 0, 0);
    let best_mask = match bb.best {
        Some(mask) if mask.count_ones() as usize >= star_value => Some(mask),
        _ => None,
    };
    if finished {
        let mask = best_mask.unwrap_or(0);
        let edges = mask_to_edges(mask);
        return Ok(TuranCertificate {
            ex_value: edges.len(),
            extremal_edges: edges,
            method: TuranMethod::BranchBound,
            upper: mask.count_ones() as usize,
        });
    }
    let upper = cover_upper_bound(g, r);
    Ok(match best_mask {
        Some(mask) if mask.count_ones() as usize > star_value => {
            let edges = mask_to_edges(mask);
            TuranCertificate {
                ex_value: edges.len(),
                extremal_edges: edges,
                method: TuranMethod::BranchBound,
                upper,
            }
        }
        _ => TuranCertificate {
            ex_value: star_value,
            extremal_edges: star_edges,
            method: TuranMethod::StarConstruction,
            upper: upper.max(star_value),
        },
    })
}

fn mask_to_edges(mask: u64) -> Vec<usize> {
    (0..64).filter(|&e| mask >> e & 1 == 1).collect()
}

struct TuranSearch<'a> {
    matcher: &'a EdgeMaskMatcher,
    m: usize,
    r: usize,
    // a leaf must exceed this many edges to be recorded
    threshold: i64,
    best: Option<u64>,
    nodes: u64,
    max_nodes: u64,
}

impl TuranSearch<'_> {
    fn dfs(&mut self, i: usize, cur: u64, count: usize) -> bool {
        if self.nodes >= self.max_nodes {
            return false;
        }
        self.nodes += 1;
        if (count + (self.m - i)) as i64 <= self.threshold {
            return true;
        }
        if i == self.m {
            self.best = Some(cur);
            self.threshold = count as i64;
            return true;
        }
        let with = cur | 1 << i;
        if !self.matcher.contains_matching(with, self.r) && !self.dfs(i + 1, with, count + 1) {
            return false;
        }
        self.dfs(i + 1, cur, count)
    }
}

/// `ex(G, rK₂)` by enumerating every edge subset (`m <= 24`).
pub fn turan_exhaustive(g: &Graph, r: usize) -> Result<TuranCertificate> {
    if g.m() > EXHAUSTIVE_MAX_EDGES {
        return Err(Error::Capacity(format!(
            "exhaustive Turán search needs m <= {EXHAUSTIVE_MAX_EDGES}"
        )));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let matcher = EdgeMaskMatcher::new(g)?;
    let m = g.m();
    // Best size, then the lexicographically smallest index list.
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0u64..1 << m {
        let size = mask.count_ones() as usize;
        if best.as_ref().is_some_and(|(b, _)| size < *b) || matcher.contains_matching(mask, r) {
            continue;
        }
        let edges = mask_to_edges(mask);
        let better = match &best {
            None => true,
            Some((b, e)) => size > *b || edges < *e,
        };
        if better {
            best = Some((size, edges));
        }
    }
    let (ex_value, extremal_edges) = best.unwrap_or((0, Vec::new()));
    Ok(TuranCertificate {
        ex_value,
        extremal_edges,
        method: TuranMethod::Exhaustive,
        upper: ex_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::matching::Matching;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Largest edge set without r pairwise disjoint edges, by listing subsets.
    fn brute_ex(g: &Graph, r: usize) -> usize {
        let m = g.m();
        let mut best = 0;
        for mask in 0u32..1 << m {
            let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            let has = (0u32..1 << edges.len()).any(|sub| {
                sub.count_ones() as usize == r
                    && Matching {
                        edges: (0..edges.len())
                            .filter(|&k| sub >> k & 1 == 1)
                            .map(|k| edges[k])
                            .collect(),
                    }
                    .is_valid_in(g)
            });
            if !has {
                best = best.max(edges.len());
            }
        }
        best
    }

    #[test]
    fn examples() {
        let c5 = make_cycle(5).unwrap();
        assert_eq!(brute_ex(&c5, 2), 2);
        assert_eq!(turan_matchings(&c5, 2).unwrap().ex_value, 2);
        let k43 = make_complete_bipartite(4, 3).unwrap();
        let cert = turan_matchings(&k43, 2).unwrap();
        assert_eq!((cert.ex_value, cert.is_exact()), (4, true));
        let m4 = make_disjoint_matching(4).unwrap();
        assert_eq!(brute_ex(&m4, 2), 1);
        assert_eq!(turan_matchings(&m4, 2).unwrap().ex_value, 1);
    }

    #[test]
    fn star_examples() {
        let c7 = make_cycle(7).unwrap();
        let (v, edges) = star_lower_bound(&c7, 3);
        assert_eq!(v, 4);
        assert!(is_f_free(&edges, &c7, 3));
        assert_eq!(
            star_lower_bound(&make_complete_bipartite(4, 3).unwrap(), 2).0,
            4
        );
        assert_eq!(star_lower_bound(&make_complete(4).unwrap(), 2).0, 3);
        assert_eq!(star_lower_bound(&c7, 1), (0, vec![]));
    }

    #[test]
    fn f_free_examples() {
        let c4 = make_cycle(4).unwrap();
        assert!(is_f_free(&[0, 1], &c4, 2));
        assert!(!is_f_free(&[0, 2], &c4, 2));
        assert!(is_f_free(&[], &c4, 1));
    }

    #[test]
    fn branch_bound_matches_exhaustive_and_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(2..=7);
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        e.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, e).unwrap();
            if g.m() > 12 {
                continue;
            }
            for r in 1..=3 {
                let bb = turan_matchings(&g, r).unwrap();
                let ex = turan_exhaustive(&g, r).unwrap();
                assert_eq!(bb.ex_value, brute_ex(&g, r));
                assert_eq!(
                    bb,
                    TuranCertificate {
                        method: TuranMethod::BranchBound,
                        ..ex.clone()
                    }
                );
                assert!(is_f_free(&bb.extremal_edges, &g, r));
                assert!(star_lower_bound(&g, r).0 <= bb.ex_value);
            }
        }
    }

    #[test]
    fn cycles_have_ex_2r_minus_2() {
        for n in 3..=12usize {
            let c = make_cycle(n).unwrap();
            for r in 1..=5usize {
                if n < 2 * r + 1 {
                    continue;
                }
                assert_eq!(
                    turan_exhaustive(&c, r).unwrap().ex_value,
                    2 * r - 2,
                    "C_{n}, r = {r}"
                );
                assert_eq!(turan_matchings(&c, r).unwrap().ex_value, 2 * r - 2);
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let g = make_complete_bipartite(6, 4).unwrap();
        let cert = turan_matchings_with(&g, 3, 10).unwrap();
        assert!(!cert.is_exact());
        assert!(cert.ex_value <= 12 && 12 <= cert.upper);
        assert!(is_f_free(&cert.extremal_edges, &g, 3));
        assert_eq!(turan_matchings(&g, 3).unwrap().ex_value, 12);
    }
}
