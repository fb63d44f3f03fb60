//! Monogamous C₄-decompositions of complete bipartite graphs.
//!
//! Left vertices are `0..m`, right vertices `0..n`; an edge is a
//! `(left, right)` pair. A block is the 4-cycle on left pair `{a, b}` and
//! right pair `{c, d}`. A decomposition is monogamous when no two blocks share
//! a pair of vertices; within one side that means every left pair and every
//! right pair is used by at most one block, and across sides it follows from
//! the blocks being edge-disjoint.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub const DEFAULT_MAX_NODES: u64 = 200_000_000;

/// One 4-cycle, as its edges in cycle order `a–c–b–d–a`.
pub type C4Block = [(usize, usize); 4];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C4Decomposition {
    pub m: usize,
    pub n: usize,
    pub blocks: Vec<C4Block>,
}

pub fn block(a: usize, b: usize, c: usize, d: usize) -> C4Block {
    [(a, c), (b, c), (b, d), (a, d)]
}

/// Left pair and right pair of a block, if its edges really form a 4-cycle
/// of `K_{m,n}`.
pub fn block_pairs(blk: &C4Block) -> Option<((usize, usize), (usize, usize))> {
    let mut left: Vec<usize> = blk.iter().map(|e| e.0).collect();
    let mut right: Vec<usize> = blk.iter().map(|e| e.1).collect();
    left.sort_unstable();
    left.dedup();
    right.sort_unstable();
    right.dedup();
    if left.len() != 2 || right.len() != 2 {
        return None;
    }
    let mut edges = blk.to_vec();
    edges.sort_unstable();
    edges.dedup();
    (edges.len() == 4).then_some(((left[0], left[1]), (right[0], right[1])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C4Check {
    pub partition: bool,
    pub monogamous: bool,
    /// First problem found, if any.
    pub problem: Option<String>,
}

impl C4Check {
    pub fn is_valid(&self) -> bool {
        self.partition && self.monogamous
    }
}

/// Checks that the blocks are 4-cycles partitioning `E(K_{m,n})`, and whether no same-side pair repeats.
pub fn verify_c4_decomposition(dec: &C4Decomposition) -> C4Check {
    let (m, n) = (dec.m, dec.n);
    let mut covered = vec![0u32; m * n];
    let mut left_pairs = vec![0u32; m * m];
    let mut right_pairs = vec![0u32; n * n];
    let mut problem = None;
    for (i, blk) in dec.blocks.iter().enumerate() {
        let Some(((a, b), (c, d))) = block_pairs(blk) else {
            problem.get_or_insert(format!("block {i} is not a 4-cycle"));
            continue;
        };
        if b >= m || d >= n {
            problem.get_or_insert(format!("block {i} leaves K_{{{m},{n}}}"));
            continue;
        }
        for &(l, r) in blk {
            covered[l * n + r] += 1;
        }
        left_pairs[a * m + b] += 1;
        right_pairs[c * n + d] += 1;
    }
    let partition = problem.is_none() && covered.iter().all(|&k| k == 1);
    if problem.is_none() && !partition {
        let e = covered.iter().position(|&k| k != 1).unwrap();
        problem = Some(format!(
            "edge ({}, {}) covered {} times",
            e / n,
            e % n,
            covered[e]
        ));
    }
    let monogamous = left_pairs.iter().chain(&right_pairs).all(|&k| k <= 1);
    if problem.is_none() && !monogamous {
        problem = Some("a vertex pair lies in two blocks".into());
    }
    C4Check {
        partition,
        monogamous,
        problem,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum C4Outcome {
    Found {
        decomposition: C4Decomposition,
        nodes: u64,
    },
    /// The search finished without a decomposition. `trace` lists each first-block choice and its subtree size.
    Refuted {
        nodes: u64,
        trace: Vec<String>,
    },
    Indeterminate {
        nodes: u64,
    },
}

/// Backtracking search. The lowest uncovered edge `(a, c)` is always covered
/// next, by a block `{a, b} × {c, d}` with `b > a`, `d > c`.
pub fn c4_monogamous(m: usize, n: usize, max_nodes: u64) -> Result<C4Outcome> {
    if m == 0 || n == 0 || m % 2 == 1 || n % 2 == 1 {
        return invalid(format!(
            "side sizes must be positive and even, got ({m}, {n})"
        ));
    }
    let mut s = C4Search {
        m,
        n,
        covered: vec![false; m * n],
        left_used: vec![false; m * m],
        right_used: vec![false; n * n],
        blocks: Vec::new(),
        nodes: 0,
        max_nodes,
        trace: Vec::new(),
    };
    let found = s.dfs(0, 0);
    Ok(match found {
        Some(true) => {
            let decomposition = C4Decomposition {
                m,
                n,
                blocks: s.blocks,
            };
            debug_assert!(verify_c4_decomposition(&decomposition).is_valid());
            C4Outcome::Found {
                decomposition,
                nodes: s.nodes,
            }
        }
        Some(false) => C4Outcome::Refuted {
            nodes: s.nodes,
            trace: s.trace,
        },
        None => C4Outcome::Indeterminate { nodes: s.nodes },
    })
}

struct C4Search {
    m: usize,
    n: usize,
    covered: Vec<bool>,
    left_used: Vec<bool>,
    right_used: Vec<bool>,
    blocks: Vec<C4Block>,
    nodes: u64,
    max_nodes: u64,
    trace: Vec<String>,
}

impl C4Search {
    /// `Some(true)` when complete, `Some(false)` when this subtree is empty, `None` on budget.
    fn dfs(&mut self, from: usize, depth: usize) -> Option<bool> {
        let (m, n) = (self.m, self.n);
        let Some(e) = (from..m * n).find(|&e| !self.covered[e]) else {
            return Some(true);
        };
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        let (a, c) = (e / n, e % n);
        for b in a + 1..m {
            if self.left_used[a * m + b] || self.covered[b * n + c] {
                continue;
            }
            for d in c + 1..n {
                if self.right_used[c * n + d] || self.covered[a * n + d] || self.covered[b * n + d]
                {
                    continue;
                }
                let before = self.nodes;
                self.set(a, b, c, d, true);
                self.blocks.push(block(a, b, c, d));
                let r = self.dfs(e + 1, depth + 1);
                if r != Some(true) {
                    self.blocks.pop();
                    self.set(a, b, c, d, false);
                }
                if depth == 0 && r == Some(false) {
                    self.trace.push(format!(
                        "first block {{{a},{b}}}x{{{c},{d}}}: {} nodes, no completion",
                        self.nodes - before
                    ));
                }
                if r != Some(false) {
                    return r;
                }
            }
        }
        Some(false)
    }

    fn set(&mut self, a: usize, b: usize, c: usize, d: usize, on: bool) {
        let (m, n) = (self.m, self.n);
        for (l, r) in block(a, b, c, d) {
            self.covered[l * n + r] = on;
        }
        self.left_used[a * m + b] = on;
        self.right_used[c * n + d] = on;
    }
}
