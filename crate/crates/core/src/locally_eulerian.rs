//! `(r, c)`-locally Eulerian certificates.
//!
//! A certificate on a host graph `H` lists one root per vertex and one edge
//! set per root. Each edge set must be a nontrivial connected even subgraph
//! containing its root, the edge sets must be pairwise disjoint, and the root
//! must have degree at least `(r − 1)·deg(u) + c` for every other vertex `u`
//! of its subgraph.

use serde::{Deserialize, Serialize};

use crate::c4::{block_pairs, c4_monogamous, verify_c4_decomposition, C4Decomposition, C4Outcome};
use crate::error::{invalid, Result};
use crate::graph::{make_complete_bipartite, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocallyEulerianCertificate {
    pub host: Graph,
    /// `roots[i]` is the root of `subgraphs[i]`; together a permutation of `V(host)`.
    pub roots: Vec<usize>,
    /// Edge indices into `host`.
    pub subgraphs: Vec<Vec<usize>>,
    pub r: usize,
    pub c: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    RootsNotAPermutation,
    SubgraphCount {
        roots: usize,
        subgraphs: usize,
    },
    EdgeOutOfRange {
        subgraph: usize,
        edge: usize,
    },
    EdgeDisjoint {
        edge: usize,
        first: usize,
        second: usize,
    },
    Nontrivial {
        subgraph: usize,
    },
    RootMissing {
        subgraph: usize,
        root: usize,
    },
    Connected {
        subgraph: usize,
    },
    EvenDegrees {
        subgraph: usize,
        vertex: usize,
        degree: usize,
    },
    RootDominance {
        subgraph: usize,
        vertex: usize,
        root_degree: usize,
        degree: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocallyEulerianReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

/// Checks every clause in a fixed order and reports the first that fails.
pub fn verify_locally_eulerian(cert: &LocallyEulerianCertificate) -> LocallyEulerianReport {
    let violation = first_violation(cert);
    LocallyEulerianReport {
        valid: violation.is_none(),
        violation,
    }
}

fn first_violation(cert: &LocallyEulerianCertificate) -> Option<Violation> {
    let h = &cert.host;
    let mut seen = vec![false; h.n()];
    if cert.roots.len() != h.n()
        || cert
            .roots
            .iter()
            .any(|&v| v >= h.n() || std::mem::replace(&mut seen[v], true))
    {
        return Some(Violation::RootsNotAPermutation);
    }
    if cert.subgraphs.len() != cert.roots.len() {
        return Some(Violation::SubgraphCount {
            roots: cert.roots.len(),
            subgraphs: cert.subgraphs.len(),
        });
    }
    let mut owner: Vec<Option<usize>> = vec![None; h.m()];
    for (i, sub) in cert.subgraphs.iter().enumerate() {
        for &e in sub {
            if e >= h.m() {
                return Some(Violation::EdgeOutOfRange {
                    subgraph: i,
                    edge: e,
                });
            }
            if let Some(j) = owner[e] {
                return Some(Violation::EdgeDisjoint {
                    edge: e,
                    first: j,
                    second: i,
                });
            }
            owner[e] = Some(i);
        }
    }
    for (i, sub) in cert.subgraphs.iter().enumerate() {
        let root = cert.roots[i];
        if sub.is_empty() {
            return Some(Violation::Nontrivial { subgraph: i });
        }
        let part = h.spanning_subgraph(sub);
        if part.degree(root) == 0 {
            return Some(Violation::RootMissing { subgraph: i, root });
        }
        if !part.edges_connected() {
            return Some(Violation::Connected { subgraph: i });
        }
        if let Some(v) = (0..h.n()).find(|&v| part.degree(v) % 2 == 1) {
            return Some(Violation::EvenDegrees {
                subgraph: i,
                vertex: v,
                degree: part.degree(v),
            });
        }
        let rd = part.degree(root);
        for v in (0..h.n()).filter(|&v| v != root && part.degree(v) > 0) {
            if rd < cert.r.saturating_sub(1) * part.degree(v) + cert.c {
                return Some(Violation::RootDominance {
                    subgraph: i,
                    vertex: v,
                    root_degree: rd,
                    degree: part.degree(v),
                });
            }
        }
    }
    None
}

/// Largest `c` the certificate's subgraphs support for a given `r`, or `None` if some subgraph is broken.
pub fn max_c_for(cert: &LocallyEulerianCertificate, r: usize) -> Option<usize> {
    let probe = LocallyEulerianCertificate {
        r,
        c: 0,
        ..cert.clone()
    };
    if !verify_locally_eulerian(&probe).valid {
        return None;
    }
    let h = &cert.host;
    let mut best = usize::MAX;
    for (i, sub) in cert.subgraphs.iter().enumerate() {
        let part = h.spanning_subgraph(sub);
        let root = cert.roots[i];
        let rd = part.degree(root);
        for v in (0..h.n()).filter(|&v| v != root && part.degree(v) > 0) {
            best = best.min(rd - r.saturating_sub(1) * part.degree(v));
        }
    }
    Some(best)
}

/// Outcome of the block assignment with a given number of copies per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BlockAssignment {
    Certified {
        certificate: LocallyEulerianCertificate,
        report: LocallyEulerianReport,
    },
    /// No matching saturates the vertex copies.
    HallFailure { matched: usize, needed: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopiesReading {
    pub copies: usize,
    pub assignment: BlockAssignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum LocallyEulerianConstruction {
    /// `floor` uses ⌊(t−3)/8⌋ copies per vertex; `ceil` uses ⌈(t−3)/8⌉ and is present only when the two differ.
    Built {
        blocks: usize,
        floor: CopiesReading,
        ceil: Option<CopiesReading>,
    },
    /// The C₄ search proved there is no monogamous decomposition of the evened-up graph.
    NoDecomposition,
    /// The C₄ search ran out of budget.
    Indeterminate { nodes: u64 },
}

fn evened(t: usize) -> usize {
    t + t % 2
}

/// Builds a locally Eulerian certificate on `K_{t,t'}` from a monogamous
/// C₄-decomposition of `K_{T,T'}`, `T = t + (t mod 2)`, found by search.
pub fn locally_eulerian_from_c4(
    t: usize,
    t_prime: usize,
    r: usize,
    c: usize,
    max_nodes: u64,
) -> Result<LocallyEulerianConstruction> {
    if t < 3 || t_prime < 1 {
        return invalid("need t >= 3 and t' >= 1");
    }
    match c4_monogamous(evened(t), evened(t_prime), max_nodes)? {
        C4Outcome::Found { decomposition, .. } => {
            locally_eulerian_from_decomposition(t, t_prime, r, c, &decomposition)
        }
        C4Outcome::Refuted { .. } => Ok(LocallyEulerianConstruction::NoDecomposition),
        C4Outcome::Indeterminate { nodes } => {
            Ok(LocallyEulerianConstruction::Indeterminate { nodes })
        }
    }
}

/// As [`locally_eulerian_from_c4`], with the decomposition supplied.
///
/// Host `K_{t,t'}` is numbered as by
/// [`make_complete_bipartite`](crate::graph::make_complete_bipartite): left
/// `0..t`, right `t..t+t'`. Blocks entirely inside it are matched to
/// `copies` copies of each vertex by augmenting paths; vertex `v` gets the
/// union of its blocks, rooted at `v`.
pub fn locally_eulerian_from_decomposition(
    t: usize,
    t_prime: usize,
    r: usize,
    c: usize,
    dec: &C4Decomposition,
) -> Result<LocallyEulerianConstruction> {
    if t < 3 {
        return invalid("need t >= 3");
    }
    if dec.m != evened(t) || dec.n != evened(t_prime) {
        return invalid(format!(
            "decomposition is of K_{{{},{}}}, expected K_{{{},{}}}",
            dec.m,
            dec.n,
            evened(t),
            evened(t_prime)
        ));
    }
    let check = verify_c4_decomposition(dec);
    if !check.is_valid() {
        return invalid(format!(
            "not a monogamous C4-decomposition: {}",
            check.problem.unwrap_or_default()
        ));
    }
    let host = make_complete_bipartite(t, t_prime)?;
    // Blocks inside K_{t,t'}, as host vertex quadruples.
    let blocks: Vec<[usize; 4]> = dec
        .blocks
        .iter()
        .filter_map(|b| {
            let ((a, b2), (c1, d)) = block_pairs(b)?;
            (b2 < t && d < t_prime).then_some([a, b2, t + c1, t + d])
        })
        .collect();
    let floor = (t - 3) / 8;
    let ceil = (t - 3).div_ceil(8);
    let reading = |copies| CopiesReading {
        copies,
        assignment: assign_blocks(&host, &blocks, copies, r, c),
    };
    Ok(LocallyEulerianConstruction::Built {
        blocks: blocks.len(),
        floor: reading(floor),
        ceil: (ceil != floor).then(|| reading(ceil)),
    })
}

fn assign_blocks(
    host: &Graph,
    blocks: &[[usize; 4]],
    copies: usize,
    r: usize,
    c: usize,
) -> BlockAssignment {
    let n = host.n();
    // left side: copy k of vertex v is v * copies + k
    let adj: Vec<Vec<usize>> = (0..n * copies)
        .map(|u| {
            (0..blocks.len())
                .filter(|&b| blocks[b].contains(&(u / copies.max(1))))
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; blocks.len()];
    let mut matched = 0;
    for u in 0..n * copies {
        let mut seen = vec![false; blocks.len()];
        if augment(u, &adj, &mut owner, &mut seen) {
            matched += 1;
        }
    }
    if matched < n * copies {
        return BlockAssignment::HallFailure {
            matched,
            needed: n * copies,
        };
    }
    let mut subgraphs = vec![Vec::new(); n];
    for (b, o) in owner.iter().enumerate() {
        if let Some(u) = o {
            let [a, a2, x, y] = blocks[b];
            for (p, q) in [(a, x), (a2, x), (a2, y), (a, y)] {
                subgraphs[u / copies].push(host.edge_index(p, q).expect("block edge in host"));
            }
        }
    }
    for s in &mut subgraphs {
        s.sort_unstable();
    }
    let certificate = LocallyEulerianCertificate {
        host: host.clone(),
        roots: (0..n).collect(),
        subgraphs,
        r,
        c,
    };
    let report = verify_locally_eulerian(&certificate);
    BlockAssignment::Certified {
        certificate,
        report,
    }
}

/// Kuhn's augmenting path step.
fn augment(u: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &b in &adj[u] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if owner[b].is_none_or(|w| augment(w, adj, owner, seen)) {
            owner[b] = Some(u);
            return true;
        }
    }
    false
}
