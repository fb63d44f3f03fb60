//! Edge orderings built from Eulerian tours.
//!
//! [`euler_ordering`] evens out a connected graph with one extra vertex,
//! walks an Eulerian tour and keeps the original edges in tour order.
//! [`dense_ordering`] does the same on a graph with an apex joined twice to
//! every vertex, walking the pieces of a locally Eulerian certificate one
//! root at a time.

use serde::{Deserialize, Serialize};

use crate::alternation::EdgeOrdering;
use crate::error::{Error, Result};
use crate::euler::eulerian_tour;
use crate::graph::{degree_order, odd_girth, DegreeOrder, Graph, MultiGraph};
use crate::locally_eulerian::{verify_locally_eulerian, LocallyEulerianCertificate};

/// Which alternation bound closes the gap for an applicable instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Every prefix degree is even: `ex_salt ≤ 1 + Σdeg`.
    Salt,
    /// Some prefix degree is odd: `ex_alt ≤ Σdeg`.
    Alt,
}

/// Evaluation of the sufficient conditions for
/// `χ(KG(G, rK₂)) = |E| − Σ_{i<r} deg(v_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFormulaReport {
    pub r: usize,
    pub connected: bool,
    /// `None` for bipartite graphs (infinite odd girth).
    pub odd_girth: Option<usize>,
    /// A non-increasing degree order whose first `r − 1` vertices are independent, if one exists.
    pub degree_order: Option<DegreeOrder>,
    pub prefix_independent: bool,
    /// `r ≤ max(g/2, (deg(v_{r−1}) + 1)/4)`
    pub inequality: bool,
    /// `deg(v_{r−1})` even, or `deg(v_{r−1}) > deg(v_r)`
    pub parity_or_drop: bool,
    pub prefix_degree_sum: Option<usize>,
    /// `|E| − Σ_{i<r} deg(v_i)`
    pub formula_value: Option<i64>,
    /// Number of odd degrees among `v_1..v_{r−1}`.
    pub odd_in_prefix: Option<usize>,
    pub bound_kind: Option<BoundKind>,
    pub applicable: bool,
}

pub fn degree_formula_conditions(g: &Graph, r: usize) -> DegreeFormulaReport {
    let connected = g.is_connected();
    let girth = odd_girth(g);
    let k = r.saturating_sub(1);
    let order = if r >= 2 {
        degree_order(g, Some(k))
    } else {
        None
    };
    let mut report = DegreeFormulaReport {
        r,
        connected,
        odd_girth: girth,
        degree_order: order.clone(),
        prefix_independent: order.is_some(),
        inequality: false,
        parity_or_drop: false,
        prefix_degree_sum: None,
        formula_value: None,
        odd_in_prefix: None,
        bound_kind: None,
        applicable: false,
    };
    let Some(order) = order else {
        return report;
    };
    let prefix = &order.perm[..k];
    let d_last = g.degree(prefix[k - 1]);
    let d_next = order.perm.get(k).map_or(0, |&v| g.degree(v));
    let sum: usize = prefix.iter().map(|&v| g.degree(v)).sum();
    let odd = prefix.iter().filter(|&&v| g.degree(v) % 2 == 1).count();
    // r ≤ g/2 ⇔ 2r ≤ g; r ≤ (d + 1)/4 ⇔ 4r ≤ d + 1
    let girth_ok = girth.is_none_or(|gi| 2 * r <= gi);
    report.inequality = girth_ok || 4 * r <= d_last + 1;
    report.parity_or_drop = d_last.is_multiple_of(2) || d_last > d_next;
    report.prefix_degree_sum = Some(sum);
    report.formula_value = Some(g.m() as i64 - sum as i64);
    report.odd_in_prefix = Some(odd);
    report.bound_kind = Some(if odd == 0 {
        BoundKind::Salt
    } else {
        BoundKind::Alt
    });
    report.applicable = connected && report.inequality && report.parity_or_drop;
    report
}

/// Tour-ordered edges of a connected graph, with its start vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerOrdering {
    pub ordering: EdgeOrdering,
    /// The tour start: the added vertex (index `g.n()`) when `g` has odd vertices, otherwise the last vertex in degree order.
    pub start: usize,
    pub added_vertex: bool,
}

pub fn euler_ordering(g: &Graph) -> Result<EulerOrdering> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut mg = MultiGraph::from_graph(g);
    let odd: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).collect();
    let (start, added) = if odd.is_empty() {
        (
            degree_order(g, None).and_then(|o| o.last()).unwrap_or(0),
            false,
        )
    } else {
        let w = mg.add_vertex();
        for &v in &odd {
            mg.add_edge(w, v)?;
        }
        (w, true)
    };
    let tour = eulerian_tour(&mg, start)?;
    let perm = tour.edges.into_iter().filter(|&e| e < g.m()).collect();
    Ok(EulerOrdering {
        ordering: EdgeOrdering::new(perm)?,
        start,
        added_vertex: added,
    })
}

/// For one vertex: the most edges at it one color class can take in an
/// alternating coloring along the ordering, against `⌈deg/2⌉`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfDegreeEntry {
    pub vertex: usize,
    pub degree: usize,
    pub max_one_color: usize,
}

impl HalfDegreeEntry {
    pub fn holds(&self) -> bool {
        self.max_one_color <= self.degree.div_ceil(2)
    }
}

/// Two colored edges at consecutive positions always get different colors,
/// so one color can take at most a set of `x`-edges with no two adjacent in
/// the ordering; a run of `L` consecutive positions contributes `⌈L/2⌉`.
/// Any such set is attainable.
pub fn half_degree_audit(g: &Graph, sigma: &EdgeOrdering) -> Vec<HalfDegreeEntry> {
    let pos = sigma.positions();
    (0..g.n())
        .map(|x| {
            let mut ps: Vec<usize> = g.neighbors(x).iter().map(|&(_, e)| pos[e]).collect();
            ps.sort_unstable();
            let mut total = 0;
            let mut run = 0usize;
            for (i, &p) in ps.iter().enumerate() {
                if i > 0 && ps[i - 1] + 1 == p {
                    run += 1;
                } else {
                    total += run.div_ceil(2);
                    run = 1;
                }
            }
            total += run.div_ceil(2);
            HalfDegreeEntry {
                vertex: x,
                degree: g.degree(x),
                max_one_color: total,
            }
        })
        .collect()
}

/// Edge ordering of `g` from a locally Eulerian certificate on a host
/// containing it (host vertex `i < g.n()` is `g`'s vertex `i`).
///
/// The host gets an apex `x` joined to every root `u_i` by two edges `f_i`,
/// `f'_i`, and, if needed, a vertex `z` joined to every odd vertex. Step `i`
/// walks `f_i`, an Eulerian tour of `H_i` from `u_i`, the lowest-indexed
/// untraversed leftover component containing `u_i` (if any), then `f'_i`.
/// Leftover components are those of the host plus `z`-edges minus all `H_i`,
/// indexed by their smallest edge.
pub fn dense_ordering(
    g: &Graph,
    host: &Graph,
    cert: &LocallyEulerianCertificate,
) -> Result<EdgeOrdering> {
    if cert.host != *host {
        return Err(Error::InvalidCertificate(
            "certificate is for a different host".into(),
        ));
    }
    let report = verify_locally_eulerian(cert);
    if let Some(v) = report.violation {
        return Err(Error::InvalidCertificate(format!("violated clause: {v:?}")));
    }
    if g.n() > host.n() || g.edges().iter().any(|&(u, v)| !host.has_edge(u, v)) {
        return Err(Error::InvalidArgument(
            "graph is not a subgraph of the host".into(),
        ));
    }
    let hn = host.n();
    let mut multi = MultiGraph::from_graph(host);
    let x = multi.add_vertex();
    // f_i, f'_i for root i are the apex edges 2i and 2i+1
    let mut apex = Vec::with_capacity(2 * hn);
    for &u in &cert.roots {
        apex.push(multi.add_edge(x, u)?);
        apex.push(multi.add_edge(x, u)?);
    }
    let deg = multi.degrees();
    let odd: Vec<usize> = (0..multi.n()).filter(|&v| deg[v] % 2 == 1).collect();
    let mut z_edges = Vec::new();
    if !odd.is_empty() {
        let z = multi.add_vertex();
        for &v in &odd {
            z_edges.push(multi.add_edge(z, v)?);
        }
    }
    // Leftover edges: host and z-edges not in any H_i.
    let mut in_piece = vec![false; multi.m()];
    for sub in &cert.subgraphs {
        for &e in sub {
            in_piece[e] = true;
        }
    }
    let leftover: Vec<usize> = (0..host.m())
        .chain(z_edges.iter().copied())
        .filter(|&e| !in_piece[e])
        .collect();
    let components = edge_components(&multi, &leftover);
    let mut comp_used = vec![false; components.len()];

    let mut walk: Vec<usize> = Vec::with_capacity(multi.m());
    for (i, &u) in cert.roots.iter().enumerate() {
        walk.push(apex[2 * i]);
        walk.extend(sub_tour(&multi, &cert.subgraphs[i], u)?);
        if let Some(j) =
            (0..components.len()).find(|&j| !comp_used[j] && components[j].1.contains(&u))
        {
            comp_used[j] = true;
            walk.extend(sub_tour(&multi, &components[j].0, u)?);
        }
        walk.push(apex[2 * i + 1]);
    }
    if walk.len() != multi.m() {
        return Err(Error::InvalidCertificate(format!(
            "staged tour covers {} of {} edges; a leftover component has no root",
            walk.len(),
            multi.m()
        )));
    }
    let perm: Vec<usize> = walk
        .into_iter()
        .filter(|&e| e < host.m())
        .filter_map(|e| {
            let (a, b) = host.edge(e);
            g.edge_index(a, b)
        })
        .collect();
    EdgeOrdering::new(perm)
}

/// Components of the edge set `edges`, sorted by smallest edge; each with its vertex set.
fn edge_components(g: &MultiGraph, edges: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        let mut v = v;
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for &e in edges {
        let (a, b) = g.edges()[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut by_root: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> =
        Default::default();
    for &e in edges {
        let (a, b) = g.edges()[e];
        let root = find(&mut parent, a);
        let entry = by_root.entry(root).or_default();
        entry.0.push(e);
        entry.1.push(a);
        entry.1.push(b);
    }
    let mut comps: Vec<(Vec<usize>, Vec<usize>)> = by_root
        .into_values()
        .map(|(mut es, mut vs)| {
            es.sort_unstable();
            vs.sort_unstable();
            vs.dedup();
            (es, vs)
        })
        .collect();
    comps.sort_by_key(|c| c.0[0]);
    comps
}

/// Eulerian tour of the sub-multigraph on `edges`, from `start`, in the parent's edge indices.
fn sub_tour(g: &MultiGraph, edges: &[usize], start: usize) -> Result<Vec<usize>> {
    let mut sub = MultiGraph::with_vertices(g.n());
    for &e in edges {
        let (a, b) = g.edges()[e];
        sub.add_edge(a, b)?;
    }
    let tour = eulerian_tour(&sub, start)?;
    Ok(tour.edges.into_iter().map(|i| edges[i]).collect())
}
