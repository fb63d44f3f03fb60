//! Deterministic Eulerian tours (Hierholzer).
//!
//! At every vertex the unused incident edges are scanned in ascending
//! `(neighbor, edge index)` order, so the tour is a pure function of the
//! input indexing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MultiGraph};

/// A closed walk using every edge once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTour {
    /// `vertices[i]` and `vertices[i + 1]` are the endpoints of `edges[i]`.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Eulerian tour of `g` starting and ending at `start`.
///
/// Vertices of degree zero are ignored. Fails when a vertex has odd degree,
/// when `start` has no edges while others do, or when the edges do not form
/// a single component.
pub fn eulerian_tour(g: &MultiGraph, start: usize) -> Result<EulerTour> {
    if start >= g.n() {
        return Err(Error::InvalidArgument(format!(
            "start vertex {start} out of range"
        )));
    }
    let deg = g.degrees();
    if let Some(v) = (0..g.n()).find(|&v| deg[v] % 2 == 1) {
        return Err(Error::NotEulerian {
            vertex: v,
            reason: format!("odd degree {}", deg[v]),
        });
    }
    if g.m() == 0 {
        return Ok(EulerTour {
            vertices: vec![start],
            edges: Vec::new(),
        });
    }
    if deg[start] == 0 {
        return Err(Error::NotEulerian {
            vertex: start,
            reason: "start vertex has no edges".into(),
        });
    }
    let adj = g.adjacency();
    let mut next = vec![0usize; g.n()];
    let mut used = vec![false; g.m()];
    // Iterative Hierholzer: the circuit comes out reversed.
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit: Vec<(usize, Option<usize>)> = Vec::with_capacity(g.m() + 1);
    while let Some(&(v, _)) = stack.last() {
        let row = &adj[v];
        while next[v] < row.len() && used[row[next[v]].1] {
            next[v] += 1;
        }
        if next[v] == row.len() {
            circuit.push(stack.pop().unwrap());
        } else {
            let (w, e) = row[next[v]];
            used[e] = true;
            stack.push((w, Some(e)));
        }
    }
    if let Some(e) = used.iter().position(|&u| !u) {
        let (u, _) = g.edges()[e];
        return Err(Error::NotEulerian {
            vertex: u,
            reason: format!("edge {e} is not reachable from {start}"),
        });
    }
    circuit.reverse();
    let vertices = circuit.iter().map(|&(v, _)| v).collect();
    let edges = circuit.iter().filter_map(|&(_, e)| e).collect();
    Ok(EulerTour { vertices, edges })
}

/// Convenience wrapper for simple graphs.
pub fn eulerian_tour_simple(g: &Graph, start: usize) -> Result<EulerTour> {
    eulerian_tour(&MultiGraph::from_graph(g), start)
}

/// True when `tour` is a closed walk from `start` using each edge of `g` exactly once.
pub fn is_euler_tour(g: &MultiGraph, start: usize, tour: &EulerTour) -> bool {
    if tour.edges.len() != g.m() || tour.vertices.len() != g.m() + 1 {
        return false;
    }
    if tour.vertices.first() != Some(&start) || tour.vertices.last() != Some(&start) {
        return false;
    }
    let mut seen = vec![false; g.m()];
    for (i, &e) in tour.edges.iter().enumerate() {
        if e >= g.m() || std::mem::replace(&mut seen[e], true) {
            return false;
        }
        let (a, b) = g.edges()[e];
        let (x, y) = (tour.vertices[i], tour.vertices[i + 1]);
        if !((a == x && b == y) || (a == y && b == x)) {
            return false;
        }
    }
    true
}
