//! Slow reference implementations used to check the library.
//!
//! Nothing here calls into the library's algorithms; graphs are handled as
//! plain edge lists.

#![allow(dead_code)]

use rand::Rng;

pub type Edges = Vec<(usize, usize)>;

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Edges {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    e
}

fn share(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

/// Matching number of every edge subset, indexed by mask (`m <= 24`).
pub fn matching_numbers(edges: &[(usize, usize)]) -> Vec<u8> {
    let m = edges.len();
    assert!(m <= 24);
    let mut touch = vec![0u32; m];
    for i in 0..m {
        for j in 0..m {
            if share(edges[i], edges[j]) {
                touch[i] |= 1 << j;
            }
        }
    }
    let mut nu = vec![0u8; 1 << m];
    for mask in 1u32..1 << m {
        let low = mask.trailing_zeros() as usize;
        let without = nu[(mask & !(1 << low)) as usize];
        let with = 1 + nu[(mask & !touch[low]) as usize];
        nu[mask as usize] = without.max(with);
    }
    nu
}

/// Matching number: the lowest vertex is either left unmatched or matched to a neighbor.
pub fn nu(edges: &[(usize, usize)]) -> usize {
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    fn rec(v: usize, edges: &[(usize, usize)], used: &mut [bool]) -> usize {
        let Some(v) = (v..used.len()).find(|&x| !used[x]) else {
            return 0;
        };
        used[v] = true;
        let mut best = rec(v + 1, edges, used);
        for &(a, b) in edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !used[w] {
                used[w] = true;
                best = best.max(1 + rec(v + 1, edges, used));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    rec(0, edges, &mut vec![false; n])
}

/// `ex(G, rK₂)` and one extremal mask, by listing all edge subsets.
pub fn ex(edges: &[(usize, usize)], r: usize) -> (usize, u32) {
    let nus = matching_numbers(edges);
    let mut best = (0, 0u32);
    for (mask, &k) in nus.iter().enumerate() {
        let size = (mask as u32).count_ones() as usize;
        if (k as usize) < r && size > best.0 {
            best = (size, mask as u32);
        }
    }
    best
}

pub fn is_free(edges: &[(usize, usize)], subset: &[usize], r: usize) -> bool {
    let sub: Edges = subset.iter().map(|&i| edges[i]).collect();
    nu(&sub) < r
}

/// `|V| − o(G − S) + |S|` for the vertex set `s`.
pub fn tutte_berge_value(n: usize, edges: &[(usize, usize)], s: u32) -> usize {
    let removed = |v: usize| s >> v & 1 == 1;
    let mut seen = vec![false; n];
    let mut odd = 0;
    for start in 0..n {
        if removed(start) || seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &(a, b) in edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !removed(w) && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        odd += size % 2;
    }
    n - odd + s.count_ones() as usize
}

/// `min_S (|V| − o(G − S) + |S|)` over all vertex subsets.
pub fn tutte_berge_min(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << n)
        .map(|s| tutte_berge_value(n, edges, s))
        .min()
        .unwrap()
}

/// All r-matchings as sorted edge-index lists, and the adjacency of the matching graph.
pub fn matching_graph(
    edges: &[(usize, usize)],
    r: usize,
) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let m = edges.len();
    let mut verts = Vec::new();
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != r {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let ok = idx
            .iter()
            .enumerate()
            .all(|(a, &i)| idx[a + 1..].iter().all(|&j| !share(edges[i], edges[j])));
        if ok {
            verts.push(idx);
        }
    }
    let mut adj = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if verts[i].iter().all(|e| !verts[j].contains(e)) {
                adj.push((i, j));
            }
        }
    }
    (verts, adj)
}

pub fn proper(n: usize, adj: &[(usize, usize)], coloring: &[usize]) -> bool {
    coloring.len() == n && adj.iter().all(|&(a, b)| coloring[a] != coloring[b])
}

/// Whether `k` colors suffice, or `None` if `max_nodes` ran out first.
/// Always branches on the uncolored vertex seeing the most distinct colors.
pub fn colorable(n: usize, adj: &[(usize, usize)], k: usize, max_nodes: u64) -> Option<bool> {
    let mut nb = vec![Vec::new(); n];
    for &(a, b) in adj {
        nb[a].push(b);
        nb[b].push(a);
    }
    struct S<'a> {
        nb: &'a [Vec<usize>],
        col: Vec<usize>,
        // seen[v][c]: neighbors of v colored c
        seen: Vec<Vec<u32>>,
        k: usize,
        nodes: u64,
        max: u64,
    }
    impl S<'_> {
        fn saturation(&self, v: usize) -> usize {
            self.seen[v].iter().filter(|&&x| x > 0).count()
        }
        fn set(&mut self, v: usize, c: usize, add: bool) {
            for i in 0..self.nb[v].len() {
                let w = self.nb[v][i];
                if add {
                    self.seen[w][c] += 1;
                } else {
                    self.seen[w][c] -= 1;
                }
            }
            self.col[v] = if add { c } else { usize::MAX };
        }
    }
    fn go(s: &mut S, left: usize, used: usize) -> Option<bool> {
        s.nodes += 1;
        if s.nodes > s.max {
            return None;
        }
        if left == 0 {
            return Some(true);
        }
        let v = (0..s.col.len())
            .filter(|&v| s.col[v] == usize::MAX)
            .max_by_key(|&v| (s.saturation(v), s.nb[v].len()))
            .unwrap();
        for c in 0..s.k.min(used + 1) {
            if s.seen[v][c] == 0 {
                s.set(v, c, true);
                let r = go(s, left - 1, used.max(c + 1));
                s.set(v, c, false);
                if r != Some(false) {
                    return r;
                }
            }
        }
        Some(false)
    }
    let mut s = S {
        nb: &nb,
        col: vec![usize::MAX; n],
        seen: vec![vec![0; k.max(1)]; n],
        k,
        nodes: 0,
        max: max_nodes,
    };
    go(&mut s, n, 0)
}

pub fn chromatic(n: usize, adj: &[(usize, usize)]) -> usize {
    (0..=n)
        .find(|&k| colorable(n, adj, k, u64::MAX) == Some(true))
        .unwrap()
}

/// Longest alternating run over nonzero signs.
pub fn alt(x: &[i8]) -> usize {
    let nz: Vec<i8> = x.iter().copied().filter(|&s| s != 0).collect();
    if nz.is_empty() {
        return 0;
    }
    1 + nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `alt_σ` (strong = false) or `salt_σ` (strong = true) over all `3^n` sign vectors;
/// `sigma[j]` is the element at position `j`.
pub fn alt_sigma(n: usize, hyperedges: &[Vec<usize>], sigma: &[usize], strong: bool) -> usize {
    let masks: Vec<u32> = hyperedges
        .iter()
        .map(|e| e.iter().fold(0, |m, &x| m | 1 << x))
        .collect();
    let mut best = 0;
    let mut x = vec![0i8; n];
    for code in 0..3u64.pow(n as u32) {
        let mut c = code;
        for v in x.iter_mut() {
            *v = (c % 3) as i8 - 1;
            c /= 3;
        }
        let side = |s: i8| {
            (0..n)
                .filter(|&j| x[j] == s)
                .fold(0u32, |m, j| m | 1 << sigma[j])
        };
        let contains = |set: u32| masks.iter().any(|&e| e & !set == 0);
        let (p, q) = (contains(side(1)), contains(side(-1)));
        let ok = if strong { !(p && q) } else { !p && !q };
        if ok {
            best = best.max(alt(&x));
        }
    }
    best
}

/// `ex_alt` / `ex_salt` along `sigma` by trying every colored subset and both start colors.
pub fn ex_alt_sigma(edges: &[(usize, usize)], r: usize, sigma: &[usize], strong: bool) -> usize {
    let m = edges.len();
    let nus = matching_numbers(edges);
    let mut best = 0;
    for chosen in 0u32..1 << m {
        let k = chosen.count_ones() as usize;
        if k <= best {
            continue;
        }
        let (mut red, mut blue) = (0u32, 0u32);
        let mut i = 0;
        for (j, &e) in sigma.iter().enumerate() {
            if chosen >> j & 1 == 1 {
                if i % 2 == 0 {
                    red |= 1 << e;
                } else {
                    blue |= 1 << e;
                }
                i += 1;
            }
        }
        let rf = (nus[red as usize] as usize) < r;
        let bf = (nus[blue as usize] as usize) < r;
        if if strong { rf || bf } else { rf && bf } {
            best = k;
        }
    }
    best
}
