//! Alternation numbers of sign vectors and hypergraphs, and alternating
//! Turán numbers of graphs.
//!
//! For a hypergraph `H` on ground set `[n]` and an ordering `σ`, a sign
//! vector `X ∈ {−1, 0, +1}^n` is read along `σ`: position `j` assigns sign
//! `x_j` to element `σ(j)`. `alt_σ(H)` is the largest `alt(X)` such that
//! neither `X⁺_σ` nor `X⁻_σ` contains a hyperedge; `salt_σ(H)` only asks
//! that at most one of them does. Only alternating vectors need to be
//! considered, because deleting a repeated sign keeps `alt(X)` and shrinks
//! both supports.
//!
//! Two independent routes are provided:
//!
//! * [`alt_sigma`] / [`salt_sigma`] run a memoized search over positions on a
//!   [`Hypergraph`]; the state is the set of hyperedges each side can still
//!   swallow.
//! * [`ex_alt_sigma`] / [`ex_salt_sigma`] work on a [`Graph`] directly and
//!   test each color class for an `r`-matching.
//!
//! On matching hypergraphs the two agree, which the tests check.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::matching::EdgeMaskMatcher;

/// Ground-set bound for the 3^n enumeration.
pub const EXHAUSTIVE_MAX_N: usize = 18;
/// Ground-set bound for minimizing over all orderings.
pub const ORDERING_MAX_N: usize = 8;
const MAX_POSITIONS: usize = 64;

/// An element of `{−1, 0, +1}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some(x) = entries.iter().find(|x| !(-1..=1).contains(*x)) {
            return invalid(format!("sign entry {x} not in {{-1, 0, 1}}"));
        }
        Ok(SignVector(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `X⁺_σ`: the elements placed at `+1` positions.
    pub fn plus(&self, sigma: &EdgeOrdering) -> Vec<usize> {
        self.support(sigma, 1)
    }

    /// `X⁻_σ`.
    pub fn minus(&self, sigma: &EdgeOrdering) -> Vec<usize> {
        self.support(sigma, -1)
    }

    fn support(&self, sigma: &EdgeOrdering, sign: i8) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.len())
            .filter(|&j| self.0[j] == sign)
            .map(|j| sigma.perm[j])
            .collect();
        s.sort_unstable();
        s
    }
}

/// Length of the longest alternating subsequence of nonzero entries; 0 for the zero vector.
pub fn alt(x: &SignVector) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for &v in &x.0 {
        if v != 0 && v != last {
            count += 1;
            last = v;
        }
    }
    count
}

/// A linear order on `0..len`; `perm[j]` is the element at position `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeOrdering {
    pub perm: Vec<usize>,
}

impl EdgeOrdering {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &e in &perm {
            if e >= perm.len() || std::mem::replace(&mut seen[e], true) {
                return invalid(format!(
                    "ordering is not a permutation of 0..{}",
                    perm.len()
                ));
            }
        }
        Ok(EdgeOrdering { perm })
    }

    pub fn identity(len: usize) -> Self {
        EdgeOrdering {
            perm: (0..len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `position[e]` = index of `e` in the ordering.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.perm.len()];
        for (j, &e) in self.perm.iter().enumerate() {
            pos[e] = j;
        }
        pos
    }

    /// Single line of space-separated indices.
    pub fn to_line(&self) -> String {
        self.perm
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let perm = line
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("bad index {t:?}"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        EdgeOrdering::new(perm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Blue,
}

/// A 2-coloring of the edges at `colored` positions (ascending) of an
/// ordering, alternating from `start_color`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingColoring {
    pub ordering: EdgeOrdering,
    pub colored: Vec<usize>,
    pub start_color: Color,
}

impl AlternatingColoring {
    pub fn len(&self) -> usize {
        self.colored.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colored.is_empty()
    }

    fn class(&self, parity: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .colored
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == parity)
            .map(|(_, &p)| self.ordering.perm[p])
            .collect();
        v.sort_unstable();
        v
    }

    pub fn red(&self) -> Vec<usize> {
        self.class(if self.start_color == Color::Red { 0 } else { 1 })
    }

    pub fn blue(&self) -> Vec<usize> {
        self.class(if self.start_color == Color::Red { 1 } else { 0 })
    }

    /// As a sign vector with red = +1.
    pub fn to_sign_vector(&self) -> SignVector {
        let mut x = vec![0i8; self.ordering.len()];
        for (i, &p) in self.colored.iter().enumerate() {
            let red = (i % 2 == 0) == (self.start_color == Color::Red);
            x[p] = if red { 1 } else { -1 };
        }
        SignVector(x)
    }
}

/// Whether both supports (`Alt`) or at least one support (`Salt`) must avoid every hyperedge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Alt,
    Salt,
}

/// An optimal value together with a sign vector attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltValue {
    pub value: usize,
    pub witness: SignVector,
}

fn check_ordering(h: &Hypergraph, sigma: &EdgeOrdering) -> Result<()> {
    if sigma.len() != h.ground_n() {
        return invalid(format!(
            "ordering has length {}, ground set has {}",
            sigma.len(),
            h.ground_n()
        ));
    }
    if h.ground_n() > MAX_POSITIONS {
        return Err(Error::Capacity(format!(
            "ground set {} exceeds {MAX_POSITIONS}",
            h.ground_n()
        )));
    }
    Ok(())
}

pub fn alt_sigma(h: &Hypergraph, sigma: &EdgeOrdering) -> Result<AltValue> {
    alternation_value(h, sigma, Strength::Alt)
}

pub fn salt_sigma(h: &Hypergraph, sigma: &EdgeOrdering) -> Result<AltValue> {
    alternation_value(h, sigma, Strength::Salt)
}

pub fn alternation_value(
    h: &Hypergraph,
    sigma: &EdgeOrdering,
    strength: Strength,
) -> Result<AltValue> {
    check_ordering(h, sigma)?;
    let mut dp = AltDp::new(h, sigma, strength);
    let start = dp.initial();
    let value = dp.best(0, &start) as usize;
    let witness = dp.reconstruct(start);
    debug_assert_eq!(alt(&witness), value);
    Ok(AltValue { value, witness })
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct DpState {
    next_plus: bool,
    plus_dead: bool,
    minus_dead: bool,
    // hyperedges whose placed elements all sit on that side, not yet complete
    plus_alive: Vec<u64>,
    minus_alive: Vec<u64>,
}

struct AltDp {
    n: usize,
    strength: Strength,
    // hyperedge indices containing the element at each position
    contains_at: Vec<Vec<usize>>,
    // hyperedges whose last element (in σ order) sits at each position
    completes_at: Vec<Vec<usize>>,
    words: usize,
    memo: HashMap<(usize, DpState), u8>,
}

fn clear_bit(v: &mut [u64], i: usize) {
    v[i / 64] &= !(1u64 << (i % 64));
}

fn test_bit(v: &[u64], i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

impl AltDp {
    fn new(h: &Hypergraph, sigma: &EdgeOrdering, strength: Strength) -> Self {
        let n = h.ground_n();
        let pos = sigma.positions();
        let mut contains_at = vec![Vec::new(); n];
        let mut completes_at = vec![Vec::new(); n];
        for (i, e) in h.hyperedges().iter().enumerate() {
            for &x in e {
                contains_at[pos[x]].push(i);
            }
            let last = e.iter().map(|&x| pos[x]).max().unwrap();
            completes_at[last].push(i);
        }
        let words = h.len().div_ceil(64).max(1);
        AltDp {
            n,
            strength,
            contains_at,
            completes_at,
            words,
            memo: HashMap::new(),
        }
    }

    fn initial(&self) -> DpState {
        let mut all = vec![u64::MAX; self.words];
        let k = self.completes_at.iter().map(Vec::len).sum::<usize>();
        for i in k..self.words * 64 {
            clear_bit(&mut all, i);
        }
        DpState {
            next_plus: true,
            plus_dead: false,
            minus_dead: false,
            plus_alive: all.clone(),
            minus_alive: all,
        }
    }

    fn skip(&self, p: usize, s: &DpState) -> DpState {
        let mut t = s.clone();
        for &i in &self.contains_at[p] {
            clear_bit(&mut t.plus_alive, i);
            clear_bit(&mut t.minus_alive, i);
        }
        t
    }

    /// Places the element at position `p` on the side `s.next_plus` names.
    fn place(&self, p: usize, s: &DpState) -> Option<DpState> {
        let mut t = s.clone();
        let plus = s.next_plus;
        for &i in &self.contains_at[p] {
            if plus {
                clear_bit(&mut t.minus_alive, i);
            } else {
                clear_bit(&mut t.plus_alive, i);
            }
        }
        let (alive, dead) = if plus {
            (&t.plus_alive, t.plus_dead)
        } else {
            (&t.minus_alive, t.minus_dead)
        };
        let swallowed = !dead && self.completes_at[p].iter().any(|&i| test_bit(alive, i));
        if swallowed {
            let other_dead = if plus { t.minus_dead } else { t.plus_dead };
            if self.strength == Strength::Alt || other_dead {
                return None;
            }
            if plus {
                t.plus_dead = true;
            } else {
                t.minus_dead = true;
            }
        }
        t.next_plus = !plus;
        Some(t)
    }

    fn finish_position(&self, p: usize, mut t: DpState) -> DpState {
        for &i in &self.completes_at[p] {
            clear_bit(&mut t.plus_alive, i);
            clear_bit(&mut t.minus_alive, i);
        }
        if t.plus_dead {
            t.plus_alive.iter_mut().for_each(|w| *w = 0);
        }
        if t.minus_dead {
            t.minus_alive.iter_mut().for_each(|w| *w = 0);
        }
        t
    }

    fn best(&mut self, p: usize, s: &DpState) -> u8 {
        if p == self.n {
            return 0;
        }
        let key = (p, s.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let skipped = self.finish_position(p, self.skip(p, s));
        let mut v = self.best(p + 1, &skipped);
        if let Some(placed) = self.place(p, s) {
            let placed = self.finish_position(p, placed);
            v = v.max(1 + self.best(p + 1, &placed));
        }
        self.memo.insert(key, v);
        v
    }

    #[allow(clippy::needless_range_loop)]
    fn reconstruct(&mut self, mut s: DpState) -> SignVector {
        let mut x = vec![0i8; self.n];
        for p in 0..self.n {
            let target = self.best(p, &s);
            if let Some(placed) = self.place(p, &s) {
                let placed = self.finish_position(p, placed);
                if 1 + self.best(p + 1, &placed) == target {
                    x[p] = if s.next_plus { 1 } else { -1 };
                    s = placed;
                    continue;
                }
            }
            s = self.finish_position(p, self.skip(p, &s));
        }
        SignVector(x)
    }
}

/// The 3^n enumeration over every sign vector (`n <= 18`), with `alt(X)`
/// computed on arbitrary vectors rather than only alternating ones.
pub fn alternation_exhaustive(
    h: &Hypergraph,
    sigma: &EdgeOrdering,
    strength: Strength,
) -> Result<AltValue> {
    check_ordering(h, sigma)?;
    let n = h.ground_n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::Capacity(format!(
            "3^{n} sign vectors exceed the exhaustive bound"
        )));
    }
    let masks = h.masks()?;
    let contains = |side: u64| masks.iter().any(|&e| e & !side == 0);
    let mut best = AltValue {
        value: 0,
        witness: SignVector(vec![0; n]),
    };
    let mut x = vec![0i8; n];
    let total = 3u64.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for v in x.iter_mut() {
            *v = (c % 3) as i8 - 1;
            c /= 3;
        }
        let sv = SignVector(x.clone());
        let a = alt(&sv);
        if a <= best.value && code != 0 {
            continue;
        }
        let side = |sign: i8| {
            (0..n)
                .filter(|&j| x[j] == sign)
                .fold(0u64, |m, j| m | 1 << sigma.perm[j])
        };
        let (p, q) = (contains(side(1)), contains(side(-1)));
        let ok = match strength {
            Strength::Alt => !p && !q,
            Strength::Salt => !(p && q),
        };
        if ok && a > best.value {
            best = AltValue {
                value: a,
                witness: sv,
            };
        }
    }
    Ok(best)
}

/// Result of minimizing over orderings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinOverOrderings {
    pub value: usize,
    pub ordering: EdgeOrdering,
    /// False when only sampled orderings were tried; `value` is then an upper bound on the minimum.
    pub certified: bool,
}

/// How to search the orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingSearch {
    /// All `n!` orderings; fails above [`ORDERING_MAX_N`].
    Exhaustive,
    /// Random orderings from a fixed seed.
    Sampled { samples: usize, seed: u64 },
}

pub fn alt_min(h: &Hypergraph, search: OrderingSearch) -> Result<MinOverOrderings> {
    min_over_orderings(h, Strength::Alt, search)
}

pub fn salt_min(h: &Hypergraph, search: OrderingSearch) -> Result<MinOverOrderings> {
    min_over_orderings(h, Strength::Salt, search)
}

fn min_over_orderings(
    h: &Hypergraph,
    strength: Strength,
    search: OrderingSearch,
) -> Result<MinOverOrderings> {
    let n = h.ground_n();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut consider = |perm: &[usize]| -> Result<()> {
        let v = alternation_value(
            h,
            &EdgeOrdering {
                perm: perm.to_vec(),
            },
            strength,
        )?
        .value;
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, perm.to_vec()));
        }
        Ok(())
    };
    let certified = match search {
        OrderingSearch::Exhaustive => {
            if n > ORDERING_MAX_N {
                return Err(Error::Capacity(format!(
                    "{n}! orderings exceed the exhaustive bound"
                )));
            }
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                consider(&perm)?;
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            true
        }
        OrderingSearch::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..n).collect();
            consider(&perm)?;
            for _ in 0..samples {
                perm.shuffle(&mut rng);
                consider(&perm)?;
            }
            false
        }
    };
    let (value, perm) = best.expect("at least one ordering");
    Ok(MinOverOrderings {
        value,
        ordering: EdgeOrdering { perm },
        certified,
    })
}

/// Lexicographic successor; false after the last permutation.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Maximum alternating coloring along `sigma` and a coloring attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExAltValue {
    pub value: usize,
    pub coloring: AlternatingColoring,
}

/// Largest alternating 2-coloring along `sigma` whose red and blue classes are both `rK₂`-free.
pub fn ex_alt_sigma(g: &Graph, r: usize, sigma: &EdgeOrdering) -> Result<ExAltValue> {
    ex_alternating(g, r, sigma, Strength::Alt)
}

/// As [`ex_alt_sigma`], but only one of the two classes has to be `rK₂`-free.
pub fn ex_salt_sigma(g: &Graph, r: usize, sigma: &EdgeOrdering) -> Result<ExAltValue> {
    ex_alternating(g, r, sigma, Strength::Salt)
}

/// Tries target sizes `k = 1, 2, ...` and stops at the first infeasible one.
/// Feasibility is monotone in `k`: dropping the last colored edge of a
/// feasible coloring leaves a feasible coloring.
pub fn ex_alternating(
    g: &Graph,
    r: usize,
    sigma: &EdgeOrdering,
    strength: Strength,
) -> Result<ExAltValue> {
    if sigma.len() != g.m() {
        return invalid(format!(
            "ordering has length {}, graph has {} edges",
            sigma.len(),
            g.m()
        ));
    }
    if r == 0 {
        return invalid("r must be at least 1");
    }
    let matcher = EdgeMaskMatcher::new(g)?;
    let search = ColoringSearch {
        matcher: &matcher,
        perm: &sigma.perm,
        r,
        strength,
    };
    let mut best: Vec<usize> = Vec::new();
    for k in 1..=g.m() {
        let mut chosen = Vec::with_capacity(k);
        if search.feasible(k, 0, [0, 0], [false, false], &mut chosen) {
            best = chosen;
        } else {
            break;
        }
    }
    Ok(ExAltValue {
        value: best.len(),
        coloring: AlternatingColoring {
            ordering: sigma.clone(),
            colored: best,
            start_color: Color::Red,
        },
    })
}

struct ColoringSearch<'a> {
    matcher: &'a EdgeMaskMatcher,
    perm: &'a [usize],
    r: usize,
    strength: Strength,
}

impl ColoringSearch<'_> {
    /// Colors `k` more positions from `pos` on; `class[c]` is the edge mask of color `c`.
    fn feasible(
        &self,
        k: usize,
        pos: usize,
        class: [u64; 2],
        dead: [bool; 2],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let need = k - chosen.len();
        if need == 0 {
            return true;
        }
        if self.perm.len() - pos < need {
            return false;
        }
        let c = chosen.len() % 2;
        let mut next = class;
        next[c] |= 1u64 << self.perm[pos];
        let mut nd = dead;
        if !dead[c] && self.matcher.contains_matching(next[c], self.r) {
            nd[c] = true;
        }
        let allowed = match self.strength {
            Strength::Alt => !nd[c],
            Strength::Salt => !(nd[0] && nd[1]),
        };
        if allowed {
            chosen.push(pos);
            if self.feasible(k, pos + 1, next, nd, chosen) {
                return true;
            }
            chosen.pop();
        }
        self.feasible(k, pos + 1, class, dead, chosen)
    }
}

/// Instance-level lower bounds on `χ(KG(H))` from one ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiLowerBounds {
    pub alt: usize,
    pub salt: usize,
    /// `|V(H)| − alt_σ(H)`
    pub alt_bound: i64,
    /// `|V(H)| + 1 − salt_σ(H)`, or 0 when `H` has no hyperedges (KG(H) is then empty).
    pub salt_bound: i64,
}

impl ChiLowerBounds {
    pub fn best(&self) -> i64 {
        self.alt_bound.max(self.salt_bound)
    }
}

pub fn chi_lower_bounds(h: &Hypergraph, sigma: &EdgeOrdering) -> Result<ChiLowerBounds> {
    let a = alt_sigma(h, sigma)?.value;
    let s = salt_sigma(h, sigma)?.value;
    let n = h.ground_n() as i64;
    let salt_bound = if h.is_empty() { 0 } else { n + 1 - s as i64 };
    Ok(ChiLowerBounds {
        alt: a,
        salt: s,
        alt_bound: n - a as i64,
        salt_bound,
    })
}
