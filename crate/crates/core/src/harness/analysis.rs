//! Full pipeline for one `(G, r)` instance.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alternation::{
    chi_lower_bounds, ex_alt_sigma, ex_salt_sigma, ChiLowerBounds, EdgeOrdering,
};
use crate::chromatic::{
    chromatic_number_seeded, coloring_from_extremal, is_proper, Budget, ChromaticResult,
    ExternalBound,
};
use crate::error::Result;
use crate::graph::Graph;
use crate::hypergraph::{matching_graph, matching_hypergraph};
use crate::matching::{matching_number, tutte_berge, TutteBergeWitness};
use crate::orderings::euler_ordering;
use crate::turan::{is_f_free, turan_matchings_with, TuranCertificate};

use super::report::{graph_hash, Exactness};

/// Ground-set size above which alternation values are not attempted.
pub const ALTERNATION_MAX_EDGES: usize = 40;
/// Matching graphs with more vertices are not handed to the solver.
pub const SOLVER_MAX_VERTICES: usize = 4000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingChoice {
    Euler,
    Identity,
    Given(EdgeOrdering),
}

impl OrderingChoice {
    pub fn name(&self) -> &'static str {
        match self {
            OrderingChoice::Euler => "euler",
            OrderingChoice::Identity => "identity",
            OrderingChoice::Given(_) => "file",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub ordering: OrderingChoice,
    pub budget: Budget,
    /// Random orderings tried when the chromatic number is still an interval.
    pub extra_orderings: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            ordering: OrderingChoice::Euler,
            budget: Budget::default(),
            extra_orderings: 32,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternationSummary {
    pub ordering_source: String,
    pub ordering: EdgeOrdering,
    pub bounds: ChiLowerBounds,
    pub ex_alt: usize,
    pub ex_salt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceAnalysis {
    pub graph_sha256: String,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub nu: usize,
    pub tutte_berge: Option<TutteBergeWitness>,
    pub turan: TuranCertificate,
    pub ex_exactness: Exactness,
    pub matching_graph_vertices: usize,
    pub matching_graph_edges: usize,
    pub alternation: Option<AlternationSummary>,
    /// Why `alternation` is missing, if it is.
    pub alternation_note: Option<String>,
    pub chromatic: Option<ChromaticResult>,
    pub chi_exactness: Exactness,
    /// `|E| − ex`
    pub formula_value: i64,
    /// `χ == |E| − ex` when both are certified.
    pub equality: Option<bool>,
    pub audits: Vec<Audit>,
}

impl InstanceAnalysis {
    pub fn chi(&self) -> Option<usize> {
        self.chromatic.as_ref().and_then(ChromaticResult::exact)
    }

    pub fn chi_bounds(&self) -> Option<(usize, usize)> {
        self.chromatic.as_ref().map(ChromaticResult::bounds)
    }

    pub fn audits_hold(&self) -> bool {
        self.audits.iter().all(|a| a.holds)
    }
}

fn resolve_ordering(
    g: &Graph,
    choice: &OrderingChoice,
) -> std::result::Result<EdgeOrdering, String> {
    match choice {
        OrderingChoice::Euler => euler_ordering(g)
            .map(|e| e.ordering)
            .map_err(|e| e.to_string()),
        OrderingChoice::Identity => Ok(EdgeOrdering::identity(g.m())),
        OrderingChoice::Given(o) if o.len() == g.m() => Ok(o.clone()),
        OrderingChoice::Given(o) => Err(format!(
            "ordering has {} entries, graph has {} edges",
            o.len(),
            g.m()
        )),
    }
}

fn alternation_for(
    g: &Graph,
    r: usize,
    sigma: &EdgeOrdering,
    source: &str,
) -> Result<AlternationSummary> {
    let h = matching_hypergraph(g, r)?;
    let bounds = chi_lower_bounds(&h, sigma)?;
    let ex_alt = ex_alt_sigma(g, r, sigma)?.value;
    let ex_salt = ex_salt_sigma(g, r, sigma)?.value;
    Ok(AlternationSummary {
        ordering_source: source.to_string(),
        ordering: sigma.clone(),
        bounds,
        ex_alt,
        ex_salt,
    })
}

pub fn analyze_instance(g: &Graph, r: usize, opts: &AnalysisOptions) -> Result<InstanceAnalysis> {
    let nu = matching_number(g);
    let tutte_berge = tutte_berge(g).ok();
    let turan = turan_matchings_with(g, r, opts.budget.max_nodes.max(1))?;
    let ex_exactness = if turan.is_exact() {
        Exactness::Certified
    } else {
        Exactness::Interval
    };
    let kg = matching_graph(g, r)?;
    let mut audits = Vec::new();

    let mut alternation = None;
    let mut alternation_note = None;
    if g.m() > ALTERNATION_MAX_EDGES {
        alternation_note = Some(format!(
            "alternation skipped: {} edges exceed {ALTERNATION_MAX_EDGES}",
            g.m()
        ));
    } else {
        match resolve_ordering(g, &opts.ordering) {
            Ok(sigma) => match alternation_for(g, r, &sigma, opts.ordering.name()) {
                Ok(a) => alternation = Some(a),
                Err(e) => alternation_note = Some(e.to_string()),
            },
            Err(e) => alternation_note = Some(format!("no {} ordering: {e}", opts.ordering.name())),
        }
    }

    let extremal_coloring = coloring_from_extremal(g, r, &turan.extremal_edges)?;
    let mut chromatic = None;
    if kg.graph.n() <= SOLVER_MAX_VERTICES {
        let mut best_alt = alternation.clone();
        let mut result = solve(
            &kg.graph,
            &opts.budget,
            best_alt.as_ref(),
            &extremal_coloring,
        )?;
        // Try more orderings while the gap is open.
        if result.exact().is_none() && g.m() <= ALTERNATION_MAX_EDGES {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut perm: Vec<usize> = (0..g.m()).collect();
            for _ in 0..opts.extra_orderings {
                perm.shuffle(&mut rng);
                let sigma = EdgeOrdering::new(perm.clone())?;
                let cand = alternation_for(g, r, &sigma, "sampled")?;
                if best_alt
                    .as_ref()
                    .is_none_or(|b| cand.bounds.best() > b.bounds.best())
                {
                    best_alt = Some(cand);
                    result = solve(
                        &kg.graph,
                        &opts.budget,
                        best_alt.as_ref(),
                        &extremal_coloring,
                    )?;
                    if result.exact().is_some() {
                        break;
                    }
                }
            }
            if alternation.is_none() {
                alternation = best_alt;
            }
        }
        audits.push(Audit {
            name: "coloring is proper".into(),
            holds: is_proper(&kg.graph, result.coloring())?,
        });
        chromatic = Some(result);
    }

    audits.push(Audit {
        name: "extremal set is rK2-free".into(),
        holds: is_f_free(&turan.extremal_edges, g, r),
    });
    if let Some(tb) = &tutte_berge {
        audits.push(Audit {
            name: "Tutte-Berge deficiency matches nu".into(),
            holds: tb.nu == nu,
        });
    }
    if let Some(a) = &alternation {
        let ex = turan.ex_value;
        if turan.is_exact() {
            audits.push(Audit {
                name: "ex <= ex_alt <= 2 ex".into(),
                holds: ex <= a.ex_alt && a.ex_alt <= 2 * ex,
            });
        }
        audits.push(Audit {
            name: "alt equals ex_alt".into(),
            holds: a.bounds.alt == a.ex_alt,
        });
        audits.push(Audit {
            name: "salt equals ex_salt".into(),
            holds: a.bounds.salt == a.ex_salt,
        });
        if let Some((_, hi)) = chromatic.as_ref().map(ChromaticResult::bounds) {
            audits.push(Audit {
                name: "alternation bound <= chi".into(),
                holds: a.bounds.best() <= hi as i64,
            });
        }
    }
    let formula_value = g.m() as i64 - turan.ex_value as i64;
    if let Some(res) = &chromatic {
        let (_, hi) = res.bounds();
        audits.push(Audit {
            name: "chi <= |E| - ex".into(),
            holds: hi as i64 <= formula_value || !turan.is_exact(),
        });
    }
    let chi_exactness = match chromatic.as_ref().and_then(ChromaticResult::exact) {
        Some(_) => Exactness::Certified,
        None => Exactness::Interval,
    };
    let equality = match (
        chromatic.as_ref().and_then(ChromaticResult::exact),
        turan.is_exact(),
    ) {
        (Some(chi), true) => Some(chi as i64 == formula_value),
        _ => None,
    };
    Ok(InstanceAnalysis {
        graph_sha256: graph_hash(g),
        n: g.n(),
        m: g.m(),
        r,
        nu,
        tutte_berge,
        turan,
        ex_exactness,
        matching_graph_vertices: kg.graph.n(),
        matching_graph_edges: kg.graph.m(),
        alternation,
        alternation_note,
        chromatic,
        chi_exactness,
        formula_value,
        equality,
        audits,
    })
}

fn solve(
    kg: &Graph,
    budget: &Budget,
    alt: Option<&AlternationSummary>,
    seed: &[usize],
) -> Result<ChromaticResult> {
    let external = alt.filter(|a| a.bounds.best() > 0).map(|a| ExternalBound {
        bound: a.bounds.best() as usize,
        source: format!("alternation along {} ordering", a.ordering_source),
        ordering: Some(a.ordering.perm.clone()),
    });
    chromatic_number_seeded(kg, budget, external, Some(seed))
}
