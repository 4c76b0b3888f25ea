//! Graph and spectral analysis of shifts of finite type.

mod connector;
mod graph;
mod perron;
mod properties;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::symdyn::{higher_block, Presentation, SubshiftSpec, SymdynError};

pub use connector::{find_connector, Connector, MAX_D};
pub use graph::SftGraph;
pub use perron::{perron_of_lists, DEFAULT_TOL};
pub use properties::{
    avoiding_cycle, graph_property, is_aperiodic, is_irreducible, language_property, Property, PropertyVerdict, Truth,
};

/// Largest higher-block graph built before falling back to the presentation.
pub const BLOCK_BUDGET: usize = 200_000;
/// Largest block graph used for property verdicts whose witnesses are
/// block labels; larger SFTs are decided on the presentation when possible.
pub const WITNESS_BLOCKS: usize = 20_000;
/// Word length used for the slope estimate.
pub const SLOPE_LENGTH: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SftlabError {
    #[error("the shift is empty")]
    EmptyShift,
    #[error("graph is not irreducible")]
    NotIrreducible,
    #[error("power iteration did not converge in {iterations} steps")]
    NonConvergence { iterations: usize },
    #[error(transparent)]
    Symdyn(#[from] SymdynError),
}

/// Perron eigenvalue of an essential irreducible graph.
pub fn perron_eigenvalue(g: &SftGraph, tol: f64) -> Result<f64, SftlabError> {
    let period = g.period()?;
    perron_of_lists(g.successor_lists(), tol, period > 1)
}

/// Spectral radius of a graph with parallel edges, and whether the whole
/// graph is one component.
fn spectral_radius(succ: &[Vec<usize>], tol: f64) -> Result<(f64, bool), SftlabError> {
    let labels = vec![String::new(); succ.len()];
    let simple = SftGraph::new(labels, succ.to_vec());
    let comps = simple.nontrivial_sccs();
    if comps.is_empty() {
        return Err(SftlabError::EmptyShift);
    }
    let irreducible = comps.len() == 1 && comps[0].len() == succ.len();
    let mut best = 0.0f64;
    for c in &comps {
        let mut id = vec![usize::MAX; succ.len()];
        for (n, &o) in c.iter().enumerate() {
            id[o] = n;
        }
        let sub: Vec<Vec<usize>> = c
            .iter()
            .map(|&i| {
                succ[i]
                    .iter()
                    .filter(|&&j| id[j] != usize::MAX)
                    .map(|&j| id[j])
                    .collect()
            })
            .collect();
        let period = simple.induced(c).period()?;
        best = best.max(perron_of_lists(&sub, tol, period > 1)?);
    }
    Ok((best, irreducible))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    /// Perron eigenvalue when the graph is irreducible.
    pub perron: Option<f64>,
    /// Logarithm of the spectral radius: the topological entropy.
    pub log_perron: f64,
    /// Mean of `log(B_{n+1}/B_n)` over the last four computed lengths.
    pub slope_estimate: f64,
    pub slope_length: usize,
    /// Graph the spectral value came from.
    pub source: &'static str,
    pub vertices: usize,
}

/// Entropy of the closure SFT from its higher-block graph at block length
/// `M + 1`, with the word-count slope alongside.
pub fn entropy(s: &SubshiftSpec, slope_length: usize) -> Result<EntropyReport, SftlabError> {
    let p = s.presentation();
    if p.is_empty() {
        return Err(SftlabError::EmptyShift);
    }
    let block = s.closure.memory() + 1;
    if p.count_words(block).last().copied().unwrap_or(0) > WITNESS_BLOCKS as u128 {
        return entropy_of_presentation(&p, slope_length);
    }
    match higher_block(&s.closure, block, BLOCK_BUDGET) {
        Ok(g) => {
            let g = g.essentialize()?;
            let (lambda, irreducible) = spectral_radius(g.successor_lists(), DEFAULT_TOL)?;
            finish(&p, lambda, irreducible, slope_length, "higher_block", g.n())
        }
        Err(SymdynError::BudgetExceeded { .. }) => entropy_of_presentation(&p, slope_length),
        Err(e) => Err(e.into()),
    }
}

/// Entropy of a shift given by a right-resolving presentation.
pub fn entropy_of_presentation(p: &Presentation, slope_length: usize) -> Result<EntropyReport, SftlabError> {
    if p.is_empty() {
        return Err(SftlabError::EmptyShift);
    }
    let (lambda, irreducible) = spectral_radius(&p.adjacency(), DEFAULT_TOL)?;
    finish(p, lambda, irreducible, slope_length, "presentation", p.n_states())
}

fn finish(
    p: &Presentation,
    lambda: f64,
    irreducible: bool,
    slope_length: usize,
    source: &'static str,
    vertices: usize,
) -> Result<EntropyReport, SftlabError> {
    let n = slope_length.max(5);
    let counts = p.count_words(n);
    if counts.contains(&0) {
        return Err(SftlabError::EmptyShift);
    }
    let logs: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let slope = logs.windows(2).rev().take(4).map(|w| w[1] - w[0]).sum::<f64>() / 4.0;
    Ok(EntropyReport {
        perron: irreducible.then_some(lambda),
        log_perron: lambda.ln(),
        slope_estimate: slope,
        slope_length: n,
        source,
        vertices,
    })
}

/// Exact property verdict for the closure SFT.
///
/// Chain transitivity and chain mixing coincide with transitivity and
/// mixing for SFTs; chain recurrence and nonwandering both mean that every
/// essential vertex lies on a cycle.
pub fn check_property(s: &SubshiftSpec, property: Property) -> Result<PropertyVerdict, SftlabError> {
    let block = s.closure.memory() + 1;
    let blocks = s.presentation().count_words(block).last().copied().unwrap_or(0);
    if blocks > WITNESS_BLOCKS as u128 && presentation_decides(property) {
        return graph_property(&presentation_graph(&s.presentation()).essentialize()?, property);
    }
    let g = higher_block(&s.closure, block, BLOCK_BUDGET)?.essentialize()?;
    graph_property(&g, property)
}

/// The essential part of the forbidden-word automaton is a label-preserving
/// quotient of the essential block graph with the same cycle lengths, so it
/// decides irreducibility and aperiodicity.
fn presentation_decides(property: Property) -> bool {
    matches!(
        property,
        Property::Irreducible
            | Property::Transitive
            | Property::ChainTransitive
            | Property::Aperiodic
            | Property::Mixing
            | Property::ChainMixing
    )
}

fn presentation_graph(p: &Presentation) -> SftGraph {
    let labels = (0..p.n_states()).map(|i| format!("q{i}")).collect();
    SftGraph::new(labels, p.adjacency())
}

/// Analysis report for a code space.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub k: usize,
    pub forbidden: Vec<String>,
    pub exclusion_pairs: Vec<[usize; 2]>,
    pub block_length: usize,
    pub essential_vertices: usize,
    pub perron: Option<f64>,
    pub entropy: f64,
    pub slope_estimate: f64,
    pub transitive: Truth,
    pub mixing: Truth,
    pub period: Option<usize>,
    pub witnesses: BTreeMap<&'static str, Vec<String>>,
}

pub fn analyze(s: &SubshiftSpec) -> Result<AnalysisReport, SftlabError> {
    let block = s.closure.memory() + 1;
    let g = higher_block(&s.closure, block, BLOCK_BUDGET)?.essentialize()?;
    let e = entropy(s, SLOPE_LENGTH)?;
    let t = graph_property(&g, Property::Transitive)?;
    let m = graph_property(&g, Property::Mixing)?;
    let file = s.to_file();
    let mut witnesses = BTreeMap::new();
    witnesses.insert("transitive", t.witness.clone());
    witnesses.insert("mixing", m.witness.clone());
    Ok(AnalysisReport {
        k: file.k,
        forbidden: file.forbidden,
        exclusion_pairs: file.exclusion_pairs,
        block_length: block,
        essential_vertices: g.n(),
        perron: e.perron,
        entropy: e.log_perron,
        slope_estimate: e.slope_estimate,
        transitive: t.value,
        mixing: m.value,
        period: m.period,
        witnesses,
    })
}
