use std::collections::HashMap;

use crate::decomposition::{Decomposition, Part, Provenance};
use crate::error::{Error, Result};
use crate::graph::{canonical_hash, Graph, GraphDigest, Orientation};
use crate::recognition::search::{cover, orient, Budget, PartClass};
use crate::recognition::{check_semi_transitive, wr_decide_with, Certificate};

/// Limits for [`mu_exact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuConfig {
    /// Total search nodes across recognition and cover search; `None` is unlimited.
    pub budget: Option<u64>,
    /// Node cap for each single-edge test of the greedy upper bound.
    pub probe_budget: u64,
}

impl Default for MuConfig {
    fn default() -> Self {
        MuConfig { budget: Some(2_000_000), probe_budget: 2_000 }
    }
}

#[derive(Clone, Debug)]
pub struct MuResult {
    /// Number of parts in the reported cover.
    pub value: usize,
    /// True when no cover with fewer parts exists.
    pub exact: bool,
    /// Largest value proven to be a lower bound.
    pub lower_bound: usize,
    pub decomposition: Decomposition,
    /// Non-representable induced subgraph witnessing `lower_bound >= 2`.
    pub lower_witness: Option<Certificate>,
}

impl MuResult {
    pub fn parts(&self) -> &[Part] {
        &self.decomposition.parts
    }
}

/// Exact multi-word-representation number by iterative deepening over covers.
///
/// Parts are spanning subgraphs and may share edges. When the budget runs out
/// after some cover is known, the best cover is returned with `exact = false`;
/// when no cover is known at all the result is [`Error::Unknown`].
pub fn mu_exact(g: &Graph, config: &MuConfig) -> Result<MuResult> {
    let mut budget = Budget::new(config.budget);
    let first = match wr_decide_with(g, &mut budget) {
        Ok(d) => d,
        Err(Error::BudgetExhausted(_)) => return Err(Error::Unknown { lower: 1 }),
        Err(e) => return Err(e),
    };
    if first.representable {
        let part = Part { graph: g.clone(), certificate: first.certificate };
        return Ok(MuResult {
            value: 1,
            exact: true,
            lower_bound: 1,
            decomposition: Decomposition::new(g.clone(), vec![part], Provenance::Search),
            lower_witness: None,
        });
    }
    let witness = first.certificate;
    let greedy = greedy_cover(g, config.probe_budget, &mut budget);
    let mut lower = 2;
    let upper = greedy.as_ref().map(|parts| parts.len());
    let mut found: Option<Vec<Part>> = None;
    while upper.is_none_or(|u| lower < u) {
        match cover(g, lower, PartClass::SemiTransitive, true, &mut budget) {
            Ok(Some(arcs)) => {
                found = Some(arcs.iter().map(|a| part_from_arcs(g, a)).collect::<Result<_>>()?);
                break;
            }
            Ok(None) => lower += 1,
            Err(Error::BudgetExhausted(_)) => break,
            Err(e) => return Err(e),
        }
    }
    let parts = match (found, greedy) {
        (Some(parts), _) => parts,
        (None, Some(parts)) => parts,
        (None, None) => return Err(Error::Unknown { lower }),
    };
    let value = parts.len();
    Ok(MuResult {
        value,
        exact: value == lower,
        lower_bound: lower,
        decomposition: Decomposition::new(g.clone(), parts, Provenance::Search),
        lower_witness: Some(witness),
    })
}

fn part_from_arcs(g: &Graph, arcs: &[(usize, usize)]) -> Result<Part> {
    let edges: Vec<_> = arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let graph = g.spanning_subgraph(&edges)?;
    let o = Orientation::new(graph.clone(), arcs)?;
    Ok(Part { graph, certificate: Certificate::SemiTransitive(o) })
}

/// Upper bound: fill parts one at a time, keeping an edge whenever the part stays
/// representable. Edge tests that exceed their node cap count as failures, and
/// once the shared budget is spent only orientation extensions are tried.
fn greedy_cover(g: &Graph, probe_budget: u64, budget: &mut Budget) -> Option<Vec<Part>> {
    let mut memo: HashMap<GraphDigest, Option<Vec<(usize, usize)>>> = HashMap::new();
    let mut uncovered = g.edges();
    let mut parts = Vec::new();
    while !uncovered.is_empty() {
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        let mut rest = Vec::new();
        for &e in &uncovered {
            chosen.push(e);
            let trial = g.spanning_subgraph(&chosen).ok()?;
            let key = canonical_hash(&trial);
            let extended = [e, (e.1, e.0)].into_iter().find_map(|d| {
                let mut a = arcs.clone();
                a.push(d);
                let o = Orientation::new(trial.clone(), &a).ok()?;
                check_semi_transitive(&o).then_some(a)
            });
            let result = match (extended, memo.get(&key)) {
                (Some(a), _) => Some(a),
                (None, Some(r)) => r.clone(),
                (None, None) => match budget.remaining() {
                    // Out of budget: only the polynomial extension is tried from here on.
                    Some(0) => None,
                    remaining => {
                        let cap = remaining.map_or(probe_budget, |r| r.min(probe_budget));
                        let mut probe = Budget::new(Some(cap));
                        let r = orient(&trial, PartClass::SemiTransitive, &mut probe).ok().flatten();
                        let _ = budget.charge(probe.used().min(cap));
                        memo.insert(key, r.clone());
                        r
                    }
                },
            };
            match result {
                Some(a) => arcs = a,
                None => {
                    chosen.pop();
                    rest.push(e);
                }
            }
        }
        if chosen.is_empty() {
            return None;
        }
        parts.push(part_from_arcs(g, &arcs).ok()?);
        uncovered = rest;
    }
    Some(parts)
}

/// True iff `d` is a valid cover of `g` by certified parts.
pub fn mu_verify(g: &Graph, d: &Decomposition) -> bool {
    mu_verify_detailed(g, d).is_ok()
}

/// Like [`mu_verify`], naming the first failing clause.
pub fn mu_verify_detailed(g: &Graph, d: &Decomposition) -> Result<()> {
    if d.host != *g {
        return Err(Error::Verification("decomposition is for a different host graph".into()));
    }
    for (i, part) in d.parts.iter().enumerate() {
        if part.graph.n() != g.n() {
            return Err(Error::Verification(format!(
                "part {i} has {} vertices, host has {}",
                part.graph.n(),
                g.n()
            )));
        }
        if let Some((u, v)) = part.graph.edges().into_iter().find(|&(u, v)| !g.has_edge(u, v)) {
            return Err(Error::Verification(format!("part {i} contains {u}-{v}, which is not a host edge")));
        }
        part.certificate
            .verify_representable(&part.graph)
            .map_err(|e| Error::Verification(format!("part {i}: {e}")))?;
    }
    for (u, v) in g.edges() {
        if !d.parts.iter().any(|p| p.graph.has_edge(u, v)) {
            return Err(Error::Verification(format!("host edge {u}-{v} is not covered by any part")));
        }
    }
    Ok(())
}
