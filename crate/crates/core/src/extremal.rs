//! Maximum representable sets, the minimum of their size over a family of
//! graphs, and the structural bound for lexicographic powers.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{induced_on, Graph, VertexSet};
use crate::lex::lex_power;
use crate::recognition::{wr_decide, Certificate};

/// `k`-subsets of `0..n` in colexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { next[i + 1] } else { self.n };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                self.current = Some(next);
                break;
            }
            i += 1;
        }
        Some(cur)
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A set of `size` vertices with a non-representable subset inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocker {
    pub set: VertexSet,
    /// Inclusion-minimal non-representable subset of `set`.
    pub witness: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaResult {
    pub value: usize,
    pub witness: VertexSet,
    /// Semi-transitive orientation of the subgraph induced by `witness`.
    pub certificate: Certificate,
    /// When requested and `value < n`: every `(value + 1)`-set with its obstruction.
    pub blockers: Option<Vec<Blocker>>,
}

/// Inclusion-minimal non-representable sets found so far. A candidate containing
/// one of them fails without another search.
struct FailedSets {
    sets: Vec<Vec<u64>>,
}

impl FailedSets {
    fn words(members: &[usize], n: usize) -> Vec<u64> {
        let mut w = vec![0u64; n.div_ceil(64).max(1)];
        for &v in members {
            w[v / 64] |= 1 << (v % 64);
        }
        w
    }

    fn covering(&self, cand: &[u64]) -> Option<&Vec<u64>> {
        self.sets.iter().find(|s| s.iter().zip(cand).all(|(a, b)| a & !b == 0))
    }
}

fn words_to_members(w: &[u64]) -> Vec<usize> {
    (0..w.len() * 64).filter(|&v| w[v / 64] >> (v % 64) & 1 == 1).collect()
}

/// Tests `members`; on failure records its minimal witness (in host ids).
fn test_set(g: &Graph, members: &[usize], failed: &mut FailedSets) -> Option<Certificate> {
    let cand = FailedSets::words(members, g.n());
    if failed.covering(&cand).is_some() {
        return None;
    }
    let d = wr_decide(&induced_on(g, members));
    match d.certificate {
        Certificate::Witness(w) => {
            let host: Vec<usize> = w.iter().map(|i| members[i]).collect();
            failed.sets.push(FailedSets::words(&host, g.n()));
            None
        }
        c => Some(c),
    }
}

/// Exact size of a maximum representable set.
///
/// Sizes are tried from `n` downwards; the first representable set found is the
/// witness. Non-representable witnesses seen on the way prune later candidates.
pub fn eta(g: &Graph) -> EtaResult {
    eta_with(g, false)
}

pub fn eta_with(g: &Graph, blockers: bool) -> EtaResult {
    let n = g.n();
    let mut failed = FailedSets { sets: Vec::new() };
    for size in (0..=n).rev() {
        for members in Combinations::new(n, size) {
            if let Some(certificate) = test_set(g, &members, &mut failed) {
                let witness = VertexSet::from_members(n, members).expect("members in range");
                let blockers = (blockers && size < n).then(|| collect_blockers(g, size + 1, &mut failed));
                return EtaResult { value: size, witness, certificate, blockers };
            }
        }
    }
    unreachable!("the empty set is representable")
}

fn collect_blockers(g: &Graph, size: usize, failed: &mut FailedSets) -> Vec<Blocker> {
    let n = g.n();
    Combinations::new(n, size)
        .map(|members| {
            let cand = FailedSets::words(&members, n);
            let w = match failed.covering(&cand) {
                Some(w) => w.clone(),
                None => {
                    let found = test_set(g, &members, failed);
                    assert!(found.is_none(), "a larger representable set exists");
                    failed.sets.last().expect("just recorded").clone()
                }
            };
            Blocker {
                set: VertexSet::from_members(n, members).expect("in range"),
                witness: VertexSet::from_members(n, words_to_members(&w)).expect("in range"),
            }
        })
        .collect()
}

/// True iff every `s`-subset induces a non-representable graph; vacuous for `s > n`.
pub fn verify_no_wr_subgraph(g: &Graph, s: usize) -> bool {
    let mut failed = FailedSets { sets: Vec::new() };
    Combinations::new(g.n(), s).all(|m| test_set(g, &m, &mut failed).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauResult {
    pub n: usize,
    pub value: usize,
    /// Index in the corpus of the first graph attaining the minimum.
    pub argmin: usize,
    pub graphs: usize,
}

/// Corpora of at least this many vertices are refused unless explicitly allowed.
pub const TAU_GUARD: usize = 8;

/// Minimum of `η` over the supplied `n`-vertex graphs.
///
/// Exhaustiveness of the corpus is the caller's responsibility.
pub fn tau_exhaustive(n: usize, corpus: &[Graph], allow_large: bool) -> Result<TauResult> {
    if n >= TAU_GUARD && !allow_large {
        return Err(Error::precondition(format!(
            "corpora on {n} >= {TAU_GUARD} vertices are out of the default budget"
        )));
    }
    if corpus.is_empty() {
        return Err(Error::precondition("empty corpus"));
    }
    if let Some(i) = corpus.iter().position(|g| g.n() != n) {
        return Err(Error::precondition(format!(
            "corpus graph {i} has {} vertices, expected {n}",
            corpus[i].n()
        )));
    }
    let values: Vec<usize> = corpus.par_iter().map(|g| eta(g).value).collect();
    let (argmin, &value) = values
        .iter()
        .enumerate()
        .min_by_key(|&(i, &v)| (v, i))
        .expect("non-empty corpus");
    Ok(TauResult { n, value, argmin, graphs: corpus.len() })
}

/// Largest order for which [`labeled_graphs`] generates every labelled graph.
pub const LABELED_LIMIT: usize = 5;

/// Every labelled graph on `n <= 5` vertices.
pub fn labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > LABELED_LIMIT {
        return Err(Error::precondition(format!(
            "labelled generation is limited to n <= {LABELED_LIMIT}; supply a corpus instead"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Ok((0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).expect("pairs are valid")
    }))
}

/// Settings for the sampled part of [`verify_power_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 50, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerBoundReport {
    pub k: usize,
    pub cap: usize,
    /// Certified upper bound `cap^k` on the size of a representable set of `G^[k]`.
    pub bound: u128,
    /// `η(G)` when `k = 1`.
    pub eta: Option<usize>,
    /// Supervertices confirmed to induce `G^[k-1]`.
    pub supervertices_checked: usize,
    /// Sets of `cap + 1` supervertices examined.
    pub combinations_checked: usize,
    /// One-per-supervertex selections found non-representable.
    pub samples_checked: usize,
    /// Slowest single recognition of a selection, in milliseconds.
    pub max_check_ms: f64,
}

/// Structural check that a representable set of `G^[k]` has at most `cap^k`
/// vertices, given that no `cap + 1` vertices of `G` induce a representable graph.
///
/// Viewing `G^[k]` as `G ∘ G^[k-1]`: every supervertex induces `G^[k-1]`, and
/// vertices taken from `cap + 1` distinct supervertices induce a subgraph of `G`
/// on those supervertices, so a representable set meets at most `cap`
/// supervertices and at most `cap^(k-1)` vertices in each.
pub fn verify_power_bound(g: &Graph, k: usize, cap: usize, cfg: SampleConfig) -> Result<PowerBoundReport> {
    if k == 0 {
        return Err(Error::precondition("k must be at least 1"));
    }
    if !verify_no_wr_subgraph(g, cap + 1) {
        return Err(Error::precondition(format!(
            "some {} vertices of the base graph induce a word-representable graph",
            cap + 1
        )));
    }
    let bound = (cap as u128).pow(k as u32);
    if k == 1 {
        let e = eta(g);
        if e.value > cap {
            return Err(Error::Verification(format!("η = {} exceeds the cap {cap}", e.value)));
        }
        return Ok(PowerBoundReport {
            k,
            cap,
            bound,
            eta: Some(e.value),
            supervertices_checked: 0,
            combinations_checked: 0,
            samples_checked: 0,
            max_check_ms: 0.0,
        });
    }
    let power = lex_power(g, k)?;
    let p = power.right_product(k)?;
    let s = p.structure;
    let previous = power.level(k - 1)?;
    for i in 0..s.outer_n {
        if p.supervertex_graph(i)? != *previous {
            return Err(Error::Verification(format!("supervertex {i} does not induce the previous power")));
        }
    }
    let combos: Vec<Vec<usize>> = Combinations::new(s.outer_n, cap + 1).collect();
    let outcomes: Vec<Result<(usize, f64)>> = combos
        .par_iter()
        .enumerate()
        .map(|(ci, combo)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(ci as u64);
            let projected = induced_on(g, combo);
            let mut slowest = 0.0f64;
            for _ in 0..cfg.samples {
                let members: Vec<usize> = combo.iter().map(|&i| s.flat(i, rng.random_range(0..s.inner_n))).collect();
                let sub = induced_on(&p.product, &members);
                if sub != projected {
                    return Err(Error::Verification(format!(
                        "selection {members:?} does not project onto supervertices {combo:?}"
                    )));
                }
                let start = Instant::now();
                let wr = wr_decide(&sub).representable;
                slowest = slowest.max(start.elapsed().as_secs_f64() * 1e3);
                if wr {
                    return Err(Error::Verification(format!("selection {members:?} is word-representable")));
                }
            }
            Ok((cfg.samples, slowest))
        })
        .collect();
    let mut samples_checked = 0;
    let mut max_check_ms = 0.0f64;
    for o in outcomes {
        let (count, slowest) = o?;
        samples_checked += count;
        max_check_ms = max_check_ms.max(slowest);
    }
    Ok(PowerBoundReport {
        k,
        cap,
        bound,
        eta: None,
        supervertices_checked: s.outer_n,
        combinations_checked: combos.len(),
        samples_checked,
        max_check_ms,
    })
}
