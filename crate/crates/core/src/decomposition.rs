//! Certified covers of lexicographic products and powers by word-representable
//! or comparability parts.
//!
//! Edges of a product split into *red* edges, joining distinct supervertices,
//! and *green* edges, lying inside a supervertex. Each construction below
//! covers the red edges by lexicographic maps of representable outer parts and
//! the green edges by copies of inner parts, and carries an orientation
//! certificate for every part.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, LexStructure, Orientation, VertexSet};
use crate::lex::{lex_map_of, lex_power, orient_special, LexProduct, SpecialSubgraph};
use crate::recognition::search::{cover, Budget, PartClass};
use crate::recognition::{
    check_semi_transitive, check_transitive, comparability_decide, is_minimal_non_wr, mu_verify, mu_verify_detailed,
    wr_decide, Certificate,
};

/// A spanning subgraph of a host together with a representability certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub graph: Graph,
    pub certificate: Certificate,
}

/// Which construction produced a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Exhaustive or greedy cover search.
    Search,
    /// Supplied from outside, e.g. read from a document.
    Given,
    /// Lexicographic map of the outer graph plus disjoint copies of the inner graph.
    ProductTwo,
    /// Recursive cover of a power of a non-comparability graph, one part per level.
    Power,
    /// Two transitive parts covering a power, from a split into two comparability graphs.
    PowerComparability,
    /// Lexicographic maps of the outer parts plus copies of the inner parts.
    ProductGeneral,
    /// Outer parts each filled with one comparability part of the inner graph.
    ProductTight,
    /// Three edge-disjoint parts for a product of two minimal non-representable graphs.
    MinimalProduct,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Search => "search",
            Provenance::Given => "given",
            Provenance::ProductTwo => "product-two",
            Provenance::Power => "power",
            Provenance::PowerComparability => "power-comparability",
            Provenance::ProductGeneral => "product-general",
            Provenance::ProductTight => "product-tight",
            Provenance::MinimalProduct => "minimal-product",
        }
    }

    pub fn parse(s: &str) -> Option<Provenance> {
        [
            Provenance::Search,
            Provenance::Given,
            Provenance::ProductTwo,
            Provenance::Power,
            Provenance::PowerComparability,
            Provenance::ProductGeneral,
            Provenance::ProductTight,
            Provenance::MinimalProduct,
        ]
        .into_iter()
        .find(|p| p.as_str() == s)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parts whose edge sets union to the host's edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub host: Graph,
    pub parts: Vec<Part>,
    pub provenance: Provenance,
}

impl Decomposition {
    pub fn new(host: Graph, parts: Vec<Part>, provenance: Provenance) -> Self {
        Decomposition { host, parts, provenance }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn verify(&self) -> Result<()> {
        mu_verify_detailed(&self.host, self)
    }

    pub fn pairwise_edge_disjoint(&self) -> bool {
        self.parts.iter().enumerate().all(|(i, p)| {
            self.parts[i + 1..]
                .iter()
                .all(|q| p.graph.edges().iter().all(|&(u, v)| !q.graph.has_edge(u, v)))
        })
    }
}

/// Orientation certifying a part, with whether it is transitive.
fn orientation_of(part: &Part) -> Result<(Orientation, bool)> {
    match &part.certificate {
        Certificate::Transitive(o) if check_transitive(o) => Ok((o.clone(), true)),
        Certificate::SemiTransitive(o) if check_semi_transitive(o) => {
            let t = check_transitive(o);
            Ok((o.clone(), t))
        }
        Certificate::Word(w) => {
            if let Ok(o) = w.first_occurrence_orientation(&part.graph) {
                if check_semi_transitive(&o) {
                    let t = check_transitive(&o);
                    return Ok((o, t));
                }
            }
            match wr_decide(&part.graph).certificate {
                Certificate::SemiTransitive(o) => Ok((o, false)),
                _ => Err(Error::precondition("a word-certified part is not representable")),
            }
        }
        _ => Err(Error::precondition("part certificate does not verify")),
    }
}

fn semi_transitive_orientation(g: &Graph, what: &str) -> Result<Orientation> {
    match wr_decide(g).certificate {
        Certificate::SemiTransitive(o) => Ok(o),
        _ => Err(Error::precondition(format!("{what} is not word-representable"))),
    }
}

fn transitive_orientation(g: &Graph, what: &str) -> Result<Orientation> {
    match comparability_decide(g).certificate {
        Certificate::Transitive(o) => Ok(o),
        _ => Err(Error::precondition(format!("{what} is not a comparability graph"))),
    }
}

/// Collects arcs on host ids into a certified spanning subgraph of an `n`-vertex host.
fn part_from_arcs(n: usize, arcs: &[(usize, usize)], transitive: bool) -> Result<Part> {
    let edges: Vec<_> = arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let graph = Graph::from_edges(n, &edges)?;
    let o = Orientation::new(graph.clone(), arcs)?;
    let certificate = if transitive {
        Certificate::Transitive(o)
    } else {
        Certificate::SemiTransitive(o)
    };
    Ok(Part { graph, certificate })
}

/// Copies of an inner orientation placed inside every supervertex. Copies are
/// vertex-disjoint, so semi-transitivity and transitivity carry over.
fn replicated_arcs(s: LexStructure, o: &Orientation) -> Vec<(usize, usize)> {
    let arcs = o.arcs();
    (0..s.outer_n)
        .flat_map(|i| arcs.iter().map(move |&(a, b)| (s.flat(i, a), s.flat(i, b))))
        .collect()
}

fn lifted_part(s: LexStructure, o: &Orientation, transitive: bool) -> Result<Part> {
    let map = lex_map_of(s, o.host());
    let special = SpecialSubgraph::assemble(&map, &vec![Graph::empty(s.inner_n); s.outer_n])?;
    let greens = vec![Orientation::new(Graph::empty(s.inner_n), &[])?; s.outer_n];
    let lifted = orient_special(&special, o, &greens)?;
    part_from_arcs(s.n(), &lifted.arcs(), transitive)
}

fn finish(host: &Graph, parts: Vec<Part>, provenance: Provenance) -> Result<Decomposition> {
    let d = Decomposition::new(host.clone(), parts, provenance);
    d.verify()?;
    Ok(d)
}

/// Two parts: the lexicographic map of the outer graph, and disjoint copies of
/// the inner graph inside the supervertices.
pub fn decompose_product_two(p: &LexProduct) -> Result<Decomposition> {
    if !p.outer.has_edges() {
        return Err(Error::precondition("the outer graph must have an edge"));
    }
    let red = semi_transitive_orientation(&p.outer, "the outer graph")?;
    let green = semi_transitive_orientation(&p.inner, "the inner graph")?;
    let s = p.structure;
    let parts = vec![
        lifted_part(s, &red, false)?,
        part_from_arcs(s.n(), &replicated_arcs(s, &green), false)?,
    ];
    finish(&p.product, parts, Provenance::ProductTwo)
}

/// `k` parts covering `G^[k]` for a word-representable, non-comparability `G`.
///
/// Viewing `G^[r+1]` as `G ∘ G^[r]`, the red edges form one lexicographic map of
/// `G` and the green edges are copies of `G^[r]`, covered by the `r` parts of the
/// previous level placed in every supervertex.
pub fn decompose_power_k(g: &Graph, k: usize) -> Result<Decomposition> {
    if k < 2 {
        return Err(Error::precondition("power decomposition needs k >= 2"));
    }
    let red = semi_transitive_orientation(g, "the base graph")?;
    if comparability_decide(g).representable {
        return Err(Error::precondition(
            "the base graph is a comparability graph, so its powers are word-representable: use one part",
        ));
    }
    let power = lex_power(g, k)?;
    let mut parts = vec![part_from_arcs(g.n(), &red.arcs(), false)?];
    for r in 2..=k {
        let s = power.right_structure(r)?;
        let mut next = vec![lifted_part(s, &red, false)?];
        for part in &parts {
            let (o, t) = orientation_of(part)?;
            next.push(part_from_arcs(s.n(), &replicated_arcs(s, &o), t)?);
        }
        parts = next;
    }
    finish(power.graph(), parts, Provenance::Power)
}

fn split_part(g: &Graph, edges: &[(usize, usize)]) -> Result<Graph> {
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::NotAnEdge(u, v));
    }
    g.spanning_subgraph(edges)
}

fn check_split_covers(g: &Graph, parts: &[Graph]) -> Result<()> {
    for (u, v) in g.edges() {
        if !parts.iter().any(|p| p.has_edge(u, v)) {
            return Err(Error::precondition(format!("edge {u}-{v} is in no part of the split")));
        }
    }
    Ok(())
}

/// Two transitive parts covering `G^[k]`, from `E(G) = A ∪ B` with both parts
/// comparability graphs.
///
/// Level by level, `C` grows as the lexicographic map of `A` with every
/// supervertex filled by the previous `C`, and likewise `D` from `B`.
pub fn decompose_power_two_comparability(
    g: &Graph,
    split: (&[(usize, usize)], &[(usize, usize)]),
    k: usize,
) -> Result<Decomposition> {
    if k < 2 {
        return Err(Error::precondition("power decomposition needs k >= 2"));
    }
    let a = split_part(g, split.0)?;
    let b = split_part(g, split.1)?;
    check_split_covers(g, &[a.clone(), b.clone()])?;
    let ta = transitive_orientation(&a, "the first split part")?;
    let tb = transitive_orientation(&b, "the second split part")?;
    if comparability_decide(g).representable {
        return Err(Error::precondition("the base graph is already a comparability graph"));
    }
    let power = lex_power(g, k)?;
    let (mut c, mut d) = (ta.clone(), tb.clone());
    for r in 2..=k {
        let s = power.right_structure(r)?;
        c = fill_level(s, &ta, &c)?;
        d = fill_level(s, &tb, &d)?;
    }
    let parts = vec![
        Part { graph: c.host().clone(), certificate: Certificate::Transitive(c) },
        Part { graph: d.host().clone(), certificate: Certificate::Transitive(d) },
    ];
    finish(power.graph(), parts, Provenance::PowerComparability)
}

/// Lexicographic map of `outer`'s host with every supervertex filled by `fill`'s host.
fn fill_level(s: LexStructure, outer: &Orientation, fill: &Orientation) -> Result<Orientation> {
    let map = lex_map_of(s, outer.host());
    let special = SpecialSubgraph::assemble(&map, &vec![fill.host().clone(); s.outer_n])?;
    orient_special(&special, outer, &vec![fill.clone(); s.outer_n])
}

/// `k1 + k2` parts: lexicographic maps of the parts of `d1` and copies of the
/// parts of `d2` in every supervertex.
pub fn decompose_product_general(p: &LexProduct, d1: &Decomposition, d2: &Decomposition) -> Result<Decomposition> {
    check_factor(&p.outer, d1, "outer")?;
    check_factor(&p.inner, d2, "inner")?;
    let s = p.structure;
    let mut parts = Vec::with_capacity(d1.len() + d2.len());
    for part in &d1.parts {
        let (o, t) = orientation_of(part)?;
        parts.push(lifted_part(s, &o, t)?);
    }
    for part in &d2.parts {
        let (o, t) = orientation_of(part)?;
        parts.push(part_from_arcs(s.n(), &replicated_arcs(s, &o), t)?);
    }
    finish(&p.product, parts, Provenance::ProductGeneral)
}

fn check_factor(g: &Graph, d: &Decomposition, what: &str) -> Result<()> {
    if !mu_verify(g, d) {
        return Err(Error::precondition(format!("the {what} decomposition does not verify on the {what} graph")));
    }
    Ok(())
}

/// `k1` parts: part `i` is the lexicographic map of the outer part `A_i` with a
/// copy of the comparability part `B_i` in every supervertex.
///
/// Needs at most `k1` comparability parts covering the inner graph; missing
/// ones are taken empty.
pub fn decompose_product_tight(
    p: &LexProduct,
    d1: &Decomposition,
    comp_split: &[Vec<(usize, usize)>],
) -> Result<Decomposition> {
    check_factor(&p.outer, d1, "outer")?;
    if comp_split.len() > d1.len() {
        return Err(Error::precondition(format!(
            "{} comparability parts but only {} outer parts",
            comp_split.len(),
            d1.len()
        )));
    }
    let mut fills = Vec::with_capacity(d1.len());
    for edges in comp_split {
        fills.push(split_part(&p.inner, edges)?);
    }
    check_split_covers(&p.inner, &fills)?;
    fills.resize(d1.len(), Graph::empty(p.inner.n()));
    let s = p.structure;
    let mut parts = Vec::with_capacity(d1.len());
    for (part, fill) in d1.parts.iter().zip(&fills) {
        let (red, t) = orientation_of(part)?;
        let green = transitive_orientation(fill, "a split part")?;
        let map = lex_map_of(s, &part.graph);
        let special = SpecialSubgraph::assemble(&map, &vec![fill.clone(); s.outer_n])?;
        let o = orient_special(&special, &red, &vec![green; s.outer_n])?;
        parts.push(part_from_arcs(s.n(), &o.arcs(), t)?);
    }
    finish(&p.product, parts, Provenance::ProductTight)
}

/// Three pairwise edge-disjoint parts covering `G1 ∘ G2` when both factors are
/// minimal non-word-representable.
///
/// With `V_r` the chosen supervertex, `d` the vertex deleted from it and
/// `roots[i]` the root of `V_i`:
/// * part 1: `G2 - d` inside `V_r`, plus the lexicographic map of `G1 - r` with
///   the star of `roots[i]` filled into each other `V_i`;
/// * part 2: the star of `d` inside `V_r`, plus `G2 - roots[i]` inside each other `V_i`;
/// * part 3: the lexicographic map of the star of `r` in `G1`.
///
/// `roots[r]` is ignored; `deleted` defaults to inner vertex 0.
pub fn decompose_min_nonwr_product(
    p: &LexProduct,
    r: usize,
    roots: &[usize],
    deleted: Option<usize>,
) -> Result<Decomposition> {
    if !is_minimal_non_wr(&p.outer) {
        return Err(Error::precondition("the outer graph is not minimal non-word-representable"));
    }
    if !is_minimal_non_wr(&p.inner) {
        return Err(Error::precondition("the inner graph is not minimal non-word-representable"));
    }
    let (g1, g2, s) = (&p.outer, &p.inner, p.structure);
    g1.check_vertex(r)?;
    if roots.len() != g1.n() {
        return Err(Error::precondition(format!("{} roots for {} supervertices", roots.len(), g1.n())));
    }
    for (i, &root) in roots.iter().enumerate() {
        if i != r {
            g2.check_vertex(root)?;
        }
    }
    let d = deleted.unwrap_or(0);
    g2.check_vertex(d)?;

    // Proper induced subgraphs of a minimal non-representable graph are representable.
    let minus = |v: usize| -> Result<(Orientation, Vec<usize>)> {
        let keep: Vec<usize> = (0..g2.n()).filter(|&x| x != v).collect();
        let sub = induced_subgraph(g2, &VertexSet::from_members(g2.n(), keep.iter().copied())?)?;
        Ok((semi_transitive_orientation(&sub, "a proper induced subgraph")?, keep))
    };
    let star_away = |v: usize| -> Vec<(usize, usize)> { g2.neighbors(v).ones().map(|x| (v, x)).collect() };

    let mut h1 = Vec::new();
    let (o, keep) = minus(d)?;
    h1.extend(o.arcs().into_iter().map(|(a, b)| (s.flat(r, keep[a]), s.flat(r, keep[b]))));
    let rest_edges: Vec<_> = g1.edges().into_iter().filter(|&(i, j)| i != r && j != r).collect();
    let rest = g1.spanning_subgraph(&rest_edges)?;
    let red = semi_transitive_orientation(&rest, "the outer graph minus the chosen vertex")?;
    let mut fills = Vec::with_capacity(g1.n());
    let mut greens = Vec::with_capacity(g1.n());
    for (i, &root) in roots.iter().enumerate() {
        let arcs = if i == r { Vec::new() } else { star_away(root) };
        let edges: Vec<_> = arcs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let fill = g2.spanning_subgraph(&edges)?;
        greens.push(Orientation::new(fill.clone(), &arcs)?);
        fills.push(fill);
    }
    let special = SpecialSubgraph::assemble(&lex_map_of(s, &rest), &fills)?;
    h1.extend(orient_special(&special, &red, &greens)?.arcs());

    let mut h2: Vec<(usize, usize)> = star_away(d).into_iter().map(|(a, b)| (s.flat(r, a), s.flat(r, b))).collect();
    for (i, &root) in roots.iter().enumerate() {
        if i == r {
            continue;
        }
        let (o, keep) = minus(root)?;
        h2.extend(o.arcs().into_iter().map(|(a, b)| (s.flat(i, keep[a]), s.flat(i, keep[b]))));
    }

    let star_r: Vec<_> = g1.neighbors(r).ones().map(|j| (r, j)).collect();
    let star_graph = g1.spanning_subgraph(&star_r.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect::<Vec<_>>())?;
    let star_o = Orientation::new(star_graph, &star_r)?;

    let parts = vec![
        part_from_arcs(s.n(), &h1, false)?,
        part_from_arcs(s.n(), &h2, false)?,
        lifted_part(s, &star_o, true)?,
    ];
    let dec = finish(&p.product, parts, Provenance::MinimalProduct)?;
    if !dec.pairwise_edge_disjoint() {
        return Err(Error::Verification("parts overlap".into()));
    }
    Ok(dec)
}

/// An induced non-representable subgraph of a product, if the factors force one:
/// a copy of a non-representable outer witness, a non-comparability inner
/// witness dominated by a neighbouring supervertex, or a copy of a
/// non-representable inner witness.
pub fn product_non_wr_witness(p: &LexProduct) -> Result<Option<Certificate>> {
    let witness = if let Certificate::Witness(w) = wr_decide(&p.outer).certificate {
        Some(p.outer_copy(&w)?)
    } else if let (Some((i, j)), Certificate::Witness(w)) =
        (p.outer.edges().first().copied(), comparability_decide(&p.inner).certificate)
    {
        Some(p.dominated_copy(i, j, &w)?)
    } else if let Certificate::Witness(w) = wr_decide(&p.inner).certificate {
        let s = p.structure;
        Some(VertexSet::from_members(s.n(), w.iter().map(|a| s.flat(0, a)))?)
    } else {
        None
    };
    match witness {
        Some(w) => {
            let c = Certificate::Witness(w);
            c.verify_non_representable(&p.product)?;
            Ok(Some(c))
        }
        None => Ok(None),
    }
}

/// Non-representable induced witness in `G^[k]`, `k >= 2`, viewing it as `G^[k-1] ∘ G`.
pub fn power_non_wr_witness(g: &Graph, k: usize) -> Result<Option<Certificate>> {
    let power = lex_power(g, k)?;
    product_non_wr_witness(&power.left_product(k)?)
}

/// Splits `E(g)` into `k` edge-disjoint comparability graphs by search.
///
/// Fails with [`Error::Unknown`] if the budget runs out and with
/// [`Error::Invalid`] if no split exists.
pub fn comparability_split(g: &Graph, k: usize, budget: Option<u64>) -> Result<Vec<Vec<(usize, usize)>>> {
    match cover(g, k, PartClass::Transitive, false, &mut Budget::new(budget)) {
        Ok(Some(parts)) => Ok(parts
            .into_iter()
            .map(|arcs| {
                let mut e: Vec<_> = arcs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
                e.sort_unstable();
                e
            })
            .collect()),
        Ok(None) => Err(Error::Invalid(format!("no split into {k} comparability graphs exists"))),
        Err(Error::BudgetExhausted(_)) => Err(Error::Unknown { lower: 1 }),
        Err(e) => Err(e),
    }
}
