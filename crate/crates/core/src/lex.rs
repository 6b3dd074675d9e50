//! Lexicographic products and powers, lexicographic maps, special subgraphs and
//! the uniform lifting of orientations through them.

use crate::decomposition::decompose_product_two;
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, LexStructure, Orientation, VertexSet};
use crate::recognition::{
    check_semi_transitive, check_transitive, comparability_decide, mu_verify, wr_decide, Certificate,
};

/// `G1 ∘ G2` with its supervertex structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexProduct {
    pub outer: Graph,
    pub inner: Graph,
    pub product: Graph,
    pub structure: LexStructure,
}

/// `(i, a) ~ (j, b)` iff `i ~ j` in the outer graph, or `i = j` and `a ~ b` in the inner graph.
pub fn lex_product(outer: &Graph, inner: &Graph) -> LexProduct {
    let s = LexStructure::new(outer.n(), inner.n());
    let mut h = Graph::empty(s.n());
    for i in 0..outer.n() {
        for (a, b) in inner.edges() {
            h.insert_edge(s.flat(i, a), s.flat(i, b));
        }
    }
    for (i, j) in outer.edges() {
        for a in 0..inner.n() {
            for b in 0..inner.n() {
                h.insert_edge(s.flat(i, a), s.flat(j, b));
            }
        }
    }
    LexProduct {
        outer: outer.clone(),
        inner: inner.clone(),
        product: h,
        structure: s,
    }
}

impl LexProduct {
    /// Graph induced by supervertex `i`; always equal to the inner factor.
    pub fn supervertex_graph(&self, i: usize) -> Result<Graph> {
        self.outer.check_vertex(i)?;
        induced_subgraph(&self.product, &self.structure.supervertex_set(i))
    }

    /// One vertex per supervertex: `choice[i]` is the inner index picked in `V_i`.
    pub fn one_per_supervertex(&self, choice: &[usize]) -> Result<VertexSet> {
        if choice.len() != self.outer.n() {
            return Err(Error::Invalid(format!(
                "{} choices for {} supervertices",
                choice.len(),
                self.outer.n()
            )));
        }
        let s = self.structure;
        VertexSet::from_members(
            s.n(),
            choice.iter().enumerate().map(|(i, &a)| {
                if a < s.inner_n {
                    Ok(s.flat(i, a))
                } else {
                    Err(Error::VertexOutOfRange { vertex: a, n: s.inner_n })
                }
            }).collect::<Result<Vec<_>>>()?,
        )
    }

    /// Lifts a vertex set of the outer graph to the product, taking inner vertex 0
    /// of each chosen supervertex; the induced subgraph is a copy of the outer one.
    pub fn outer_copy(&self, outer_set: &VertexSet) -> Result<VertexSet> {
        VertexSet::from_members(self.structure.n(), outer_set.iter().map(|i| self.structure.flat(i, 0)))
    }

    /// Supervertex `V_i` restricted to `inner_set`, plus inner vertex 0 of `V_j`.
    ///
    /// For an outer edge `i ~ j` the extra vertex dominates the rest, so when
    /// `inner_set` induces a non-comparability graph the result is not word-representable.
    pub fn dominated_copy(&self, i: usize, j: usize, inner_set: &VertexSet) -> Result<VertexSet> {
        if !self.outer.has_edge(i, j) {
            return Err(Error::NotAnEdge(i, j));
        }
        let s = self.structure;
        let mut members: Vec<usize> = inner_set.iter().map(|a| s.flat(i, a)).collect();
        members.push(s.flat(j, 0));
        VertexSet::from_members(s.n(), members)
    }
}

/// `G^[k]` together with every intermediate power.
///
/// With the flat numbering, `G^[r]` seen as `G^[r-1] ∘ G` and as `G ∘ G^[r-1]`
/// is literally the same graph; both structures are exposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexPower {
    pub base: Graph,
    pub k: usize,
    /// `levels[r - 1]` is `G^[r]`.
    pub levels: Vec<Graph>,
}

pub fn lex_power(g: &Graph, k: usize) -> Result<LexPower> {
    if k == 0 {
        return Err(Error::precondition("lexicographic power needs k >= 1"));
    }
    let mut levels = vec![g.clone()];
    for _ in 1..k {
        let next = lex_product(levels.last().expect("non-empty"), g).product;
        levels.push(next);
    }
    Ok(LexPower { base: g.clone(), k, levels })
}

impl LexPower {
    pub fn graph(&self) -> &Graph {
        self.levels.last().expect("k >= 1")
    }

    /// `G^[r]`, for `1 <= r <= k`.
    pub fn level(&self, r: usize) -> Result<&Graph> {
        if r == 0 || r > self.k {
            return Err(Error::Invalid(format!("level {r} outside 1..={}", self.k)));
        }
        Ok(&self.levels[r - 1])
    }

    /// Structure of `G^[r] = G^[r-1] ∘ G`: supervertices are copies of `G`.
    pub fn left_structure(&self, r: usize) -> Result<LexStructure> {
        self.level(r)?;
        let n = self.base.n();
        Ok(LexStructure::new(n.pow(r as u32 - 1), n))
    }

    /// Structure of `G^[r] = G ∘ G^[r-1]`: supervertices are copies of `G^[r-1]`.
    pub fn right_structure(&self, r: usize) -> Result<LexStructure> {
        self.level(r)?;
        let n = self.base.n();
        Ok(LexStructure::new(n, n.pow(r as u32 - 1)))
    }

    /// `G^[r]` as the product `G ∘ G^[r-1]`, for `r >= 2`.
    pub fn right_product(&self, r: usize) -> Result<LexProduct> {
        if r < 2 {
            return Err(Error::Invalid("a product view needs level >= 2".into()));
        }
        let inner = self.level(r - 1)?.clone();
        let product = self.level(r)?.clone();
        Ok(LexProduct {
            outer: self.base.clone(),
            inner,
            product,
            structure: self.right_structure(r)?,
        })
    }

    /// `G^[r]` as the product `G^[r-1] ∘ G`, for `r >= 2`.
    pub fn left_product(&self, r: usize) -> Result<LexProduct> {
        if r < 2 {
            return Err(Error::Invalid("a product view needs level >= 2".into()));
        }
        Ok(LexProduct {
            outer: self.level(r - 1)?.clone(),
            inner: self.base.clone(),
            product: self.level(r)?.clone(),
            structure: self.left_structure(r)?,
        })
    }
}

/// Complete joins between supervertices along a selected outer subgraph, and
/// no edges inside supervertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexMapGraph {
    pub structure: LexStructure,
    /// Spanning subgraph of the outer graph whose edges are joined.
    pub selected: Graph,
    pub graph: Graph,
}

pub fn lex_map(p: &LexProduct, outer_edges: &[(usize, usize)]) -> Result<LexMapGraph> {
    for &(i, j) in outer_edges {
        if !p.outer.has_edge(i, j) {
            return Err(Error::NotAnEdge(i, j));
        }
    }
    let selected = p.outer.spanning_subgraph(outer_edges)?;
    Ok(lex_map_of(p.structure, &selected))
}

/// Lexicographic map of an arbitrary graph on `structure.outer_n` vertices.
pub(crate) fn lex_map_of(structure: LexStructure, selected: &Graph) -> LexMapGraph {
    debug_assert_eq!(selected.n(), structure.outer_n);
    let s = structure;
    let mut g = Graph::empty(s.n());
    for (i, j) in selected.edges() {
        for a in 0..s.inner_n {
            for b in 0..s.inner_n {
                g.insert_edge(s.flat(i, a), s.flat(j, b));
            }
        }
    }
    LexMapGraph { structure, selected: selected.clone(), graph: g }
}

fn lifted_arcs(s: LexStructure, o: &Orientation) -> Vec<(usize, usize)> {
    let m = s.inner_n;
    let mut arcs = Vec::with_capacity(o.host().edge_count() * m * m);
    for (i, j) in o.arcs() {
        for a in 0..m {
            for b in 0..m {
                arcs.push((s.flat(i, a), s.flat(j, b)));
            }
        }
    }
    arcs
}

fn check_outer_host(m: &LexMapGraph, o: &Orientation) -> Result<()> {
    if *o.host() != m.selected {
        return Err(Error::precondition("orientation is not on the selected outer subgraph"));
    }
    Ok(())
}

/// Directs every edge between `V_i` and `V_j` the way `o` directs `i - j`.
pub fn lift_semi_transitive(m: &LexMapGraph, o: &Orientation) -> Result<Orientation> {
    check_outer_host(m, o)?;
    if !check_semi_transitive(o) {
        return Err(Error::precondition("outer orientation is not semi-transitive"));
    }
    Orientation::new(m.graph.clone(), &lifted_arcs(m.structure, o))
}

/// Uniform lift of a transitive orientation; the result is transitive.
pub fn lift_transitive(m: &LexMapGraph, o: &Orientation) -> Result<Orientation> {
    check_outer_host(m, o)?;
    if !check_transitive(o) {
        return Err(Error::precondition("outer orientation is not transitive"));
    }
    Orientation::new(m.graph.clone(), &lifted_arcs(m.structure, o))
}

/// A lexicographic map of a word-representable outer subgraph with each
/// supervertex filled by a comparability graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSubgraph {
    pub map: LexMapGraph,
    /// `fills[i]` lives on the inner vertex ids of supervertex `i`.
    pub fills: Vec<Graph>,
    pub graph: Graph,
}

/// Builds a special subgraph, deciding the class of the outer subgraph and of
/// every fill. Fills must be subgraphs of `inner` when one is given.
pub fn special_subgraph(m: &LexMapGraph, fills: &[Graph], inner: Option<&Graph>) -> Result<SpecialSubgraph> {
    let s = SpecialSubgraph::assemble(m, fills)?;
    if let Some(inner) = inner {
        if let Some(i) = fills.iter().position(|f| !f.is_subgraph_of(inner)) {
            return Err(Error::precondition(format!("fill {i} is not a subgraph of the inner graph")));
        }
    }
    if let Some(i) = fills.iter().position(|f| !comparability_decide(f).representable) {
        return Err(Error::precondition(format!("fill {i} is not a comparability graph")));
    }
    if !wr_decide(&m.selected).representable {
        return Err(Error::precondition("selected outer subgraph is not word-representable"));
    }
    Ok(s)
}

impl SpecialSubgraph {
    /// Composite graph without class checks; [`orient_special`] checks certificates.
    pub fn assemble(m: &LexMapGraph, fills: &[Graph]) -> Result<SpecialSubgraph> {
        let s = m.structure;
        if fills.len() != s.outer_n {
            return Err(Error::Invalid(format!("{} fills for {} supervertices", fills.len(), s.outer_n)));
        }
        let mut g = m.graph.clone();
        for (i, f) in fills.iter().enumerate() {
            if f.n() != s.inner_n {
                return Err(Error::Invalid(format!(
                    "fill {i} has {} vertices, supervertices have {}",
                    f.n(),
                    s.inner_n
                )));
            }
            for (a, b) in f.edges() {
                g.insert_edge(s.flat(i, a), s.flat(i, b));
            }
        }
        Ok(SpecialSubgraph { map: m.clone(), fills: fills.to_vec(), graph: g })
    }
}

/// Red edges follow the lifted outer orientation, green edges inside each
/// supervertex follow that supervertex's transitive orientation.
pub fn orient_special(s: &SpecialSubgraph, red: &Orientation, greens: &[Orientation]) -> Result<Orientation> {
    check_outer_host(&s.map, red)?;
    if !check_semi_transitive(red) {
        return Err(Error::precondition("red orientation is not semi-transitive"));
    }
    if greens.len() != s.fills.len() {
        return Err(Error::precondition(format!("{} green orientations for {} fills", greens.len(), s.fills.len())));
    }
    let st = s.map.structure;
    let mut arcs = lifted_arcs(st, red);
    for (i, (o, f)) in greens.iter().zip(&s.fills).enumerate() {
        if o.host() != f {
            return Err(Error::precondition(format!("green orientation {i} is not on its fill")));
        }
        if !check_transitive(o) {
            return Err(Error::precondition(format!("green orientation {i} is not transitive")));
        }
        arcs.extend(o.arcs().into_iter().map(|(a, b)| (st.flat(i, a), st.flat(i, b))));
    }
    Orientation::new(s.graph.clone(), &arcs)
}

/// How [`product_wr_characterize`] confirmed its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confirmation {
    /// Recognizers were run on the product itself.
    Direct,
    /// Only certificates built from the factors were checked.
    Structural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductReport {
    pub h_wr: bool,
    pub h_comp: bool,
    pub mu_h: usize,
    pub confirmation: Confirmation,
}

/// Largest product checked by running the recognizers on it directly.
pub const DIRECT_CHECK_LIMIT: usize = 12;

/// Representability class of `G1 ∘ G2` for word-representable factors, where
/// `G1` has at least one edge.
///
/// The product is word-representable iff `G2` is a comparability graph, a
/// comparability graph iff both factors are, and otherwise the union of two
/// word-representable graphs. Every claim is confirmed before returning.
pub fn product_wr_characterize(g1: &Graph, g2: &Graph) -> Result<ProductReport> {
    if !g1.has_edges() {
        return Err(Error::precondition("the outer graph must have an edge"));
    }
    let d1 = wr_decide(g1);
    if !d1.representable {
        return Err(Error::precondition("the outer graph is not word-representable"));
    }
    if !wr_decide(g2).representable {
        return Err(Error::precondition("the inner graph is not word-representable"));
    }
    let c1 = comparability_decide(g1);
    let c2 = comparability_decide(g2);
    let h_wr = c2.representable;
    let h_comp = h_wr && c1.representable;
    let mu_h = if h_wr { 1 } else { 2 };

    let p = lex_product(g1, g2);
    let mismatch = |what: &str| Error::Verification(format!("{what} disagrees with the factor-based prediction"));
    let confirmation = if p.product.n() <= DIRECT_CHECK_LIMIT {
        if wr_decide(&p.product).representable != h_wr {
            return Err(mismatch("word-representability of the product"));
        }
        if comparability_decide(&p.product).representable != h_comp {
            return Err(mismatch("comparability of the product"));
        }
        Confirmation::Direct
    } else {
        Confirmation::Structural
    };

    let Certificate::SemiTransitive(red) = d1.certificate else { unreachable!("representable outer graph") };
    if h_wr {
        // The whole product is the special subgraph with full outer graph and full fills.
        let map = lex_map_of(p.structure, g1);
        let special = SpecialSubgraph::assemble(&map, &vec![g2.clone(); g1.n()])?;
        let Certificate::Transitive(green) = c2.certificate else { unreachable!("comparability inner graph") };
        let greens = vec![green; g1.n()];
        let o = orient_special(&special, &red, &greens)?;
        if special.graph != p.product || !check_semi_transitive(&o) {
            return Err(mismatch("the product orientation"));
        }
        match c1.certificate {
            Certificate::Transitive(t) => {
                if !check_transitive(&orient_special(&special, &t, &greens)?) {
                    return Err(mismatch("the transitive product orientation"));
                }
            }
            Certificate::Witness(w) => {
                let copy = induced_subgraph(&p.product, &p.outer_copy(&w)?)?;
                if comparability_decide(&copy).representable {
                    return Err(mismatch("the copied outer witness"));
                }
            }
            _ => unreachable!("comparability decisions carry orientations or witnesses"),
        }
    } else {
        let Certificate::Witness(w2) = c2.certificate else { unreachable!("non-comparability inner graph") };
        let (i, j) = g1.edges()[0];
        let witness = induced_subgraph(&p.product, &p.dominated_copy(i, j, &w2)?)?;
        if wr_decide(&witness).representable {
            return Err(mismatch("the dominated-copy witness"));
        }
        let d = decompose_product_two(&p)?;
        if d.parts.len() != 2 || !mu_verify(&p.product, &d) {
            return Err(mismatch("the two-part cover"));
        }
    }
    Ok(ProductReport { h_wr, h_comp, mu_h, confirmation })
}
