//! Simple undirected graphs over dense vertex ids, vertex sets, orientations
//! and the supervertex bookkeeping of lexicographic products.

use std::fmt;
use std::ops::Range;

use fixedbitset::FixedBitSet;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n` with bitset adjacency rows.
///
/// Graphs are values: every operation that changes structure returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Cycle `0-1-...-(n-1)-0`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for u in 0..n {
                g.insert_edge(u, (u + 1) % n);
            }
        } else if n == 2 {
            g.insert_edge(0, 1);
        }
        g
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.insert_edge(u - 1, u);
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.insert_edge(0, v);
        }
        g
    }

    /// Wheel `W_k`: hub 0 joined to the rim cycle `1..=k`.
    pub fn wheel(k: usize) -> Self {
        let mut g = Graph::empty(k + 1);
        for i in 0..k {
            g.insert_edge(0, i + 1);
            g.insert_edge(i + 1, (i + 1) % k + 1);
        }
        g
    }

    /// The 8-vertex graph with no 7-vertex word-representable induced subgraph,
    /// relabelled from 1-based to 0-based ids.
    pub fn eight_vertex_extremal() -> Self {
        const EDGES: [(usize, usize); 18] = [
            (1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
            (2, 3), (2, 6), (2, 7),
            (3, 4), (3, 7), (3, 8),
            (4, 5), (4, 8),
            (5, 6), (5, 8),
            (6, 7), (6, 8),
            (7, 8),
        ];
        let edges: Vec<_> = EDGES.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        Graph::from_edges(8, &edges).expect("fixture edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn has_edges(&self) -> bool {
        self.adj.iter().any(|r| !r.is_clear())
    }

    /// True when every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a.is_subset(b))
    }

    /// Spanning subgraph with the given edge list; each edge must belong to `self`.
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(self.n);
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Edge union of two graphs on the same vertex set.
    pub fn edge_union(&self, other: &Graph) -> Result<Graph> {
        self.same_order(other)?;
        let mut g = self.clone();
        for (a, b) in g.adj.iter_mut().zip(&other.adj) {
            a.union_with(b);
        }
        Ok(g)
    }

    /// Edges of `self` that are not edges of `other`.
    pub fn edge_difference(&self, other: &Graph) -> Result<Graph> {
        self.same_order(other)?;
        let mut g = self.clone();
        for (a, b) in g.adj.iter_mut().zip(&other.adj) {
            a.difference_with(b);
        }
        Ok(g)
    }

    fn same_order(&self, other: &Graph) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "graphs have different orders ({} and {})",
                self.n, other.n
            )))
        }
    }

    /// Induced subgraph on all vertices except `v`, relabelled in order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut keep = VertexSet::full(self.n);
        keep.remove(v);
        induced_subgraph(self, &keep)
    }

    /// Adds a new vertex `n` adjacent to every existing vertex.
    pub fn with_apex(&self) -> Graph {
        let n = self.n + 1;
        let mut adj: Vec<FixedBitSet> = self.adj.clone();
        for row in adj.iter_mut() {
            row.grow(n);
            row.insert(self.n);
        }
        let mut apex = FixedBitSet::with_capacity(n);
        apex.insert_range(..self.n);
        adj.push(apex);
        Graph { n, adj }
    }

    /// Vertices with at least one incident edge.
    pub fn support(&self) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        for v in 0..self.n {
            if !self.adj[v].is_clear() {
                s.insert(v);
            }
        }
        s
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.adj[u].ones() {
                    if !seen.put(v) {
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A set of vertex ids of some host graph on `universe` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_range(universe: usize, range: Range<usize>) -> Result<Self> {
        Self::from_members(universe, range)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut s = VertexSet::empty(universe);
        for v in members {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            s.bits.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    /// Members in increasing order.
    pub fn members(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn as_bits(&self) -> &FixedBitSet {
        &self.bits
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// The induced subgraph on `s`, relabelled `0..|s|` in increasing id order.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Graph> {
    let members = s.members();
    if let Some(&bad) = members.iter().find(|&&v| v >= g.n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n: g.n });
    }
    Ok(induced_on(g, &members))
}

/// Induced subgraph on an increasing list of valid vertex ids.
pub(crate) fn induced_on(g: &Graph, members: &[usize]) -> Graph {
    let k = members.len();
    let mut h = Graph::empty(k);
    for (i, &u) in members.iter().enumerate() {
        for (j, &v) in members.iter().enumerate().skip(i + 1) {
            if g.adj[u].contains(v) {
                h.insert_edge(i, j);
            }
        }
    }
    h
}

/// A graph together with an injective map of its vertices into host ids.
#[derive(Clone, Debug)]
pub struct MappedGraph {
    pub graph: Graph,
    pub map: Vec<usize>,
}

/// Result of [`graph_union`]: the union graph and the host id of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphUnion {
    pub graph: Graph,
    pub ids: Vec<usize>,
}

/// Union over vertex and edge sets of graphs mapped into a common id range.
///
/// The union's vertices are the mapped ids in increasing order, relabelled densely.
pub fn graph_union(parts: &[MappedGraph]) -> Result<GraphUnion> {
    let mut ids = Vec::new();
    for p in parts {
        if p.map.len() != p.graph.n() {
            return Err(Error::Invalid(format!(
                "vertex map has {} entries for a graph on {} vertices",
                p.map.len(),
                p.graph.n()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for &h in &p.map {
            if !seen.insert(h) {
                return Err(Error::NonInjective(h));
            }
        }
        ids.extend_from_slice(&p.map);
    }
    ids.sort_unstable();
    ids.dedup();
    let index = |h: usize| ids.binary_search(&h).expect("id collected above");
    let mut g = Graph::empty(ids.len());
    for p in parts {
        for (u, v) in p.graph.edges() {
            g.insert_edge(index(p.map[u]), index(p.map[v]));
        }
    }
    Ok(GraphUnion { graph: g, ids })
}

pub fn is_dominating_vertex(g: &Graph, x: usize) -> Result<bool> {
    g.check_vertex(x)?;
    Ok(g.degree(x) + 1 == g.n())
}

/// Label-sensitive digest of a graph: equal graphs give equal digests.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphDigest(pub [u8; 32]);

impl fmt::Debug for GraphDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0[..8] {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for GraphDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

pub fn canonical_hash(g: &Graph) -> GraphDigest {
    let mut hasher = Sha256::new();
    hasher.update((g.n as u64).to_le_bytes());
    let mut byte = 0u8;
    let mut filled = 0;
    for v in 1..g.n {
        for u in 0..v {
            byte = (byte << 1) | g.adj[u].contains(v) as u8;
            filled += 1;
            if filled == 8 {
                hasher.update([byte]);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        hasher.update([byte << (8 - filled)]);
    }
    GraphDigest(hasher.finalize().into())
}

/// A direction for every edge of a host graph, stored as out-neighbour rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    host: Graph,
    out: Vec<FixedBitSet>,
}

impl Orientation {
    /// Orientation from a list of arcs `(from, to)`; every host edge must be
    /// directed exactly once and every arc must be a host edge.
    pub fn new(host: Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let n = host.n();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in arcs {
            if !host.has_edge(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
            if out[u].contains(v) || out[v].contains(u) {
                return Err(Error::DuplicateArc(u.min(v), u.max(v)));
            }
            out[u].insert(v);
        }
        let o = Orientation { host, out };
        o.check_complete()?;
        Ok(o)
    }

    /// Orientation from out-neighbour rows, validated against the host.
    pub fn from_out_rows(host: Graph, mut out: Vec<FixedBitSet>) -> Result<Self> {
        let n = host.n();
        if out.len() != n {
            return Err(Error::Invalid(format!(
                "{} out-rows for a host on {n} vertices",
                out.len()
            )));
        }
        for (u, row) in out.iter_mut().enumerate() {
            row.grow(n);
            if let Some(v) = row.difference(host.neighbors(u)).next() {
                return Err(Error::NotAnEdge(u, v));
            }
        }
        for u in 0..n {
            if let Some(v) = out[u].ones().find(|&v| out[v].contains(u)) {
                return Err(Error::DuplicateArc(u.min(v), u.max(v)));
            }
        }
        let o = Orientation { host, out };
        o.check_complete()?;
        Ok(o)
    }

    /// Orientation pointing every edge from the smaller to the larger key.
    pub fn by_key<K: Ord>(host: Graph, key: impl Fn(usize) -> K) -> Self {
        let n = host.n();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in host.edges() {
            if (key(u), u) < (key(v), v) {
                out[u].insert(v);
            } else {
                out[v].insert(u);
            }
        }
        Orientation { host, out }
    }

    fn check_complete(&self) -> Result<()> {
        for (u, v) in self.host.edges() {
            if !self.out[u].contains(v) && !self.out[v].contains(u) {
                return Err(Error::MissingArc(u, v));
            }
        }
        Ok(())
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out[u].contains(v)
    }

    #[inline]
    pub fn out_neighbors(&self, u: usize) -> &FixedBitSet {
        &self.out[u]
    }

    pub fn out_rows(&self) -> &[FixedBitSet] {
        &self.out
    }

    /// All arcs `(from, to)` sorted lexicographically.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::with_capacity(self.host.edge_count());
        for u in 0..self.n() {
            arcs.extend(self.out[u].ones().map(|v| (u, v)));
        }
        arcs
    }

    pub fn reversed(&self) -> Orientation {
        let n = self.n();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in self.arcs() {
            out[v].insert(u);
        }
        Orientation {
            host: self.host.clone(),
            out,
        }
    }

    /// Copy of this orientation with the arc on edge `{u, v}` reversed.
    pub fn with_flipped(&self, u: usize, v: usize) -> Result<Orientation> {
        if !self.host.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut o = self.clone();
        let (a, b) = if o.out[u].contains(v) { (u, v) } else { (v, u) };
        o.out[a].set(b, false);
        o.out[b].insert(a);
        Ok(o)
    }

    /// Restriction to the induced subgraph on `s`, relabelled like [`induced_subgraph`].
    pub fn restrict(&self, s: &VertexSet) -> Result<Orientation> {
        let members = s.members();
        let host = induced_subgraph(&self.host, s)?;
        let mut arcs = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if self.out[u].contains(v) {
                    arcs.push((i, j));
                }
            }
        }
        Orientation::new(host, &arcs)
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orientation(n={}, arcs={:?})", self.n(), self.arcs())
    }
}

/// Supervertex bookkeeping of a product `G1 ∘ G2`: vertex `(i, j)` has flat id
/// `i * inner_n + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LexStructure {
    pub outer_n: usize,
    pub inner_n: usize,
}

impl LexStructure {
    pub fn new(outer_n: usize, inner_n: usize) -> Self {
        LexStructure { outer_n, inner_n }
    }

    pub fn n(&self) -> usize {
        self.outer_n * self.inner_n
    }

    #[inline]
    pub fn flat(&self, outer: usize, inner: usize) -> usize {
        debug_assert!(outer < self.outer_n && inner < self.inner_n);
        outer * self.inner_n + inner
    }

    #[inline]
    pub fn split(&self, v: usize) -> (usize, usize) {
        (v / self.inner_n, v % self.inner_n)
    }

    /// Flat ids of supervertex `i`.
    pub fn supervertex(&self, i: usize) -> Range<usize> {
        i * self.inner_n..(i + 1) * self.inner_n
    }

    pub fn supervertex_set(&self, i: usize) -> VertexSet {
        VertexSet::from_range(self.n(), self.supervertex(i)).expect("supervertex lies in range")
    }
}
