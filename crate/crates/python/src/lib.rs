//! Python bindings: graphs, recognizers, lexicographic products, covers and
//! certificate verification.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wordrep::decomposition::{decompose_min_nonwr_product, decompose_power_k, power_non_wr_witness, Decomposition};
use wordrep::document::{verify_document, CertificateDocument, VerifyLimits, VerifyStatus};
use wordrep::recognition::{Certificate, MuConfig, Word};
use wordrep::{extremal, formats, lex, recognition, Error, Orientation};

type Arcs = Vec<(usize, usize)>;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExhausted(_) | Error::Unknown { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// An undirected simple graph on vertices `0..n`.
#[pyclass(module = "wordrep", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Graph {
    inner: wordrep::Graph,
}

impl From<wordrep::Graph> for Graph {
    fn from(inner: wordrep::Graph) -> Self {
        Graph { inner }
    }
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Arcs) -> PyResult<Self> {
        Ok(wordrep::Graph::from_edges(n, &edges).map_err(py_err)?.into())
    }

    /// Decodes graph6 or sparse6.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        Ok(formats::parse_graph(s).map_err(py_err)?.into())
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        wordrep::Graph::complete(n).into()
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        wordrep::Graph::cycle(n).into()
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        wordrep::Graph::path(n).into()
    }

    /// Cycle on `k` rim vertices plus a hub, vertex 0.
    #[staticmethod]
    fn wheel(k: usize) -> Self {
        wordrep::Graph::wheel(k).into()
    }

    /// The 8-vertex, 18-edge graph with no representable 7-vertex induced subgraph.
    #[staticmethod]
    fn eight_vertex_extremal() -> Self {
        wordrep::Graph::eight_vertex_extremal().into()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Arcs {
        self.inner.edges()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn induced(&self, vertices: Vec<usize>) -> PyResult<Self> {
        let s = wordrep::VertexSet::from_members(self.inner.n(), vertices).map_err(py_err)?;
        Ok(wordrep::induced_subgraph(&self.inner, &s).map_err(py_err)?.into())
    }

    fn to_graph6(&self) -> String {
        formats::to_graph6(&self.inner)
    }

    fn to_sparse6(&self) -> String {
        formats::to_sparse6(&self.inner)
    }

    fn to_dot(&self) -> String {
        formats::to_dot(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, graph6={:?})", self.inner.n(), formats::to_graph6(&self.inner))
    }
}

/// Outcome of a recognizer: exactly one of `arcs`, `word` or `witness` is set.
#[pyclass(module = "wordrep", frozen, get_all)]
pub struct Decision {
    representable: bool,
    kind: &'static str,
    arcs: Option<Arcs>,
    word: Option<Vec<usize>>,
    witness: Option<Vec<usize>>,
}

impl Decision {
    fn from_core(d: recognition::Decision) -> Self {
        let kind = d.certificate.kind();
        let (arcs, word, witness) = match d.certificate {
            Certificate::SemiTransitive(o) | Certificate::Transitive(o) => (Some(o.arcs()), None, None),
            Certificate::Word(w) => (None, Some(w.letters().to_vec()), None),
            Certificate::Witness(w) => (None, None, Some(w.members())),
        };
        Decision { representable: d.representable, kind, arcs, word, witness }
    }
}

#[pymethods]
impl Decision {
    fn __bool__(&self) -> bool {
        self.representable
    }

    fn __repr__(&self) -> String {
        format!("Decision(representable={}, kind={:?})", if self.representable { "True" } else { "False" }, self.kind)
    }
}

/// A cover of a graph's edges by representable spanning subgraphs.
#[pyclass(module = "wordrep", frozen, get_all)]
pub struct Cover {
    value: usize,
    exact: bool,
    lower_bound: usize,
    provenance: &'static str,
    /// Edges of each part.
    parts: Vec<Arcs>,
}

impl Cover {
    fn new(d: &Decomposition, exact: bool, lower_bound: usize) -> Self {
        Cover {
            value: d.len(),
            exact,
            lower_bound,
            provenance: d.provenance.as_str(),
            parts: d.parts.iter().map(|p| p.graph.edges()).collect(),
        }
    }
}

#[pymethods]
impl Cover {
    fn __repr__(&self) -> String {
        format!("Cover(value={}, exact={}, parts={})", self.value, self.exact, self.parts.len())
    }
}

#[pyfunction]
fn wr_decide(g: &Graph) -> Decision {
    Decision::from_core(recognition::wr_decide(&g.inner))
}

#[pyfunction]
fn comparability_decide(g: &Graph) -> Decision {
    Decision::from_core(recognition::comparability_decide(&g.inner))
}

#[pyfunction]
fn is_minimal_non_wr(g: &Graph) -> bool {
    recognition::is_minimal_non_wr(&g.inner)
}

/// True iff `arcs` orient every edge of `g` once and the result is semi-transitive.
#[pyfunction]
fn check_semi_transitive(g: &Graph, arcs: Arcs) -> PyResult<bool> {
    let o = Orientation::new(g.inner.clone(), &arcs).map_err(py_err)?;
    Ok(recognition::check_semi_transitive(&o))
}

#[pyfunction]
fn check_transitive(g: &Graph, arcs: Arcs) -> PyResult<bool> {
    let o = Orientation::new(g.inner.clone(), &arcs).map_err(py_err)?;
    Ok(recognition::check_transitive(&o))
}

#[pyfunction]
#[pyo3(signature = (g, max_occurrence = 3))]
fn find_word(g: &Graph, max_occurrence: usize) -> Option<Vec<usize>> {
    recognition::find_word(&g.inner, max_occurrence).map(|w| w.letters().to_vec())
}

#[pyfunction]
fn graph_of_word(letters: Vec<usize>, n: usize) -> PyResult<Graph> {
    Ok(recognition::graph_of_word(&Word::new(letters), n).map_err(py_err)?.into())
}

#[pyfunction]
#[pyo3(signature = (g, budget = Some(2_000_000)))]
fn mu(g: &Graph, budget: Option<u64>) -> PyResult<Cover> {
    let m = recognition::mu_exact(&g.inner, &MuConfig { budget, ..MuConfig::default() }).map_err(py_err)?;
    Ok(Cover::new(&m.decomposition, m.exact, m.lower_bound))
}

#[pyfunction]
fn lex_product(outer: &Graph, inner: &Graph) -> Graph {
    lex::lex_product(&outer.inner, &inner.inner).product.into()
}

#[pyfunction]
fn lex_power(g: &Graph, k: usize) -> PyResult<Graph> {
    Ok(lex::lex_power(&g.inner, k).map_err(py_err)?.graph().clone().into())
}

#[pyfunction]
fn lex_map(outer: &Graph, inner: &Graph, edges: Arcs) -> PyResult<Graph> {
    let p = lex::lex_product(&outer.inner, &inner.inner);
    Ok(lex::lex_map(&p, &edges).map_err(py_err)?.graph.into())
}

/// `(word-representable, comparability, mu)` of the product of two representable graphs.
#[pyfunction]
fn product_wr_characterize(outer: &Graph, inner: &Graph) -> PyResult<(bool, bool, usize)> {
    let r = lex::product_wr_characterize(&outer.inner, &inner.inner).map_err(py_err)?;
    Ok((r.h_wr, r.h_comp, r.mu_h))
}

#[pyfunction]
fn power_cover(g: &Graph, k: usize) -> PyResult<Cover> {
    let d = decompose_power_k(&g.inner, k).map_err(py_err)?;
    let lower = if power_non_wr_witness(&g.inner, k).map_err(py_err)?.is_some() { 2 } else { 1 };
    Ok(Cover::new(&d, lower == d.len(), lower))
}

/// Three disjoint parts covering the product of two minimal non-representable graphs.
#[pyfunction]
#[pyo3(signature = (outer, inner, r = 0, roots = None))]
fn minimal_product_cover(outer: &Graph, inner: &Graph, r: usize, roots: Option<Vec<usize>>) -> PyResult<Cover> {
    let p = lex::lex_product(&outer.inner, &inner.inner);
    let roots = roots.unwrap_or_else(|| vec![0; outer.inner.n()]);
    let d = decompose_min_nonwr_product(&p, r, &roots, None).map_err(py_err)?;
    Ok(Cover::new(&d, false, 2))
}

/// `(value, witness)`: the size of a maximum representable set and one such set.
#[pyfunction]
fn eta(g: &Graph) -> (usize, Vec<usize>) {
    let e = extremal::eta(&g.inner);
    (e.value, e.witness.members())
}

#[pyfunction]
fn verify_no_wr_subgraph(g: &Graph, s: usize) -> bool {
    extremal::verify_no_wr_subgraph(&g.inner, s)
}

/// `(status, message)` for a certificate document in JSON.
#[pyfunction]
fn verify(document: &str) -> PyResult<(&'static str, Option<String>)> {
    let doc = CertificateDocument::from_json(document).map_err(py_err)?;
    let report = verify_document(&doc, VerifyLimits::default()).map_err(py_err)?;
    Ok(match report.status {
        VerifyStatus::Valid => ("valid", None),
        VerifyStatus::Invalid(m) => ("invalid", Some(m)),
        VerifyStatus::Unknown(m) => ("unknown", Some(m)),
    })
}

#[pymodule]
#[pyo3(name = "wordrep")]
fn wordrep_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Decision>()?;
    m.add_class::<Cover>()?;
    m.add_function(wrap_pyfunction!(wr_decide, m)?)?;
    m.add_function(wrap_pyfunction!(comparability_decide, m)?)?;
    m.add_function(wrap_pyfunction!(is_minimal_non_wr, m)?)?;
    m.add_function(wrap_pyfunction!(check_semi_transitive, m)?)?;
    m.add_function(wrap_pyfunction!(check_transitive, m)?)?;
    m.add_function(wrap_pyfunction!(find_word, m)?)?;
    m.add_function(wrap_pyfunction!(graph_of_word, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(lex_product, m)?)?;
    m.add_function(wrap_pyfunction!(lex_power, m)?)?;
    m.add_function(wrap_pyfunction!(lex_map, m)?)?;
    m.add_function(wrap_pyfunction!(product_wr_characterize, m)?)?;
    m.add_function(wrap_pyfunction!(power_cover, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_product_cover, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(verify_no_wr_subgraph, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
