//! Versioned JSON certificate documents and their polynomial re-verification.

use serde::{Deserialize, Serialize};

use crate::decomposition::{Decomposition, Part, Provenance};
use crate::error::{Error, Result};
use crate::extremal::{binomial, Blocker};
use crate::formats::{from_graph6, to_graph6};
use crate::graph::{induced_on, Graph, Orientation};
use crate::recognition::{
    comparability_decide, graph_of_word, mu_verify_detailed, semi_transitive_violation, transitive_violation,
    wr_decide, Certificate, Word,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub command: String,
    /// Host graph in graph6.
    pub host: String,
    pub result: DocResult,
    pub certificates: Vec<CertRecord>,
    pub timing: Timing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    WordRepresentable,
    Comparability,
    MinimalNonWordRepresentable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DocResult {
    Check {
        property: Property,
        value: bool,
    },
    Mu {
        value: usize,
        exact: bool,
        lower_bound: usize,
        provenance: String,
    },
    Eta {
        value: usize,
    },
    PowerBound {
        k: usize,
        cap: usize,
        bound: u64,
        combinations_checked: usize,
        samples_checked: usize,
        max_check_ms: f64,
    },
    Tau {
        n: usize,
        value: usize,
        graphs: usize,
        argmin: usize,
    },
}

/// An orientation of the subgraph induced by `vertices`, or of the whole host
/// when `vertices` is absent. Arcs use host ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    pub arcs: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionRecord {
    pub vertex: usize,
    pub arcs: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockerRecord {
    pub vertices: Vec<usize>,
    pub witness: Vec<usize>,
}

/// A cover part: a spanning subgraph of the host given by its arcs, or by its
/// edges together with a representing word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PartRecord {
    SemiTransitiveOrientation { arcs: Vec<[usize; 2]> },
    TransitiveOrientation { arcs: Vec<[usize; 2]> },
    Word { edges: Vec<[usize; 2]>, letters: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertRecord {
    SemiTransitiveOrientation(OrientationRecord),
    TransitiveOrientation(OrientationRecord),
    Word {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<usize>>,
        letters: Vec<usize>,
    },
    /// Vertices inducing a graph outside the class named by `property`.
    NonRepresentableWitness { property: Property, vertices: Vec<usize> },
    /// A semi-transitive orientation of every single-vertex deletion.
    VertexDeletions { deletions: Vec<DeletionRecord> },
    Cover { provenance: String, parts: Vec<PartRecord> },
    /// Every set of `size` vertices, each with a non-representable subset.
    Blockers { size: usize, sets: Vec<BlockerRecord> },
}

fn arcs_record(o: &Orientation, ids: Option<&[usize]>) -> Vec<[usize; 2]> {
    o.arcs()
        .into_iter()
        .map(|(u, v)| match ids {
            Some(ids) => [ids[u], ids[v]],
            None => [u, v],
        })
        .collect()
}

impl CertRecord {
    /// Record for a recognizer certificate about the subgraph induced by `vertices`
    /// (in increasing order), or about the whole host.
    pub fn from_certificate(c: &Certificate, vertices: Option<&[usize]>, property: Property) -> CertRecord {
        let rec = |o: &Orientation| OrientationRecord { vertices: vertices.map(<[usize]>::to_vec), arcs: arcs_record(o, vertices) };
        match c {
            Certificate::SemiTransitive(o) => CertRecord::SemiTransitiveOrientation(rec(o)),
            Certificate::Transitive(o) => CertRecord::TransitiveOrientation(rec(o)),
            Certificate::Word(w) => CertRecord::Word {
                vertices: vertices.map(<[usize]>::to_vec),
                letters: w.letters().iter().map(|&l| vertices.map_or(l, |ids| ids[l])).collect(),
            },
            Certificate::Witness(w) => CertRecord::NonRepresentableWitness {
                property,
                vertices: w.iter().map(|v| vertices.map_or(v, |ids| ids[v])).collect(),
            },
        }
    }

    pub fn cover(d: &Decomposition) -> CertRecord {
        let parts = d
            .parts
            .iter()
            .map(|p| match &p.certificate {
                Certificate::SemiTransitive(o) => PartRecord::SemiTransitiveOrientation { arcs: arcs_record(o, None) },
                Certificate::Transitive(o) => PartRecord::TransitiveOrientation { arcs: arcs_record(o, None) },
                Certificate::Word(w) => PartRecord::Word {
                    edges: p.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
                    letters: w.letters().to_vec(),
                },
                Certificate::Witness(_) => unreachable!("parts carry positive certificates"),
            })
            .collect();
        CertRecord::Cover { provenance: d.provenance.as_str().to_string(), parts }
    }

    pub fn blockers(size: usize, blockers: &[Blocker]) -> CertRecord {
        CertRecord::Blockers {
            size,
            sets: blockers
                .iter()
                .map(|b| BlockerRecord { vertices: b.set.members(), witness: b.witness.members() })
                .collect(),
        }
    }
}

impl CertificateDocument {
    pub fn new(command: impl Into<String>, host: &Graph, result: DocResult, certificates: Vec<CertRecord>, elapsed_ms: f64) -> Self {
        CertificateDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.into(),
            host: to_graph6(host),
            result,
            certificates,
            timing: Timing { elapsed_ms },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("certificate document: {e}")))
    }
}

/// Outcome of [`verify_document`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyStatus {
    Valid,
    /// A certificate or claim failed; the message names the first failing clause.
    Invalid(String),
    /// A claim cannot be checked within the limits, e.g. an oversized witness.
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub status: VerifyStatus,
    pub certificates_checked: usize,
    /// Claims of the result not covered by any embedded certificate.
    pub notes: Vec<String>,
}

/// Limits for [`verify_document`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyLimits {
    /// Largest witness re-decided during verification.
    pub witness_cap: usize,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        VerifyLimits { witness_cap: 16 }
    }
}

enum Failure {
    Invalid(String),
    Unknown(String),
}

type Check<T> = std::result::Result<T, Failure>;

fn invalid<T>(msg: impl Into<String>) -> Check<T> {
    Err(Failure::Invalid(msg.into()))
}

fn sorted_distinct(vs: &[usize], n: usize, what: &str) -> Check<()> {
    if let Some(&v) = vs.iter().find(|&&v| v >= n) {
        return invalid(format!("{what}: vertex {v} is out of range"));
    }
    if vs.windows(2).any(|w| w[0] >= w[1]) {
        return invalid(format!("{what}: vertices must be strictly increasing"));
    }
    Ok(())
}

/// Orientation on the subgraph induced by `vertices`, built from host-id arcs.
fn local_orientation(host: &Graph, vertices: &[usize], arcs: &[[usize; 2]], what: &str) -> Check<Orientation> {
    let sub = induced_on(host, vertices);
    let mut local = Vec::with_capacity(arcs.len());
    for &[u, v] in arcs {
        match (vertices.binary_search(&u), vertices.binary_search(&v)) {
            (Ok(a), Ok(b)) => local.push((a, b)),
            _ => return invalid(format!("{what}: arc {u}->{v} leaves the vertex set")),
        }
    }
    Orientation::new(sub, &local).or_else(|e| invalid(format!("{what}: {}", map_error(e, vertices))))
}

fn map_error(e: Error, ids: &[usize]) -> String {
    let id = |x: usize| ids.get(x).copied().unwrap_or(x);
    match e {
        Error::NotAnEdge(u, v) => format!("{}-{} is not an edge", id(u), id(v)),
        Error::DuplicateArc(u, v) => format!("edge {}-{} is oriented more than once", id(u), id(v)),
        Error::MissingArc(u, v) => format!("edge {}-{} is left without a direction", id(u), id(v)),
        other => other.to_string(),
    }
}

fn record_vertices(vertices: &Option<Vec<usize>>, n: usize, what: &str) -> Check<Vec<usize>> {
    match vertices {
        Some(vs) => {
            sorted_distinct(vs, n, what)?;
            Ok(vs.clone())
        }
        None => Ok((0..n).collect()),
    }
}

fn check_orientation(host: &Graph, rec: &OrientationRecord, transitive: bool, what: &str) -> Check<usize> {
    let vs = record_vertices(&rec.vertices, host.n(), what)?;
    let o = local_orientation(host, &vs, &rec.arcs, what)?;
    let violation = if transitive { transitive_violation(&o) } else { semi_transitive_violation(&o) };
    if let Some(v) = violation {
        let msg = v.to_string();
        return invalid(format!("{what}: {msg} (local ids over vertices {vs:?})"));
    }
    Ok(vs.len())
}

fn check_witness(host: &Graph, property: Property, vs: &[usize], limits: VerifyLimits, what: &str) -> Check<()> {
    sorted_distinct(vs, host.n(), what)?;
    if vs.len() > limits.witness_cap {
        return Err(Failure::Unknown(format!(
            "{what}: witness on {} vertices exceeds the re-decision cap of {}",
            vs.len(),
            limits.witness_cap
        )));
    }
    let sub = induced_on(host, vs);
    let in_class = match property {
        Property::Comparability => comparability_decide(&sub).representable,
        _ => wr_decide(&sub).representable,
    };
    if in_class {
        return invalid(format!("{what}: vertices {vs:?} do not witness the claimed failure"));
    }
    Ok(())
}

fn decomposition_from_record(host: &Graph, provenance: &str, parts: &[PartRecord]) -> Check<Decomposition> {
    let mut out = Vec::with_capacity(parts.len());
    let n = host.n();
    for (i, p) in parts.iter().enumerate() {
        let what = format!("cover part {i}");
        let part = match p {
            PartRecord::SemiTransitiveOrientation { arcs } | PartRecord::TransitiveOrientation { arcs } => {
                let edges: Vec<_> = arcs.iter().map(|&[u, v]| (u.min(v), u.max(v))).collect();
                let graph = Graph::from_edges(n, &edges).or_else(|e| invalid(format!("{what}: {e}")))?;
                let tuples: Vec<_> = arcs.iter().map(|&[u, v]| (u, v)).collect();
                let o = Orientation::new(graph.clone(), &tuples).or_else(|e| invalid(format!("{what}: {e}")))?;
                let certificate = if matches!(p, PartRecord::TransitiveOrientation { .. }) {
                    Certificate::Transitive(o)
                } else {
                    Certificate::SemiTransitive(o)
                };
                Part { graph, certificate }
            }
            PartRecord::Word { edges, letters } => {
                let e: Vec<_> = edges.iter().map(|&[u, v]| (u, v)).collect();
                let graph = Graph::from_edges(n, &e).or_else(|e| invalid(format!("{what}: {e}")))?;
                Part { graph, certificate: Certificate::Word(Word::new(letters.clone())) }
            }
        };
        out.push(part);
    }
    let provenance = Provenance::parse(provenance).unwrap_or(Provenance::Given);
    Ok(Decomposition::new(host.clone(), out, provenance))
}

struct Seen {
    whole_positive: Option<bool>,
    witness: Vec<(Property, Vec<usize>)>,
    deletions: bool,
    cover_parts: Option<usize>,
    positive_sizes: Vec<usize>,
    blockers: Option<usize>,
}

fn check_records(host: &Graph, doc: &CertificateDocument, limits: VerifyLimits) -> Check<Seen> {
    let n = host.n();
    let mut seen = Seen {
        whole_positive: None,
        witness: Vec::new(),
        deletions: false,
        cover_parts: None,
        positive_sizes: Vec::new(),
        blockers: None,
    };
    for (i, rec) in doc.certificates.iter().enumerate() {
        let what = format!("certificate {i}");
        match rec {
            CertRecord::SemiTransitiveOrientation(r) | CertRecord::TransitiveOrientation(r) => {
                let transitive = matches!(rec, CertRecord::TransitiveOrientation(_));
                let size = check_orientation(host, r, transitive, &what)?;
                if size == n {
                    seen.whole_positive = Some(seen.whole_positive.unwrap_or(false) || transitive);
                }
                seen.positive_sizes.push(size);
            }
            CertRecord::Word { vertices, letters } => {
                let vs = record_vertices(vertices, n, &what)?;
                let mut local = Vec::with_capacity(letters.len());
                for &l in letters {
                    match vs.binary_search(&l) {
                        Ok(x) => local.push(x),
                        Err(_) => return invalid(format!("{what}: letter {l} is outside the vertex set")),
                    }
                }
                match graph_of_word(&Word::new(local), vs.len()) {
                    Ok(g) if g == induced_on(host, &vs) => {}
                    Ok(_) => return invalid(format!("{what}: word represents a different graph")),
                    Err(e) => return invalid(format!("{what}: {}", map_error(e, &vs))),
                }
                if vs.len() == n {
                    seen.whole_positive = Some(seen.whole_positive.unwrap_or(false));
                }
                seen.positive_sizes.push(vs.len());
            }
            CertRecord::NonRepresentableWitness { property, vertices } => {
                check_witness(host, *property, vertices, limits, &what)?;
                seen.witness.push((*property, vertices.clone()));
            }
            CertRecord::VertexDeletions { deletions } => {
                let mut covered = vec![false; n];
                for d in deletions {
                    if d.vertex >= n {
                        return invalid(format!("{what}: vertex {} is out of range", d.vertex));
                    }
                    let vs: Vec<usize> = (0..n).filter(|&v| v != d.vertex).collect();
                    let rec = OrientationRecord { vertices: Some(vs), arcs: d.arcs.clone() };
                    check_orientation(host, &rec, false, &format!("{what}, deletion of {}", d.vertex))?;
                    covered[d.vertex] = true;
                }
                if let Some(v) = covered.iter().position(|&c| !c) {
                    return invalid(format!("{what}: deletion of vertex {v} is not certified"));
                }
                seen.deletions = true;
            }
            CertRecord::Cover { provenance, parts } => {
                let d = decomposition_from_record(host, provenance, parts)?;
                if let Err(e) = mu_verify_detailed(host, &d) {
                    return invalid(format!("{what}: {}", e.to_string().trim_start_matches("verification failed: ")));
                }
                seen.cover_parts = Some(parts.len());
            }
            CertRecord::Blockers { size, sets } => {
                let mut distinct = std::collections::HashSet::new();
                for (j, b) in sets.iter().enumerate() {
                    let w = format!("{what}, set {j}");
                    sorted_distinct(&b.vertices, n, &w)?;
                    if b.vertices.len() != *size {
                        return invalid(format!("{w}: has {} vertices, expected {size}", b.vertices.len()));
                    }
                    if !b.witness.iter().all(|v| b.vertices.binary_search(v).is_ok()) {
                        return invalid(format!("{w}: witness is not inside the set"));
                    }
                    check_witness(host, Property::WordRepresentable, &b.witness, limits, &w)?;
                    if !distinct.insert(b.vertices.clone()) {
                        return invalid(format!("{w}: repeated set"));
                    }
                }
                if distinct.len() as u128 != binomial(n, *size) {
                    return invalid(format!(
                        "{what}: {} sets listed but there are {} sets of size {size}",
                        distinct.len(),
                        binomial(n, *size)
                    ));
                }
                seen.blockers = Some(*size);
            }
        }
    }
    Ok(seen)
}

fn check_claims(host: &Graph, result: &DocResult, seen: &Seen, notes: &mut Vec<String>) -> Check<()> {
    let n = host.n();
    let has_witness = |p: Property| seen.witness.iter().any(|(q, _)| *q == p);
    match result {
        DocResult::Check { property: Property::WordRepresentable, value } => {
            if *value && seen.whole_positive.is_none() {
                return invalid("result claims word-representable but no certificate covers the host");
            }
            if !*value && !has_witness(Property::WordRepresentable) {
                return invalid("result claims non-representable but no witness is given");
            }
        }
        DocResult::Check { property: Property::Comparability, value } => {
            if *value && seen.whole_positive != Some(true) {
                return invalid("result claims comparability but no transitive orientation covers the host");
            }
            if !*value && !has_witness(Property::Comparability) {
                return invalid("result claims non-comparability but no witness is given");
            }
        }
        DocResult::Check { property: Property::MinimalNonWordRepresentable, value } => {
            let full = seen
                .witness
                .iter()
                .any(|(p, vs)| *p == Property::WordRepresentable && vs.len() == n);
            let proper = seen
                .witness
                .iter()
                .any(|(p, vs)| *p == Property::WordRepresentable && vs.len() < n);
            if *value && !(full && seen.deletions) {
                return invalid("minimality needs a full-graph witness and a certificate for every deletion");
            }
            if !*value && seen.whole_positive.is_none() && !proper {
                return invalid("non-minimality needs a host orientation or a proper witness");
            }
        }
        DocResult::Mu { value, exact, lower_bound, .. } => {
            match seen.cover_parts {
                Some(k) if k == *value => {}
                Some(k) => return invalid(format!("result claims {value} parts but the cover has {k}")),
                None => return invalid("result claims a cover but none is given"),
            }
            if *lower_bound > *value {
                return invalid("lower bound exceeds the value");
            }
            if *exact && *lower_bound != *value {
                return invalid("an exact value must equal its lower bound");
            }
            if *lower_bound >= 2 && !has_witness(Property::WordRepresentable) {
                return invalid("lower bound 2 needs a non-representable witness");
            }
            if *lower_bound > 2 {
                return Err(Failure::Unknown(format!(
                    "lower bound {lower_bound} rests on exhaustive search and has no polynomial certificate"
                )));
            }
        }
        DocResult::Eta { value } => {
            if !seen.positive_sizes.contains(value) {
                return invalid(format!("no representable set of size {value} is certified"));
            }
            if *value < n && seen.blockers != Some(value + 1) {
                notes.push(format!("upper bound η <= {value} is not certified; rerun with blockers"));
            }
        }
        DocResult::PowerBound { .. } | DocResult::Tau { .. } => {
            notes.push("this result is a checked computation, not an embedded certificate".into());
        }
    }
    Ok(())
}

/// Re-checks every embedded certificate against the embedded host, and the
/// result's claims against the certificates. No search is run except on
/// witnesses, which are re-decided only up to `limits.witness_cap` vertices.
///
/// Malformed documents are errors; failing certificates are reported in the status.
pub fn verify_document(doc: &CertificateDocument, limits: VerifyLimits) -> Result<VerifyReport> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema version {:?}", doc.schema_version)));
    }
    let host = from_graph6(&doc.host)?;
    let mut notes = Vec::new();
    let status = match check_records(&host, doc, limits).and_then(|seen| check_claims(&host, &doc.result, &seen, &mut notes)) {
        Ok(()) => VerifyStatus::Valid,
        Err(Failure::Invalid(m)) => VerifyStatus::Invalid(m),
        Err(Failure::Unknown(m)) => VerifyStatus::Unknown(m),
    };
    Ok(VerifyReport { status, certificates_checked: doc.certificates.len(), notes })
}
