use crate::error::{Error, Result};
use crate::graph::{induced_on, is_dominating_vertex, Graph, Orientation, VertexSet};
use crate::recognition::search::{orient, Budget, PartClass};
use crate::recognition::Certificate;

/// Outcome of a recognizer together with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub representable: bool,
    pub certificate: Certificate,
}

/// Orients every component separately; the classes are closed under disjoint union.
fn orient_components(g: &Graph, class: PartClass, budget: &mut Budget) -> Result<Option<Orientation>> {
    let mut arcs = Vec::with_capacity(g.edge_count());
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = induced_on(g, &comp);
        match orient(&sub, class, budget)? {
            Some(local) => arcs.extend(local.into_iter().map(|(u, v)| (comp[u], comp[v]))),
            None => return Ok(None),
        }
    }
    Ok(Some(Orientation::new(g.clone(), &arcs)?))
}

fn decide(g: &Graph, class: PartClass, budget: &mut Budget) -> Result<Decision> {
    if let Some(o) = orient_components(g, class, budget)? {
        let certificate = match class {
            PartClass::SemiTransitive => Certificate::SemiTransitive(o),
            PartClass::Transitive => Certificate::Transitive(o),
        };
        return Ok(Decision { representable: true, certificate });
    }
    // Both classes are hereditary, so one greedy deletion pass ends at an
    // inclusion-minimal failing set.
    let mut witness: Vec<usize> = (0..g.n()).collect();
    let mut i = 0;
    while i < witness.len() {
        let mut trial = witness.clone();
        trial.remove(i);
        let sub = induced_on(g, &trial);
        if orient_components(&sub, class, budget)?.is_none() {
            witness = trial;
        } else {
            i += 1;
        }
    }
    Ok(Decision {
        representable: false,
        certificate: Certificate::Witness(VertexSet::from_members(g.n(), witness)?),
    })
}

/// Decides word-representability via semi-transitive orientations.
pub fn wr_decide(g: &Graph) -> Decision {
    decide(g, PartClass::SemiTransitive, &mut Budget::unlimited()).expect("unlimited search")
}

pub fn wr_decide_with(g: &Graph, budget: &mut Budget) -> Result<Decision> {
    decide(g, PartClass::SemiTransitive, budget)
}

/// Decides whether `g` has a transitive orientation.
pub fn comparability_decide(g: &Graph) -> Decision {
    decide(g, PartClass::Transitive, &mut Budget::unlimited()).expect("unlimited search")
}

pub fn comparability_decide_with(g: &Graph, budget: &mut Budget) -> Result<Decision> {
    decide(g, PartClass::Transitive, budget)
}

/// Representability of a graph with a dominating vertex `x`, decided on `g - x`.
pub fn wr_with_dominating_vertex(g: &Graph, x: usize) -> Result<bool> {
    if !is_dominating_vertex(g, x)? {
        return Err(Error::precondition(format!("vertex {x} is not dominating")));
    }
    Ok(comparability_decide(&g.delete_vertex(x)?).representable)
}

/// Non-representable, with every single-vertex deletion representable.
pub fn is_minimal_non_wr(g: &Graph) -> bool {
    if wr_decide(g).representable {
        return false;
    }
    (0..g.n()).all(|v| wr_decide(&g.delete_vertex(v).expect("vertex in range")).representable)
}
