//! Recognizers for word-representable and comparability graphs, and the
//! multi-word-representation number.

pub mod check;
mod decide;
mod mu;
pub mod search;
mod word;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, Orientation, VertexSet};

pub use check::{
    check_semi_transitive, check_transitive, is_acyclic, semi_transitive_violation, transitive_violation, Violation,
};
pub use decide::{
    comparability_decide, comparability_decide_with, is_minimal_non_wr, wr_decide, wr_decide_with,
    wr_with_dominating_vertex, Decision,
};
pub use mu::{mu_exact, mu_verify, mu_verify_detailed, MuConfig, MuResult};
pub use search::{Budget, PartClass};
pub use word::{alternates, find_word, find_word_with, graph_of_word, word_represents, Word};

/// A polynomially checkable answer from a recognizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    SemiTransitive(Orientation),
    Transitive(Orientation),
    Word(Word),
    /// Vertex set whose induced subgraph is not word-representable.
    Witness(VertexSet),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SemiTransitive(_) => "semi-transitive-orientation",
            Certificate::Transitive(_) => "transitive-orientation",
            Certificate::Word(_) => "word",
            Certificate::Witness(_) => "non-representable-witness",
        }
    }

    /// Checks that the certificate proves `g` word-representable.
    pub fn verify_representable(&self, g: &Graph) -> Result<()> {
        match self {
            Certificate::SemiTransitive(o) => {
                if o.host() != g {
                    return Err(Error::Verification("orientation is for a different graph".into()));
                }
                match semi_transitive_violation(o) {
                    None => Ok(()),
                    Some(v) => Err(Error::Verification(format!("orientation is not semi-transitive: {v}"))),
                }
            }
            Certificate::Transitive(o) => {
                if o.host() != g {
                    return Err(Error::Verification("orientation is for a different graph".into()));
                }
                match transitive_violation(o) {
                    None => Ok(()),
                    Some(v) => Err(Error::Verification(format!("orientation is not transitive: {v}"))),
                }
            }
            Certificate::Word(w) => match word_represents(w, g) {
                Ok(true) => Ok(()),
                Ok(false) => Err(Error::Verification("word represents a different graph".into())),
                Err(e) => Err(Error::Verification(format!("word is malformed: {e}"))),
            },
            Certificate::Witness(_) => {
                Err(Error::Verification("a non-representability witness cannot certify a part".into()))
            }
        }
    }

    /// Checks that the certificate proves `g` not word-representable.
    ///
    /// The induced subgraph on the witness is re-decided, so the cost is that of
    /// one recognition on the witness alone.
    pub fn verify_non_representable(&self, g: &Graph) -> Result<()> {
        let Certificate::Witness(w) = self else {
            return Err(Error::Verification(format!("{} does not witness non-representability", self.kind())));
        };
        if w.universe() != g.n() {
            return Err(Error::Verification("witness is over a different vertex range".into()));
        }
        let sub = induced_subgraph(g, w).map_err(|e| Error::Verification(e.to_string()))?;
        if wr_decide(&sub).representable {
            return Err(Error::Verification(format!("witness {:?} induces a word-representable graph", w.members())));
        }
        Ok(())
    }
}
