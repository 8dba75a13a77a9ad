use serde::Serialize;

use super::AnalysisError;
use crate::graph::LabeledGraph;
use crate::ring::{Ring, RingElement};
use crate::zlattice::integer_flow_up_basis;

/// Where a `Q` value comes from, and therefore how much a determinant
/// comparison against it proves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QProvenance {
    /// Product of the HNF diagonal over ℤ; `det = u * Q` iff basis.
    PidDiagonal,
    /// Product of pairwise-coprime labels; `det = u * Q` iff basis.
    CoprimeProduct,
    /// `lcm(labels)`: divides every `n`-subset determinant, nothing more.
    LcmLowerBound,
}

impl QProvenance {
    /// Whether `det = u * Q` is also necessary for a basis.
    pub fn is_sharp(self) -> bool {
        !matches!(self, QProvenance::LcmLowerBound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QInvariant {
    pub value: RingElement,
    pub provenance: QProvenance,
}

/// Picks the strongest available `Q`: the HNF diagonal over ℤ, else the
/// product of pairwise-coprime labels, else the lcm of the labels.
pub fn compute_q(g: &LabeledGraph) -> Result<QInvariant, AnalysisError> {
    if *g.ring() == Ring::Integer {
        let basis = integer_flow_up_basis(g)?;
        return Ok(QInvariant {
            value: RingElement::Int(basis.determinant()),
            provenance: QProvenance::PidDiagonal,
        });
    }
    if g.pairwise_coprime_labels() {
        return Ok(QInvariant {
            value: RingElement::product(g.ring(), g.labels()),
            provenance: QProvenance::CoprimeProduct,
        });
    }
    lcm_lower_bound(g)
}

/// `lcm(a_1, ..., a_m)`, which divides the determinant of any `n` splines.
pub fn lcm_lower_bound(g: &LabeledGraph) -> Result<QInvariant, AnalysisError> {
    let mut acc = g.ring().one();
    for a in g.labels() {
        acc = acc.lcm(a)?;
    }
    Ok(QInvariant {
        value: acc,
        provenance: QProvenance::LcmLowerBound,
    })
}
