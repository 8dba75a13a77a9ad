//! Determinantal basis criteria and flow-up basis search.
//!
//! A set of `n` splines on an `n`-vertex graph is a basis of the spline
//! module exactly when its determinant is a unit multiple of an invariant
//! `Q` of the graph, in the two regimes where `Q` is known:
//!
//! * over ℤ, `Q` is the product of the minimal leading terms of the flow-up
//!   classes ([`QProvenance::PidDiagonal`]);
//! * when the edge labels are pairwise coprime, `Q` is their product
//!   ([`QProvenance::CoprimeProduct`]).
//!
//! Otherwise only `lcm(labels)` is available. It divides every `n`-subset
//! determinant, so `det = u * lcm` still certifies a basis, but failure to
//! match says nothing and yields [`Decision::Undecided`].

mod criteria;
mod obstruction;
mod probe;
mod q;
mod search;

use thiserror::Error;

use crate::graph::LabeledGraph;
use crate::linalg::bareiss_determinant;
use crate::ring::{Ring, RingElement, RingError};
use crate::spline::{check_spline, Spline, SplineError};
use crate::zlattice::LatticeError;

pub use criteria::{check_basis, cramer_membership, BasisVerdict, CramerCoordinates, Decision};
pub use obstruction::{c3_flowup_obstruction, c3_obstruction_for_graph, IdealMembership};
pub use probe::{divides_all_dets_probe, ProbeOutcome};
pub use q::{compute_q, lcm_lower_bound, QInvariant, QProvenance};
pub use search::{flow_up_search_bounded, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("expected {expected} columns of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("column {column} is not a spline ({violations} violated edges)")]
    NotASpline { column: usize, violations: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("edge labels are not pairwise coprime")]
    NonCoprimeLabels,
    #[error("product of factors {product} is not a unit multiple of Q = {q}")]
    FactorProductMismatch { product: RingElement, q: RingElement },
    #[error("degree bound {bound} is below the largest label degree {needed}")]
    DegreeBoundTooSmall { bound: u32, needed: u32 },
    #[error("operation not supported over {0}")]
    UnsupportedRing(Ring),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("expected a 3-cycle")]
    NotATriangle,
    #[error(transparent)]
    Spline(#[from] SplineError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `n` splines on an `n`-vertex graph, viewed as the columns of a square
/// matrix. Every column is checked to be a spline on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplineMatrix {
    columns: Vec<Spline>,
    ring: Ring,
}

impl SplineMatrix {
    pub fn new(g: &LabeledGraph, columns: Vec<Spline>) -> Result<Self, AnalysisError> {
        let n = g.vertex_count();
        if columns.len() != n {
            return Err(AnalysisError::DimensionMismatch {
                expected: n,
                got: columns.len(),
            });
        }
        for (k, c) in columns.iter().enumerate() {
            let violations = check_spline(g, c)?;
            if !violations.is_empty() {
                return Err(AnalysisError::NotASpline {
                    column: k,
                    violations: violations.len(),
                });
            }
        }
        Ok(SplineMatrix {
            columns,
            ring: g.ring().clone(),
        })
    }

    pub fn columns(&self) -> &[Spline] {
        &self.columns
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// `sum_k x_k * column_k`.
    pub fn apply(&self, x: &[RingElement]) -> Result<Spline, AnalysisError> {
        Ok(crate::spline::spline_combination(x, &self.columns)?)
    }
}

/// Exact determinant of the matrix `[C_1, ..., C_n]`.
pub fn spline_determinant(m: &SplineMatrix) -> RingElement {
    determinant_of_columns(&m.columns)
}

pub(crate) fn determinant_of_columns(columns: &[Spline]) -> RingElement {
    // det(M^T) = det(M), so the columns can serve as rows.
    let rows: Vec<Vec<RingElement>> = columns.iter().map(|c| c.entries().to_vec()).collect();
    bareiss_determinant(&rows)
}
