//! Exact computation with generalized splines on edge-labeled graphs.
//!
//! A generalized spline on a graph whose edges carry ring elements is a
//! vertex labeling in which every edge label divides the difference of the
//! labels at its endpoints. This crate verifies splines, builds flow-up
//! class bases over ℤ through Hermite normal forms, and decides whether a
//! candidate set of splines is a basis by comparing its determinant with
//! the invariant `Q` (product of minimal leading terms over ℤ, product of
//! the labels when they are pairwise coprime).
//!
//! Supported coefficient rings are ℤ, ℚ, and polynomial rings over either.

pub mod analysis;
pub mod graph;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod spline;
pub mod zlattice;

pub use graph::{GraphError, LabeledGraph};
pub use poly::{CoeffRing, Polynomial};
pub use ring::{Ring, RingElement, RingError};
pub use spline::{FlowUpIndex, Spline};
