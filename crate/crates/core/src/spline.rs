//! Splines as vertex labelings of an edge-labeled graph.
//!
//! A tuple `(f_1, ..., f_n)` is a spline when every edge `(i, j)` with
//! label `a` satisfies `a | f_i - f_j`. Flow-up classes partition the
//! splines by their number of leading zeros: class `k` holds the splines
//! whose first `k` entries vanish and whose entry `k + 1` does not, and the
//! zero spline is alone in class `n`.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::LabeledGraph;
use crate::poly::ParseError;
use crate::ring::{Ring, RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplineError {
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the zero spline has no leading term")]
    ZeroSpline,
    #[error("flow-up index {index} out of range 1..{n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("entry {entry}: {source}")]
    Parse { entry: usize, source: ParseError },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// An `n`-tuple of ring elements indexed by the graph's vertex order.
///
/// The tuple is not required to satisfy the edge congruences; use
/// [`check_spline`] / [`is_spline`] for that.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spline(Vec<RingElement>);

/// Number of leading zeros of a spline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FlowUpIndex(pub usize);

/// An edge whose congruence fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    pub label: RingElement,
    /// `f_u - f_v`
    pub difference: RingElement,
}

impl Spline {
    pub fn new(entries: Vec<RingElement>) -> Self {
        Spline(entries)
    }

    pub fn zero(ring: &Ring, n: usize) -> Self {
        Spline(vec![ring.zero(); n])
    }

    /// The constant spline `(c, ..., c)`.
    pub fn constant(c: RingElement, n: usize) -> Self {
        Spline(vec![c; n])
    }

    /// Parses comma-separated labels, e.g. `"3,15,5"` or `"0, x, x+y"`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self, SplineError> {
        text.split(',')
            .enumerate()
            .map(|(entry, t)| {
                ring.parse(t.trim())
                    .map_err(|source| SplineError::Parse { entry, source })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Spline)
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Spline(values.iter().map(|&v| RingElement::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<RingElement> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(RingElement::is_zero)
    }

    pub fn flow_up_index(&self) -> FlowUpIndex {
        FlowUpIndex(
            self.0
                .iter()
                .position(|f| !f.is_zero())
                .unwrap_or(self.0.len()),
        )
    }

    /// First nonzero entry.
    pub fn leading_term(&self) -> Result<&RingElement, SplineError> {
        self.0
            .iter()
            .find(|f| !f.is_zero())
            .ok_or(SplineError::ZeroSpline)
    }

    pub fn scale(&self, c: &RingElement) -> Result<Spline, SplineError> {
        Ok(Spline(
            self.0
                .iter()
                .map(|f| c.try_mul(f))
                .collect::<Result<_, _>>()?,
        ))
    }

    pub fn try_add(&self, other: &Spline) -> Result<Spline, SplineError> {
        self.same_len(other)?;
        Ok(Spline(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.try_add(b))
                .collect::<Result<_, _>>()?,
        ))
    }

    pub fn try_sub(&self, other: &Spline) -> Result<Spline, SplineError> {
        self.same_len(other)?;
        Ok(Spline(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.try_sub(b))
                .collect::<Result<_, _>>()?,
        ))
    }

    fn same_len(&self, other: &Spline) -> Result<(), SplineError> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(SplineError::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            })
        }
    }
}

impl std::ops::Index<usize> for Spline {
    type Output = RingElement;
    fn index(&self, i: usize) -> &RingElement {
        &self.0[i]
    }
}

impl fmt::Display for Spline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Serializes as a JSON array of label strings.
impl Serialize for Spline {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Every violated edge congruence; empty when `candidate` is a spline.
pub fn check_spline(g: &LabeledGraph, candidate: &Spline) -> Result<Vec<Violation>, SplineError> {
    if candidate.len() != g.vertex_count() {
        return Err(SplineError::LengthMismatch {
            expected: g.vertex_count(),
            got: candidate.len(),
        });
    }
    let mut violations = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        let difference = candidate[e.u].try_sub(&candidate[e.v])?;
        if !e.label.divides(&difference)? {
            violations.push(Violation {
                edge: k,
                u: e.u,
                v: e.v,
                label: e.label.clone(),
                difference,
            });
        }
    }
    Ok(violations)
}

pub fn is_spline(g: &LabeledGraph, candidate: &Spline) -> Result<bool, SplineError> {
    Ok(check_spline(g, candidate)?.is_empty())
}

/// The spline `(0, ..., 0, p, 0, ..., 0)` with `p` at position `index`
/// (0-based) equal to the product of the labels incident to that vertex.
/// It lies in flow-up class `index`, so every class `1..n` is non-empty.
pub fn flow_up_witness(g: &LabeledGraph, index: usize) -> Result<Spline, SplineError> {
    let n = g.vertex_count();
    if index == 0 || index >= n {
        return Err(SplineError::IndexOutOfRange { index, n });
    }
    let labels = g
        .incident_labels(index)
        .expect("index checked against vertex count");
    let mut entries = vec![g.ring().zero(); n];
    entries[index] = RingElement::product(g.ring(), labels);
    Ok(Spline(entries))
}

/// `sum_k coefficients[k] * splines[k]`, computed componentwise.
pub fn spline_combination(
    coefficients: &[RingElement],
    splines: &[Spline],
) -> Result<Spline, SplineError> {
    if coefficients.len() != splines.len() {
        return Err(SplineError::LengthMismatch {
            expected: splines.len(),
            got: coefficients.len(),
        });
    }
    let Some(first) = splines.first() else {
        return Err(SplineError::LengthMismatch {
            expected: 1,
            got: 0,
        });
    };
    let mut acc = Spline(vec![first[0].zero_like(); first.len()]);
    for (c, s) in coefficients.iter().zip(splines) {
        acc = acc.try_add(&s.scale(c)?)?;
    }
    Ok(acc)
}
