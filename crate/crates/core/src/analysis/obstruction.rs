//! Obstruction to flow-up class bases on a 3-cycle.
//!
//! Label the edges `v1v2`, `v2v3`, `v3v1` by pairwise coprime `a`, `b`, `c`.
//! A flow-up basis would have `B_2 = (0, a x, c y)` with `x` a unit (its
//! determinant must be a unit multiple of `abc`), and `b | a x - c y` then
//! puts `a` in the ideal `<b, c>`. So `a ∉ <b, c>` rules out any flow-up
//! basis. Ideal membership is supplied by the caller.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::AnalysisError;
use crate::graph::LabeledGraph;
use crate::poly::Monomial;
use crate::ring::RingElement;

/// Built-in membership tests for the ideals `<b, c>` that come up in the
/// standard examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealMembership {
    /// `<2, x>` in ℤ[x]: the constant term is even.
    EvenConstantTerm,
    /// The ideal generated by the variables: the constant term is zero.
    ZeroConstantTerm,
    /// The whole ring, e.g. `<2, 5>` in ℤ.
    WholeRing,
}

impl IdealMembership {
    pub fn contains(self, r: &RingElement) -> bool {
        match self {
            IdealMembership::WholeRing => true,
            IdealMembership::EvenConstantTerm => match constant_term(r) {
                Some(c) => c.is_integer() && c.to_integer().is_even(),
                None => false,
            },
            IdealMembership::ZeroConstantTerm => constant_term(r).is_some_and(|c| c.is_zero()),
        }
    }
}

fn constant_term(r: &RingElement) -> Option<num_rational::BigRational> {
    match r {
        RingElement::Int(n) => Some(num_rational::BigRational::from_integer(n.clone())),
        RingElement::Rat(q) => Some(q.clone()),
        RingElement::Poly(p) => Some(p.coefficient(&Monomial::one(p.nvars()))),
    }
}

/// `true` ("obstructed") when `a ∉ <b, c>`, which rules out a flow-up class
/// basis on the 3-cycle labeled `a, b, c`.
pub fn c3_flowup_obstruction<F>(
    a: &RingElement,
    b: &RingElement,
    c: &RingElement,
    in_ideal_bc: F,
) -> Result<bool, AnalysisError>
where
    F: Fn(&RingElement) -> bool,
{
    for (x, y) in [(a, b), (a, c), (b, c)] {
        if !x.gcd(y)?.is_unit() {
            return Err(AnalysisError::NonCoprimeLabels);
        }
    }
    Ok(!in_ideal_bc(a))
}

/// Runs [`c3_flowup_obstruction`] on a 3-cycle graph, reading `a`, `b`, `c`
/// off the edges `v1v2`, `v2v3`, `v3v1` in vertex order.
pub fn c3_obstruction_for_graph(
    g: &LabeledGraph,
    membership: IdealMembership,
) -> Result<bool, AnalysisError> {
    if g.vertex_count() != 3 || g.edges().len() != 3 {
        return Err(AnalysisError::NotATriangle);
    }
    let label = |i: usize, j: usize| {
        g.edges()
            .iter()
            .find(|e| (e.u, e.v) == (i, j) || (e.u, e.v) == (j, i))
            .map(|e| &e.label)
            .ok_or(AnalysisError::NotATriangle)
    };
    let (a, b, c) = (label(0, 1)?, label(1, 2)?, label(2, 0)?);
    c3_flowup_obstruction(a, b, c, |r| membership.contains(r))
}
