use serde::Serialize;

use super::{determinant_of_columns, spline_determinant, AnalysisError, QInvariant, SplineMatrix};
use crate::ring::RingElement;
use crate::spline::Spline;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    Basis,
    NotBasis,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisVerdict {
    pub decision: Decision,
    pub determinant: RingElement,
    pub q: QInvariant,
    /// `u` with `det = u * Q`, when the set is accepted.
    pub unit_factor: Option<RingElement>,
    pub reason: String,
}

impl BasisVerdict {
    pub fn is_basis(&self) -> bool {
        self.decision == Decision::Basis
    }
}

/// Decides whether the columns of `m` form a basis by testing
/// `det(m) = u * Q` for a unit `u`.
pub fn check_basis(m: &SplineMatrix, q: &QInvariant) -> Result<BasisVerdict, AnalysisError> {
    if q.value.ring() != *m.ring() {
        return Err(AnalysisError::Ring(crate::ring::RingError::Mismatch {
            left: m.ring().clone(),
            right: q.value.ring(),
        }));
    }
    let det = spline_determinant(m);
    let verdict = |decision, unit_factor, reason: String| BasisVerdict {
        decision,
        determinant: det.clone(),
        q: q.clone(),
        unit_factor,
        reason,
    };
    if let Some(u) = det.unit_ratio(&q.value) {
        let reason = format!("det = ({u}) * Q with ({u}) a unit");
        return Ok(verdict(Decision::Basis, Some(u), reason));
    }
    if det.is_zero() {
        return Ok(verdict(
            Decision::NotBasis,
            None,
            "determinant is zero".into(),
        ));
    }
    if q.provenance.is_sharp() {
        let reason = match det.exact_div(&q.value)? {
            Some(s) => format!("det = ({s}) * Q and ({s}) is not a unit"),
            None => format!("Q = {} does not divide det = {det}", q.value),
        };
        Ok(verdict(Decision::NotBasis, None, reason))
    } else {
        Ok(verdict(
            Decision::Undecided,
            None,
            format!(
                "det = {det} is not a unit multiple of lcm(labels) = {}; \
                 the lcm bound cannot rule out a basis",
                q.value
            ),
        ))
    }
}

/// Solution of `m x = det(m) * target` by Cramer's rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CramerCoordinates {
    pub determinant: RingElement,
    pub coordinates: Vec<RingElement>,
}

/// `x_i = det(m with column i replaced by target)`, so that
/// `m x = det(m) * target` holds over the ring itself.
pub fn cramer_membership(
    m: &SplineMatrix,
    target: &Spline,
) -> Result<CramerCoordinates, AnalysisError> {
    let n = m.size();
    if target.len() != n {
        return Err(AnalysisError::DimensionMismatch {
            expected: n,
            got: target.len(),
        });
    }
    if target.entries().iter().any(|e| !e.same_ring(&m.ring().zero())) {
        return Err(AnalysisError::Ring(crate::ring::RingError::Mismatch {
            left: m.ring().clone(),
            right: target.entries()[0].ring(),
        }));
    }
    let determinant = spline_determinant(m);
    if determinant.is_zero() {
        return Err(AnalysisError::Singular);
    }
    let coordinates = (0..n)
        .map(|i| {
            let mut cols = m.columns().to_vec();
            cols[i] = target.clone();
            determinant_of_columns(&cols)
        })
        .collect();
    Ok(CramerCoordinates {
        determinant,
        coordinates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{compute_q, lcm_lower_bound};
    use crate::graph::LabeledGraph;
    use crate::poly::CoeffRing;
    use crate::ring::Ring;

    fn fig2() -> LabeledGraph {
        LabeledGraph::cycle(Ring::Integer, vec![4.into(), 5.into(), 2.into()]).unwrap()
    }

    fn matrix(g: &LabeledGraph, cols: &[&[i64]]) -> SplineMatrix {
        SplineMatrix::new(g, cols.iter().map(|c| Spline::from_ints(c)).collect()).unwrap()
    }

    #[test]
    fn hnf_basis_is_accepted() {
        let g = fig2();
        let q = compute_q(&g).unwrap();
        let v = check_basis(&matrix(&g, &[&[1, 1, 1], &[0, 4, 4], &[0, 0, 10]]), &q).unwrap();
        assert_eq!(v.decision, Decision::Basis);
        assert_eq!(v.unit_factor, Some(1.into()));
    }

    #[test]
    fn scaled_column_is_rejected() {
        let g = fig2();
        let q = compute_q(&g).unwrap();
        let v = check_basis(&matrix(&g, &[&[1, 1, 1], &[0, 4, 4], &[0, 0, 20]]), &q).unwrap();
        assert_eq!(v.decision, Decision::NotBasis);
        assert_eq!(v.determinant, 80.into());
    }

    #[test]
    fn unimodular_recombination_keeps_basis() {
        let g = fig2();
        let q = compute_q(&g).unwrap();
        // columns B1 + B2, B2, -B3: transform determinant -1
        let v = check_basis(&matrix(&g, &[&[1, 5, 5], &[0, 4, 4], &[0, 0, -10]]), &q).unwrap();
        assert_eq!(v.decision, Decision::Basis);
        assert_eq!(v.unit_factor, Some((-1).into()));
    }

    #[test]
    fn lcm_regime_is_one_directional() {
        let g = fig2();
        let lcm = lcm_lower_bound(&g).unwrap();
        let v = check_basis(&matrix(&g, &[&[1, 1, 1], &[0, 4, 4], &[0, 0, 10]]), &lcm).unwrap();
        assert_eq!(v.decision, Decision::Undecided);
        let zero = check_basis(&matrix(&g, &[&[1, 1, 1], &[0, 4, 4], &[0, 4, 4]]), &lcm).unwrap();
        assert_eq!(zero.decision, Decision::NotBasis);
    }

    #[test]
    fn polynomial_example_basis() {
        let r = Ring::polynomial(CoeffRing::Rat, &["x", "y"]);
        let labels = ["x", "y", "x+y"].iter().map(|t| r.parse(t).unwrap()).collect();
        let g = LabeledGraph::cycle(r.clone(), labels).unwrap();
        let cols = ["1,1,1", "0,x,x+y", "0,0,y*(x+y)"]
            .iter()
            .map(|t| Spline::parse(&r, t).unwrap())
            .collect();
        let v = check_basis(&SplineMatrix::new(&g, cols).unwrap(), &compute_q(&g).unwrap()).unwrap();
        assert!(v.is_basis());
        assert_eq!(v.unit_factor, Some(r.one()));
    }

    #[test]
    fn cramer_coordinates() {
        let g = fig2();
        let m = matrix(&g, &[&[1, 1, 1], &[0, 4, 4], &[0, 0, 10]]);
        let x = cramer_membership(&m, &Spline::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(x.coordinates, vec![40.into(), 0.into(), 0.into()]);
        let x = cramer_membership(&m, &Spline::from_ints(&[3, 15, 5])).unwrap();
        assert_eq!(x.coordinates, vec![120.into(), 120.into(), (-40).into()]);
        let x = cramer_membership(&m, &Spline::from_ints(&[0, 0, 0])).unwrap();
        assert!(x.coordinates.iter().all(RingElement::is_zero));

        let singular = matrix(&g, &[&[1, 1, 1], &[0, 4, 4], &[0, 8, 8]]);
        assert_eq!(
            cramer_membership(&singular, &Spline::from_ints(&[1, 1, 1])).unwrap_err(),
            AnalysisError::Singular
        );
    }
}
