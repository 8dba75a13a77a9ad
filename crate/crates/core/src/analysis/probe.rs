use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{determinant_of_columns, AnalysisError};
use crate::graph::LabeledGraph;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingElement};
use crate::spline::{flow_up_witness, spline_combination, Spline};
use crate::zlattice::integer_flow_up_basis;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeOutcome {
    pub trials: usize,
    /// First `n`-subset whose determinant `q` fails to divide.
    pub counterexample: Option<Vec<Spline>>,
    pub counterexample_determinant: Option<RingElement>,
}

impl ProbeOutcome {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Spline generators used by the probe: the constant spline, the flow-up
/// witnesses, and over ℤ the columns of the HNF basis.
fn generator_pool(g: &LabeledGraph) -> Result<(Vec<Spline>, Vec<Spline>), AnalysisError> {
    let n = g.vertex_count();
    let mut canonical = vec![Spline::constant(g.ring().one(), n)];
    for i in 1..n {
        canonical.push(flow_up_witness(g, i)?);
    }
    let mut pool = canonical.clone();
    if *g.ring() == Ring::Integer {
        canonical = integer_flow_up_basis(g)?.columns();
        pool.extend(canonical.iter().cloned());
    }
    Ok((canonical, pool))
}

fn random_scalar(ring: &Ring, rng: &mut ChaCha8Rng) -> RingElement {
    match ring {
        Ring::Polynomial { coeffs, vars } => {
            let c0 = ring.from_int(rng.gen_range(-2i64..=2));
            if vars.is_empty() {
                return c0;
            }
            let x = Polynomial::variable(*coeffs, vars.clone(), rng.gen_range(0..vars.len()));
            let c1 = ring.from_int(rng.gen_range(-2i64..=2));
            &c0 + &(&c1 * &RingElement::Poly(x))
        }
        _ => ring.from_int(rng.gen_range(-3i64..=3)),
    }
}

/// Checks `q | det` on random `n`-subsets of splines.
///
/// Trial 0 is the canonical set (the HNF basis over ℤ, otherwise the
/// constant spline with the flow-up witnesses); later trials draw each
/// column as a random combination of the generator pool.
pub fn divides_all_dets_probe(
    g: &LabeledGraph,
    q: &RingElement,
    trials: usize,
    seed: u64,
) -> Result<ProbeOutcome, AnalysisError> {
    if trials == 0 {
        return Err(AnalysisError::NoTrials);
    }
    let n = g.vertex_count();
    let (canonical, pool) = generator_pool(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let columns = if trial == 0 {
            canonical.clone()
        } else {
            (0..n)
                .map(|_| {
                    let coeffs: Vec<RingElement> =
                        pool.iter().map(|_| random_scalar(g.ring(), &mut rng)).collect();
                    spline_combination(&coeffs, &pool)
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        let det = determinant_of_columns(&columns);
        if !q.divides(&det)? {
            return Ok(ProbeOutcome {
                trials: trial + 1,
                counterexample: Some(columns),
                counterexample_determinant: Some(det),
            });
        }
    }
    Ok(ProbeOutcome {
        trials,
        counterexample: None,
        counterexample_determinant: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> LabeledGraph {
        LabeledGraph::cycle(Ring::Integer, vec![4.into(), 5.into(), 2.into()]).unwrap()
    }

    #[test]
    fn lcm_and_q_divide_everything() {
        let g = fig2();
        assert!(divides_all_dets_probe(&g, &20.into(), 500, 7).unwrap().holds());
        assert!(divides_all_dets_probe(&g, &40.into(), 500, 7).unwrap().holds());
    }

    #[test]
    fn too_large_q_is_refuted_by_the_basis() {
        let out = divides_all_dets_probe(&fig2(), &80.into(), 500, 7).unwrap();
        assert!(!out.holds());
        assert_eq!(out.trials, 1);
        assert_eq!(out.counterexample_determinant, Some(40.into()));
        assert_eq!(
            out.counterexample.unwrap(),
            integer_flow_up_basis(&fig2()).unwrap().columns()
        );
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let g = fig2();
        let a = divides_all_dets_probe(&g, &3.into(), 50, 99).unwrap();
        let b = divides_all_dets_probe(&g, &3.into(), 50, 99).unwrap();
        assert_eq!(a, b);
    }
}
