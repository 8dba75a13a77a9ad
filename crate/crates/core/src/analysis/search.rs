//! Bounded search for a flow-up class basis over ℚ[x_1, ..., x_k].
//!
//! With pairwise coprime labels, a flow-up set `B_1, ..., B_n` is a basis
//! iff the product of its leading terms is a unit multiple of
//! `Q = a_1 ... a_m`. Leading terms of a basis therefore split the
//! irreducible factors of `Q` among the `n` positions. The search tries
//! every such split (up to the symmetry of repeated factors). For a split,
//! position `k` asks for a spline `(0, ..., 0, p_k, f_{k+1}, ..., f_n)` with
//! `p_k` the product of the factors sent to `k`. Writing each unknown entry
//! and each edge quotient `t_e` (with `f_u - f_v = a_e t_e`) as a
//! polynomial with unknown coefficients up to total degree `D` turns the
//! edge conditions into a linear system over ℚ. A split succeeds when all
//! of its position systems are solvable.
//!
//! Failure of every split certifies that no flow-up basis has all entries
//! of degree at most `D`. It is not an unconditional non-existence proof.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{check_basis, AnalysisError, BasisVerdict, QInvariant, QProvenance, SplineMatrix};
use crate::graph::LabeledGraph;
use crate::linalg::solve_rational;
use crate::poly::{CoeffRing, Monomial, Polynomial};
use crate::ring::{Ring, RingElement};
use crate::spline::Spline;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchOutcome {
    Found {
        basis: Vec<Spline>,
        leading_terms: Vec<RingElement>,
        verdict: BasisVerdict,
        /// Splits tried, including the successful one.
        assignments_examined: usize,
    },
    Nonexistent {
        degree_bound: u32,
        /// Distinct splits tried (repeated factors identified).
        assignments_examined: usize,
        /// `n^(number of factors)`: splits before identifying repeats.
        raw_assignments: u128,
        /// Distinct per-position linear systems solved.
        systems_solved: usize,
    },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

/// Searches for a flow-up class basis whose leading terms are products of
/// the given factors of `Q` and whose entries have total degree at most
/// `degree_bound`.
pub fn flow_up_search_bounded(
    g: &LabeledGraph,
    q_factors: &[RingElement],
    degree_bound: u32,
) -> Result<SearchOutcome, AnalysisError> {
    let Ring::Polynomial {
        coeffs: CoeffRing::Rat,
        ..
    } = g.ring()
    else {
        return Err(AnalysisError::UnsupportedRing(g.ring().clone()));
    };
    if !g.pairwise_coprime_labels() {
        return Err(AnalysisError::NonCoprimeLabels);
    }
    let q = RingElement::product(g.ring(), g.labels());
    let product = RingElement::product(g.ring(), q_factors);
    if !product.associates(&q) {
        return Err(AnalysisError::FactorProductMismatch { product, q });
    }
    let max_label = g
        .labels()
        .map(|a| poly(a).total_degree().unwrap_or(0))
        .max()
        .unwrap_or(0);
    if degree_bound < max_label {
        return Err(AnalysisError::DegreeBoundTooSmall {
            bound: degree_bound,
            needed: max_label,
        });
    }

    let n = g.vertex_count();
    let factors = distinct_factors(q_factors);
    let splits = enumerate_splits(&factors, n);

    // Every (position, factor counts) pair that some split needs.
    let mut keys: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut key_index: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    for split in &splits {
        for (pos, counts) in split.iter().enumerate() {
            let key = (pos, counts.clone());
            if !key_index.contains_key(&key) {
                key_index.insert(key.clone(), keys.len());
                keys.push(key);
            }
        }
    }
    let solved: Vec<Option<Spline>> = keys
        .par_iter()
        .map(|(pos, counts)| {
            let lt = leading_term(g.ring(), &factors, counts);
            solve_position(g, *pos, &lt, degree_bound)
        })
        .collect();

    let q_inv = QInvariant {
        value: q,
        provenance: QProvenance::CoprimeProduct,
    };
    for (i, split) in splits.iter().enumerate() {
        let columns: Option<Vec<Spline>> = split
            .iter()
            .enumerate()
            .map(|(pos, counts)| solved[key_index[&(pos, counts.clone())]].clone())
            .collect();
        let Some(columns) = columns else { continue };
        let matrix = SplineMatrix::new(g, columns.clone())?;
        let verdict = check_basis(&matrix, &q_inv)?;
        debug_assert!(verdict.is_basis(), "leading terms multiply to Q");
        if verdict.is_basis() {
            let leading_terms = columns
                .iter()
                .map(|c| c.leading_term().cloned())
                .collect::<Result<_, _>>()?;
            return Ok(SearchOutcome::Found {
                basis: columns,
                leading_terms,
                verdict,
                assignments_examined: i + 1,
            });
        }
    }
    let total: u32 = factors.iter().map(|(_, m)| m).sum();
    Ok(SearchOutcome::Nonexistent {
        degree_bound,
        assignments_examined: splits.len(),
        raw_assignments: (n as u128).pow(total),
        systems_solved: keys.len(),
    })
}

fn poly(r: &RingElement) -> &Polynomial {
    r.as_poly().expect("polynomial ring")
}

/// Groups factors equal up to a unit; returns normalized representatives
/// with multiplicities, in first-seen order.
fn distinct_factors(factors: &[RingElement]) -> Vec<(RingElement, u32)> {
    let mut out: Vec<(RingElement, u32)> = Vec::new();
    for f in factors {
        let f = f.normalize();
        match out.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += 1,
            None => out.push((f, 1)),
        }
    }
    out
}

/// All ways to write `total` as an ordered sum of `parts` naturals, with
/// the first part growing slowest-first (lexicographically ascending).
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Each split is indexed `[position][factor] -> count`.
fn enumerate_splits(factors: &[(RingElement, u32)], n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut splits = vec![vec![Vec::with_capacity(factors.len()); n]];
    for (_, m) in factors {
        let comps = compositions(*m, n);
        let mut next = Vec::with_capacity(splits.len() * comps.len());
        for split in &splits {
            for comp in &comps {
                let mut s = split.clone();
                for (pos, &c) in comp.iter().enumerate() {
                    s[pos].push(c);
                }
                next.push(s);
            }
        }
        splits = next;
    }
    splits
}

fn leading_term(ring: &Ring, factors: &[(RingElement, u32)], counts: &[u32]) -> RingElement {
    factors
        .iter()
        .zip(counts)
        .fold(ring.one(), |acc, ((f, _), &c)| &acc * &f.pow(c))
}

/// Exponent vectors of total degree at most `d`.
fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == nvars {
            out.push(Monomial::from_exponents(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// A spline `(0, ..., 0, lt, f_{pos+1}, ..., f_n)` with every entry of
/// total degree at most `bound`, if one exists.
fn solve_position(g: &LabeledGraph, pos: usize, lt: &RingElement, bound: u32) -> Option<Spline> {
    let lt = poly(lt);
    if lt.total_degree().unwrap_or(0) > bound {
        return None;
    }
    let n = g.vertex_count();
    let nvars = lt.nvars();
    let mons = monomials_up_to(nvars, bound);
    let mon_index: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // unknowns: coefficients of f_j (j > pos), then of each edge quotient
    let free_entries = n - pos - 1;
    let entry_var = |j: usize, mono: usize| (j - pos - 1) * mons.len() + mono;
    let mut quotient_offsets = Vec::new();
    let mut quotient_index = Vec::new();
    let mut next = free_entries * mons.len();
    for e in g.edges() {
        let deg_a = poly(&e.label).total_degree().unwrap_or(0);
        let qm = monomials_up_to(nvars, bound - deg_a);
        let idx: HashMap<Monomial, usize> = qm.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        quotient_offsets.push(next);
        next += idx.len();
        quotient_index.push(idx);
    }
    let nunknowns = next;

    let mut rows = Vec::with_capacity(g.edges().len() * mons.len());
    let mut rhs = Vec::with_capacity(rows.capacity());
    for (k, e) in g.edges().iter().enumerate() {
        let label = poly(&e.label);
        for mono in &mons {
            let mut row = vec![BigRational::zero(); nunknowns];
            let mut known = BigRational::zero();
            for (vertex, sign) in [(e.u, BigRational::one()), (e.v, -BigRational::one())] {
                if vertex > pos {
                    row[entry_var(vertex, mon_index[mono])] += &sign;
                } else if vertex == pos {
                    known += sign * lt.coefficient(mono);
                }
            }
            for (alpha, c) in label.terms() {
                let shifted = mono
                    .exponents()
                    .iter()
                    .zip(alpha.exponents())
                    .map(|(m, a)| m.checked_sub(*a))
                    .collect::<Option<Vec<u32>>>();
                if let Some(beta) = shifted {
                    if let Some(&i) = quotient_index[k].get(&Monomial::from_exponents(beta)) {
                        row[quotient_offsets[k] + i] -= c;
                    }
                }
            }
            rows.push(row);
            rhs.push(-known);
        }
    }

    let solution = solve_rational(&rows, &rhs, nunknowns);
    let values = solution.values()?;
    let ring = g.ring();
    let vars = lt.variables().clone();
    let mut entries = vec![ring.zero(); n];
    entries[pos] = RingElement::Poly(lt.clone());
    for (j, entry) in entries.iter_mut().enumerate().skip(pos + 1) {
        let terms = mons
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), values[entry_var(j, i)].clone()));
        *entry = RingElement::Poly(Polynomial::from_terms(CoeffRing::Rat, vars.clone(), terms));
    }
    Some(Spline::new(entries))
}
