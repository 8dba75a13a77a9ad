//! Integer splines as a lattice: Hermite normal form, the canonical
//! flow-up class basis over ℤ, and exact membership by back-substitution.
//!
//! Over ℤ the spline condition `a_k | f_i - f_j` is the linear system
//! `E f - D t = 0`, where `E` is the signed incidence matrix of the graph and
//! `D = diag(a_1, ..., a_m)`. The integer kernel of `[E | -D]` projected to
//! its first `n` coordinates is exactly the spline module. Because every
//! label is nonzero, `t` is determined by `f` and the projection is
//! injective, so the projected kernel basis is already a basis of the
//! spline lattice. Its column-style HNF is lower triangular with positive
//! diagonal: column `k` lies in flow-up class `k` and its diagonal entry is
//! the minimal positive leading term of that class.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::LabeledGraph;
use crate::linalg::bareiss_determinant;
use crate::ring::{Ring, RingElement};
use crate::spline::Spline;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("integer lattice computations need an integer ring, got {0}")]
    NotInteger(Ring),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        bareiss_determinant(&self.to_rows())
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// `col[target] -= factor * col[source]`
    fn sub_column_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] -= v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Column-style Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf {
    /// `hnf = m * transform`
    pub hnf: IntegerMatrix,
    /// Unimodular column transform.
    pub transform: IntegerMatrix,
    /// Row index of the pivot of each nonzero column, in column order.
    pub pivot_rows: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

/// Column-style HNF by unimodular column operations.
///
/// Rows are scanned top to bottom. For each row, a Euclidean reduction
/// over the not-yet-pivoted columns (always pivoting on the entry of
/// smallest absolute value) gathers the row gcd into the next pivot column
/// and zeroes the rest. The pivot is made positive and entries to its left
/// in the same row are reduced into `[0, pivot)`. Zero columns end up
/// trailing.
pub fn hermite_normal_form(m: &IntegerMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(m.cols);
    let mut pivot_rows = Vec::new();
    let mut pc = 0;
    for r in 0..h.rows {
        if pc == h.cols {
            break;
        }
        loop {
            let best = (pc..h.cols)
                .filter(|&c| !h[(r, c)].is_zero())
                .min_by(|&a, &b| h[(r, a)].abs().cmp(&h[(r, b)].abs()));
            let Some(best) = best else { break };
            h.swap_columns(pc, best);
            u.swap_columns(pc, best);
            let p = h[(r, pc)].clone();
            let mut finished = true;
            for c in pc + 1..h.cols {
                if h[(r, c)].is_zero() {
                    continue;
                }
                let q = h[(r, c)].div_floor(&p);
                h.sub_column_multiple(c, pc, &q);
                u.sub_column_multiple(c, pc, &q);
                if !h[(r, c)].is_zero() {
                    finished = false;
                }
            }
            if finished {
                break;
            }
        }
        if h[(r, pc)].is_zero() {
            continue;
        }
        if h[(r, pc)].is_negative() {
            h.negate_column(pc);
            u.negate_column(pc);
        }
        let p = h[(r, pc)].clone();
        for c in 0..pc {
            let q = h[(r, c)].div_floor(&p);
            h.sub_column_multiple(c, pc, &q);
            u.sub_column_multiple(c, pc, &q);
        }
        pivot_rows.push(r);
        pc += 1;
    }
    Hnf {
        hnf: h,
        transform: u,
        pivot_rows,
    }
}

/// A basis of the integer kernel `{x : m x = 0}`, as columns, or `None`
/// when the kernel is trivial.
pub fn integer_kernel(m: &IntegerMatrix) -> Option<IntegerMatrix> {
    let hnf = hermite_normal_form(m);
    let rank = hnf.rank();
    if rank == m.cols {
        return None;
    }
    let cols: Vec<Vec<BigInt>> = (rank..m.cols).map(|j| hnf.transform.column(j)).collect();
    Some(IntegerMatrix::from_columns(&cols))
}

fn integer_labels(g: &LabeledGraph) -> Result<Vec<BigInt>, LatticeError> {
    if *g.ring() != Ring::Integer {
        return Err(LatticeError::NotInteger(g.ring().clone()));
    }
    Ok(g.labels()
        .map(|l| l.as_int().expect("integer ring").clone())
        .collect())
}

/// Generators (as columns) of the lattice of integer splines on `g`.
pub fn spline_lattice_generators(g: &LabeledGraph) -> Result<IntegerMatrix, LatticeError> {
    let labels = integer_labels(g)?;
    let n = g.vertex_count();
    let m = labels.len();
    if m == 0 {
        return Ok(IntegerMatrix::identity(n));
    }
    let mut block = IntegerMatrix::zeros(m, n + m);
    for (k, (e, a)) in g.edges().iter().zip(&labels).enumerate() {
        block[(k, e.u)] += 1;
        block[(k, e.v)] -= 1;
        block[(k, n + k)] = -a;
    }
    let kernel = integer_kernel(&block).expect("kernel of [E | -D] has rank n");
    debug_assert_eq!(kernel.cols(), n);
    let mut projected = IntegerMatrix::zeros(n, kernel.cols());
    for i in 0..n {
        for j in 0..kernel.cols() {
            projected[(i, j)] = kernel[(i, j)].clone();
        }
    }
    Ok(projected)
}

/// Lower-triangular flow-up class basis of the integer splines, with
/// positive diagonal and off-diagonal row entries reduced into
/// `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfBasis {
    matrix: IntegerMatrix,
}

impl HnfBasis {
    /// `n x n` matrix whose column `k` is the `k`-th basis spline.
    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn column(&self, k: usize) -> Spline {
        Spline::new(self.matrix.column(k).into_iter().map(RingElement::Int).collect())
    }

    pub fn columns(&self) -> Vec<Spline> {
        (0..self.len()).map(|k| self.column(k)).collect()
    }

    /// Minimal leading terms `l_1, ..., l_n`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.len()).map(|k| self.matrix[(k, k)].clone()).collect()
    }

    /// `l_1 * ... * l_n`, the determinant of the basis.
    pub fn determinant(&self) -> BigInt {
        self.diagonal().iter().product()
    }
}

impl Serialize for HnfBasis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let columns: Vec<Vec<String>> = (0..self.len())
            .map(|k| self.matrix.column(k).iter().map(|v| v.to_string()).collect())
            .collect();
        let diagonal: Vec<String> = self.diagonal().iter().map(|v| v.to_string()).collect();
        let mut st = s.serialize_struct("HnfBasis", 2)?;
        st.serialize_field("columns", &columns)?;
        st.serialize_field("diagonal", &diagonal)?;
        st.end()
    }
}

/// The canonical flow-up class basis of the integer splines on `g`.
pub fn integer_flow_up_basis(g: &LabeledGraph) -> Result<HnfBasis, LatticeError> {
    let generators = spline_lattice_generators(g)?;
    let hnf = hermite_normal_form(&generators);
    let n = g.vertex_count();
    debug_assert_eq!(hnf.pivot_rows, (0..n).collect::<Vec<_>>());
    debug_assert!((0..n).all(|k| hnf.hnf[(k, k)].is_positive()));
    Ok(HnfBasis { matrix: hnf.hnf })
}

/// Integer coordinates of `candidate` in `basis`, by back-substitution
/// down the diagonal; `None` when some step is not divisible, i.e. the
/// candidate is not an integer spline.
pub fn lattice_membership(
    basis: &HnfBasis,
    candidate: &Spline,
) -> Result<Option<Vec<BigInt>>, LatticeError> {
    let n = basis.len();
    if candidate.len() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            got: candidate.len(),
        });
    }
    let mut residual = candidate
        .entries()
        .iter()
        .map(|e| {
            e.as_int()
                .cloned()
                .ok_or_else(|| LatticeError::NotInteger(e.ring()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = &basis.matrix;
    let mut coords = Vec::with_capacity(n);
    for k in 0..n {
        let (c, rem) = residual[k].div_rem(&m[(k, k)]);
        if !rem.is_zero() {
            return Ok(None);
        }
        for (i, r) in residual.iter_mut().enumerate().skip(k) {
            *r -= &c * &m[(i, k)];
        }
        coords.push(c);
    }
    Ok(Some(coords))
}
