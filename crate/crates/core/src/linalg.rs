//! Exact dense linear algebra shared by the lattice and basis code:
//! fraction-free determinants over any integral domain and Gaussian
//! elimination over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::RingElement;

/// The operations fraction-free elimination needs from an integral domain.
pub trait ExactDomain: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / den`, where the caller guarantees `den` divides `self`.
    fn div_exact(&self, den: &Self) -> Self;
}

impl ExactDomain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, den: &Self) -> Self {
        let (q, r) = self.div_rem(den);
        debug_assert!(Zero::is_zero(&r), "inexact division {self} / {den}");
        q
    }
}

impl ExactDomain for RingElement {
    fn zero_like(&self) -> Self {
        RingElement::zero_like(self)
    }
    fn one_like(&self) -> Self {
        RingElement::one_like(self)
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, den: &Self) -> Self {
        self.exact_div(den)
            .expect("Bareiss divisor is nonzero and in the same ring")
            .expect("Bareiss division is exact")
    }
}

/// Determinant of a square matrix given as rows, by Bareiss fraction-free
/// elimination. Every intermediate entry is a minor of the input, so all
/// divisions are exact in any integral domain.
///
/// Panics on a non-square or empty matrix.
pub fn bareiss_determinant<T: ExactDomain>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    assert!(n > 0, "determinant of an empty matrix");
    assert!(rows.iter().all(|r| r.len() == n), "matrix is not square");
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let mut sign_flip = false;
    let mut prev = a[0][0].one_like();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return a[0][0].zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Outcome of solving `A x = b` over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// One solution among many, with free variables set to zero.
    Particular(Vec<BigRational>),
    Inconsistent,
}

impl Solution {
    pub fn values(&self) -> Option<&[BigRational]> {
        match self {
            Solution::Unique(v) | Solution::Particular(v) => Some(v),
            Solution::Inconsistent => None,
        }
    }
}

/// Solves `A x = b` over ℚ by reduced row echelon form.
///
/// `a` is given as rows; every row must have `ncols` entries.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Solution {
    assert_eq!(a.len(), b.len());
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), ncols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..=ncols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let v = &m[i][j] - &(&f * &m[r][j]);
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return Solution::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    if pivots.len() == ncols {
        Solution::Unique(x)
    } else {
        Solution::Particular(x)
    }
}
