#![allow(dead_code)]

use gspline::{CoeffRing, LabeledGraph, Ring, RingElement, Spline};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Integer test graph described by plain `i64` data so oracles never touch
/// library arithmetic.
#[derive(Clone, Debug)]
pub struct IntGraph {
    pub name: &'static str,
    pub n: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl IntGraph {
    pub fn build(&self) -> LabeledGraph {
        LabeledGraph::new(
            Ring::Integer,
            (1..=self.n).map(|i| format!("v{i}")).collect(),
            self.edges
                .iter()
                .map(|&(u, v, a)| (u, v, RingElement::from(a)))
                .collect(),
        )
        .unwrap()
    }

    pub fn is_spline(&self, f: &[i64]) -> bool {
        self.edges.iter().all(|&(u, v, a)| (f[u] - f[v]) % a == 0)
    }

    /// Every integer spline with entries in `[-bound, bound]`, by backtracking
    /// over vertices and checking each edge once both ends are assigned.
    pub fn enumerate_splines(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut f = vec![0i64; self.n];
        self.extend(0, bound, &mut f, &mut out);
        out
    }

    fn extend(&self, k: usize, bound: i64, f: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == self.n {
            out.push(f.clone());
            return;
        }
        for value in -bound..=bound {
            f[k] = value;
            let ok = self.edges.iter().all(|&(u, v, a)| {
                let (lo, hi) = if u < v { (u, v) } else { (v, u) };
                hi != k || lo > k || (f[u] - f[v]) % a == 0
            });
            if ok {
                self.extend(k + 1, bound, f, out);
            }
        }
    }
}

pub fn int_corpus() -> Vec<IntGraph> {
    vec![
        IntGraph {
            name: "C3(4,5,2)",
            n: 3,
            edges: vec![(0, 1, 4), (1, 2, 5), (2, 0, 2)],
        },
        IntGraph {
            name: "C3(4,5,1)",
            n: 3,
            edges: vec![(0, 1, 4), (1, 2, 5), (2, 0, 1)],
        },
        IntGraph {
            name: "P2(7)",
            n: 2,
            edges: vec![(0, 1, 7)],
        },
        IntGraph {
            name: "P4(2,3,4)",
            n: 4,
            edges: vec![(0, 1, 2), (1, 2, 3), (2, 3, 4)],
        },
        IntGraph {
            name: "C4(2,3,2,3)",
            n: 4,
            edges: vec![(0, 1, 2), (1, 2, 3), (2, 3, 2), (3, 0, 3)],
        },
        IntGraph {
            name: "C3(2,3,5)+multi(v1v2:4)",
            n: 3,
            edges: vec![(0, 1, 2), (1, 2, 3), (2, 0, 5), (0, 1, 4)],
        },
        IntGraph {
            name: "K4(2,2,2,2,2,2)",
            n: 4,
            edges: vec![(0, 1, 2), (0, 2, 2), (0, 3, 2), (1, 2, 2), (1, 3, 2), (2, 3, 2)],
        },
    ]
}

pub fn qxy() -> Ring {
    Ring::polynomial(CoeffRing::Rat, &["x", "y"])
}

pub fn poly_cycle(ring: &Ring, labels: &[&str]) -> LabeledGraph {
    LabeledGraph::cycle(
        ring.clone(),
        labels.iter().map(|t| ring.parse(t).unwrap()).collect(),
    )
    .unwrap()
}

pub fn poly_corpus() -> Vec<(&'static str, LabeledGraph)> {
    let zx = Ring::polynomial(CoeffRing::Int, &["x"]);
    vec![
        ("C3(x,y,x+y)", poly_cycle(&qxy(), &["x", "y", "x+y"])),
        ("C3(x^2,y^2,(x+y)^2)", poly_cycle(&qxy(), &["x^2", "y^2", "(x+y)^2"])),
        ("C3(x+1,2,x) over ZZ[x]", poly_cycle(&zx, &["x+1", "2", "x"])),
        ("C3(x*y,x,y^2)", poly_cycle(&qxy(), &["x*y", "x", "y^2"])),
    ]
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random element of ℚ[x,y] (integer coefficients in `[-c, c]`, total
/// degree at most `deg`).
pub fn random_qxy(rng: &mut ChaCha8Rng, deg: u32, c: i64) -> RingElement {
    let ring = qxy();
    let mut text = String::from("0");
    for i in 0..=deg {
        for j in 0..=(deg - i) {
            if rng.gen_bool(0.5) {
                let k = rng.gen_range(-c..=c);
                text.push_str(&format!(" + ({k})*x^{i}*y^{j}"));
            }
        }
    }
    ring.parse(&text).unwrap()
}

pub fn random_nonzero_qxy(rng: &mut ChaCha8Rng, deg: u32, c: i64) -> RingElement {
    loop {
        let p = random_qxy(rng, deg, c);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_nonzero_int(rng: &mut ChaCha8Rng, range: i64) -> RingElement {
    loop {
        let v = rng.gen_range(-range..=range);
        if v != 0 {
            return v.into();
        }
    }
}

/// Random integer matrix with determinant +-1, built from elementary
/// column operations and swaps.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = rng.gen_range(-2..=2);
                for row in m.iter_mut() {
                    row[i] += k * row[j];
                }
            }
            1 => {
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for row in m.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    m
}

/// `columns * u` for integer splines.
pub fn recombine(columns: &[Spline], u: &[Vec<i64>]) -> Vec<Spline> {
    let n = columns.len();
    (0..n)
        .map(|j| {
            let coeffs: Vec<RingElement> = (0..n).map(|i| RingElement::from(u[i][j])).collect();
            gspline::spline::spline_combination(&coeffs, columns).unwrap()
        })
        .collect()
}

pub fn to_i64(s: &Spline) -> Vec<i64> {
    s.entries()
        .iter()
        .map(|e| i64::try_from(e.as_int().unwrap()).unwrap())
        .collect()
}

pub fn associated(a: &RingElement, b: &RingElement) -> bool {
    a.normalize() == b.normalize()
}

/// `gcd(a x, b x) ≐ x gcd(a, b)`.
pub fn gcd_scaling_holds(a: &RingElement, b: &RingElement, x: &RingElement) -> bool {
    let lhs = (a * x).gcd(&(b * x)).unwrap();
    let rhs = x * &a.gcd(b).unwrap();
    associated(&lhs, &rhs)
}

/// With `gcd(a, b)` a unit, `a | b c` exactly when `a | c`.
pub fn euclid_holds(a: &RingElement, b: &RingElement, c: &RingElement) -> bool {
    if !a.gcd(b).unwrap().is_unit() {
        return true;
    }
    a.divides(&(b * c)).unwrap() == a.divides(c).unwrap()
}

/// Coprime `a`, `b` stay coprime after raising both to the `m`-th power.
pub fn coprime_powers_hold(a: &RingElement, b: &RingElement, m: u32) -> bool {
    !a.gcd(b).unwrap().is_unit() || a.pow(m).gcd(&b.pow(m)).unwrap().is_unit()
}

pub fn pairwise_coprime(items: &[RingElement]) -> bool {
    (0..items.len()).all(|i| (i + 1..items.len()).all(|j| items[i].gcd(&items[j]).unwrap().is_unit()))
}

/// For a pairwise coprime tuple, the products omitting one entry each have
/// a unit gcd.
pub fn hat_holds(items: &[RingElement]) -> bool {
    if !pairwise_coprime(items) {
        return true;
    }
    let ring = items[0].ring();
    let mut g = ring.zero();
    for i in 0..items.len() {
        let hat = RingElement::product(
            &ring,
            items.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| a),
        );
        g = if g.is_zero() { hat } else { g.gcd(&hat).unwrap() };
    }
    g.is_unit()
}
