//! Acceptance suite. Runs with a custom harness so every criterion prints
//! one PASS/FAIL line; the process exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use common::*;
use gspline::analysis::{
    c3_flowup_obstruction, check_basis, compute_q, cramer_membership, flow_up_search_bounded,
    lcm_lower_bound, spline_determinant, Decision, IdealMembership, QProvenance, SearchOutcome,
    SplineMatrix,
};
use gspline::spline::{check_spline, flow_up_witness, is_spline, spline_combination};
use gspline::zlattice::{hermite_normal_form, integer_flow_up_basis, lattice_membership, IntegerMatrix};
use gspline::{LabeledGraph, RingElement, Spline};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn data(name: &str) -> LabeledGraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    LabeledGraph::from_json(&text).unwrap()
}

fn int(v: i64) -> RingElement {
    RingElement::from(v)
}

fn det3(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Span oracle on plain integers: every target must have integral Cramer
/// coordinates in the candidate columns.
fn spans_all(columns: &[Vec<i64>], targets: &[Vec<i64>]) -> bool {
    let mat = |cols: &[&Vec<i64>]| {
        let mut m = [[0i128; 3]; 3];
        for (j, c) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = c[i] as i128;
            }
        }
        m
    };
    let d = det3(mat(&[&columns[0], &columns[1], &columns[2]]));
    if d == 0 {
        return false;
    }
    targets.iter().all(|t| {
        (0..3).all(|k| {
            let mut cols = vec![&columns[0], &columns[1], &columns[2]];
            cols[k] = t;
            det3(mat(&cols)) % d == 0
        })
    })
}

fn criterion_1() -> Outcome {
    let s = Spline::from_ints(&[3, 15, 5]);
    for file in ["fig2.json", "fig2-text.json"] {
        let g = data(file);
        ensure!(is_spline(&g, &s).unwrap(), "(3,15,5) rejected on {file}");
    }
    let g = data("fig2.json");
    let v = check_spline(&g, &Spline::from_ints(&[0, 1, 0])).unwrap();
    let names: Vec<String> = v
        .iter()
        .map(|x| format!("{}{}", g.vertices()[x.u], g.vertices()[x.v]))
        .collect();
    ensure!(names == ["v1v2", "v2v3"], "violations {names:?}");
    Ok("(3,15,5) accepted on labels 4,5,2 and 4,5,1; (0,1,0) violates v1v2 and v2v3".into())
}

fn criterion_2() -> Outcome {
    let g = int_corpus().into_iter().find(|g| g.name == "C3(4,5,2)").unwrap();
    let lg = data("fig2.json");
    let basis = integer_flow_up_basis(&lg).unwrap();
    let diag: Vec<BigInt> = [1, 4, 10].iter().map(|&v| BigInt::from(v)).collect();
    ensure!(basis.diagonal() == diag, "diagonal {:?}", basis.diagonal());
    ensure!(basis.determinant() == BigInt::from(40), "det {}", basis.determinant());
    let all = g.enumerate_splines(40);
    for f in &all {
        let s = Spline::from_ints(f);
        ensure!(lattice_membership(&basis, &s).unwrap().is_some(), "{f:?} not a member");
        match f.iter().position(|&v| v != 0) {
            Some(1) => ensure!(f[1] <= 0 || f[1] >= 4, "class 1 leading term {}", f[1]),
            Some(2) => ensure!(f[2] <= 0 || f[2] >= 10, "class 2 leading term {}", f[2]),
            _ => {}
        }
    }
    Ok(format!("diagonal (1,4,10), det 40; {} enumerated splines all members", all.len()))
}

fn criterion_3() -> Outcome {
    let lg = data("fig2.json");
    let g = &int_corpus()[0];
    let basis = integer_flow_up_basis(&lg).unwrap().columns();
    let q = compute_q(&lg).unwrap();
    ensure!(q.provenance == QProvenance::PidDiagonal, "provenance {:?}", q.provenance);
    let targets = g.enumerate_splines(10);
    let mut rng = seeded(3);
    let (mut accepted, mut rejected) = (0, 0);
    for trial in 0..200 {
        let u = random_unimodular(&mut rng, 3);
        let mut cols = recombine(&basis, &u);
        if trial >= 100 {
            let k = [2, 3, 5][rng.gen_range(0..3)];
            let j = rng.gen_range(0..3);
            cols[j] = cols[j].scale(&int(k)).unwrap();
        }
        let plain: Vec<Vec<i64>> = cols.iter().map(to_i64).collect();
        let oracle = spans_all(&plain, &targets);
        let verdict = check_basis(&SplineMatrix::new(&lg, cols).unwrap(), &q).unwrap();
        ensure!(verdict.is_basis() == oracle, "trial {trial}: verdict {:?}, oracle {oracle}", verdict.decision);
        if trial < 100 {
            let unit = verdict.unit_factor.clone();
            ensure!(unit == Some(int(1)) || unit == Some(int(-1)), "trial {trial}: unit {unit:?}");
            accepted += 1;
        } else {
            ensure!(verdict.decision == Decision::NotBasis, "trial {trial}: {:?}", verdict.decision);
            rejected += 1;
        }
    }
    Ok(format!("{accepted} recombinations accepted with unit +-1, {rejected} scaled sets rejected, oracle agrees"))
}

fn criterion_4() -> Outcome {
    let g = data("xy.json");
    let ring = g.ring().clone();
    let factors: Vec<RingElement> = ["x", "y", "x+y"].iter().map(|t| ring.parse(t).unwrap()).collect();
    let out = flow_up_search_bounded(&g, &factors, 2).unwrap();
    let SearchOutcome::Found { basis, verdict, .. } = out else {
        return Err(format!("no basis found: {out:?}"));
    };
    let det = spline_determinant(&SplineMatrix::new(&g, basis.clone()).unwrap());
    let target = ring.parse("x*y*(x+y)").unwrap();
    let u = det.exact_div(&target).unwrap();
    ensure!(
        u.as_ref().is_some_and(|u| u.as_poly().unwrap().is_constant() && !u.is_zero()),
        "det {det} is not a constant multiple of x*y*(x+y)"
    );
    ensure!(verdict.is_basis(), "check_basis: {:?}", verdict.decision);
    let shown: Vec<String> = basis.iter().map(|s| s.to_string()).collect();
    Ok(format!("basis {}; det = {det}", shown.join(" ")))
}

fn criterion_5() -> Outcome {
    let g = data("squares.json");
    let ring = g.ring().clone();
    let factors: Vec<RingElement> =
        ["x", "x", "y", "y", "x+y", "x+y"].iter().map(|t| ring.parse(t).unwrap()).collect();
    match flow_up_search_bounded(&g, &factors, 6).unwrap() {
        SearchOutcome::Nonexistent {
            degree_bound,
            assignments_examined,
            raw_assignments,
            systems_solved,
        } => {
            ensure!(degree_bound == 6 && raw_assignments == 729, "bound {degree_bound}, raw {raw_assignments}");
            Ok(format!(
                "NONEXISTENT(6): {raw_assignments} assignments ({assignments_examined} distinct), \
                 {systems_solved} systems, all infeasible"
            ))
        }
        found => Err(format!("unexpected basis: {found:?}")),
    }
}

fn criterion_6() -> Outcome {
    let g = data("zx-obstruction.json");
    let ring = g.ring().clone();
    let p = |t: &str| ring.parse(t).unwrap();
    let (a, b, c) = (p("x+1"), p("2"), p("x"));
    for (l, r) in [(&a, &b), (&a, &c), (&b, &c)] {
        let gcd = l.gcd(r).unwrap();
        ensure!(gcd.is_unit(), "gcd({l}, {r}) = {gcd}");
    }
    let member = IdealMembership::EvenConstantTerm;
    ensure!(!member.contains(&a), "x+1 reported in <2, x>");
    let obstructed = c3_flowup_obstruction(&a, &b, &c, |r| member.contains(r)).unwrap();
    ensure!(obstructed, "not obstructed");
    let from_file = gspline::analysis::c3_obstruction_for_graph(&g, member).unwrap();
    ensure!(from_file, "graph file not obstructed");
    Ok("labels pairwise coprime, x+1 not in <2, x>: obstructed".into())
}

fn lemma_round(rng: &mut ChaCha8Rng, over_z: bool) -> Result<(), String> {
    let pick = |rng: &mut ChaCha8Rng| {
        if over_z {
            random_nonzero_int(rng, 200)
        } else {
            random_nonzero_qxy(rng, 3, 5)
        }
    };
    let (a, b, x) = (pick(rng), pick(rng), pick(rng));
    ensure!(gcd_scaling_holds(&a, &b, &x), "gcd scaling: {a}, {b}, {x}");
    let c = if rng.gen_bool(0.5) { &a * &pick(rng) } else { pick(rng) };
    ensure!(euclid_holds(&a, &b, &c), "euclid: {a}, {b}, {c}");
    for m in [2, 3] {
        ensure!(coprime_powers_hold(&a, &b, m), "coprime powers m={m}: {a}, {b}");
    }
    let tuple: Vec<RingElement> = loop {
        let n = rng.gen_range(2..=4);
        let t: Vec<RingElement> = (0..n).map(|_| pick(rng)).collect();
        if pairwise_coprime(&t) {
            break t;
        }
    };
    ensure!(hat_holds(&tuple), "hat: {tuple:?}");
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = seeded(7);
    for over_z in [true, false] {
        for _ in 0..500 {
            lemma_round(&mut rng, over_z)?;
        }
    }
    Ok("4 lemmas x 500 instances over ZZ and QQ[x,y] (deg <= 3): no failures".into())
}

fn random_splines(g: &LabeledGraph, rng: &mut ChaCha8Rng) -> Vec<Spline> {
    let n = g.vertex_count();
    let ring = g.ring();
    let mut pool = vec![Spline::constant(ring.one(), n)];
    pool.extend((1..n).map(|i| flow_up_witness(g, i).unwrap()));
    if *ring == gspline::Ring::Integer {
        pool.extend(integer_flow_up_basis(g).unwrap().columns());
    }
    let scalar = |rng: &mut ChaCha8Rng| {
        if ring.is_polynomial() {
            let text = format!(
                "({}) + ({})*x + ({})*x^2",
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3)
            );
            ring.parse(&text).unwrap()
        } else {
            ring.from_int(rng.gen_range(-9..=9))
        }
    };
    (0..n)
        .map(|_| {
            let coeffs: Vec<RingElement> = pool.iter().map(|_| scalar(rng)).collect();
            spline_combination(&coeffs, &pool).unwrap()
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let mut rng = seeded(8);
    let mut graphs: Vec<(String, LabeledGraph)> =
        int_corpus().iter().map(|g| (g.name.to_string(), g.build())).collect();
    graphs.extend(poly_corpus().into_iter().map(|(n, g)| (n.to_string(), g)));
    for (name, g) in &graphs {
        let lcm = lcm_lower_bound(g).unwrap().value;
        for _ in 0..500 {
            let cols = random_splines(g, &mut rng);
            let det = spline_determinant(&SplineMatrix::new(g, cols).unwrap());
            ensure!(lcm.divides(&det).unwrap(), "{name}: lcm {lcm} does not divide {det}");
        }
    }
    let fig2 = data("fig2.json");
    let det = integer_flow_up_basis(&fig2).unwrap().determinant();
    let lcm = lcm_lower_bound(&fig2).unwrap().value;
    ensure!(det == BigInt::from(40) && lcm == int(20), "det {det}, lcm {lcm}");
    Ok(format!("500 sets on each of {} graphs; C3(4,5,2): det 40 vs lcm 20", graphs.len()))
}

fn criterion_9() -> Outcome {
    let mut rng = seeded(9);
    let mut bases: Vec<(LabeledGraph, Vec<Spline>)> = int_corpus()
        .iter()
        .map(|g| {
            let lg = g.build();
            let cols = integer_flow_up_basis(&lg).unwrap().columns();
            (lg, cols)
        })
        .collect();
    let xy = data("xy.json");
    let factors: Vec<RingElement> = ["x", "y", "x+y"].iter().map(|t| xy.ring().parse(t).unwrap()).collect();
    if let SearchOutcome::Found { basis, .. } = flow_up_search_bounded(&xy, &factors, 2).unwrap() {
        bases.push((xy, basis));
    } else {
        return Err("no basis for C3(x,y,x+y)".into());
    }
    let mut checked = 0;
    for (g, cols) in &bases {
        let q = compute_q(g).unwrap();
        let m = SplineMatrix::new(g, cols.clone()).unwrap();
        let verdict = check_basis(&m, &q).unwrap();
        ensure!(verdict.is_basis(), "basis rejected: {}", verdict.reason);
        let unit = verdict.unit_factor.unwrap();
        let ring = g.ring();
        let hnf = (*ring == gspline::Ring::Integer).then(|| integer_flow_up_basis(g).unwrap());
        for _ in 0..50 {
            let coeffs: Vec<RingElement> = (0..cols.len())
                .map(|_| {
                    if ring.is_polynomial() {
                        ring.parse(&format!("({}) + ({})*y", rng.gen_range(-5..=5), rng.gen_range(-5..=5)))
                            .unwrap()
                    } else {
                        ring.from_int(rng.gen_range(-50..=50))
                    }
                })
                .collect();
            let target = spline_combination(&coeffs, cols).unwrap();
            let cramer = cramer_membership(&m, &target).unwrap();
            let lhs = m.apply(&cramer.coordinates).unwrap();
            let scale = &unit * &q.value;
            ensure!(cramer.determinant == scale, "det {} vs u*Q {scale}", cramer.determinant);
            ensure!(lhs == target.scale(&scale).unwrap(), "m x != det * target");
            let x: Vec<RingElement> = cramer
                .coordinates
                .iter()
                .map(|c| c.exact_div(&scale).unwrap().unwrap())
                .collect();
            ensure!(x == coeffs, "x/det {x:?} differs from {coeffs:?}");
            if let Some(hnf) = &hnf {
                let direct = lattice_membership(hnf, &target).unwrap().unwrap();
                let direct: Vec<RingElement> = direct.into_iter().map(RingElement::Int).collect();
                ensure!(x == direct, "cramer {x:?} vs lattice {direct:?}");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} targets over {} accepted bases", bases.len()))
}

fn criterion_10() -> Outcome {
    let mut rng = seeded(10);
    for trial in 0..200 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=8);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-50..=50)).collect()).collect();
        let m = IntegerMatrix::from_rows(&data);
        let h = hermite_normal_form(&m);
        ensure!(m.mul(&h.transform) == h.hnf, "trial {trial}: hnf != m * transform");
        let d = h.transform.determinant();
        ensure!(d.abs() == BigInt::from(1), "trial {trial}: det(transform) = {d}");
    }
    let mut graphs: Vec<LabeledGraph> = int_corpus().iter().map(|g| g.build()).collect();
    graphs.push(data("fig2.json"));
    graphs.push(data("fig2-text.json"));
    for g in &graphs {
        let basis = integer_flow_up_basis(g).unwrap();
        let q = basis.determinant();
        let n = g.vertex_count();
        for i in 0..n {
            let mut e = vec![int(0); n];
            e[i] = RingElement::Int(q.clone());
            let s = Spline::new(e);
            ensure!(is_spline(g, &s).unwrap(), "Q*e_{i} not a spline");
            ensure!(lattice_membership(&basis, &s).unwrap().is_some(), "Q*e_{i} not a member");
        }
    }
    Ok(format!("200 random HNFs unimodular; Q*e_i members on {} graphs", graphs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("small integer cycle verification", criterion_1),
        ("PID flow-up basis", criterion_2),
        ("determinant criterion over ZZ", criterion_3),
        ("bivariate basis search", criterion_4),
        ("squared labels have no flow-up basis", criterion_5),
        ("ZZ[x] obstruction", criterion_6),
        ("GCD-domain lemmas", criterion_7),
        ("lcm divides determinants", criterion_8),
        ("Cramer membership", criterion_9),
        ("HNF kernel correctness", criterion_10),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed in {:.1}s",
        criteria.len() - failures,
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
