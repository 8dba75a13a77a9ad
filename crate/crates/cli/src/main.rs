use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gspline::analysis::{
    c3_obstruction_for_graph, check_basis, compute_q, divides_all_dets_probe,
    flow_up_search_bounded, Decision, IdealMembership, QInvariant, SearchOutcome, SplineMatrix,
};
use gspline::spline::{check_spline, flow_up_witness};
use gspline::zlattice::integer_flow_up_basis;
use gspline::{LabeledGraph, Ring, RingElement, Spline};
use serde_json::{json, Value};

const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser)]
#[command(name = "gspline", version, about = "Generalized splines on edge-labeled graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph document (JSON).
    graph: PathBuf,
    /// Machine-readable report.
    #[arg(long)]
    json: bool,
    /// New vertex order, as comma-separated vertex names or 1-based indices.
    #[arg(long, value_name = "PERMUTATION")]
    vertex_order: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tuple against every edge congruence.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated entries, one per vertex.
        #[arg(long)]
        spline: String,
    },
    /// Flow-up basis over ZZ, or flow-up witnesses over a polynomial ring.
    Flowup {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// The invariant Q and where it comes from.
    Q {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Decide whether a set of splines is a basis.
    CheckBasis {
        #[command(flatten)]
        graph: GraphArgs,
        /// Semicolon-separated splines, each comma-separated.
        #[arg(long)]
        columns: String,
    },
    /// Bounded search for a flow-up basis over QQ[vars].
    Search {
        #[command(flatten)]
        graph: GraphArgs,
        /// Semicolon-separated factors whose product is Q.
        #[arg(long)]
        factors: String,
        /// Total degree cap on every entry.
        #[arg(long)]
        degree: u32,
    },
    /// Flow-up basis obstruction on a 3-cycle with pairwise coprime labels.
    Obstruct {
        #[command(flatten)]
        graph: GraphArgs,
        /// Membership test for the ideal <b, c>.
        #[arg(long, value_enum)]
        membership: Membership,
    },
    /// Randomized check that q divides the determinant of n splines.
    Probe {
        #[command(flatten)]
        graph: GraphArgs,
        /// Candidate divisor; defaults to Q.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Membership {
    /// <2, x> in ZZ[x].
    EvenConstantTerm,
    /// The ideal of the variables.
    ZeroConstantTerm,
    /// The whole ring.
    WholeRing,
}

impl From<Membership> for IdealMembership {
    fn from(m: Membership) -> Self {
        match m {
            Membership::EvenConstantTerm => IdealMembership::EvenConstantTerm,
            Membership::ZeroConstantTerm => IdealMembership::ZeroConstantTerm,
            Membership::WholeRing => IdealMembership::WholeRing,
        }
    }
}

struct Failure {
    code: &'static str,
    message: String,
}

fn fail(code: &'static str, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

/// A finished report: text for humans, JSON for machines, and whether the
/// verdict was affirmative.
struct Report {
    text: String,
    json: Value,
    affirmative: bool,
}

fn load(args: &GraphArgs) -> Result<LabeledGraph, Failure> {
    let text = std::fs::read_to_string(&args.graph)
        .map_err(|e| fail("IO", format!("{}: {e}", args.graph.display())))?;
    let g = LabeledGraph::from_json(&text).map_err(|e| fail(e.code(), e))?;
    let Some(order) = &args.vertex_order else {
        return Ok(g);
    };
    let n = g.vertex_count();
    let perm = order
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            if let Some(k) = g.vertices().iter().position(|v| v == tok) {
                return Ok(k);
            }
            match tok.parse::<usize>() {
                Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                _ => Err(fail("BAD_PERMUTATION", format!("unknown vertex `{tok}`"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    g.reorder(&perm).map_err(|e| fail(e.code(), e))
}

fn parse_spline(ring: &Ring, text: &str) -> Result<Spline, Failure> {
    Spline::parse(ring, text).map_err(|e| fail("PARSE_FAILURE", format!("`{text}`: {e}")))
}

fn parse_element(ring: &Ring, text: &str) -> Result<RingElement, Failure> {
    ring.parse(text.trim())
        .map_err(|e| fail("PARSE_FAILURE", format!("`{}`: {e}", text.trim())))
}

fn analysis(e: gspline::analysis::AnalysisError) -> Failure {
    fail("ANALYSIS", e)
}

fn provenance(q: &QInvariant) -> String {
    serde_json::to_value(q.provenance)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn edge_name(g: &LabeledGraph, u: usize, v: usize) -> String {
    format!("{}{}", g.vertices()[u], g.vertices()[v])
}

fn verify(g: &LabeledGraph, text: &str) -> Result<Report, Failure> {
    let s = parse_spline(g.ring(), text)?;
    let violations = check_spline(g, &s).map_err(|e| fail("LENGTH_MISMATCH", e))?;
    let yes = violations.is_empty();
    let mut out = format!("SPLINE: {}\n", if yes { "yes" } else { "no" });
    for v in &violations {
        out.push_str(&format!(
            "  edge {} (label {}): difference {} not divisible\n",
            edge_name(g, v.u, v.v),
            v.label,
            v.difference
        ));
    }
    let violated: Vec<Value> = violations
        .iter()
        .map(|v| {
            json!({
                "edge": edge_name(g, v.u, v.v),
                "label": v.label,
                "difference": v.difference,
            })
        })
        .collect();
    Ok(Report {
        text: out,
        json: json!({ "spline": s, "is_spline": yes, "violations": violated }),
        affirmative: yes,
    })
}

fn flowup(g: &LabeledGraph) -> Result<Report, Failure> {
    if *g.ring() == Ring::Integer {
        let basis = integer_flow_up_basis(g).map_err(|e| fail("ANALYSIS", e))?;
        let diag: Vec<String> = basis.diagonal().iter().map(|d| d.to_string()).collect();
        let mut out = String::new();
        for (k, c) in basis.columns().iter().enumerate() {
            out.push_str(&format!("B{} = {c}\n", k + 1));
        }
        out.push_str(&format!("diagonal: ({})\ndet: {}\n", diag.join(", "), basis.determinant()));
        return Ok(Report {
            text: out,
            json: json!({
                "basis": basis,
                "diagonal": diag,
                "determinant": basis.determinant().to_string(),
            }),
            affirmative: true,
        });
    }
    let mut out = format!("flow-up witnesses over {}\n", g.ring());
    let mut rows = Vec::new();
    for i in 1..g.vertex_count() {
        let w = flow_up_witness(g, i).map_err(|e| fail("ANALYSIS", e))?;
        out.push_str(&format!("class {i}: {w}\n"));
        rows.push(json!({ "class": i, "witness": w }));
    }
    Ok(Report {
        text: out,
        json: json!({ "ring": g.ring().to_string(), "witnesses": rows }),
        affirmative: true,
    })
}

fn q_report(g: &LabeledGraph) -> Result<Report, Failure> {
    let q = compute_q(g).map_err(analysis)?;
    let mut out = format!("Q = {} ({})\n", q.value, provenance(&q));
    if !q.provenance.is_sharp() {
        out.push_str("lower bound only: basis checks can confirm but not refute\n");
    }
    Ok(Report {
        text: out,
        json: json!(q),
        affirmative: true,
    })
}

fn check(g: &LabeledGraph, columns: &str) -> Result<Report, Failure> {
    let cols = columns
        .split(';')
        .map(|c| parse_spline(g.ring(), c))
        .collect::<Result<Vec<_>, _>>()?;
    let m = SplineMatrix::new(g, cols).map_err(analysis)?;
    let q = compute_q(g).map_err(analysis)?;
    let verdict = check_basis(&m, &q).map_err(analysis)?;
    let word = match verdict.decision {
        Decision::Basis => "BASIS",
        Decision::NotBasis => "NOT_BASIS",
        Decision::Undecided => "UNDECIDED",
    };
    let out = format!(
        "VERDICT: {word}\ndet: {}\nQ: {} ({})\n{}\n",
        verdict.determinant,
        q.value,
        provenance(&q),
        verdict.reason
    );
    Ok(Report {
        text: out,
        affirmative: verdict.decision != Decision::NotBasis,
        json: json!(verdict),
    })
}

fn search(g: &LabeledGraph, factors: &str, degree: u32) -> Result<Report, Failure> {
    let factors = factors
        .split(';')
        .map(|f| parse_element(g.ring(), f))
        .collect::<Result<Vec<_>, _>>()?;
    let outcome = flow_up_search_bounded(g, &factors, degree).map_err(analysis)?;
    let text = match &outcome {
        SearchOutcome::Found {
            basis,
            leading_terms,
            verdict,
            assignments_examined,
        } => {
            let mut out = String::from("FOUND\n");
            for (k, (b, l)) in basis.iter().zip(leading_terms).enumerate() {
                out.push_str(&format!("B{} = {b}    leading term {l}\n", k + 1));
            }
            out.push_str(&format!(
                "det: {}\nassignments examined: {assignments_examined}\n",
                verdict.determinant
            ));
            out
        }
        SearchOutcome::Nonexistent {
            degree_bound,
            assignments_examined,
            raw_assignments,
            systems_solved,
        } => format!(
            "NONEXISTENT({degree_bound})\nno flow-up basis with entries of degree <= {degree_bound}\n\
             assignments: {raw_assignments} ({assignments_examined} distinct), systems solved: {systems_solved}\n"
        ),
    };
    Ok(Report {
        text,
        affirmative: outcome.is_found(),
        json: json!(outcome),
    })
}

fn obstruct(g: &LabeledGraph, membership: Membership) -> Result<Report, Failure> {
    let obstructed = c3_obstruction_for_graph(g, membership.into()).map_err(analysis)?;
    let text = if obstructed {
        "OBSTRUCTED: yes\nthe first label is outside <b, c>; no flow-up class basis exists\n"
    } else {
        "OBSTRUCTED: no\n"
    };
    Ok(Report {
        text: text.into(),
        json: json!({ "obstructed": obstructed, "membership": IdealMembership::from(membership) }),
        affirmative: obstructed,
    })
}

fn probe(g: &LabeledGraph, q: Option<&str>, trials: usize, seed: u64) -> Result<Report, Failure> {
    let q = match q {
        Some(t) => parse_element(g.ring(), t)?,
        None => compute_q(g).map_err(analysis)?.value,
    };
    let out = divides_all_dets_probe(g, &q, trials, seed).map_err(analysis)?;
    let text = match (&out.counterexample, &out.counterexample_determinant) {
        (Some(cols), Some(det)) => {
            let shown: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
            format!(
                "PROBE: refuted at trial {}\n{q} does not divide det = {det}\ncolumns: {}\n",
                out.trials,
                shown.join(" ")
            )
        }
        _ => format!("PROBE: {q} divided every determinant in {} trials (seed {seed})\n", out.trials),
    };
    Ok(Report {
        text,
        affirmative: out.holds(),
        json: json!({ "q": q, "seed": seed, "holds": out.holds(), "outcome": out }),
    })
}

fn run(cli: Cli) -> Result<(Report, bool), Failure> {
    let (args, report) = match &cli.command {
        Command::Verify { graph, spline } => (graph, verify(&load(graph)?, spline)?),
        Command::Flowup { graph } => (graph, flowup(&load(graph)?)?),
        Command::Q { graph } => (graph, q_report(&load(graph)?)?),
        Command::CheckBasis { graph, columns } => (graph, check(&load(graph)?, columns)?),
        Command::Search {
            graph,
            factors,
            degree,
        } => (graph, search(&load(graph)?, factors, *degree)?),
        Command::Obstruct { graph, membership } => (graph, obstruct(&load(graph)?, *membership)?),
        Command::Probe {
            graph,
            q,
            trials,
            seed,
        } => (graph, probe(&load(graph)?, q.as_deref(), *trials, *seed)?),
    };
    Ok((report, args.json))
}

fn wants_json() -> bool {
    std::env::args().any(|a| a == "--json")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, as_json)) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.affirmative { 0 } else { 1 })
        }
        Err(f) => {
            if wants_json() {
                println!("{}", json!({ "error": f.code, "message": f.message }));
            }
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(2)
        }
    }
}
