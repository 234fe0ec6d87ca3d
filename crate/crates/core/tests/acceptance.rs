//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any gating criterion fails.
//!
//! Criterion 8 runs the weight-four enumerations in long mode (about a minute
//! and a half in release). It never gates; set `FATGRAPH_SKIP_LONG=1` to skip it.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fatgraph::ainfinity::{check_zx_cocycle, zx_expansion_check};
use fatgraph::coefficients::{CoefficientEngine, Mode};
use fatgraph::graph_complex::{d_squared_vanishes, enumerate_graphs, verify_cocycle, ForestComplex, GraphConstraints};
use fatgraph::partition::Partition;
use fatgraph::rational::Q;
use fatgraph::ribbon::RibbonGraph;
use fatgraph::suites::random_sequence;
use fatgraph::trees::{
    dual_cell_boundary_holds, enumerate_trivalent_trees, region_sign_cases, transposed_collapses_flip_sign, FaceLattice,
};

const CORPUS_HALF_EDGES: usize = 10;

type Verdict = Result<String, String>;

fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn odd_double_factorial(n: i64) -> i64 {
    (1..=n).step_by(2).product()
}

/// `(-2)^{n+1}(2n+1)!!`, the diagonal entry of the inverse matrix.
fn diagonal_inverse(n: i64) -> i64 {
    (-2i64).pow(n as u32 + 1) * odd_double_factorial(2 * n + 1)
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dissections of a convex `m`-gon using exactly `k` noncrossing diagonals.
fn dissections(m: i64, k: i64) -> i64 {
    binomial(m - 3, k) * binomial(m + k - 1, k) / (k + 1)
}

fn corpus() -> Vec<RibbonGraph> {
    enumerate_graphs(CORPUS_HALF_EDGES, &GraphConstraints::default())
}

fn diagonal_brute_force(engine: &mut CoefficientEngine) -> Verdict {
    let mut seen = Vec::new();
    for n in 1..=3u32 {
        let got = engine.b_single_enumerated(&[n]).map_err(|e| e.to_string())?;
        let want = Q::one() / Q::from_integer(BigInt::from(diagonal_inverse(n as i64)));
        if got != want {
            return Err(format!("b[{n}] = {got}, expected {want}"));
        }
        seen.push(got.to_string());
    }
    Ok(format!("b[1], b[2], b[3] = {}", seen.join(", ")))
}

fn off_diagonal_brute_force(engine: &mut CoefficientEngine) -> Verdict {
    let mut seen = Vec::new();
    for n in 1..=2i64 {
        let got = engine.b_single_enumerated(&[n as u32, 1]).map_err(|e| e.to_string())?;
        let rhs = ratio(2 * n + 5, 12) - ratio(1, 2 * (2 * n + 3));
        let want = rhs / Q::from_integer(BigInt::from(diagonal_inverse(n)));
        if got != want {
            return Err(format!("b[{n},1] = {got}, expected {want}"));
        }
        seen.push(got.to_string());
    }
    Ok(format!("b[1,1] = {}, b[2,1] = {}", seen[0], seen[1]))
}

fn polynomial_table(engine: &mut CoefficientEngine) -> Verdict {
    let mut table: Vec<(String, String)> = vec![
        ("1,0".into(), "-24*k1*k0 - 36*k1".into()),
        ("1,1".into(), "72*k1^2 + 348*k2".into()),
        ("2,1".into(), "-1440*k2*k1 - 13680*k3".into()),
    ];
    for n in 1..=4 {
        table.push((n.to_string(), format!("{}*k{n}", diagonal_inverse(n))));
    }
    for (mu, want) in &table {
        let mu: Partition = mu.parse().map_err(|e| format!("{e}"))?;
        let got = engine.w_polynomial(&mu).map_err(|e| e.to_string())?.to_string();
        if &got != want {
            return Err(format!("W[{mu}]* = {got}, expected {want}"));
        }
    }
    Ok(format!("{} polynomials, including W[4]* = 30240*k4", table.len()))
}

fn cocycle_property() -> Verdict {
    let mut counts = Vec::new();
    for lambda in ["", "1", "2", "1,1"] {
        let lambda: Partition = lambda.parse().map_err(|e| format!("{e}"))?;
        let report = verify_cocycle(&lambda, CORPUS_HALF_EDGES);
        if !report.passed() || report.checked.is_empty() {
            return Err(format!("W[{lambda}]*: {} checked, failures {:?}", report.checked.len(), report.failures));
        }
        counts.push(format!("[{lambda}]:{}", report.checked.len()));
    }
    Ok(format!("graphs checked {}", counts.join(" ")))
}

fn partition_functions(graphs: &[RibbonGraph]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut slices: BTreeMap<i64, Vec<RibbonGraph>> = BTreeMap::new();
    for g in graphs {
        slices.entry(g.euler_characteristic()).or_default().push(g.clone());
    }
    let mut evaluated = 0;
    for round in 0..3 {
        let x = random_sequence(&mut rng, CORPUS_HALF_EDGES / 2);
        let cocycle = check_zx_cocycle(&x, graphs);
        if !cocycle.passed() {
            return Err(format!("sequence {round}: Z_x(d<G>) != 0 on {:?}", cocycle.failures.first()));
        }
        for (chi, slice) in &slices {
            let rep = zx_expansion_check(&x, slice).map_err(|e| e.to_string())?;
            if !rep.passed() {
                return Err(format!("sequence {round}, chi {chi}: expansion differs on {:?}", rep.failures.first()));
            }
            evaluated += rep.checked;
        }
    }
    Ok(format!("3 sequences, {} slices, {evaluated} graph evaluations", slices.len()))
}

fn orientation() -> Verdict {
    let mut total = 0;
    for p in [5, 7, 9] {
        let cases = region_sign_cases(p, 1).map_err(|e| e.to_string())?;
        let bad = cases.iter().filter(|c| c.chain_sign != c.rule_sign).count();
        if cases.is_empty() || bad > 0 {
            return Err(format!("valence {p}: {bad} of {} configurations disagree", cases.len()));
        }
        total += cases.len();
    }
    let mut squares = 0;
    for n in [2, 4] {
        let lattice = FaceLattice::new(n).map_err(|e| e.to_string())?;
        let (count, ok) = transposed_collapses_flip_sign(&lattice);
        if !ok {
            return Err(format!("a transposed pair of collapses keeps its sign on K^{n}"));
        }
        squares += count;
    }
    Ok(format!("{total} region configurations, {squares} squares on K^2 and K^4"))
}

fn structural(graphs: &[RibbonGraph]) -> Verdict {
    let high = graphs.iter().filter(|g| g.codimension() >= 2);
    if let Some(g) = high.clone().find(|g| !d_squared_vanishes(g)) {
        return Err(format!("d o d != 0 on {g}"));
    }
    for n in 1..=3 {
        let lattice = FaceLattice::new(n).map_err(|e| e.to_string())?;
        if !dual_cell_boundary_holds(&lattice) {
            return Err(format!("dual cell boundary fails on K^{n}"));
        }
    }
    let mut forests = 0;
    for g in graphs.iter().filter(|g| g.codimension() <= 4) {
        let mut want = vec![1i64];
        for p in g.valences() {
            let n = p as i64 - 3;
            let f: Vec<i64> = (0..=n).map(|d| dissections(n + 3, n - d)).collect();
            let mut next = vec![0; want.len() + f.len() - 1];
            for (i, a) in want.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            want = next;
        }
        let got: Vec<i64> =
            ForestComplex::new(g).map_err(|e| e.to_string())?.ranks().iter().map(|&r| r as i64).collect();
        if got != want {
            return Err(format!("forest ranks of {g}: {got:?}, expected {want:?}"));
        }
        forests += 1;
    }
    let mut catalan = vec![1i64];
    for k in 1..=7 {
        catalan.push((0..k).map(|i| catalan[i] * catalan[k - 1 - i]).sum());
    }
    for leaves in 3..=9 {
        let got = enumerate_trivalent_trees(leaves).map_err(|e| e.to_string())?.len() as i64;
        if got != catalan[leaves - 2] {
            return Err(format!("{got} trivalent trees with {leaves} leaves, expected {}", catalan[leaves - 2]));
        }
    }
    Ok(format!("d o d on {} graphs, forest ranks on {forests} graphs, K^1..K^3, 3..=9 leaves", high.count()))
}

fn weight_four() -> Verdict {
    let mut engine = CoefficientEngine::new(Mode::Long);
    let table = [("2,2", "7200*k2^2 + 159120*k4"), ("3,1", "20160*k3*k1 + 312480*k4")];
    let mut seen = Vec::new();
    for (mu, want) in table {
        let mu: Partition = mu.parse().map_err(|e| format!("{e}"))?;
        let got = engine.w_polynomial(&mu).map_err(|e| e.to_string())?.to_string();
        if got != want {
            return Err(format!("W[{mu}]* = {got}, expected {want}"));
        }
        seen.push(format!("W[{mu}]* = {got}"));
    }
    Ok(seen.join("; "))
}

fn report(label: &str, gating: bool, verdict: &Verdict, seconds: f64) -> bool {
    let tag = if gating { "" } else { " [non-gating]" };
    match verdict {
        Ok(msg) => println!("criterion {label}: PASS{tag} ({seconds:.1}s) {msg}"),
        Err(msg) => println!("criterion {label}: FAIL{tag} ({seconds:.1}s) {msg}"),
    }
    verdict.is_ok() || !gating
}

fn timed(f: impl FnOnce() -> Verdict) -> (Verdict, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64())
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut engine = CoefficientEngine::new(Mode::Fast);
    let graphs = corpus();
    let mut ok = true;
    let (v, t) = timed(|| diagonal_brute_force(&mut engine));
    ok &= report("1 diagonal coefficients by brute force", true, &v, t);
    let (v, t) = timed(|| off_diagonal_brute_force(&mut engine));
    ok &= report("2 off-diagonal coefficients against the closed form", true, &v, t);
    let (v, t) = timed(|| polynomial_table(&mut engine));
    ok &= report("3 W-polynomial table", true, &v, t);
    let (v, t) = timed(cocycle_property);
    ok &= report("4 cocycle property up to 10 half-edges", true, &v, t);
    let (v, t) = timed(|| partition_functions(&graphs));
    ok &= report("5 partition function cocycle and expansion", true, &v, t);
    let (v, t) = timed(orientation);
    ok &= report("6 orientation signs", true, &v, t);
    let (v, t) = timed(|| structural(&graphs));
    ok &= report("7 structural identities", true, &v, t);
    if std::env::var("FATGRAPH_SKIP_LONG").is_ok_and(|v| v == "1") {
        println!("criterion 8 weight-four polynomials in long mode: SKIPPED [non-gating]");
    } else {
        let (v, t) = timed(weight_four);
        report("8 weight-four polynomials in long mode", false, &v, t);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
