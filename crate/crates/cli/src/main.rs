use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fatgraph::coefficients::{CoeffError, CoefficientEngine, CoefficientMatrix, CoefficientTable, Mode};
use fatgraph::graph_complex::{enumerate_graphs, GraphConstraints};
use fatgraph::partition::Partition;
use fatgraph::ribbon::automorphisms;
use fatgraph::suites::{run_suite, Outcome, Suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "fatgraph", version, about = "Exact Kontsevich cycle coefficients and ribbon graph checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = ModeArg::Fast, global = true)]
    mode: ModeArg,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the matrices B (b_λ^μ) and A = B^-1 for all partitions of n.
    Coeff {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Print [W_μ*] as a polynomial in the adjusted classes κ̃.
    Wpoly {
        /// Comma-separated nonnegative parts, e.g. `2,1` or `1,0`. Repeatable.
        #[arg(long, required = true)]
        partition: Vec<Partition>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Largest weight for the closed-form checks.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..))]
        max_half_edges: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Let failing conjecture checks fail the run.
        #[arg(long)]
        strict_conjecture: bool,
    },
    /// List connected ribbon graphs with all valences at least 3.
    Enumerate {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(2..))]
        max_half_edges: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Fast,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Cocycle,
    Ainf,
    Orientation,
    Complex,
    Closedform,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Cocycle => Suite::Cocycle,
            SuiteArg::Ainf => Suite::Ainf,
            SuiteArg::Orientation => Suite::Orientation,
            SuiteArg::Complex => Suite::Complex,
            SuiteArg::Closedform => Suite::Closedform,
            SuiteArg::All => Suite::All,
        }
    }
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w.into()).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let mode = match cli.mode {
        ModeArg::Fast => Mode::Fast,
        ModeArg::Long => Mode::Long,
    };
    let mut engine = CoefficientEngine::new(mode);
    if mode == Mode::Long {
        engine = engine.with_progress(|msg| eprintln!("{msg}"));
    }
    let result = match cli.command {
        Command::Coeff { n } => coeff(&mut engine, n, cli.format),
        Command::Wpoly { partition } => wpoly(&mut engine, &partition, cli.format),
        Command::Verify { suite, n, max_half_edges, seed, strict_conjecture } => {
            let config = SuiteConfig { n, max_half_edges: max_half_edges as usize, mode, seed };
            verify(&mut engine, suite.into(), &config, strict_conjecture, cli.format)
        }
        Command::Enumerate { max_half_edges } => Ok(enumerate(max_half_edges as usize, cli.format)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn print_matrix(out: &mut impl Write, label: &str, m: &CoefficientMatrix) -> std::io::Result<()> {
    let cells = m.render();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    writeln!(out, "{label}:")?;
    for row in cells {
        let row: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "  [{}]", row.join("  "))?;
    }
    Ok(())
}

fn coeff(engine: &mut CoefficientEngine, n: u32, format: Format) -> Result<ExitCode, CoeffError> {
    let b = engine.b_matrix(n)?;
    let a = engine.a_matrix(n)?;
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => {
            let table = CoefficientTable::new(&b, &a);
            writeln!(out, "{}", serde_json::to_string(&table).expect("table serializes")).ok();
        }
        Format::Text => {
            let order: Vec<String> = b.order.iter().map(|p| format!("({p})")).collect();
            writeln!(out, "n = {n}").ok();
            writeln!(out, "order: {}", order.join(" ")).ok();
            print_matrix(&mut out, "B", &b).ok();
            print_matrix(&mut out, "A", &a).ok();
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn wpoly(engine: &mut CoefficientEngine, partitions: &[Partition], format: Format) -> Result<ExitCode, CoeffError> {
    let mut rendered = Vec::new();
    for mu in partitions {
        rendered.push((mu, engine.w_polynomial(mu)?));
    }
    let mut out = std::io::stdout().lock();
    for (mu, w) in rendered {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(&w.to_json(mu)).expect("polynomial serializes")),
            Format::Text => writeln!(out, "W[{mu}]* = {w}"),
        }
        .ok();
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(
    engine: &mut CoefficientEngine,
    suite: Suite,
    config: &SuiteConfig,
    strict_conjecture: bool,
    format: Format,
) -> Result<ExitCode, CoeffError> {
    let outcomes = run_suite(suite, config, engine)?;
    let failures = outcomes.iter().filter(|o| o.status.is_failure(strict_conjecture)).count();
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => {
            let report = json!({ "checks": outcomes, "failures": failures, "passed": failures == 0 });
            writeln!(out, "{report}").ok();
        }
        Format::Text => {
            for Outcome { suite, check, status, detail } in &outcomes {
                if detail.is_empty() {
                    writeln!(out, "{status:<15} [{suite}] {check}").ok();
                } else {
                    writeln!(out, "{status:<15} [{suite}] {check} ({detail})").ok();
                }
            }
            writeln!(out, "{} checks, {failures} failing", outcomes.len()).ok();
        }
    }
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILURE) })
}

fn enumerate(max_half_edges: usize, format: Format) -> ExitCode {
    let graphs = enumerate_graphs(max_half_edges, &GraphConstraints::default());
    let mut out = std::io::stdout().lock();
    for g in &graphs {
        let bc = g.boundary_cycles();
        let aut = automorphisms(g).len();
        let line = match format {
            Format::Json => json!({
                "graph": g.to_string(),
                "codimension": g.codimension(),
                "euler_characteristic": g.euler_characteristic(),
                "genus": bc.genus,
                "punctures": bc.punctures,
                "automorphisms": aut,
            })
            .to_string(),
            Format::Text => format!(
                "{g}  codim={} chi={} g={} s={} |Aut|={aut}",
                g.codimension(),
                g.euler_characteristic(),
                bc.genus,
                bc.punctures
            ),
        };
        writeln!(out, "{line}").ok();
    }
    if format == Format::Text {
        writeln!(out, "{} graphs", graphs.len()).ok();
    }
    ExitCode::SUCCESS
}
