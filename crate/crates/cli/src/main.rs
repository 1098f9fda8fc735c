use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use homoplane_cli::fuzz::{run_fuzz, run_triangulation_study, FuzzConfig, TriangulationConfig};
use homoplane_cli::instance::{
    emit_instance, emit_witnesses, format_rational, parse_instance, parse_rational, Instance,
};
use homoplane_cli::svg::render_svg;
use homoplane_core::{is_subgraph, try_build_graph, verify_plane, GeometricGraph, Mode, Scalar};

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(
    name = "homoplane",
    version,
    about = "Exact translate and homothet graphs of convex polygonal shapes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph of an instance and print its edges.
    Build {
        #[arg(long)]
        input: PathBuf,
        /// Overrides the instance's mode.
        #[arg(long)]
        mode: Option<Mode>,
        /// Write an SVG drawing, overlaid with the first edge's witness.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write one `i j t_x t_y lambda` line per edge.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Check planarity of both graphs and the translate-in-homothet relation.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Mode whose edge count is reported; both graphs are always checked.
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Generate random instances and check them.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_points: usize,
        #[arg(long, default_value_t = 7)]
        max_halfplanes: usize,
        /// Probability that a half-plane is open, as `p/q`; cycles 0, 1/4, 1 when absent.
        #[arg(long, value_parser = parse_probability)]
        open_fraction: Option<Scalar>,
        /// Run the sampling cross-check on every N-th trial (0 disables it).
        #[arg(long, default_value_t = 10)]
        sample_every: usize,
        #[arg(long, default_value_t = 2000)]
        sample_trials: usize,
    },
    /// Edge counts of homothet graphs of generic instances against 3n - 3 - h.
    TriangulateCheck {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        #[arg(long, default_value_t = 7)]
        max_halfplanes: usize,
    },
}

fn parse_probability(s: &str) -> Result<Scalar, String> {
    let p = parse_rational(s)?;
    if p < Scalar::from_integer(0.into()) || p > Scalar::from_integer(1.into()) {
        return Err(format!("`{s}` is not in [0, 1]"));
    }
    Ok(p)
}

/// Failures reported with exit code 1.
struct UsageError(anyhow::Error);

fn read_instance(path: &Path) -> Result<Instance, UsageError> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(UsageError)?;
    parse_instance(&text)
        .with_context(|| format!("{}", path.display()))
        .map_err(UsageError)
}

fn print_edges(g: &GeometricGraph) {
    println!(
        "{} graph: {} points, {} edges",
        g.mode(),
        g.points().len(),
        g.edges().len()
    );
    for e in g.edges() {
        let t = e.witness.translation();
        println!(
            "{} {}  t=({}, {}) lambda={}",
            e.i,
            e.j,
            format_rational(&t.x),
            format_rational(&t.y),
            format_rational(e.witness.scale())
        );
    }
}

fn build(
    input: &Path,
    mode: Option<Mode>,
    svg: Option<&Path>,
    witnesses: Option<&Path>,
) -> Result<u8, UsageError> {
    let instance = read_instance(input)?;
    let mode = mode.unwrap_or(instance.mode);
    let g = match try_build_graph(&instance.points, &instance.shape, mode) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("internal witness check failed: {e}");
            print!("{}", emit_instance(&Instance { mode, ..instance }));
            return Ok(EXIT_VIOLATION);
        }
    };
    print_edges(&g);
    if let Some(path) = svg {
        let overlay = g.edges().first().map(|e| &e.witness);
        fs::write(path, render_svg(&g, overlay))
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(UsageError)?;
    }
    if let Some(path) = witnesses {
        fs::write(path, emit_witnesses(&g))
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(UsageError)?;
    }
    Ok(0)
}

fn verify(input: &Path, mode: Option<Mode>) -> Result<u8, UsageError> {
    let instance = read_instance(input)?;
    let mode = mode.unwrap_or(instance.mode);
    let mut problems = Vec::new();
    let mut graphs = Vec::new();
    for m in [Mode::Translate, Mode::Homothet] {
        match try_build_graph(&instance.points, &instance.shape, m) {
            Ok(g) => {
                let report = verify_plane(&g);
                for (v, (i, j)) in &report.condition1_violations {
                    problems.push(format!("{m}: point {v} lies on edge ({i}, {j})"));
                }
                for ((a, b), (c, d)) in &report.condition2_violations {
                    problems.push(format!("{m}: edges ({a}, {b}) and ({c}, {d}) cross"));
                }
                graphs.push(g);
            }
            Err(e) => problems.push(format!("{m}: {e}")),
        }
    }
    if let [gt, gst] = graphs.as_slice() {
        if !is_subgraph(gt, gst).expect("graphs share points and shape") {
            for (i, j) in gt.edge_pairs() {
                if !gst.has_edge(i, j) {
                    problems.push(format!(
                        "translate edge ({i}, {j}) missing from homothet graph"
                    ));
                }
            }
        }
        let g = if mode == Mode::Translate { gt } else { gst };
        println!(
            "{} graph: {} points, {} edges",
            mode,
            g.points().len(),
            g.edges().len()
        );
    }
    if problems.is_empty() {
        println!("plane: yes; translate graph within homothet graph: yes");
        return Ok(0);
    }
    println!("violations: {}", problems.len());
    for p in &problems {
        println!("# {p}");
    }
    print!("{}", emit_instance(&instance));
    Ok(EXIT_VIOLATION)
}

fn run(cli: Cli) -> Result<u8, UsageError> {
    match cli.command {
        Command::Build {
            input,
            mode,
            svg,
            witnesses,
        } => build(&input, mode, svg.as_deref(), witnesses.as_deref()),
        Command::Verify { input, mode } => verify(&input, mode),
        Command::Fuzz {
            trials,
            seed,
            max_points,
            max_halfplanes,
            open_fraction,
            sample_every,
            sample_trials,
        } => {
            if max_points == 0 || max_halfplanes == 0 {
                return Err(UsageError(anyhow::anyhow!(
                    "--max-points and --max-halfplanes must be positive"
                )));
            }
            let cfg = FuzzConfig {
                trials,
                seed,
                max_points,
                max_halfplanes,
                open_fraction,
                sample_every,
                sample_trials,
            };
            let start = Instant::now();
            let summary = run_fuzz(&cfg);
            print!("{summary}");
            eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            Ok(if summary.is_clean() {
                0
            } else {
                EXIT_VIOLATION
            })
        }
        Command::TriangulateCheck {
            trials,
            seed,
            max_points,
            max_halfplanes,
        } => {
            let cfg = TriangulationConfig {
                trials,
                seed,
                max_points,
                max_halfplanes,
                ..TriangulationConfig::default()
            };
            let start = Instant::now();
            print!("{}", run_triangulation_study(&cfg));
            eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
