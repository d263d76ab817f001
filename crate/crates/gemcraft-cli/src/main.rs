//! `gemcraft` — edge-coloured graphs, Heegaard diagrams, and gem-Matveev
//! complexity bounds from the command line.
//!
//! Exit codes: 0 success; 1 usage error; 2 unreadable or invalid input;
//! 3 operation precondition not met (wrong class of graph); 4 internal
//! consistency failure (including replay mismatches).
//!
//! Every run is deterministic: identical input bytes, flags and seed produce
//! byte-identical output.  `GEMCRAFT_THREADS` caps the worker threads of
//! parallel searches without affecting results.

use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gemcraft::embedding::CyclicOrder;
use gemcraft::heegaard::{
    double_diagram, gm_complexity, HeegaardDiagram, SearchMode, SearchOptions,
};
use gemcraft::io;
use gemcraft::seifert::{
    complexity_bound, lambda_graph, lambda_params_sweep, seifert_of, standard_diagram,
    torus_knot_graph, LambdaParams, SeifertParams,
};
use gemcraft::{Colour, ColouredGraph, Error, Result};

#[derive(Parser)]
#[command(name = "gemcraft", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a graph: class, residue census, surfaces, boundary.
    Validate {
        /// Graph file (gem-v1 JSON or compact text); `-` reads stdin.
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Everything `validate` reports, plus the genus table of all three
    /// regular embeddings.
    Invariants {
        /// Graph file; `-` reads stdin.
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Gem-Matveev complexity of a graph, or modified Heegaard complexity of
    /// a diagram.
    Gm {
        /// Graph or diagram file; `-` reads stdin.
        #[arg(required_unless_present = "replay")]
        input: Option<String>,
        /// Restrict the search to one splitting colour.
        #[arg(long)]
        alpha: Option<u8>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Re-evaluate the witness of a stored report instead of searching.
        #[arg(long, value_name = "REPORT", conflicts_with_all = ["input", "alpha"])]
        replay: Option<String>,
    },
    /// Generate graphs and diagrams of the parametric families.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Double a diagram (hdiag-v1 with a planar presentation) into a
    /// 4-coloured graph.
    Double {
        /// Diagram file; `-` reads stdin.
        input: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Repair a singular-regular graph into a gem with boundary.
    Desingularize {
        /// Graph file; `-` reads stdin.
        input: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cap the boundary of a gem along a colour.
    Cap {
        /// Graph file; `-` reads stdin.
        input: String,
        /// The capping colour (0, 1 or 2).
        colour: u8,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-form complexity bound of the Seifert space (D²; (p,α),(q,β)).
    Bound {
        p: usize,
        alpha: usize,
        q: usize,
        beta: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tabulate formula vs. exhaustive search over all parameters with
    /// p + q ≤ max (TSV on stdout).
    Table {
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Render a graph as DOT, SVG, or its pseudocomplex as JSON.
    Export {
        /// Graph file; `-` reads stdin.
        input: String,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Cyclic colour order for the embedding, e.g. `0,1,2,3`.
        #[arg(long, default_value = "0,1,2,3")]
        order: String,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-evaluate the witness stored in a complexity report.
    Replay {
        /// Report file (report-v1 JSON); `-` reads stdin.
        report: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// The singular graph Λ(p,h,q,k) of the Seifert space fibered over the
    /// disk with two exceptional fibers.
    Lambda {
        p: usize,
        h: usize,
        q: usize,
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Λ for the complement of the torus knot t(p,q).
    TorusKnot {
        p: usize,
        q: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The standard genus-2 diagram the doubling of which yields Λ(p,h,q,k).
    Diagram {
        p: usize,
        h: usize,
        q: usize,
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Cap on exhaustively enumerated reduction choices per system.
    #[arg(long, default_value_t = SearchOptions::default().limit)]
    limit: usize,
    /// Seed of the deterministic heuristic sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Force a search mode; the default runs exhaustively and falls back to
    /// sampling past the limit.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            limit: self.limit,
            seed: self.seed,
            mode: self.mode.map(|m| match m {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Heuristic => SearchMode::Heuristic,
            }),
            ..SearchOptions::default()
        }
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write graphs in the compact text format instead of gem-v1 JSON.
    #[arg(long)]
    text: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Heuristic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Svg,
    Json,
}

fn main() -> ExitCode {
    if let Err(code) = configure_threads() {
        return code;
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::Invalid(_) | Error::Io(_) => 2,
                Error::Precondition(_) => 3,
                Error::Consistency(_) => 4,
            })
        }
    }
}

/// Applies `GEMCRAFT_THREADS` to the global worker pool.
fn configure_threads() -> std::result::Result<(), ExitCode> {
    let Ok(raw) = std::env::var("GEMCRAFT_THREADS") else {
        return Ok(());
    };
    let threads: usize = match raw.parse() {
        Ok(n) if n > 0 => n,
        _ => {
            eprintln!("error: GEMCRAFT_THREADS must be a positive integer, got {raw:?}");
            return Err(ExitCode::from(1));
        }
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .expect("global thread pool is configured once, before any use");
    Ok(())
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Validate { input, format } => {
            let graph = io::load_graph(&read_input(&input)?)?;
            emit_report(&io::validate_report(&graph), format)
        }
        Command::Invariants { input, format } => {
            let graph = io::load_graph(&read_input(&input)?)?;
            emit_report(&io::invariants_report(&graph)?, format)
        }
        Command::Gm {
            input,
            alpha,
            search,
            format,
            replay,
        } => {
            if let Some(report_path) = replay {
                return run_replay(&report_path, format);
            }
            let input = input.expect("clap requires input unless --replay");
            let options = search.options();
            let report = match load_any(&read_input(&input)?)? {
                Input::Graph(graph) => {
                    let alpha = alpha.map(Colour::new).transpose()?;
                    io::gm_report(&graph, alpha, &options)?
                }
                Input::Diagram(diagram) => {
                    if alpha.is_some() {
                        return Err(Error::precondition(
                            "--alpha applies to graph inputs; a diagram fixes its own \
                             splitting surface",
                        ));
                    }
                    io::diagram_gm_report(&diagram, &options)?
                }
            };
            emit_report(&report, format)
        }
        Command::Gen(gen) => run_gen(gen),
        Command::Double { input, out } => {
            let diagram = io::diagram_from_json(&read_input(&input)?)?;
            write_graph(&double_diagram(&diagram)?, &out)
        }
        Command::Desingularize { input, out } => {
            let graph = io::load_graph(&read_input(&input)?)?;
            let repaired = gemcraft::complex::desingularize(&graph)?;
            write_graph(&repaired.graph, &out)
        }
        Command::Cap { input, colour, out } => {
            let graph = io::load_graph(&read_input(&input)?)?;
            write_graph(&gemcraft::complex::cap_off(&graph, Colour::new(colour)?)?, &out)
        }
        Command::Bound {
            p,
            alpha,
            q,
            beta,
            format,
        } => {
            let params = SeifertParams::new(p, alpha, q, beta)?;
            emit_report(&io::bound_report(&params), format)
        }
        Command::Table { max, search } => run_table(max, &search.options()),
        Command::Export {
            input,
            format,
            order,
            output,
        } => {
            let graph = io::load_graph(&read_input(&input)?)?;
            let order = parse_order(&order)?;
            let rendered = match format {
                ExportFormat::Dot => io::graph_to_dot(&graph, Some(&order)),
                ExportFormat::Svg => io::graph_to_svg(&graph, &order)?,
                ExportFormat::Json => io::complex_to_json(
                    &gemcraft::complex::Pseudocomplex::from_graph(&graph),
                ),
            };
            write_output(&rendered, output.as_deref())
        }
        Command::Replay { report, format } => run_replay(&report, format),
    }
}

fn run_gen(gen: GenCommand) -> Result<()> {
    match gen {
        GenCommand::Lambda { p, h, q, k, out } => {
            write_graph(&lambda_graph(&LambdaParams::new(p, h, q, k)?)?, &out)
        }
        GenCommand::TorusKnot { p, q, out } => write_graph(&torus_knot_graph(p, q)?, &out),
        GenCommand::Diagram { p, h, q, k, out } => {
            let diagram = standard_diagram(&LambdaParams::new(p, h, q, k)?)?;
            if out.text {
                return Err(Error::precondition(
                    "diagrams have no compact text form; drop --text",
                ));
            }
            write_output(&io::diagram_to_json(&diagram)?, out.output.as_deref())
        }
    }
}

/// One row of the formula-vs-search table, TSV.
fn table_row(params: &LambdaParams, options: &SearchOptions) -> Result<String> {
    let seifert = seifert_of(params);
    let formula = complexity_bound(&seifert);
    let graph = lambda_graph(params)?;
    let exhaustive = gm_complexity(&graph, None, options)?;
    Ok(format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        params.p,
        params.h,
        params.q,
        params.k,
        seifert.alpha,
        seifert.beta,
        formula.delta_alpha,
        formula.delta_beta,
        formula.value,
        exhaustive.value,
        exhaustive.value == formula.value
    ))
}

fn run_table(max: usize, options: &SearchOptions) -> Result<()> {
    use rayon::prelude::*;
    let sweep = lambda_params_sweep(max);
    let rows: Result<Vec<String>> = sweep
        .par_iter()
        .map(|params| table_row(params, options))
        .collect();
    let mut out = String::from(
        "p\th\tq\tk\talpha\tbeta\tdelta_alpha\tdelta_beta\tformula\texhaustive_gm\tmatch\n",
    );
    for row in rows? {
        out.push_str(&row);
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

fn run_replay(report_path: &str, format: Format) -> Result<()> {
    let report = io::report_from_json(&read_input(report_path)?)?;
    let outcome = io::replay(&report)?;
    match format {
        Format::Json => {
            let mut text =
                serde_json::to_string_pretty(&outcome).expect("outcome serializes");
            text.push('\n');
            print!("{text}");
        }
        Format::Text => {
            let (value, n, best) = outcome.recomputed;
            println!(
                "replayed witness: value {value} (n_singular={n} best_region_size={best})"
            );
            println!(
                "recorded values : value {} (n_singular={} best_region_size={})",
                outcome.recorded.0, outcome.recorded.1, outcome.recorded.2
            );
        }
    }
    if outcome.matches {
        Ok(())
    } else {
        Err(Error::consistency(format!(
            "replay mismatch: report records {:?}, re-evaluation yields {:?}",
            outcome.recorded, outcome.recomputed
        )))
    }
}

enum Input {
    Graph(ColouredGraph),
    Diagram(HeegaardDiagram),
}

/// Loads a graph or a diagram, telling them apart by the JSON `format` field.
fn load_any(text: &str) -> Result<Input> {
    if text.trim_start().starts_with('{') && text.contains("hdiag-v1") {
        return Ok(Input::Diagram(io::diagram_from_json(text)?));
    }
    Ok(Input::Graph(io::load_graph(text)?))
}

fn parse_order(text: &str) -> Result<CyclicOrder> {
    let values: Vec<u8> = text
        .split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::parse(format!("bad colour {s:?} in --order")))
        })
        .collect::<Result<_>>()?;
    let [a, b, c, d] = values[..] else {
        return Err(Error::parse(format!(
            "--order needs four colours, got {} in {text:?}",
            values.len()
        )));
    };
    CyclicOrder::from_values([a, b, c, d])
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buffer = String::new();
        std::io::stdin().read_to_string(&mut buffer)?;
        return Ok(buffer);
    }
    std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {path}: {e}")))
}

fn emit_report(report: &io::Report, format: Format) -> Result<()> {
    let text = match format {
        Format::Json => io::report_to_json(report),
        Format::Text => io::report_to_text(report),
    };
    print!("{text}");
    Ok(())
}

fn write_graph(graph: &ColouredGraph, out: &OutArgs) -> Result<()> {
    let text = if out.text {
        io::graph_to_text(graph)
    } else {
        io::graph_to_json(graph)
    };
    write_output(&text, out.output.as_deref())
}

fn write_output(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
