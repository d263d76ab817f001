//! Structured computation reports: the `report-v1` format and witness
//! replay.
//!
//! A report embeds the tool version, the effective configuration, and the
//! input itself, so the file alone reproduces the run.  Reports carry no
//! timestamps or machine identifiers: identical input, flags and seed yield
//! byte-identical reports.
//!
//! [`replay`] re-evaluates the witness stored in a complexity report from
//! scratch — rebuilding the diagram from the embedded input, re-checking the
//! admissibility of the recorded curve removals, and recomputing the value —
//! and compares the outcome with the recorded one.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::embedding::{embed, genus_formulas, CyclicOrder, Embedding, GenusFormulas};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, GraphClassTag};
use crate::heegaard::{
    chm_of_choices, diagram_from_closed, diagram_from_gem, diagram_from_singular, gm_complexity,
    ComplexityReport, HeegaardDiagram, ReductionChoice, SearchMode, SearchOptions, SearchStatus,
};
use crate::io::diagram::{diagram_from_json, diagram_to_json};
use crate::io::graph::{graph_from_json, graph_to_json};
use crate::seifert::{complexity_bound, SeifertParams};
use crate::surface::SurfaceType;

/// A structured record of one command invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    /// Version of the tool that produced the report.
    pub version: String,
    /// The command that ran, e.g. `"gm"`.
    pub command: String,
    /// The effective configuration of the run.
    pub config: ReportConfig,
    /// The input, embedded verbatim so the report is self-contained.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<ReportInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<BoundaryRow>>,
    /// One row per regular embedding (the per-order genus table).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embeddings: Option<Vec<EmbeddingRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complexity: Option<ComplexityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundSection>,
}

/// The flags a run was invoked with; unset fields did not apply.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `"exhaustive"`, `"heuristic"`, or `"auto"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

impl ReportConfig {
    /// The configuration echo for a complexity search.
    pub fn for_search(alpha: Option<u8>, options: &SearchOptions) -> ReportConfig {
        ReportConfig {
            alpha,
            limit: Some(options.limit),
            seed: Some(options.seed),
            mode: Some(
                match options.mode {
                    None => "auto",
                    Some(SearchMode::Exhaustive) => "exhaustive",
                    Some(SearchMode::Heuristic) => "heuristic",
                }
                .to_string(),
            ),
        }
    }
}

/// The embedded input of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReportInput {
    /// A coloured graph, as a `gem-v1` JSON object.
    Graph { gem: serde_json::Value },
    /// A Heegaard diagram, as an `hdiag-v1` JSON object.
    Diagram { hdiag: serde_json::Value },
}

impl ReportInput {
    fn graph(graph: &ColouredGraph) -> ReportInput {
        ReportInput::Graph {
            gem: serde_json::from_str(&graph_to_json(graph)).expect("canonical gem JSON"),
        }
    }

    fn diagram(diagram: &HeegaardDiagram) -> Result<ReportInput> {
        Ok(ReportInput::Diagram {
            hdiag: serde_json::from_str(&diagram_to_json(diagram)?)
                .expect("canonical hdiag JSON"),
        })
    }
}

/// Classification of a graph, with the per-colour residue surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationSection {
    /// Human-readable class, e.g. `"closed gem"`.
    pub class: String,
    /// The singular colour, for singular-regular graphs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular_colour: Option<u8>,
    /// For each colour `c`, the surfaces of the `ĉ`-residues.
    pub residue_surfaces: Vec<ResidueSurfaceRow>,
    /// Residues breaking the class, as `(colour, residue index, surface)`.
    pub offending: Vec<(u8, usize, SurfaceType)>,
    pub bipartite: bool,
    /// Whether the graph is contracted (gems only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contracted: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSurfaceRow {
    pub colour: u8,
    pub surfaces: Vec<SurfaceType>,
}

/// Residue counts: one row per unordered colour pair, one per complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSection {
    /// `g_{ij}` for `(i,j)` in the order 01, 02, 03, 12, 13, 23.
    pub pairs: [usize; 6],
    /// `g_ĉ` for `c` in the order 0, 1, 2, 3.
    pub complements: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRow {
    pub vertices: Vec<usize>,
    pub surface: SurfaceType,
}

/// One row of the per-embedding genus table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingRow {
    /// The cyclic colour order, e.g. `"(0 1 2 3)"`.
    pub order: String,
    pub embedding: Embedding,
    /// The residue-count genus formulas; absent where they do not apply
    /// (singular-regular and invalid graphs).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_formulas: Option<GenusFormulas>,
}

/// The closed-form complexity bound of a Seifert space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSection {
    pub p: usize,
    pub alpha: usize,
    pub q: usize,
    pub beta: usize,
    pub value: usize,
    pub delta_alpha: u8,
    pub delta_beta: u8,
}

impl Report {
    fn new(command: &str, config: ReportConfig) -> Report {
        Report {
            format: "report-v1".to_string(),
            version: crate::VERSION.to_string(),
            command: command.to_string(),
            config,
            input: None,
            classification: None,
            census: None,
            boundary: None,
            embeddings: None,
            complexity: None,
            bound: None,
        }
    }
}

fn classification_section(graph: &ColouredGraph) -> ClassificationSection {
    let class = graph.classify();
    ClassificationSection {
        class: class.tag.to_string(),
        singular_colour: match class.tag {
            GraphClassTag::SingularRegular(c) => Some(c.value()),
            _ => None,
        },
        residue_surfaces: class
            .residue_surfaces
            .iter()
            .map(|(c, surfaces)| ResidueSurfaceRow {
                colour: c.value(),
                surfaces: surfaces.clone(),
            })
            .collect(),
        offending: class
            .offending
            .iter()
            .map(|&(c, i, s)| (c.value(), i, s))
            .collect(),
        bipartite: graph.is_bipartite(),
        contracted: graph.is_contracted().ok(),
    }
}

fn census_section(graph: &ColouredGraph) -> CensusSection {
    let census = graph.residue_census();
    CensusSection {
        pairs: census.six_tuple(),
        complements: std::array::from_fn(|c| census.complement(Colour::ALL[c])),
    }
}

fn boundary_section(graph: &ColouredGraph) -> Option<Vec<BoundaryRow>> {
    if graph.is_regular() {
        return None;
    }
    graph.boundary_components().ok().map(|components| {
        components
            .into_iter()
            .map(|b| BoundaryRow {
                vertices: b.vertices,
                surface: b.surface,
            })
            .collect()
    })
}

/// The report of a `validate` run: classification, census, boundary.
pub fn validate_report(graph: &ColouredGraph) -> Report {
    let mut report = Report::new("validate", ReportConfig::default());
    report.input = Some(ReportInput::graph(graph));
    report.classification = Some(classification_section(graph));
    report.census = Some(census_section(graph));
    report.boundary = boundary_section(graph);
    report
}

/// The report of an `invariants` run: everything `validate` reports plus the
/// per-embedding genus table.
pub fn invariants_report(graph: &ColouredGraph) -> Result<Report> {
    let mut report = validate_report(graph);
    report.command = "invariants".to_string();
    let is_gem = graph.classify().is_gem();
    let mut rows = Vec::new();
    for order in CyclicOrder::all() {
        rows.push(EmbeddingRow {
            order: order.to_string(),
            embedding: embed(graph, &order)?,
            genus_formulas: if is_gem {
                Some(genus_formulas(graph, &order)?)
            } else {
                None
            },
        });
    }
    report.embeddings = Some(rows);
    Ok(report)
}

/// The report of a `gm` run on a graph.
pub fn gm_report(
    graph: &ColouredGraph,
    alpha: Option<Colour>,
    options: &SearchOptions,
) -> Result<Report> {
    let complexity = gm_complexity(graph, alpha, options)?;
    let mut report = Report::new(
        "gm",
        ReportConfig::for_search(alpha.map(Colour::value), options),
    );
    report.input = Some(ReportInput::graph(graph));
    report.classification = Some(classification_section(graph));
    report.complexity = Some(complexity);
    Ok(report)
}

/// The report of a `gm` run on a Heegaard diagram.
pub fn diagram_gm_report(
    diagram: &HeegaardDiagram,
    options: &SearchOptions,
) -> Result<Report> {
    let complexity = crate::heegaard::chm_diagram(diagram, options)?;
    let mut report = Report::new("gm", ReportConfig::for_search(None, options));
    report.input = Some(ReportInput::diagram(diagram)?);
    report.complexity = Some(complexity);
    Ok(report)
}

/// The report of a `bound` run: the closed-form formula, no search.
pub fn bound_report(params: &SeifertParams) -> Report {
    let formula = complexity_bound(params);
    let mut report = Report::new("bound", ReportConfig::default());
    report.bound = Some(BoundSection {
        p: params.p,
        alpha: params.alpha,
        q: params.q,
        beta: params.beta,
        value: formula.value,
        delta_alpha: formula.delta_alpha,
        delta_beta: formula.delta_beta,
    });
    report
}

/// Serializes a report as pretty JSON with a trailing newline.
pub fn report_to_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

/// Parses a `report-v1` JSON document.
pub fn report_from_json(text: &str) -> Result<Report> {
    let report: Report = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("report-v1 JSON: {e}")))?;
    if report.format != "report-v1" {
        return Err(Error::parse(format!(
            "unsupported format {:?}, expected \"report-v1\"",
            report.format
        )));
    }
    Ok(report)
}

/// Renders a report as human-readable text (one fact per line, deterministic).
pub fn report_to_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gemcraft {} — {}", report.version, report.command);
    let config = &report.config;
    if config.alpha.is_some() || config.limit.is_some() {
        let mut parts = Vec::new();
        if let Some(alpha) = config.alpha {
            parts.push(format!("alpha={alpha}"));
        }
        if let Some(limit) = config.limit {
            parts.push(format!("limit={limit}"));
        }
        if let Some(seed) = config.seed {
            parts.push(format!("seed={seed}"));
        }
        if let Some(mode) = &config.mode {
            parts.push(format!("mode={mode}"));
        }
        let _ = writeln!(out, "config: {}", parts.join(" "));
    }
    if let Some(c) = &report.classification {
        let _ = writeln!(out, "class: {}", c.class);
        let _ = writeln!(
            out,
            "bipartite: {}",
            if c.bipartite { "yes" } else { "no" }
        );
        if let Some(contracted) = c.contracted {
            let _ = writeln!(out, "contracted: {}", if contracted { "yes" } else { "no" });
        }
        for row in &c.residue_surfaces {
            let surfaces = row
                .surfaces
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(out, "residues of colour {}\u{0302}: {surfaces}", row.colour);
        }
        for (colour, index, surface) in &c.offending {
            let _ = writeln!(
                out,
                "offending residue: colour {colour}\u{0302} #{index} is a {surface}"
            );
        }
    }
    if let Some(census) = &report.census {
        let labels = ["01", "02", "03", "12", "13", "23"];
        let pairs = census
            .pairs
            .iter()
            .zip(labels)
            .map(|(g, l)| format!("g{l}={g}"))
            .collect::<Vec<_>>()
            .join(" ");
        let complements = census
            .complements
            .iter()
            .enumerate()
            .map(|(c, g)| format!("g{c}\u{0302}={g}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "census: {pairs} | {complements}");
    }
    if let Some(boundary) = &report.boundary {
        for (i, row) in boundary.iter().enumerate() {
            let _ = writeln!(
                out,
                "boundary component {i}: {} on {} vertices",
                row.surface,
                row.vertices.len()
            );
        }
    }
    if let Some(rows) = &report.embeddings {
        for row in rows {
            let mut line = format!(
                "embedding {}: {}, {} faces",
                row.order, row.embedding.surface, row.embedding.internal_faces
            );
            if let Some(f) = &row.genus_formulas {
                let _ = write!(
                    line,
                    "; genus {} (formulas: {} / {})",
                    f.by_euler, f.variant_a, f.variant_b
                );
            }
            let _ = writeln!(out, "{line}");
        }
    }
    if let Some(c) = &report.complexity {
        let _ = writeln!(
            out,
            "complexity: {} (n_singular={} best_region_size={})",
            c.value, c.n_singular, c.best_region_size
        );
        let alpha = match c.witness.alpha {
            Some(a) => format!("alpha={a} "),
            None => String::new(),
        };
        let _ = writeln!(
            out,
            "witness: {alpha}removed V={:?} W={:?} region={}",
            c.witness.removed_v_labels, c.witness.removed_w_labels, c.witness.region
        );
        let _ = writeln!(
            out,
            "search: {:?} {:?}, {} choices examined",
            c.search_mode, c.status, c.choices_examined
        );
    }
    if let Some(b) = &report.bound {
        let _ = writeln!(
            out,
            "bound for (D²; ({},{}),({},{})): {} (delta_alpha={} delta_beta={})",
            b.p, b.alpha, b.q, b.beta, b.value, b.delta_alpha, b.delta_beta
        );
    }
    out
}

/// The outcome of replaying a stored witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayOutcome {
    /// Whether the recomputation reproduced the recorded values.
    pub matches: bool,
    /// `(value, n_singular, best_region_size)` as recorded.
    pub recorded: (usize, usize, usize),
    /// `(value, n_singular, best_region_size)` as recomputed.
    pub recomputed: (usize, usize, usize),
}

/// Re-evaluates the witness of a complexity report from its embedded input.
///
/// The diagram is rebuilt (re-extracting at the witness's splitting colour
/// for graph inputs), the recorded curve removals are re-checked for
/// admissibility, and the complexity of that single reduction is recomputed
/// and compared with the recorded values.  Reports without a complexity
/// section or an embedded input cannot be replayed.
pub fn replay(report: &Report) -> Result<ReplayOutcome> {
    let complexity = report.complexity.as_ref().ok_or_else(|| {
        Error::precondition("the report has no complexity section to replay")
    })?;
    let input = report.input.as_ref().ok_or_else(|| {
        Error::precondition("the report has no embedded input to replay from")
    })?;
    let diagram = match input {
        ReportInput::Graph { gem } => {
            let graph = graph_from_json(&gem.to_string())?;
            let alpha = complexity.witness.alpha.ok_or_else(|| {
                Error::invalid("graph-input witness lacks a splitting colour")
            })?;
            let alpha = Colour::new(alpha)?;
            match graph.classify().tag {
                GraphClassTag::BoundaryGem => diagram_from_gem(&graph, alpha)?,
                GraphClassTag::SingularRegular(_) => diagram_from_singular(&graph, alpha)?,
                GraphClassTag::ClosedGem => diagram_from_closed(&graph, alpha)?,
                GraphClassTag::Invalid => {
                    return Err(Error::invalid(
                        "the embedded graph is not a gem or singular-regular graph",
                    ))
                }
            }
        }
        ReportInput::Diagram { hdiag } => diagram_from_json(&hdiag.to_string())?,
    };
    // The stored removal sets carry their own admissibility re-check: the
    // evaluation contracts their dual edges and fails on a cycle or a
    // non-reduced survivor system.
    let choice = ReductionChoice {
        removed_v: complexity.witness.removed_v.clone(),
        removed_w: complexity.witness.removed_w.clone(),
        witness_forests: [Vec::new(), Vec::new()],
    };
    let recomputed = chm_of_choices(&diagram, &[choice], complexity.witness.alpha)?;
    let recorded_triple = (
        complexity.value,
        complexity.n_singular,
        complexity.best_region_size,
    );
    let recomputed_triple = (
        recomputed.value,
        recomputed.n_singular,
        recomputed.best_region_size,
    );
    Ok(ReplayOutcome {
        matches: recorded_triple == recomputed_triple
            && complexity.witness.region == recomputed.witness.region,
        recorded: recorded_triple,
        recomputed: recomputed_triple,
    })
}

/// True when a report was produced by a complete exhaustive search, making
/// its value a certified minimum rather than an upper bound.
pub fn is_certified_minimum(report: &ComplexityReport) -> bool {
    report.search_mode == SearchMode::Exhaustive && report.status == SearchStatus::Complete
}
