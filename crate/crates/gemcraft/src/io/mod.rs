//! File formats and reports.
//!
//! | Format | Direction | Contents |
//! |---|---|---|
//! | `gem-v1` JSON | read/write | coloured graphs |
//! | compact text | read/write | coloured graphs, one colour per line |
//! | `hdiag-v1` JSON | read/write | Heegaard diagrams of pure curve crossings |
//! | `report-v1` JSON | read/write | self-contained computation reports |
//! | `complex-v1` JSON | write | spanned pseudocomplex (debugging) |
//! | DOT / SVG | write | diagnostic drawings |
//!
//! All writers are canonical: equal objects produce byte-identical bytes, and
//! nothing time- or machine-dependent is ever emitted.  All readers validate
//! what they load and fail with positional messages.

mod diagram;
mod export;
mod graph;
mod report;

pub use diagram::{diagram_from_json, diagram_to_json};
pub use export::{complex_to_json, graph_to_dot, graph_to_svg, SVG_VERTEX_LIMIT};
pub use graph::{graph_from_json, graph_from_text, graph_to_json, graph_to_text, load_graph};
pub use report::{
    bound_report, diagram_gm_report, gm_report, invariants_report, is_certified_minimum, replay,
    report_from_json, report_to_json, report_to_text, validate_report, BoundSection,
    CensusSection, ClassificationSection, EmbeddingRow, ReplayOutcome, Report, ReportConfig,
    ReportInput, ResidueSurfaceRow,
};
