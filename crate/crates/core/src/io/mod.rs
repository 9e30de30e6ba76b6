//! Problem files, solution reports and plot data.

mod format;
mod plot;
mod report;

pub use format::{parse_problem, parse_rows, serialize_problem, ParseError, ParseErrorKind, FORMAT_NAME, FORMAT_VERSION};
pub use plot::{emit_plot_data, plot_sets, PlotError, PlotSet};
pub use report::{
    max_abs_scaled, CertificateReport, CertificatesReport, GeneratorsReport, SolutionReport, StatsReport,
    DECIMALS,
};
