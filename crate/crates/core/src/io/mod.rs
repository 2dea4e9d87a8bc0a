//! Reading specimen data and writing coded matrices and reports.

mod matrix;
mod report;
mod tsv;

pub use matrix::{nexus_token, write_matrix_nexus, write_matrix_text, TEXT_HEADER_LINES};
pub use report::{write_report, ReportFormat, ReportOptions};
pub use tsv::{parse_tsv, parse_tsv_str, write_tsv, DatasetTable, SpecimenRow};
