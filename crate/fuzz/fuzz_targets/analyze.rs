#![no_main]

use libfuzzer_sys::fuzz_target;

use hsc_core::io::{parse_tsv, write_matrix_nexus, write_report, ReportFormat, ReportOptions};
use hsc_core::{analyze, AnalysisConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(table) = parse_tsv(data) else {
        return;
    };
    if let Ok(analysis) = analyze(&table, &AnalysisConfig::default()) {
        let _ = write_matrix_nexus(&analysis.matrix);
        let options = ReportOptions::default();
        let _ = write_report(
            &analysis.traits,
            &analysis.matrix,
            ReportFormat::Html,
            &options,
        );
    }
});
