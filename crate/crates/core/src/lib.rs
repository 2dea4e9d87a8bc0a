//! Homogeneous subset coding (HSC) of continuous trait measurements into
//! discrete character states for cladistic analysis.
//!
//! For each trait the taxa are compared pairwise: Bartlett's test chooses
//! between Hochberg's GT2 (homogeneous variances) and the Games–Howell
//! procedure, the resulting separation matrix is split into maximal
//! homogeneous subsets, and taxa lying in exactly the same subsets share a
//! state. States are written as `0-9a-zA-Z` and concatenated over traits.
//!
//! ```
//! use hsc_core::{analyze, io::parse_tsv, AnalysisConfig};
//!
//! let data = b"length\nA\t1.0\nA\t1.1\nA\t0.9\nA\t1.2\nB\t5.0\nB\t5.1\nB\t4.9\nB\t5.2\n";
//! let table = parse_tsv(data).unwrap();
//! let analysis = analyze(&table, &AnalysisConfig::default()).unwrap();
//! assert_eq!(analysis.matrix.rows, vec!["0", "1"]);
//! ```

pub mod classify;
pub mod error;
pub mod io;
pub mod stats;
pub mod tables;

pub use classify::{classify_trait, code_taxa, CodedMatrix, TraitResult};
pub use error::{Error, Result};
pub use stats::{AnalysisConfig, Confidence, SummaryStats};

use io::DatasetTable;

/// Coded results of a whole dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub config: AnalysisConfig,
    pub traits: Vec<TraitResult>,
    pub matrix: CodedMatrix,
}

/// Codes every trait of a table and assembles the matrix.
pub fn analyze(table: &DatasetTable, config: &AnalysisConfig) -> Result<Analysis> {
    let traits = (0..table.traits.len())
        .map(|t| {
            classify_trait(&table.trait_samples(t), config).map_err(|e| Error::InTrait {
                name: table.traits[t].clone(),
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = code_taxa(&traits)?;
    Ok(Analysis {
        config: *config,
        traits,
        matrix,
    })
}
