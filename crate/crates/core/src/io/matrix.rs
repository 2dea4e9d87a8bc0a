//! Coded-matrix writers: padded plain text and a Nexus `DATA` block.

use std::fmt::Write as _;

use crate::classify::{CodedMatrix, MAX_STATES, MISSING};
use crate::error::{Error, Result};

/// Number of lines [`write_matrix_text`] writes before the taxon rows.
pub const TEXT_HEADER_LINES: usize = 1;

/// One line per taxon in input order: the name, padding, then the symbol
/// string. Preceded by a single comment line listing the characters.
pub fn write_matrix_text(matrix: &CodedMatrix) -> String {
    let width = matrix
        .taxa
        .iter()
        .map(|t| t.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = format!(
        "# {} taxa, {} characters: {}\n",
        matrix.taxa.len(),
        matrix.traits.len(),
        matrix.traits.join(", ")
    );
    for (taxon, row) in matrix.taxa.iter().zip(&matrix.rows) {
        let pad = width - taxon.chars().count() + 2;
        let _ = writeln!(out, "{taxon}{:pad$}{row}", "");
    }
    out
}

/// Quotes a Nexus token when it is not a plain word.
pub fn nexus_token(name: &str) -> String {
    let plain = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'));
    if plain {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\'', "''"))
    }
}

/// Nexus file with a single `DATA` block using the standard datatype.
pub fn write_matrix_nexus(matrix: &CodedMatrix) -> Result<String> {
    if let Some(&states) = matrix.state_counts.iter().find(|&&n| n > MAX_STATES) {
        return Err(Error::TooManyStates { code: states - 1 });
    }
    let mut symbols: String = matrix.symbols().into_iter().collect();
    if symbols.is_empty() {
        symbols.push('0');
    }
    let respect_case = if symbols.chars().any(|c| c.is_ascii_uppercase()) {
        " RESPECTCASE"
    } else {
        ""
    };
    let names: Vec<String> = matrix.taxa.iter().map(|t| nexus_token(t)).collect();
    let width = names.iter().map(|n| n.chars().count()).max().unwrap_or(0);

    let mut out = String::from("#NEXUS\n\nBEGIN DATA;\n");
    let _ = writeln!(
        out,
        "\tDIMENSIONS NTAX={} NCHAR={};",
        matrix.taxa.len(),
        matrix.traits.len()
    );
    let _ = writeln!(
        out,
        "\tFORMAT DATATYPE=STANDARD{respect_case} SYMBOLS=\"{symbols}\" MISSING={MISSING};"
    );
    if !matrix.traits.is_empty() {
        let labels: Vec<String> = matrix.traits.iter().map(|t| nexus_token(t)).collect();
        let _ = writeln!(out, "\tCHARLABELS {};", labels.join(" "));
    }
    out.push_str("\tMATRIX\n");
    for (name, row) in names.iter().zip(&matrix.rows) {
        let pad = width - name.chars().count() + 2;
        let _ = writeln!(out, "\t{name}{:pad$}{row}", "");
    }
    out.push_str("\t;\nEND;\n");
    Ok(out)
}
