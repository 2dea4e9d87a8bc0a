//! Tab-separated specimen data.
//!
//! The first line holds the `T` trait names. Every following line holds a
//! taxon name and `T` values, so `T + 1` fields. Several lines may share a
//! taxon name; their values are pooled. Empty cells and `NA` are missing.
//! Blank lines are ignored and CRLF line endings are accepted.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::classify::{TaxonSamples, TraitSamples};
use crate::error::{Error, Result};

/// One specimen.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecimenRow {
    pub taxon: String,
    /// One entry per trait; `None` is missing.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DatasetTable {
    pub traits: Vec<String>,
    /// In file order.
    pub rows: Vec<SpecimenRow>,
}

impl DatasetTable {
    /// Distinct taxon names in order of first appearance.
    pub fn taxa(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.rows
            .iter()
            .filter(|r| seen.insert(r.taxon.as_str()))
            .map(|r| r.taxon.clone())
            .collect()
    }

    /// Per-taxon measurement vectors for one trait, in file row order. Every
    /// taxon of the table is present, possibly with no values.
    pub fn trait_samples(&self, index: usize) -> TraitSamples {
        let taxa = self.taxa();
        let mut samples: Vec<TaxonSamples> = taxa
            .iter()
            .map(|t| TaxonSamples {
                taxon: t.clone(),
                values: Vec::new(),
            })
            .collect();
        for row in &self.rows {
            if let Some(value) = row.values[index] {
                let slot = taxa
                    .iter()
                    .position(|t| *t == row.taxon)
                    .expect("taxon listed");
                samples[slot].values.push(value);
            }
        }
        TraitSamples {
            name: self.traits[index].clone(),
            taxa: samples,
        }
    }
}

/// Names are trimmed of whitespace and stray byte-order marks.
fn clean_name(field: &str) -> &str {
    field.trim_matches(|c: char| c.is_whitespace() || c == '\u{feff}')
}

fn parse_cell(text: &str, line: usize, column: usize) -> Result<Option<f64>> {
    let text = text.trim();
    if text.is_empty() || text == "NA" {
        return Ok(None);
    }
    let unparseable = || Error::UnparseableNumber {
        line,
        column,
        text: text.to_string(),
    };
    // only plain decimal notation: digits, sign, point, exponent
    if !text
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'))
    {
        return Err(unparseable());
    }
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Some(v)),
        _ => Err(unparseable()),
    }
}

/// Parses tab-separated specimen data.
pub fn parse_tsv(input: &[u8]) -> Result<DatasetTable> {
    let text = std::str::from_utf8(input).map_err(|e| Error::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    parse_tsv_str(text)
}

/// [`parse_tsv`] on already-decoded text.
pub fn parse_tsv_str(text: &str) -> Result<DatasetTable> {
    let text = text.trim_start_matches('\u{feff}');
    if text.trim().is_empty() {
        return Err(Error::EmptyFile);
    }
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l));

    let (_, header) = lines.next().expect("non-empty input has a first line");
    if header.trim().is_empty() {
        return Err(Error::EmptyHeader);
    }
    let traits: Vec<String> = header
        .split('\t')
        .map(|t| clean_name(t).to_string())
        .collect();
    let mut seen = HashSet::new();
    for (column, name) in traits.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::EmptyTraitName { column: column + 1 });
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateTrait { name: name.clone() });
        }
    }

    let expected = traits.len() + 1;
    let mut rows = Vec::new();
    for (line, content) in lines {
        if content.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split('\t').collect();
        if fields.len() != expected {
            return Err(Error::ColumnCountMismatch {
                line,
                expected,
                found: fields.len(),
            });
        }
        let taxon = clean_name(fields[0]);
        if taxon.is_empty() {
            return Err(Error::EmptyTaxonName { line });
        }
        let values = fields[1..]
            .iter()
            .enumerate()
            .map(|(i, cell)| parse_cell(cell, line, i + 2))
            .collect::<Result<Vec<_>>>()?;
        rows.push(SpecimenRow {
            taxon: taxon.to_string(),
            values,
        });
    }
    Ok(DatasetTable { traits, rows })
}

/// Serializes a table in the format read by [`parse_tsv`]. Missing values
/// become empty cells.
pub fn write_tsv(table: &DatasetTable) -> String {
    let mut out = table.traits.join("\t");
    out.push('\n');
    for row in &table.rows {
        out.push_str(&row.taxon);
        for value in &row.values {
            out.push('\t');
            if let Some(v) = value {
                let _ = write!(out, "{v}");
            }
        }
        out.push('\n');
    }
    out
}
