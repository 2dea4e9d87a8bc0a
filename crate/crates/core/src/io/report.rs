//! Per-trait diagnostic reports in plain text or as a self-contained HTML
//! page.

use std::fmt::Write as _;

use crate::classify::{encode_symbol, CodedMatrix, Procedure, TraitResult, MISSING};
use crate::io::matrix::write_matrix_text;
use crate::stats::AnalysisConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Html,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReportOptions {
    pub config: AnalysisConfig,
    /// Include the distance, critical-distance and separation matrices.
    pub verbose: bool,
}

fn num(x: f64) -> String {
    if x == 0.0 || (1e-3..1e6).contains(&x.abs()) {
        format!("{x:.4}")
    } else {
        format!("{x:.4e}")
    }
}

fn procedure_line(procedure: Procedure) -> &'static str {
    match procedure {
        Procedure::Gt2 => "Hochberg GT2 multiple comparisons (Studentised maximum modulus, pooled variance)",
        Procedure::GamesHowell => {
            "Games and Howell multiple comparisons (Studentised range, per-pair Welch degrees of freedom)"
        }
    }
}

fn bartlett_line(result: &TraitResult) -> String {
    match (result.bartlett, result.bartlett_critical) {
        (Some(b), Some(crit)) => format!(
            "Bartlett B = {} against chi-square critical value {} ({} df): {}",
            num(b),
            num(crit),
            result.analyzed.len() - 1,
            if result.homogeneous {
                "variances homogeneous"
            } else {
                "variances not homogeneous"
            }
        ),
        _ if result.comparison.is_none() => "Bartlett test not applicable".to_string(),
        _ => "Bartlett test skipped (zero variance)".to_string(),
    }
}

fn code_symbol(code: Option<usize>) -> char {
    code.and_then(|c| encode_symbol(c).ok()).unwrap_or(MISSING)
}

/// Member names of a subset, exceptional ones wrapped by `mark`.
fn subset_members(
    result: &TraitResult,
    index: usize,
    mark: impl Fn(&str) -> String,
) -> Vec<String> {
    let subset = &result.subsets[index];
    subset
        .members()
        .map(|p| {
            let name = result.taxon_at(p);
            if subset.is_exceptional(p) {
                mark(name)
            } else {
                name.to_string()
            }
        })
        .collect()
}

fn intro(options: &ReportOptions) -> String {
    let c = options.config;
    format!(
        "Each trait is tested for homogeneity of variances with Bartlett's test \
         (confidence {}). Traits with homogeneous variances are compared with \
         Hochberg's GT2 procedure (confidence {}), the others with the Games and \
         Howell procedure (confidence {}). Taxa are grouped into homogeneous \
         subsets, and taxa belonging to exactly the same subsets share a state.",
        c.bartlett, c.smm, c.sr
    )
}

pub fn write_report(
    results: &[TraitResult],
    matrix: &CodedMatrix,
    format: ReportFormat,
    options: &ReportOptions,
) -> String {
    match format {
        ReportFormat::Text => text_report(results, matrix, options),
        ReportFormat::Html => html_report(results, matrix, options),
    }
}

fn text_report(results: &[TraitResult], matrix: &CodedMatrix, options: &ReportOptions) -> String {
    let mut out = String::from("Homogeneous subset coding report\n\n");
    let _ = writeln!(out, "{}\n", intro(options));
    out.push_str("Coded matrix\n------------\n");
    out.push_str(&write_matrix_text(matrix));

    for result in results {
        let _ = write!(
            out,
            "\nTrait: {}\n{}\n",
            result.trait_name,
            "-".repeat(7 + result.trait_name.chars().count())
        );
        let _ = writeln!(out, "{}", bartlett_line(result));
        if let Some(p) = result.procedure() {
            let _ = writeln!(out, "Procedure: {}", procedure_line(p));
        }
        let width = result
            .taxa
            .iter()
            .map(|t| t.chars().count())
            .max()
            .unwrap_or(0)
            .max(5);
        let _ = writeln!(
            out,
            "\n{:width$}  {:>4}  {:>12}  {:>12}  state",
            "taxon", "N", "mean", "variance"
        );
        for position in 0..result.mean_order.len() {
            let stats = result.stats_at(position);
            let index = result.analyzed[result.mean_order[position]];
            let _ = writeln!(
                out,
                "{:width$}  {:>4}  {:>12}  {:>12}  {}",
                result.taxon_at(position),
                stats.count,
                num(stats.mean),
                num(stats.variance),
                code_symbol(result.codes[index])
            );
        }
        for (index, taxon) in result.taxa.iter().enumerate() {
            if result.codes[index].is_none() {
                let _ = writeln!(out, "{taxon:width$}  (no usable data)  {MISSING}");
            }
        }
        if !result.subsets.is_empty() {
            out.push_str("\nHomogeneous subsets (exceptional members in parentheses):\n");
            for (h, _) in result.subsets.iter().enumerate() {
                let members = subset_members(result, h, |n| format!("({n})"));
                let _ = writeln!(out, "  H{} = {{{}}}", h + 1, members.join(", "));
            }
        }
        if !result.warnings.is_empty() {
            out.push_str("\nWarnings:\n");
            for w in &result.warnings {
                let _ = writeln!(out, "  ! {w}");
            }
        }
        if options.verbose {
            if let Some(cmp) = &result.comparison {
                let size = result.mean_order.len();
                out.push_str("\nDistances |mean_i - mean_j| (mean order):\n");
                for i in 0..size {
                    let row: Vec<String> =
                        (0..size).map(|j| num(cmp.distances.get(i, j))).collect();
                    let _ = writeln!(out, "  {}", row.join(" "));
                }
                out.push_str("Critical distances:\n");
                for i in 0..size {
                    let row: Vec<String> = (0..size).map(|j| num(cmp.critical.get(i, j))).collect();
                    let _ = writeln!(out, "  {}", row.join(" "));
                }
                out.push_str("Separation matrix (1 same, 0 different, * exceptional):\n");
                for line in cmp.separation.to_string().lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
    }
    out
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(c),
        }
    }
    out
}

const STYLE: &str = "body{font-family:sans-serif;margin:2em;max-width:60em}\
table{border-collapse:collapse;margin:0.5em 0}\
td,th{border:1px solid #bbb;padding:0.2em 0.6em;text-align:right}\
td:first-child,th:first-child{text-align:left}\
pre{background:#f4f4f4;padding:0.6em}\
.exceptional{color:#b00;font-weight:bold}\
.warning{color:#a60}";

fn html_report(results: &[TraitResult], matrix: &CodedMatrix, options: &ReportOptions) -> String {
    let mut out = String::from(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n\
         <title>Homogeneous subset coding report</title>\n",
    );
    let _ = writeln!(out, "<style>{STYLE}</style>\n</head>\n<body>");
    out.push_str("<h1>Homogeneous subset coding report</h1>\n");
    let _ = writeln!(out, "<p>{}</p>", escape(&intro(options)));

    out.push_str("<h2>Coded matrix</h2>\n<table>\n<tr><th>taxon</th>");
    for t in &matrix.traits {
        let _ = write!(out, "<th>{}</th>", escape(t));
    }
    out.push_str("<th>code</th></tr>\n");
    for (taxon, row) in matrix.taxa.iter().zip(&matrix.rows) {
        let _ = write!(out, "<tr><td>{}</td>", escape(taxon));
        for c in row.chars() {
            let _ = write!(out, "<td>{c}</td>");
        }
        let _ = writeln!(out, "<td><code>{}</code></td></tr>", escape(row));
    }
    out.push_str("</table>\n");
    let _ = writeln!(out, "<pre>{}</pre>", escape(&write_matrix_text(matrix)));

    for result in results {
        let _ = writeln!(out, "<h2>Trait: {}</h2>", escape(&result.trait_name));
        let _ = writeln!(out, "<p>{}</p>", escape(&bartlett_line(result)));
        if let Some(p) = result.procedure() {
            let _ = writeln!(out, "<p>Procedure: {}</p>", escape(procedure_line(p)));
        }
        out.push_str("<table>\n<tr><th>taxon</th><th>N</th><th>mean</th><th>variance</th><th>state</th></tr>\n");
        for position in 0..result.mean_order.len() {
            let stats = result.stats_at(position);
            let index = result.analyzed[result.mean_order[position]];
            let _ = writeln!(
                out,
                "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>",
                escape(result.taxon_at(position)),
                stats.count,
                num(stats.mean),
                num(stats.variance),
                code_symbol(result.codes[index])
            );
        }
        for (index, taxon) in result.taxa.iter().enumerate() {
            if result.codes[index].is_none() {
                let _ = writeln!(
                    out,
                    "<tr><td>{}</td><td colspan=\"3\">no usable data</td><td>{MISSING}</td></tr>",
                    escape(taxon)
                );
            }
        }
        out.push_str("</table>\n");
        if !result.subsets.is_empty() {
            out.push_str(
                "<p>Homogeneous subsets (exceptional members in parentheses):</p>\n<ul>\n",
            );
            for h in 0..result.subsets.len() {
                let members = subset_members(result, h, |n| {
                    format!("<span class=\"exceptional\">({})</span>", escape(n))
                });
                let members: Vec<String> = members
                    .into_iter()
                    .map(|m| {
                        if m.starts_with("<span") {
                            m
                        } else {
                            escape(&m)
                        }
                    })
                    .collect();
                let _ = writeln!(out, "<li>H{} = {{{}}}</li>", h + 1, members.join(", "));
            }
            out.push_str("</ul>\n");
        }
        if !result.warnings.is_empty() {
            out.push_str("<ul>\n");
            for w in &result.warnings {
                let _ = writeln!(out, "<li class=\"warning\">{}</li>", escape(&w.to_string()));
            }
            out.push_str("</ul>\n");
        }
        if options.verbose {
            if let Some(cmp) = &result.comparison {
                let _ = writeln!(
                    out,
                    "<p>Separation matrix (1 same, 0 different, * exceptional):</p>\n<pre>{}</pre>",
                    cmp.separation
                );
            }
        }
    }
    out.push_str("</body>\n</html>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_trait, code_taxa, TaxonSamples, TraitSamples};

    fn trait_of(name: &str, taxa: &[(&str, &[f64])]) -> TraitResult {
        let samples = TraitSamples {
            name: name.into(),
            taxa: taxa
                .iter()
                .map(|(t, v)| TaxonSamples {
                    taxon: t.to_string(),
                    values: v.to_vec(),
                })
                .collect(),
        };
        classify_trait(&samples, &AnalysisConfig::default()).unwrap()
    }

    #[test]
    fn names_the_procedures() {
        let homo = trait_of(
            "h",
            &[("A", &[1.0, 2.0, 3.0, 2.2]), ("B", &[1.5, 2.5, 3.5, 2.1])],
        );
        let hetero = trait_of(
            "g",
            &[
                ("A", &[1.0, 1.001, 0.999, 1.0]),
                ("B", &[1.0, 9.0, -7.0, 3.0]),
            ],
        );
        let results = vec![homo, hetero];
        let matrix = code_taxa(&results).unwrap();
        let text = write_report(
            &results,
            &matrix,
            ReportFormat::Text,
            &ReportOptions::default(),
        );
        assert!(text.contains("GT2"));
        assert!(text.contains("Games and Howell"));
        let html = write_report(
            &results,
            &matrix,
            ReportFormat::Html,
            &ReportOptions::default(),
        );
        assert!(html.starts_with("<!DOCTYPE html>"));
        assert!(html.contains("GT2") && html.contains("Games and Howell"));
        assert!(!html.contains("<script") && !html.contains("src="));
    }

    #[test]
    fn escapes_html() {
        let r = trait_of(
            "<b>",
            &[("A&B", &[1.0, 2.0, 1.4, 1.7]), ("C", &[1.0, 2.5, 1.9, 1.2])],
        );
        let m = code_taxa(std::slice::from_ref(&r)).unwrap();
        let html = write_report(&[r], &m, ReportFormat::Html, &ReportOptions::default());
        assert!(html.contains("&lt;b&gt;") && html.contains("A&amp;B"));
        assert!(!html.contains("<b>"));
    }

    #[test]
    fn verbose_includes_matrices() {
        let r = trait_of(
            "t",
            &[("A", &[1.0, 2.0, 1.4, 1.7]), ("C", &[1.0, 2.5, 1.9, 1.2])],
        );
        let m = code_taxa(std::slice::from_ref(&r)).unwrap();
        let options = ReportOptions {
            verbose: true,
            ..Default::default()
        };
        let text = write_report(std::slice::from_ref(&r), &m, ReportFormat::Text, &options);
        assert!(text.contains("Separation matrix"));
        let quiet = write_report(&[r], &m, ReportFormat::Text, &ReportOptions::default());
        assert!(!quiet.contains("Separation matrix"));
    }
}
