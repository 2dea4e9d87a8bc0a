//! Homogeneous subset coding of a single trait, and assembly of the coded
//! matrix across traits.

mod matrices;
mod subsets;

use std::cmp::Ordering;
use std::fmt;

pub use matrices::{
    distance_matrix, games_howell_critical_matrix, gt2_critical_matrix, separation_matrix,
    welch_dof, CriticalDistances, PairMatrix, Separation, SeparationMatrix,
};
pub use subsets::{
    assign_trait_codes, decode_symbol, encode_symbol, identify_subsets, HomogeneousSubset,
    MAX_STATES,
};

use crate::error::{Distribution, Error, Result};
use crate::stats::{bartlett_statistic, is_homogeneous, summarize, AnalysisConfig, SummaryStats};
use crate::tables::chi2_quantile;

/// Symbol written for a taxon with no usable data for a trait.
pub const MISSING: char = '?';

/// Measurements of one trait, grouped by taxon.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TraitSamples {
    pub name: String,
    pub taxa: Vec<TaxonSamples>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TaxonSamples {
    pub taxon: String,
    /// May be empty when the taxon was not measured for this trait.
    pub values: Vec<f64>,
}

/// Multiple-comparison procedure used for a trait.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Procedure {
    /// Hochberg's GT2, for homogeneous variances.
    Gt2,
    /// Games and Howell, for inhomogeneous variances.
    GamesHowell,
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Procedure::Gt2 => f.write_str("Hochberg GT2"),
            Procedure::GamesHowell => f.write_str("Games and Howell"),
        }
    }
}

/// Conditions worth a user's attention that do not stop the analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// `k` was below the first table anchor and was raised to it.
    KRaised {
        distribution: Distribution,
        requested: f64,
        used: f64,
    },
    /// `k` was above the last table anchor and was locked to it.
    KClamped {
        distribution: Distribution,
        requested: f64,
        used: f64,
    },
    /// Bartlett's test was skipped because these taxa have zero variance.
    ZeroVariance { taxa: Vec<String> },
    /// Taxa kept inside a subset despite differing from its first member.
    ExceptionalMembers {
        subset: Vec<String>,
        taxa: Vec<String>,
    },
    /// Pairs of taxa lying in a common subset although their comparison
    /// found them different.
    GapPairs { pairs: Vec<(String, String)> },
    /// Only one taxon had data; it was given code 0.
    SingleTaxon { taxon: String },
    /// Taxon left out of this trait for lack of measurements.
    Excluded { taxon: String, count: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::KRaised {
                distribution,
                requested,
                used,
            } => write!(
                f,
                "{distribution} k = {requested} is below the table; raised to k = {used} (conservative)"
            ),
            Warning::KClamped {
                distribution,
                requested,
                used,
            } => write!(
                f,
                "{distribution} k = {requested} is beyond the table; locked at k = {used}"
            ),
            Warning::ZeroVariance { taxa } => write!(
                f,
                "zero variance in {}; Bartlett's test skipped, using Games and Howell",
                taxa.join(", ")
            ),
            Warning::ExceptionalMembers { subset, taxa } => write!(
                f,
                "subset {{{}}} has exceptional members {}; re-check these data",
                subset.join(", "),
                taxa.join(", ")
            ),
            Warning::GapPairs { pairs } => {
                let pairs: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}/{b}")).collect();
                write!(
                    f,
                    "significantly different pairs inside homogeneous subsets: {}",
                    pairs.join(", ")
                )
            }
            Warning::SingleTaxon { taxon } => {
                write!(f, "only {taxon} has data; coded as state 0")
            }
            Warning::Excluded { taxon, count } => write!(
                f,
                "{taxon} excluded: {count} measurement(s), at least 2 needed"
            ),
        }
    }
}

/// Everything computed from the pairwise comparisons of a trait. Matrices
/// are indexed by mean order.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub procedure: Procedure,
    pub distances: PairMatrix,
    pub critical: PairMatrix,
    /// After subset identification, i.e. with `Gap` marks.
    pub separation: SeparationMatrix,
}

/// Outcome of coding one trait.
#[derive(Debug, Clone, PartialEq)]
pub struct TraitResult {
    pub trait_name: String,
    /// All taxa of the input, in input order.
    pub taxa: Vec<String>,
    /// Indices into `taxa` of the analysed taxa, in input order.
    pub analyzed: Vec<usize>,
    /// Statistics of the analysed taxa, parallel to `analyzed`.
    pub stats: Vec<SummaryStats>,
    /// Indices into `analyzed`, sorted by ascending mean.
    pub mean_order: Vec<usize>,
    /// `None` when the test was skipped.
    pub bartlett: Option<f64>,
    /// χ² quantile the statistic was compared against.
    pub bartlett_critical: Option<f64>,
    pub homogeneous: bool,
    /// `None` when fewer than two taxa were analysed.
    pub comparison: Option<Comparison>,
    /// Positions refer to `mean_order`.
    pub subsets: Vec<HomogeneousSubset>,
    /// Code number per taxon of `taxa`; `None` for missing data.
    pub codes: Vec<Option<usize>>,
    pub warnings: Vec<Warning>,
}

impl TraitResult {
    /// Name of the taxon at a mean-order position.
    pub fn taxon_at(&self, position: usize) -> &str {
        &self.taxa[self.analyzed[self.mean_order[position]]]
    }

    /// Statistics of the taxon at a mean-order position.
    pub fn stats_at(&self, position: usize) -> &SummaryStats {
        &self.stats[self.mean_order[position]]
    }

    pub fn procedure(&self) -> Option<Procedure> {
        self.comparison.as_ref().map(|c| c.procedure)
    }

    /// Number of distinct states.
    pub fn state_count(&self) -> usize {
        self.codes.iter().flatten().max().map_or(0, |m| m + 1)
    }
}

/// Ascending order of means; equal means are ordered by name, then by
/// input position.
pub fn sort_by_mean<S: AsRef<str>>(stats: &[SummaryStats], names: &[S]) -> Vec<usize> {
    assert_eq!(stats.len(), names.len(), "one name per taxon");
    let mut order: Vec<usize> = (0..stats.len()).collect();
    order.sort_by(|&a, &b| {
        stats[a]
            .mean
            .partial_cmp(&stats[b].mean)
            .unwrap_or(Ordering::Equal)
            .then_with(|| names[a].as_ref().cmp(names[b].as_ref()))
    });
    order
}

/// Codes one trait: Bartlett's test, GT2 or Games–Howell critical
/// distances, separation matrix, homogeneous subsets and code numbers.
///
/// Taxa without measurements are coded as missing; taxa with a single
/// measurement are excluded with a warning. Taxa with zero variance send
/// the trait to the Games–Howell branch.
pub fn classify_trait(samples: &TraitSamples, config: &AnalysisConfig) -> Result<TraitResult> {
    let taxa: Vec<String> = samples.taxa.iter().map(|t| t.taxon.clone()).collect();
    let mut warnings = Vec::new();
    let mut analyzed = Vec::new();
    let mut stats = Vec::new();
    for (index, taxon) in samples.taxa.iter().enumerate() {
        match taxon.values.len() {
            0 => {}
            1 => warnings.push(Warning::Excluded {
                taxon: taxon.taxon.clone(),
                count: 1,
            }),
            _ => {
                stats.push(summarize(&taxon.values)?);
                analyzed.push(index);
            }
        }
    }

    let mut result = TraitResult {
        trait_name: samples.name.clone(),
        codes: vec![None; taxa.len()],
        taxa,
        mean_order: Vec::new(),
        bartlett: None,
        bartlett_critical: None,
        homogeneous: false,
        comparison: None,
        subsets: Vec::new(),
        analyzed,
        stats,
        warnings,
    };

    match result.analyzed.len() {
        0 => {
            return Err(Error::NoData {
                trait_name: samples.name.clone(),
            })
        }
        1 => {
            let index = result.analyzed[0];
            result.mean_order = vec![0];
            result.codes[index] = Some(0);
            result.subsets = vec![HomogeneousSubset {
                anchor: 0,
                last: 0,
                exceptional: Vec::new(),
            }];
            result.warnings.push(Warning::SingleTaxon {
                taxon: result.taxa[index].clone(),
            });
            return Ok(result);
        }
        _ => {}
    }

    let names: Vec<&str> = result
        .analyzed
        .iter()
        .map(|&i| result.taxa[i].as_str())
        .collect();
    result.mean_order = sort_by_mean(&result.stats, &names);
    let sorted: Vec<SummaryStats> = result.mean_order.iter().map(|&i| result.stats[i]).collect();

    let zero_variance: Vec<String> = result
        .mean_order
        .iter()
        .filter(|&&i| result.stats[i].variance == 0.0)
        .map(|&i| names[i].to_string())
        .collect();
    if zero_variance.is_empty() {
        let b = bartlett_statistic(&sorted)?;
        result.bartlett = Some(b);
        result.bartlett_critical = Some(chi2_quantile(
            config.bartlett.value(),
            (sorted.len() - 1) as u32,
        )?);
        result.homogeneous = is_homogeneous(b, sorted.len(), config)?;
    } else {
        result.warnings.push(Warning::ZeroVariance {
            taxa: zero_variance,
        });
    }

    let (procedure, critical) = if result.homogeneous {
        (Procedure::Gt2, gt2_critical_matrix(&sorted, config)?)
    } else {
        (
            Procedure::GamesHowell,
            games_howell_critical_matrix(&sorted, config)?,
        )
    };
    result.warnings.extend(critical.warnings);
    let distances = distance_matrix(&sorted);
    let mut separation = separation_matrix(&distances, &critical.matrix);
    result.subsets = identify_subsets(&mut separation);

    let codes = assign_trait_codes(&result.subsets, sorted.len())?;
    for (position, code) in codes.into_iter().enumerate() {
        let index = result.analyzed[result.mean_order[position]];
        result.codes[index] = Some(code);
    }

    for subset in &result.subsets {
        if !subset.exceptional.is_empty() {
            result.warnings.push(Warning::ExceptionalMembers {
                subset: subset
                    .members()
                    .map(|p| result.taxon_at(p).to_string())
                    .collect(),
                taxa: subset
                    .exceptional
                    .iter()
                    .map(|&p| result.taxon_at(p).to_string())
                    .collect(),
            });
        }
    }
    let gap_pairs: Vec<(String, String)> = (0..sorted.len())
        .flat_map(|i| (i + 1..sorted.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| separation.get(i, j) == Separation::Gap)
        .map(|(i, j)| {
            (
                result.taxon_at(i).to_string(),
                result.taxon_at(j).to_string(),
            )
        })
        .collect();
    if !gap_pairs.is_empty() {
        result.warnings.push(Warning::GapPairs { pairs: gap_pairs });
    }

    result.comparison = Some(Comparison {
        procedure,
        distances,
        critical: critical.matrix,
        separation,
    });
    Ok(result)
}

/// Taxa × characters matrix of state symbols.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CodedMatrix {
    pub taxa: Vec<String>,
    pub traits: Vec<String>,
    /// One string per taxon, one symbol per trait.
    pub rows: Vec<String>,
    /// Number of distinct states per trait.
    pub state_counts: Vec<usize>,
    /// `trait: message` lines.
    pub warnings: Vec<String>,
}

impl CodedMatrix {
    /// Symbols in use, in code order.
    pub fn symbols(&self) -> Vec<char> {
        let max = self.state_counts.iter().copied().max().unwrap_or(0);
        (0..max).filter_map(|c| encode_symbol(c).ok()).collect()
    }

    pub fn has_missing(&self) -> bool {
        self.rows.iter().any(|r| r.contains(MISSING))
    }
}

/// Concatenates per-trait codes into one symbol string per taxon.
pub fn code_taxa(results: &[TraitResult]) -> Result<CodedMatrix> {
    let Some(first) = results.first() else {
        return Ok(CodedMatrix::default());
    };
    if let Some(other) = results.iter().find(|r| r.taxa != first.taxa) {
        return Err(Error::InvalidParameter(format!(
            "trait `{}` was coded over a different set of taxa",
            other.trait_name
        )));
    }
    let mut rows = vec![String::with_capacity(results.len()); first.taxa.len()];
    for result in results {
        for (row, code) in rows.iter_mut().zip(&result.codes) {
            row.push(match code {
                Some(c) => encode_symbol(*c)?,
                None => MISSING,
            });
        }
    }
    Ok(CodedMatrix {
        taxa: first.taxa.clone(),
        traits: results.iter().map(|r| r.trait_name.clone()).collect(),
        rows,
        state_counts: results.iter().map(TraitResult::state_count).collect(),
        warnings: results
            .iter()
            .flat_map(|r| {
                r.warnings
                    .iter()
                    .map(move |w| format!("{}: {w}", r.trait_name))
            })
            .collect(),
    })
}
