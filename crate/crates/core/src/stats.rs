//! Per-taxon summary statistics and Bartlett's test for homogeneity of
//! variances.
//!
//! The Bartlett verdict decides which multiple-comparison procedure a trait
//! is analysed with: GT2 when variances are homogeneous, Games–Howell
//! otherwise.

use std::fmt;

use crate::error::{Error, Result};
use crate::tables::chi2_quantile;

/// Confidence level of a test. Only the levels for which critical-value
/// tables are shipped are representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Confidence {
    #[default]
    P95,
    P99,
}

impl Confidence {
    pub const ALL: [Confidence; 2] = [Confidence::P95, Confidence::P99];

    pub fn value(self) -> f64 {
        match self {
            Confidence::P95 => 0.95,
            Confidence::P99 => 0.99,
        }
    }
}

impl TryFrom<f64> for Confidence {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        if (value - 0.95).abs() < 1e-9 {
            Ok(Confidence::P95)
        } else if (value - 0.99).abs() < 1e-9 {
            Ok(Confidence::P99)
        } else {
            Err(Error::InvalidParameter(format!(
                "confidence {value} is not tabulated (use 0.95 or 0.99)"
            )))
        }
    }
}

impl std::str::FromStr for Confidence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("`{s}` is not a confidence level")))?;
        Confidence::try_from(value)
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2}", self.value())
    }
}

/// Confidence levels for the three tests run on every trait.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalysisConfig {
    pub bartlett: Confidence,
    pub smm: Confidence,
    pub sr: Confidence,
}

impl AnalysisConfig {
    /// The same confidence level for every test.
    pub fn uniform(confidence: Confidence) -> Self {
        AnalysisConfig {
            bartlett: confidence,
            smm: confidence,
            sr: confidence,
        }
    }
}

/// Summary of one taxon's measurements for one trait.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub count: usize,
    /// Degrees of freedom, `count - 1`.
    pub dof: usize,
    pub mean: f64,
    /// Unbiased sample variance (divisor `count - 1`).
    pub variance: f64,
    /// Squared standard error of the mean, `variance / count`.
    pub sem_sq: f64,
}

impl SummaryStats {
    pub fn from_sample(sample: &[f64]) -> Result<Self> {
        summarize(sample)
    }
}

/// Computes count, mean and unbiased variance of a sample of at least two
/// finite values.
pub fn summarize(sample: &[f64]) -> Result<SummaryStats> {
    if let Some(index) = sample.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFiniteValue { index });
    }
    let count = sample.len();
    if count < 2 {
        return Err(Error::TooFewMeasurements { count });
    }
    let n = count as f64;
    let mut mean = sample.iter().sum::<f64>() / n;
    // one correction step removes most of the rounding in the naive sum
    mean += sample.iter().map(|x| x - mean).sum::<f64>() / n;
    let ss: f64 = sample.iter().map(|x| (x - mean) * (x - mean)).sum();
    let variance = ss / (n - 1.0);
    Ok(SummaryStats {
        count,
        dof: count - 1,
        mean,
        variance,
        sem_sq: variance / n,
    })
}

/// Degrees-of-freedom weighted mean of the taxon variances.
pub fn pooled_variance(stats: &[SummaryStats]) -> Result<f64> {
    if stats.len() < 2 {
        return Err(Error::TooFewTaxa { count: stats.len() });
    }
    let total_dof: f64 = stats.iter().map(|s| s.dof as f64).sum();
    let weighted: f64 = stats.iter().map(|s| s.dof as f64 * s.variance).sum();
    Ok(weighted / total_dof)
}

/// Bartlett's statistic with the usual small-sample correction factor,
/// using natural logarithms.
pub fn bartlett_statistic(stats: &[SummaryStats]) -> Result<f64> {
    if stats.len() < 2 {
        return Err(Error::TooFewTaxa { count: stats.len() });
    }
    if let Some(index) = stats.iter().position(|s| s.variance <= 0.0) {
        return Err(Error::ZeroVariance { index });
    }
    let pooled = pooled_variance(stats)?;
    let taxa = stats.len() as f64;
    let total_dof: f64 = stats.iter().map(|s| s.dof as f64).sum();
    let inv_dof: f64 = stats.iter().map(|s| 1.0 / s.dof as f64).sum();
    let correction = 1.0 + (inv_dof - 1.0 / total_dof) / (3.0 * (taxa - 1.0));

    // Σn·ln(pooled) − Σn·ln(σ²) written term-wise as Σn·ln(pooled/σ²) so that
    // a common rescaling of the data cancels inside each logarithm.
    let raw: f64 = stats
        .iter()
        .map(|s| s.dof as f64 * (pooled / s.variance).ln())
        .sum();
    // B ≥ 0 analytically; anything below is rounding
    Ok((raw / correction).max(0.0))
}

/// True when `statistic` falls below the χ² quantile with `taxa - 1`
/// degrees of freedom at the Bartlett confidence level.
pub fn is_homogeneous(statistic: f64, taxa: usize, config: &AnalysisConfig) -> Result<bool> {
    if taxa < 2 {
        return Err(Error::TooFewTaxa { count: taxa });
    }
    if statistic.is_nan() || statistic < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Bartlett statistic must be non-negative, got {statistic}"
        )));
    }
    let threshold = chi2_quantile(config.bartlett.value(), (taxa - 1) as u32)?;
    Ok(statistic < threshold)
}
