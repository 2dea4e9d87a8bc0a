//! Distance, critical-distance and separation matrices over mean-ordered
//! taxa.

use std::fmt;

use crate::classify::Warning;
use crate::error::{Distribution, Result};
use crate::stats::{pooled_variance, AnalysisConfig, SummaryStats};
use crate::tables;

/// Symmetric `S × S` matrix of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl PairMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; size * size];
        for i in 0..size {
            for j in i..size {
                let v = f(i, j);
                entries[i * size + j] = v;
                entries[j * size + i] = v;
            }
        }
        PairMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }
}

/// Entry of the separation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Separation {
    /// Statistically indistinguishable.
    One,
    /// Significantly different.
    Zero,
    /// A `Zero` lying inside a homogeneous subset; the taxon was kept as an
    /// exceptional member.
    Gap,
}

impl Separation {
    pub fn symbol(self) -> char {
        match self {
            Separation::One => '1',
            Separation::Zero => '0',
            Separation::Gap => '*',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationMatrix {
    size: usize,
    entries: Vec<Separation>,
}

impl SeparationMatrix {
    /// Builds a matrix from the upper triangle; `f(i, j)` is called for
    /// `i < j` and the diagonal is `One`.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Separation) -> Self {
        let mut entries = vec![Separation::One; size * size];
        for i in 0..size {
            for j in i + 1..size {
                let v = f(i, j);
                entries[i * size + j] = v;
                entries[j * size + i] = v;
            }
        }
        SeparationMatrix { size, entries }
    }

    /// Parses rows of `1`/`0`/`*` characters. Returns `None` if the rows
    /// are not square or contain other characters. Symmetry is not checked.
    pub fn from_rows(rows: &[&str]) -> Option<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            let row: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
            if row.len() != size {
                return None;
            }
            for c in row {
                entries.push(match c {
                    '1' => Separation::One,
                    '0' => Separation::Zero,
                    '*' => Separation::Gap,
                    _ => return None,
                });
            }
        }
        Some(SeparationMatrix { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> Separation {
        self.entries[i * self.size + j]
    }

    /// Sets `(i, j)` and `(j, i)`.
    pub fn set_pair(&mut self, i: usize, j: usize, value: Separation) {
        self.entries[i * self.size + j] = value;
        self.entries[j * self.size + i] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl fmt::Display for SeparationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size)
                .map(|j| self.get(i, j).symbol().to_string())
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Absolute differences of the means.
pub fn distance_matrix(stats: &[SummaryStats]) -> PairMatrix {
    PairMatrix::from_fn(stats.len(), |i, j| {
        if i == j {
            0.0
        } else {
            (stats[i].mean - stats[j].mean).abs()
        }
    })
}

/// Critical distances together with any table-range warnings raised while
/// computing them.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalDistances {
    pub matrix: PairMatrix,
    pub warnings: Vec<Warning>,
}

/// Hochberg GT2 critical distances for the homogeneous-variance case.
///
/// `D_ij = SMM(k*, Σn, C) · sqrt(pooled · (1/N_i + 1/N_j))` with
/// `k* = S(S−1)/2`. A `k*` below the first SMM anchor (only `S = 2`) is
/// raised to it.
pub fn gt2_critical_matrix(
    stats: &[SummaryStats],
    config: &AnalysisConfig,
) -> Result<CriticalDistances> {
    let pooled = pooled_variance(stats)?;
    let taxa = stats.len();
    let k_star = (taxa * (taxa - 1) / 2) as f64;
    let total_dof: f64 = stats.iter().map(|s| s.dof as f64).sum();

    let table = tables::builtin(Distribution::Smm, config.smm);
    let k_floor = table.k_anchors()[0];
    let mut warnings = Vec::new();
    let k = if k_star < k_floor {
        warnings.push(Warning::KRaised {
            distribution: Distribution::Smm,
            requested: k_star,
            used: k_floor,
        });
        k_floor
    } else {
        k_star
    };
    let lookup = table.lookup(k, total_dof)?;
    if lookup.clamped() {
        warnings.push(Warning::KClamped {
            distribution: Distribution::Smm,
            requested: lookup.k_requested,
            used: lookup.k_used,
        });
    }
    let critical = lookup.value;
    let matrix = PairMatrix::from_fn(taxa, |i, j| {
        let inv_n = 1.0 / stats[i].count as f64 + 1.0 / stats[j].count as f64;
        critical * (pooled * inv_n).sqrt()
    });
    Ok(CriticalDistances { matrix, warnings })
}

/// Welch–Satterthwaite degrees of freedom of a pair of taxa. When both
/// squared standard errors vanish the value is undefined; the pooled
/// degrees of freedom `n_i + n_j` are returned instead.
pub fn welch_dof(a: &SummaryStats, b: &SummaryStats) -> f64 {
    let num = (a.sem_sq + b.sem_sq).powi(2);
    let den = a.sem_sq.powi(2) / a.dof as f64 + b.sem_sq.powi(2) / b.dof as f64;
    if den > 0.0 {
        num / den
    } else {
        (a.dof + b.dof) as f64
    }
}

/// Games–Howell critical distances for the inhomogeneous-variance case:
/// `D_ij = SR(S, ν*_ij, C) · sqrt(ŝ²_i + ŝ²_j)`.
pub fn games_howell_critical_matrix(
    stats: &[SummaryStats],
    config: &AnalysisConfig,
) -> Result<CriticalDistances> {
    let taxa = stats.len();
    let table = tables::builtin(Distribution::Sr, config.sr);
    let mut values = vec![0.0; taxa * taxa];
    let mut clamp = None;
    for i in 0..taxa {
        for j in i + 1..taxa {
            let dof = welch_dof(&stats[i], &stats[j]);
            let lookup = table.lookup(taxa as f64, dof)?;
            if lookup.clamped() {
                clamp = Some((lookup.k_requested, lookup.k_used));
            }
            values[i * taxa + j] = lookup.value * (stats[i].sem_sq + stats[j].sem_sq).sqrt();
        }
    }
    let matrix = PairMatrix::from_fn(taxa, |i, j| if i == j { 0.0 } else { values[i * taxa + j] });
    let warnings = clamp
        .map(|(requested, used)| Warning::KClamped {
            distribution: Distribution::Sr,
            requested,
            used,
        })
        .into_iter()
        .collect();
    Ok(CriticalDistances { matrix, warnings })
}

/// `One` where `d_ij < D_ij` (strictly), `Zero` otherwise; the diagonal is
/// always `One`.
pub fn separation_matrix(distances: &PairMatrix, critical: &PairMatrix) -> SeparationMatrix {
    assert_eq!(distances.size(), critical.size(), "matrix orders differ");
    SeparationMatrix::from_fn(distances.size(), |i, j| {
        if distances.get(i, j) < critical.get(i, j) {
            Separation::One
        } else {
            Separation::Zero
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{summarize, Confidence};

    fn with_mean(mean: f64) -> SummaryStats {
        SummaryStats {
            count: 20,
            dof: 19,
            mean,
            variance: 0.01,
            sem_sq: 0.0005,
        }
    }

    fn with_sem(sem_sq: f64, count: usize) -> SummaryStats {
        SummaryStats {
            count,
            dof: count - 1,
            mean: 0.0,
            variance: sem_sq * count as f64,
            sem_sq,
        }
    }

    #[test]
    fn distances_from_means() {
        let d = distance_matrix(&[with_mean(0.35), with_mean(0.47), with_mean(0.93)]);
        assert!((d.get(0, 1) - 0.12).abs() < 1e-12);
        assert!((d.get(0, 2) - 0.58).abs() < 1e-12);
        assert_eq!(d.get(2, 0), d.get(0, 2));
        assert_eq!(d.get(1, 1), 0.0);
        let d = distance_matrix(&[with_mean(0.4), with_mean(0.4)]);
        assert_eq!(d.get(0, 1), 0.0);
    }

    #[test]
    fn gt2_two_taxa_collapses() {
        let stats = [
            summarize(&[1.0, 2.0, 3.0, 4.0]).unwrap(),
            summarize(&[2.0, 4.0, 3.0, 5.0]).unwrap(),
        ];
        let config = AnalysisConfig::default();
        let crit = gt2_critical_matrix(&stats, &config).unwrap();
        // k* = 1 raised to 3, Σn = 6
        let expected = tables::smm(3.0, 6.0, Confidence::P95).unwrap()
            * (2.0 * pooled_variance(&stats).unwrap() / 4.0).sqrt();
        assert!((crit.matrix.get(0, 1) - expected).abs() < 1e-15);
        assert!(matches!(
            crit.warnings.as_slice(),
            [Warning::KRaised { requested, used, .. }] if *requested == 1.0 && *used == 3.0
        ));
    }

    #[test]
    fn gt2_three_taxa() {
        let stats = [with_mean(0.1), with_mean(0.2), with_mean(0.3)];
        let crit = gt2_critical_matrix(&stats, &AnalysisConfig::default()).unwrap();
        let expected = tables::smm(3.0, 57.0, Confidence::P95).unwrap() * 0.001f64.sqrt();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!((crit.matrix.get(i, j) - expected).abs() < 1e-15);
        }
        // hand value: between the d = 40 and d = 60 anchors of the k = 3 row
        assert!(expected > 2.454 * 0.001f64.sqrt() && expected < 2.488 * 0.001f64.sqrt());
        assert!(crit.warnings.is_empty());
    }

    #[test]
    fn gt2_clamps_large_k() {
        let stats: Vec<_> = (0..8).map(|i| with_mean(i as f64)).collect();
        let crit = gt2_critical_matrix(&stats, &AnalysisConfig::default()).unwrap();
        assert!(matches!(
            crit.warnings.as_slice(),
            [Warning::KClamped { requested, used, .. }] if *requested == 28.0 && *used == 20.0
        ));
    }

    #[test]
    fn welch_dof_examples() {
        let a = with_sem(0.004, 10);
        assert!((welch_dof(&a, &a) - 18.0).abs() < 1e-12);
        let nu = welch_dof(&with_sem(0.002, 20), &with_sem(0.008, 20));
        assert!((nu - 0.0001 / ((0.002f64.powi(2) + 0.008f64.powi(2)) / 19.0)).abs() < 1e-9);
        assert!((nu - 27.94).abs() < 0.01);
        assert_eq!(welch_dof(&with_sem(0.0, 5), &with_sem(0.0, 7)), 10.0);
        assert_eq!(welch_dof(&with_sem(0.0, 5), &with_sem(0.3, 7)), 6.0);
    }

    #[test]
    fn games_howell_is_symmetric() {
        let stats = [with_sem(0.002, 20), with_sem(0.008, 20), with_sem(0.001, 8)];
        let config = AnalysisConfig::default();
        let crit = games_howell_critical_matrix(&stats, &config).unwrap();
        let swapped = [stats[1], stats[0], stats[2]];
        let crit2 = games_howell_critical_matrix(&swapped, &config).unwrap();
        assert_eq!(crit.matrix.get(0, 1), crit2.matrix.get(0, 1));
        let nu = welch_dof(&stats[0], &stats[1]);
        let expected = tables::sr(3.0, nu, Confidence::P95).unwrap() * 0.01f64.sqrt();
        assert!((crit.matrix.get(0, 1) - expected).abs() < 1e-15);
    }

    #[test]
    fn separation_is_strict() {
        let d = PairMatrix::from_fn(3, |i, j| {
            if i == j {
                0.0
            } else {
                [0.0, 0.12, 0.01, 0.05][i + j]
            }
        });
        let crit = PairMatrix::from_fn(3, |_, _| 0.05);
        let sep = separation_matrix(&d, &crit);
        assert_eq!(sep.get(0, 1), Separation::Zero); // 0.12 ≥ 0.05
        assert_eq!(sep.get(0, 2), Separation::One); // 0.01 < 0.05
        assert_eq!(sep.get(1, 2), Separation::Zero); // tie
        assert!((0..3).all(|i| sep.get(i, i) == Separation::One));
        assert!(sep.is_symmetric());
    }

    #[test]
    fn separation_rows_round_trip() {
        let rows = ["1 0 *", "0 1 1", "* 1 1"];
        let sep = SeparationMatrix::from_rows(&rows).unwrap();
        assert_eq!(sep.to_string(), "1 0 *\n0 1 1\n* 1 1\n");
        assert!(SeparationMatrix::from_rows(&["10", "0"]).is_none());
        assert!(SeparationMatrix::from_rows(&["1x", "01"]).is_none());
    }
}
