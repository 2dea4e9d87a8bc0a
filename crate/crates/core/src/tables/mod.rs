//! Critical values of the χ², Studentised maximum modulus (SMM) and
//! Studentised range (SR) distributions.
//!
//! χ² quantiles are computed directly. SMM and SR values come from
//! harmonic interpolation over anchor tables embedded at build time, one
//! per distribution and confidence level. The text format of a table is:
//!
//! ```text
//! smm<TAB>0.95
//! 5<TAB>6<TAB>...<TAB>inf          d anchors, ascending, ending with inf
//! 3<TAB>3.399<TAB>...              one row per k anchor
//! ```
//!
//! Lookups above the largest `k` anchor are clamped to it. Between the
//! largest finite `d` anchor `d₁` and the `inf` row the interpolation
//! variable is `1/d`, i.e. `a = 1 − d₁/d`. Lookups below the first anchor
//! on either axis are refused.

mod chi2;
mod interp;

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::OnceLock;

pub use chi2::{chi2_cdf, chi2_quantile};
pub use interp::{harmonic_interp_1d, harmonic_interp_2d, AnchorCell};

use crate::error::{Axis, Distribution, Error, Result};
use crate::stats::Confidence;

#[derive(Debug, Clone, PartialEq)]
pub struct AnchorTable {
    distribution: Distribution,
    confidence: Confidence,
    k_anchors: Vec<f64>,
    /// Ascending; the last entry is `f64::INFINITY`.
    d_anchors: Vec<f64>,
    /// `values[ik][id]`.
    values: Vec<Vec<f64>>,
}

/// Result of a table lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lookup {
    pub value: f64,
    /// The `k` actually used, after clamping to the table's largest anchor.
    pub k_used: f64,
    pub k_requested: f64,
}

impl Lookup {
    pub fn clamped(&self) -> bool {
        self.k_used != self.k_requested
    }
}

fn table_err(line: usize, message: impl Into<String>) -> Error {
    Error::TableFormat {
        line,
        message: message.into(),
    }
}

fn parse_anchor(token: &str, line: usize) -> Result<f64> {
    let token = token.trim();
    if token == "inf" {
        return Ok(f64::INFINITY);
    }
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(table_err(line, format!("`{token}` is not a number"))),
    }
}

impl AnchorTable {
    /// Parses and validates a table. Values must be positive, strictly
    /// increasing along `k` and strictly decreasing along `d`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());

        let (line, header) = lines.next().ok_or_else(|| table_err(1, "empty table"))?;
        let mut fields = header.split('\t');
        let distribution: Distribution = fields
            .next()
            .unwrap_or_default()
            .trim()
            .parse()
            .map_err(|e: Error| table_err(line, e.to_string()))?;
        let confidence: Confidence = fields
            .next()
            .ok_or_else(|| table_err(line, "missing confidence level"))?
            .parse()
            .map_err(|e: Error| table_err(line, e.to_string()))?;
        if fields.next().is_some() {
            return Err(table_err(line, "header has extra fields"));
        }

        let (line, d_line) = lines
            .next()
            .ok_or_else(|| table_err(line + 1, "missing d anchor line"))?;
        let d_anchors = d_line
            .split('\t')
            .map(|t| parse_anchor(t, line))
            .collect::<Result<Vec<_>>>()?;
        if d_anchors.len() < 2 {
            return Err(table_err(line, "need at least one finite d anchor and inf"));
        }
        if d_anchors.last() != Some(&f64::INFINITY) {
            return Err(table_err(line, "last d anchor must be inf"));
        }
        if d_anchors[0] <= 0.0 {
            return Err(table_err(line, "d anchors must be positive"));
        }
        if d_anchors
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
        {
            return Err(table_err(line, "d anchors must be strictly ascending"));
        }

        let mut k_anchors = Vec::new();
        let mut values: Vec<Vec<f64>> = Vec::new();
        for (line, row) in lines {
            let mut fields = row.split('\t');
            let k = parse_anchor(fields.next().unwrap_or_default(), line)?;
            if k.is_nan() || k < 1.0 || k.fract() != 0.0 {
                return Err(table_err(
                    line,
                    format!("k anchor {k} is not a positive integer"),
                ));
            }
            if k_anchors.last().is_some_and(|&prev| prev >= k) {
                return Err(table_err(line, "k anchors must be strictly ascending"));
            }
            let row = fields
                .map(|t| parse_anchor(t, line))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != d_anchors.len() {
                return Err(table_err(
                    line,
                    format!("expected {} values, found {}", d_anchors.len(), row.len()),
                ));
            }
            if row.iter().any(|v| *v <= 0.0) {
                return Err(table_err(line, "values must be positive"));
            }
            if row
                .windows(2)
                .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Greater))
            {
                return Err(table_err(line, "values must strictly decrease along d"));
            }
            if let Some(prev) = values.last() {
                if prev
                    .iter()
                    .zip(&row)
                    .any(|(a, b)| a.partial_cmp(b) != Some(Ordering::Less))
                {
                    return Err(table_err(line, "values must strictly increase along k"));
                }
            }
            k_anchors.push(k);
            values.push(row);
        }
        if k_anchors.is_empty() {
            return Err(table_err(line + 1, "table has no k rows"));
        }
        Ok(AnchorTable {
            distribution,
            confidence,
            k_anchors,
            d_anchors,
            values,
        })
    }

    /// Serializes back to the text format accepted by [`AnchorTable::parse`].
    pub fn to_tsv(&self) -> String {
        let mut out = format!("{}\t{}\n", self.distribution.name(), self.confidence);
        let ds: Vec<String> = self
            .d_anchors
            .iter()
            .map(|d| {
                if d.is_infinite() {
                    "inf".to_string()
                } else {
                    d.to_string()
                }
            })
            .collect();
        out.push_str(&ds.join("\t"));
        out.push('\n');
        for (k, row) in self.k_anchors.iter().zip(&self.values) {
            let _ = write!(out, "{k}");
            for v in row {
                let _ = write!(out, "\t{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn distribution(&self) -> Distribution {
        self.distribution
    }

    pub fn confidence(&self) -> Confidence {
        self.confidence
    }

    pub fn k_anchors(&self) -> &[f64] {
        &self.k_anchors
    }

    pub fn d_anchors(&self) -> &[f64] {
        &self.d_anchors
    }

    /// Cell value at anchor indices.
    pub fn cell(&self, ik: usize, id: usize) -> f64 {
        self.values[ik][id]
    }

    /// Interpolated value at `(k, d)`; `d` may be `f64::INFINITY`.
    pub fn lookup(&self, k: f64, d: f64) -> Result<Lookup> {
        if k.is_nan() || d.is_nan() {
            return Err(Error::InvalidParameter("k and d must be numbers".into()));
        }
        let k_floor = self.k_anchors[0];
        if k < k_floor {
            return Err(Error::BelowTableRange {
                distribution: self.distribution,
                axis: Axis::K,
                value: k,
                floor: k_floor,
            });
        }
        let d_floor = self.d_anchors[0];
        if d < d_floor {
            return Err(Error::BelowTableRange {
                distribution: self.distribution,
                axis: Axis::D,
                value: d,
                floor: d_floor,
            });
        }
        let k_max = *self.k_anchors.last().unwrap();
        let k_used = k.min(k_max);

        let (ik, a_k) = bracket(&self.k_anchors, k_used, false);
        let (id, a_d) = bracket(&self.d_anchors, d, true);
        let ik2 = (ik + 1).min(self.k_anchors.len() - 1);
        let id2 = (id + 1).min(self.d_anchors.len() - 1);
        let corners = [
            [self.values[ik][id], self.values[ik][id2]],
            [self.values[ik2][id], self.values[ik2][id2]],
        ];
        Ok(Lookup {
            value: interp::blend_2d(a_k, a_d, &corners),
            k_used,
            k_requested: k,
        })
    }
}

/// Lower anchor index and interpolation fraction for `x` within `anchors`.
/// `x` must be at least `anchors[0]` and, unless `infinite_tail`, at most the
/// last anchor.
fn bracket(anchors: &[f64], x: f64, infinite_tail: bool) -> (usize, f64) {
    // exact hit on an anchor
    if let Some(i) = anchors.iter().position(|&a| a == x) {
        return (i, 0.0);
    }
    let upper = anchors
        .iter()
        .position(|&a| a > x)
        .unwrap_or(anchors.len() - 1);
    let lower = upper - 1;
    let (x1, x2) = (anchors[lower], anchors[upper]);
    let a = if infinite_tail && x2.is_infinite() {
        1.0 - x1 / x
    } else {
        (x - x1) / (x2 - x1)
    };
    (lower, a)
}

const SMM_95: &str = include_str!("../../tables/smm_95.tsv");
const SMM_99: &str = include_str!("../../tables/smm_99.tsv");
const SR_95: &str = include_str!("../../tables/sr_95.tsv");
const SR_99: &str = include_str!("../../tables/sr_99.tsv");

/// The embedded table for a distribution and confidence level.
pub fn builtin(distribution: Distribution, confidence: Confidence) -> &'static AnchorTable {
    static TABLES: OnceLock<[AnchorTable; 4]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        [SMM_95, SMM_99, SR_95, SR_99]
            .map(|text| AnchorTable::parse(text).expect("embedded anchor table is well formed"))
    });
    let index = match (distribution, confidence) {
        (Distribution::Smm, Confidence::P95) => 0,
        (Distribution::Smm, Confidence::P99) => 1,
        (Distribution::Sr, Confidence::P95) => 2,
        (Distribution::Sr, Confidence::P99) => 3,
    };
    &tables[index]
}

/// Studentised maximum modulus critical value for `k` comparisons and `d`
/// degrees of freedom.
pub fn smm(k: f64, d: f64, confidence: Confidence) -> Result<f64> {
    Ok(builtin(Distribution::Smm, confidence).lookup(k, d)?.value)
}

/// Studentised range critical value for `k` means and `d` degrees of
/// freedom.
pub fn sr(k: f64, d: f64, confidence: Confidence) -> Result<f64> {
    Ok(builtin(Distribution::Sr, confidence).lookup(k, d)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "sr\t0.95\n1\t2\tinf\n2\t18.0\t6.0\t2.8\n4\t33.0\t10.0\t3.6\n";

    #[test]
    fn builtin_tables_cover_expected_ranges() {
        for c in Confidence::ALL {
            let t = builtin(Distribution::Smm, c);
            assert_eq!(t.k_anchors().first(), Some(&3.0));
            assert_eq!(t.k_anchors().last(), Some(&20.0));
            assert_eq!(t.d_anchors().first(), Some(&5.0));
            let t = builtin(Distribution::Sr, c);
            assert_eq!(t.k_anchors().first(), Some(&2.0));
            assert_eq!(t.k_anchors().last(), Some(&100.0));
            assert_eq!(t.d_anchors().first(), Some(&1.0));
            assert_eq!(t.confidence(), c);
        }
    }

    #[test]
    fn parse_small_table() {
        let t = AnchorTable::parse(SMALL).unwrap();
        assert_eq!(t.distribution(), Distribution::Sr);
        assert_eq!(t.d_anchors(), &[1.0, 2.0, f64::INFINITY]);
        assert_eq!(t.cell(1, 2), 3.6);
        assert_eq!(AnchorTable::parse(&t.to_tsv()).unwrap(), t);
    }

    #[test]
    fn parse_rejects_malformed_tables() {
        for bad in [
            "",
            "xyz\t0.95\n1\tinf\n2\t3\t2\n",
            "sr\t0.90\n1\tinf\n2\t3\t2\n",
            "sr\t0.95\n1\t2\n2\t3\t2\n",
            "sr\t0.95\n2\t1\tinf\n2\t3\t2\t1\n",
            "sr\t0.95\n1\tinf\n2\t3\n",
            "sr\t0.95\n1\tinf\n2\t2\t3\n",
            "sr\t0.95\n1\tinf\n3\t3\t2\n2\t4\t3\n",
            "sr\t0.95\n1\tinf\n2\t3\t2\n3\t2.5\t2.1\n",
            "sr\t0.95\n1\tinf\n2\t3\t-2\n",
            "sr\t0.95\n1\tinf\n2.5\t3\t2\n",
            "sr\t0.95\n1\tinf\n",
            "sr\t0.95\n1\tinf\n2\tx\t2\n",
        ] {
            assert!(AnchorTable::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn lookup_toward_infinity_uses_reciprocal_d() {
        let t = AnchorTable::parse(SMALL).unwrap();
        // d = 4: a = 1 - 2/4 = 0.5 between 6.0 and 2.8
        let v = t.lookup(2.0, 4.0).unwrap().value;
        assert!((v - 1.0 / (0.5 / 6.0 + 0.5 / 2.8)).abs() < 1e-12);
        assert_eq!(t.lookup(2.0, f64::INFINITY).unwrap().value, 2.8);
        assert!(t.lookup(2.0, 1e12).unwrap().value > 2.8);
    }

    #[test]
    fn lookup_clamps_large_k() {
        let t = AnchorTable::parse(SMALL).unwrap();
        let l = t.lookup(9.0, 1.5).unwrap();
        assert!(l.clamped());
        assert_eq!(l.k_used, 4.0);
        assert_eq!(l.value, t.lookup(4.0, 1.5).unwrap().value);
        assert!(!t.lookup(3.0, 1.5).unwrap().clamped());
    }

    #[test]
    fn lookup_below_floor_is_refused() {
        let err = smm(3.0, 3.0, Confidence::P95).unwrap_err();
        assert!(matches!(
            err,
            Error::BelowTableRange { axis: Axis::D, floor, .. } if floor == 5.0
        ));
        assert!(matches!(
            smm(1.0, 30.0, Confidence::P95),
            Err(Error::BelowTableRange { axis: Axis::K, .. })
        ));
        assert!(matches!(
            sr(5.0, 0.5, Confidence::P99),
            Err(Error::BelowTableRange { axis: Axis::D, .. })
        ));
        assert!(sr(f64::NAN, 3.0, Confidence::P95).is_err());
    }

    #[test]
    fn clamping_examples() {
        let c = Confidence::P95;
        assert_eq!(smm(25.0, 10.0, c).unwrap(), smm(20.0, 10.0, c).unwrap());
        for c in Confidence::ALL {
            assert_eq!(sr(200.0, 4.5, c).unwrap(), sr(100.0, 4.5, c).unwrap());
        }
    }

    #[test]
    fn interpolated_values_between_anchors() {
        let c = Confidence::P95;
        let lo = smm(10.0, 8.0, c).unwrap();
        let hi = smm(10.0, 7.0, c).unwrap();
        let mid = smm(10.0, 7.5, c).unwrap();
        assert!(lo < mid && mid < hi);
        assert!((sr(2.0, f64::INFINITY, c).unwrap() - 2.772).abs() < 0.005);
    }
}
