//! Harmonic interpolation: linear interpolation of `1/f`.

use crate::error::{Error, Result};

/// `[(1 − a)/f1 + a/f2]⁻¹`, returning the anchors themselves at `a = 0`
/// and `a = 1` so that table cells are reproduced bit for bit.
pub(crate) fn blend(a: f64, f1: f64, f2: f64) -> f64 {
    if a == 0.0 {
        f1
    } else if a == 1.0 {
        f2
    } else {
        1.0 / ((1.0 - a) / f1 + a / f2)
    }
}

/// Two-dimensional blend; `values[ik][id]` is the corner at
/// `(k_{ik+1}, d_{id+1})`.
pub(crate) fn blend_2d(a_k: f64, a_d: f64, values: &[[f64; 2]; 2]) -> f64 {
    if a_k == 0.0 || a_k == 1.0 {
        let row = &values[usize::from(a_k == 1.0)];
        return blend(a_d, row[0], row[1]);
    }
    if a_d == 0.0 || a_d == 1.0 {
        let col = usize::from(a_d == 1.0);
        return blend(a_k, values[0][col], values[1][col]);
    }
    let inv = (1.0 - a_k) * (1.0 - a_d) / values[0][0]
        + (1.0 - a_k) * a_d / values[0][1]
        + a_k * (1.0 - a_d) / values[1][0]
        + a_k * a_d / values[1][1];
    1.0 / inv
}

fn fraction(x: f64, x1: f64, x2: f64) -> Result<f64> {
    if !x1.is_finite() || !x2.is_finite() || x1 >= x2 {
        return Err(Error::InvalidParameter(format!(
            "interpolation anchors must satisfy x1 < x2, got {x1} and {x2}"
        )));
    }
    if !(x1 <= x && x <= x2) {
        return Err(Error::InvalidParameter(format!(
            "{x} lies outside the anchor interval [{x1}, {x2}]"
        )));
    }
    Ok(if x == x1 {
        0.0
    } else if x == x2 {
        1.0
    } else {
        (x - x1) / (x2 - x1)
    })
}

fn check_positive(values: &[f64]) -> Result<()> {
    match values.iter().find(|f| !(**f > 0.0 && f.is_finite())) {
        Some(f) => Err(Error::InvalidParameter(format!(
            "anchor values must be positive, got {f}"
        ))),
        None => Ok(()),
    }
}

/// Harmonic interpolation of `f` at `x` between `(x1, f1)` and `(x2, f2)`.
pub fn harmonic_interp_1d(x: f64, x1: f64, x2: f64, f1: f64, f2: f64) -> Result<f64> {
    check_positive(&[f1, f2])?;
    let a = fraction(x, x1, x2)?;
    Ok(blend(a, f1, f2))
}

/// Four anchor points on a rectangle in `(k, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnchorCell {
    pub k: [f64; 2],
    pub d: [f64; 2],
    /// `values[ik][id]` is the value at `(k[ik], d[id])`.
    pub values: [[f64; 2]; 2],
}

/// Harmonic interpolation inside a rectangle of four anchors. Equivalent to
/// interpolating in `k` then `d`, or `d` then `k`.
pub fn harmonic_interp_2d(k: f64, d: f64, cell: &AnchorCell) -> Result<f64> {
    check_positive(&[
        cell.values[0][0],
        cell.values[0][1],
        cell.values[1][0],
        cell.values[1][1],
    ])?;
    let a_k = fraction(k, cell.k[0], cell.k[1])?;
    let a_d = fraction(d, cell.d[0], cell.d[1])?;
    Ok(blend_2d(a_k, a_d, &cell.values))
}
