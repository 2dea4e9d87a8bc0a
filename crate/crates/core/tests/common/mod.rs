//! Independent numerical references for the tabulated distributions, built
//! from the normal CDF and Gauss–Legendre quadrature only.

#![allow(dead_code)]

use std::sync::OnceLock;

use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

const POINTS: usize = 16;

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
fn gauss_legendre() -> &'static [(f64, f64); POINTS] {
    static RULE: OnceLock<[(f64, f64); POINTS]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = POINTS;
        let mut rule = [(0.0, 0.0); POINTS];
        for (i, slot) in rule.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for m in 2..=n {
                    let m = m as f64;
                    let p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

/// Composite Gauss–Legendre integral of `f` over `[a, b]` in `panels` pieces.
pub fn integrate(a: f64, b: f64, panels: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for &(x, w) in gauss_legendre() {
            total += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * total
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Probability that the range of `k` standard normals is below `w`.
pub fn range_cdf(k: f64, w: f64) -> f64 {
    if w <= 0.0 {
        return 0.0;
    }
    k * integrate(-8.5, 8.5, 12, |z| {
        let inside = normal_cdf(z + w) - normal_cdf(z);
        normal_pdf(z) * inside.max(0.0).powf(k - 1.0)
    })
}

/// Probability that the largest of `k` absolute standard normals is below `m`.
pub fn max_modulus_cdf(k: f64, m: f64) -> f64 {
    (2.0 * normal_cdf(m) - 1.0).max(0.0).powf(k)
}

/// `∫ f_s(s) g(s) ds` where `s = sqrt(χ²_d / d)`; `g` must be bounded by 1.
/// Integrated over `ln s` so that sharp features near `s = 0` are resolved.
fn mix_over_scale(d: f64, mut g: impl FnMut(f64) -> f64) -> f64 {
    let log_norm = 0.5 * d * d.ln() - (0.5 * d - 1.0) * 2f64.ln() - ln_gamma(0.5 * d);
    // density of u = ln s: f_s(e^u) e^u = exp(log_norm + d u - d e^{2u} / 2)
    let spread = 1.0 / (2.0 * d).sqrt();
    let hi = (1.0 + 14.0 * spread.max(0.1)).ln().max(2.3);
    let lo = -16.0 / d.min(8.0) - 2.0;
    integrate(lo, hi, 40, |u| {
        let s = u.exp();
        let density = (log_norm + d * u - 0.5 * d * s * s).exp();
        density * g(s)
    })
}

/// CDF of the Studentised range with `k` means and `d` degrees of freedom;
/// `d = ∞` gives the range of standard normals.
pub fn sr_cdf(k: f64, d: f64, q: f64) -> f64 {
    if d.is_infinite() {
        range_cdf(k, q)
    } else {
        mix_over_scale(d, |s| range_cdf(k, q * s))
    }
}

/// CDF of the Studentised maximum modulus for `k` comparisons.
pub fn smm_cdf(k: f64, d: f64, q: f64) -> f64 {
    if d.is_infinite() {
        max_modulus_cdf(k, q)
    } else {
        mix_over_scale(d, |s| max_modulus_cdf(k, q * s))
    }
}
