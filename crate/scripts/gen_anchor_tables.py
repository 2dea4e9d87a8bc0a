#!/usr/bin/env python3
"""Regenerate the SMM and SR anchor tables shipped in crates/core/tables.

Critical values are computed by numerical quadrature and root finding and
rounded to three decimals, the precision of the usual printed tables.
SR values are cross-checked against scipy.stats.studentized_range.
"""
import math
import sys
from pathlib import Path

import numpy as np
from scipy import integrate, optimize, special, stats

SMM_K = list(range(3, 21))
SMM_D = list(range(5, 21)) + [24, 30, 40, 60, 120, math.inf]
SR_K = list(range(2, 21)) + list(range(22, 41, 2)) + [50, 60, 70, 80, 90, 100]
SR_D = list(range(1, 21)) + [24, 30, 40, 60, 120, math.inf]
LEVELS = [0.95, 0.99]


def log_s_density(s, d):
    # s = sqrt(chi2_d / d)
    return (
        math.log(2.0)
        + (d / 2.0) * math.log(d / 2.0)
        - special.gammaln(d / 2.0)
        + (d - 1) * math.log(s)
        - d * s * s / 2.0
    )


def mix_over_s(g, d):
    if math.isinf(d):
        return g(1.0)
    f = lambda s: g(s) * math.exp(log_s_density(s, d))
    lo = 0.0
    hi = 1.0 + 12.0 / math.sqrt(d) + (30.0 if d < 3 else 0.0)
    val, _ = integrate.quad(f, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-12,
                            points=[1.0])
    tail, _ = integrate.quad(f, hi, np.inf, limit=200)
    return val + tail


def smm_cdf(q, k, d):
    return mix_over_s(lambda s: (2.0 * special.ndtr(q * s) - 1.0) ** k, d)


def range_cdf_z(w, k):
    f = lambda z: k * math.exp(-z * z / 2) / math.sqrt(2 * math.pi) * (
        special.ndtr(z + w) - special.ndtr(z)) ** (k - 1)
    v, _ = integrate.quad(f, -12, 12, limit=400, epsabs=1e-14)
    return v


def sr_value(c, k, d):
    if math.isinf(d):
        return optimize.brentq(lambda q: range_cdf_z(q, k) - c, 0.1, 20, xtol=1e-12)
    return float(stats.studentized_range.ppf(c, k, d))


def smm_value(c, k, d):
    return optimize.brentq(lambda q: smm_cdf(q, k, d) - c, 0.5, 200, xtol=1e-12)


def fmt_d(d):
    return "inf" if math.isinf(d) else str(d)


def write_table(path, name, c, ks, ds, fn):
    lines = [f"{name}\t{c:.2f}", "\t".join(fmt_d(d) for d in ds)]
    for k in ks:
        row = [f"{fn(c, k, d):.3f}" for d in ds]
        lines.append("\t".join([str(k)] + row))
        print(name, c, k, file=sys.stderr)
    path.write_text("\n".join(lines) + "\n")


def main():
    out = Path(__file__).resolve().parent.parent / "crates" / "core" / "tables"
    out.mkdir(parents=True, exist_ok=True)
    for c in LEVELS:
        tag = int(round(c * 100))
        write_table(out / f"smm_{tag}.tsv", "smm", c, SMM_K, SMM_D, smm_value)
        write_table(out / f"sr_{tag}.tsv", "sr", c, SR_K, SR_D, sr_value)


if __name__ == "__main__":
    main()
