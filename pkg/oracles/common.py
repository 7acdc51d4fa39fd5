"""Input builders shared by the oracle scripts (formulas only, no package code)."""

from fractions import Fraction

import numpy as np


def simex(n_max, n_min=1):
    ns = list(range(n_min, n_max + 1))
    return [Fraction(2) ** n for n in ns], [Fraction(n * n, 2 ** (n * (n - 1) // 2)) for n in ns]


def gaussian(n, seed):
    return [Fraction(float(x)) for x in np.random.default_rng(seed).standard_normal(n)]


def positive(n, seed):
    return [Fraction(float(x)) for x in 1.0 - np.random.default_rng(seed).random(n)]


def radii(support, c=Fraction(1, 4), M=1):
    """Disk radii min(c |t|^-M, adjacent gap / 3), exact for integer M."""
    out = []
    for i, t in enumerate(support):
        r = c * abs(t) ** (-M)
        gaps = []
        if i:
            gaps.append(support[i] - support[i - 1])
        if i + 1 < len(support):
            gaps.append(support[i + 1] - support[i])
        out.append(min([r] + [g / 3 for g in gaps]))
    return out


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def numerator(support, residues):
    """Coefficients (low degree first) of sum_j r_j prod_{i != j} (z - t_i)."""
    total = [0] * len(support)
    for j, r in enumerate(residues):
        p = [1]
        for i, t in enumerate(support):
            if i != j:
                p = poly_mul(p, [-t, 1])
        for k, c in enumerate(p):
            total[k] += r * c
    return total
