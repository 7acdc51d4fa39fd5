"""Finite-window trend tags shared by the diagnostics."""

from __future__ import annotations

import math
from fractions import Fraction

from ._mp import to_mp


def loglog_slope(xs, ys):
    """Least-squares slope of ys against xs, None when xs are all equal."""
    n = len(xs)
    if n < 2:
        return None
    mx, my = math.fsum(xs) / n, math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        return None
    return math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def series_trend(partials) -> str:
    """Tag a table of partial sums as convergent / divergent / inconclusive.

    Compares the increments over the last two dyadic blocks,
    I1 = S_n - S_{n/2} and I0 = S_{n/2} - S_{n/4}. Geometric shrinkage or an
    increment negligible against the sum reads as convergent; a block
    increment that does not shrink reads as divergent.
    """
    n = len(partials)
    if n < 4:
        return "inconclusive"
    s = [float(to_mp(v)) if isinstance(v, Fraction) else float(v) for v in partials]
    sn, sh, sq = s[n - 1], s[n // 2 - 1], s[n // 4 - 1]
    i1, i0 = abs(sn - sh), abs(sh - sq)
    if i1 <= 1e-2 * abs(sn) or i1 <= 0.9 * i0:
        return "convergent"
    if i1 >= 0.95 * i0:
        return "divergent"
    return "inconclusive"
