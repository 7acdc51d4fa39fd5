"""Polynomial density in l2(mu) at finite scale.

The monomial vectors v_k = (t_n^k mu_n^(1/2))_n are orthonormalized with
classical Gram-Schmidt run twice per vector; probes are projected on the
growing span. Monomial Grams are badly conditioned, so the whole computation
is repeated at doubled precision while the loss factor ||v_k|| / ||v_k - Pv_k||
exceeds 2^(prec/2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mp

from ._mp import to_mp
from .errors import InvalidInput, NumericalFailure
from .measure import DiscreteMeasure
from .products import CanonicalProduct, derivative_at_zero, derivative_at_zero_exact, \
    hamburger_check
from .trends import series_trend

MAX_PREC = 8192


@dataclass(frozen=True)
class DensityReport:
    K: int
    residuals: dict            # probe name -> residual norms for degree 0..K
    gram_condition: tuple      # loss factor per degree
    moment_table: tuple | None
    verdict: str
    precision_used: int
    window_drops: dict = field(default_factory=dict)   # window size -> probe -> r(2K)/r(K)
    note: str = ""


@dataclass(frozen=True)
class SeriesReport:
    partial_sums: tuple
    trend: str
    order: tuple = ()


@dataclass(frozen=True)
class HamburgerSeriesReport:
    first: SeriesReport        # sum 1/(mu |A'|^2)
    second: SeriesReport       # sum 1/((1+t^2) mu |A'|^2)
    condition: str             # holds-trend / violated-trend / inconclusive
    exact: bool


@dataclass(frozen=True)
class BSReport:
    series: SeriesReport
    hamburger: object
    mask: tuple
    evidence: str
    exact: bool


# -- projections ---------------------------------------------------------------

def _abs_order(m):
    return sorted(range(len(m)), key=lambda i: (abs(m.support[i]), m.support[i]))


def default_probes(m: DiscreteMeasure, seed: int = 0):
    """e0, e1, e2 (coordinates ordered by increasing |t|) and a seeded random vector."""
    n = len(m)
    order = _abs_order(m)
    probes = {}
    for j in range(min(3, n)):
        v = [0] * n
        v[order[j]] = 1
        probes[f"e{j}"] = v
    # a fixed l2 vector: gaussian entries drawn in |t| order, damped by 2^-j, so
    # every window sees a restriction of the same probe
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal(n)
    v = [0] * n
    for j, i in enumerate(order):
        v[i] = Fraction(float(draws[j])) / 2 ** j
    probes["random"] = v
    return probes


def _dot(u, v):
    return mpmath.fsum(a * b for a, b in zip(u, v))


def _normalize(v):
    nv = mpmath.sqrt(_dot(v, v))
    if nv == 0:
        raise InvalidInput("probe vector is zero")
    return [x / nv for x in v]


def _residual_table(t, sw, probes, K):
    """One pass at the current precision; returns (tables, loss factors) or None on breakdown."""
    n = len(t)
    Q, loss = [], []
    res = {name: list(p) for name, p in probes.items()}
    tables = {name: [] for name in probes}
    flags = []
    tol = mpmath.ldexp(1, -(mp.prec - 20))
    tk = [mpmath.mpf(1)] * n
    for k in range(K + 1):
        if k >= n:
            # the span is all of C^n once it has n independent vectors
            for name in probes:
                tables[name].append(mpmath.mpf(0))
            loss.append(None)
            continue
        v = [a * s for a, s in zip(tk, sw)]
        nv = mpmath.sqrt(_dot(v, v))
        w = list(v)
        for _ in range(2):
            for q in Q:
                c = _dot(w, q)
                w = [a - c * b for a, b in zip(w, q)]
        nw = mpmath.sqrt(_dot(w, w))
        if nw == 0 or nv / nw > mpmath.ldexp(1, mp.prec // 2):
            return None
        loss.append(nv / nw)
        q = [x / nw for x in w]
        Q.append(q)
        for name in probes:
            r = res[name]
            for _ in range(2):
                c = _dot(r, q)
                r = [a - c * b for a, b in zip(r, q)]
            res[name] = r
            val = _dot(r, r)
            prev = tables[name][-1] ** 2 if tables[name] else mpmath.mpf(1)
            if val > prev:
                if val - prev > tol:
                    flags.append(f"residual of {name} increased at degree {k}")
                val = prev
            tables[name].append(mpmath.sqrt(val) if k < n - 1 else mpmath.mpf(0))
        tk = [a * b for a, b in zip(tk, t)]
    return tables, loss, flags


def _projection(m: DiscreteMeasure, K: int, probes: dict, max_prec=MAX_PREC):
    prec = mp.prec
    while True:
        with mp.workprec(prec):
            t = m.support_mp()
            sw = m.sqrt_weights_mp()
            ps = {name: _normalize([to_mp(x) for x in p]) for name, p in probes.items()}
            out = _residual_table(t, sw, ps, K)
            if out is not None:
                tables, loss, flags = out
                if flags:
                    raise NumericalFailure("; ".join(flags))
                # hand results back at the caller's precision
                return ({k: tuple(+x for x in v) for k, v in tables.items()},
                        tuple(loss), prec)
        if prec >= max_prec:
            return None, None, prec
        prec = min(2 * prec, max_prec)


def _trend_verdict(m, probes, max_prec):
    """Nested windows (inner half by |t|, then all points), K_w = (n_w - 1) // 4."""
    order = _abs_order(m)
    n = len(m)
    windows = []
    for size in (n // 2, n):
        idx = sorted(order[:size])
        Kw = (size - 1) // 4
        if Kw < 1:
            continue
        sub = m.restrict(idx)
        sp = {}
        for name, p in probes.items():
            v = [p[i] for i in idx]
            if any(x != 0 for x in v):
                sp[name] = v
        if not sp:
            continue
        tables, _, _ = _projection(sub, 2 * Kw, sp, max_prec)
        if tables is None:
            return "inconclusive", {}, "Gram breakdown at the precision cap"
        drops = {}
        for name, tab in tables.items():
            a, b = tab[Kw], tab[2 * Kw]
            drops[name] = float(b / a) if a != 0 else 0.0
        windows.append((size, drops))
    if len(windows) < 2:
        return "inconclusive", dict(windows), "window too small for a trend"
    (s_small, d_small), (s_big, d_big) = windows
    ok_big = all(r <= 0.5 for r in d_big.values())
    ok_small = all(r <= 0.5 for r in d_small.values())
    if ok_big:
        verdict = "dense-trend"
    elif not ok_small:
        verdict = "non-dense-trend"
    else:
        verdict = "inconclusive"
    return verdict, dict(windows), ""


def density_residuals(m: DiscreteMeasure, K: int, probes=None, d=None, seed: int = 0,
                      max_prec: int = MAX_PREC) -> DensityReport:
    """Distances of unit probes to span{t^k mu^(1/2) : k <= K} in l2.

    ``probes`` maps names to vectors (normalized here); the default set is
    :func:`default_probes`. ``d`` adds the moment table sum d_n t_n^k mu_n.
    The verdict follows the nested-window rule of ``_trend_verdict``:
    dense-trend when every probe residual at least halves from K_w to 2 K_w
    on the full window, non-dense-trend when that fails on both windows.
    """
    if len(m) == 0:
        raise InvalidInput("measure has empty support")
    if K < 0:
        raise InvalidInput("degree K must be nonnegative")
    probes = default_probes(m, seed) if probes is None else dict(probes)
    for name, p in probes.items():
        if len(p) != len(m):
            raise InvalidInput(f"probe {name} has length {len(p)}, measure has {len(m)}")
    tables, loss, prec = _projection(m, K, probes, max_prec)
    note = "window-relative trend"
    if tables is None:
        return DensityReport(K, {}, (), None, "inconclusive", prec, {},
                             "Gram breakdown: loss factor above 2^(prec/2) at the precision cap")
    moments = None
    if d is not None:
        if len(d) != len(m):
            raise InvalidInput("moment vector length differs from the support size")
        moments = tuple(moment_table(m, d, K))
    verdict, drops, why = _trend_verdict(m, probes, max_prec)
    if why:
        note += "; " + why
    return DensityReport(K, tables, loss, moments, verdict, prec, drops, note)


def moment_table(m: DiscreteMeasure, d, K: int):
    """sum_n d_n t_n^k mu_n for k = 0..K."""
    t, mu = m.support_mp(), m.weights_mp()
    dd = [to_mp(x) if not isinstance(x, (mpmath.mpf, mpmath.mpc)) else x for x in d]
    return [mpmath.fsum(a * b * x ** k for a, b, x in zip(dd, mu, t)) for k in range(K + 1)]


# -- series criteria ------------------------------------------------------------

def log_weight_criterion(m: DiscreteMeasure) -> SeriesReport:
    """Partial sums of sum log(mu_n)/(1 + n^2) over an integer support, by |n|."""
    if len(m) == 0:
        raise InvalidInput("measure has empty support")
    if any(t.denominator != 1 for t in m.support) or len(set(m.support)) != len(m):
        raise InvalidInput("log-weight criterion needs distinct integer support points")
    order = _abs_order(m)
    s, sums = mpmath.mpf(0), []
    for i in order:
        n = to_mp(m.support[i])
        s += mpmath.log(to_mp(m.weights[i])) / (1 + n * n)
        sums.append(s)
    return SeriesReport(tuple(sums), series_trend(sums), tuple(order))


def _check_product(m: DiscreteMeasure, p: CanonicalProduct):
    if tuple(p.zeros) != tuple(m.support):
        raise InvalidInput("product zeros must coincide with the measure support")


def _derivs(p: CanonicalProduct):
    if p.genus == 0 and p.is_real:
        return [derivative_at_zero_exact(p, k) for k in range(len(p))], True
    return [derivative_at_zero(p, k) for k in range(len(p))], False


def hamburger_series(m: DiscreteMeasure, p: CanonicalProduct) -> HamburgerSeriesReport:
    """Partial sums of sum 1/(mu |A'|^2) and sum 1/((1 + t^2) mu |A'|^2), by |t|.

    Rational data go through exact Fraction arithmetic, so canonical weights
    mu_n = |A'(t_n)|^-2 give S_N = N exactly.
    """
    _check_product(m, p)
    ds, exact = _derivs(p)
    order = _abs_order(m)
    s1 = s2 = Fraction(0) if exact else mpmath.mpf(0)
    t1, t2 = [], []
    for i in order:
        mu = m.weights[i] if exact else to_mp(m.weights[i])
        t = m.support[i] if exact else to_mp(m.support[i])
        d2 = ds[i] * ds[i] if exact else abs(ds[i]) ** 2
        term = 1 / (mu * d2)
        s1 += term
        s2 += term / (1 + t * t)
        t1.append(s1)
        t2.append(s2)
    first = SeriesReport(tuple(t1), series_trend(t1), tuple(order))
    second = SeriesReport(tuple(t2), series_trend(t2), tuple(order))
    if first.trend == "divergent" and second.trend == "convergent":
        cond = "holds-trend"
    elif first.trend == "convergent" or second.trend == "divergent":
        cond = "violated-trend"
    else:
        cond = "inconclusive"
    return HamburgerSeriesReport(first, second, cond, exact)


def borichev_sodin_test(m: DiscreteMeasure, divisor_mask, M_list=(1, 2, 3)) -> BSReport:
    """Series sum over masked points of 1/(mu_n |A~'(t_n)|^2), A~ the product over the mask.

    A convergent series for a Hamburger-consistent A~ is (finite-scale)
    evidence against density.
    """
    mask = list(divisor_mask)
    if not mask:
        raise InvalidInput("divisor mask is empty")
    if len(set(mask)) != len(mask):
        raise InvalidInput("divisor mask repeats an index (non-simple zeros)")
    if any(not 0 <= i < len(m) for i in mask):
        raise InvalidInput("divisor mask index out of range")
    mask = sorted(mask, key=lambda i: (abs(m.support[i]), m.support[i]))
    sub = sorted(mask)
    ptil = CanonicalProduct([m.support[i] for i in sub], 0)
    ds, exact = _derivs(ptil)
    dmap = dict(zip(sub, ds))
    s = Fraction(0) if exact else mpmath.mpf(0)
    sums = []
    for i in mask:
        d = dmap[i]
        term = 1 / (m.weights[i] * d * d) if exact else 1 / (to_mp(m.weights[i]) * abs(d) ** 2)
        s += term
        sums.append(s)
    series = SeriesReport(tuple(sums), series_trend(sums), tuple(mask))
    ham = hamburger_check(ptil, M_list)
    if series.trend == "convergent" and ham.verdict == "consistent":
        evidence = "non-density evidence"
    elif series.trend == "divergent":
        evidence = "no evidence against density from this divisor"
    else:
        evidence = "inconclusive"
    return BSReport(series, ham, tuple(mask), evidence, exact)

