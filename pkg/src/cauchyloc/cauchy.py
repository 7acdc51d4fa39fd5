"""Cauchy transforms f(z) = sum r_n / (z - t_n) of a discrete measure and F = A f.

Coefficients are stored exactly together with the convention they were
given in; residues r_n are derived from them at the working precision:

    "a":  r_n = a_n mu_n^(1/2)     (the l2 coordinates, ||f|| = ||a||)
    "d":  r_n = d_n mu_n
    "r":  r_n given directly
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np
from mpmath import mp

from ._mp import exact_to_json, parse_scalar, to_mp
from .errors import InvalidInput, PoleError
from .measure import DiscreteMeasure
from .products import CanonicalProduct, derivative_at_zero, derivative_at_zero_exact, \
    eval_except, eval_product, product_for_measure
from .trends import series_trend
from .zeros import AnalyticFunction

CONVENTIONS = ("a", "d", "r")


@dataclass(frozen=True)
class CauchyFunction:
    measure: DiscreteMeasure
    coeffs: tuple
    convention: str = "a"
    product: CanonicalProduct | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise InvalidInput(f"unknown coefficient convention {self.convention!r}")
        cs = tuple(parse_scalar(c) for c in self.coeffs)
        if len(cs) != len(self.measure):
            raise InvalidInput(
                f"{len(cs)} coefficients for a measure with {len(self.measure)} points")
        object.__setattr__(self, "coeffs", cs)
        if self.product is None:
            object.__setattr__(self, "product", product_for_measure(self.measure))
        elif tuple(self.product.zeros) != tuple(self.measure.support):
            raise InvalidInput("attached product zeros differ from the measure support")

    def __len__(self):
        return len(self.coeffs)

    def _prec_cache(self):
        c = self._cache.get(mp.prec)
        if c is None:
            t = self.measure.support_mp()
            mu = self.measure.weights_mp()
            cs = [to_mp(c) for c in self.coeffs]
            if self.convention == "a":
                r = [c * mpmath.sqrt(m) for c, m in zip(cs, mu)]
            elif self.convention == "d":
                r = [c * m for c, m in zip(cs, mu)]
            else:
                r = cs
            gsum = mpmath.fsum(1 / x for x in t) if self.product.genus == 1 else 0
            c = {"t": t, "mu": mu, "r": r, "gsum": gsum}
            self._cache[mp.prec] = c
        return c

    def residues(self):
        return list(self._prec_cache()["r"])

    def a_coeffs(self):
        c = self._prec_cache()
        return [r / mpmath.sqrt(m) for r, m in zip(c["r"], c["mu"])]

    def d_coeffs(self):
        c = self._prec_cache()
        return [r / m for r, m in zip(c["r"], c["mu"])]

    def norm(self):
        """||f|| in H(T, mu), i.e. the l2 norm of the a-coefficients."""
        return mpmath.sqrt(mpmath.fsum(abs(a) ** 2 for a in self.a_coeffs()))

    def zero_coeff_indices(self):
        return [i for i, c in enumerate(self.coeffs) if c == 0 or c == (0, 0)]

    def is_zero(self):
        return len(self.zero_coeff_indices()) == len(self)

    def scaled(self, lam) -> "CauchyFunction":
        lam = parse_scalar(lam)
        return CauchyFunction(self.measure, [_mul(c, lam) for c in self.coeffs],
                              self.convention, self.product)

    def entire(self) -> "EntireCauchy":
        return EntireCauchy(self)


def _mul(a, b):
    if isinstance(a, tuple) or isinstance(b, tuple):
        ar, ai = a if isinstance(a, tuple) else (a, Fraction(0))
        br, bi = b if isinstance(b, tuple) else (b, Fraction(0))
        re, im = ar * br - ai * bi, ar * bi + ai * br
        return re if im == 0 else (re, im)
    return a * b


def linear_combination(g1: CauchyFunction, g2: CauchyFunction, alpha=1, beta=1):
    """alpha g1 + beta g2 over the same measure and convention."""
    if g1.measure != g2.measure or g1.convention != g2.convention:
        raise InvalidInput("linear combination needs a common measure and convention")
    alpha, beta = parse_scalar(alpha), parse_scalar(beta)
    cs = []
    for a, b in zip(g1.coeffs, g2.coeffs):
        x, y = _mul(a, alpha), _mul(b, beta)
        xr, xi = x if isinstance(x, tuple) else (x, 0)
        yr, yi = y if isinstance(y, tuple) else (y, 0)
        cs.append(xr + yr if xi + yi == 0 else (xr + yr, xi + yi))
    return CauchyFunction(g1.measure, cs, g1.convention, g1.product)


def kernel(m: DiscreteMeasure, index: int) -> CauchyFunction:
    """The reproducing-type element 1/(z - t_index) (residue 1 at one point)."""
    if not 0 <= index < len(m):
        raise IndexError(f"support index {index} out of range")
    cs = [Fraction(0)] * len(m)
    cs[index] = Fraction(1)
    return CauchyFunction(m, cs, "r")


def from_entire(m: DiscreteMeasure, values, product: CanonicalProduct | None = None):
    """The element f = F/A given the values F(t_n), via residues F(t_n)/A'(t_n).

    Exact values over a genus-0 rational product give exact residues;
    otherwise residues are the working-precision values stored as dyadics.
    """
    p = product_for_measure(m) if product is None else product
    if len(values) != len(m):
        raise InvalidInput(f"{len(values)} values for a measure with {len(m)} points")
    exact = p.genus == 0 and p.is_real and all(isinstance(v, (Fraction, int)) for v in values)
    rs = []
    for k, v in enumerate(values):
        if exact:
            rs.append(Fraction(v) / derivative_at_zero_exact(p, k))
        else:
            r = _as_mp(v) / derivative_at_zero(p, k)
            rs.append(parse_scalar(r))
    return CauchyFunction(m, rs, "r", p)


# -- evaluation --------------------------------------------------------------

def _as_mp(z):
    return z if isinstance(z, (mpmath.mpf, mpmath.mpc)) else to_mp(parse_scalar(z))


def _nearest(t, z):
    best, bd = 0, None
    for i, x in enumerate(t):
        d = abs(z - x)
        if bd is None or d < bd:
            best, bd = i, d
    return best, bd


def eval_f(g: CauchyFunction, z):
    z = _as_mp(z)
    c = g._prec_cache()
    t, r = c["t"], c["r"]
    k, d = _nearest(t, z)
    if d < mpmath.ldexp(abs(t[k]), -(mp.prec // 2)):
        raise PoleError(k, r[k])
    return mpmath.fsum(rj / (z - tj) for rj, tj in zip(r, t))


def _F_parts(g: CauchyFunction, z):
    """Pieces of the stable form F = A_k(z) h(z) around the nearest support point k.

    h(z) = (1 - z/t_k) g_k(z) - r_k/t_k with g_k the sum without term k, so
    F stays accurate on and near t_k, where A f is 0 * infinity.
    """
    c = g._prec_cache()
    t, r = c["t"], c["r"]
    if not t:
        return None, mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(0)
    k, _ = _nearest(t, z)
    gk = dgk = sA = mpmath.mpf(0)
    for j, (tj, rj) in enumerate(zip(t, r)):
        if j == k:
            continue
        w = 1 / (z - tj)
        gk += rj * w
        dgk -= rj * w * w
        sA += w
    sA += c["gsum"]
    tk, rk = t[k], r[k]
    u = 1 - z / tk
    h = u * gk - rk / tk
    dh = -gk / tk + u * dgk
    Ak = eval_except(g.product, z, k)
    return k, Ak, h, dh, sA


def eval_F(g: CauchyFunction, z):
    """The entire function A f; at a support point this is r_n A'(t_n)."""
    z = _as_mp(z)
    k, Ak, h, _, _ = _F_parts(g, z)
    if k is None:
        return mpmath.mpf(0)
    return Ak * h


def eval_F_logderiv(g: CauchyFunction, z):
    """(F(z), F'(z)/F(z)); the log-derivative is None where F vanishes."""
    z = _as_mp(z)
    k, Ak, h, dh, sA = _F_parts(g, z)
    if k is None:
        return mpmath.mpf(0), None
    F = Ak * h
    if h == 0 or Ak == 0:
        return F, None
    return F, sA + dh / h


class EntireCauchy(AnalyticFunction):
    """F = A f as an analytic evaluator with an exact log-derivative."""

    def __init__(self, g: CauchyFunction):
        self.g = g

    def value(self, z):
        return eval_F(self.g, z)

    def value_logderiv(self, z):
        return eval_F_logderiv(self.g, z)

    def _fast(self):
        key = ("fast", mp.prec)
        c = self.g._cache.get(key)
        if c is None:
            pc = self.g._prec_cache()
            t, r = pc["t"], pc["r"]
            rd = np.array([complex(x) for x in r])
            ok = bool(t) and np.all(np.isfinite(rd)) and not np.any(
                (rd != 0) & (np.abs(rd) < 1e-280))
            c = None
            if ok:
                c = {"t": np.array([float(x) for x in t]), "r": rd,
                     "D": np.array([[float(a - b) for b in t] for a in t]),
                     "logt": np.array([float(mpmath.log(abs(x))) for x in t]),
                     "gsum": complex(pc["gsum"])}
            self.g._cache[key] = c if c is not None else False
        return c or None

    def logderiv_batch(self, points):
        """complex128 samples of F'/F and log|F| in offset form z = t_k + delta.

        delta is formed at the working precision, so tiny disks around support
        points keep full relative accuracy; points where the stable form
        suffers cancellation are redone at the working precision.
        """
        c = self._fast()
        if c is None:
            return super().logderiv_batch(points)
        t_mp = self.g._prec_cache()["t"]
        zd = np.array([complex(z) for z in points])
        k = np.argmin(np.abs(zd[:, None] - c["t"][None, :]), axis=1)
        delta = np.array([complex(z - t_mp[kk]) for z, kk in zip(points, k)])
        n = len(c["t"])
        mask = np.arange(n)[None, :] != k[:, None]
        W = delta[:, None] + c["D"][k, :]
        W = np.where(mask, W, 1.0)
        w = np.where(mask, 1.0 / W, 0.0)
        rw = c["r"][None, :] * w
        gk = rw.sum(axis=1)
        dgk = -(rw * w).sum(axis=1)
        sA = w.sum(axis=1) + c["gsum"]
        tk, rk = c["t"][k], c["r"][k]
        u = -delta / tk
        h = u * gk - rk / tk
        dh = -gk / tk + u * dgk
        with np.errstate(divide="ignore", invalid="ignore"):
            logA = np.where(mask, np.log(np.abs(W)) - c["logt"][None, :], 0.0).sum(axis=1)
            logA += (zd * c["gsum"]).real
            scale = np.abs(u) * np.abs(rw).sum(axis=1) + np.abs(rk / tk)
            cond = scale / np.abs(h)
            g = sA + dh / h
            la = logA + np.log(np.abs(h))
        bad = ~np.isfinite(cond) | (cond > 1e8) | ~np.isfinite(g) | ~np.isfinite(la)
        for i in np.nonzero(bad)[0]:
            Fz, d = eval_F_logderiv(self.g, points[i])
            if d is None or Fz == 0:
                g[i], la[i] = np.nan, -np.inf
            else:
                g[i], la[i] = complex(d), float(mpmath.log(abs(Fz)))
        return g, la

    def is_real(self):
        return all(not isinstance(c, tuple) for c in self.g.coeffs)


# -- residues ---------------------------------------------------------------------

def residue(g: CauchyFunction, n: int):
    if not 0 <= n < len(g):
        raise IndexError(f"support index {n} out of range 0..{len(g) - 1}")
    return g._prec_cache()["r"][n]


def residue_probe(g: CauchyFunction, n: int, h=None):
    """Symmetric limit probe ((z - t_n) f(z) at t_n + h and t_n - h, averaged).

    The average differs from the residue by h^2 times the derivative of the
    regular part, so the probe error is O(h^2).
    """
    c = g._prec_cache()
    t = c["t"]
    tn = t[n]
    if h is None:
        h = mpmath.ldexp(abs(tn), -(mp.prec // 4))
        gaps = [abs(tn - x) for i, x in enumerate(t) if i != n]
        if gaps:
            h = min(h, min(gaps) / 4)
    h = to_mp(parse_scalar(h)) if not isinstance(h, mpmath.mpf) else h
    up = h * eval_f(g, tn + h)
    dn = -h * eval_f(g, tn - h)
    probe = (up + dn) / 2
    return probe, abs(probe - c["r"][n])


# -- membership -------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipReport:
    partial_sums: tuple
    series_trend: str
    axis: tuple               # (y, |F(iy)/A(iy)|)
    axis_trend: str
    verdict: str
    note: str = ""


def _axis_trend(axis):
    if len(axis) < 3:
        return "not sampled" if not axis else "inconclusive"
    ymax = max(y for y, _ in axis)
    top = [v for y, v in axis if y >= ymax / 10]
    rest = [v for y, v in axis if y < ymax / 10]
    if not top or not rest:
        return "inconclusive"
    if min(top) < min(rest):
        return "consistent"
    if min(top) > max(rest):
        return "inconsistent"
    return "inconclusive"


def membership_diagnostic(F_values_on_T, m: DiscreteMeasure, p: CanonicalProduct,
                          axis_samples=()) -> MembershipReport:
    """Partial sums of sum |F(t_n)|^2 / (|A'(t_n)|^2 mu_n) plus the axis ratio |F/A|.

    Points are summed in order of |t_n|. ``axis_samples`` holds ``(y, F(iy))``
    pairs; the liminf condition is only sampled, so its tag is heuristic:
    the sampled minimum must fall across the top decade of y.
    """
    if len(F_values_on_T) != len(m) or len(p) != len(m):
        raise InvalidInput("F values, measure and product must have equal length")
    order = sorted(range(len(m)), key=lambda i: (abs(m.support[i]), m.support[i]))
    mu = m.weights_mp()
    sums, s = [], mpmath.mpf(0)
    for i in order:
        d = derivative_at_zero(p, i)
        s += abs(_as_mp(F_values_on_T[i])) ** 2 / (abs(d) ** 2 * mu[i])
        sums.append(s)
    st = series_trend(sums)
    axis = []
    for y, Fy in axis_samples:
        y = _as_mp(y)
        Ay = eval_product(p, mpmath.mpc(0, y)).value
        axis.append((y, abs(_as_mp(Fy)) / abs(Ay)))
    axis.sort(key=lambda a: a[0])
    at = _axis_trend(axis)
    if st == "divergent" or at == "inconsistent":
        verdict = "inconsistent"
    elif st == "convergent" and at in ("consistent", "not sampled"):
        verdict = "consistent"
    else:
        verdict = "inconclusive"
    note = "window-relative; axis liminf sampled on a finite grid"
    if at == "not sampled":
        note += "; axis condition not sampled"
    return MembershipReport(tuple(sums), st, tuple(axis), at, verdict, note)


def axis_grid(y0=1, count=12, base=2):
    """Geometric sample heights y0 * base^k used for the liminf condition."""
    return [mpmath.mpf(y0) * mpmath.mpf(base) ** k for k in range(count)]


# -- coefficient I/O -----------------------------------------------------------------

def random_coeffs(n: int, seed: int, dist: str = "gaussian"):
    """Seeded coefficients, stored exactly (the binary64 draws are exact rationals)."""
    rng = np.random.default_rng(seed)
    if dist == "gaussian":
        xs = rng.standard_normal(n)
    elif dist == "uniform":
        xs = rng.uniform(-1.0, 1.0, n)
    elif dist == "positive":
        xs = 1.0 - rng.random(n)
    else:
        raise InvalidInput(f"unknown coefficient distribution {dist!r}")
    return [Fraction(float(x)) for x in xs]


def parse_coeff_spec(spec: str, n: int):
    """``random:seed=S,dist=gaussian`` -> exact coefficients (convention a)."""
    if not spec.startswith("random"):
        raise InvalidInput(f"coefficient spec must be a file or 'random:...', got {spec!r}")
    opts = {"seed": "0", "dist": "gaussian"}
    body = spec.partition(":")[2]
    for part in filter(None, body.split(",")):
        k, sep, v = part.partition("=")
        if not sep or k not in opts:
            raise InvalidInput(f"bad random coefficient option {part!r}")
        opts[k] = v
    try:
        seed = int(opts["seed"])
    except ValueError:
        raise InvalidInput(f"seed must be an integer, got {opts['seed']!r}") from None
    return random_coeffs(n, seed, opts["dist"])


def coeffs_from_json(obj):
    """A bare array, or ``{"coeffs": [...], "convention": "a"|"d"|"r"}``."""
    if isinstance(obj, dict):
        if "coeffs" not in obj:
            raise InvalidInput("coefficient JSON object lacks 'coeffs'")
        return list(obj["coeffs"]), obj.get("convention", "a")
    if isinstance(obj, list):
        return obj, "a"
    raise InvalidInput("coefficients must be a JSON array or object")


def load_coeffs(path):
    try:
        return coeffs_from_json(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from None


def coeffs_to_json(g: CauchyFunction) -> dict:
    return {"coeffs": [exact_to_json(c) for c in g.coeffs], "convention": g.convention}
