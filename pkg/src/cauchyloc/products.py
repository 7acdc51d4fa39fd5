"""Finite canonical products ``A(z) = prod (1 - z/t) [exp(z/t)]`` and friends.

Zeros are kept exact (Fraction, or a ``(re, im)`` Fraction pair for shifted
complex zeros). Generators that know the law of their zeros attach it, which
enables an analytic bound on the neglected tail of the infinite product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

from ._mp import is_zero, parse_exact, parse_scalar, to_mp
from .errors import InvalidInput
from .trends import loglog_slope

# laws with an analytic tail bound; see tail_bound()
KNOWN_LAWS = ("squares", "powers2", "simex", "lattice", "hamburger_cx")


@dataclass(frozen=True)
class CanonicalProduct:
    zeros: tuple
    genus: int = 0
    law: str | None = None
    law_params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        zs = tuple(parse_scalar(z) for z in self.zeros)
        object.__setattr__(self, "zeros", zs)
        if self.genus not in (0, 1):
            raise InvalidInput("genus must be 0 or 1")
        for i, z in enumerate(zs):
            if is_zero(z):
                raise InvalidInput(f"zero {i} of a canonical product sits at the origin")
        if self.is_real and len(set(zs)) != len(zs):
            raise InvalidInput("real zeros of a canonical product must be simple")

    @property
    def is_real(self) -> bool:
        return all(isinstance(z, Fraction) for z in self.zeros)

    def __len__(self):
        return len(self.zeros)

    def zeros_mp(self):
        return [to_mp(z) for z in self.zeros]


@dataclass(frozen=True)
class ProductValue:
    value: object
    error_bound: object          # rounding, a posteriori
    tail_bound: object | None    # relative distance to the infinite product, if known


@dataclass(frozen=True)
class HamburgerDiagnostic:
    M_tested: tuple
    min_ratio: dict
    slopes: dict
    trusted: tuple               # indices of zeros used (sorted by |s|)
    verdict: str                 # consistent / inconsistent / inconclusive
    note: str = ""


# -- evaluation ---------------------------------------------------------------

def _genus_sum(zs):
    return mpmath.fsum(1 / z for z in zs)


def eval_product(p: CanonicalProduct, z) -> ProductValue:
    """Exact finite product at working precision, with a rounding bound."""
    z = to_mp(z) if not isinstance(z, (mpmath.mpf, mpmath.mpc)) else z
    zs = p.zeros_mp()
    val = mpmath.mpf(1)
    for t in zs:
        val *= 1 - z / t
    if p.genus == 1 and zs:
        val *= mpmath.exp(z * _genus_sum(zs))
    nfac = len(zs) + (1 if p.genus else 0)
    err = mpmath.ldexp(abs(val), -(mp.prec - 10)) * max(nfac, 1)
    return ProductValue(val, err, tail_bound(p, z))


def eval_except(p: CanonicalProduct, z, k: int):
    """The product with the k-th factor removed (genus factor kept)."""
    zs = p.zeros_mp()
    val = mpmath.mpf(1)
    for j, t in enumerate(zs):
        if j != k:
            val *= 1 - z / t
    if p.genus == 1 and zs:
        val *= mpmath.exp(z * _genus_sum(zs))
    return val


def derivative_at_zero(p: CanonicalProduct, k: int):
    """A'(t_k) = -(1/t_k) prod_{j != k} (1 - t_k/t_j) [exp(t_k sum 1/t_j)]."""
    if not 0 <= k < len(p):
        raise IndexError(f"zero index {k} out of range 0..{len(p) - 1}")
    tk = to_mp(p.zeros[k])
    return -eval_except(p, tk, k) / tk


def derivative_at_zero_exact(p: CanonicalProduct, k: int) -> Fraction:
    """Exact rational A'(t_k) for a genus-0 product with rational zeros."""
    if p.genus != 0 or not p.is_real:
        raise InvalidInput("exact derivative needs a genus-0 product with real rational zeros")
    if not 0 <= k < len(p):
        raise IndexError(f"zero index {k} out of range 0..{len(p) - 1}")
    # scale to integers: t_j = s_j / D, then (1 - t_k/t_j) = (s_j - s_k)/s_j
    D = math.lcm(*(z.denominator for z in p.zeros))
    s = [int(z * D) for z in p.zeros]
    sk = s[k]
    num, den = 1, sk
    for j, sj in enumerate(s):
        if j != k:
            num *= sj - sk
            den *= sj
    return Fraction(-num * D, den)


def eval_product_exact(p: CanonicalProduct, x) -> Fraction:
    """Exact A(x) for a genus-0 product with real rational zeros and rational x."""
    if p.genus != 0 or not p.is_real:
        raise InvalidInput("exact evaluation needs a genus-0 product with real rational zeros")
    x = parse_exact(x)
    D = math.lcm(x.denominator, *(z.denominator for z in p.zeros))
    s = [int(z * D) for z in p.zeros]
    xs = int(x * D)
    num = den = 1
    for sj in s:
        num *= sj - xs
        den *= sj
    return Fraction(num, den)


def tail_bound(p: CanonicalProduct, z):
    """Relative bound on |P_trunc(z)/P_full(z) - 1| from the law's tail.

    Uses |log(1 - w)| <= 2|w| for |w| <= 1/2 and closed-form bounds on the
    reciprocal tail sums; returns None when the law is unknown or z lies
    outside the region where the bound is valid.
    """
    law, lp = p.law, p.law_params
    if law not in KNOWN_LAWS:
        return None
    r = abs(to_mp(z) if not isinstance(z, (mpmath.mpf, mpmath.mpc)) else z)
    if law == "squares":
        n = int(lp["n_max"])
        if r > mpmath.mpf((n + 1) ** 2) / 2:
            return None
        b = 2 * r / n
    elif law in ("powers2", "simex"):
        k = int(lp["k_max"])
        if r > mpmath.mpf(2) ** k:
            return None
        b = 2 * r * mpmath.mpf(2) ** (-k)
    elif law == "lattice":
        n = int(lp["n_max"])
        if r > mpmath.mpf(n + 1) / 2:
            return None
        b = 2 * r ** 2 / n
    else:  # hamburger_cx: squares n <= ns plus cubes n^3 + 1/2, n <= nc
        ns, nc = int(lp["n_squares"]), int(lp["n_cubes"])
        if ns == 0 or nc == 0:
            return None
        if r > min(mpmath.mpf((ns + 1) ** 2), mpmath.mpf((nc + 1) ** 3)) / 2:
            return None
        b = 2 * r * (mpmath.mpf(1) / ns + mpmath.mpf(1) / (2 * nc ** 2))
    return mpmath.expm1(b)


# -- generators ---------------------------------------------------------------

def squares_product(n_max: int, n_min: int = 1) -> CanonicalProduct:
    zs = [Fraction(n * n) for n in range(n_min, n_max + 1)]
    law = "squares" if n_min == 1 else None
    return CanonicalProduct(zs, 0, law, {"n_max": n_max, "n_min": n_min})


def powers2_product(k_max: int, k_min: int = 1) -> CanonicalProduct:
    zs = [Fraction(2) ** k for k in range(k_min, k_max + 1)]
    return CanonicalProduct(zs, 0, "powers2" if k_min >= 1 else None, {"k_max": k_max})


def lattice_product(n_max: int) -> CanonicalProduct:
    """Genus-1 product over the symmetric lattice +-1..+-n_max."""
    zs = [Fraction(n) for n in range(-n_max, n_max + 1) if n]
    return CanonicalProduct(zs, 1, "lattice", {"n_max": n_max})


def product_for_measure(m, genus: int | None = None) -> CanonicalProduct:
    """Canonical product whose zero set is the support of a measure.

    Laws known to the generators are carried over so tail bounds stay
    available; genus defaults to 1 only for the integer lattice.
    """
    law, lp = None, {}
    if m.law == "simex":
        lo, hi = m.window
        law, lp = ("simex", {"k_max": hi}) if lo == 1 else (None, {})
    elif m.law == "hamburger_cx":
        law, lp = "hamburger_cx", dict(m.law_params)
    elif m.law == "squares" and m.window and m.window[0] <= 1:
        law, lp = "squares", {"n_max": m.window[1]}
    elif m.law == "lattice" and m.window and m.window[0] == -m.window[1]:
        law, lp = "lattice", {"n_max": m.window[1]}
    if genus is None:
        genus = 1 if m.law == "lattice" else 0
    if genus == 0 and law == "lattice":
        law = None
    return CanonicalProduct(m.support, genus, law, lp)


def make_lacunary(seed_zeros, ratio_check) -> CanonicalProduct:
    """Genus-0 product over zeros with |z_{k+1}| / |z_k| >= ratio_check > 1.

    The ratio test is done exactly on squared moduli.
    """
    from ._mp import parse_exact

    q = parse_exact(ratio_check)
    if q <= 1:
        raise InvalidInput("lacunarity ratio must exceed 1")
    zs = [parse_scalar(z) for z in seed_zeros]

    def mod2(z):
        return z[0] ** 2 + z[1] ** 2 if isinstance(z, tuple) else z * z

    for k in range(len(zs) - 1):
        if mod2(zs[k + 1]) < q * q * mod2(zs[k]):
            raise InvalidInput(
                f"not lacunary at index {k}: |z[{k + 1}]|/|z[{k}]| < {q}")
    return CanonicalProduct(zs, 0, None, {"ratio": q})


def concat(p1: CanonicalProduct, p2: CanonicalProduct) -> CanonicalProduct:
    if p1.genus != p2.genus:
        raise InvalidInput("cannot merge products of different genus")
    return CanonicalProduct(tuple(p1.zeros) + tuple(p2.zeros), p1.genus)


def sub_product(p: CanonicalProduct, indices) -> CanonicalProduct:
    return CanonicalProduct([p.zeros[i] for i in sorted(indices)], p.genus)


# -- closed forms ----------------------------------------------------------------

def sine_closed_form(law: str, z, n_min: int = 1):
    """Infinite-product values from the sine product.

    ``lattice``: prod_{n>=1} (1 - z^2/n^2) = sin(pi z)/(pi z).
    ``squares``: prod_{n>=n_min} (1 - z/n^2) = sin(pi sqrt z)/(pi sqrt z)
    divided by the first n_min - 1 factors.
    """
    z = to_mp(z) if not isinstance(z, (mpmath.mpf, mpmath.mpc)) else z
    if law == "lattice":
        return mpmath.sincpi(z)
    if law == "squares":
        # removable point z = k^2 with k < n_min: the sine product over n != k is (-1)^(k+1)/2
        if mpmath.im(z) == 0 and z > 0 and mpmath.isint(mpmath.sqrt(z)) \
                and int(mpmath.sqrt(z)) < n_min:
            k = int(mpmath.sqrt(z))
            val = mpmath.mpf((-1) ** (k + 1)) / 2
            for n in range(1, n_min):
                if n != k:
                    val /= 1 - mpmath.mpf(k * k) / n ** 2
            return val
        # sin(pi w)/(pi w) is even in w, so any branch of sqrt works
        val = mpmath.sincpi(mpmath.sqrt(z))
        for n in range(1, n_min):
            val /= 1 - z / n ** 2
        return val
    raise InvalidInput(f"no closed form for law {law!r}")


# -- Hamburger class diagnostic -------------------------------------------------

def _trusted_zeros(p: CanonicalProduct, order):
    if p.law in KNOWN_LAWS:
        keep = []
        for i in order:
            b = tail_bound(p, to_mp(p.zeros[i]))
            if b is not None and b <= 1:
                keep.append(i)
        return keep, "tail-bounded zeros only"
    return list(order), "truncated, no tail bound"


def hamburger_check(p: CanonicalProduct, M_list) -> HamburgerDiagnostic:
    """Finite-window look at |B'(s_k)| / |s_k|^M for each M.

    Only zeros where the law's tail bound keeps the truncated derivative
    within a factor 2 of the infinite one are used; unlabeled zero lists use
    everything and say so. A ratio sequence whose log-log slope over the
    outer half of those zeros is negative makes the verdict ``inconsistent``;
    positive slopes for every M make it ``consistent``.
    """
    if not p.is_real:
        raise InvalidInput("Hamburger diagnostic needs real zeros")
    Ms = tuple(M_list)
    order = sorted(range(len(p)), key=lambda i: (abs(p.zeros[i]), p.zeros[i]))
    trusted, note = _trusted_zeros(p, order)
    if len(trusted) < 4 or len({abs(p.zeros[i]) for i in trusted}) < 3:
        return HamburgerDiagnostic(Ms, {}, {}, tuple(trusted), "inconclusive",
                                   note + "; too few zeros for a trend")
    logd = {i: float(mpmath.log(abs(derivative_at_zero(p, i)))) for i in trusted}
    logs = {i: float(mpmath.log(abs(to_mp(p.zeros[i])))) for i in trusted}
    tail = trusted[len(trusted) // 2:]
    mins, slopes = {}, {}
    for M in Ms:
        logr = {i: logd[i] - M * logs[i] for i in trusted}
        mins[M] = math.exp(min(logr.values())) if min(logr.values()) > -700 else 0.0
        slopes[M] = loglog_slope([logs[i] for i in tail], [logr[i] for i in tail])
    if any(s is not None and s < 0 for s in slopes.values()):
        verdict = "inconsistent"
    elif all(s is not None and s > 0 for s in slopes.values()):
        verdict = "consistent"
    else:
        verdict = "inconclusive"
    return HamburgerDiagnostic(Ms, mins, slopes, tuple(trusted), verdict, note)
