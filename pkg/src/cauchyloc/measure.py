"""Discrete measures on the real line: construction, checks, JSON I/O.

Support points and weights are stored as exact Fractions. Weights that are
irrational by nature (``exp(-sqrt|n|)`` and the like) are generated at the
working precision and stored as the exact dyadic value of that mpf, so a
measure never changes when it is written out and read back.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath

from ._mp import exact_to_json, mpf_to_fraction, parse_exact, to_mp
from .errors import InvalidInput
from .trends import loglog_slope


@dataclass(frozen=True)
class DiscreteMeasure:
    """Point masses ``weights[i]`` at ``support[i]``.

    ``index_offset`` is the label of the first point in the generating law
    (1 for ``2**n, n >= 1``; ``-5`` for a lattice starting at -5), so
    diagnostics can print the index a reader expects. ``window`` records the
    truncation of an infinite law, ``law`` its name.
    """

    support: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]
    label: str = ""
    index_offset: int = 0
    law: str | None = None
    window: tuple[int, int] | None = None
    law_params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(parse_exact(t) for t in self.support))
        object.__setattr__(self, "weights", tuple(parse_exact(w) for w in self.weights))
        if len(self.support) != len(self.weights):
            raise InvalidInput(
                f"support has {len(self.support)} points but {len(self.weights)} weights given")

    def __len__(self):
        return len(self.support)

    def support_mp(self):
        return [to_mp(t) for t in self.support]

    def weights_mp(self):
        return [to_mp(w) for w in self.weights]

    def sqrt_weights_mp(self):
        return [mpmath.sqrt(to_mp(w)) for w in self.weights]

    def labels(self):
        """Law indices of the stored points (window-relative numbering)."""
        if self.law == "lattice":
            return [int(t) for t in self.support]
        return [self.index_offset + i for i in range(len(self))]

    def restrict(self, indices, label=None, weights=None) -> "DiscreteMeasure":
        idx = sorted(indices)
        ws = [self.weights[i] for i in idx] if weights is None else list(weights)
        return DiscreteMeasure(
            support=[self.support[i] for i in idx], weights=ws,
            label=label if label is not None else f"{self.label}|restricted",
            index_offset=0, law=None)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[str, ...]
    poisson_sum: object
    n_points: int


@dataclass(frozen=True)
class SeparationCertificate:
    C: Fraction
    N: int
    satisfied: bool
    worst_index: int
    worst_ratio: Fraction


@dataclass(frozen=True)
class DecayReport:
    M: float
    values: tuple
    max_value: object
    argmax: int
    slope: float | None
    bounded: bool
    decreasing_tail: bool


def validate(m: DiscreteMeasure) -> ValidationReport:
    if len(m) == 0:
        raise InvalidInput("measure has empty support")
    violations = []
    for i in range(len(m) - 1):
        if not m.support[i] < m.support[i + 1]:
            violations.append(f"support not strictly increasing at index {i}")
    for i, t in enumerate(m.support):
        if t == 0:
            violations.append(f"support contains 0 at index {i}")
    for i, w in enumerate(m.weights):
        if w <= 0:
            violations.append(f"weight {i} is not positive")
    poisson = mpmath.fsum(to_mp(w) / (1 + to_mp(t) ** 2) for t, w in zip(m.support, m.weights))
    return ValidationReport(not violations, tuple(violations), poisson, len(m))


def check_power_separation(m: DiscreteMeasure, C, N: int) -> SeparationCertificate:
    """Exact test of ``|t[n+1] - t[n]| >= C |t[n]|**(-N)`` over consecutive pairs.

    The worst index is the pair with the smallest ratio gap / (C |t|^-N),
    reported whether or not the condition holds.
    """
    C = parse_exact(C)
    if C <= 0:
        raise InvalidInput("separation constant C must be positive")
    if N < 0 or int(N) != N:
        raise InvalidInput("separation exponent N must be a nonnegative integer")
    N = int(N)
    worst, worst_ratio = -1, None
    for i in range(len(m) - 1):
        gap = abs(m.support[i + 1] - m.support[i])
        ratio = gap * abs(m.support[i]) ** N / C
        if worst_ratio is None or ratio < worst_ratio:
            worst, worst_ratio = i, ratio
    if worst_ratio is None:
        return SeparationCertificate(C, N, True, -1, Fraction(0))
    return SeparationCertificate(C, N, worst_ratio >= 1, worst, worst_ratio)


def check_weight_decay(m: DiscreteMeasure, M) -> DecayReport:
    """Finite-scale look at ``mu_n |t_n|^M``: its maximum and log-log tail slope.

    The slope is a least-squares fit of log(mu|t|^M) against log|t| over the
    outer half of the points (by |t|). ``bounded`` means that slope is not
    positive, which is all a finite window can say.
    """
    vals = [to_mp(w) * abs(to_mp(t)) ** M for t, w in zip(m.support, m.weights)]
    k = max(range(len(vals)), key=lambda i: vals[i])
    order = sorted(range(len(m)), key=lambda i: abs(m.support[i]))
    tail = order[len(order) // 2:]
    slope = None
    if len(tail) >= 2:
        xs = [float(mpmath.log(abs(to_mp(m.support[i])))) for i in tail]
        ys = [float(mpmath.log(vals[i])) for i in tail]
        slope = loglog_slope(xs, ys)
    bounded = slope is None or slope <= 0
    decreasing = slope is not None and slope < 0
    return DecayReport(M, tuple(vals), vals[k], k, slope, bounded, decreasing)


# -- generators -------------------------------------------------------------

def _lattice_weight(law: str, n: int):
    if law == "exp_sqrt":
        return mpf_to_fraction(mpmath.exp(-mpmath.sqrt(abs(n))))
    if law == "exp_square":
        return mpf_to_fraction(mpmath.exp(-mpmath.mpf(n) ** 2))
    if law == "unit":
        return Fraction(1)
    if law.startswith("power:"):
        p = parse_exact(law.split(":", 1)[1])
        return mpf_to_fraction(mpmath.mpf(abs(n)) ** (-to_mp(p)))
    raise InvalidInput(f"unknown lattice weight law {law!r}")


def _range(params, lo_key, hi_key, default_lo):
    if "n" in params:
        lo, hi = parse_index_range(params["n"])
    else:
        lo, hi = int(params.get(lo_key, default_lo)), int(params[hi_key])
    if hi < lo:
        raise InvalidInput(f"n_max={hi} < n_min={lo}")
    return lo, hi


def parse_index_range(spec) -> tuple[int, int]:
    """``"1..12"`` or ``[1, 12]`` -> (1, 12)."""
    if isinstance(spec, str):
        if ".." not in spec:
            raise InvalidInput(f"index range must look like 'a..b', got {spec!r}")
        a, b = spec.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo, hi = (int(v) for v in spec)
    if hi < lo:
        raise InvalidInput(f"n_max={hi} < n_min={lo}")
    return lo, hi


def make_example(kind: str, **params) -> DiscreteMeasure:
    """Build one of the named example measures over an explicit index window.

    kinds:
      simex         mass n^2 2^(-n(n-1)/2) at 2^n, n in [n_min, n_max]
      lattice       integer support n != 0, weights by ``weight`` law
                    (exp_sqrt, exp_square, unit, power:p)
      hamburger_cx  squares n^2 (n <= n_squares) and n^3 + 1/2 (n <= n_cubes),
                    weights |A'(t)|^-2 for the product A over the support
      squares       squares n^2, n in [n_min, n_max], canonical weights
    """
    if kind == "simex":
        lo, hi = _range(params, "n_min", "n_max", 1)
        if lo < 1:
            raise InvalidInput("simex indices start at 1")
        support = [Fraction(2) ** n for n in range(lo, hi + 1)]
        weights = [Fraction(n * n, 2 ** (n * (n - 1) // 2)) for n in range(lo, hi + 1)]
        return DiscreteMeasure(support, weights, label=f"simex n={lo}..{hi}", index_offset=lo,
                               law="simex", window=(lo, hi))
    if kind == "lattice":
        lo, hi = _range(params, "n_min", "n_max", 1)
        law = params.get("weight", "exp_sqrt")
        ns = [n for n in range(lo, hi + 1) if n != 0]
        if not ns:
            raise InvalidInput("lattice window contains no nonzero integer")
        support = [Fraction(n) for n in ns]
        weights = [_lattice_weight(law, n) for n in ns]
        return DiscreteMeasure(support, weights, label=f"lattice {law} n={lo}..{hi}",
                               index_offset=ns[0], law="lattice", window=(lo, hi),
                               law_params={"weight": law})
    if kind in ("hamburger_cx", "squares"):
        from .products import CanonicalProduct, derivative_at_zero_exact

        if kind == "hamburger_cx":
            ns, nc = int(params.get("n_squares", 10)), int(params.get("n_cubes", 5))
            if ns < 0 or nc < 0 or ns + nc == 0:
                raise InvalidInput("need n_squares, n_cubes >= 0 and at least one point")
            pts = {Fraction(n * n) for n in range(1, ns + 1)}
            pts |= {Fraction(n ** 3) + Fraction(1, 2) for n in range(1, nc + 1)}
            support = sorted(pts)
            label, window, lp = f"hamburger_cx squares<={ns} cubes<={nc}", None, {
                "n_squares": ns, "n_cubes": nc}
        else:
            lo, hi = _range(params, "n_min", "n_max", 1)
            support = [Fraction(n * n) for n in range(max(lo, 1), hi + 1)]
            label, window, lp = f"squares n={lo}..{hi}", (lo, hi), {"n_max": hi}
        law = kind if kind == "hamburger_cx" or window[0] <= 1 else None
        prod = CanonicalProduct(support, genus=0, law=law, law_params=lp)
        weights = []
        for k in range(len(support)):
            d = derivative_at_zero_exact(prod, k)
            weights.append(1 / (d * d))
        return DiscreteMeasure(support, weights, label=label, index_offset=1, law=kind,
                               window=window, law_params=lp)
    raise InvalidInput(f"unknown example kind {kind!r}")


# -- JSON --------------------------------------------------------------------

def measure_to_json(m: DiscreteMeasure) -> dict:
    out = {
        "label": m.label,
        "support": [exact_to_json(t) for t in m.support],
        "weights": [exact_to_json(w) for w in m.weights],
    }
    if m.index_offset:
        out["index_offset"] = m.index_offset
    if m.law:
        out["law"] = m.law
    if m.window:
        out["window"] = list(m.window)
    if m.law_params:
        out["law_params"] = dict(m.law_params)
    return out


def measure_from_json(obj: dict) -> DiscreteMeasure:
    if "generator" in obj:
        gen = obj["generator"]
        if "kind" not in gen:
            raise InvalidInput("generator needs a 'kind'")
        return make_example(gen["kind"], **dict(gen.get("params", {})))
    try:
        support, weights = obj["support"], obj["weights"]
    except KeyError as exc:
        raise InvalidInput(f"measure JSON lacks {exc.args[0]!r}") from None
    try:
        return DiscreteMeasure(
            support=[parse_exact(t) for t in support],
            weights=[parse_exact(w) for w in weights],
            label=str(obj.get("label", "")),
            index_offset=int(obj.get("index_offset", 0)),
            law=obj.get("law"),
            window=tuple(int(v) for v in obj["window"]) if obj.get("window") else None,
            law_params=dict(obj.get("law_params", {})),
        )
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"bad number in measure JSON: {exc}") from None


def dumps_measure(m: DiscreteMeasure) -> str:
    return json.dumps(measure_to_json(m), indent=1, sort_keys=True) + "\n"


def load_measure(path) -> DiscreteMeasure:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from None
    return measure_from_json(obj)

