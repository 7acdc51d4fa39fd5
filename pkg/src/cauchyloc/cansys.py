"""Finite-stage canonical systems Y'J = zYH with H built from indivisible intervals.

On an interval of length l where H is the projection onto e = (cos phi, sin phi),
the generator N = H J^-1 = [[-cs, c^2], [-s^2, cs]] squares to zero, so the
transfer factor is exactly I + z l N. Products of factors are polynomial in z
and are kept exact (Fractions) when every angle is a multiple of pi/4;
otherwise coefficients are computed at the working precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np
from mpmath import mp

from ._mp import exact_to_json, mpf_to_fraction, parse_exact, to_mp
from .errors import DegenerateStage, InvalidInput, NumericalFailure
from .measure import DiscreteMeasure
from .zeros import Circle, Function, Rectangle, winding_count

# (c^2, s^2, cs) for angles that are exact multiples of pi/4
_EXACT = {
    Fraction(0): (Fraction(1), Fraction(0), Fraction(0)),
    Fraction(1, 4): (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    Fraction(1, 2): (Fraction(0), Fraction(1), Fraction(0)),
    Fraction(3, 4): (Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)),
}


@dataclass(frozen=True)
class Hamiltonian:
    """Ordered (length, angle) pairs; angles are fractions of pi in [0, 1).

    Consecutive equal angles are merged on construction: together they form
    one indivisible interval.
    """

    intervals: tuple

    def __post_init__(self):
        merged = []
        for item in self.intervals:
            length, angle = item
            length, angle = parse_exact(length), parse_exact(angle)
            if length <= 0:
                raise InvalidInput("interval lengths must be positive")
            if not 0 <= angle < 1:
                raise InvalidInput("angles are fractions of pi in [0, 1)")
            if merged and merged[-1][1] == angle:
                merged[-1] = (merged[-1][0] + length, angle)
            else:
                merged.append((length, angle))
        object.__setattr__(self, "intervals", tuple(merged))

    def __len__(self):
        return len(self.intervals)

    @property
    def total_length(self):
        return sum(l for l, _ in self.intervals)

    @property
    def exact(self):
        return all(a in _EXACT for _, a in self.intervals)

    def prefix(self, k):
        return Hamiltonian(self.intervals[:k])


def _generator(angle, exact):
    if exact:
        c2, s2, cs = _EXACT[angle]
    else:
        phi = mpmath.pi * to_mp(angle)
        c, s = mpmath.cos(phi), mpmath.sin(phi)
        c2, s2, cs = c * c, s * s, c * s
    return ((-cs, c2), (-s2, cs))


def _check_stage(h, k):
    if not 0 <= k <= len(h):
        raise InvalidInput(f"stage {k} out of range 0..{len(h)}")


def transfer(h: Hamiltonian, k: int, z):
    """Y(z) after k intervals, as an mpmath 2x2 matrix."""
    _check_stage(h, k)
    z = z if isinstance(z, (mpmath.mpf, mpmath.mpc)) else to_mp(z)
    Y = mpmath.eye(2)
    for length, angle in h.intervals[:k]:
        N = _generator(angle, h.exact)
        zl = z * to_mp(length)
        F = mpmath.matrix([[1 + zl * to_mp(N[0][0]), zl * to_mp(N[0][1])],
                           [zl * to_mp(N[1][0]), 1 + zl * to_mp(N[1][1])]])
        Y = Y * F
    return Y


# -- exact polynomial stage products -----------------------------------------------

def _padd(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _pscale(p, a):
    return [a * x for x in p]


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def transfer_polys(h: Hamiltonian, k: int):
    """Y after k intervals as a 2x2 array of coefficient lists (low degree first)."""
    _check_stage(h, k)
    one, zero = (Fraction(1), Fraction(0)) if h.exact else (mpmath.mpf(1), mpmath.mpf(0))
    Y = [[[one], [zero]], [[zero], [one]]]
    for length, angle in h.intervals[:k]:
        N = _generator(angle, h.exact)
        lf = length if h.exact else to_mp(length)
        new = [[None, None], [None, None]]
        for i in range(2):
            for j in range(2):
                acc = [zero]
                for q in range(2):
                    acc = _padd(acc, _pscale(Y[i][q], N[q][j]))
                shifted = [zero] + _pscale(acc, lf)   # z * l * (Y N)_ij
                new[i][j] = _trim(_padd(Y[i][j], shifted))
        Y = new
    return Y


@dataclass(frozen=True)
class StructurePair:
    A: tuple        # coefficients, low degree first
    B: tuple
    stage: int
    exact: bool

    def eval(self, z):
        return polyval(self.A, z), polyval(self.B, z)

    def E(self, z):
        a, b = self.eval(z)
        return a - 1j * b


def polyval(coeffs, z):
    z = z if isinstance(z, (mpmath.mpf, mpmath.mpc)) else to_mp(z)
    acc = mpmath.mpf(0)
    for c in reversed(coeffs):
        acc = acc * z + (to_mp(c) if isinstance(c, (Fraction, int)) else c)
    return acc


def _pderiv(p):
    return [i * p[i] for i in range(1, len(p))] or [0]


def structure_pair(h: Hamiltonian, k: int) -> StructurePair:
    """(A_k, B_k) = (1, 0) Y_k, exact when all angles are multiples of pi/4."""
    Y = transfer_polys(h, k)
    return StructurePair(tuple(Y[0][0]), tuple(Y[0][1]), k, h.exact)


def hermite_biehler_margin(sp: StructurePair, points):
    """min over points of |E(z)|^2 - |E*(z)|^2, E* (z) = conj E(conj z)."""
    out = None
    for z in points:
        z = mpmath.mpc(z)
        e = sp.E(z)
        es = mpmath.conj(sp.E(mpmath.conj(z)))
        v = abs(e) ** 2 - abs(es) ** 2
        out = v if out is None else min(out, v)
    return out


def seeded_upper_points(n, seed, scale=4):
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-scale, scale, n)
    ys = rng.uniform(0, scale, n)
    # keep away from the real axis, where both sides of the margin vanish
    return [mpmath.mpc(float(x), float(y) + 2.0 ** -20) for x, y in zip(xs, ys)]


# -- spectral data -------------------------------------------------------------------

def a_zeros(sp: StructurePair):
    """Real, simple zeros of A_k, certified one per disk by winding counts."""
    A = [to_mp(c) if isinstance(c, (Fraction, int)) else c for c in sp.A]
    while len(A) > 1 and A[-1] == 0:
        A.pop()
    deg = len(A) - 1
    if deg <= 0:
        return []
    roots = mpmath.polyroots(list(reversed(A)), maxsteps=400, extraprec=4 * mp.prec)
    tol = mpmath.ldexp(1, -(mp.prec // 2))
    for r in roots:
        if abs(mpmath.im(r)) > tol * max(1, abs(r)):
            raise DegenerateStage(f"A_{sp.stage} has a non-real zero {mpmath.nstr(r, 8)}")
    xs = sorted(mpmath.re(r) for r in roots)
    gaps = [b - a for a, b in zip(xs, xs[1:])]
    if gaps and min(gaps) <= tol * max(1, max(abs(x) for x in xs)):
        raise DegenerateStage(f"A_{sp.stage} has a multiple zero")
    F = Function(lambda z: polyval(A, z), lambda z: polyval(_pderiv(A), z), real=True)
    rad = [min(gaps[i - 1] if i else mpmath.inf, gaps[i] if i < len(gaps) else mpmath.inf) / 3
           for i in range(len(xs))]
    rad = [r if r != mpmath.inf else mpmath.mpf(1) for r in rad]
    for x, r in zip(xs, rad):
        if winding_count(F, Circle(mpmath.mpf(x), r)).count != 1:
            raise DegenerateStage(f"A_{sp.stage}: zero near {mpmath.nstr(x, 8)} is not simple")
    R = max(abs(x) for x in xs) + 1
    total = winding_count(F, Rectangle(-R, R, -1, 1)).count
    if total != deg:
        raise DegenerateStage(f"A_{sp.stage}: {total} zeros near the real axis, degree {deg}")
    return xs


def spectral_data(h: Hamiltonian, k: int) -> DiscreteMeasure:
    """Finite-stage spectral measure: zeros of A_k with weights -B_k(t)/A_k'(t).

    With this sign B/A = -sum mu_n / (z - t_n) + (polynomial), and every
    weight is positive; a nonpositive weight is reported as a numerical
    failure. Points and weights are stored as exact dyadic values of the
    working-precision results.
    """
    sp = structure_pair(h, k)
    xs = a_zeros(sp)
    dA = _pderiv(list(sp.A))
    ts, ws = [], []
    for x in xs:
        w = -polyval(sp.B, x) / polyval(dA, x)
        if not w > 0:
            raise NumericalFailure(f"nonpositive spectral weight at t = {mpmath.nstr(x, 10)}")
        ts.append(mpf_to_fraction(x))
        ws.append(mpf_to_fraction(w))
    return DiscreteMeasure(ts, ws, label=f"spectral measure, stage {k}")


def interlaces(x, y) -> bool:
    """Chain interlacing of the real zeros of A_k (x) and A_{k+1} (y).

    At a real point the angle of the row (A_t, B_t) moves monotonically in t,
    away from 0 with the sign of the point, and by less than pi across one
    indivisible interval. So on each half-line, ordered by modulus, zeros
    drift toward the origin and at most one new zero enters from infinity:
    |y_1| <= |x_1| <= |y_2| <= |x_2| <= ...
    """
    for sign in (1, -1):
        xs = sorted(abs(v) for v in x if sign * v > 0)
        ys = sorted(abs(v) for v in y if sign * v > 0)
        if len(ys) not in (len(xs), len(xs) + 1):
            return False
        for j, v in enumerate(xs):
            if ys[j] > v or (j + 1 < len(ys) and v > ys[j + 1]):
                return False
    return True


def localization_bridge(h: Hamiltonian, k: int, seed: int = 0, budget: int = 2, M=1,
                        c=Fraction(1, 4)):
    """Localization report for random coefficients on the stage-k spectral measure."""
    from .cauchy import CauchyFunction, random_coeffs
    from .localization import localize, make_grid

    m = spectral_data(h, k)
    if len(m) == 0:
        raise DegenerateStage(f"stage {k} has an empty spectral measure")
    g = CauchyFunction(m, random_coeffs(len(m), seed))
    lo, hi = to_mp(m.support[0]), to_mp(m.support[-1])
    window = Rectangle(lo - 1, hi + 1, -1, 1)
    return localize(g, make_grid(m, c, M), window, budget)


# -- generators and JSON -------------------------------------------------------------

def geometric(stages: int, ratio=Fraction(1, 2), angles=(Fraction(0), Fraction(1, 2))):
    """Lengths ratio^k (k = 1..stages), angles cycling through ``angles``."""
    ratio = parse_exact(ratio)
    return Hamiltonian([(ratio ** (k + 1), angles[k % len(angles)]) for k in range(stages)])


def two_bursts(stages: int, ratio=Fraction(1, 2)):
    """Two geometric bursts: the second restarts at length ratio, so lengths
    accumulate at the interior point where the first burst ends."""
    half = stages // 2
    ang = (Fraction(0), Fraction(1, 2))
    ivs = [(parse_exact(ratio) ** (k + 1), ang[k % 2]) for k in range(half)]
    ivs += [(parse_exact(ratio) ** (k + 1), ang[(half + k) % 2]) for k in range(stages - half)]
    return Hamiltonian(ivs)


def random_hamiltonian(n: int, seed: int):
    rng = np.random.default_rng(seed)
    ivs = []
    for _ in range(n):
        length = Fraction(int(rng.integers(1, 64)), 32)
        angle = Fraction(int(rng.integers(0, 97)), 97)
        while ivs and angle == ivs[-1][1]:   # keep every interval indivisible
            angle = Fraction(int(rng.integers(0, 97)), 97)
        ivs.append((length, angle))
    return Hamiltonian(ivs)


def hamiltonian_from_json(obj) -> Hamiltonian:
    try:
        ivs = obj["intervals"]
        return Hamiltonian([(iv["length"], iv["angle_pi_fraction"]) for iv in ivs])
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"bad Hamiltonian JSON: missing {exc}") from None


def hamiltonian_to_json(h: Hamiltonian) -> dict:
    return {"intervals": [{"length": exact_to_json(l), "angle_pi_fraction": exact_to_json(a)}
                          for l, a in h.intervals]}


def load_hamiltonian(path) -> Hamiltonian:
    try:
        return hamiltonian_from_json(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from None
