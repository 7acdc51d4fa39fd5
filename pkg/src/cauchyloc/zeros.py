"""Argument-principle zero counting, subdivision and Newton refinement.

Everything here works with any ``AnalyticFunction``: an object exposing
``value(z)`` and, ideally, ``value_logderiv(z) -> (F, F'/F)``. Counts come
from (1/2 pi i) of the contour integral of F'/F; a count is accepted only when
the quadrature estimate is within 1/4 of an integer and stable under
refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
import numpy as np
from mpmath import mp

from .errors import NumericalFailure, UnresolvedWinding

MAX_SAMPLES = 2 ** 16
MAX_DEV = 0.25
PERTURB = (1 + mpmath.mpf(2) ** -8, 1 - mpmath.mpf(2) ** -8)


class AnalyticFunction:
    """Base evaluator. Subclasses override ``value`` and optionally
    ``derivative`` or ``value_logderiv``."""

    def value(self, z):
        raise NotImplementedError

    def __call__(self, z):
        return self.value(z)

    def derivative(self, z):
        # central difference, error O(h^2) with h = |z| 2^(-prec/3)
        h = mpmath.ldexp(max(abs(z), mpmath.mpf(1)), -(mp.prec // 3))
        return (self.value(z + h) - self.value(z - h)) / (2 * h)

    def value_logderiv(self, z):
        F = self.value(z)
        if F == 0:
            return F, None
        return F, self.derivative(z) / F

    def logderiv_batch(self, points):
        """(F'/F, log|F|) at many points as numpy arrays; nan/-inf where F = 0."""
        g = np.empty(len(points), dtype=complex)
        la = np.empty(len(points))
        for i, z in enumerate(points):
            Fz, d = self.value_logderiv(z)
            if d is None or Fz == 0:
                g[i], la[i] = np.nan, -np.inf
            else:
                g[i], la[i] = complex(d), float(mpmath.log(abs(Fz)))
        return g, la

    def is_real(self):
        """True when F(conj z) = conj F(z)."""
        return False

    def __add__(self, other):
        return SumFunction(self, other)


class Function(AnalyticFunction):
    """Wrap plain callables ``f`` and optional ``df``."""

    def __init__(self, f, df=None, real=False):
        self.f, self.df, self.real = f, df, real

    def value(self, z):
        return self.f(z)

    def derivative(self, z):
        return self.df(z) if self.df is not None else super().derivative(z)

    def is_real(self):
        return self.real


class SumFunction(AnalyticFunction):
    def __init__(self, a, b):
        self.a, self.b = a, b

    def value(self, z):
        return self.a.value(z) + self.b.value(z)

    def derivative(self, z):
        fa, la = self.a.value_logderiv(z)
        fb, lb = self.b.value_logderiv(z)
        da = self.a.derivative(z) if la is None else fa * la
        db = self.b.derivative(z) if lb is None else fb * lb
        return da + db

    def is_real(self):
        return self.a.is_real() and self.b.is_real()


# -- contours ---------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    center: object
    radius: object

    def scaled(self, s):
        return Circle(self.center, self.radius * s)

    def contains(self, z):
        return abs(z - self.center) < self.radius

    def to_json(self):
        return {"type": "circle", "center": _cstr(self.center), "radius": mpmath.nstr(self.radius, 20)}


@dataclass(frozen=True)
class Rectangle:
    x0: object
    x1: object
    y0: object
    y1: object

    def __post_init__(self):
        for k in ("x0", "x1", "y0", "y1"):
            v = getattr(self, k)
            if not isinstance(v, mpmath.mpf):
                object.__setattr__(self, k, mpmath.mpf(v))
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("rectangle needs x0 < x1 and y0 < y1")

    @property
    def center(self):
        return mpmath.mpc((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)

    @property
    def size(self):
        return max(self.x1 - self.x0, self.y1 - self.y0)

    def corners(self):
        return (mpmath.mpc(self.x0, self.y0), mpmath.mpc(self.x1, self.y0),
                mpmath.mpc(self.x1, self.y1), mpmath.mpc(self.x0, self.y1))

    def contains(self, z, closed=False):
        z = mpmath.mpc(z)
        if closed:
            return self.x0 <= z.real <= self.x1 and self.y0 <= z.imag <= self.y1
        return self.x0 < z.real < self.x1 and self.y0 < z.imag < self.y1

    def scaled(self, s):
        c = self.center
        hx, hy = (self.x1 - self.x0) / 2 * s, (self.y1 - self.y0) / 2 * s
        return Rectangle(c.real - hx, c.real + hx, c.imag - hy, c.imag + hy)

    def to_json(self):
        return {"type": "rectangle", "x": [mpmath.nstr(self.x0, 20), mpmath.nstr(self.x1, 20)],
                "y": [mpmath.nstr(self.y0, 20), mpmath.nstr(self.y1, 20)]}


def _cstr(z):
    z = mpmath.mpc(z)
    return [mpmath.nstr(z.real, 20), mpmath.nstr(z.imag, 20)]


@dataclass(frozen=True)
class WindingResult:
    count: int
    raw: object
    deviation: float
    samples: int
    contour: object


# -- quadrature --------------------------------------------------------------
#
# Contour integrands only need a few correct digits, so samples of F'/F are
# taken in complex128 (via ``logderiv_batch``) while contour geometry stays at
# the working precision. ``logabs`` tracks log|F| along the contour to detect
# contours passing (numerically) through a zero.

class _OnContour(Exception):
    pass


class _Track:
    def __init__(self):
        self.hi = -np.inf
        self.lo = np.inf

    def add(self, g, logabs):
        if not np.all(np.isfinite(g)) or not np.all(np.isfinite(logabs)):
            raise _OnContour()
        self.hi = max(self.hi, float(logabs.max()))
        self.lo = min(self.lo, float(logabs.min()))

    def near_zero(self):
        return self.lo < self.hi - (mp.prec // 2) * np.log(2.0)


def _circle_points(c, k0, step, N):
    return [c.center + c.radius * mpmath.expjpi(mpmath.mpf(2 * k) / N)
            for k in range(k0, N, step)]


def _circle_winding(F, c: Circle, max_samples=MAX_SAMPLES):
    track = _Track()

    def block(k0, step, N):
        g, la = F.logderiv_batch(_circle_points(c, k0, step, N))
        track.add(g, la)
        e = np.exp(2j * np.pi * np.arange(k0, N, step) / N)
        return complex(np.sum(g * e))

    r = float(c.radius)
    n = 64
    total = block(0, 1, n)
    prev = None
    while True:
        est = r * total / n
        if track.near_zero():
            raise _OnContour()
        dev = abs(est.real - round(est.real))
        if prev is not None and dev <= MAX_DEV and abs(est - prev) <= 0.01:
            return WindingResult(int(round(est.real)), est, float(dev), n, c)
        if 2 * n > max_samples:
            raise UnresolvedWinding(c, f"circle winding unresolved after {n} samples "
                                       f"(estimate {est:.6g})")
        prev = est
        total += block(1, 2, 2 * n)
        n *= 2


_GL_DEG = 12
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_DEG)
_GL_XMP = None


def _gl_nodes():
    global _GL_XMP
    if _GL_XMP is None or _GL_XMP[0] != mp.prec:
        _GL_XMP = (mp.prec, [mpmath.mpf(float(x)) for x in _GL_X])
    return _GL_XMP[1]


class _EdgeCache:
    def __init__(self):
        self.store = {}

    def get(self, a, b):
        v = self.store.get((a, b))
        if v is not None:
            return v
        v = self.store.get((b, a))
        if v is not None:
            return (-v[0], v[1], v[2])
        return None

    def put(self, a, b, v):
        self.store[(a, b)] = v


def _gl_panel(F, a, b, track):
    h = (b - a) / 2
    m = (a + b) / 2
    g, la = F.logderiv_batch([m + h * x for x in _gl_nodes()])
    track.add(g, la)
    return complex(h) * complex(np.dot(_GL_W, g))


def _edge_integral(F, a, b, tol, track, budget, depth=0, whole=None):
    if whole is None:
        whole = _gl_panel(F, a, b, track)
    m = (a + b) / 2
    left = _gl_panel(F, a, m, track)
    right = _gl_panel(F, m, b, track)
    budget[0] += 2 * _GL_DEG
    if abs(left + right - whole) <= tol:
        return left + right
    if depth >= 48 or budget[0] > MAX_SAMPLES:
        raise UnresolvedWinding(None, "edge quadrature did not converge")
    return (_edge_integral(F, a, m, tol / 2, track, budget, depth + 1, left)
            + _edge_integral(F, m, b, tol / 2, track, budget, depth + 1, right))


def _rect_winding(F, rect: Rectangle, cache: _EdgeCache | None = None):
    cs = rect.corners()
    total = 0j
    samples = 0
    hi, lo = -np.inf, np.inf
    for a, b in zip(cs, cs[1:] + cs[:1]):
        hit = cache.get(a, b) if cache is not None else None
        if hit is None:
            track = _Track()
            budget = [_GL_DEG]
            try:
                val = _edge_integral(F, a, b, 1e-3, track, budget)
            except UnresolvedWinding as exc:
                raise UnresolvedWinding(rect, str(exc)) from None
            hit = (val, budget[0], (track.hi, track.lo))
            if cache is not None:
                cache.put(a, b, hit)
        total += hit[0]
        samples += hit[1]
        hi, lo = max(hi, hit[2][0]), min(lo, hit[2][1])
    t = _Track()
    t.hi, t.lo = hi, lo
    if t.near_zero():
        raise _OnContour()
    est = total / (2j * np.pi)
    dev = abs(est.real - round(est.real))
    if dev > MAX_DEV or abs(est.imag) > MAX_DEV:
        raise UnresolvedWinding(rect, f"rectangle winding estimate {est:.6g} "
                                      "is not near an integer")
    return WindingResult(int(round(est.real)), est, float(dev), samples, rect)


def _wind_once(F, contour, cache=None, max_samples=MAX_SAMPLES):
    if isinstance(contour, Circle):
        return _circle_winding(F, contour, max_samples)
    return _rect_winding(F, contour, cache)


def winding_count(F: AnalyticFunction, contour, max_samples=MAX_SAMPLES, perturb=True):
    """Number of zeros inside ``contour`` (a Circle or Rectangle).

    If F comes too close to zero on the contour, the contour is rescaled by
    1 + 2^-8 and then 1 - 2^-8 about its center before giving up; the
    result records the contour actually used.
    """
    tries = [contour] + ([contour.scaled(s) for s in PERTURB] if perturb else [])
    last = None
    for c in tries:
        try:
            return _wind_once(F, c, max_samples=max_samples)
        except _OnContour:
            last = UnresolvedWinding(c, "function vanishes (numerically) on the contour")
        except UnresolvedWinding as exc:
            last = exc
    raise last


# -- records -----------------------------------------------------------------

@dataclass(frozen=True)
class ZeroRecord:
    location: object
    refined: bool
    winding_cert: int
    winding_dev: float
    contour: object
    multiplicity: int = 1

    @property
    def box_size(self):
        c = self.contour
        return c.size if isinstance(c, Rectangle) else 2 * c.radius


@dataclass
class ZeroInventory:
    window: Rectangle
    zeros: list
    total_count: int
    unresolved_boxes: list = field(default_factory=list)
    window_dev: float = 0.0

    def sorted_zeros(self):
        return sorted(self.zeros, key=lambda r: (mpmath.mpc(r.location).real,
                                                 mpmath.mpc(r.location).imag))

    def multiplicity_sum(self):
        return sum(r.multiplicity for r in self.zeros)

    def restricted(self, window: Rectangle) -> "ZeroInventory":
        """Zeros of this inventory inside a sub-window (counts not re-certified)."""
        zs = [r for r in self.zeros if window.contains(r.location, closed=True)]
        return ZeroInventory(window, zs, sum(r.multiplicity for r in zs),
                             [b for b in self.unresolved_boxes if _overlaps(b, window)])


def _overlaps(a: Rectangle, b: Rectangle):
    return not (a.x1 < b.x0 or b.x1 < a.x0 or a.y1 < b.y0 or b.y1 < a.y0)


# -- Newton ------------------------------------------------------------------

def _newton(F, z0, inside, max_iter=200):
    z = mpmath.mpc(z0)
    for _ in range(max_iter):
        Fz, g = F.value_logderiv(z)
        if Fz == 0:
            return z
        if g is None or g == 0:
            return None
        step = 1 / g
        z = z - step
        if not inside(z):
            return None
        if abs(step) < mpmath.ldexp(max(abs(z), mpmath.mpf(2) ** -mp.prec), -(mp.prec - 16)):
            return z
    return None


def _snap_real(F, z, contains):
    # a simple zero of a real function whose box also holds its mirror image is real
    if F.is_real() and z.imag != 0 and contains(mpmath.conj(z)):
        return mpmath.mpc(z.real, 0)
    return z


def refine(F: AnalyticFunction, z0, contour) -> ZeroRecord:
    """Newton from z0 inside a contour certified to hold exactly one zero.

    Contours holding more than one zero are refused and returned as a
    multiplicity record at the contour center; if Newton leaves the contour
    the contour's bounding box is subdivided instead.
    """
    w = winding_count(F, contour)
    c = w.contour
    if w.count == 0:
        raise NumericalFailure("contour holds no zero")
    if w.count > 1:
        return ZeroRecord(c.center, False, w.count, w.deviation, c, w.count)
    z = _newton(F, z0, c.contains)
    if z is None:
        box = _bounding_box(c)
        inv = find_zeros(F, box, box.size * mpmath.mpf(2) ** -40)
        zs = [r for r in inv.zeros if c.contains(r.location)]
        if len(zs) != 1:
            raise NumericalFailure("subdivision fallback did not isolate the zero")
        return zs[0]
    z = _snap_real(F, z, c.contains)
    return ZeroRecord(z, True, 1, w.deviation, c, 1)


def _bounding_box(c):
    if isinstance(c, Rectangle):
        return c
    r = c.radius
    z = mpmath.mpc(c.center)
    return Rectangle(z.real - r, z.real + r, z.imag - r, z.imag + r)


# -- subdivision -------------------------------------------------------------

# split offsets: close to the midpoint, away from dyadic and decimal grids
_SPLITS = (mpmath.mpf("0.5") + mpmath.mpf(2) ** -6 * (mpmath.sqrt(2) - 1),
           mpmath.mpf("0.5") - mpmath.mpf(2) ** -5 * (mpmath.sqrt(3) - 1),
           mpmath.mpf("0.5") + mpmath.mpf(2) ** -4 * (mpmath.sqrt(5) - 2),
           mpmath.mpf("0.5") - mpmath.mpf(2) ** -3 * (mpmath.sqrt(7) - 2))


def _split(rect: Rectangle, frac):
    if rect.x1 - rect.x0 >= rect.y1 - rect.y0:
        s = rect.x0 + (rect.x1 - rect.x0) * frac
        return Rectangle(rect.x0, s, rect.y0, rect.y1), Rectangle(s, rect.x1, rect.y0, rect.y1)
    s = rect.y0 + (rect.y1 - rect.y0) * frac
    return Rectangle(rect.x0, rect.x1, rect.y0, s), Rectangle(rect.x0, rect.x1, s, rect.y1)


def _count(F, rect, cache):
    try:
        return _rect_winding(F, rect, cache)
    except _OnContour:
        raise UnresolvedWinding(rect, "function vanishes (numerically) on the contour") from None


def find_zeros(F: AnalyticFunction, window: Rectangle, min_box=None) -> ZeroInventory:
    """All zeros of F in ``window`` with a certified box each.

    Boxes are bisected across their longer side (split point slightly off
    center, with alternative offsets if the split line passes too close to a
    zero) until each holds one zero, then Newton runs from the box center.
    Boxes reaching ``min_box`` with a count above one become multiplicity
    records; boxes whose counts cannot be certified are listed as unresolved.
    """
    win = window
    if min_box is None:
        min_box = window.size * mpmath.mpf(2) ** -60
    min_box = mpmath.mpf(min_box)
    cache = _EdgeCache()
    top = None
    for c in [window] + [window.scaled(s) for s in PERTURB]:
        try:
            top = _count(F, c, cache)
            win = c
            break
        except UnresolvedWinding as exc:
            last = exc
    if top is None:
        raise last
    records, unresolved = [], []
    queue = [(win, top)]
    while queue:
        box, w = queue.pop(0)
        if w.count == 0:
            continue
        if w.count == 1:
            z = _newton(F, box.center, box.contains)
            if z is not None:
                z = _snap_real(F, z, box.contains)
                records.append(ZeroRecord(z, True, 1, w.deviation, box, 1))
                continue
        if box.size <= min_box:
            records.append(ZeroRecord(box.center, False, w.count, w.deviation, box, w.count))
            continue
        for frac in _SPLITS:
            b1, b2 = _split(box, frac)
            try:
                w1, w2 = _count(F, b1, cache), _count(F, b2, cache)
            except UnresolvedWinding:
                continue
            if w1.count + w2.count == w.count:
                queue += [(b1, w1), (b2, w2)]
                break
        else:
            unresolved.append(box)
    inv = ZeroInventory(win, records, top.count, unresolved, top.deviation)
    inv.zeros = inv.sorted_zeros()
    return inv
