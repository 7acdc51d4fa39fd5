"""Zero localization near the support: disk grids, occupancy, attraction sets.

All verdicts here are window-relative: an asymptotic "except finitely many"
becomes "at most ``budget`` exceptions inside the window".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ._mp import mpf_to_fraction, parse_exact, to_mp
from .cauchy import CauchyFunction, eval_f
from .errors import InvalidInput, NumericalFailure, PoleError
from .measure import DiscreteMeasure
from .density import density_residuals
from .products import CanonicalProduct, eval_product, hamburger_check
from .zeros import Circle, Rectangle, ZeroInventory, find_zeros, winding_count

DEFAULT_BUDGET = 2
DEFAULT_C = Fraction(1, 4)


@dataclass(frozen=True)
class DiskGrid:
    indices: tuple       # support indices carrying a disk
    centers: tuple       # exact support points
    radii: tuple         # mp radii
    c: Fraction
    M: float

    def circles(self):
        return [Circle(to_mp(t), r) for t, r in zip(self.centers, self.radii)]

    def disjoint(self) -> bool:
        pts = sorted(zip(self.centers, self.radii))
        return all(to_mp(b[0]) - to_mp(a[0]) > a[1] + b[1] for a, b in zip(pts, pts[1:]))

    def within(self, window: Rectangle) -> "DiskGrid":
        """Disks lying wholly inside the window."""
        keep = [i for i, (t, r) in enumerate(zip(self.centers, self.radii))
                if window.x0 <= to_mp(t) - r and to_mp(t) + r <= window.x1
                and window.y0 <= -r and r <= window.y1]
        return DiskGrid(tuple(self.indices[i] for i in keep), tuple(self.centers[i] for i in keep),
                        tuple(self.radii[i] for i in keep), self.c, self.M)


def make_grid(m: DiscreteMeasure, c=DEFAULT_C, M=1, window: Rectangle | None = None) -> DiskGrid:
    """Radii r_n = min(c |t_n|^-M, gap_n / 3); gaps use the whole support."""
    c = parse_exact(c)
    if c <= 0:
        raise InvalidInput("grid constant c must be positive")
    t = m.support
    n = len(t)
    radii = []
    for i in range(n):
        gaps = []
        if i > 0:
            gaps.append(abs(t[i] - t[i - 1]))
        if i + 1 < n:
            gaps.append(abs(t[i + 1] - t[i]))
        r = to_mp(c) * abs(to_mp(t[i])) ** (-to_mp(parse_exact(M)))
        if gaps:
            r = min(r, to_mp(min(gaps)) / 3)
        radii.append(r)
    g = DiskGrid(tuple(range(n)), tuple(t), tuple(radii), c, M)
    return g.within(window) if window is not None else g


@dataclass
class LocalizationReport:
    indices: tuple
    counts: dict                 # index -> winding count in its disk (None if unresolved)
    occupied: set
    multi: set
    empty: set
    inconclusive: set
    strays: list                 # (zero record, nearest support index)
    zero_coeff_indices: list
    window_count: int
    conservation_ok: bool
    verdicts: dict
    budget: int
    outside_unit: int
    multiple_zeros: int
    M: float = 1
    c: Fraction = DEFAULT_C
    inventory: ZeroInventory | None = None
    notes: list = field(default_factory=list)

    @property
    def stray_count(self):
        return sum(r.multiplicity for r, _ in self.strays)


def _nearest_index(m, z):
    z = mpmath.mpc(z)
    return min(range(len(m)), key=lambda i: abs(z - to_mp(m.support[i])))


def _tag(count, budget, unsure):
    if count > budget:
        return "fails"
    return "inconclusive" if unsure else "holds-in-window"


def localize(g: CauchyFunction, grid: DiskGrid, window: Rectangle, budget=DEFAULT_BUDGET,
             inventory: ZeroInventory | None = None, min_box=None) -> LocalizationReport:
    """Per-disk winding counts plus the stray zeros of F = A f in a window.

    ``inventory`` may be passed in (for instance filtered from a larger
    window); otherwise the window is searched. Zeros at support points with
    a_n = 0 are ordinary zeros of F, so the zero-coefficient convention needs
    no special casing: such a disk simply counts one zero.
    """
    if g.is_zero():
        raise InvalidInput("localization needs a nonzero function")
    m = g.measure
    support = set(m.support)
    if any(t not in support for t in grid.centers):
        raise InvalidInput("grid centers must lie in the measure support")
    grid = grid.within(window)
    F = g.entire()
    if inventory is None:
        inventory = find_zeros(F, window, min_box)
    counts, occupied, multi, empty, unsure = {}, set(), set(), set(), set()
    for idx, circ in zip(grid.indices, grid.circles()):
        try:
            w = winding_count(F, circ)
            counts[idx] = w.count
        except NumericalFailure:
            counts[idx] = None
            unsure.add(idx)
            continue
        (empty if w.count == 0 else occupied if w.count == 1 else multi).add(idx)
    circles = grid.circles()
    strays = []
    for rec in inventory.zeros:
        z = mpmath.mpc(rec.location)
        if not any(abs(z - c.center) < c.radius for c in circles):
            strays.append((rec, _nearest_index(m, z)))
    # zeros outside every unit disk D(t_n, 1), over the whole support
    outside_unit = 0
    for rec in inventory.zeros:
        z = mpmath.mpc(rec.location)
        if all(abs(z - to_mp(t)) >= 1 for t in m.support):
            outside_unit += rec.multiplicity
    mult_zeros = sum(1 for r in inventory.zeros if r.multiplicity > 1) + len(multi)
    disk_total = sum(v for v in counts.values() if v is not None)
    stray_total = sum(r.multiplicity for r, _ in strays)
    conserved = not unsure and disk_total + stray_total == inventory.total_count
    doubt = bool(unsure) or bool(inventory.unresolved_boxes)
    zc = [i for i in g.zero_coeff_indices() if i in set(grid.indices)]
    verdicts = {
        "ii": _tag(outside_unit, budget, doubt),
        "ii'": _tag(stray_total, budget, doubt),
        "iii": _tag(stray_total + len(multi), budget, doubt),
        "iv": _tag(mult_zeros, budget, doubt),
    }
    verdicts["i"] = verdicts["ii"]
    notes = ["window-relative verdicts", "condition (i) certified via its equivalence with (ii)"]
    if inventory.unresolved_boxes:
        notes.append(f"{len(inventory.unresolved_boxes)} unresolved boxes in the window")
    return LocalizationReport(
        tuple(grid.indices), counts, occupied, multi, empty, unsure, strays, zc,
        inventory.total_count, conserved, verdicts, budget, outside_unit, mult_zeros,
        grid.M, grid.c, inventory, notes)


# -- attraction sets ------------------------------------------------------------

def half_window(w: Rectangle) -> Rectangle:
    """The R-window of an (R, 2R) pair: real extent scaled by 1/2 about the origin."""
    return Rectangle(w.x0 / 2, w.x1 / 2, w.y0, w.y1)


@dataclass
class AttractionReport:
    T_f: set
    exception_count: int
    windows_stable: bool
    runs: dict                      # label -> occupied set
    budget: int
    primary: LocalizationReport
    precondition_ok: bool
    notes: list = field(default_factory=list)


def extract_attraction_set(g: CauchyFunction, window: Rectangle, M=1, c=DEFAULT_C,
                           budget=DEFAULT_BUDGET, min_box=None,
                           inventory: ZeroInventory | None = None) -> AttractionReport:
    """T_f from the occupied disks, checked across M vs M+2 and windows R vs 2R.

    ``window`` is the 2R window; the R window is :func:`half_window`. The
    exception count is the largest symmetric difference between the primary
    run (M, 2R) and the two checks, the (M, R) comparison restricted to the
    indices present in both.
    """
    if inventory is None:
        inventory = find_zeros(g.entire(), window, min_box)
    small = half_window(window)
    inv_small = inventory.restricted(small)
    m = g.measure
    r0 = localize(g, make_grid(m, c, M), window, budget, inventory)
    r1 = localize(g, make_grid(m, c, M + 2), window, budget, inventory)
    r2 = localize(g, make_grid(m, c, M), small, budget, inv_small)
    s0, s1, s2 = set(r0.occupied), set(r1.occupied), set(r2.occupied)
    common = set(r0.indices) & set(r2.indices)
    e_m = len(s0 ^ s1)
    e_w = len((s0 & common) ^ (s2 & common))
    exc = max(e_m, e_w)
    pre = "fails" not in r0.verdicts.values()
    notes = [f"M vs M+2 difference {e_m}", f"R vs 2R difference {e_w}"]
    if not pre:
        notes.append("localization verdict fails in the primary run; T_f is descriptive only")
    return AttractionReport(s0, exc, exc <= budget,
                            {f"M={M},2R": s0, f"M={M + 2},2R": s1, f"M={M},R": s2},
                            budget, r0, pre, notes)


@dataclass(frozen=True)
class OrderingResult:
    relation: str            # equal / subset / superset / incomparable
    only_first: int          # |S1 \ S2|
    only_second: int         # |S2 \ S1|
    symmetric_difference: int
    budget: int
    preconditions_ok: bool


def ordering_check(a1: AttractionReport, a2: AttractionReport, budget=None) -> OrderingResult:
    """Compare two attraction sets up to the exception budget.

    "subset" means the first set is contained in the second up to budget.
    An incomparable pair is a finding (it would contradict nesting beyond the
    budget), not an error.
    """
    budget = a1.budget if budget is None else budget
    s1, s2 = set(a1.T_f), set(a2.T_f)
    d12, d21 = len(s1 - s2), len(s2 - s1)
    if d12 <= budget and d21 <= budget:
        rel = "equal"
    elif d12 <= budget:
        rel = "subset"
    elif d21 <= budget:
        rel = "superset"
    else:
        rel = "incomparable"
    return OrderingResult(rel, d12, d21, d12 + d21, budget,
                          a1.windows_stable and a2.windows_stable)


# -- lower bound probe ------------------------------------------------------------

@dataclass(frozen=True)
class LowerBoundProbe:
    minimum: object
    argmin: object
    n_points: int
    grid: str


def probe_points(m: DiscreteMeasure, M, R, rings=None, per_ring=32):
    """Rings |z| = R 2^(k + 1/4) with ``per_ring`` angles (offset by half a step)
    plus midpoints of consecutive support gaps, filtered to |z| > R and
    dist(z, T) >= |z|^-M."""
    R = to_mp(parse_exact(R))
    t = m.support_mp()
    tmax = max((abs(x) for x in t), default=R)
    if rings is None:
        rings = max(4, int(mpmath.ceil(mpmath.log(4 * max(tmax, R) / R, 2))) + 1)
    pts = []
    for k in range(rings):
        rad = R * mpmath.mpf(2) ** (k + mpmath.mpf(1) / 4)
        for j in range(per_ring):
            pts.append(rad * mpmath.expjpi((2 * j + mpmath.mpf(1) / 2) / per_ring))
    for a, b in zip(t, t[1:]):
        pts.append(mpmath.mpc((a + b) / 2))
    Mx = to_mp(parse_exact(M))
    keep = []
    for z in pts:
        az = abs(z)
        if az <= R:
            continue
        if t and min(abs(z - x) for x in t) < az ** (-Mx):
            continue
        keep.append(z)
    return keep


def lower_bound_probe(g: CauchyFunction, M, L, R, rings=None, per_ring=32) -> LowerBoundProbe:
    """Sampled min of |z|^L |f(z)| over the probe set of :func:`probe_points`."""
    if g.is_zero():
        raise InvalidInput("lower-bound probe needs a nonzero function")
    pts = probe_points(g.measure, M, R, rings, per_ring)
    if not pts:
        raise InvalidInput("probe set is empty; enlarge R or the ring count")
    Lx = to_mp(parse_exact(L))
    best, arg = None, None
    for z in pts:
        try:
            v = abs(z) ** Lx * abs(eval_f(g, z))
        except PoleError:
            continue
        if best is None or v < best:
            best, arg = v, z
    return LowerBoundProbe(best, arg, len(pts),
                           f"{rings or 'auto'} rings x {per_ring} angles + gap midpoints")


# -- type-N partitions ---------------------------------------------------------------

@dataclass
class TypeNReport:
    hamburger: list          # per j: HamburgerDiagnostic of the quotient zeros
    rings: list              # per j: DensityReport on W_{j+1} \ W_j
    core: object             # DensityReport on W_1 (None if W_1 empty)
    conditions: dict
    verdict: str


def _quotient_weights(m, idx, zeros_idx):
    """|B(t_n)|^2 mu_n for the genus-0 product B over support points zeros_idx."""
    B = CanonicalProduct([m.support[i] for i in sorted(zeros_idx)], 0)
    out = []
    for i in idx:
        val = eval_product(B, to_mp(m.support[i])).value if len(B) else mpmath.mpf(1)
        out.append(abs(val) ** 2 * to_mp(m.weights[i]))
    return out


def typeN_partition_check(m: DiscreteMeasure, partition, M_list=(1, 2, 3), seed=0) -> TypeNReport:
    """Finite-window diagnostics for a nested partition W_1 c ... c W_N = T.

    B_j is the genus-0 product over T \\ W_j. The entire quotient B_j / B_{j+1}
    has zeros W_{j+1} \\ W_j and gets a Hamburger check; each ring carries the
    weights |B_{j+1}|^2 mu and should show a non-dense trend; W_1 carries
    |B_1|^2 mu and should show a dense trend.
    """
    W = [set(w) for w in partition]
    if not W:
        raise InvalidInput("partition is empty")
    allidx = set(range(len(m)))
    if W[-1] != allidx:
        raise InvalidInput("last partition set must be the whole support")
    for a, b in zip(W, W[1:]):
        if not a <= b:
            raise InvalidInput("partition sets are not nested")
    hams, rings = [], []
    for j in range(len(W) - 1):
        ring = sorted(W[j + 1] - W[j])
        if len(ring) == 0:
            raise InvalidInput(f"partition step {j + 1} adds no points")
        q = CanonicalProduct([m.support[i] for i in ring], 0)
        hams.append(hamburger_check(q, M_list))
        ws = _quotient_weights(m, ring, allidx - W[j + 1])
        sub = DiscreteMeasure([m.support[i] for i in ring], [mpf_to_fraction(w) for w in ws],
                              label=f"ring {j + 1}")
        rings.append(density_residuals(sub, 0, seed=seed))
    core = None
    if W[0]:
        idx = sorted(W[0])
        ws = _quotient_weights(m, idx, allidx - W[0])
        sub = DiscreteMeasure([m.support[i] for i in idx], [mpf_to_fraction(w) for w in ws],
                              label="core")
        core = density_residuals(sub, 0, seed=seed)

    def agg(tags, good, bad):
        if any(t == bad for t in tags):
            return "inconsistent"
        if all(t == good for t in tags):
            return "consistent"
        return "inconclusive"

    conds = {
        "hamburger quotients": agg([h.verdict for h in hams], "consistent", "inconsistent"),
        "rings not dense": agg([r.verdict for r in rings], "non-dense-trend", "dense-trend"),
        "core dense": "vacuous" if core is None else agg([core.verdict], "dense-trend",
                                                         "non-dense-trend"),
    }
    vals = [v for v in conds.values() if v != "vacuous"]
    if "inconsistent" in vals:
        verdict = "inconsistent"
    elif all(v == "consistent" for v in vals):
        verdict = "consistent"
    else:
        verdict = "inconclusive"
    return TypeNReport(hams, rings, core, conds, verdict)

