from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from cauchyloc._mp import mpf_to_fraction
from cauchyloc.cauchy import CauchyFunction, from_entire, kernel, random_coeffs
from cauchyloc.density import density_residuals
from cauchyloc.errors import InvalidInput
from cauchyloc.localization import (extract_attraction_set, half_window, localize,
                                    lower_bound_probe, make_grid, ordering_check,
                                    probe_points, typeN_partition_check)
from cauchyloc.measure import DiscreteMeasure, make_example
from cauchyloc.products import CanonicalProduct, eval_product_exact
from cauchyloc.zeros import Rectangle


def unit(points):
    return DiscreteMeasure(points, [1] * len(points))


SIMEX6 = make_example("simex", n="1..6")
WIN6 = Rectangle("0.5", 100, -1, 1)


def test_grid_radii_and_disjointness():
    g = make_grid(unit([1, 2, 3]))
    assert [mpmath.nstr(r, 10) for r in g.radii] == ["0.25", "0.125", "0.08333333333"]
    assert g.disjoint()
    with pytest.raises(InvalidInput):
        make_grid(unit([1, 2]), c=0)


@given(st.lists(st.fractions(-100, 100, max_denominator=8).filter(bool), min_size=2,
                max_size=15, unique=True),
       st.fractions(Fraction(1, 8), 4, max_denominator=8), st.integers(0, 3))
def test_grids_always_disjoint(pts, c, M):
    assert make_grid(unit(sorted(pts)), c, M).disjoint()


def test_kernel_occupies_all_but_its_point():
    rep = localize(kernel(SIMEX6, 0), make_grid(SIMEX6), WIN6)
    assert rep.occupied == {1, 2, 3, 4, 5} and rep.empty == {0}
    assert rep.stray_count == 0 and rep.conservation_ok
    assert rep.verdicts["ii'"] == "holds-in-window"


def test_kernel_attraction_set_any_window():
    for idx in (0, 3):
        for win in (WIN6, Rectangle("0.5", 40, -1, 1)):
            a = extract_attraction_set(kernel(SIMEX6, idx), win)
            inside = {i for i, t in enumerate(SIMEX6.support) if t + 1 < int(win.x1)}
            assert a.T_f == inside - {idx}
    assert extract_attraction_set(kernel(SIMEX6, 2), WIN6).windows_stable


def test_three_mass_disks(oracles):
    ref = oracles["quadratic"]["a123_disks"]
    rep = localize(CauchyFunction(unit([1, 2, 3]), [1, 2, 3]), make_grid(unit([1, 2, 3])),
                   Rectangle(0, 4, -1, 1))
    assert [rep.counts[i] for i in range(3)] == ref["counts"]
    assert len(rep.strays) == len(ref["strays"])
    for (rec, _), want in zip(rep.strays, ref["strays"]):
        assert abs(rec.location - mpmath.mpf(want)) < mpmath.mpf(10) ** -25
    assert rep.conservation_ok and rep.window_count == 2


def test_zero_coefficient_disk_is_occupied():
    m = make_example("simex", n="1..5")
    g = CauchyFunction(m, [1, 2, 0, 3, 1])
    rep = localize(g, make_grid(m), Rectangle("0.5", 50, -1, 1))
    assert 2 in rep.occupied and rep.zero_coeff_indices == [2]


def test_conservation_and_partition():
    g = CauchyFunction(SIMEX6, random_coeffs(6, 5))
    rep = localize(g, make_grid(SIMEX6), WIN6)
    idx = set(rep.indices)
    assert rep.occupied | rep.multi | rep.empty | rep.inconclusive == idx
    assert not (rep.occupied & rep.empty)
    assert rep.conservation_ok


@settings(max_examples=8)
@given(st.integers(0, 1000), st.fractions(-20, 20, max_denominator=7).filter(bool))
def test_scaling_leaves_report_unchanged(seed, lam):
    g = CauchyFunction(SIMEX6, random_coeffs(6, seed))
    a = localize(g, make_grid(SIMEX6), WIN6)
    b = localize(g.scaled(lam), make_grid(SIMEX6), WIN6)
    assert (a.occupied, a.empty, a.multi, a.stray_count, a.verdicts) == \
        (b.occupied, b.empty, b.multi, b.stray_count, b.verdicts)


def test_zero_function_rejected():
    with pytest.raises(InvalidInput):
        localize(CauchyFunction(SIMEX6, [0] * 6), make_grid(SIMEX6), WIN6)


def test_ordering_kernels_and_identity():
    a0 = extract_attraction_set(kernel(SIMEX6, 0), WIN6)
    a1 = extract_attraction_set(kernel(SIMEX6, 1), WIN6)
    r = ordering_check(a0, a1)
    assert r.symmetric_difference == 2 and r.relation != "incomparable"
    assert ordering_check(a0, a0).relation == "equal"


@settings(max_examples=20)
@given(st.sets(st.integers(0, 12)), st.sets(st.integers(0, 12)), st.integers(0, 3))
def test_ordering_antisymmetric(s1, s2, budget):
    class A:
        def __init__(self, s):
            self.T_f, self.budget, self.windows_stable = s, budget, True

    r12, r21 = ordering_check(A(s1), A(s2)), ordering_check(A(s2), A(s1))
    flip = {"equal": "equal", "subset": "superset", "superset": "subset",
            "incomparable": "incomparable"}
    assert r21.relation == flip[r12.relation]
    assert r12.symmetric_difference == len(s1 ^ s2)


def test_square_supported_function_attraction_set():
    m = make_example("hamburger_cx", n_squares=20, n_cubes=7)
    p = CanonicalProduct([n * n for n in range(10, 21)])
    g = from_entire(m, [eval_product_exact(p, t) for t in m.support])
    a = extract_attraction_set(g, Rectangle("0.5", 512, -1, 1))
    squares = {i for i, t in enumerate(m.support) if t.denominator == 1 and t >= 100}
    assert a.T_f == squares and a.primary.stray_count == 0


def test_lower_bound_single_mass():
    g = CauchyFunction(unit([1]), [1])
    pr = lower_bound_probe(g, 1, 1, 2)
    # |z f(z)| = |z / (z - 1)| >= |z| / (|z| + 1) > 2/3 on |z| > 2
    assert mpmath.mpf(2) / 3 < pr.minimum < 1
    with pytest.raises(InvalidInput):
        lower_bound_probe(CauchyFunction(unit([1]), [0]), 1, 1, 2)


def test_lower_bound_first_moment_mechanism():
    # residues with zero total mass: f(z) ~ (sum r t) / z^2, so |z| |f| decays
    m = make_example("lattice", n="-6..6")
    r = [0] * 12
    r[6], r[7] = 1, -1       # points 1 and 2
    g = CauchyFunction(m, r, "r")
    L1 = [lower_bound_probe(g, 2, 1, R, rings=4).minimum for R in (16, 64, 256)]
    L2 = [lower_bound_probe(g, 2, 2, R, rings=4).minimum for R in (16, 64, 256)]
    assert L1[0] > 2 * L1[1] > 4 * L1[2]
    assert min(L2) > mpmath.mpf("0.5")


def test_probe_points_respect_constraints():
    pts = probe_points(SIMEX6, 1, 3)
    assert pts and all(abs(z) > 3 for z in pts)
    assert all(min(abs(z - t) for t in SIMEX6.support_mp()) >= abs(z) ** -1 for z in pts)


def test_typeN_trivial_partition_is_plain_density():
    m = make_example("simex", n="1..12")
    rep = typeN_partition_check(m, [set(range(12))])
    assert rep.hamburger == [] and rep.core.verdict == density_residuals(m, 0).verdict


def test_typeN_empty_core():
    m = make_example("simex", n="1..12")
    rep = typeN_partition_check(m, [set(), set(range(12))])
    assert rep.conditions["core dense"] == "vacuous"
    assert rep.conditions["rings not dense"] == "consistent"


def test_typeN_constructed_example():
    # integer core 1..40 with exp(-sqrt n) weights, lacunary ring 2^k + 1/2 with simex weights
    core = [Fraction(n) for n in range(1, 41)]
    ring = [Fraction(2 ** k) + Fraction(1, 2) for k in range(1, 13)]
    w = [mpf_to_fraction(mpmath.exp(-mpmath.sqrt(n))) for n in range(1, 41)]
    wr = [Fraction(k * k, 2 ** (k * (k - 1) // 2)) for k in range(1, 13)]
    m = DiscreteMeasure(core + ring, w + wr)
    rep = typeN_partition_check(m, [set(range(40)), set(range(52))])
    assert rep.verdict == "consistent"


def test_typeN_rejects_bad_partitions():
    m = make_example("simex", n="1..6")
    with pytest.raises(InvalidInput):
        typeN_partition_check(m, [{0, 1}, {1, 2, 3, 4, 5}])
    with pytest.raises(InvalidInput):
        typeN_partition_check(m, [{0}, {0, 1}])
    with pytest.raises(InvalidInput):
        typeN_partition_check(m, [])


def test_half_window():
    w = half_window(Rectangle(-8, 8, -1, 1))
    assert (w.x0, w.x1, w.y0, w.y1) == (-4, 4, -1, 1)
