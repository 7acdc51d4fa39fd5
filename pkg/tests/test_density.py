from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from cauchyloc.density import (borichev_sodin_test, default_probes, density_residuals,
                               hamburger_series, log_weight_criterion, moment_table)
from cauchyloc.errors import InvalidInput
from cauchyloc.measure import DiscreteMeasure, make_example
from cauchyloc.products import CanonicalProduct

ORACLE_CASES = {
    "lattice_sym_25_exp_sqrt": lambda: make_example("lattice", n="-25..25"),
    "lattice_sym_50_exp_sqrt": lambda: make_example("lattice", n="-50..50"),
    "lattice_one_50_exp_sqrt": lambda: make_example("lattice", n="1..50"),
    "lattice_sym_25_exp_square": lambda: make_example("lattice", n="-25..25",
                                                      weight="exp_square"),
    "simex_12_e1": lambda: make_example("simex", n="1..12"),
}


def test_two_masses_span_everything():
    m = DiscreteMeasure([1, 2], [1, 3])
    rep = density_residuals(m, 1)
    assert all(tab[1] == 0 for tab in rep.residuals.values())
    assert all(tab[0] > 0 for tab in rep.residuals.values())


@pytest.mark.parametrize("name", sorted(ORACLE_CASES))
def test_residuals_match_projection_oracle(oracles, name):
    ref = oracles["density_projection"][name]
    m = ORACLE_CASES[name]()
    probe = default_probes(m)[f"e{ref['probe']}"]
    Kmax = max(int(k) for k in ref["residuals"])
    rep = density_residuals(m, Kmax, probes={"p": probe})
    for K, want in ref["residuals"].items():
        assert abs(rep.residuals["p"][int(K)] - mpmath.mpf(want)) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("name,verdict", [
    ("lattice_sym_25_exp_sqrt", "non-dense-trend"),
    ("lattice_sym_50_exp_sqrt", "non-dense-trend"),
    ("lattice_one_50_exp_sqrt", "dense-trend"),
    ("lattice_sym_25_exp_square", "dense-trend"),
    ("simex_12_e1", "non-dense-trend"),
])
def test_frozen_trend_verdicts(name, verdict):
    assert density_residuals(ORACLE_CASES[name](), 0).verdict == verdict


@settings(max_examples=15)
@given(st.lists(st.fractions(-20, 20, max_denominator=4), min_size=3, max_size=10,
                unique=True),
       st.lists(st.fractions(Fraction(1, 100), 5, max_denominator=100), min_size=10,
                max_size=10))
def test_residuals_monotone_in_K(pts, ws):
    m = DiscreteMeasure(pts, ws[:len(pts)])
    rep = density_residuals(m, len(pts) + 1)
    for tab in rep.residuals.values():
        assert all(b <= a for a, b in zip(tab, tab[1:]))
        assert tab[len(pts) - 1] == 0 and tab[-1] == 0


def test_constant_weight_factor_invariance():
    m = make_example("simex", n="1..8")
    scaled = DiscreteMeasure(m.support, [w * Fraction(7, 3) for w in m.weights])
    a, b = density_residuals(m, 6), density_residuals(scaled, 6)
    tol = mpmath.ldexp(1, -(mpmath.mp.prec - 20))
    for name in a.residuals:
        for x, y in zip(a.residuals[name], b.residuals[name]):
            assert abs(x - y) <= tol


def test_moment_table():
    m = DiscreteMeasure([1, 2, 3], [1, 2, 1])
    assert moment_table(m, [1, -1, 1], 2) == [0, 0, 2]


def test_invalid_inputs():
    with pytest.raises(InvalidInput):
        density_residuals(DiscreteMeasure([], []), 1)
    with pytest.raises(InvalidInput):
        density_residuals(DiscreteMeasure([1], [1]), -1)
    with pytest.raises(InvalidInput):
        density_residuals(DiscreteMeasure([1, 2], [1, 1]), 1, probes={"x": [1]})


def test_log_weight_criterion():
    assert log_weight_criterion(make_example("lattice", n="-200..200")).trend == "convergent"
    sq = log_weight_criterion(make_example("lattice", n="-200..200", weight="exp_square"))
    assert sq.trend == "divergent"
    ones = log_weight_criterion(DiscreteMeasure(range(1, 20), [1] * 19))
    assert all(s == 0 for s in ones.partial_sums)
    with pytest.raises(InvalidInput):
        log_weight_criterion(DiscreteMeasure([Fraction(1, 2)], [1]))


def canonical_squares(n):
    m = make_example("squares", n=f"1..{n}")
    return m, CanonicalProduct(m.support)


def test_hamburger_series_canonical():
    m, p = canonical_squares(200)
    rep = hamburger_series(m, p)
    assert rep.exact
    assert list(rep.first.partial_sums) == list(range(1, 201))
    assert rep.second.trend == "convergent" and rep.condition == "holds-trend"


def test_hamburger_series_violated():
    m, p = canonical_squares(120)
    heavier = DiscreteMeasure(m.support, [w * t * t for w, t in zip(m.weights, m.support)])
    rep = hamburger_series(heavier, p)
    assert rep.first.trend == "convergent" and rep.condition == "violated-trend"


def test_hamburger_series_product_mismatch():
    m, _ = canonical_squares(5)
    with pytest.raises(InvalidInput):
        hamburger_series(m, CanonicalProduct([1, 4, 9]))


def test_bs_full_mask_reduces_to_hamburger_series():
    m, p = canonical_squares(60)
    bs = borichev_sodin_test(m, range(60))
    assert bs.series.partial_sums == hamburger_series(m, p).first.partial_sums
    assert bs.series.trend == "divergent"


def test_bs_single_point_degenerate():
    m, _ = canonical_squares(10)
    bs = borichev_sodin_test(m, [3])
    assert bs.hamburger.verdict == "inconclusive" and bs.evidence == "inconclusive"


def test_bs_counterexample_squares_mask():
    m = make_example("hamburger_cx", n_squares=30, n_cubes=10)
    mask = [i for i, t in enumerate(m.support) if t.denominator == 1 and t >= 100]
    bs = borichev_sodin_test(m, mask)
    assert bs.series.trend == "divergent"
    assert bs.series.partial_sums[-1] > 10 ** 40


def test_bs_mask_errors():
    m, _ = canonical_squares(5)
    for bad in ([], [1, 1], [7]):
        with pytest.raises(InvalidInput):
            borichev_sodin_test(m, bad)
