from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from cauchyloc._mp import mpf_to_fraction, parse_exact, to_mp
from cauchyloc.errors import InvalidInput
from cauchyloc.measure import (DiscreteMeasure, check_power_separation, check_weight_decay,
                               dumps_measure, make_example, measure_from_json, measure_to_json,
                               parse_index_range, validate)


def test_validate_two_masses():
    rep = validate(DiscreteMeasure([1, 2], [1, 1]))
    assert rep.valid
    assert mpmath.almosteq(rep.poisson_sum, mpmath.mpf("0.7"), 1e-70)


def test_validate_flags_order():
    rep = validate(DiscreteMeasure([2, 1], [1, 1]))
    assert not rep.valid
    assert any("increasing" in v for v in rep.violations)


def test_validate_flags_zero_and_weights():
    rep = validate(DiscreteMeasure([0, 1], [1, -1]))
    assert len(rep.violations) == 2


def test_validate_empty():
    with pytest.raises(InvalidInput):
        validate(DiscreteMeasure([], []))


def test_length_mismatch():
    with pytest.raises(InvalidInput):
        DiscreteMeasure([1, 2], [1])


def test_simex_poisson_sum(oracles):
    exact = Fraction(oracles["measures"]["simex10_poisson"])
    rep = validate(make_example("simex", n="1..10"))
    assert rep.valid
    assert abs(rep.poisson_sum - to_mp(exact)) < mpmath.mpf(2) ** -240


def test_separation_examples(oracles):
    unit = DiscreteMeasure(range(1, 11), [1] * 10)
    assert check_power_separation(unit, 1, 0).satisfied
    near = DiscreteMeasure([1, Fraction(1) + Fraction(1, 10 ** 9)], [1, 1])
    cert = check_power_separation(near, 1, 1)
    assert not cert.satisfied and cert.worst_index == 0
    m = make_example("hamburger_cx", n_squares=10, n_cubes=6)
    cert = check_power_separation(m, Fraction(1, 4), 0)
    assert cert.satisfied
    gaps = [b - a for a, b in zip(m.support, m.support[1:])]
    assert min(gaps) == Fraction(oracles["measures"]["squares_cubes_gap"]["min_gap"])


def test_separation_rejects_bad_constants():
    m = DiscreteMeasure([1, 2], [1, 1])
    with pytest.raises(InvalidInput):
        check_power_separation(m, 0, 0)
    with pytest.raises(InvalidInput):
        check_power_separation(m, 1, -1)


@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=20), min_size=2,
                max_size=12, unique=True),
       st.fractions(min_value=Fraction(1, 100), max_value=3, max_denominator=100),
       st.integers(0, 3))
def test_separation_monotone_in_C(pts, C, N):
    pts = sorted(p for p in pts if p != 0)
    if len(pts) < 2:
        return
    m = DiscreteMeasure(pts, [1] * len(pts))
    if check_power_separation(m, C, N).satisfied:
        assert check_power_separation(m, C / 2, N).satisfied


def test_weight_decay_examples(oracles):
    rep = check_weight_decay(make_example("simex", n="1..15"), 5)
    assert rep.bounded and rep.decreasing_tail
    ref = oracles["measures"]["simex15_decay_M5"]
    assert rep.argmax == ref["argmax"]
    assert mpmath.almosteq(rep.max_value, mpmath.mpf(int(ref["max"])), 1e-60)
    unit = check_weight_decay(DiscreteMeasure(range(1, 21), [1] * 20), 1)
    assert not unit.bounded
    assert abs(unit.slope - 1) < 1e-12
    assert check_weight_decay(DiscreteMeasure([3], [1]), 2).bounded


def test_make_example_simex():
    m = make_example("simex", n="1..3")
    assert m.support == (2, 4, 8)
    assert m.weights == (1, 2, Fraction(9, 8))


def test_make_example_lattice_even():
    m = make_example("lattice", n="-5..5", weight="exp_sqrt")
    assert 0 not in m.support and len(m) == 10
    w = dict(zip(m.support, m.weights))
    assert all(w[n] == w[-n] for n in range(1, 6))
    assert all(w[n] > w[n + 1] for n in range(1, 5))


def test_make_example_hamburger_cx(oracles):
    ref = oracles["measures"]["hamburger_cx_4_3"]
    m = make_example("hamburger_cx", n_squares=4, n_cubes=3)
    assert [str(t) for t in m.support] == ref["support"]
    assert [str(w) for w in m.weights] == ref["weights"]


def test_make_example_errors():
    with pytest.raises(InvalidInput):
        make_example("nonsense")
    with pytest.raises(InvalidInput):
        make_example("simex", n="5..2")
    with pytest.raises(InvalidInput):
        parse_index_range("3-4")


@pytest.mark.parametrize("kind,params", [
    ("simex", {"n": "1..20"}),
    ("lattice", {"n": "-30..30", "weight": "exp_square"}),
    ("lattice", {"n": "1..10", "weight": "power:5/2"}),
    ("hamburger_cx", {"n_squares": 6, "n_cubes": 3}),
    ("squares", {"n": "1..8"}),
])
def test_examples_validate_and_roundtrip(kind, params):
    m = make_example(kind, **params)
    assert validate(m).valid
    back = measure_from_json(measure_to_json(m))
    assert back == m
    assert dumps_measure(back) == dumps_measure(m)


def test_generator_json():
    m = measure_from_json({"generator": {"kind": "simex", "params": {"n_max": 4}}})
    assert len(m) == 4


def test_json_decimal_strings():
    m = measure_from_json({"support": ["0.5", "3/2"], "weights": ["1e-3", 2]})
    assert m.support == (Fraction(1, 2), Fraction(3, 2))
    assert m.weights[0] == Fraction(1, 1000)


def test_json_errors():
    with pytest.raises(InvalidInput):
        measure_from_json({"support": [1]})
    with pytest.raises(InvalidInput):
        measure_from_json({"support": ["x"], "weights": [1]})


@given(st.fractions(max_denominator=10 ** 6))
def test_parse_exact_roundtrip(x):
    assert parse_exact(str(x)) == x


@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_mpf_to_fraction_is_exact(x):
    assert mpf_to_fraction(mpmath.mpf(x)) == Fraction(x)
