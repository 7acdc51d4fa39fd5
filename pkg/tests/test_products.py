from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from cauchyloc._mp import to_mp
from cauchyloc.errors import InvalidInput
from cauchyloc.measure import make_example
from cauchyloc.products import (CanonicalProduct, concat, derivative_at_zero,
                                derivative_at_zero_exact, eval_except, eval_product,
                                eval_product_exact, hamburger_check, lattice_product,
                                make_lacunary, powers2_product, product_for_measure,
                                sine_closed_form, squares_product, sub_product, tail_bound)


def test_single_zero():
    assert eval_product(CanonicalProduct([1]), 2).value == -1


def test_origin_rejected():
    with pytest.raises(InvalidInput):
        CanonicalProduct([0, 1])


def test_repeated_real_zero_rejected():
    with pytest.raises(InvalidInput):
        CanonicalProduct([1, 1])


def test_derivative_two_zeros():
    p = CanonicalProduct([1, -1])
    assert derivative_at_zero(p, 0) == -2
    assert derivative_at_zero_exact(p, 0) == -2


def test_exact_derivative_three_zeros():
    # A = (1 - z)(1 - z/2)(1 - z/3) expanded: 1 - 11z/6 + z^2 - z^3/6
    p = CanonicalProduct([1, 2, 3])
    dA = lambda x: Fraction(-11, 6) + 2 * x - Fraction(1, 2) * x * x
    for k, t in enumerate([1, 2, 3]):
        assert derivative_at_zero_exact(p, k) == dA(Fraction(t))
    assert derivative_at_zero_exact(p, 1) == Fraction(1, 6)
    assert mpmath.almosteq(derivative_at_zero(p, 1), mpmath.mpf(1) / 6, 1e-70)


def test_squares_derivative_against_sine():
    p = squares_product(40)
    d = derivative_at_zero(p, 0)
    ref = mpmath.diff(lambda z: sine_closed_form("squares", z), 1)
    # A(1) = 0, so the truncated derivative is the full one over the tail factor at 1
    assert abs(d / ref - 1) <= tail_bound(p, 1)


def test_stored_zero_gives_exact_zero():
    assert eval_product(powers2_product(10), 2 ** 5).value == 0


def test_multiplicative_under_concat():
    p1, p2 = CanonicalProduct([1, 3, -7]), CanonicalProduct([Fraction(5, 2), 11])
    z = mpmath.mpc("0.3", "1.7")
    a, b, c = eval_product(p1, z), eval_product(p2, z), eval_product(concat(p1, p2), z)
    bound = c.error_bound + a.error_bound * abs(b.value) + b.error_bound * abs(a.value)
    assert abs(c.value - a.value * b.value) <= bound


def test_conjugate_symmetry():
    p = squares_product(30)
    z = mpmath.mpc("2.5", "-0.75")
    assert eval_product(p, mpmath.conj(z)).value == mpmath.conj(eval_product(p, z).value)


def test_exact_derivative_rejects_genus_one():
    with pytest.raises(InvalidInput):
        derivative_at_zero_exact(lattice_product(3), 0)


def test_squares_within_tail_bound():
    p = squares_product(50)
    z = mpmath.mpf(1) / 4
    v = eval_product(p, z)
    ref = sine_closed_form("squares", z)
    assert abs(v.value / ref - 1) <= v.tail_bound
    assert v.tail_bound < mpmath.mpf("0.011")


def test_lattice_matches_sine_with_bound():
    p = lattice_product(200)
    rng = np.random.default_rng(3)
    for x, y in rng.uniform(-4, 4, (20, 2)):
        z = mpmath.mpc(x, y / 4)
        v = eval_product(p, z)
        ref = sine_closed_form("lattice", z)
        assert abs(v.value / ref - 1) <= v.tail_bound + v.error_bound / abs(ref)


def test_tail_bound_region():
    assert tail_bound(squares_product(10), 100) is None
    assert tail_bound(CanonicalProduct([3, 7]), 1) is None


def test_sine_closed_form_shift():
    z = mpmath.mpf(2) / 7
    full = sine_closed_form("squares", z)
    shifted = sine_closed_form("squares", z, n_min=3)
    assert mpmath.almosteq(shifted * (1 - z) * (1 - z / 4), full, 1e-70)
    with pytest.raises(InvalidInput):
        sine_closed_form("cubes", z)


def test_eval_except_matches_quotient():
    p = CanonicalProduct([2, 5, -3])
    z = mpmath.mpf("0.7")
    assert mpmath.almosteq(eval_except(p, z, 1) * (1 - z / 5), eval_product(p, z).value, 1e-70)


@given(st.lists(st.integers(-40, 40).filter(bool), min_size=1, max_size=8, unique=True),
       st.fractions(min_value=-10, max_value=10, max_denominator=9))
def test_exact_evaluation_agrees(zs, x):
    p = CanonicalProduct(zs)
    assert abs(eval_product(p, x).value - eval_product_exact(p, x)) <= \
        eval_product(p, x).error_bound + mpmath.mpf(2) ** -240


@given(st.lists(st.integers(1, 60), min_size=2, max_size=8, unique=True), st.data())
def test_derivative_matches_central_difference(zs, data):
    with mp.workprec(512):
        p = CanonicalProduct(zs, genus=data.draw(st.sampled_from([0, 1])))
        k = data.draw(st.integers(0, len(zs) - 1))
        t = to_mp(p.zeros[k])
        h = abs(t) * mpmath.mpf(2) ** (-mp.prec // 3)
        cd = (eval_product(p, t + h).value - eval_product(p, t - h).value) / (2 * h)
        d = derivative_at_zero(p, k)
        assert abs(cd / d - 1) < mpmath.mpf(10) ** -20


def test_lacunary_checks():
    p = make_lacunary([3 ** k for k in range(1, 8)], 3)
    assert len(p) == 7
    zs = [(Fraction(10 ** k), Fraction(1)) for k in range(1, 6)]
    with pytest.raises(InvalidInput, match="index 0"):
        make_lacunary(zs, 10)
    assert len(make_lacunary(zs, Fraction(99, 10))) == 5
    with pytest.raises(InvalidInput):
        make_lacunary([2, 4], 1)


def test_complex_zeros_allowed():
    p = make_lacunary([(Fraction(4), Fraction(1)), (Fraction(40), Fraction(-1))], 5)
    assert not p.is_real
    v = eval_product(p, mpmath.mpc(4, 1)).value
    assert v == 0


def test_concat_and_sub_product():
    p = concat(CanonicalProduct([1, 2]), CanonicalProduct([5]))
    assert len(p) == 3
    assert sub_product(p, [2, 0]).zeros == (1, 5)
    with pytest.raises(InvalidInput):
        concat(CanonicalProduct([1]), lattice_product(2))


def test_product_for_measure_laws():
    assert product_for_measure(make_example("simex", n="1..6")).law == "simex"
    p = product_for_measure(make_example("lattice", n="-6..6"))
    assert p.genus == 1 and p.law == "lattice"
    assert product_for_measure(make_example("lattice", n="1..6")).law is None


def test_hamburger_check_examples():
    assert hamburger_check(powers2_product(12), [3]).verdict == "consistent"
    assert hamburger_check(lattice_product(200), [2]).verdict == "inconsistent"
    assert hamburger_check(CanonicalProduct([5]), [1]).verdict == "inconclusive"
    with pytest.raises(InvalidInput):
        hamburger_check(make_lacunary([(Fraction(2), Fraction(1))], 2), [1])


def test_hamburger_check_squares_not_hamburger():
    # |A'(n^2)| decays like n^-2 for the squares product
    assert hamburger_check(squares_product(400), [1]).verdict == "inconsistent"


def test_sine_closed_form_removable_points():
    for k in (1, 4, 9):
        v = sine_closed_form("squares", k * k, n_min=10)
        ref = mpmath.fprod(1 - mpmath.mpf(k * k) / (n * n) for n in range(10, 20000))
        assert abs(v / ref - 1) < mpmath.mpf(k * k) / 19999 * 2
