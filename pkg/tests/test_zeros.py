import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cauchyloc.cauchy import CauchyFunction, random_coeffs
from cauchyloc.errors import NumericalFailure, UnresolvedWinding
from cauchyloc.measure import DiscreteMeasure
from cauchyloc.zeros import Circle, Function, Rectangle, find_zeros, refine, winding_count


def unit(points):
    return DiscreteMeasure(points, [1] * len(points))


def poly(*roots):
    def f(z):
        return mpmath.fprod(z - r for r in roots)
    return Function(f, real=all(mpmath.im(r) == 0 for r in roots))


def test_identity_unit_circle():
    w = winding_count(Function(lambda z: z, lambda z: 1), Circle(0, 1))
    assert w.count == 1 and w.deviation <= 0.25


def test_two_mass_circle():
    F = CauchyFunction(unit([1, -1]), [1, 1]).entire()
    assert winding_count(F, Circle(0, mpmath.mpf(1) / 2)).count == 1


def test_double_zero():
    w = winding_count(poly(1, 1), Circle(1, mpmath.mpf("0.1")))
    assert w.count == 2


def test_rectangle_counts():
    F = poly(mpmath.mpc(0.5, 0.5), 2, mpmath.mpc(-3, 1))
    assert winding_count(F, Rectangle(-1, 3, -1, 1)).count == 2
    assert winding_count(F, Rectangle(-4, 3, -1, 2)).count == 3


def test_zero_on_contour_is_perturbed():
    w = winding_count(poly(1), Circle(0, 1))
    assert w.count in (0, 1) and w.contour.radius != 1


def test_zero_on_contour_without_perturbation_fails():
    with pytest.raises(UnresolvedWinding):
        winding_count(poly(1), Circle(0, 1), perturb=False)


def test_quadratic_oracle(oracles):
    ref = oracles["quadratic"]
    F = CauchyFunction(unit([1, 2, 3]), [1, 2, 3]).entire()
    inv = find_zeros(F, Rectangle(0, 4, -1, 1))
    zs = [r.location for r in inv.sorted_zeros()]
    assert inv.total_count == 2 and not inv.unresolved_boxes
    for z, want in zip(zs, ref["a123"]["roots"]):
        assert abs(z - mpmath.mpf(want)) < mpmath.mpf(10) ** -30
    assert all(r.winding_dev <= 0.25 for r in inv.zeros)


def test_unit_residue_quadratic(oracles):
    ref = oracles["quadratic"]
    F = CauchyFunction(unit([1, 2, 3]), [1, 1, 1]).entire()
    inv = find_zeros(F, Rectangle(0, 4, -1, 1))
    zs = [r.location for r in inv.sorted_zeros()]
    assert len(zs) == 2
    for z, want in zip(zs, ref["unit"]["roots"]):
        assert abs(z - mpmath.mpf(want)) < mpmath.mpf(10) ** -30
    assert abs(zs[0] - (2 - 1 / mpmath.sqrt(3))) < mpmath.mpf(10) ** -60


def test_constant_has_no_zeros():
    inv = find_zeros(Function(lambda z: mpmath.mpf(1), lambda z: 0, real=True),
                     Rectangle(-3, 3, -3, 3))
    assert inv.total_count == 0 and inv.zeros == []


def test_sine_zeros_on_integers():
    F = Function(lambda z: mpmath.sinpi(z), lambda z: mpmath.pi * mpmath.cospi(z), real=True)
    inv = find_zeros(F, Rectangle("-5.5", "5.5", -1, 1))
    assert inv.total_count == 11
    for r in inv.zeros:
        z = mpmath.mpc(r.location)
        assert abs(z - mpmath.nint(z.real)) < mpmath.mpf(10) ** -30


def test_finite_lattice_product_has_no_zero_at_origin():
    from cauchyloc.products import eval_product, lattice_product

    p = lattice_product(12)
    F = Function(lambda z: eval_product(p, z).value, real=True)
    inv = find_zeros(F, Rectangle("-5.5", "5.5", -1, 1))
    assert inv.total_count == 10
    assert all(abs(mpmath.mpc(r.location)) > mpmath.mpf("0.5") for r in inv.zeros)


def test_refine_newton():
    F = Function(lambda z: z * z - 2, lambda z: 2 * z, real=True)
    r = refine(F, mpmath.mpf("1.4"), Circle(mpmath.mpf("1.4"), mpmath.mpf("0.2")))
    assert r.refined and abs(r.location - mpmath.sqrt(2)) < mpmath.mpf(2) ** -240


def test_refine_three_mass():
    F = CauchyFunction(unit([1, 2, 3]), [1, 2, 3]).entire()
    r = refine(F, mpmath.mpf("1.23"), Rectangle("1.1", "1.4", "-0.1", "0.1"))
    assert abs(r.location - (11 - mpmath.sqrt(13)) / 6) < mpmath.mpf(10) ** -60


def test_refine_refuses_double_zero():
    r = refine(poly(1, 1), 1, Circle(1, mpmath.mpf("0.1")))
    assert not r.refined and r.multiplicity == 2


def test_refine_empty_contour():
    with pytest.raises(NumericalFailure):
        refine(poly(5), 0, Circle(0, 1))


def test_double_zero_multiplicity_record():
    inv = find_zeros(poly(mpmath.mpf("0.3"), mpmath.mpf("0.3"), 2), Rectangle(-1, 3, -1, 1),
                     min_box=mpmath.mpf(2) ** -30)
    mult = sorted(r.multiplicity for r in inv.zeros)
    assert mult == [1, 2] and inv.total_count == 3


def test_secular_oracle_sample(oracles):
    ref = oracles["secular"]
    for seed in range(5):
        g = CauchyFunction(unit(list(range(1, 11))), random_coeffs(10, seed, "positive"))
        inv = find_zeros(g.entire(), Rectangle(0, 11, -1, 1))
        zs = [mpmath.mpc(r.location).real for r in inv.sorted_zeros()]
        assert len(zs) == 9
        for z, want in zip(zs, ref[str(seed)]):
            assert abs(z - mpmath.mpf(want)) < mpmath.mpf(10) ** -30


def test_additivity_and_conjugate_closure():
    m = DiscreteMeasure([1, 2, 4, 8], [1, 1, 1, 1])
    g = CauchyFunction(m, [1, -2, 3, "1/2"])
    F = g.entire()
    w = Rectangle(-2, 10, -3, 3)
    full = winding_count(F, w).count
    left = winding_count(F, Rectangle(-2, "3.3", -3, 3)).count
    right = winding_count(F, Rectangle("3.3", 10, -3, 3)).count
    assert left + right == full == 3
    inv = find_zeros(F, w)
    zs = [mpmath.mpc(r.location) for r in inv.zeros]
    for z in zs:
        assert min(abs(mpmath.conj(z) - u) for u in zs) < mpmath.mpf(10) ** -40


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_rouche_stability(seed):
    # F + g with max|g| < min|F| / 2 on the contour keeps the count
    F = CauchyFunction(unit([1, 2, 3, 5]), random_coeffs(4, seed % 97)).entire()
    inv = find_zeros(F, Rectangle(0, 6, -2, 2))
    rng = np.random.default_rng(seed)
    for r in inv.zeros:
        c = Circle(mpmath.mpc(r.location), mpmath.mpf("0.05"))
        ts = [c.center + c.radius * mpmath.expjpi(2 * mpmath.mpf(k) / 256) for k in range(256)]
        m = min(abs(F(t)) for t in ts)
        a, b = rng.uniform(-1, 1, 2)
        eps = m / 2 * mpmath.mpf("0.99") / (1 + 6 ** 2)
        G = Function(lambda z, a=a, b=b: F(z) + eps * (mpmath.mpf(a) + mpmath.mpf(b) * z) / 2)
        assert winding_count(G, c).count == winding_count(F, c).count
