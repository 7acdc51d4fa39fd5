"""Exact reference values for the measure examples (Fractions and sympy)."""

from fractions import Fraction

import sympy as sp

from common import simex


def compute():
    out = {}
    t, w = simex(10)
    out["simex10_poisson"] = str(sum(m / (1 + x * x) for x, m in zip(t, w)))

    # squares/cubes example, squares <= 4 and cubes <= 3: weights |A'|^-2 by differentiation
    z = sp.symbols("z")
    pts = sorted({sp.Integer(n * n) for n in range(1, 5)}
                 | {sp.Integer(n ** 3) + sp.Rational(1, 2) for n in range(1, 4)})
    A = sp.prod([1 - z / p for p in pts])
    dA = sp.diff(A, z)
    out["hamburger_cx_4_3"] = {"support": [str(p) for p in pts],
                               "weights": [str(sp.nsimplify(1 / dA.subs(z, p) ** 2)) for p in pts]}

    # gap scan for squares <= 10 and cubes + 1/2 <= 6
    pts = sorted({Fraction(n * n) for n in range(1, 11)}
                 | {Fraction(n ** 3) + Fraction(1, 2) for n in range(1, 7)})
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    out["squares_cubes_gap"] = {"min_gap": str(min(gaps)), "argmin": gaps.index(min(gaps))}

    # mu_n |t_n|^5 for the simex measure, n <= 15
    vals = [Fraction(n * n, 2 ** (n * (n - 1) // 2)) * Fraction(2) ** (5 * n) for n in range(1, 16)]
    out["simex15_decay_M5"] = {"max": str(max(vals)), "argmax": vals.index(max(vals))}
    return out


if __name__ == "__main__":
    import json

    print(json.dumps(compute(), indent=1))
