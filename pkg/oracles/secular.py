"""Ten unit masses at 1..10, positive a-coefficients from seeds 0..99.

Zeros of the numerator sum_j r_j prod_{i != j}(z - i) by sympy nroots.
"""

import sympy as sp

from common import numerator, positive

SEEDS = range(100)
DIGITS = 40


def compute():
    z = sp.symbols("z")
    support = list(range(1, 11))
    out = {}
    for seed in SEEDS:
        r = [sp.Rational(c.numerator, c.denominator) for c in positive(10, seed)]
        coeffs = numerator([sp.Integer(t) for t in support], r)
        poly = sp.Poly(list(reversed(coeffs)), z)
        roots = poly.nroots(n=DIGITS, maxsteps=200)
        assert all(abs(sp.im(x)) < sp.Float(10) ** -(DIGITS - 5) for x in roots)
        out[str(seed)] = [str(sp.re(x)) for x in sorted(roots, key=lambda x: sp.re(x))]
    return out


if __name__ == "__main__":
    import json

    res = compute()
    print(json.dumps({k: res[k] for k in list(res)[:2]}, indent=1))
