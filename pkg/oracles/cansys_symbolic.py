"""Symbolic transfer products for indivisible-interval Hamiltonians (sympy).

Checks (H J^-1)^2 = 0 for a symbolic angle, expands the one- and two-interval
products, and computes stage zeros and weights -B/A' for the geometric chain
and for seeded random Hamiltonians (rebuilt from the same numpy recipe).
"""

from fractions import Fraction

import numpy as np
import sympy as sp

DIGITS = 40
z, l, phi = sp.symbols("z l phi")
J = sp.Matrix([[0, -1], [1, 0]])


def generator(angle):
    e = sp.Matrix([sp.cos(angle), sp.sin(angle)])
    return sp.simplify(e * e.T * J.inv())


def product(intervals):
    Y = sp.eye(2)
    for length, angle in intervals:
        Y = (Y * (sp.eye(2) + z * length * generator(sp.pi * angle))).expand()
    return Y


def random_intervals(n, seed):
    rng = np.random.default_rng(seed)
    ivs = []
    for _ in range(n):
        length = Fraction(int(rng.integers(1, 64)), 32)
        angle = Fraction(int(rng.integers(0, 97)), 97)
        while ivs and angle == ivs[-1][1]:
            angle = Fraction(int(rng.integers(0, 97)), 97)
        ivs.append((length, angle))
    return [(sp.Rational(a.numerator, a.denominator), sp.Rational(b.numerator, b.denominator))
            for a, b in ivs]


def real_zeros(poly_expr):
    p = sp.Poly(poly_expr, z)
    if p.degree() <= 0:
        return []
    roots = p.nroots(n=DIGITS, maxsteps=300)
    assert all(abs(sp.im(r)) < sp.Float(10) ** -(DIGITS - 8) for r in roots)
    return sorted(sp.re(r) for r in roots)


def chain_interlace(x, y):
    for sgn in (1, -1):
        xs = sorted(abs(v) for v in x if sgn * v > 0)
        ys = sorted(abs(v) for v in y if sgn * v > 0)
        if len(ys) not in (len(xs), len(xs) + 1):
            return False
        for j, v in enumerate(xs):
            if ys[j] > v or (j + 1 < len(ys) and v > ys[j + 1]):
                return False
    return True


def compute():
    N = generator(phi)
    out = {"nilpotent": sp.simplify(N * N) == sp.zeros(2, 2),
           "generator": str(N)}
    Y1 = product([(l, 0)])
    out["one_interval"] = [[str(Y1[i, j]) for j in range(2)] for i in range(2)]
    Y2 = product([(1, 0), (1, sp.Rational(1, 2))])
    out["two_interval"] = [[str(Y2[i, j]) for j in range(2)] for i in range(2)]

    geo = [(sp.Rational(1, 2 ** (k + 1)), sp.Rational(k % 2, 2)) for k in range(8)]
    Y = product(geo)
    A, B = sp.expand(Y[0, 0]), sp.expand(Y[0, 1])
    xs = real_zeros(A)
    dA = sp.diff(A, z)
    out["geometric8"] = {
        "A": [str(c) for c in reversed(sp.Poly(A, z).all_coeffs())],
        "B": [str(c) for c in reversed(sp.Poly(B, z).all_coeffs())],
        "support": [str(x) for x in xs],
        "weights": [str(sp.N(-B.subs(z, x) / dA.subs(z, x), DIGITS)) for x in xs],
    }

    rnd = {}
    for seed in range(10):
        ivs = random_intervals(8, seed)
        # numeric angles at high precision keep the expansion fast
        num = [(a, sp.Float(sp.N(b, 60), 60)) for a, b in ivs]
        Yk = sp.eye(2)
        zeros = [[]]
        for length, angle in num:
            Yk = (Yk * (sp.eye(2) + z * length * generator(sp.pi * angle))).expand()
            zeros.append(real_zeros(Yk[0, 0]))
        rnd[str(seed)] = {
            "degrees": [len(zs) for zs in zeros],
            "interlace": all(chain_interlace(zeros[k], zeros[k + 1]) for k in range(8)),
            "stage4_zeros": [str(sp.N(x, 30)) for x in zeros[4]],
        }
    out["random"] = rnd
    return out


if __name__ == "__main__":
    import json

    print(json.dumps(compute(), indent=1)[:3000])
