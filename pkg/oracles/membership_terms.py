"""Membership terms |A_1(t)|^2 for the squares/cubes counterexample measure.

A_1(z) = prod_{n >= 10} (1 - z/n^2) = [sin(pi sqrt z)/(pi sqrt z)] / prod_{n < 10} (1 - z/n^2),
with the removable values A_1(k^2) = (-1)^(k+1) / (2 prod_{n<10, n != k} (1 - k^2/n^2))
for k < 10. With mu = |A'|^-2 the membership term |F(t)|^2 / (|A'(t)|^2 mu) is |A_1(t)|^2.
The tail bound uses |sin| <= 1 on the cube points.
"""

from fractions import Fraction

import mpmath

PREC = 256
N_SQUARES, N_CUBES = 100, 21


def support():
    pts = {Fraction(n * n) for n in range(1, N_SQUARES + 1)}
    pts |= {Fraction(n ** 3) + Fraction(1, 2) for n in range(1, N_CUBES + 1)}
    return sorted(pts)


def head(t):
    return mpmath.fprod(1 - t / mpmath.mpf(n * n) for n in range(1, 10))


def A1(t):
    x = mpmath.mpf(t.numerator) / t.denominator
    k = mpmath.sqrt(x)
    if t.denominator == 1 and mpmath.isint(k):
        k = int(k)
        if k >= 10:
            return mpmath.mpf(0)
        rest = mpmath.fprod(1 - mpmath.mpf(k * k) / (n * n) for n in range(1, 10) if n != k)
        return (-1) ** (k + 1) / (2 * rest)
    return mpmath.sin(mpmath.pi * k) / (mpmath.pi * k) / head(x)


def bound(t):
    x = mpmath.mpf(t.numerator) / t.denominator
    return 1 / (mpmath.pi * mpmath.sqrt(x) * abs(head(x)))


def compute():
    with mpmath.workprec(PREC):
        ts = support()
        terms = [A1(t) ** 2 for t in ts]
        s, sums = mpmath.mpf(0), []
        for v in terms:
            s += v
            sums.append(s)
        n = len(ts)
        diffs = {str(N): mpmath.nstr(sums[2 * N - 1] - sums[N - 1], 20)
                 for N in range(50, n // 2 + 1)}
        tail_bound = {str(N): mpmath.nstr(mpmath.fsum(bound(t) ** 2 for t in ts[N:2 * N]
                                                      if not (t.denominator == 1)), 20)
                      for N in range(50, n // 2 + 1)}
        return {"n_points": n, "n_squares": N_SQUARES, "n_cubes": N_CUBES,
                "first_terms": [mpmath.nstr(v, 30) for v in terms[:12]],
                "S_total": mpmath.nstr(sums[-1], 40),
                "S2N_minus_SN": diffs, "cube_term_bound": tail_bound}


if __name__ == "__main__":
    import json

    print(json.dumps(compute(), indent=1))
