"""Distance from a coordinate probe to span{(t_n^k mu_n^(1/2))_n : k <= K}.

Least squares by Householder QR (mpmath.qr_solve) at 1536 bits. The probe
e_j is the coordinate vector at the j-th support point ordered by (|t|, t).
"""

import mpmath

from common import simex

PREC = 1536


def _lattice(lo, hi, law):
    ns = [n for n in range(lo, hi + 1) if n != 0]
    if law == "exp_sqrt":
        w = [mpmath.exp(-mpmath.sqrt(abs(n))) for n in ns]
    else:
        w = [mpmath.exp(-mpmath.mpf(n) ** 2) for n in ns]
    return [mpmath.mpf(n) for n in ns], w


def residual(ts, ws, probe, K):
    n = len(ts)
    V = mpmath.matrix(n, K + 1)
    for i, (t, w) in enumerate(zip(ts, ws)):
        s = mpmath.sqrt(w)
        for k in range(K + 1):
            V[i, k] = t ** k * s
    e = mpmath.matrix(n, 1)
    order = sorted(range(n), key=lambda i: (abs(ts[i]), ts[i]))
    e[order[probe], 0] = 1
    if K + 1 >= n:
        return mpmath.mpf(0)
    _, res = mpmath.qr_solve(V, e)
    return res


CASES = {
    "lattice_sym_25_exp_sqrt": (lambda: _lattice(-25, 25, "exp_sqrt"), 0, (2, 4, 6, 8, 12)),
    "lattice_sym_50_exp_sqrt": (lambda: _lattice(-50, 50, "exp_sqrt"), 0, (4, 8, 16, 24)),
    "lattice_one_50_exp_sqrt": (lambda: _lattice(1, 50, "exp_sqrt"), 0, (4, 8, 12, 24)),
    "lattice_sym_25_exp_square": (lambda: _lattice(-25, 25, "exp_square"), 0, (2, 4, 8, 12)),
    "simex_12_e1": (None, 1, tuple(range(12))),
}


def compute():
    out = {}
    with mpmath.workprec(PREC):
        for name, (build, probe, Ks) in CASES.items():
            if build is None:
                s, w = simex(12)
                ts = [mpmath.mpf(x.numerator) / x.denominator for x in s]
                ws = [mpmath.mpf(x.numerator) / x.denominator for x in w]
            else:
                ts, ws = build()
            out[name] = {"probe": probe,
                         "residuals": {str(K): mpmath.nstr(residual(ts, ws, probe, K), 40)
                                       for K in Ks}}
    return out


if __name__ == "__main__":
    for name, rec in compute().items():
        print(name, {k: v[:12] for k, v in rec["residuals"].items()})
