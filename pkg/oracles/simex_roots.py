"""Simex measure, n = 1..12, gaussian a-coefficients from seeds 0..19.

All 11 zeros of F from mpmath polyroots of the numerator polynomial at
2048 bits, then occupancy of the disks D(t_n, min(|t_n|^-M / 4, gap/3)) for
M = 1 and 3 inside the window [1, 2^13] x [-1, 1].
"""

import mpmath

from common import gaussian, numerator, radii, simex

SEEDS = range(20)
N_MAX = 12
PREC = 2048


def _mp(x):
    return mpmath.mpf(x.numerator) / x.denominator


def compute():
    out = {}
    with mpmath.workprec(PREC):
        support, weights = simex(N_MAX)
        ts = [_mp(t) for t in support]
        sq = [n * mpmath.mpf(2) ** (-mpmath.mpf(n * (n - 1)) / 4) for n in range(1, N_MAX + 1)]
        rad = {M: [_mp(r) for r in radii(support, M=M)] for M in (1, 3)}
        for seed in SEEDS:
            a = [_mp(c) for c in gaussian(N_MAX, seed)]
            r = [x * y for x, y in zip(a, sq)]
            coeffs = numerator(ts, r)
            roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=4000, extraprec=4 * PREC)
            inwin = [z for z in roots
                     if 1 <= mpmath.re(z) <= 2 ** 13 and -1 <= mpmath.im(z) <= 1]
            rec = {"roots": sorted([[mpmath.nstr(mpmath.re(z), 30), mpmath.nstr(mpmath.im(z), 30)]
                                    for z in roots], key=lambda p: float(p[0])),
                   "window_count": len(inwin)}
            for M in (1, 3):
                counts = [sum(1 for z in inwin if abs(z - t) < rr) for t, rr in zip(ts, rad[M])]
                strays = len(inwin) - sum(counts)
                rec[f"M{M}"] = {"counts": counts,
                                "occupied": [i for i, c in enumerate(counts) if c == 1],
                                "strays": strays}
            out[str(seed)] = rec
    return out


if __name__ == "__main__":
    res = compute()
    for s, rec in res.items():
        print(s, rec["window_count"], rec["M1"]["occupied"], rec["M1"]["strays"],
              rec["M3"]["occupied"], rec["M3"]["strays"])
