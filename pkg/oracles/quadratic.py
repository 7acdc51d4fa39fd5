"""Three masses at 1, 2, 3 with unit weights: zeros of F and their disk membership."""

from fractions import Fraction

import sympy as sp

from common import radii

DIGITS = 60


def compute():
    z = sp.symbols("z")
    out = {}
    for name, r in (("a123", (1, 2, 3)), ("unit", (1, 1, 1))):
        num = sp.expand(sum(rj * sp.prod([z - ti for ti in (1, 2, 3) if ti != tj])
                            for tj, rj in zip((1, 2, 3), r)))
        roots = sorted(sp.solve(num, z), key=lambda e: float(e))
        out[name] = {"polynomial": str(num), "roots": [str(sp.N(e, DIGITS)) for e in roots],
                     "roots_exact": [str(e) for e in roots]}
    # disk membership at M = 1, c = 1/4 for the a = (1,2,3) roots
    rs = radii([Fraction(1), Fraction(2), Fraction(3)])
    roots = [sp.Rational(11, 6) - sp.sqrt(13) / 6, sp.Rational(11, 6) + sp.sqrt(13) / 6]
    counts = [0, 0, 0]
    strays = []
    for x in roots:
        hit = [k for k, (t, r) in enumerate(zip((1, 2, 3), rs))
               if sp.Abs(x - t) < sp.Rational(r.numerator, r.denominator)]
        for k in hit:
            counts[k] += 1
        if not hit:
            strays.append(str(sp.N(x, 30)))
    out["a123_disks"] = {"counts": counts, "strays": strays,
                         "radii": [str(r) for r in rs]}
    return out


if __name__ == "__main__":
    import json

    print(json.dumps(compute(), indent=1))
