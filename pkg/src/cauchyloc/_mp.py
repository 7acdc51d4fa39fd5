"""Conversions between exact rationals, mpmath numbers and report strings.

Everything numeric runs at the current ``mpmath.mp.prec``; callers choose
the session precision with ``mp.workprec``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath import mp
from mpmath.libmp import from_rational, round_nearest

ExactReal = Fraction


def parse_exact(value) -> Fraction:
    """Parse an int, float, Fraction or numeric string into an exact Fraction.

    Strings may be integers, decimals, scientific notation or ``p/q``.
    Floats are taken at their exact binary value.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip().replace(" ", ""))
    if isinstance(value, mpmath.mpf):
        return mpf_to_fraction(value)
    raise TypeError(f"cannot read {value!r} as a real number")


def parse_scalar(value):
    """Like parse_exact but also accepts complex input.

    Complex numbers are given as ``[re, im]``, ``{"re": .., "im": ..}``,
    Python complex or mpc; they come back as a ``(Fraction, Fraction)`` pair.
    """
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = parse_exact(value[0]), parse_exact(value[1])
        return re if im == 0 else (re, im)
    if isinstance(value, dict):
        re, im = parse_exact(value.get("re", 0)), parse_exact(value.get("im", 0))
        return re if im == 0 else (re, im)
    if isinstance(value, complex):
        return parse_scalar((value.real, value.imag))
    if isinstance(value, mpmath.mpc):
        return parse_scalar((value.real, value.imag))
    return parse_exact(value)


def mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0 and exp != 0:
        raise ValueError(f"cannot convert {x} to a fraction")
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man * (1 << exp))
    return Fraction(man, 1 << -exp)


def to_mp(x):
    """Round an exact or mixed value to the working precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(from_rational(x.numerator, x.denominator, mp.prec, round_nearest))
    if isinstance(x, tuple):
        return mpmath.mpc(to_mp(x[0]), to_mp(x[1]))
    if isinstance(x, int):
        return mpmath.mpf(x)
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return +x
    if isinstance(x, complex):
        return mpmath.mpc(x)
    if isinstance(x, (float, str)):
        return to_mp(parse_exact(x))
    raise TypeError(f"cannot convert {x!r}")


def is_zero(x) -> bool:
    if isinstance(x, tuple):
        return x[0] == 0 and x[1] == 0
    return x == 0


def exact_to_json(x):
    """Exact scalar -> JSON value; integers stay integers, rationals become 'p/q'."""
    if isinstance(x, tuple):
        return [exact_to_json(x[0]), exact_to_json(x[1])]
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def digits_for(prec: int) -> int:
    return max(5, int(prec * math.log10(2)))


def fmt(x, prec: int | None = None, digits: int | None = None) -> str:
    """Deterministic decimal rendering of an mp number at a given precision."""
    if prec is None:
        prec = mp.prec
    if digits is None:
        digits = digits_for(prec)
    if isinstance(x, Fraction):
        x = to_mp(x)
    return mpmath.nstr(x, digits, min_fixed=-6, max_fixed=digits + 1)


def fmt_pair(z, prec: int | None = None, digits: int | None = None):
    z = mpmath.mpc(z)
    return fmt(z.real, prec, digits), fmt(z.imag, prec, digits)
