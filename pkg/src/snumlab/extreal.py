"""Exact arithmetic for integrability exponents on [1, inf].

Exponents are kept as `fractions.Fraction` whenever the input is rational
(int, Fraction, float, or a string like "4/3"); the single non-rational
value is +infinity, represented by `math.inf`.  All regime decisions in
this package are strict inequalities, so comparisons must never go through
rounded floats; mixed Fraction/inf comparisons in Python are exact.

Conventions: 1/inf = 0, x**0 = 1, and the conjugate exponent satisfies
1/p + 1/p' = 1 with 1' = inf and inf' = 1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

INF = math.inf

Ext = Union[Fraction, float]  # Fraction, or math.inf

_INF_STRINGS = {"inf", "+inf", "infinity", "oo"}


def as_ext(x) -> Ext:
    """Coerce x to an exact exponent: a Fraction, or math.inf.

    Floats are converted exactly (no rounding), so 0.75 becomes 3/4 while
    0.1 becomes the exact binary value of the float literal.  Strings accept
    "a/b", decimal literals, and the infinity spellings above.
    """
    if isinstance(x, str):
        s = x.strip().lower()
        if s in _INF_STRINGS:
            return INF
        return Fraction(s)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an exponent")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if math.isinf(x):
            if x < 0:
                raise ValueError("negative infinity is not a valid exponent")
            return INF
        if math.isnan(x):
            raise ValueError("NaN is not a valid exponent")
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exponent")


def is_inf(x: Ext) -> bool:
    return x == INF


def inv(p: Ext) -> Fraction:
    """1/p with the convention 1/inf = 0.  Exact."""
    if is_inf(p):
        return Fraction(0)
    if p == 0:
        raise ZeroDivisionError("1/0 undefined for exponents")
    return Fraction(1) / p


def conjugate(p: Ext) -> Ext:
    """Conjugate exponent p' with 1/p + 1/p' = 1; requires p >= 1."""
    if is_inf(p):
        return Fraction(1)
    if p < 1:
        raise ValueError(f"conjugate exponent needs p >= 1, got {p}")
    if p == 1:
        return INF
    return p / (p - 1)


def ext_min(a: Ext, b: Ext) -> Ext:
    return a if a <= b else b


def as_float(x: Ext) -> float:
    return float(x)


def fmt(x: Ext) -> str:
    """Serialize an exponent losslessly ("4/3", "2", "inf")."""
    if is_inf(x):
        return "inf"
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)
