"""Naive point counts on the elliptic families over the Gamma_1(3) and Gamma_1(4) lines.

A curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p (p odd) has
1 + sum_x (1 + phi(4x^3 + b2 x^2 + 2 b4 x + b6)) points, after completing
the square in y.  This is independent of every character-sum routine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ..errors import SingularCurve, UnknownGroup
from ..hgdata import HGDatum, build_datum

Coeffs = tuple[Fraction, Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class CurveFamily:
    """Weierstrass coefficients (a1, a2, a3, a4, a6) as functions of one parameter."""

    name: str
    coeffs: Callable[[Fraction], Coeffs]
    datum: HGDatum | None
    excluded: tuple[Fraction, ...]
    j_map: Callable[[Fraction], Fraction] | None = None
    text: str = ""


def _g14(t: Fraction) -> Coeffs:
    return (Fraction(1), t / 16, t / 16, Fraction(0), Fraction(0))


def _g13(t: Fraction) -> Coeffs:
    return (Fraction(1), Fraction(0), t / 27, Fraction(0), Fraction(0))


def _universal(j: Fraction) -> Coeffs:
    d = j - 1728
    return (Fraction(1), Fraction(0), Fraction(0), -36 / d, -1 / d)


FAMILIES: dict[str, CurveFamily] = {
    "gamma1_4": CurveFamily(
        "gamma1_4",
        _g14,
        build_datum(["1/2", "1/2"], [1, 1]),
        (Fraction(0), Fraction(1)),
        lambda t: 16 * (t * t - 16 * t + 16) ** 3 / (t**4 * (1 - t)),
        "y^2 + xy + (t/16) y = x^3 + (t/16) x^2",
    ),
    "gamma1_3": CurveFamily(
        "gamma1_3",
        _g13,
        build_datum(["1/3", "2/3"], [1, 1]),
        (Fraction(0), Fraction(1)),
        lambda t: 27 * (8 * t - 9) ** 3 / (t**3 * (t - 1)),
        "y^2 + xy + (t/27) y = x^3",
    ),
    "universal": CurveFamily(
        "universal",
        _universal,
        None,
        (Fraction(0), Fraction(1728)),
        None,
        "y^2 + xy = x^3 - (36x + 1)/(j - 1728)",
    ),
}


def family(name: str) -> CurveFamily:
    key = name.strip().lower().replace("(", "").replace(")", "")
    key = {"gamma13": "gamma1_3", "gamma14": "gamma1_4", "j": "universal"}.get(key, key)
    if key not in FAMILIES:
        raise UnknownGroup(f"unknown curve family {name!r}")
    return FAMILIES[key]


def _reduce(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise SingularCurve(f"{x} has no reduction modulo {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def discriminant_mod(a: tuple[int, ...], p: int) -> int:
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return (-b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % p


def count_points(a: tuple[int, ...], p: int) -> int:
    """#E(F_p) for integer Weierstrass coefficients already reduced mod an odd prime p."""
    if p == 2:
        raise SingularCurve("the square-completion count needs an odd prime")
    if discriminant_mod(a, p) == 0:
        raise SingularCurve(f"the reduction mod {p} is singular")
    a1, a2, a3, a4, a6 = a
    b2 = (a1 * a1 + 4 * a2) % p
    b4 = (2 * a4 + a1 * a3) % p
    b6 = (a3 * a3 + 4 * a6) % p
    x = np.arange(p, dtype=np.int64)
    f = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p
    chi = np.full(p, -1, dtype=np.int64)
    chi[(x * x) % p] = 1
    chi[0] = 0
    return int(1 + p + chi[f].sum())


def ec_count(fam: CurveFamily | str, t, p: int) -> int:
    """#E_t(F_p) by direct enumeration; ``t`` is a rational parameter value."""
    if isinstance(fam, str):
        fam = family(fam)
    t = Fraction(t)
    if t.denominator % p == 0:
        raise SingularCurve(f"t = {t} has no reduction modulo {p}")
    tr = _reduce(t, p)
    if any(tr == _reduce(e, p) for e in fam.excluded):
        raise SingularCurve(f"t = {t} is a degenerate fibre modulo {p}")
    try:
        a = tuple(_reduce(c, p) for c in fam.coeffs(t))
    except ZeroDivisionError as exc:
        raise SingularCurve(f"t = {t} is a degenerate fibre") from exc
    return count_points(a, p)


__all__ = ["FAMILIES", "CurveFamily", "count_points", "discriminant_mod", "ec_count", "family"]
