"""How the shipped fixture files were produced.

Each supported label has a recipe that rebuilds its coefficient table from
an oracle unrelated to the trace engine: an eta-product expansion, or a
point count on a fixed elliptic curve.  ``6.24.a.d`` is different because
its table is the three published eigenvalue pairs, entered by hand.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from sympy import primerange

from ..eigensolver import Surd
from ..fixtures import NewformFixture, parse_label
from .curves import count_points
from .eta import EtaProduct, eta_series

P_MAX = 200


def _eta_table(prod: EtaProduct, pmax: int) -> dict[int, int]:
    off = int(prod.offset)
    series = eta_series(prod, pmax + 2)
    return {p: series[p - off] if p >= off else 0 for p in primerange(2, pmax + 1)}


def _curve_table(a: tuple[int, ...], pmax: int, bad: dict[int, int]) -> dict[int, int]:
    out = dict(bad)
    for p in primerange(3, pmax + 1):
        if p in bad:
            continue
        red = tuple(x % p for x in a)
        out[p] = p + 1 - count_points(red, p)
    return out


_SQRT = 1296640489

ETA_PRODUCTS: dict[str, tuple[str, EtaProduct]] = {
    "6.4.a.a": ("eta(tau)^2 eta(2tau)^2 eta(3tau)^2 eta(6tau)^2", EtaProduct(((1, 2), (2, 2), (3, 2), (6, 2)))),
    "8.3.d.a": ("eta(tau)^2 eta(2tau) eta(4tau) eta(8tau)^2", EtaProduct(((1, 2), (2, 1), (4, 1), (8, 2)))),
    "36.2.a.a": ("eta(6tau)^4", EtaProduct(((6, 4),))),
}


def _eta_recipe(prod: EtaProduct) -> Callable[[int], dict]:
    return lambda n: _eta_table(prod, n)


RECIPES: dict[str, tuple[str, Callable[[int], dict]]] = {
    **{label: (text, _eta_recipe(prod)) for label, (text, prod) in ETA_PRODUCTS.items()},
    # y^2 = x^3 - 4x has additive reduction at 2, so a_2 = 0
    "64.2.a.a": ("point count on y^2 = x^3 - 4x", lambda n: _curve_table((0, 0, 0, -4, 0), n, {2: 0})),
    "6.24.a.d": (
        "published eigenvalue pairs at p = 5, 7, 11",
        lambda n: {
            5: Surd(Fraction(12624078), Fraction(5184), _SQRT),
            7: Surd(Fraction(2882231384), Fraction(129600), _SQRT),
            11: Surd(Fraction(508560735012), Fraction(31363200), _SQRT),
        },
    ),
}


def build_shipped(label: str, pmax: int = P_MAX) -> NewformFixture:
    origin, recipe = RECIPES[label]
    level, weight = parse_label(label)
    return NewformFixture(label, weight, level, recipe(pmax), source="shipped", origin=origin)


__all__ = ["ETA_PRODUCTS", "P_MAX", "RECIPES", "build_shipped"]
