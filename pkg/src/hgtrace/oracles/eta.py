"""Exact q-expansions of eta products prod eta(d tau)^e."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class EtaProduct:
    """prod_i eta(d_i tau)^(e_i), given as ((d_1, e_1), ...)."""

    factors: tuple[tuple[int, int], ...]
    label: str = ""

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(e for _, e in self.factors), 2)

    @property
    def offset(self) -> Fraction:
        """The leading power of q, sum d e / 24."""
        return Fraction(sum(d * e for d, e in self.factors), 24)

    def __str__(self) -> str:
        return " ".join(f"eta({d}tau)^{e}" for d, e in self.factors)


def _euler_series(terms: int) -> np.ndarray:
    """prod_{n>=1} (1 - q^n) up to q^(terms-1), from the pentagonal number theorem."""
    out = np.zeros(terms, dtype=object)
    out[:] = 0
    k = 0
    while True:
        hit = False
        for m in (k, -k) if k else (0,):
            g = m * (3 * m - 1) // 2
            if g < terms:
                out[g] += (-1) ** (abs(m) % 2)
                hit = True
        if not hit:
            break
        k += 1
    return out


def _mul(a: np.ndarray, b: np.ndarray, terms: int) -> np.ndarray:
    return np.convolve(a, b)[:terms]


def _power(base: np.ndarray, e: int, terms: int) -> np.ndarray:
    if e < 0:
        base = _inverse(base, terms)
        e = -e
    result = np.zeros(terms, dtype=object)
    result[:] = 0
    result[0] = 1
    while e:
        if e & 1:
            result = _mul(result, base, terms)
        base = _mul(base, base, terms)
        e >>= 1
    return result


def _inverse(a: np.ndarray, terms: int) -> np.ndarray:
    """1/a for a series with constant term 1."""
    inv = np.zeros(terms, dtype=object)
    inv[:] = 0
    inv[0] = 1
    for n in range(1, terms):
        inv[n] = -sum(a[i] * inv[n - i] for i in range(1, n + 1))
    return inv


def eta_series(prod: EtaProduct, terms: int) -> list[int]:
    """Coefficients c_0..c_{terms-1} of prod (1 - q^(d n))^e (without the q^offset)."""
    total = np.zeros(terms, dtype=object)
    total[:] = 0
    total[0] = 1
    base = _euler_series(terms)
    for d, e in prod.factors:
        dil = np.zeros(terms, dtype=object)
        dil[:] = 0
        dil[::d] = base[: (terms + d - 1) // d]
        total = _mul(total, _power(dil, e, terms), terms)
    return [int(c) for c in total]


def eta_ap(prod: EtaProduct, p: int, terms: int | None = None) -> int:
    """The coefficient of q^p in the expansion of ``prod``."""
    off = prod.offset
    if off.denominator != 1:
        raise ValueError(f"{prod} does not have an integral q-expansion")
    idx = p - int(off)
    if idx < 0:
        return 0
    terms = max(idx + 1, terms or 0)
    return eta_series(prod, terms)[idx]


DELTA = EtaProduct(((1, 24),), "eta(tau)^24")
LEVEL2_WT8 = EtaProduct(((1, 8), (2, 8)), "eta(tau)^8 eta(2tau)^8")
LEVEL4_WT6 = EtaProduct(((2, 12),), "eta(2tau)^12")
LEVEL16_WT3 = EtaProduct(((4, 6),), "eta(4tau)^6")
LEVEL6_WT4 = EtaProduct(((1, 2), (2, 2), (3, 2), (6, 2)), "eta(tau)^2 eta(2tau)^2 eta(3tau)^2 eta(6tau)^2")

__all__ = ["DELTA", "LEVEL16_WT3", "LEVEL2_WT8", "LEVEL4_WT6", "LEVEL6_WT4", "EtaProduct", "eta_ap", "eta_series"]
