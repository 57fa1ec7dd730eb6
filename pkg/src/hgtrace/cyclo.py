"""Exact arithmetic in Z[zeta_n] through the group ring Z[C_n].

An element is a length-n integer vector c with value sum_k c[k] zeta_n^k.
Products are cyclic convolutions; equality and rationality are decided
after reduction modulo the n-th cyclotomic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

_INT64_SAFE = 2**62


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first."""
    x = symbols("x")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(n, x), x).all_coeffs()))


@dataclass(frozen=True, eq=False)
class Cyc:
    """An element of Z[zeta_n] stored in the group ring of C_n."""

    n: int
    coeffs: np.ndarray

    @classmethod
    def zero(cls, n: int) -> "Cyc":
        return cls(n, np.zeros(n, dtype=np.int64))

    @classmethod
    def const(cls, n: int, c: int) -> "Cyc":
        v = np.zeros(n, dtype=np.int64)
        v[0] = c
        return cls(n, v)

    @classmethod
    def root(cls, n: int, k: int) -> "Cyc":
        v = np.zeros(n, dtype=np.int64)
        v[k % n] = 1
        return cls(n, v)

    def _l1(self) -> int:
        return int(sum(abs(int(c)) for c in self.coeffs))

    def __add__(self, other: "Cyc") -> "Cyc":
        return Cyc(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other: "Cyc") -> "Cyc":
        return Cyc(self.n, self.coeffs - other.coeffs)

    def __neg__(self) -> "Cyc":
        return Cyc(self.n, -self.coeffs)

    def scale(self, c: int) -> "Cyc":
        return self * Cyc.const(self.n, c)

    def __mul__(self, other: "Cyc") -> "Cyc":
        n = self.n
        if self._l1() * other._l1() < _INT64_SAFE and self.coeffs.dtype != object:
            full = np.convolve(self.coeffs, other.coeffs)
        else:
            full = np.convolve(self.coeffs.astype(object), other.coeffs.astype(object))
        out = np.zeros(n, dtype=full.dtype)
        for start in range(0, len(full), n):
            chunk = full[start : start + n]
            out[: len(chunk)] += chunk
        return Cyc(n, out)

    def shift(self, k: int) -> "Cyc":
        """Multiply by zeta^k."""
        return Cyc(self.n, np.roll(self.coeffs, k % self.n))

    def conj(self) -> "Cyc":
        idx = (-np.arange(self.n)) % self.n
        return Cyc(self.n, self.coeffs[idx])

    def reduced(self) -> tuple[int, ...]:
        """Power-basis coordinates modulo Phi_n (length phi(n))."""
        phi = cyclotomic_coeffs(self.n)
        deg = len(phi) - 1
        a = [int(c) for c in self.coeffs]
        for top in range(len(a) - 1, deg - 1, -1):
            c = a[top]
            if c:
                for i in range(deg + 1):
                    a[top - deg + i] -= c * phi[i]
        return tuple(a[:deg])

    def is_rational(self) -> bool:
        r = self.reduced()
        return not any(r[1:])

    def rational(self) -> int:
        """The integer value; raises ValueError if not in Z."""
        r = self.reduced()
        if any(r[1:]):
            raise ValueError("element is not a rational integer")
        return r[0] if r else 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cyc) and self.n == other.n and (self - other).reduced() == tuple(
            [0] * (len(cyclotomic_coeffs(self.n)) - 1)
        )

    def residue(self, ell: int, zeta: int) -> int:
        """Image in F_ell under zeta_n -> zeta."""
        total = 0
        z = 1
        for c in self.coeffs:
            total = (total + int(c) * z) % ell
            z = z * zeta % ell
        return total

    def embed(self, m: int) -> "Cyc":
        """Image in Z[zeta_m] for a multiple m of n (zeta_n -> zeta_m^(m/n))."""
        if m % self.n:
            raise ValueError(f"{self.n} does not divide {m}")
        v = np.zeros(m, dtype=self.coeffs.dtype)
        v[:: m // self.n] = self.coeffs
        return Cyc(m, v)

    def to_complex(self) -> complex:
        k = np.arange(self.n)
        return complex(np.sum(self.coeffs.astype(float) * np.exp(2j * np.pi * k / self.n)))


@dataclass(frozen=True)
class CycFraction:
    """num/den with num in Z[zeta_n] and den a nonzero integer."""

    num: Cyc
    den: int = 1

    def __mul__(self, other: "CycFraction") -> "CycFraction":
        return CycFraction(self.num * other.num, self.den * other.den)

    def __add__(self, other: "CycFraction") -> "CycFraction":
        return CycFraction(self.num.scale(other.den) + other.num.scale(self.den), self.den * other.den)

    def rational(self) -> Fraction:
        return Fraction(self.num.rational(), self.den)

    def is_rational(self) -> bool:
        return self.num.is_rational()
