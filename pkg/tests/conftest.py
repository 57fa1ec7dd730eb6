"""Shared helpers: a floating-point H-function built straight from Gauss sums.

It uses its own primitive root and complex exponentials, so it shares no
code with the exact routines under test.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from sympy import primitive_root


class FloatField:
    """F_p with omega(g) = exp(2 pi i/(p-1)) for the least primitive root g."""

    def __init__(self, p: int):
        self.p = p
        self.n = p - 1
        g = primitive_root(p)
        self.dlog = {}
        x = 1
        for k in range(self.n):
            self.dlog[x] = k
            x = x * g % p
        self._gauss: dict[int, complex] = {}

    def chi(self, e: int, x: int) -> complex:
        x %= self.p
        if x == 0:
            return 0
        return cmath.exp(2j * cmath.pi * e * self.dlog[x] / self.n)

    def exponent(self, a) -> int:
        e = Fraction(a) * self.n
        assert e.denominator == 1
        return int(e) % self.n

    def gauss(self, e: int) -> complex:
        e %= self.n
        if e not in self._gauss:
            self._gauss[e] = sum(
                self.chi(e, x) * cmath.exp(2j * cmath.pi * x / self.p) for x in range(1, self.p)
            )
        return self._gauss[e]

    def jacobi(self, a, b) -> complex:
        ea, eb = self.exponent(a), self.exponent(b)
        return sum(self.chi(ea, t) * self.chi(eb, 1 - t) for t in range(2, self.p))

    def H(self, alpha, beta, lam: int) -> complex:
        tot = 0
        for k in range(self.n):
            term = 1
            for a, b in zip(alpha, beta):
                ea, eb = self.exponent(a), self.exponent(b)
                term *= self.gauss(ea + k) / self.gauss(ea) * self.gauss(-eb - k) / self.gauss(-eb)
            tot += term * self.chi(k, (-1) ** len(alpha) * lam)
        return tot / (1 - self.p)


@pytest.fixture(scope="session")
def float_field():
    cache: dict[int, FloatField] = {}

    def get(p: int) -> FloatField:
        if p not in cache:
            cache[p] = FloatField(p)
        return cache[p]

    return get


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL/SKIP line per criterion

_ACCEPTANCE: dict[str, tuple[str, str, float]] = {}


def _order(key: str) -> tuple[int, str]:
    digits = "".join(ch for ch in key if ch.isdigit())
    return int(digits), key[len(digits):]


class AcceptanceRecorder:
    def __init__(self, store: dict):
        self.store = store

    def record(self, number: int | str, title: str, status: str, seconds: float) -> None:
        key = str(number)
        self.store[key] = (status, title, seconds)
        print(f"criterion {key:>3} {status}: {title} ({seconds:.2f} s)")


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceRecorder(_ACCEPTANCE)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=_order):
        status, title, seconds = _ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>3} {status}: {title} ({seconds:.2f} s)")
