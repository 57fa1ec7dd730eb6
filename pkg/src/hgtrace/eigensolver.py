"""Hecke eigenvalues from traces of powers of Frobenius.

If a_1, ..., a_m are the eigenvalues of T_p on S_{k+2}(Gamma), each a_i
splits as b_i + c_i with b_i c_i = w = p^(k+1), the two Frobenius
eigenvalues it accounts for.  The local sum over P^1(F_{p^r}) is minus
P_r = sum_i (b_i^r + c_i^r).  Inverting the P_r gives the power sums of the
a_i, Newton's identities give the characteristic polynomial of T_p, and its
roots are returned exactly when m <= 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt

import numpy as np
from sympy import factorint

from .errors import EmptySpace, InconsistentTraces, Unsupported
from .ffield import make_extension_field
from .groups import TriangleGroupSpec, check_prime, dim_cusp_forms, lookup
from .trace_engine import _admissible, hecke_trace, local_sum

MAX_DIM = 4

ELLIPTIC_CONVENTION = (
    "over F_{p^r}, alpha at an order-3/4/6 point is the Jacobi sum J(1/N,1/N) "
    "computed in F_{p^r} itself and enters squared; order-2 points use the root "
    "of T^2 - q H_q(HD(2,4,6),1) T + q^2 (times phi_q(-3)^u) with q = p^r"
)


def _spec(spec: TriangleGroupSpec | str) -> TriangleGroupSpec:
    return lookup(spec) if isinstance(spec, str) else spec


def frob_power_trace(spec: TriangleGroupSpec | str, k: int, p: int, r: int) -> int:
    """P_r = Tr(Frob_p^r | H^1), i.e. minus the local sum over P^1(F_{p^r})."""
    spec = _spec(spec)
    if not 1 <= r <= MAX_DIM:
        raise Unsupported(f"extension degree r = {r} is outside 1..{MAX_DIM}")
    _admissible(spec, k)
    check_prime(spec, p)
    if spec.family == "composite":
        if r == 1:
            return hecke_trace(spec, k, p).trace
        raise Unsupported(f"{spec.name} has no point-by-point model over F_{{p^{r}}}")
    return local_sum(spec, k, make_extension_field(p, r)).trace


def frobenius_to_hecke_sums(P: list[int], w: int) -> list[int]:
    """Power sums s_r = sum a_i^r from P_r = sum (b_i^r + c_i^r) with b_i c_i = w.

    Uses b^r + c^r = sum_j (-1)^j r/(r-j) C(r-j, j) w^j (b+c)^(r-2j), solved
    for s_r one degree at a time.  ``s[0]`` is the dimension and is not
    available from the P_r, so it is only used for the r = 2j terms and must
    be supplied as ``len(P)``.
    """
    m = len(P)
    s = [m]
    for r in range(1, m + 1):
        acc = Fraction(P[r - 1])
        for j in range(1, r // 2 + 1):
            coeff = Fraction(r, r - j) * comb(r - j, j) * (-1) ** j * w**j
            acc -= coeff * s[r - 2 * j]
        if acc.denominator != 1:
            raise InconsistentTraces(f"s_{r} = {acc} is not an integer")
        s.append(int(acc))
    return s[1:]


def newton_charpoly(s: list[int]) -> list[int]:
    """Coefficients [c_0, ..., c_m] (c_m = 1) of prod (X - a_i) from power sums."""
    m = len(s)
    e = [Fraction(1)]
    for n in range(1, m + 1):
        acc = sum((-1) ** (i - 1) * e[n - i] * s[i - 1] for i in range(1, n + 1))
        e.append(Fraction(acc, n))
    if any(x.denominator != 1 for x in e):
        raise InconsistentTraces("elementary symmetric functions are not integral")
    # prod (X - a_i) = sum_n (-1)^n e_n X^(m-n)
    return [int((-1) ** (m - i) * e[m - i]) for i in range(m + 1)]


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = b^2 D with D squarefree; returns (b, D)."""
    b, d = 1, 1
    for prime, exp in factorint(n).items():
        b *= prime ** (exp // 2)
        if exp % 2:
            d *= prime
    return b, d


@dataclass(frozen=True)
class Surd:
    """a + b sqrt(D) with D squarefree; D = 1 and b = 0 for an integer."""

    a: Fraction
    b: Fraction
    D: int

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.D**0.5

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.D)

    def to_dict(self) -> dict:
        return {"a": _json_num(self.a), "b": _json_num(self.b), "D": self.D}

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.D})"


def _json_num(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


def quadratic_roots(c0: int, c1: int) -> list[Surd]:
    """Roots of X^2 + c1 X + c0, as exact surds (or rationals when they exist)."""
    disc = c1 * c1 - 4 * c0
    a = Fraction(-c1, 2)
    if disc == 0:
        return [Surd(a, Fraction(0), 1), Surd(a, Fraction(0), 1)]
    if disc < 0:
        raise InconsistentTraces("negative discriminant: eigenvalues of T_p are real")
    root = isqrt(disc)
    if root * root == disc:
        return sorted([Surd(a + Fraction(root, 2), Fraction(0), 1), Surd(a - Fraction(root, 2), Fraction(0), 1)], key=float)
    b, d = _squarefree_split(disc)
    return [Surd(a, Fraction(b, 2), d), Surd(a, Fraction(-b, 2), d)]


@dataclass
class EigenReport:
    group: str
    weight: int
    p: int
    m: int
    power_traces: list[int]
    power_sums: list[int]
    charpoly: list[int]
    eigenvalues: list[Surd] = field(default_factory=list)
    numeric: list[float] = field(default_factory=list)
    convention: str = ELLIPTIC_CONVENTION

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "weight": self.weight,
            "p": self.p,
            "m": self.m,
            "power_traces": self.power_traces,
            "power_sums": self.power_sums,
            "charpoly": self.charpoly,
            "eigenvalues": [
                _json_num(e.a) if e.b == 0 else e.to_dict() for e in self.eigenvalues
            ],
            "numeric": self.numeric,
            "convention": self.convention,
        }


def power_sums_to_eigen(P: list[int], p: int, k: int, m: int | None = None, *, group: str = "") -> EigenReport:
    """Eigenvalues of T_p on a space of dimension m from P_1, ..., P_m."""
    m = len(P) if m is None else m
    if m < 1 or len(P) != m:
        raise InconsistentTraces(f"need exactly m = {m} power traces, got {len(P)}")
    s = frobenius_to_hecke_sums(list(P), p ** (k + 1))
    poly = newton_charpoly(s)
    rep = EigenReport(group, k + 2, p, m, list(P), s, poly)
    if m == 1:
        rep.eigenvalues = [Surd(Fraction(-poly[0]), Fraction(0), 1)]
    elif m == 2:
        rep.eigenvalues = quadratic_roots(poly[0], poly[1])
    if rep.eigenvalues:
        rep.numeric = [float(e) for e in rep.eigenvalues]
    else:
        roots = np.roots([float(c) for c in reversed(poly)])
        rep.numeric = sorted(float(z.real) for z in roots)
    return rep


def hecke_eigenvalues(spec: TriangleGroupSpec | str, weight: int, p: int) -> EigenReport:
    """Eigenvalues of T_p on S_weight(Gamma) via traces over F_{p^r}, r <= dim."""
    spec = _spec(spec)
    k = weight - 2
    _admissible(spec, k)
    check_prime(spec, p)
    m = dim_cusp_forms(spec, weight)
    if m == 0:
        raise EmptySpace(f"S_{weight}({spec.name}) is zero")
    if m > MAX_DIM:
        raise Unsupported(f"dimension {m} exceeds {MAX_DIM}")
    P = [frob_power_trace(spec, k, p, r) for r in range(1, m + 1)]
    return power_sums_to_eigen(P, p, k, m, group=spec.name)


__all__ = [
    "EigenReport",
    "Surd",
    "frob_power_trace",
    "frobenius_to_hecke_sums",
    "hecke_eigenvalues",
    "newton_charpoly",
    "power_sums_to_eigen",
    "quadratic_roots",
]
