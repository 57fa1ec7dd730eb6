"""Hypergeometric data {alpha, beta} and their gamma vectors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import divisors, totient

from .errors import MalformedDatum, RequiresRationality


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class HGDatum:
    """A hypergeometric datum; entries are kept exactly as supplied.

    Only the classes of the entries modulo Z enter any character sum, but the
    order is kept because the P-function pairs alpha_i with beta_i.
    """

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.alpha)

    @cached_property
    def level(self) -> int:
        return lcm(*(x.denominator for x in self.alpha + self.beta))

    @property
    def M(self) -> int:
        return self.level

    @cached_property
    def primitive(self) -> bool:
        return all((a - b).denominator != 1 for a in self.alpha for b in self.beta)

    @cached_property
    def rational(self) -> bool:
        """Each side is stable under x -> u x mod Z for every unit u.

        Equivalently, for each denominator m every reduced numerator mod m
        occurs equally often.
        """
        for side in (self.alpha, self.beta):
            by_den: dict[int, Counter] = {}
            for x in side:
                y = _mod1(x)
                by_den.setdefault(y.denominator, Counter())[y.numerator] += 1
            for m, nums in by_den.items():
                if len(nums) != totient(m) or len(set(nums.values())) != 1:
                    return False
        return True

    @cached_property
    def integral_beta_count(self) -> int:
        """Number m of entries of beta lying in Z."""
        return sum(1 for b in self.beta if b.denominator == 1)

    @cached_property
    def weight_exponent(self) -> int:
        """Least e with q^e H_q integral: ceil((n - m)/2)."""
        return -(-(self.n - self.integral_beta_count) // 2)

    def __str__(self) -> str:
        fmt = lambda xs: ",".join(str(x) for x in xs)  # noqa: E731
        return f"{fmt(self.alpha)}/{fmt(self.beta)}"


def build_datum(alpha: Iterable, beta: Iterable) -> HGDatum:
    """Validate and build a datum.  beta must contain an integer entry."""
    a = tuple(_frac(x) for x in alpha)
    b = tuple(_frac(x) for x in beta)
    if not a or len(a) != len(b):
        raise MalformedDatum(f"|alpha| = {len(a)} and |beta| = {len(b)} must agree and be positive")
    if not any(x.denominator == 1 for x in b):
        raise MalformedDatum("beta must contain 1")
    return HGDatum(a, b)


def parse_datum(text: str) -> HGDatum:
    """Parse ``"a1,a2;b1,b2"`` (or with ``|``), or ``"a1,a2/b1,b2"``.

    With a slash separator the split is ambiguous, so the cut chosen is the
    one giving two lists of equal length whose entries all lie in [0, 1],
    falling back to the first cut giving equal lengths.
    """
    for sep in (";", "|"):
        if sep in text:
            left, _, right = text.partition(sep)
            return build_datum(parse_rationals(left), parse_rationals(right))
    if "/" not in text:
        raise MalformedDatum(f"cannot parse datum {text!r}")
    parts = text.split("/")
    candidates = []
    for cut in range(1, len(parts)):
        left = "/".join(parts[:cut])
        right = "/".join(parts[cut:])
        try:
            al = [_frac(x) for x in left.split(",")]
            be = [_frac(x) for x in right.split(",")]
        except (ValueError, ZeroDivisionError):
            continue
        if len(al) == len(be):
            candidates.append((al, be))
    for al, be in candidates:
        if all(0 <= x <= 1 for x in al + be):
            return build_datum(al, be)
    if candidates:
        return build_datum(*candidates[0])
    raise MalformedDatum(f"cannot parse datum {text!r}")


def parse_rationals(text: str) -> list[Fraction]:
    try:
        return [_frac(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedDatum(f"cannot parse rational list {text!r}") from exc


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaVector:
    """Multisets p_j, q_k with prod(X^p_j - 1)/prod(X^q_k - 1) matching a datum."""

    p_list: tuple[int, ...]
    q_list: tuple[int, ...]

    @cached_property
    def N(self) -> Fraction:
        num = 1
        for pj in self.p_list:
            num *= pj**pj
        den = 1
        for qk in self.q_list:
            den *= qk**qk
        sign = -1 if sum(self.q_list) % 2 else 1
        return Fraction(sign * num, den)

    def cyclotomic_exponents(self) -> dict[int, int]:
        """Signed multiplicity of each Phi_d in the quotient."""
        out: Counter[int] = Counter()
        for pj in self.p_list:
            for d in divisors(pj):
                out[d] += 1
        for qk in self.q_list:
            for d in divisors(qk):
                out[d] -= 1
        return {d: c for d, c in out.items() if c}


def _cyclotomic_index_counts(entries: Sequence[Fraction]) -> Counter:
    by_den = Counter(_mod1(x).denominator for x in entries)
    out = Counter()
    for m, cnt in by_den.items():
        phi = int(totient(m))
        if cnt % phi:
            raise RequiresRationality("entries do not form full Galois orbits")
        out[m] = cnt // phi
    return out


def _peel(exponents: dict[int, int]) -> tuple[list[int], list[int]]:
    c = Counter(exponents)
    p_list: list[int] = []
    q_list: list[int] = []
    while True:
        live = [d for d, v in c.items() if v]
        if not live:
            break
        d = max(live)
        v = c[d]
        target = p_list if v > 0 else q_list
        step = 1 if v > 0 else -1
        target.extend([d] * abs(v))
        for e in divisors(d):
            c[e] -= step * abs(v)
    common = Counter(p_list) & Counter(q_list)
    p_red = sorted((Counter(p_list) - common).elements())
    q_red = sorted((Counter(q_list) - common).elements())
    return p_red, q_red


def gamma_vector(d: HGDatum) -> GammaVector:
    """Gamma vector by peeling the largest cyclotomic index first."""
    if not d.rational:
        raise RequiresRationality(f"datum {d} is not defined over Q")
    exps = Counter(_cyclotomic_index_counts(d.alpha))
    exps.subtract(_cyclotomic_index_counts(d.beta))
    p_list, q_list = _peel({k: v for k, v in exps.items() if v})
    return GammaVector(tuple(p_list), tuple(q_list))


def s_multiplicity(gv: GammaVector, q: int, m: int) -> int:
    """min(#{j : p_j m = 0 mod q-1}, #{k : q_k m = 0 mod q-1})."""
    n = q - 1
    a = sum(1 for pj in gv.p_list if (pj * m) % n == 0)
    b = sum(1 for qk in gv.q_list if (qk * m) % n == 0)
    return min(a, b)


def datum_from_gamma(gv: GammaVector) -> tuple[Counter, Counter]:
    """Multisets of alpha and beta classes (mod Z) reconstructed from a gamma vector."""
    alpha: Counter = Counter()
    beta: Counter = Counter()
    for d, c in gv.cyclotomic_exponents().items():
        side = alpha if c > 0 else beta
        for j in range(1, d + 1):
            if gcd(j, d) == 1:
                side[_mod1(Fraction(j, d))] += abs(c)
    return alpha, beta


def classes_mod1(entries: Sequence[Fraction]) -> Counter:
    return Counter(_mod1(x) for x in entries)
