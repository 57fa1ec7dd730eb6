"""Finite fields F_q, q = p^r, with full discrete-log tables.

Elements are encoded as integer *codes*: the polynomial
c_0 + c_1 X + ... + c_{r-1} X^{r-1} (reduced modulo the field's modulus) has
code sum(c_i p^i).  For r = 1 the code is just the residue mod p, and in all
cases the prime subfield element a has code a.

Multiplicative characters are powers of a fixed character omega with
omega(g) = exp(2 pi i/(q-1)) for the stored generator g; a character omega^k
is therefore described by its exponent k mod q-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Union

import numpy as np
from sympy import factorint, isprime

from .errors import BadCharacteristic, CharacterNotDefined, CompositeModulus, TooLarge

TABLE_LIMIT = 2_000_000

INF = "inf"
"""Marker for the point at infinity of P^1 in coordinate lists."""


class _ZeroType:
    __slots__ = ()

    def __repr__(self) -> str:
        return "Zero"


Zero = _ZeroType()
"""Value of every multiplicative character at 0."""


Scalar = Union[int, Fraction, str]


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, low degree first)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    r = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # mod is monic
    for deg in range(len(out) - 1, r - 1, -1):
        c = out[deg]
        if c:
            for i in range(r + 1):
                out[deg - r + i] = (out[deg - r + i] - c * mod[i]) % p
    out = out[:r]
    return out + [0] * (r - len(out))


def _polypowmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    r = len(mod) - 1
    result = [1] + [0] * (r - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def _polymod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _trim(a)
    return a


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _is_irreducible(mod: list[int], p: int) -> bool:
    """Rabin's test for the monic polynomial ``mod`` (low degree first)."""
    r = len(mod) - 1
    if r == 1:
        return True
    x = [0, 1] + [0] * (r - 2)

    def frob_power(k: int) -> list[int]:
        return _polypowmod(x, p**k, mod, p)

    xr = frob_power(r)
    if _trim(list(xr)) != _trim(list(x)):
        return False
    for ell in factorint(r):
        h = frob_power(r // ell)
        diff = [(h[i] - x[i]) % p for i in range(r)]
        g = _polygcd(list(mod), diff, p)
        if len(g) > 1:
            return False
    return True


def _code_to_poly(code: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        code, c = divmod(code, p)
        out.append(c)
    return out


def _poly_to_code(poly: list[int], p: int) -> int:
    code = 0
    for c in reversed(poly):
        code = code * p + c
    return code


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """A finite field with a fixed generator and precomputed tables.

    ``exp[j]`` is the code of g^j, ``dlog[x]`` the exponent of the nonzero
    element with code x (``dlog[0] == -1``), and ``trace_table[x]`` the
    absolute trace of x as a residue mod p.
    """

    p: int
    r: int
    modulus: tuple[int, ...]
    generator: int
    exp: np.ndarray = field(repr=False)
    dlog: np.ndarray = field(repr=False)
    trace_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def n(self) -> int:
        """Order of the multiplicative group."""
        return self.q - 1

    @property
    def key(self) -> tuple:
        return (self.p, self.r, self.modulus, self.generator)

    def __hash__(self) -> int:
        return hash(self.key)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and self.key == other.key

    # -- element conversion -------------------------------------------------

    def element(self, value: Scalar) -> int:
        """Code of a prime-subfield element given as an integer or rational.

        Strings such as ``"3"`` or ``"-1/3"`` are accepted.  A denominator
        divisible by p is rejected with :class:`BadCharacteristic`.
        """
        if isinstance(value, str):
            value = Fraction(value)
        value = Fraction(value)
        den = value.denominator % self.p
        if den == 0:
            raise BadCharacteristic(f"{value} has no reduction modulo {self.p}")
        return value.numerator * pow(den, -1, self.p) % self.p

    def poly(self, code: int) -> list[int]:
        return _code_to_poly(int(code), self.p, self.r)

    def format(self, code) -> str:
        """Human-readable form of an element code (or the infinity marker)."""
        if code is INF or code == INF:
            return INF
        code = int(code)
        if self.r == 1:
            return str(code)
        return "[" + ",".join(str(c) for c in self.poly(code)) + "]"

    # -- vectorised arithmetic on codes -------------------------------------

    @cached_property
    def _place(self) -> np.ndarray:
        return self.p ** np.arange(self.r, dtype=np.int64)

    def _digits(self, x: np.ndarray) -> np.ndarray:
        return (x[..., None] // self._place) % self.p

    def _undigits(self, d: np.ndarray) -> np.ndarray:
        return (d * self._place).sum(axis=-1)

    def add(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.r == 1:
            return (x + y) % self.p
        return self._undigits((self._digits(x) + self._digits(y)) % self.p)

    def neg(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.r == 1:
            return (-x) % self.p
        return self._undigits((-self._digits(x)) % self.p)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        zero = (x == 0) | (y == 0)
        e = (self.dlog[x] + self.dlog[y]) % self.n
        return np.where(zero, 0, self.exp[e])

    def inv(self, x):
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.exp[(-self.dlog[x]) % self.n]

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def power(self, x, e: int):
        x = np.asarray(x, dtype=np.int64)
        out = self.exp[(self.dlog[x] * e) % self.n]
        if e == 0:
            return np.ones_like(out)
        return np.where(x == 0, 0, out)

    def quadratic_char(self, x):
        """phi_q(x) in {-1, 0, 1}, vectorised."""
        x = np.asarray(x, dtype=np.int64)
        val = np.where(self.dlog[x] % 2 == 0, 1, -1)
        return np.where(x == 0, 0, val)

    def phi(self, value: Scalar) -> int:
        """Quadratic character of a rational number reduced into F_q."""
        return int(self.quadratic_char(self.element(value)))

    def sqrt(self, x: int) -> int | None:
        """One square root of x (the one with even-half exponent), or None."""
        x = int(x)
        if x == 0:
            return 0
        e = int(self.dlog[x])
        if e % 2:
            return None
        return int(self.exp[e // 2])

    @cached_property
    def one_minus(self) -> np.ndarray:
        """Codes of 1 - x for every code x."""
        return self.sub(np.ones(self.q, dtype=np.int64), np.arange(self.q, dtype=np.int64))


def _build(p: int, r: int, modulus: list[int], generator: int) -> FieldCtx:
    q = p**r
    n = q - 1
    exp = np.empty(n, dtype=np.int64)
    if r == 1:
        x = 1
        for j in range(n):
            exp[j] = x
            x = x * generator % p
    else:
        g = _code_to_poly(generator, p, r)
        x = [1] + [0] * (r - 1)
        for j in range(n):
            exp[j] = _poly_to_code(x, p)
            x = _polymulmod(x, g, modulus, p)
    dlog = np.full(q, -1, dtype=np.int64)
    dlog[exp] = np.arange(n, dtype=np.int64)
    if np.count_nonzero(dlog >= 0) != n:
        raise AssertionError("generator does not generate the multiplicative group")
    if r == 1:
        trace = np.arange(q, dtype=np.int64)
    else:
        basis_traces = []
        for i in range(r):
            xi = [0] * r
            xi[i] = 1
            total = [0] * r
            power = xi
            for _ in range(r):
                total = [(a + b) % p for a, b in zip(total, power)]
                power = _polypowmod(power, p, modulus, p)
            if any(total[1:]):
                raise AssertionError("trace landed outside the prime field")
            basis_traces.append(total[0])
        place = p ** np.arange(r, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // place) % p
        trace = (digits * np.array(basis_traces, dtype=np.int64)).sum(axis=1) % p
    for arr in (exp, dlog, trace):
        arr.setflags(write=False)
    return FieldCtx(p, r, tuple(modulus), generator, exp, dlog, trace)


def _has_order(code: int, p: int, r: int, modulus: list[int], n: int, primes) -> bool:
    if code == 0:
        return False
    if r == 1:
        return all(pow(code, n // ell, p) != 1 for ell in primes)
    g = _code_to_poly(code, p, r)
    one = [1] + [0] * (r - 1)
    return all(_polypowmod(g, n // ell, modulus, p) != one for ell in primes)


def make_prime_field(p: int) -> FieldCtx:
    """F_p with the least primitive root as generator."""
    return make_extension_field(p, 1)


def make_extension_field(p: int, r: int, limit: int = TABLE_LIMIT) -> FieldCtx:
    """F_{p^r} with the least irreducible modulus and least generator.

    Candidates are scanned in code order, which lists monic polynomials
    X^r + c_{r-1}X^{r-1} + ... + c_0 by the base-p integer sum(c_i p^i).
    """
    return _make_field_cached(p, r, limit)


_FIELD_CACHE: dict[tuple[int, int], FieldCtx] = {}


def _make_field_cached(p: int, r: int, limit: int) -> FieldCtx:
    if p < 2 or not isprime(p):
        raise CompositeModulus(f"{p} is not prime")
    if not 1 <= r <= 4:
        raise TooLarge(f"extension degree {r} outside 1..4")
    q = p**r
    if q > limit:
        raise TooLarge(f"q = {q} exceeds the table limit {limit}")
    cached = _FIELD_CACHE.get((p, r))
    if cached is not None:
        return cached
    if r == 1:
        modulus = [0, 1]
    else:
        for c in range(p**r):
            candidate = _code_to_poly(c, p, r) + [1]
            if _is_irreducible(candidate, p):
                modulus = candidate
                break
    n = q - 1
    primes = list(factorint(n)) if n > 1 else []
    generator = next(
        code for code in range(1, q) if _has_order(code, p, r, modulus, n, primes)
    )
    ctx = _build(p, r, modulus, generator)
    _FIELD_CACHE[(p, r)] = ctx
    return ctx


def with_generator(ctx: FieldCtx, generator: int) -> FieldCtx:
    """The same field with a different generator (must have order q - 1)."""
    n = ctx.n
    primes = list(factorint(n)) if n > 1 else []
    if not _has_order(generator, ctx.p, ctx.r, list(ctx.modulus), n, primes):
        raise ValueError(f"element {generator} does not generate F_{ctx.q}^x")
    return _build(ctx.p, ctx.r, list(ctx.modulus), generator)


def generators(ctx: FieldCtx) -> list[int]:
    """All generators of F_q^x, in code order."""
    n = ctx.n
    return sorted(int(ctx.exp[j]) for j in range(n) if np.gcd(j, n) == 1)


@dataclass(frozen=True)
class Character:
    """The multiplicative character omega^k of a field with n = q - 1."""

    k: int
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", self.k % self.n)

    @classmethod
    def from_rational(cls, ctx: FieldCtx, a: Fraction) -> "Character":
        """omega^{(q-1)a}; requires (q - 1)a integral."""
        a = Fraction(a)
        num = a * ctx.n
        if num.denominator != 1:
            raise CharacterNotDefined(f"(q-1)*{a} is not an integer for q = {ctx.q}")
        return cls(int(num), ctx.n)

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.k + other.k, self.n)

    def conj(self) -> "Character":
        return Character(-self.k, self.n)

    @property
    def is_trivial(self) -> bool:
        return self.k == 0


def char_eval(ctx: FieldCtx, chi: Character, x: int):
    """Exponent e with chi(x) = exp(2 pi i e/(q-1)), or :data:`Zero` at x = 0."""
    x = int(x)
    if x == 0:
        return Zero
    return chi.k * int(ctx.dlog[x]) % ctx.n


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
