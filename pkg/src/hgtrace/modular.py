"""Arithmetic modulo word-sized primes: root tables, a mixed-radix DFT and CRT.

All residues live in int64 arrays with entries in [0, ell) where ell < 2^31,
so a single product stays below 2^62 and can be reduced before it is added
to anything else.
"""

from __future__ import annotations

from functools import lru_cache
from math import lcm

import numpy as np
from sympy import factorint, isprime

from .errors import InternalInconsistency, TooLarge

WORD_LIMIT = 2**31
"""Every auxiliary prime is below this bound."""


def aux_primes(modulus: int, count: int, *, start: int = 2**30) -> list[int]:
    """The first ``count`` primes ell = 1 (mod modulus) with start <= ell < 2^31."""
    if modulus >= WORD_LIMIT // 2:
        raise TooLarge(f"no word-sized primes congruent to 1 mod {modulus}")
    found: list[int] = []
    k = -(-(start - 1) // modulus)
    while len(found) < count:
        ell = 1 + k * modulus
        if ell >= WORD_LIMIT:
            raise TooLarge(f"ran out of word-sized primes congruent to 1 mod {modulus}")
        if isprime(ell):
            found.append(ell)
        k += 1
    return found


@lru_cache(maxsize=None)
def primitive_root(ell: int) -> int:
    """Least primitive root of the prime ell."""
    factors = list(factorint(ell - 1))
    g = 2
    while True:
        if all(pow(g, (ell - 1) // f, ell) != 1 for f in factors):
            return g
        g += 1


def root_of_unity(ell: int, order: int) -> int:
    """A fixed element of exact multiplicative order ``order`` in F_ell."""
    if (ell - 1) % order:
        raise ValueError(f"{order} does not divide {ell} - 1")
    return pow(primitive_root(ell), (ell - 1) // order, ell)


def power_table(root: int, n: int, ell: int) -> np.ndarray:
    """[root^0, ..., root^(n-1)] mod ell, built by repeated doubling."""
    out = np.empty(n, dtype=np.int64)
    if n == 0:
        return out
    out[0] = 1
    filled = 1
    step = root % ell
    while filled < n:
        take = min(filled, n - filled)
        out[filled : filled + take] = out[:take] * step % ell
        filled += take
        step = step * step % ell
    return out


def _dft_rows(x: np.ndarray, zpow: np.ndarray, ell: int) -> np.ndarray:
    """DFT along the last axis of a 2-d array; zpow[e] = zeta^e, len(zpow) = n."""
    rows, n = x.shape
    if n == 1:
        return x.copy()
    f = min(factorint(n))
    m = n // f
    # input index f*k2 + k1 -> (k1, k2); output index j1 + m*j2 <- (j2, j1)
    y = x.reshape(rows, m, f).transpose(0, 2, 1).reshape(rows * f, m)
    y = _dft_rows(np.ascontiguousarray(y), zpow[::f], ell).reshape(rows, f, m)
    twiddle = zpow[(np.arange(f)[:, None] * np.arange(m)[None, :]) % n]
    y = y * twiddle[None, :, :] % ell
    w = zpow[::m]  # order-f root
    out = np.zeros((rows, f, m), dtype=np.int64)
    for k1 in range(f):
        col = y[:, k1, None, :]
        coef = w[(np.arange(f) * k1) % f][None, :, None]
        out = (out + col * coef % ell) % ell
    return out.reshape(rows, n)


def dft_mod(x: np.ndarray, zpow: np.ndarray, ell: int) -> np.ndarray:
    """X[j] = sum_k x[k] zeta^(jk) mod ell along the last axis.

    ``zpow`` is the power table of a root zeta whose order equals the
    transform length.  Leading axes are treated as a batch.
    """
    x = np.asarray(x, dtype=np.int64) % ell
    shape = x.shape
    n = shape[-1]
    if len(zpow) != n:
        raise ValueError("root table length must equal the transform length")
    out = _dft_rows(x.reshape(-1, n), zpow, ell)
    return out.reshape(shape)


# ---------------------------------------------------------------------------
# CRT


def primes_for_bound(bound: int, modulus: int, *, guard: int = 1) -> list[int]:
    """Enough primes ell = 1 mod ``modulus`` that the product of all but the
    last ``guard`` of them exceeds 2*bound."""
    count = 0
    prod = 1
    candidates = aux_primes(modulus, 1)
    while prod <= 2 * bound:
        if count >= len(candidates):
            candidates = aux_primes(modulus, 2 * len(candidates))
        prod *= candidates[count]
        count += 1
    return aux_primes(modulus, count + guard)


def garner_lift(residues: np.ndarray, primes: list[int]) -> np.ndarray:
    """Symmetric CRT lift of residues (shape (len(primes), ...)) to Python ints.

    Returns an object array holding the unique integers x with
    |x| < prod(primes)/2 and x = residues[i] mod primes[i].
    """
    residues = np.asarray(residues, dtype=np.int64)
    k = len(primes)
    coeffs: list[np.ndarray] = []
    for i, ell in enumerate(primes):
        v = residues[i] % ell
        for j in range(i):
            inv = pow(primes[j], -1, ell)
            v = (v - coeffs[j] % ell) % ell * inv % ell
        coeffs.append(v)
    total = np.zeros(residues.shape[1:], dtype=object)
    mod = 1
    for i in range(k):
        total = total + coeffs[i].astype(object) * mod
        mod *= primes[i]
    half = mod // 2
    return np.where(total > half, total - mod, total)


def lift_checked(residues: np.ndarray, primes: list[int], guard: int, bound: int) -> np.ndarray:
    """Lift with the first primes and verify against the trailing guard primes."""
    main = primes[: len(primes) - guard]
    values = garner_lift(residues[: len(main)], main)
    flat = values.reshape(-1)
    if any(abs(int(v)) > bound for v in flat):
        raise InternalInconsistency("CRT lift exceeds the a priori bound")
    for idx in range(len(main), len(primes)):
        ell = primes[idx]
        check = np.array([int(v) % ell for v in flat], dtype=np.int64).reshape(values.shape)
        if not np.array_equal(check, residues[idx] % ell):
            raise InternalInconsistency("CRT lift disagrees with the guard prime")
    return values


def aux_modulus(p: int, n: int, additive: bool = True) -> int:
    """lcm(p, n) when additive characters are needed, else n."""
    return lcm(p, n) if additive else n
