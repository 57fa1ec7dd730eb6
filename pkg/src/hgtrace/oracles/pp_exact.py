"""The P-function summed directly in Z[zeta_{q-1}], without auxiliary primes.

Jacobi sums are tallied from the discrete-log table into the group ring of
C_{q-1}; products are cyclic convolutions and the final value is reduced
modulo Phi_{q-1}.  It is slow (about q^2 log q) and meant only as a
cross-check of the modular routine for q <= 500.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..charsum import ExactValue
from ..cyclo import Cyc
from ..errors import CongruenceRequired, InternalInconsistency, TooLarge
from ..ffield import FieldCtx
from ..hgdata import HGDatum

SMALL_Q = 500


def _jacobi_all(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    """dlog t and dlog(1 - t) for t in F_q minus {0, 1}."""
    t = np.arange(1, ctx.q, dtype=np.int64)
    t = t[ctx.one_minus[t] != 0]
    return ctx.dlog[t], ctx.dlog[ctx.one_minus[t]]


def _jacobi(ctx: FieldCtx, logs, x: int, y: int) -> Cyc:
    """J(omega^x, omega^y) with the convention that eps(0) = 0."""
    n = ctx.n
    lt, l1 = logs
    counts = np.bincount((x * lt + y * l1) % n, minlength=n).astype(np.int64)
    return Cyc(n, counts)


def _binomial(ctx: FieldCtx, logs, a: int, b: int) -> Cyc:
    """(A; B) = -B(-1) J(A, conj B) for A = omega^a, B = omega^b."""
    n = ctx.n
    sign = -1 if (b * (n // 2)) % n == 0 else 1  # -B(-1)
    return _jacobi(ctx, logs, a, -b).scale(sign)


def pp_exact_smallq(d: HGDatum, lam, ctx: FieldCtx, *, code: bool = False) -> ExactValue:
    """P(alpha, beta; lambda; F_q; omega) with the character sum over 1 - q.

    ``lam`` is a rational reduced into F_q, or an element code when
    ``code=True``.  The first integral entry of beta plays the role of B_1.
    """
    if ctx.q > SMALL_Q:
        raise TooLarge(f"q = {ctx.q} exceeds the exact-oracle limit {SMALL_Q}")
    n = ctx.n
    try:
        al = [int(Fraction(a) * n) for a in d.alpha if (Fraction(a) * n).denominator == 1]
        be = [int(Fraction(b) * n) for b in d.beta if (Fraction(b) * n).denominator == 1]
    except ValueError as exc:  # pragma: no cover
        raise CongruenceRequired(str(exc)) from exc
    if len(al) != d.n or len(be) != d.n:
        raise CongruenceRequired(f"q = {ctx.q} is not 1 mod {d.level}")
    first = next(i for i, b in enumerate(d.beta) if Fraction(b).denominator == 1)
    order = [first] + [i for i in range(d.n) if i != first]
    al = [al[i] % n for i in order]
    be = [be[i] % n for i in order]
    c = int(lam) if code else ctx.element(lam)

    logs = _jacobi_all(ctx)
    half = n // 2
    pref = 1
    for a, b in zip(al[1:], be[1:]):
        pref *= -1 if ((a + b) * half) % n == 0 else 1  # -A_i B_i(-1)

    total = Cyc.zero(n)
    if c != 0:
        lc = int(ctx.dlog[c])
        for j in range(n):
            term = _binomial(ctx, logs, (al[0] + j) % n, j)
            for a, b in zip(al[1:], be[1:]):
                term = term * _binomial(ctx, logs, (a + j) % n, (b + j) % n)
            total = total + term.shift(j * lc)
        num = total.scale(pref)
        den = 1 - ctx.q
    else:
        delta = Cyc.const(n, 1)
        for a, b in zip(al[1:], be[1:]):
            delta = delta * _binomial(ctx, logs, a, b)
        num = delta.scale(pref)
        den = 1
    if not num.is_rational():
        raise InternalInconsistency("the exact P-value did not reduce to a rational number")
    value = Fraction(num.rational(), den)
    return ExactValue(value, abs(den), method="cyclotomic-exact")


__all__ = ["SMALL_Q", "pp_exact_smallq"]
