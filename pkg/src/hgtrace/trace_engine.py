"""Hecke traces as minus the sum of local Frobenius traces over X(F_q).

Notation: the weight is k + 2, the field is F_q with q = p^r, and phi is the
quadratic character of F_q.  For a prime field this is the Legendre symbol.
All local terms are rational integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .charsum import h_table
from .cyclo import Cyc
from .errors import RamifiedPrime, Unsupported, WrongPointKind
from .ffield import INF, FieldCtx, make_extension_field
from .groups import HD_246, PointClass, TriangleGroupSpec, check_prime, classify_points, lookup


def f_poly(m: int, s: int, t: int) -> int:
    """F_m(S, T): F_0 = 1, F_1 = S, F_{m+1} = (S - T) F_m - T^2 F_{m-1}."""
    if m < 0:
        raise ValueError("m must be non-negative")
    prev, cur = 1, s
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, (s - t) * cur - t * t * prev
    return cur


def fop_sum(k: int, h, p: int):
    """sum_{j <= k/2} (-1)^j C(k-j, j) p^j h^(k-2j) = sum_i u^i v^(k-i) when u+v = h, uv = p."""
    return sum((-1) ** j * comb(k - j, j) * p**j * h ** (k - 2 * j) for j in range(k // 2 + 1))


def _int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return x.numerator


# ---------------------------------------------------------------------------
# helpers over F_q


def _phi(ctx: FieldCtx, code) -> int:
    return int(ctx.quadratic_char(int(code)))


def _phi_rat(ctx: FieldCtx, value) -> int:
    return ctx.phi(value)


def _mul(ctx: FieldCtx, *codes) -> int:
    out = 1
    for c in codes:
        out = int(ctx.mul(out, int(c)))
    return out


def _inv(ctx: FieldCtx, code) -> int:
    return int(ctx.inv(int(code)))


def _x246(ctx: FieldCtx, code: int) -> int:
    """q * H_q(HD(2,4,6); code), an integer."""
    return _int(ctx.q * h_table(HD_246, ctx)[code])


@lru_cache(maxsize=None)
def _jacobi_alpha(p: int, r: int, denom: int) -> Cyc:
    ctx = make_extension_field(p, r)
    from .charsum import jacobi_sum

    return jacobi_sum(ctx, Fraction(1, denom), Fraction(1, denom))


def alpha_sq_trace(ctx: FieldCtx, rule: str, spec: TriangleGroupSpec | None = None) -> int:
    """Tr(alpha^2) = alpha^2 + conj(alpha)^2 for an elliptic point at a split prime."""
    if rule in ("jacobi3", "jacobi4"):
        a = _jacobi_alpha(ctx.p, ctx.r, 3 if rule == "jacobi3" else 4)
        return (a * a + a.conj() * a.conj()).rational()
    if rule == "quadratic":
        assert spec is not None
        if spec.family == "thm1" and spec.u == 0:
            return _int(h_table(spec.datum, ctx)[1])
        return _phi_rat(ctx, -3) * _x246(ctx, 1)
    raise ValueError(f"unknown alpha rule {rule!r}")


def split_elliptic_sum(k: int, order: int, q: int, s: int) -> int:
    """sum_{|i| <= k/(2N)} q^(k/2) (alpha^2/q)^(iN) from s = Tr(alpha^2), N(alpha^2) = q^2."""
    half = k // 2
    top = k // (2 * order)
    v = [2, s]  # v[j] = alpha^(2j) + conj(alpha)^(2j)
    for _ in range(2, top * order + 1):
        v.append(s * v[-1] - q * q * v[-2])
    return q**half + sum(q ** (half - i * order) * v[i * order] for i in range(1, top + 1))


# ---------------------------------------------------------------------------
# local terms


def generic_term(spec: TriangleGroupSpec, pc: PointClass, ctx: FieldCtx, k: int) -> int:
    """Local trace at a generic point."""
    if pc.kind != "generic":
        raise WrongPointKind(f"{ctx.format(pc.coord)} is {pc.kind}, not generic")
    q = ctx.q
    if spec.family == "gamma1":
        lam = pc.coord
        h = h_table(spec.datum, ctx)[_inv(ctx, lam)]
        return _int(fop_sum(k, h, q))
    if k % 2:
        return 0
    a = generic_a(spec, pc.coord, ctx)
    return f_poly(k // 2, a, q)


def generic_a(spec: TriangleGroupSpec, coord, ctx: FieldCtx) -> int:
    """a_Gamma at a generic point: the weight-3 local trace."""
    q = ctx.q
    if spec.family == "thm1":
        inv = _inv(ctx, coord)
        one_minus = int(ctx.one_minus[inv])
        h = h_table(spec.datum, ctx)[inv]
        if spec.u:
            return _phi(ctx, _mul(ctx, ctx.element(-3), one_minus)) * _int(q * h)
        return _phi(ctx, one_minus) * _int(h)
    if spec.family == "pullback":
        return _pullback_a(spec, coord, ctx)
    raise Unsupported(f"no generic term for {spec.name}")


# For each pullback group: the value c with 1 - y = c s^2 + O(s^3) at the
# point above y = 1, in a local parameter s there.
_BRANCH_OVER_ONE = {"2,6,6": (INF, Fraction(-1, 3)), "3,4,4": (0, Fraction(1))}


def _pullback_y(spec: TriangleGroupSpec, t, ctx: FieldCtx):
    """Image of t under the covering map to the (2,4,6) line, as a code or INF."""
    if spec.name == "2,6,6":
        if t == INF:
            return ctx.element(1)
        if t == 0:
            return INF
        return int(ctx.add(1, ctx.inv(_mul(ctx, 3, t, t))))
    if spec.name == "3,4,4":
        if t == INF:
            return 0
        den = int(ctx.add(_mul(ctx, t, t), 1))
        return INF if den == 0 else _inv(ctx, den)
    if spec.name == "2,2,2,3":
        if t == INF:
            return INF
        return int(ctx.neg(ctx.div(_mul(ctx, t, t), 3)))
    raise Unsupported(f"no covering map for {spec.name}")


def _pullback_a(spec: TriangleGroupSpec, t, ctx: FieldCtx) -> int:
    """phi(-3(1-y)) p H(HD(2,4,6); y) at y = pi(t); special value above y = 1."""
    q = ctx.q
    branch = _BRANCH_OVER_ONE.get(spec.name)
    if branch is not None and t == branch[0]:
        return _phi_rat(ctx, -3 * branch[1]) * _x246(ctx, 1) + _phi_rat(ctx, -6) * q
    y = _pullback_y(spec, t, ctx)
    if y == INF or y in (0, 1):
        raise WrongPointKind(f"t = {ctx.format(t)} lies over a special point")
    one_minus = int(ctx.one_minus[y])
    return _phi(ctx, _mul(ctx, ctx.element(-3), one_minus)) * _x246(ctx, y)


def elliptic_term(spec: TriangleGroupSpec, pc: PointClass, ctx: FieldCtx, k: int) -> int:
    """Local trace at an elliptic point (inert: (-q)^(k/2); split: the alpha sum)."""
    if pc.kind != "elliptic":
        raise WrongPointKind(f"{ctx.format(pc.coord)} is {pc.kind}, not elliptic")
    sp = pc.point
    if sp.rule == "gamma13":
        return gamma13_infinity_term(ctx, k)
    if k % 2:
        return 0
    if ctx.p in _prime_divisors(sp.disc):
        raise RamifiedPrime(f"p = {ctx.p} ramifies in Q(sqrt({sp.disc}))")
    q = ctx.q
    if _phi_rat(ctx, sp.disc) == -1:
        return (-q) ** (k // 2)
    s = alpha_sq_trace(ctx, sp.rule, spec)
    return split_elliptic_sum(k, sp.order, q, s)


def _prime_divisors(d: int) -> set[int]:
    d = abs(d)
    out, f = set(), 2
    while f * f <= d:
        while d % f == 0:
            out.add(f)
            d //= f
        f += 1
    if d > 1:
        out.add(d)
    return out


def _as_ctx(field: FieldCtx | int) -> FieldCtx:
    return field if isinstance(field, FieldCtx) else make_extension_field(int(field), 1)


def gamma13_infinity_term(field: FieldCtx | int, k: int) -> int:
    """Local trace of Gamma_1(3) at lambda = infinity over F_p or a given F_q."""
    ctx = _as_ctx(field)
    q = ctx.q
    if q % 3 == 2:
        return 0 if k % 2 else (-q) ** (k // 2)
    j = _jacobi_alpha(ctx.p, ctx.r, 3)
    jbar = j.conj()
    total = Cyc.zero(3)
    for i in range(k + 1):
        if (k - 2 * i) % 3:
            continue
        e = k - 2 * i
        base, power = (j, e) if e >= 0 else (jbar, -e)
        term = Cyc.const(3, q ** min(i, k - i))
        for _ in range(power):
            term = term * base
        total = total + term
    return (-1) ** k * total.rational()


def cusp_term(spec: TriangleGroupSpec, pc: PointClass, field: FieldCtx | int, k: int) -> int:
    """Local trace at a cusp; ``field`` is a prime p or a field context."""
    ctx = _as_ctx(field)
    if pc.kind != "cusp":
        raise WrongPointKind(f"{ctx.format(pc.coord)} is {pc.kind}, not a cusp")
    rule = pc.point.cusp_rule
    if rule == "one":
        return 1
    if rule == "irregular":
        return (1 + (-1) ** k) // 2
    if rule == "gamma14_one":
        return _phi_rat(ctx, -1) ** k
    if rule == "gamma13_one":
        return _phi_rat(ctx, -3) ** k
    raise ValueError(f"unknown cusp rule {rule!r}")


def local_term(spec: TriangleGroupSpec, pc: PointClass, ctx: FieldCtx, k: int) -> int:
    if pc.kind == "generic":
        return generic_term(spec, pc, ctx, k)
    if pc.kind == "elliptic":
        return elliptic_term(spec, pc, ctx, k)
    return cusp_term(spec, pc, ctx, k)


# ---------------------------------------------------------------------------


@dataclass
class Contribution:
    coord: str
    kind: str
    value: int


@dataclass
class TraceReport:
    """Per-point breakdown of the local sum L; the Hecke trace is -L."""

    group: str
    weight: int
    p: int
    r: int = 1
    contributions: list[Contribution] = field(default_factory=list)
    components: dict[str, int] = field(default_factory=dict)
    variants: dict[str, int] = field(default_factory=dict)

    @property
    def local_sum(self) -> int:
        if self.components:
            return -self.trace
        return sum(c.value for c in self.contributions)

    @property
    def trace(self) -> int:
        if self.components:
            return sum(self.components.values())
        return -self.local_sum

    def by_kind(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.contributions:
            out[c.kind] = out.get(c.kind, 0) + c.value
        return out

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "weight": self.weight,
            "p": self.p,
            "r": self.r,
            "contributions": [
                {"coord": c.coord, "kind": c.kind, "value": c.value} for c in self.contributions
            ],
            "components": dict(self.components),
            "trace": self.trace,
            "variants": dict(self.variants),
        }


def local_sum(spec: TriangleGroupSpec, k: int, ctx: FieldCtx) -> TraceReport:
    """Local traces over every point of P^1(F_q)."""
    rep = TraceReport(spec.name, k + 2, ctx.p, ctx.r)
    for pc in classify_points(spec, ctx):
        rep.contributions.append(Contribution(ctx.format(pc.coord), pc.kind, local_term(spec, pc, ctx, k)))
    return rep


def _admissible(spec: TriangleGroupSpec, k: int) -> None:
    if k < 1:
        raise Unsupported("weights below 3 are not handled")
    if k % 2 and spec.contains_minus_id:
        raise Unsupported(f"{spec.name} contains -I, so only even k occur")


def hecke_trace(spec: TriangleGroupSpec | str, k: int, p: int) -> TraceReport:
    """Tr(T_p | S_{k+2}(Gamma)) as a full report."""
    if isinstance(spec, str):
        spec = lookup(spec)
    _admissible(spec, k)
    check_prime(spec, p)
    if spec.family == "composite":
        rep = TraceReport(spec.name, k + 2, p)
        for name, coeff in spec.components:
            rep.components[name] = coeff * hecke_trace(lookup(name), k, p).trace
        return rep
    ctx = make_extension_field(p, 1)
    rep = local_sum(spec, k, ctx)
    if spec.name == "2,4,6" and k == 6:
        # The closed form for -a_p(h_4^2) written with the order-2 point
        # folded into p((pH(1))^2 - p^2) carries an extra phi(-6) p^3.
        rep.variants["h4_squared_display"] = rep.trace - _phi_rat(ctx, -6) * p**3
    return rep


__all__ = [
    "TraceReport",
    "alpha_sq_trace",
    "cusp_term",
    "elliptic_term",
    "f_poly",
    "fop_sum",
    "gamma13_infinity_term",
    "generic_term",
    "hecke_trace",
    "local_sum",
    "split_elliptic_sum",
]
