"""Registry of arithmetic triangle groups and their special points.

Each group carries a coordinate on its genus-zero curve: lambda for the
groups attached directly to a hypergeometric datum, and t for the three
index-2 subgroups of (2,4,6), which are handled through the covering map to
the lambda-line of (2,4,6).  Special points sit either at a rational
coordinate, at infinity, or at the roots of t^2 = c; the latter are only
counted when the square root exists in the field at hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import BadPrime, Unsupported, UnknownGroup
from .ffield import INF, FieldCtx
from .hgdata import HGDatum, build_datum

HD_246 = build_datum(["1/2", "1/4", "3/4"], [1, "5/6", "7/6"])


@dataclass(frozen=True)
class SpecialPoint:
    """An elliptic point or cusp.

    ``where`` is ``("at", value)`` for a rational coordinate, ``("inf",)``
    for infinity, or ``("sq", c)`` for the two roots of t^2 = c.
    ``rule`` selects how alpha^2 is obtained at split primes: ``"jacobi3"``,
    ``"jacobi4"`` or ``"quadratic"``.  ``cusp_rule`` names the cusp
    contribution for groups without -I.
    """

    kind: str
    where: tuple
    order: int = 0
    disc: int = 0
    rule: str = ""
    cusp_rule: str = "one"
    label: str = ""


@dataclass(frozen=True)
class TriangleGroupSpec:
    name: str
    signature: tuple
    family: str  # "thm1", "gamma1", "pullback" or "composite"
    datum: HGDatum | None
    points: tuple[SpecialPoint, ...]
    u: int = 0
    contains_minus_id: bool = True
    level: int = 0  # congruence level for the Gamma_1 groups
    pullback: Callable[[Fraction], Fraction] | None = field(default=None, compare=False, repr=False)
    pullback_text: str = ""
    components: tuple[tuple[str, int], ...] = ()
    aliases: tuple[str, ...] = ()

    @property
    def elliptic_orders(self) -> list[int]:
        out = []
        for sp in self.points:
            if sp.kind == "elliptic":
                out.extend([sp.order] * (2 if sp.where[0] == "sq" else 1))
        return out

    @property
    def regular_cusps(self) -> int:
        return sum(1 for sp in self.points if sp.kind == "cusp" and sp.cusp_rule != "irregular")

    @property
    def irregular_cusps(self) -> int:
        return sum(1 for sp in self.points if sp.kind == "cusp" and sp.cusp_rule == "irregular")

    @property
    def bad_primes(self) -> set[int]:
        """Primes dividing 6 M(HD); every registry datum has M | 12."""
        return {2, 3}


def _ell(where, order, disc, rule, label=""):
    return SpecialPoint("elliptic", where, order, disc, rule, label=label)


def _cusp(where, rule="one", label=""):
    return SpecialPoint("cusp", where, cusp_rule=rule, label=label)


def _thm1(name, sig, alpha, beta, points, u=0, aliases=()):
    return TriangleGroupSpec(
        name=name,
        signature=sig,
        family="thm1",
        datum=build_datum(alpha, beta),
        points=tuple(points),
        u=u,
        aliases=aliases,
    )


_ONE = ("at", Fraction(1))
_ZERO = ("at", Fraction(0))
_INF = ("inf",)

_REGISTRY: list[TriangleGroupSpec] = [
    _thm1(
        "2,inf,inf",
        (2, "inf", "inf"),
        ["1/2", "1/2", "1/2"],
        [1, 1, 1],
        [_ell(_ONE, 2, -4, "quadratic"), _cusp(_ZERO), _cusp(_INF)],
    ),
    _thm1(
        "2,3,inf",
        (2, 3, "inf"),
        ["1/2", "1/6", "5/6"],
        [1, 1, 1],
        [_ell(_ONE, 2, -4, "quadratic"), _ell(_INF, 3, -3, "jacobi3"), _cusp(_ZERO)],
    ),
    _thm1(
        "2,4,inf",
        (2, 4, "inf"),
        ["1/2", "1/4", "3/4"],
        [1, 1, 1],
        [_ell(_ONE, 2, -8, "quadratic"), _ell(_INF, 4, -4, "jacobi4"), _cusp(_ZERO)],
    ),
    _thm1(
        "2,6,inf",
        (2, 6, "inf"),
        ["1/2", "1/3", "2/3"],
        [1, 1, 1],
        [_ell(_ONE, 2, -3, "quadratic"), _ell(_INF, 6, -3, "jacobi3"), _cusp(_ZERO)],
    ),
    _thm1(
        "2,4,6",
        (2, 4, 6),
        ["1/2", "1/4", "3/4"],
        [1, "5/6", "7/6"],
        [_ell(_ONE, 2, -24, "quadratic"), _ell(_INF, 4, -4, "jacobi4"), _ell(_ZERO, 6, -3, "jacobi3")],
        u=1,
    ),
    TriangleGroupSpec(
        name="gamma1_3",
        signature=(3, "inf", "inf"),
        family="gamma1",
        datum=build_datum(["1/3", "2/3"], [1, 1]),
        points=(
            SpecialPoint("elliptic", _INF, 3, -3, "gamma13"),
            _cusp(_ONE, "gamma13_one"),
            _cusp(_ZERO, "one"),
        ),
        contains_minus_id=False,
        level=3,
        aliases=("3,inf,inf", "gamma1(3)"),
    ),
    TriangleGroupSpec(
        name="gamma1_4",
        signature=("inf", "inf", "inf"),
        family="gamma1",
        datum=build_datum(["1/2", "1/2"], [1, 1]),
        points=(
            _cusp(_INF, "irregular"),
            _cusp(_ONE, "gamma14_one"),
            _cusp(_ZERO, "one"),
        ),
        contains_minus_id=False,
        level=4,
        aliases=("inf,inf,inf", "gamma1(4)"),
    ),
    TriangleGroupSpec(
        name="2,6,6",
        signature=(2, 6, 6),
        family="pullback",
        datum=HD_246,
        points=(
            _ell(_ZERO, 2, -4, "jacobi4"),
            _ell(("sq", Fraction(-1, 3)), 6, -3, "jacobi3"),
        ),
        u=1,
        pullback=lambda t: 1 + Fraction(1) / (3 * t * t),
        pullback_text="lambda = 1 + 1/(3 t^2)",
    ),
    TriangleGroupSpec(
        name="3,4,4",
        signature=(3, 4, 4),
        family="pullback",
        datum=HD_246,
        points=(
            _ell(_INF, 3, -3, "jacobi3"),
            _ell(("sq", Fraction(-1)), 4, -4, "jacobi4"),
        ),
        u=1,
        pullback=lambda t: Fraction(1) / (1 + t * t),
        pullback_text="lambda = 1/(1 + t^2)",
    ),
    TriangleGroupSpec(
        name="2,2,2,3",
        signature=(2, 2, 2, 3),
        family="pullback",
        datum=HD_246,
        points=(
            _ell(("sq", Fraction(-3)), 2, -24, "quadratic"),
            _ell(_INF, 2, -4, "jacobi4"),
            _ell(_ZERO, 3, -3, "jacobi3"),
        ),
        u=1,
        pullback=lambda t: -t * t / 3,
        pullback_text="lambda = -t^2/3",
    ),
    TriangleGroupSpec(
        name="2,2,3,3",
        signature=(2, 2, 3, 3),
        family="composite",
        datum=None,
        points=(),
        components=(("2,6,6", 1), ("3,4,4", 1), ("2,2,2,3", 1), ("2,4,6", -2)),
    ),
]

_BY_NAME: dict[str, TriangleGroupSpec] = {}
for _spec in _REGISTRY:
    for _key in (_spec.name, *_spec.aliases):
        _BY_NAME[_key] = _spec


def _normalise(name: str) -> str:
    s = name.strip().lower().replace(" ", "").replace("(", "").replace(")", "")
    s = s.replace("infinity", "inf").replace("∞", "inf").replace("oo", "inf")
    s = s.replace("γ", "gamma").replace("Γ", "gamma")
    return s


_NORMALISED = {_normalise(k): v for k, v in _BY_NAME.items()}
_NORMALISED.update({"gamma13": _BY_NAME["gamma1_3"], "gamma14": _BY_NAME["gamma1_4"]})


def lookup(name: str) -> TriangleGroupSpec:
    """Registry entry by name, e.g. ``"2,4,6"``, ``"gamma1_3"`` or ``"inf,inf,inf"``."""
    spec = _NORMALISED.get(_normalise(name))
    if spec is None:
        raise UnknownGroup(f"unknown group {name!r}")
    return spec


def registry() -> list[TriangleGroupSpec]:
    return list(_REGISTRY)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointClass:
    """A point of P^1(F_q) with its role in the trace formula.

    ``coord`` is an element code or :data:`INF`.
    """

    coord: int | str
    kind: str  # "generic", "elliptic" or "cusp"
    point: SpecialPoint | None = None

    @property
    def order(self) -> int:
        return self.point.order if self.point else 0

    @property
    def disc(self) -> int:
        return self.point.disc if self.point else 0


def check_prime(spec: TriangleGroupSpec, p: int) -> None:
    if p in spec.bad_primes:
        raise BadPrime(f"p = {p} is bad for {spec.name}")


def _locate(sp: SpecialPoint, ctx: FieldCtx) -> list:
    tag = sp.where[0]
    if tag == "inf":
        return [INF]
    if tag == "at":
        return [ctx.element(sp.where[1])]
    c = ctx.element(sp.where[1])
    root = ctx.sqrt(c)
    if root is None:
        return []
    other = int(ctx.neg(root))
    return sorted({root, other})


def classify_points(spec: TriangleGroupSpec, ctx: FieldCtx) -> list[PointClass]:
    """Classify every point of P^1(F_q) (codes 0..q-1, then infinity)."""
    if spec.family == "composite":
        raise Unsupported(f"{spec.name} is handled by inclusion-exclusion over its components")
    check_prime(spec, ctx.p)
    special: dict = {}
    for sp in spec.points:
        for c in _locate(sp, ctx):
            special[c] = sp
    out = []
    for c in [*range(ctx.q), INF]:
        sp = special.get(c)
        out.append(PointClass(c, sp.kind if sp else "generic", sp))
    return out


def dim_cusp_forms(spec: TriangleGroupSpec, weight: int) -> int:
    """Dimension of S_w(Gamma) from the genus-zero valence formula."""
    w = weight
    if spec.family == "composite":
        orders = [e for e in spec.signature if e != "inf"]
    else:
        orders = spec.elliptic_orders
    elliptic = -(w - 1) + sum((w * (e - 1)) // (2 * e) for e in orders)
    if w % 2 == 0:
        d = elliptic + (w // 2 - 1) * (spec.regular_cusps + spec.irregular_cusps)
    elif spec.contains_minus_id:
        return 0
    else:
        d = elliptic + ((w - 2) * spec.regular_cusps) // 2 + ((w - 1) * spec.irregular_cusps) // 2
    return max(d, 0)
