"""Gauss sums, Jacobi sums and the finite hypergeometric functions P and H.

Every sum is evaluated in a few auxiliary prime fields F_ell with
ell = 1 mod lcm(p, q - 1), where the roots of unity zeta_p and zeta_{q-1}
exist, and a known-integral multiple of the answer is recovered by CRT.
A whole table over all lambda in F_q costs one Gauss table plus one DFT per
auxiliary prime.

Three routes to H_q are provided and are computed independently:

``"gauss"``
    the defining sum over characters, needing q = 1 mod M;
``"hq"``
    the gamma-vector form for data defined over Q, valid for any q prime
    to M;
``"pp"``
    the P-function from Jacobi sums, divided by its normaliser.

The P-function is evaluated from Jacobi-sum binomials with its character
sum normalised by 1/(1 - q).  With that sign P = H * prod_{i>=2}
omega^(a_i)(-1) J(A_i, conj B_i) holds for every lambda != 0, and
P({1/2,1/2},{1,1}; 1; F_5) = -1.  (A 1/(q - 1) normalisation gives the
negative of both.)

At lambda = 0 the character sums are evaluated with the convention
eps(0) = 1 in the first two routes, which leaves only the trivial-character
term and gives 1/(1 - q).  The P-function instead kills every term through
chi(0) = 0 and keeps its delta contribution, so the P route gives 1 there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .cyclo import Cyc
from .errors import (
    BadCharacteristic,
    CharacterNotDefined,
    CongruenceRequired,
    MalformedDatum,
    RequiresRationality,
    Unsupported,
)
from .ffield import FieldCtx, Scalar, make_extension_field
from .hgdata import HGDatum, gamma_vector
from .modular import aux_modulus, dft_mod, lift_checked, power_table, primes_for_bound, root_of_unity

Route = Literal["hq", "gauss", "pp"]
ROUTES: tuple[str, ...] = ("hq", "gauss", "pp")


@dataclass(frozen=True)
class AuxPrimeCtx:
    """Auxiliary primes ell_i with fixed roots of unity of orders q-1 and p.

    The product of all primes except the trailing ``guard`` ones exceeds
    2 * ``bound``; the guard primes only check the lift.
    """

    p: int
    n: int
    primes: tuple[int, ...]
    zeta: tuple[int, ...]
    xi: tuple[int, ...] | None
    bound: int
    guard: int = 1

    @property
    def zeta_powers(self) -> list[np.ndarray]:
        return [power_table(z, self.n, ell) for z, ell in zip(self.zeta, self.primes)]


def make_aux(ctx: FieldCtx, bound: int, *, additive: bool = True, guard: int = 1) -> AuxPrimeCtx:
    """Choose auxiliary primes for a target integer of absolute value <= bound."""
    n = ctx.n
    modulus = aux_modulus(ctx.p, n, additive)
    primes = primes_for_bound(bound, modulus, guard=guard)
    zeta = tuple(root_of_unity(ell, n) for ell in primes)
    xi = tuple(root_of_unity(ell, ctx.p) for ell in primes) if additive else None
    return AuxPrimeCtx(ctx.p, n, tuple(primes), zeta, xi, bound, guard)


@dataclass(frozen=True)
class ExactValue:
    """An exact rational together with the residues it was lifted from.

    ``scale * value`` is the integer that was reconstructed; ``residues[i]``
    is its image modulo ``primes[i]``.
    """

    value: Fraction
    scale: int
    residues: tuple[int, ...] = ()
    primes: tuple[int, ...] = ()
    bound: int = 0
    method: str = "crt-lift"

    @property
    def integer_lift(self) -> int:
        x = self.value * self.scale
        assert x.denominator == 1
        return x.numerator

    def __int__(self) -> int:
        if self.value.denominator != 1:
            raise ValueError(f"{self.value} is not an integer")
        return self.value.numerator


# ---------------------------------------------------------------------------
# Gauss and Jacobi sums

_GAUSS_CACHE: dict[tuple, np.ndarray] = {}


def gauss_table(ctx: FieldCtx, aux: AuxPrimeCtx) -> np.ndarray:
    """Residues of g(omega^k) for k = 0..q-2, one row per auxiliary prime.

    g(omega^k) = sum_j xi^Tr(g^j) zeta^(kj) is a DFT over the exponent j.
    """
    if aux.xi is None:
        raise ValueError("auxiliary context was built without p-th roots of unity")
    key = (ctx.key, aux.primes)
    hit = _GAUSS_CACHE.get(key)
    if hit is not None:
        return hit
    n = ctx.n
    rows = []
    tr = ctx.trace_table[ctx.exp]
    for ell, xi, zpow in zip(aux.primes, aux.xi, aux.zeta_powers):
        xipow = power_table(xi, ctx.p, ell)
        rows.append(dft_mod(xipow[tr], zpow, ell))
    table = np.stack(rows) if rows else np.zeros((0, n), dtype=np.int64)
    table.setflags(write=False)
    _GAUSS_CACHE[key] = table
    return table


def _exponent(ctx: FieldCtx, a: Fraction) -> int:
    num = Fraction(a) * ctx.n
    if num.denominator != 1:
        raise CharacterNotDefined(f"(q-1)*{a} is not an integer for q = {ctx.q}")
    return int(num) % ctx.n


def jacobi_sum(ctx: FieldCtx, a: Scalar, b: Scalar) -> Cyc:
    """J(omega^((q-1)a), omega^((q-1)b)) as an element of Z[zeta_M'].

    M' is the least common denominator of a and b.  The value is a direct
    sum over t in F_q minus {0, 1}, accumulated in the group ring.
    """
    a, b = Fraction(a), Fraction(b)
    ea, eb = _exponent(ctx, a), _exponent(ctx, b)
    m = max(1, np.lcm(a.denominator, b.denominator))
    m = int(m)
    t = np.arange(2, ctx.q, dtype=np.int64)
    t = t[ctx.one_minus[t] != 0]
    e = (ea * ctx.dlog[t] + eb * ctx.dlog[ctx.one_minus[t]]) % ctx.n
    step = ctx.n // m
    counts = np.bincount(e // step, minlength=m).astype(np.int64)
    return Cyc(m, counts)


# ---------------------------------------------------------------------------
# H and P tables


def _datum_exponents(d: HGDatum, ctx: FieldCtx) -> tuple[list[int], list[int]]:
    try:
        al = [_exponent(ctx, a) for a in d.alpha]
        be = [_exponent(ctx, b) for b in d.beta]
    except CharacterNotDefined as exc:
        raise CongruenceRequired(f"q = {ctx.q} is not 1 mod {d.level}") from exc
    return al, be


def _paired(d: HGDatum) -> HGDatum:
    """Reorder so that beta_1 is integral, keeping alpha_i paired with beta_i."""
    j = next(i for i, b in enumerate(d.beta) if b.denominator == 1)
    if j == 0:
        return d
    al, be = list(d.alpha), list(d.beta)
    al[0], al[j] = al[j], al[0]
    be[0], be[j] = be[j], be[0]
    return HGDatum(tuple(al), tuple(be))


def _check_char(d: HGDatum, ctx: FieldCtx) -> None:
    if d.level % ctx.p == 0:
        raise BadCharacteristic(f"p = {ctx.p} divides the level {d.level}")


def _default_bound(d: HGDatum, ctx: FieldCtx) -> int:
    return d.n * ctx.q ** d.n


def _lambda_index(ctx: FieldCtx, shift: int) -> np.ndarray:
    """For every nonzero code x: (dlog x + shift) mod (q-1)."""
    codes = np.arange(1, ctx.q, dtype=np.int64)
    return (ctx.dlog[codes] + shift) % ctx.n


def _h_residues_gauss(d: HGDatum, ctx: FieldCtx, aux: AuxPrimeCtx) -> np.ndarray:
    n = ctx.n
    al, be = _datum_exponents(d, ctx)
    gt = gauss_table(ctx, aux)
    k = np.arange(n, dtype=np.int64)
    out = np.zeros((len(aux.primes), ctx.q), dtype=np.int64)
    dlog_sign = (n // 2) * (d.n % 2)  # dlog((-1)^len)
    idx = _lambda_index(ctx, dlog_sign)
    for i, (ell, zpow) in enumerate(zip(aux.primes, aux.zeta_powers)):
        g = gt[i]
        prod = np.ones(n, dtype=np.int64)
        norm = 1
        for a, b in zip(al, be):
            prod = prod * g[(a + k) % n] % ell
            prod = prod * g[(-b - k) % n] % ell
            norm = norm * int(g[a]) % ell * int(g[(-b) % n]) % ell
        prod = prod * pow(norm, -1, ell) % ell
        s = dft_mod(prod, zpow, ell)
        inv = pow((1 - ctx.q) % ell, -1, ell)
        out[i, 1:] = s[idx] * inv % ell
        out[i, 0] = inv  # only the trivial character survives
    return out


def _h_residues_hq(d: HGDatum, ctx: FieldCtx, aux: AuxPrimeCtx) -> np.ndarray:
    n = ctx.n
    gv = gamma_vector(d)
    nconst = ctx.element(gv.N)
    if nconst == 0:
        raise BadCharacteristic(f"N = {gv.N} vanishes modulo {ctx.p}")
    gt = gauss_table(ctx, aux)
    m = np.arange(n, dtype=np.int64)
    cnt_p = sum(((pj * m) % n == 0).astype(np.int64) for pj in gv.p_list)
    cnt_q = sum(((qk * m) % n == 0).astype(np.int64) for qk in gv.q_list)
    s = np.minimum(cnt_p, cnt_q)
    drop = s[0] - s  # q^(s(m) - s(0)) = q^(-drop)
    sign = -1 if (len(gv.p_list) + len(gv.q_list)) % 2 else 1
    idx = _lambda_index(ctx, -int(ctx.dlog[nconst]))
    out = np.zeros((len(aux.primes), ctx.q), dtype=np.int64)
    for i, (ell, zpow) in enumerate(zip(aux.primes, aux.zeta_powers)):
        g = gt[i]
        c = np.ones(n, dtype=np.int64)
        for pj in gv.p_list:
            c = c * g[(pj * m) % n] % ell
        for qk in gv.q_list:
            c = c * g[(-qk * m) % n] % ell
        qinv = pow(ctx.q, -1, ell)
        qpow = power_table(qinv, int(drop.max()) + 1, ell)
        c = c * qpow[drop] % ell
        total = dft_mod(c, zpow, ell)
        pref = sign * pow((1 - ctx.q) % ell, -1, ell) % ell
        out[i, 1:] = total[idx] * pref % ell
        out[i, 0] = pref * int(c[0]) % ell
    return out


def _jacobi_rows(ctx: FieldCtx, a: int, b: int, ell: int, zpow: np.ndarray) -> np.ndarray:
    """J(omega^(a+j), omega^(-b-j)) mod ell for j = 0..q-2."""
    n = ctx.n
    t = np.arange(2, ctx.q, dtype=np.int64)
    t = t[ctx.one_minus[t] != 0]
    dt = ctx.dlog[t]
    d1 = ctx.dlog[ctx.one_minus[t]]
    w = np.zeros(n, dtype=np.int64)
    np.add.at(w, (dt - d1) % n, zpow[(a * dt - b * d1) % n])
    return dft_mod(w % ell, zpow, ell)


@dataclass(frozen=True)
class _PParts:
    p_res: np.ndarray  # (L, q) residues of P, including lambda = 0
    norm: tuple[int, ...]  # residues of prod_{i>=2} omega^(a_i)(-1) J(A_i, conj B_i)


def _p_parts(d: HGDatum, ctx: FieldCtx, aux: AuxPrimeCtx) -> _PParts:
    if not d.primitive:
        raise MalformedDatum(f"datum {d} is not primitive")
    d = _paired(d)
    n = ctx.n
    al, be = _datum_exponents(d, ctx)
    j = np.arange(n, dtype=np.int64)
    sgn_j = np.where(j % 2 == 0, 1, -1)
    res = np.zeros((len(aux.primes), ctx.q), dtype=np.int64)
    norms = []
    for i, (ell, zpow) in enumerate(zip(aux.primes, aux.zeta_powers)):
        t_prod = np.ones(n, dtype=np.int64)
        delta = 1
        norm = 1
        pref = 1
        for idx, (a, b) in enumerate(zip(al, be)):
            jr = _jacobi_rows(ctx, a, b, ell, zpow)
            sign = -(sgn_j if b % 2 == 0 else -sgn_j)  # -(-1)^(b+j)
            t_prod = t_prod * (sign % ell) % ell * jr % ell
            if idx == 0:
                continue
            pref = pref * (-((-1) ** ((a + b) % 2))) % ell
            delta = delta * (-((-1) ** (b % 2))) % ell * int(jr[0]) % ell
            norm = norm * ((-1) ** (a % 2)) % ell * int(jr[0]) % ell
        total = dft_mod(t_prod, zpow, ell)
        # the character sum is normalised by 1/(1-q); see the module docstring
        inv_n = pow((1 - ctx.q) % ell, -1, ell)
        res[i, 1:] = total[_lambda_index(ctx, 0)] * inv_n % ell * pref % ell
        res[i, 0] = pref * delta % ell
        norms.append(norm % ell)
    return _PParts(res, tuple(norms))


def _h_residues_pp(d: HGDatum, ctx: FieldCtx, aux: AuxPrimeCtx) -> np.ndarray:
    parts = _p_parts(d, ctx, aux)
    out = np.empty_like(parts.p_res)
    for i, ell in enumerate(aux.primes):
        out[i] = parts.p_res[i] * pow(parts.norm[i], -1, ell) % ell
    return out


@dataclass(frozen=True)
class HTable:
    """H_q(d; lambda) for every element code lambda of F_q."""

    datum: HGDatum
    ctx: FieldCtx
    route: str
    aux: AuxPrimeCtx
    residues: np.ndarray = field(repr=False)
    scales: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __getitem__(self, code: int) -> Fraction:
        return self.values[int(code)]

    def exact(self, code: int) -> ExactValue:
        code = int(code)
        return ExactValue(
            value=self.values[code],
            scale=int(self.scales[code]),
            residues=tuple(int(r) for r in self.residues[:, code]),
            primes=self.aux.primes,
            bound=self.aux.bound,
            method="crt-lift",
        )


_H_CACHE: dict[tuple, HTable] = {}


def _lift_table(res: np.ndarray, scales: list[int], aux: AuxPrimeCtx) -> np.ndarray:
    scaled = np.empty_like(res)
    for i, ell in enumerate(aux.primes):
        sc = np.array([s % ell for s in scales], dtype=np.int64)
        scaled[i] = res[i] * sc % ell
    ints = lift_checked(scaled, list(aux.primes), aux.guard, aux.bound)
    return np.array([Fraction(int(x), s) for x, s in zip(ints, scales)], dtype=object)


def h_table(d: HGDatum, ctx: FieldCtx, route: Route = "hq", *, guard: int = 1) -> HTable:
    """Exact H_q(d; lambda) for all lambda in F_q via the chosen route.

    ``guard`` auxiliary primes beyond those the CRT bound needs are used
    only to confirm the lift.
    """
    if guard < 1:
        raise ValueError("at least one guard prime is required")
    key = (d, ctx.key, route, guard)
    hit = _H_CACHE.get(key)
    if hit is not None:
        return hit
    _check_char(d, ctx)
    if not d.primitive:
        raise MalformedDatum(f"datum {d} is not primitive")
    if not d.rational:
        raise RequiresRationality(f"H_q({d}) is not rational; use the residue interface")
    bound = _default_bound(d, ctx)
    if route == "pp":
        aux = make_aux(ctx, bound, additive=False, guard=guard)
        res = _h_residues_pp(d, ctx, aux)
    elif route == "gauss":
        aux = make_aux(ctx, bound, guard=guard)
        res = _h_residues_gauss(d, ctx, aux)
    elif route == "hq":
        aux = make_aux(ctx, bound, guard=guard)
        res = _h_residues_hq(d, ctx, aux)
    else:
        raise ValueError(f"unknown route {route!r}")
    qe = ctx.q ** d.weight_exponent
    scales = [ctx.q - 1] + [qe] * (ctx.q - 1)
    values = _lift_table(res, scales, aux)
    table = HTable(d, ctx, route, aux, res, np.array(scales, dtype=object), values)
    _H_CACHE[key] = table
    return table


def _code(ctx: FieldCtx, lam: Scalar | int, code: bool) -> int:
    if code:
        c = int(lam)
        if not 0 <= c < ctx.q:
            raise ValueError(f"code {c} outside F_{ctx.q}")
        return c
    return ctx.element(lam)


def h_function(
    d: HGDatum, lam: Scalar, ctx: FieldCtx, *, route: Route = "hq", code: bool = False, guard: int = 1
) -> ExactValue:
    """Exact H_q(d; lambda).

    ``lam`` is a rational reduced into the prime field, or an element code
    when ``code=True``.
    """
    return h_table(d, ctx, route, guard=guard).exact(_code(ctx, lam, code))


def h_residues(d: HGDatum, ctx: FieldCtx, aux: AuxPrimeCtx, route: Route = "gauss") -> np.ndarray:
    """Unlifted residues of H_q for all codes; works for data not over Q."""
    _check_char(d, ctx)
    if route == "gauss":
        return _h_residues_gauss(d, ctx, aux)
    if route == "pp":
        return _h_residues_pp(d, ctx, aux)
    if route == "hq":
        return _h_residues_hq(d, ctx, aux)
    raise ValueError(f"unknown route {route!r}")


def pp_residues(d: HGDatum, ctx: FieldCtx, aux: AuxPrimeCtx) -> np.ndarray:
    """Residues of P(d; lambda; F_q; omega) for every code, one row per prime.

    The datum is reordered so that its first integral beta entry comes first.
    """
    _check_char(d, ctx)
    return _p_parts(d, ctx, aux).p_res


def pp_function(d: HGDatum, lam: Scalar, ctx: FieldCtx, *, code: bool = False) -> ExactValue:
    """Exact P(d; lambda; F_q; omega).

    P is a rational number whenever every beta entry is integral: the
    normalising Jacobi sums are then J(A, eps) = -1.  Otherwise P lies in a
    cyclotomic field and :class:`Unsupported` is raised; :func:`pp_residues`
    still gives its images.
    """
    _check_char(d, ctx)
    _datum_exponents(d, ctx)
    if any(b.denominator != 1 for b in d.beta):
        raise Unsupported("P is not rational for this datum; use pp_residues")
    c = _code(ctx, lam, code)
    bound = _default_bound(d, ctx)
    aux = make_aux(ctx, bound, additive=False)
    res = pp_residues(d, ctx, aux)[:, c]
    scale = (ctx.q - 1) if c == 0 else ctx.q ** d.weight_exponent
    scaled = np.array([int(r) * scale % ell for r, ell in zip(res, aux.primes)], dtype=np.int64)
    val = int(lift_checked(scaled[:, None], list(aux.primes), aux.guard, bound)[0])
    return ExactValue(Fraction(val, scale), scale, tuple(int(r) for r in res), aux.primes, bound)


def hasse_davenport_power(h_p: int | Fraction, p: int, r: int, uv: int | None = None) -> Fraction:
    """u^r + v^r for the roots of T^2 - h_p T + uv (uv defaults to p)."""
    uv = p if uv is None else uv
    prev, cur = Fraction(2), Fraction(h_p)
    if r == 0:
        return prev
    for _ in range(r - 1):
        prev, cur = cur, h_p * cur - uv * prev
    return cur


def h_extension_consistency(d: HGDatum, t: Scalar, p: int, r: int = 2) -> bool:
    """Compare H_{p^r}(d; t) with the r-th power sum of the roots of T^2 - H_p T + p."""
    if d.n != 2 or any(b.denominator != 1 for b in d.beta):
        raise Unsupported("extension consistency is implemented for length-2 data with beta = {1,1}")
    base = make_extension_field(p, 1)
    code = base.element(t)
    if code in (0, 1):
        raise ValueError("t must avoid 0 and 1")
    hp = h_table(d, base)[code]
    ext = make_extension_field(p, r)
    hq = h_table(d, ext)[ext.element(t)]
    return hq == hasse_davenport_power(hp, p, r)
