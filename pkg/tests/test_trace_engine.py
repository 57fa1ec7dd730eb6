from fractions import Fraction as F

import pytest
from sympy import primerange

from hgtrace.charsum import h_function
from hgtrace.errors import BadPrime, WrongPointKind
from hgtrace.ffield import INF, legendre, make_prime_field
from hgtrace.groups import HD_246, PointClass, classify_points, dim_cusp_forms, lookup
from hgtrace.oracles.eta import DELTA, LEVEL2_WT8, eta_ap
from hgtrace.trace_engine import (
    cusp_term,
    elliptic_term,
    f_poly,
    fop_sum,
    gamma13_infinity_term,
    generic_term,
    hecke_trace,
)


def _point(spec, ctx, coord):
    return next(pc for pc in classify_points(spec, ctx) if pc.coord == coord)


def test_f_poly_examples():
    assert f_poly(1, 5, 7) == 5
    assert f_poly(0, 123, -4) == 1
    assert f_poly(2, 3, 2) == -1


def test_fop_sum_examples():
    assert fop_sum(1, 9, 7) == 9
    assert fop_sum(2, 9, 7) == 81 - 7
    u, v = 3, 5
    for k in range(8):
        assert fop_sum(k, u + v, u * v) == sum(u**i * v ** (k - i) for i in range(k + 1))


def test_generic_246_weight4():
    spec, p = lookup("2,4,6"), 11
    ctx = make_prime_field(p)
    for lam in range(2, p):
        pc = _point(spec, ctx, lam)
        inv = pow(lam, -1, p)
        expected = legendre(-3 * (1 - inv), p) * p * h_function(HD_246, inv, ctx).value
        assert generic_term(spec, pc, ctx, 2) == expected


def test_generic_266_at_infinity():
    spec = lookup("2,6,6")
    for p in (7, 11, 13):
        ctx = make_prime_field(p)
        pc = _point(spec, ctx, INF)
        assert pc.kind == "generic"
        expected = p * h_function(HD_246, 1, ctx).value + legendre(-6, p) * p
        assert generic_term(spec, pc, ctx, 2) == expected


def test_generic_gamma14_weight3():
    spec, ctx = lookup("gamma1_4"), make_prime_field(7)
    pc = _point(spec, ctx, 3)
    assert generic_term(spec, pc, ctx, 1) == h_function(spec.datum, F(1, 3), ctx).value


def test_generic_rejects_special_point():
    spec, ctx = lookup("2,4,6"), make_prime_field(7)
    with pytest.raises(WrongPointKind):
        generic_term(spec, _point(spec, ctx, 1), ctx, 2)


@pytest.mark.parametrize("name", ["2,inf,inf", "2,3,inf", "2,4,inf", "2,6,inf", "2,4,6", "2,6,6", "3,4,4", "2,2,2,3"])
def test_elliptic_weight4_is_legendre_times_p(name):
    spec = lookup(name)
    for p in primerange(5, 60):
        ctx = make_prime_field(p)
        for pc in classify_points(spec, ctx):
            if pc.kind == "elliptic":
                assert elliptic_term(spec, pc, ctx, 2) == legendre(pc.disc, p) * p


def test_elliptic_order2_weight8_split():
    spec = lookup("2,4,6")
    for p in primerange(5, 80):
        if legendre(-6, p) != 1:
            continue
        ctx = make_prime_field(p)
        c = legendre(-3, p) * p * h_function(HD_246, 1, ctx).value
        assert elliptic_term(spec, _point(spec, ctx, 1), ctx, 6) == p * c * c - p**3


def test_elliptic_order4_weight8_inert():
    spec = lookup("2,4,6")
    for p in (7, 11, 19, 23):
        ctx = make_prime_field(p)
        assert elliptic_term(spec, _point(spec, ctx, INF), ctx, 6) == -(p**3)


def test_cusp_terms():
    ctx = make_prime_field(7)
    spec = lookup("2,3,inf")
    assert cusp_term(spec, _point(spec, ctx, 0), 7, 2) == 1
    g4 = lookup("gamma1_4")
    assert cusp_term(g4, _point(g4, ctx, INF), 7, 1) == 0
    g3 = lookup("gamma1_3")
    f5 = make_prime_field(5)
    assert cusp_term(g3, _point(g3, f5, 1), 5, 3) == -1


def test_gamma13_infinity():
    assert gamma13_infinity_term(5, 3) == 0
    assert gamma13_infinity_term(11, 1) == 0
    assert gamma13_infinity_term(7, 1) == 0
    assert gamma13_infinity_term(7, 2) == 7


def test_hecke_trace_examples():
    assert hecke_trace("2,3,inf", 2, 11).trace == 0
    assert hecke_trace("2,3,inf", 10, 5).trace == 4830
    assert hecke_trace("2,inf,inf", 6, 5).trace == -210


def test_report_sums_its_parts():
    rep = hecke_trace("2,4,6", 6, 13)
    assert rep.local_sum == sum(c.value for c in rep.contributions)
    assert rep.trace == -rep.local_sum
    d = rep.to_dict()
    assert d["trace"] == rep.trace and len(d["contributions"]) == 14


def test_display_variant_recorded():
    for p, trace, display in [(5, -114, -239), (7, -1576, -1919), (11, 7332, 6001)]:
        rep = hecke_trace("2,4,6", 6, p)
        assert rep.trace == trace
        assert rep.variants["h4_squared_display"] == display


def test_bad_prime():
    with pytest.raises(BadPrime):
        hecke_trace("2,4,6", 6, 3)


@pytest.mark.parametrize("p", list(primerange(5, 98)))
def test_delta_anchor(p):
    assert hecke_trace("2,3,inf", 10, p).trace == eta_ap(DELTA, p)


@pytest.mark.parametrize("p", list(primerange(5, 60)))
def test_level2_anchor(p):
    assert hecke_trace("2,inf,inf", 6, p).trace == eta_ap(LEVEL2_WT8, p)


def test_odd_weight_vanishing():
    for name, N in (("gamma1_3", 3), ("gamma1_4", 4)):
        for p in primerange(5, 120):
            if p % N == N - 1:
                for k in (1, 3, 5):
                    assert hecke_trace(name, k, p).trace == 0


def test_pullback_coherence():
    for p in primerange(5, 100):
        assert hecke_trace("2,2,3,3", 2, p).trace == hecke_trace("2,2,2,3", 2, p).trace


@pytest.mark.parametrize("name,weights", [("2,4,6", (8, 12, 14)), ("2,3,inf", (12, 16, 18)), ("gamma1_4", (5, 6, 7)), ("gamma1_3", (6, 7)), ("2,6,6", (8, 10))])
def test_deligne_bound(name, weights):
    spec = lookup(name)
    for w in weights:
        m = dim_cusp_forms(spec, w)
        for p in (5, 7, 11, 13):
            t = hecke_trace(spec, w - 2, p).trace
            assert t * t <= (m * 2) ** 2 * p ** (w - 1)
