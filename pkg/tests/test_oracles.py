import random
from fractions import Fraction as F

import pytest
from sympy import primerange

from hgtrace.charsum import h_function, pp_function
from hgtrace.errors import FixtureRequired, FixtureUnavailable, SingularCurve, TooLarge
from hgtrace.ffield import legendre, make_extension_field, make_prime_field
from hgtrace.groups import registry
from hgtrace.hgdata import build_datum
from hgtrace.oracles import (
    FAMILIES,
    SUITES,
    EtaProduct,
    ec_count,
    eta_ap,
    eta_series,
    family,
    pp_exact_smallq,
    run_identity_suite,
)
from hgtrace.oracles.curves import count_points
from hgtrace.oracles.eta import DELTA

HD2 = build_datum(["1/2", "1/2"], [1, 1])


# ---------------------------------------------------------------------------
# eta products


def test_delta_coefficients():
    assert [eta_ap(DELTA, p) for p in (2, 3, 5, 7)] == [-24, 252, 4830, -16744]


def test_delta_series_head():
    assert eta_series(DELTA, 6)[:5] == [1, -24, 252, -1472, 4830]


def test_eta_level_two_weight_eight():
    assert eta_ap(EtaProduct(((1, 8), (2, 8))), 5) == -210


def test_eta_weight_and_offset():
    prod = EtaProduct(((2, 12),))
    assert prod.weight == 6 and prod.offset == 1


def test_eta_2tau_12_deligne():
    a3 = eta_ap(EtaProduct(((2, 12),)), 3)
    assert a3 * a3 <= 4 * 3**5


def test_eta_weight_two_matches_curve():
    # eta(2tau)^2 eta(10tau)^2 is the weight-2 form of conductor 20
    prod = EtaProduct(((2, 2), (10, 2)))
    curve = (0, 1, 0, 4, 4)  # y^2 = x^3 + x^2 + 4x + 4, conductor 20
    for p in primerange(3, 60):
        if p == 5:
            continue
        assert eta_ap(prod, p) == p + 1 - count_points(curve, p)


# ---------------------------------------------------------------------------
# point counts


@pytest.mark.parametrize("name", ["gamma1_4", "gamma1_3"])
def test_ec_count_matches_h(name):
    fam = FAMILIES[name]
    for p in primerange(5, 42):
        ctx = make_prime_field(p)
        for t in range(2, p):
            h = h_function(fam.datum, t, ctx).value
            assert ec_count(fam, t, p) == p + 1 - h


def test_ec_count_example():
    assert ec_count("gamma1_4", 2, 7) == 8


@pytest.mark.parametrize("name", ["gamma1_4", "gamma1_3", "universal"])
def test_degenerate_fibres(name):
    fam = FAMILIES[name]
    for e in fam.excluded:
        with pytest.raises(SingularCurve):
            ec_count(fam, e, 7)


def test_family_aliases():
    assert family("Gamma1(4)") is FAMILIES["gamma1_4"]
    assert family("j") is FAMILIES["universal"]


def _c4_c6(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    return b2 * b2 - 24 * b4, -(b2**3) + 36 * b2 * b4 - 216 * b6


@pytest.mark.parametrize("name", ["gamma1_4", "gamma1_3"])
def test_universal_family_is_a_twist(name):
    """E_t and the universal curve at j(t) differ by the twist (c6'/c6)/(c4'/c4)."""
    fam, uni = FAMILIES[name], FAMILIES["universal"]
    checked = 0
    for p in primerange(5, 62):
        for t in range(2, p):
            j = fam.j_map(F(t))
            try:
                n_e = ec_count(fam, t, p)
                n_u = ec_count(uni, j, p)
            except SingularCurve:
                continue
            c4, c6 = _c4_c6(fam.coeffs(F(t)))
            c4u, c6u = _c4_c6(uni.coeffs(j))
            d = (c6u / c6) / (c4u / c4)
            chi = legendre(d.numerator * d.denominator, p)
            assert p + 1 - n_u == chi * (p + 1 - n_e)
            if chi == 1:
                assert n_u == n_e
            checked += 1
    assert checked > 300


# ---------------------------------------------------------------------------
# exact P-values


def test_pp_exact_examples():
    assert pp_exact_smallq(HD2, 1, make_prime_field(5)).value == -1
    for p in (5, 7, 13):
        assert pp_exact_smallq(HD2, 0, make_prime_field(p)).value == -legendre(-1, p)


def test_pp_exact_too_large():
    with pytest.raises(TooLarge):
        pp_exact_smallq(HD2, 1, make_prime_field(503))


SQUARES = {25: (5, 2), 49: (7, 2), 121: (11, 2), 169: (13, 2)}


def _random_pp_cases(n, seed):
    rng = random.Random(seed)
    data = [s.datum for s in registry() if s.datum is not None and all(b.denominator == 1 for b in s.datum.beta)]
    cases = []
    while len(cases) < n:
        d = rng.choice(data)
        q = rng.choice([q for q in (*primerange(5, 200), *SQUARES) if (q - 1) % d.level == 0])
        p, r = SQUARES.get(q, (q, 1))
        cases.append((d, p, r, rng.randrange(q)))
    return cases


@pytest.mark.parametrize("d,p,r,lam", _random_pp_cases(20, 1))
def test_pp_exact_agrees_with_modular(d, p, r, lam):
    ctx = make_extension_field(p, r)
    assert pp_exact_smallq(d, lam, ctx, code=True).value == pp_function(d, lam, ctx, code=True).value


# ---------------------------------------------------------------------------
# identity suites


@pytest.mark.parametrize("name", sorted(s for s in SUITES if s != "wt4-2223"))
def test_identity_suite_small(name):
    rep = run_identity_suite(name, 41, seed=3)
    assert rep.checks and rep.passed, rep.failures[:3]


def test_identity_suite_reproducible():
    a = run_identity_suite("clausen", 31, seed=11).to_dict()
    b = run_identity_suite("clausen", 31, seed=11).to_dict()
    assert a == b


def test_wt4_suite_with_fixture():
    rep = run_identity_suite("wt4-2223", 61)
    assert rep.checks and rep.passed


def test_wt4_suite_without_fixture():
    def missing(label, p):
        raise FixtureUnavailable(label)

    with pytest.raises(FixtureRequired):
        run_identity_suite("wt4-2223", 31, ap_source=missing)


def test_wt4_suite_detects_wrong_fixture():
    rep = run_identity_suite("wt4-2223", 31, ap_source=lambda label, p: 0)
    assert not rep.passed


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_identity_suite("nope")
