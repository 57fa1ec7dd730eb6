"""Property-based checks of the structural invariants."""

from collections import Counter
from fractions import Fraction as F
from math import gcd

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from sympy import factorint, primerange

from hgtrace.charsum import h_table
from hgtrace.eigensolver import Surd, frobenius_to_hecke_sums, newton_charpoly, quadratic_roots
from hgtrace.ffield import Character, char_eval, legendre, make_extension_field, make_prime_field
from hgtrace.groups import classify_points, dim_cusp_forms, lookup, registry
from hgtrace.hgdata import build_datum, classes_mod1, datum_from_gamma, gamma_vector
from hgtrace.oracles import FAMILIES, ec_count
from hgtrace.oracles.shipped import ETA_PRODUCTS
from hgtrace.trace_engine import f_poly, fop_sum, hecke_trace

FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

SMALL_PRIMES = list(primerange(5, 200))
FIELDS = [(p, 1) for p in primerange(3, 60)] + [(3, 2), (5, 2), (7, 2), (3, 3), (2, 4), (11, 2)]
DATA = {str(s.datum): s.datum for s in registry() if s.datum is not None}
NONCOMPOSITE = [s for s in registry() if s.family != "composite"]


# ---------------------------------------------------------------------------
# finite fields


@FAST
@given(st.sampled_from(FIELDS))
def test_wilson_via_dlog(field):
    ctx = make_extension_field(*field)
    n = ctx.n
    total = sum(int(ctx.dlog[x]) for x in range(1, ctx.q)) % n
    assert total == (n * (n - 1) // 2) % n
    # and the product itself is -1
    prod = 1
    for x in range(1, ctx.q):
        prod = int(ctx.mul(prod, x))
    assert prod == int(ctx.neg(1))


@FAST
@given(st.sampled_from([f for f in FIELDS if f[0] != 2]))
def test_quadratic_character_counts(field):
    ctx = make_extension_field(*field)
    values = [ctx.quadratic_char(x) for x in range(1, ctx.q)]
    assert values.count(1) == ctx.n // 2 == values.count(-1)
    squares = {int(ctx.mul(x, x)) for x in range(1, ctx.q)}
    assert all((ctx.quadratic_char(x) == 1) == (x in squares) for x in range(1, ctx.q))


@FAST
@given(st.sampled_from(SMALL_PRIMES[:20]), st.integers(-10**6, 10**6))
def test_legendre_matches_character(p, a):
    ctx = make_prime_field(p)
    chi = Character(ctx.n // 2, ctx.n)
    value = char_eval(ctx, chi, a % p)
    expected = legendre(a, p)
    if expected == 0:
        assert a % p == 0
    else:
        assert (1 if value == 0 else -1) == expected


@FAST
@given(st.sampled_from(FIELDS), st.integers(1, 50), st.data())
def test_character_multiplicative(field, k, data):
    ctx = make_extension_field(*field)
    x = data.draw(st.integers(1, ctx.q - 1))
    y = data.draw(st.integers(1, ctx.q - 1))
    chi = Character(k, ctx.n)
    assert char_eval(ctx, chi, int(ctx.mul(x, y))) == (char_eval(ctx, chi, x) + char_eval(ctx, chi, y)) % ctx.n


# ---------------------------------------------------------------------------
# hypergeometric data


def _roots_mod1(m: int) -> Counter:
    return Counter(F(j, m) for j in range(1, m + 1))


@st.composite
def rational_data(draw):
    """The datum of prod (X^p_j - 1) / prod (X^q_k - 1) for random p_j, q_k of equal total."""
    ps = draw(st.lists(st.integers(1, 12), min_size=1, max_size=3))
    qs = draw(st.lists(st.integers(1, 12), min_size=1, max_size=3))
    gap = sum(ps) - sum(qs)
    if gap:
        (qs if gap > 0 else ps).append(abs(gap))
    alpha, beta = Counter(), Counter()
    for m in ps:
        alpha += _roots_mod1(m)
    for m in qs:
        beta += _roots_mod1(m)
    common = alpha & beta
    alpha, beta = alpha - common, beta - common
    if F(1) in alpha:
        alpha, beta = beta, alpha
    assume(F(1) in beta)
    return build_datum(sorted(alpha.elements()), sorted(beta.elements()))


def _rational_by_definition(d) -> bool:
    m = d.level
    for side in (d.alpha, d.beta):
        classes = Counter(x % 1 for x in side)
        for u in range(1, m):
            if gcd(u, m) == 1 and Counter(u * x % 1 for x in side) != classes:
                return False
    return True


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.fractions(min_value=0, max_value=1, max_denominator=8), min_size=1, max_size=4),
    st.lists(st.fractions(min_value=0, max_value=1, max_denominator=8), min_size=0, max_size=3),
)
def test_rationality_matches_definition(alpha, beta_rest):
    beta = ([F(1)] + beta_rest)[: len(alpha)]
    beta += [F(1)] * (len(alpha) - len(beta))
    d = build_datum(alpha, beta)
    assert d.rational == _rational_by_definition(d)


def test_registry_data_rational_and_primitive():
    for d in DATA.values():
        assert d.rational and d.primitive


@settings(max_examples=100, deadline=None)
@given(rational_data())
def test_gamma_vector_degree_balance(d):
    gv = gamma_vector(d)
    assert sum(gv.p_list) == sum(gv.q_list)


@settings(max_examples=100, deadline=None)
@given(rational_data())
def test_gamma_vector_round_trip(d):
    alpha, beta = datum_from_gamma(gamma_vector(d))
    assert alpha == classes_mod1(d.alpha)
    assert beta == classes_mod1(d.beta)


# ---------------------------------------------------------------------------
# character sums


def _weil_cases():
    out = []
    for d in DATA.values():
        out += [(str(d), p) for p in SMALL_PRIMES if (p - 1) % d.level == 0]
    return out


@FAST
@given(st.sampled_from(_weil_cases()))
def test_weil_bound(case):
    key, p = case
    d = DATA[key]
    n, m = d.n, d.integral_beta_count
    table = h_table(d, make_prime_field(p))
    scale = p ** F(n - m, 2)
    bound = n * p ** ((n - 1) / 2)
    for c in range(2, p):
        assert abs(float(table[c]) * float(scale)) <= bound
    assert abs(float(table[1]) * float(scale)) <= (n - 1) * p ** ((n - 1) / 2)


# ---------------------------------------------------------------------------
# groups and traces


@FAST
@given(st.sampled_from(NONCOMPOSITE), st.sampled_from(SMALL_PRIMES))
def test_classify_points_covers_projective_line(spec, p):
    ctx = make_prime_field(p)
    pts = classify_points(spec, ctx)
    assert len(pts) == p + 1
    assert len({pc.coord for pc in pts}) == p + 1


def test_weight_four_spaces_are_zero():
    for spec in registry():
        if spec.family == "thm1" or spec.name in {"2,6,6", "3,4,4"}:
            assert dim_cusp_forms(spec, 4) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(0, 8))
def test_f_identity(u, v, m):
    assert f_poly(m, u * u + u * v + v * v, u * v) == sum(u**i * v ** (2 * m - i) for i in range(2 * m + 1))


@settings(max_examples=200, deadline=None)
@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(0, 16))
def test_fop_sum_is_power_sum(u, v, k):
    assert fop_sum(k, u + v, u * v) == sum(u**i * v ** (k - i) for i in range(k + 1))


_TRACE_SPECS = [s.name for s in registry()]


@FAST
@given(st.sampled_from(_TRACE_SPECS), st.sampled_from([4, 6, 8, 10, 12]), st.sampled_from(SMALL_PRIMES[:15]))
def test_deligne_bound(name, w, p):
    spec = lookup(name)
    dim = dim_cusp_forms(spec, w)
    tr = hecke_trace(spec, w - 2, p).trace
    if dim == 0:
        assert tr == 0
    else:
        assert tr * tr <= (dim * 2) ** 2 * p ** (w - 1)


@FAST
@given(st.sampled_from(["gamma1_3", "gamma1_4"]), st.sampled_from([3, 5, 7, 9]), st.sampled_from(SMALL_PRIMES))
def test_odd_weight_vanishing(name, w, p):
    N = lookup(name).level
    assume(p % N == N - 1)
    assert hecke_trace(name, w - 2, p).trace == 0


# ---------------------------------------------------------------------------
# eigenvalues


@st.composite
def eigen_systems(draw):
    """Integers a_i with |a_i| <= 2 sqrt(w), together with w = p^(k+1)."""
    p = draw(st.sampled_from([5, 7, 11, 13]))
    k = draw(st.sampled_from([2, 4, 6]))
    w = p ** (k + 1)
    bound = int(2 * w**0.5)
    a = draw(st.lists(st.integers(-bound, bound), min_size=1, max_size=4))
    return a, w


def _frobenius_traces(a, w, m):
    """P_r = sum (b_i^r + c_i^r) with b_i + c_i = a_i and b_i c_i = w."""
    return [sum(fop_sum(r, ai, w) - w * fop_sum(r - 2, ai, w) for ai in a) for r in range(1, m + 1)]


@settings(max_examples=100, deadline=None)
@given(eigen_systems())
def test_power_trace_inversion_round_trip(system):
    a, w = system
    m = len(a)
    P = _frobenius_traces(a, w, m)
    s = frobenius_to_hecke_sums(P, w)
    assert s == [sum(x**r for x in a) for r in range(1, m + 1)]
    coeffs = newton_charpoly(s)
    assert coeffs[-1] == 1
    for x in a:
        assert sum(c * x**i for i, c in enumerate(coeffs)) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_quadratic_roots_normalised(c0, c1):
    assume(c1 * c1 - 4 * c0 >= 0)
    roots = quadratic_roots(c0, c1)
    for r in roots:
        assert isinstance(r, Surd)
        if r.b == 0:
            assert r.D == 1
        else:
            assert r.D > 1 and set(factorint(r.D).values()) == {1}
        # r^2 + c1 r + c0 = 0 exactly in Q(sqrt D)
        re = r.a * r.a + r.b * r.b * r.D + c1 * r.a + c0
        im = 2 * r.a * r.b + c1 * r.b
        assert re == 0 and im == 0
    assert roots[0] == roots[1].conjugate() or roots[0].b == roots[1].b == 0


# ---------------------------------------------------------------------------
# oracles


def test_shipped_eta_offsets_integral():
    for _, prod in ETA_PRODUCTS.values():
        assert sum(d * e for d, e in prod.factors) % 24 == 0


@FAST
@given(st.sampled_from(["gamma1_3", "gamma1_4"]), st.sampled_from(SMALL_PRIMES[:20]), st.data())
def test_allowed_fibres_are_smooth(name, p, data):
    t = data.draw(st.integers(2, p - 1))
    fam = FAMILIES[name]
    n = ec_count(fam, t, p)
    assert abs(p + 1 - n) <= 2 * p**0.5
