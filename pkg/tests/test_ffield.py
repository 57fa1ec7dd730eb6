import numpy as np
import pytest
from sympy import isprime

from hgtrace.errors import CompositeModulus, TooLarge
from hgtrace.ffield import (
    Character,
    Zero,
    char_eval,
    generators,
    legendre,
    make_extension_field,
    make_prime_field,
)


def _least_primitive_root(p):
    for g in range(2, p):
        if len({pow(g, k, p) for k in range(p - 1)}) == p - 1:
            return g
    raise AssertionError


@pytest.mark.parametrize("p", [5, 7, 11, 13, 23, 101])
def test_prime_field_uses_least_primitive_root(p):
    assert make_prime_field(p).generator == _least_primitive_root(p)


def test_prime_field_examples():
    assert make_prime_field(7).generator == 3
    assert make_prime_field(5).generator == 2


def test_composite_rejected():
    with pytest.raises(CompositeModulus):
        make_prime_field(4)


def test_degree_one_extension_is_prime_field():
    a, b = make_extension_field(5, 1), make_prime_field(5)
    assert a == b
    assert np.array_equal(a.dlog, b.dlog)


@pytest.mark.parametrize("p,r", [(3, 2), (5, 2), (7, 2), (11, 2), (3, 3), (5, 3), (3, 4)])
def test_extension_generator_order_and_dlog(p, r):
    ctx = make_extension_field(p, r)
    q = p**r
    assert ctx.q == q
    # exp/dlog are inverse bijections onto {0, ..., q-2}
    assert sorted(int(x) for x in ctx.dlog[1:]) == list(range(q - 1))
    for j in range(q - 1):
        assert ctx.dlog[ctx.exp[j]] == j
    # the generator has exact order q - 1
    assert int(ctx.power(ctx.generator, q - 1)) == 1
    for ell in {d for d in range(2, q) if (q - 1) % d == 0 and isprime(d)}:
        assert int(ctx.power(ctx.generator, (q - 1) // ell)) != 1


def test_f9_generator_has_order_8():
    ctx = make_extension_field(3, 2)
    assert len({int(ctx.power(ctx.generator, k)) for k in range(8)}) == 8


def test_f121_dlog_bijective():
    ctx = make_extension_field(11, 2)
    assert len(set(int(x) for x in ctx.dlog[1:])) == 120


def test_table_limit():
    with pytest.raises(TooLarge):
        make_extension_field(101, 2, limit=1000)


@pytest.mark.parametrize("p,r", [(5, 2), (7, 2), (3, 3)])
def test_trace_is_linear_and_frobenius_invariant(p, r):
    ctx = make_extension_field(p, r)
    xs = np.arange(ctx.q)
    tr = ctx.trace_table
    for y in (1, 2, ctx.q - 1):
        assert np.array_equal(tr[ctx.add(xs, y)], (tr[xs] + tr[y]) % p)
    assert np.array_equal(tr[ctx.power(xs, p)], tr[xs])


def test_char_eval_examples():
    ctx = make_prime_field(7)
    eps = Character(0, 6)
    phi = Character(3, 6)
    assert char_eval(ctx, eps, 5) == 0
    assert char_eval(ctx, Character(1, 6), 0) is Zero
    assert char_eval(ctx, phi, 3) == 3
    assert pow(3, 3, 7) == 6  # Euler's criterion: 3 is a non-residue


def test_legendre_examples():
    assert legendre(-1, 5) == 1
    assert legendre(-1, 7) == -1
    assert legendre(-6, 7) == 1


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (13, 1), (5, 2), (3, 3)])
def test_wilson_and_squares(p, r):
    ctx = make_extension_field(p, r)
    n = ctx.q - 1
    assert int(ctx.dlog[1:].sum()) % n == (n * (n - 1) // 2) % n
    # the product of all nonzero elements is -1
    assert int(ctx.exp[int(ctx.dlog[1:].sum()) % n]) == int(ctx.neg(1))
    chi = ctx.quadratic_char(np.arange(1, ctx.q))
    assert int((chi == 1).sum()) == n // 2
    squares = {int(ctx.mul(x, x)) for x in range(1, ctx.q)}
    assert squares == {x for x in range(1, ctx.q) if ctx.quadratic_char(x) == 1}


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31, 37])
def test_legendre_matches_quadratic_character(p):
    ctx = make_prime_field(p)
    for a in range(-3 * p, 3 * p):
        assert legendre(a, p) == int(ctx.quadratic_char(a % p))


def test_generators_listed():
    ctx = make_prime_field(13)
    assert generators(ctx) == sorted(g for g in range(1, 13) if len({pow(g, k, 13) for k in range(12)}) == 12)
