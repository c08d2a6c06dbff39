from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from greenadams import adams
from greenadams.errors import CapExceeded
from greenadams.greenring import GreenContext

CONTEXTS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]


def test_examples(ctx_factory):
    c2 = ctx_factory(2, 1)
    assert adams.adams_lambda(c2, 2, c2.V(2)) == 2 * c2.V(2) - 2 * c2.V(1)
    c9 = ctx_factory(3, 2)
    assert adams.adams_lambda(c9, 6, c9.V(9)) == 3 * c9.V(3)
    c4 = ctx_factory(2, 2)
    assert adams.adams_s_via_lambda(c4, 2, 3) == 2 * c4.V(2) - c4.V(1)
    assert adams.adams_s_direct(c4, 2, c4.V(3)) == 2 * c4.V(2) - c4.V(1)
    assert adams.adams_s_direct(c4, 3, c4.V(2)) == adams.adams_lambda(c4, 3, c4.V(2))
    for n in range(1, 9):
        assert adams.adams_lambda(c4, n, c4.V(1)) == c4.V(1)
        assert adams.adams_s(c4, n, c4.V(1)) == c4.V(1)


def test_closed_form_examples(ctx_factory):
    c4, c8 = ctx_factory(2, 2), ctx_factory(2, 3)
    assert adams.closed_form_adams_regular_lambda(c4, 4) == 4 * c4.V(2) - 4 * c4.V(1)
    assert adams.closed_form_adams_regular_lambda(c8, 3) == c8.V(8)
    assert adams.closed_form_adams_regular_s(c8, 4) == 4 * c8.V(2)
    c9 = ctx_factory(3, 2)
    assert adams.closed_form_adams_regular_lambda(c9, 6) == 3 * c9.V(3)


def test_first_power_is_identity(ctx_factory):
    for p, e in CONTEXTS:
        ctx = ctx_factory(p, e)
        for r in range(1, ctx.q + 1):
            v = ctx.V(r)
            assert adams.adams_lambda(ctx, 1, v) == v
            assert adams.adams_s_direct(ctx, 1, v) == v
            assert adams.adams_s_via_lambda(ctx, 1, r) == v


def test_rejects_non_positive_n(ctx_factory):
    ctx = ctx_factory(2, 2)
    for f in (adams.adams_lambda, adams.adams_s_direct, adams.adams_s, adams.adams_lambda_fast, adams.adams_s_fast):
        with pytest.raises(ValueError):
            f(ctx, 0, ctx.V(1))


@pytest.mark.parametrize("p,e", CONTEXTS + [(2, 4)])
def test_raw_recursion_matches_closed_forms(p, e, ctx_factory):
    ctx = ctx_factory(p, e)
    for n in range(1, 4 * ctx.q + 1):
        assert adams.adams_lambda(ctx, n, ctx.V(ctx.q)) == adams.closed_form_adams_regular_lambda(ctx, n)
        assert adams.adams_s_direct(ctx, n, ctx.V(ctx.q)) == adams.closed_form_adams_regular_s(ctx, n)


@pytest.mark.parametrize("p,e", CONTEXTS)
def test_dimension_preserved(p, e, ctx_factory):
    ctx = ctx_factory(p, e)
    for n in range(1, 2 * ctx.q + 3):
        for r in range(1, ctx.q + 1):
            assert adams.adams_lambda(ctx, n, ctx.V(r)).dimension() == r
            assert adams.adams_s(ctx, n, ctx.V(r)).dimension() == r


@pytest.mark.parametrize("p,e", CONTEXTS)
def test_periods_and_delta(p, e, ctx_factory):
    ctx = ctx_factory(p, e)
    q = ctx.q
    sigma = q if p == 2 else 2 * q
    assert adams.lambda_period(ctx) == 2 * q
    assert adams.s_period(ctx) == sigma
    for r in range(1, q + 1):
        v = ctx.V(r)
        assert adams.adams_lambda(ctx, 2 * q, v) == r * ctx.V(1)
        assert adams.adams_s(ctx, sigma, v) == r * ctx.V(1)
        for n in range(1, 2 * q):
            assert adams.adams_lambda(ctx, n, v) == adams.adams_lambda(ctx, 2 * q - n, v)
            assert adams.adams_lambda(ctx, n + 2 * q, v) == adams.adams_lambda(ctx, n, v)
        for n in range(1, sigma):
            assert adams.adams_s(ctx, n, v) == adams.adams_s(ctx, sigma - n, v)


@pytest.mark.parametrize("p,e", CONTEXTS)
def test_fast_paths_bit_identical(p, e, ctx_factory):
    ctx = ctx_factory(p, e)
    for n in range(1, 4 * ctx.q + 1):
        for r in range(1, ctx.q + 1):
            v = ctx.V(r)
            assert adams.adams_lambda_fast(ctx, n, v) == adams.adams_lambda(ctx, n, v)
            assert adams.adams_s_fast(ctx, n, v) == adams.adams_s(ctx, n, v)


def test_fast_paths_far_out(ctx_factory):
    ctx = ctx_factory(3, 2)
    a = ctx.element([1, -2, 0, 0, 3, 0, 0, 1, 2])
    big = 10**30 + 7
    assert adams.adams_lambda_fast(ctx, big, a) == adams.adams_lambda_fast(ctx, big % 18, a)
    assert adams.adams_s_fast(ctx, big, a) == adams.adams_s_fast(ctx, big % 18, a)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_conversion_matches_direct_path(p, e):
    # a small cap keeps this quick; the acceptance run uses the full cap
    ctx = GreenContext(p, e, dim_cap=5000)
    for n in range(1, 13):
        for r in range(1, ctx.q + 1):
            try:
                direct = adams.adams_s_direct_basis(ctx, n, r)
            except CapExceeded:
                continue
            assert adams.adams_s_via_lambda(ctx, n, r) == direct, (n, r)


def test_conversion_on_regular(ctx_factory):
    for p, e in CONTEXTS:
        ctx = ctx_factory(p, e)
        q = ctx.q
        for n in range(1, 3 * q):
            g = gcd(n, q)
            assert adams.adams_s_via_lambda(ctx, n, q) == g * ctx.V(q // g)


def test_direct_path_reports_cap():
    ctx = GreenContext(2, 3, dim_cap=1000)
    with pytest.raises(CapExceeded) as info:
        adams.adams_s_direct(ctx, 9, ctx.V(7))
    # the blocking table entry is named
    assert str(info.value) == "S^7(V7) has dimension 1716 > cap 1000"
    # the default entry point never builds S-modules
    assert adams.adams_s(ctx, 9, ctx.V(7)).dimension() == 7


@pytest.mark.parametrize("p,e", CONTEXTS)
def test_lambda_equals_s_when_p_does_not_divide_n(p, e, ctx_factory):
    ctx = ctx_factory(p, e)
    for n in range(1, 2 * ctx.q + 1):
        if n % p == 0:
            continue
        for r in range(1, ctx.q + 1):
            assert adams.adams_lambda(ctx, n, ctx.V(r)) == adams.adams_s(ctx, n, ctx.V(r))
        assert adams.adams_lambda(ctx, n, ctx.V(ctx.q)) == ctx.V(ctx.q)


@st.composite
def context_pair(draw):
    from conftest import shared_context

    p, e = draw(st.sampled_from(CONTEXTS))
    ctx = shared_context(p, e)
    coeffs = st.lists(st.integers(-3, 3), min_size=ctx.q, max_size=ctx.q)
    return ctx, ctx.element(draw(coeffs)), ctx.element(draw(coeffs))


@given(context_pair(), st.integers(1, 40), st.integers(1, 40))
def test_multiplicative_and_composition(data, n, m):
    ctx, a, b = data
    if n % ctx.p == 0:
        n += 1
    fa = adams.adams_lambda_fast
    assert fa(ctx, n, a * b) == fa(ctx, n, a) * fa(ctx, n, b)
    assert fa(ctx, n, fa(ctx, m, a)) == fa(ctx, n * m, a)


@given(context_pair(), st.integers(1, 30))
def test_restriction_commutes_with_lambda(data, n):
    ctx, a, _ = data
    child = ctx.child()
    assert ctx.restrict(adams.adams_lambda(ctx, n, a)) == adams.adams_lambda(child, n, ctx.restrict(a))
    assert ctx.restrict(adams.adams_s(ctx, n, a)) == adams.adams_s(child, n, ctx.restrict(a))


@pytest.mark.parametrize("p,e", CONTEXTS)
def test_shifted_period(p, e, ctx_factory):
    ctx = ctx_factory(p, e)
    q = ctx.q
    for n in range(1, 3 * q):
        if n % q == 0:
            continue
        shift = n + 2 * p * gcd(n, q)
        for r in range(1, q + 1):
            assert adams.adams_lambda(ctx, n, ctx.V(r)) == adams.adams_lambda(ctx, shift, ctx.V(r))


def test_trivial_group_is_identity():
    ctx = GreenContext(3, 0)
    v = ctx.V(1)
    for n in range(1, 10):
        assert adams.adams_lambda(ctx, n, 2 * v) == 2 * v
        assert adams.adams_s(ctx, n, v) == v
        assert adams.adams_s_direct(ctx, n, v) == v
        assert adams.adams_lambda_fast(ctx, n, v) == v
        assert adams.adams_s_fast(ctx, n, v) == v


def test_inflated_conversion_below_top_layer(ctx_factory):
    # r < q/p is computed in a factor context and inflated
    ctx = ctx_factory(2, 3)
    small = ctx.factor(1)
    for n in range(1, 9):
        want = ctx.inflate(adams.adams_s_via_lambda(small, n, 1))
        assert adams.adams_s_via_lambda(ctx, n, 1) == want
        assert adams.adams_s_via_lambda(ctx, n, 2) == ctx.inflate(adams.adams_s_via_lambda(small, n, 2))
