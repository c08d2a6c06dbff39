"""Adams operations psi_Lambda^n and psi_S^n on the Green ring of C.

Three independent routes are kept apart on purpose:

* raw recursions (``adams_lambda``, ``adams_s_direct``) from the Newton
  identities of the exterior and symmetric power series, built on the oracle
  power tables and never consulting periodicity;
* ``adams_s_via_lambda``, which expresses psi_S^n(V_r) through the Heller
  translate of psi_Lambda^n(V_(q-r)) plus a projective correction;
* closed forms for V_q and the period-reduced ``*_fast`` entry points.
"""

from __future__ import annotations

from math import gcd

from .errors import ConsistencyError
from .greenring import GreenContext, GreenElement


def _linear(ctx: GreenContext, a: GreenElement, on_basis) -> GreenElement:
    ctx._own(a)
    out = ctx.zero()
    for r, x in a.terms():
        out = out + x * on_basis(r)
    return out


def _check_n(n: int):
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")


def _prefix(table, r: int, n: int) -> int:
    # largest m <= n with (1, r) .. (m, r) all present
    m = 0
    while m < n and (m + 1, r) in table:
        m += 1
    return m


# -- raw recursions ---------------------------------------------------------------
def adams_lambda_basis(ctx: GreenContext, n: int, r: int) -> GreenElement:
    """psi_Lambda^n(V_r) by the exterior Newton recursion, memoized per (n, r).

    psi^n = sum_{j=1}^{min(n-1, r)} (-1)^(j+1) psi^(n-j) Lambda^j
            + (-1)^(n+1) n Lambda^n
    """
    _check_n(n)
    ctx._check_r(r)
    if ctx.q == 1:
        return ctx.V(r)
    table = ctx.adams_lambda_table
    with ctx.lock:
        if (n, r) in table:
            return ctx.element(table[(n, r)])
        start = _prefix(table, r, n)
        for m in range(start + 1, n + 1):
            if m == 1:
                val = ctx.V(r)
            else:
                val = ctx.zero()
                for j in range(1, min(m - 1, r) + 1):
                    term = ctx.element(table[(m - j, r)]) * ctx.lambda_power(r, j)
                    val = val + term if j % 2 else val - term
                if m <= r:
                    last = m * ctx.lambda_power(r, m)
                    val = val + last if m % 2 else val - last
            table[(m, r)] = val.coeffs
        return ctx.element(table[(n, r)])


def adams_lambda(ctx: GreenContext, n: int, a: GreenElement) -> GreenElement:
    _check_n(n)
    return _linear(ctx, a, lambda r: adams_lambda_basis(ctx, n, r))


def adams_s_direct_basis(ctx: GreenContext, n: int, r: int) -> GreenElement:
    """psi_S^n(V_r) from n S^n = sum_{j=1}^n psi_S^j S^(n-j).

    Needs S^j(V_r) for j <= n from the oracle, so it may raise CapExceeded.
    """
    _check_n(n)
    ctx._check_r(r)
    if ctx.q == 1:
        return ctx.V(r)
    table = ctx.adams_s_table
    with ctx.lock:
        if (n, r) in table:
            return ctx.element(table[(n, r)])
        start = _prefix(table, r, n)
        for m in range(start + 1, n + 1):
            val = m * ctx.s_power(r, m)
            for j in range(1, m):
                val = val - ctx.element(table[(j, r)]) * ctx.s_power(r, m - j)
            table[(m, r)] = val.coeffs
        return ctx.element(table[(n, r)])


def adams_s_direct(ctx: GreenContext, n: int, a: GreenElement) -> GreenElement:
    _check_n(n)
    return _linear(ctx, a, lambda r: adams_s_direct_basis(ctx, n, r))


# -- psi_S through psi_Lambda -----------------------------------------------------
def adams_s_via_lambda(ctx: GreenContext, n: int, r: int) -> GreenElement:
    """psi_S^n(V_r) from the Heller translate of psi_Lambda^n(V_(q-r)).

    For r >= q/p:
        (-1)^(n-1) Omega^n(psi_Lambda^n(V_(q-r))) + (n,q) V_(q/(n,q)) + a V_q,
        a = (r + (-1)^n s - q) / q,  s = dim Omega^n(psi_Lambda^n(V_(q-r))).
    For smaller r the value lives in the quotient of order p^j, the least
    p-power >= r, and is inflated.
    """
    _check_n(n)
    ctx._check_r(r)
    q, p = ctx.q, ctx.p
    if r * p < q:
        j = 0
        while p**j < r:
            j += 1
        return ctx.inflate(adams_s_via_lambda(ctx.factor(j), n, r))
    omega = adams_lambda(ctx, n, ctx.V(q - r)).heller(n)
    s = omega.dimension()
    num = r + (-1) ** n * s - q
    a, rem = divmod(num, q)
    if rem:
        raise ConsistencyError(
            f"projective coefficient ({r} + (-1)^{n}*{s} - {q})/{q} is not an integer"
        )
    d = gcd(n, q)
    out = (omega if n % 2 else -omega) + d * ctx.V(q // d) + a * ctx.V(q)
    return out


def adams_s(ctx: GreenContext, n: int, a: GreenElement) -> GreenElement:
    """Public psi_S^n: linear extension of ``adams_s_via_lambda`` (no cap)."""
    _check_n(n)
    return _linear(ctx, a, lambda r: adams_s_via_lambda(ctx, n, r))


# -- closed forms on the regular module ---------------------------------------------
def closed_form_adams_regular_lambda(ctx: GreenContext, n: int) -> GreenElement:
    _check_n(n)
    q = ctx.q
    d = gcd(n, q)
    if ctx.p != 2:
        return d * ctx.V(q // d)
    if n % 2:
        return ctx.V(q)
    d2 = gcd(n, 2 * q)
    return d2 * ctx.V(2 * q // d2) - d * ctx.V(q // d)


def closed_form_adams_regular_s(ctx: GreenContext, n: int) -> GreenElement:
    _check_n(n)
    d = gcd(n, ctx.q)
    return d * ctx.V(ctx.q // d)


# -- period-reduced entry points ----------------------------------------------------
def lambda_period(ctx: GreenContext) -> int:
    return 2 * ctx.q


def s_period(ctx: GreenContext) -> int:
    return ctx.q if ctx.p == 2 else 2 * ctx.q


def _fold(n: int, period: int) -> int:
    m = n % period
    if m == 0:
        return period
    if 2 * m > period:
        m = period - m
    return m


def adams_lambda_fast(ctx: GreenContext, n: int, a: GreenElement) -> GreenElement:
    """psi_Lambda^n with n reduced mod 2q and folded by n -> 2q - n."""
    _check_n(n)
    if ctx.q == 1:
        ctx._own(a)
        return a
    return adams_lambda(ctx, _fold(n, lambda_period(ctx)), a)


def adams_s_fast(ctx: GreenContext, n: int, a: GreenElement) -> GreenElement:
    """psi_S^n with n reduced mod sigma and folded by n -> sigma - n."""
    _check_n(n)
    if ctx.q == 1:
        ctx._own(a)
        return a
    return adams_s(ctx, _fold(n, s_period(ctx)), a)
