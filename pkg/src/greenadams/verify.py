"""Exhaustive identity checks for the Green ring of C, collected into reports.

Every check compares two independently computed Green ring elements (or tests
a stated relation) over a full range of basis indices and degrees.  Checks
that would need an explicit module beyond the context's dimension cap are
counted as ``skipped_cap`` and never as passes.

Periodicity statements are checked against the raw recursions only; the
period-reduced entry points are compared with the raw ones in the adams suite.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from math import comb, gcd

from . import adams, modreal
from .fplinalg import matpow
from .errors import CapExceeded
from .greenring import GreenContext, GreenElement

SUITES = ("ring", "powers", "adams", "periodicity", "heller", "conversion")
STATUSES = ("pass", "fail", "skipped_cap")
DEFAULT_CONVERSION_N_MAX = 12
# degree bound for the S^n(V_q) oracle sweep; only small q reach it before the cap
S_REGULAR_N_LIMIT = 100


def _vec(a: GreenElement) -> dict:
    return {"coeffs": list(a.coeffs), "sum": str(a)}


@dataclass
class Check:
    """One named identity, possibly covering many (n, r) cases."""

    check_id: str
    statement: str
    cases: int = 0
    failures: int = 0
    skipped: int = 0
    witness: dict | None = None
    note: str | None = None
    value: int | None = None
    time_ms: float | None = None

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.skipped:
            return "skipped_cap"
        return "pass"

    def record(self, ok: bool, expected: GreenElement, actual: GreenElement, n=None, r=None) -> bool:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = {"n": n, "r": r, "expected": _vec(expected), "actual": _vec(actual)}
        return ok

    def expect(self, expected: GreenElement, actual: GreenElement, n=None, r=None) -> bool:
        return self.record(expected == actual, expected, actual, n, r)

    def skip(self, exc: CapExceeded):
        self.skipped += 1
        if self.note is None:
            self.note = str(exc)

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "check_id": self.check_id,
            "statement": self.statement,
            "status": self.status,
            "cases": self.cases,
            "skipped": self.skipped,
            "witness": self.witness,
        }
        if self.value is not None:
            d["value"] = self.value
        if self.note is not None:
            d["note"] = self.note
        if timings:
            d["time_ms"] = self.time_ms
        return d


@dataclass
class VerificationReport:
    p: int
    q: int
    dim_cap: int
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)
    observations: list[dict] = field(default_factory=list)
    wall_time_ms: float | None = None
    timings: bool = False

    @property
    def summary(self) -> dict:
        counts = {s: 0 for s in STATUSES}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def check(self, check_id: str) -> Check:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        return {
            "context": {"p": self.p, "q": self.q, "dim_cap": self.dim_cap},
            "suite": self.suite,
            "seed": self.seed,
            "checks": [c.to_dict(self.timings) for c in self.checks],
            "summary": self.summary,
            "observations": self.observations,
            "wall_time_ms": self.wall_time_ms if self.timings else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


# -- shared helpers -------------------------------------------------------------------
def _psi_l(ctx, n, r):
    return adams.adams_lambda_basis(ctx, n, r)


def _psi_s(ctx, n, r):
    # public psi_S; computed without any reference to periods
    return adams.adams_s_via_lambda(ctx, n, r)


def sigma(ctx: GreenContext) -> int:
    return adams.s_period(ctx)


def _raw(which: str):
    if which not in ("lambda", "s"):
        raise ValueError(f"which must be 'lambda' or 's', got {which!r}")
    return _psi_l if which == "lambda" else _psi_s


def _period_n_max(ctx, n_max):
    if n_max is None:
        return 4 * ctx.q
    if n_max < 2 * ctx.q:
        raise ValueError(f"n_max = {n_max} must be at least 2q = {2 * ctx.q}")
    return n_max


def _random_element(ctx, rng: random.Random, lo=-3, hi=3) -> GreenElement:
    return ctx.element([rng.randint(lo, hi) for _ in range(ctx.q)])


def _p_powers(ctx):
    t = 1
    while t <= ctx.q:
        yield t
        t *= ctx.p


def _in_permutation_ring(ctx, a: GreenElement) -> bool:
    powers = set(_p_powers(ctx))
    return all(r in powers for r, _ in a.terms())


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


# -- periodicity --------------------------------------------------------------------
def verify_period_lambda(ctx: GreenContext, n_max: int | None = None) -> Check:
    """psi_Lambda^n(V_r) = psi_Lambda^(n+2q)(V_r) for 1 <= n <= n_max - 2q."""
    n_max = _period_n_max(ctx, n_max)
    q = ctx.q
    chk = Check("periodicity.lambda_period", "psi_Lambda^n(V_r) = psi_Lambda^(n+2q)(V_r)")
    for n in range(1, n_max - 2 * q + 1):
        for r in range(1, q + 1):
            chk.expect(_psi_l(ctx, n, r), _psi_l(ctx, n + 2 * q, r), n, r)
    return chk


def verify_period_s(ctx: GreenContext, n_max: int | None = None) -> Check:
    n_max = _period_n_max(ctx, n_max)
    s = sigma(ctx)
    chk = Check("periodicity.s_period", f"psi_S^n(V_r) = psi_S^(n+{s})(V_r)")
    for n in range(1, max(n_max - s, 0) + 1):
        for r in range(1, ctx.q + 1):
            chk.expect(_psi_s(ctx, n, r), _psi_s(ctx, n + s, r), n, r)
    return chk


def minimal_period(ctx: GreenContext, which: str) -> int | None:
    """Least divisor d of 2q with psi^n = psi^(n+d) on every V_r for 1 <= n <= 2q.

    None if no divisor works, i.e. 2q itself is not a period.
    """
    if ctx.q == 1:
        raise ValueError("the trivial group has constant Adams operations")
    psi = _raw(which)
    q = ctx.q
    for d in _divisors(2 * q):
        if all(psi(ctx, n, r) == psi(ctx, n + d, r) for n in range(1, 2 * q + 1) for r in range(1, q + 1)):
            return d
    return None


def verify_minimal_period(ctx: GreenContext, which: str) -> Check:
    expected = 2 * ctx.q if which == "lambda" else sigma(ctx)
    name = "psi_Lambda" if which == "lambda" else "psi_S"
    chk = Check(f"periodicity.minimal_period_{which}", f"minimal period of {name} is {expected}")
    found = minimal_period(ctx, which)
    chk.value = found
    chk.cases = 1
    if found != expected:
        chk.failures = 1
        chk.witness = {"n": None, "r": None, "expected": expected, "actual": found}
    return chk


def verify_symmetry(ctx: GreenContext, which: str) -> Check:
    """psi^n = psi^(P-n) for 0 < n < P, P = 2q (Lambda) or sigma (S)."""
    psi = _raw(which)
    period = 2 * ctx.q if which == "lambda" else sigma(ctx)
    name = "psi_Lambda" if which == "lambda" else "psi_S"
    chk = Check(f"periodicity.symmetry_{which}", f"{name}^n = {name}^({period}-n) for 0 < n < {period}")
    for n in range(1, period):
        for r in range(1, ctx.q + 1):
            chk.expect(psi(ctx, period - n, r), psi(ctx, n, r), n, r)
    return chk


def verify_delta(ctx: GreenContext) -> list[Check]:
    q, s = ctx.q, sigma(ctx)
    lam = Check("periodicity.delta_lambda", f"psi_Lambda^{2 * q}(V_r) = r V1")
    sym = Check("periodicity.delta_s", f"psi_S^{s}(V_r) = r V1")
    for r in range(1, q + 1):
        lam.expect(r * ctx.one(), _psi_l(ctx, 2 * q, r), 2 * q, r)
        sym.expect(r * ctx.one(), _psi_s(ctx, s, r), s, r)
    return [lam, sym]


def _trivial_group_checks(ctx, n_max) -> list[Check]:
    n_max = n_max or 4
    lam = Check("periodicity.identity_lambda", "psi_Lambda^n is the identity when q = 1")
    sym = Check("periodicity.identity_s", "psi_S^n is the identity when q = 1")
    v = ctx.one()
    for n in range(1, n_max + 1):
        lam.expect(v, _psi_l(ctx, n, 1), n, 1)
        sym.expect(v, _psi_s(ctx, n, 1), n, 1)
        sym.expect(v, adams.adams_s_direct_basis(ctx, n, 1), n, 1)
    return [lam, sym]


def periodicity_suite(ctx: GreenContext, n_max: int | None = None) -> list[Check]:
    if ctx.q == 1:
        return _trivial_group_checks(ctx, n_max)
    return [
        verify_period_lambda(ctx, n_max),
        verify_period_s(ctx, n_max),
        verify_minimal_period(ctx, "lambda"),
        verify_minimal_period(ctx, "s"),
        verify_symmetry(ctx, "lambda"),
        verify_symmetry(ctx, "s"),
        *verify_delta(ctx),
    ]


# -- Adams operations ----------------------------------------------------------------
def verify_closed_forms(ctx: GreenContext, n_max: int | None = None) -> list[Check]:
    """Raw psi_Lambda^n(V_q), psi_S^n(V_q) against the closed forms, 1 <= n <= n_max."""
    n_max = n_max or 4 * ctx.q
    q = ctx.q
    lam = Check("adams.closed_form_lambda", "raw psi_Lambda^n(V_q) equals its closed form")
    sym = Check("adams.closed_form_s", "raw psi_S^n(V_q) equals (n,q) V_(q/(n,q))")
    for n in range(1, n_max + 1):
        if q == 1:
            lam.expect(ctx.one(), _psi_l(ctx, n, 1), n, 1)
            sym.expect(ctx.one(), adams.adams_s_direct_basis(ctx, n, 1), n, 1)
            continue
        lam.expect(adams.closed_form_adams_regular_lambda(ctx, n), _psi_l(ctx, n, q), n, q)
        sym.expect(adams.closed_form_adams_regular_s(ctx, n), adams.adams_s_direct_basis(ctx, n, q), n, q)
    return [lam, sym]


def verify_period_shift(ctx: GreenContext, n_max: int | None = None) -> Check:
    """psi_Lambda^n = psi_Lambda^(n + 2p(n,q)) whenever q does not divide n."""
    n_max = n_max or 4 * ctx.q
    q, p = ctx.q, ctx.p
    chk = Check("adams.period_shift", "psi_Lambda^n = psi_Lambda^(n+2p(n,q)) when q does not divide n")
    for n in range(1, n_max + 1):
        if n % q == 0:
            continue
        m = n + 2 * p * gcd(n, q)
        for r in range(1, q + 1):
            chk.expect(_psi_l(ctx, n, r), _psi_l(ctx, m, r), n, r)
    return chk


def verify_coprime_lambda_equals_s(ctx: GreenContext) -> Check:
    """psi_Lambda^n = psi_S^n (direct recursion) for p not dividing n, n <= q."""
    chk = Check("adams.coprime_lambda_equals_s", "psi_Lambda^n(V_r) = psi_S^n(V_r) when p does not divide n")
    for n in range(1, max(ctx.q, 2) + 1):
        if n % ctx.p == 0:
            continue
        for r in range(1, ctx.q + 1):
            try:
                direct = adams.adams_s_direct_basis(ctx, n, r)
            except CapExceeded as exc:
                chk.skip(exc)
                continue
            chk.expect(_psi_l(ctx, n, r), direct, n, r)
    return chk


def verify_regular_fixed(ctx: GreenContext) -> Check:
    q = ctx.q
    chk = Check("adams.regular_fixed", "psi_Lambda^n(V_q) = psi_S^n(V_q) = V_q when p does not divide n")
    for n in range(1, 4 * q + 1):
        if n % ctx.p == 0:
            continue
        chk.expect(ctx.V(q), _psi_l(ctx, n, q), n, q)
        chk.expect(ctx.V(q), adams.adams_s(ctx, n, ctx.V(q)), n, q)
    return chk


def _coprime_range(ctx):
    return [n for n in range(2, 2 * ctx.q + 1) if n % ctx.p]


def verify_multiplicative(ctx: GreenContext) -> Check:
    chk = Check("adams.multiplicative", "psi_Lambda^n(V_r V_s) = psi_Lambda^n(V_r) psi_Lambda^n(V_s) when p does not divide n")
    q = ctx.q
    for n in _coprime_range(ctx):
        for r in range(1, q + 1):
            for s in range(r, q + 1):
                lhs = adams.adams_lambda(ctx, n, ctx.V(r) * ctx.V(s))
                chk.expect(_psi_l(ctx, n, r) * _psi_l(ctx, n, s), lhs, n, r)
    return chk


def verify_composition(ctx: GreenContext) -> Check:
    """psi^n o psi^m = psi^(nm) for p not dividing n and every m <= 2q."""
    chk = Check("adams.composition", "psi_Lambda^n(psi_Lambda^m(V_r)) = psi_Lambda^(nm)(V_r) when p does not divide n")
    q = ctx.q
    for n in _coprime_range(ctx):
        for m in range(1, 2 * q + 1):
            for r in range(1, q + 1):
                chk.expect(_psi_l(ctx, n * m, r), adams.adams_lambda(ctx, n, _psi_l(ctx, m, r)), n * m, r)
    return chk


def observe_composition_p_divides(ctx: GreenContext) -> list[dict]:
    """Record, without asserting, where psi^n o psi^m = psi^(nm) holds for p | n."""
    q = ctx.q
    out = []
    for n in range(ctx.p, 2 * q + 1, ctx.p):
        holds, fails = [], []
        for m in range(1, 2 * q + 1):
            ok = all(
                adams.adams_lambda(ctx, n, _psi_l(ctx, m, r)) == _psi_l(ctx, n * m, r) for r in range(1, q + 1)
            )
            (holds if ok else fails).append(m)
        out.append({"kind": "composition_p_divides_n", "n": n, "m_holding": holds, "m_failing": fails})
    return out


def verify_restriction_compat(ctx: GreenContext, n_max: int | None = None) -> list[Check]:
    """Restriction to the index-p subgroup commutes with psi_Lambda and psi_S."""
    n_max = n_max or 2 * ctx.q
    child = ctx.child()
    lam = Check("adams.restriction_lambda", "restriction commutes with psi_Lambda^n")
    sym = Check("adams.restriction_s", "restriction commutes with psi_S^n (direct recursion)")
    for n in range(1, n_max + 1):
        for r in range(1, ctx.q + 1):
            res = ctx.V(r).restrict()
            lam.expect(adams.adams_lambda(child, n, res), _psi_l(ctx, n, r).restrict(), n, r)
            if n > ctx.q:
                continue
            try:
                up = adams.adams_s_direct_basis(ctx, n, r).restrict()
                down = adams.adams_s_direct(child, n, res)
            except CapExceeded as exc:
                sym.skip(exc)
                continue
            sym.expect(down, up, n, r)
    return [lam, sym]


def verify_inflation_compat(ctx: GreenContext) -> Check:
    chk = Check("adams.inflation", "inflation from every quotient commutes with psi_Lambda^n and psi_S^n")
    for j in range(ctx.e):
        small = ctx.factor(j)
        for n in range(1, 2 * ctx.q + 1):
            for r in range(1, small.q + 1):
                chk.expect(ctx.inflate(adams.adams_lambda_basis(small, n, r)), _psi_l(ctx, n, r), n, r)
                chk.expect(ctx.inflate(adams.adams_s_via_lambda(small, n, r)), _psi_s(ctx, n, r), n, r)
    return chk


def verify_dimension_preserved(ctx: GreenContext, n_max: int | None = None) -> Check:
    n_max = n_max or 4 * ctx.q
    chk = Check("adams.dimension", "psi_Lambda^n and psi_S^n preserve dimension; psi^n(V1) = V1")
    for n in range(1, n_max + 1):
        chk.expect(ctx.one(), _psi_l(ctx, n, 1), n, 1)
        chk.expect(ctx.one(), _psi_s(ctx, n, 1), n, 1)
        for r in range(1, ctx.q + 1):
            a, b = _psi_l(ctx, n, r), _psi_s(ctx, n, r)
            chk.record(a.dimension() == r, ctx.V(r), a, n, r)
            chk.record(b.dimension() == r, ctx.V(r), b, n, r)
    return chk


def verify_fast_paths(ctx: GreenContext, n_max: int | None = None) -> Check:
    n_max = n_max or 4 * ctx.q
    chk = Check("adams.fast_paths", "period-reduced psi_Lambda^n and psi_S^n agree with the raw paths")
    for n in range(1, n_max + 1):
        for r in range(1, ctx.q + 1):
            v = ctx.V(r)
            chk.expect(_psi_l(ctx, n, r), adams.adams_lambda_fast(ctx, n, v), n, r)
            chk.expect(_psi_s(ctx, n, r), adams.adams_s_fast(ctx, n, v), n, r)
    return chk


def adams_suite(ctx: GreenContext, n_max: int | None = None) -> tuple[list[Check], list[dict]]:
    checks = [*verify_closed_forms(ctx, n_max), verify_dimension_preserved(ctx, n_max)]
    if ctx.q == 1:
        return checks, []
    checks += [
        verify_period_shift(ctx, n_max),
        verify_coprime_lambda_equals_s(ctx),
        verify_regular_fixed(ctx),
        verify_multiplicative(ctx),
        verify_composition(ctx),
        *verify_restriction_compat(ctx),
        verify_inflation_compat(ctx),
        verify_fast_paths(ctx, n_max),
    ]
    return checks, observe_composition_p_divides(ctx)


# -- ring structure --------------------------------------------------------------------
def verify_ring_axioms(ctx: GreenContext, seed: int = 0, samples: int = 20) -> Check:
    rng = random.Random(seed)
    chk = Check("ring.axioms", "commutative, associative, distributive, unit V1, dimension multiplicative")
    one = ctx.one()
    for _ in range(samples):
        a, b, c = (_random_element(ctx, rng) for _ in range(3))
        chk.expect(a * b, b * a)
        chk.expect((a * b) * c, a * (b * c))
        chk.expect(a * b + a * c, a * (b + c))
        chk.expect(a, one * a)
        chk.expect(a - a, ctx.zero())
        ab = a * b
        chk.record(ab.dimension() == a.dimension() * b.dimension(), a.delta_endomorphism() * b.delta_endomorphism(), ab.delta_endomorphism())
    for r in range(1, ctx.q + 1):
        for s in range(1, ctx.q + 1):
            vr, vs = ctx.V(r), ctx.V(s)
            chk.expect(vr * vs, vs * vr, None, r)
            chk.record((vr * vs).dimension() == r * s, vr, vr * vs, None, r)
    return chk


def verify_tensor_symmetric_oracle(ctx: GreenContext) -> Check:
    """decompose(J_r x J_s) = decompose(J_s x J_r) at the matrix level."""
    chk = Check("ring.tensor_commutes", "J_r x J_s and J_s x J_r have the same Jordan type")
    for r in range(1, ctx.q + 1):
        for s in range(r + 1, ctx.q + 1):
            a, b = modreal.indecomposable(ctx, r), modreal.indecomposable(ctx, s)
            chk.expect(modreal.decompose(modreal.tensor(a, b)), modreal.decompose(modreal.tensor(b, a)), s, r)
    return chk


def verify_permutation_products(ctx: GreenContext) -> Check:
    chk = Check("ring.permutation_products", "V_r V_(p^j) = r V_(p^j) for r <= p^j")
    for t in _p_powers(ctx):
        for r in range(1, t + 1):
            chk.expect(r * ctx.V(t), ctx.V(r) * ctx.V(t), t, r)
    return chk


def verify_restriction_homomorphism(ctx: GreenContext, seed: int = 0, samples: int = 20) -> Check:
    rng = random.Random(seed + 1)
    chk = Check("ring.restriction_homomorphism", "restriction to the index-p subgroup is a ring homomorphism")
    chk.expect(ctx.child().one(), ctx.one().restrict())
    for r in range(1, ctx.q + 1):
        for s in range(r, ctx.q + 1):
            vr, vs = ctx.V(r), ctx.V(s)
            chk.expect(vr.restrict() * vs.restrict(), (vr * vs).restrict(), s, r)
    for _ in range(samples):
        a, b = _random_element(ctx, rng), _random_element(ctx, rng)
        chk.expect(a.restrict() * b.restrict(), (a * b).restrict())
        chk.expect(a.restrict() + b.restrict(), (a + b).restrict())
    return chk


def verify_restriction_oracle(ctx: GreenContext) -> Check:
    """The restriction formula against restricting J_r to the subgroup generated by g^p."""
    chk = Check("ring.restriction_oracle", "V_r restricted to the index-p subgroup matches the Jordan type of g^p")
    child = ctx.child()
    for r in range(1, ctx.q + 1):
        gen = matpow(modreal.indecomposable(ctx, r).gen, ctx.p)
        sub = modreal.ModuleRep(child, gen, tuple(range(r)))
        chk.expect(modreal.decompose(sub), ctx.V(r).restrict(), None, r)
    return chk


def verify_frobenius(ctx: GreenContext) -> Check:
    chk = Check("ring.frobenius", "induce(U) V = induce(U restrict(V))")
    child = ctx.child()
    for u in range(1, child.q + 1):
        for r in range(1, ctx.q + 1):
            U, V = child.V(u), ctx.V(r)
            chk.expect(ctx.induce(U * V.restrict()), ctx.induce(U) * V, u, r)
    return chk


def verify_induced_detection(ctx: GreenContext) -> Check:
    """Every nonzero induced element has nonzero restriction (small coefficients)."""
    p, q = ctx.p, ctx.q
    k = q // p
    bound = 2 if k <= 4 else 1
    chk = Check("ring.induced_detection", "an induced element with zero restriction is zero")
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=k):
        c = [0] * q
        for i, x in enumerate(coeffs, 1):
            c[p * i - 1] = x
        a = ctx.element(c)
        if a.restrict().is_zero():
            chk.expect(ctx.zero(), a)
        else:
            chk.cases += 1
    return chk


def verify_inflation_embedding(ctx: GreenContext, seed: int = 0, samples: int = 10) -> Check:
    rng = random.Random(seed + 2)
    chk = Check("ring.inflation_embedding", "inflation from each quotient is a ring embedding")
    for j in range(ctx.e):
        small = ctx.factor(j)
        for _ in range(samples):
            a, b = _random_element(small, rng), _random_element(small, rng)
            chk.expect(ctx.inflate(a) * ctx.inflate(b), ctx.inflate(a * b))
        chk.expect(ctx.V(small.q), ctx.inflate(small.V(small.q)), None, small.q)
    return chk


def ring_suite(ctx: GreenContext, seed: int = 0) -> list[Check]:
    checks = [
        verify_ring_axioms(ctx, seed),
        verify_tensor_symmetric_oracle(ctx),
        verify_permutation_products(ctx),
        verify_inflation_embedding(ctx, seed),
    ]
    if ctx.q > 1:
        checks += [
            verify_restriction_homomorphism(ctx, seed),
            verify_restriction_oracle(ctx),
            verify_frobenius(ctx),
            verify_induced_detection(ctx),
        ]
    return checks


# -- exterior and symmetric powers --------------------------------------------------------
def verify_palindromy(ctx: GreenContext) -> Check:
    """Lambda^j(J_r) and Lambda^(r-j)(J_r) decomposed separately by the oracle."""
    chk = Check("powers.palindromy", "Lambda^j(V_r) = Lambda^(r-j)(V_r)")
    for r in range(1, ctx.q + 1):
        jr = modreal.indecomposable(ctx, r)
        for j in range(0, r // 2 + 1):
            try:
                a = modreal.decompose(modreal.exterior_power(jr, j))
                b = modreal.decompose(modreal.exterior_power(jr, r - j))
            except CapExceeded as exc:
                chk.skip(exc)
                continue
            chk.expect(a, b, j, r)
    return chk


def verify_exterior_extremes(ctx: GreenContext) -> Check:
    chk = Check("powers.exterior_extremes", "Lambda^r(V_r) = V1 and Lambda^n(V_r) = 0 for n > r")
    for r in range(1, ctx.q + 1):
        jr = modreal.indecomposable(ctx, r)
        chk.expect(ctx.one(), modreal.decompose(modreal.exterior_power(jr, r)), r, r)
        chk.expect(ctx.zero(), modreal.decompose(modreal.exterior_power(jr, r + 1)), r + 1, r)
        chk.expect(ctx.zero(), ctx.lambda_power(r, r + 1), r + 1, r)
    return chk


def verify_lambda_regular_oracle(ctx: GreenContext) -> list[Check]:
    out = []
    jq = modreal.indecomposable(ctx, ctx.q)
    for n in range(ctx.q + 1):
        chk = Check(f"powers.lambda_regular[n={n}]", "orbit count for Lambda^n(V_q) matches the oracle")
        try:
            chk.expect(modreal.decompose(modreal.exterior_power(jq, n)), ctx.lambda_regular(n), n, ctx.q)
        except CapExceeded as exc:
            chk.skip(exc)
        out.append(chk)
    return out


def verify_s_regular_oracle(ctx: GreenContext, n_max: int | None = None) -> list[Check]:
    """Orbit count for S^n(V_q) against the oracle, for every n whose module fits the cap.

    Without ``n_max`` the range runs up to the first n beyond the cap, which
    is reported as a single skipped entry, but never past S_REGULAR_N_LIMIT
    (for q = 1 it stops at n = 4).  For q >= 4 the cap is always hit first.
    """
    q = ctx.q
    if n_max is None and q == 1:
        n_max = 4
    out = []
    n = 0
    while n <= (S_REGULAR_N_LIMIT if n_max is None else n_max):
        chk = Check(f"powers.s_regular[n={n}]", "orbit count for S^n(V_q) matches the oracle")
        out.append(chk)
        try:
            oracle = modreal.decompose_symmetric_power(ctx, q, n)
        except CapExceeded as exc:
            chk.skip(exc)
            if n_max is None:
                break
        else:
            chk.expect(oracle, ctx.s_regular(n), n, q)
        n += 1
    return out


def verify_regular_alpha1(ctx: GreenContext) -> list[Check]:
    q, p = ctx.q, ctx.p
    lam = Check("powers.alpha1_lambda_regular", "alpha_1(Lambda^n(V_q)) is 1 for n in {0, q}, else 0")
    sym = Check("powers.alpha1_s_regular", "alpha_1(S^n(V_q)) is 1 if q | n, else 0")
    perm = Check("powers.permutation_ring", "Lambda^n(V_q) and psi_Lambda^n(V_q) lie in the span of V_(p^i)")
    psi = Check("powers.alpha1_psi_lambda_regular", "alpha_1(psi_Lambda^n(V_q)) is q (times (-1)^(n/q) if p = 2) when q | n, else 0")
    for n in range(0, 4 * q + 1):
        a = ctx.lambda_power(q, n)
        want = 1 if n in (0, q) else 0
        lam.record(a.alpha1() == want, want * ctx.one(), a, n, q)
        perm.record(_in_permutation_ring(ctx, a), a, a, n, q)
        s = ctx.s_regular(n)
        want = 1 if n % q == 0 else 0
        sym.record(s.alpha1() == want, want * ctx.one(), s, n, q)
        if n == 0 or q == 1:
            continue
        b = _psi_l(ctx, n, q)
        perm.record(_in_permutation_ring(ctx, b), b, b, n, q)
        if n % q:
            want = 0
        else:
            want = q * (-1) ** (n // q) if p == 2 else q
        psi.record(b.alpha1() == want, want * ctx.one(), b, n, q)
    return [lam, sym, perm] + ([psi] if q > 1 else [])


def powers_suite(ctx: GreenContext) -> list[Check]:
    return [
        verify_palindromy(ctx),
        verify_exterior_extremes(ctx),
        *verify_regular_alpha1(ctx),
        *verify_lambda_regular_oracle(ctx),
        *verify_s_regular_oracle(ctx),
    ]


# -- Heller translate and symmetric powers ---------------------------------------------------
def verify_heller_translate(ctx: GreenContext) -> Check:
    q = ctx.q
    chk = Check("heller.translate", "Omega(V_r) = V_(q-r), Omega(V_q) = 0, Omega^2(V_r) = V_r for r < q")
    for r in range(1, q + 1):
        v = ctx.V(r)
        chk.expect(ctx.V(q - r), v.heller(1), 1, r)
        chk.expect(v, v.heller(0), 0, r)
        if r < q:
            chk.expect(v, v.heller(2), 2, r)
    return chk


def verify_symmetric_vs_exterior(ctx: GreenContext) -> list[Check]:
    """S^n(V_r) and Omega^n(Lambda^n(V_(q-r))) agree modulo induced modules.

    One entry per (n, r) with q/p <= r <= q and 1 <= n < q.
    """
    q, p = ctx.q, ctx.p
    out = []
    for r in range(max(q // p, 1), q + 1):
        for n in range(1, q):
            chk = Check(
                f"heller.symmetric_vs_exterior[n={n},r={r}]",
                "S^n(V_r) = Omega^n(Lambda^n(V_(q-r))) modulo induced modules",
            )
            out.append(chk)
            ext = ctx.lambda_power(q - r, n) if r < q else ctx.zero()
            rhs = ext.heller(n)
            try:
                lhs = ctx.s_power(r, n)
            except CapExceeded as exc:
                chk.skip(exc)
                continue
            chk.record(lhs.ind_equiv(rhs), rhs, lhs, n, r)
    return out


def heller_suite(ctx: GreenContext) -> list[Check]:
    return [verify_heller_translate(ctx), *verify_symmetric_vs_exterior(ctx)]


# -- psi_S from psi_Lambda ----------------------------------------------------------------
def verify_conversion(ctx: GreenContext, n_max: int | None = None) -> list[Check]:
    """psi_S^n(V_r) through psi_Lambda against the direct symmetric-power recursion.

    One entry per (n, r) with q/p <= r <= q; smaller r, which go through a
    quotient group, are aggregated in a single extra entry.
    """
    n_max = DEFAULT_CONVERSION_N_MAX if n_max is None else n_max
    q, p = ctx.q, ctx.p
    low = max(q // p, 1)
    out = []
    for r in range(low, q + 1):
        for n in range(1, n_max + 1):
            chk = Check(f"conversion[n={n},r={r}]", "psi_S^n(V_r) via psi_Lambda equals the direct recursion")
            out.append(chk)
            try:
                direct = adams.adams_s_direct_basis(ctx, n, r)
            except CapExceeded as exc:
                chk.skip(exc)
                continue
            chk.expect(direct, adams.adams_s_via_lambda(ctx, n, r), n, r)
    small = Check("conversion.inflated", "psi_S^n(V_r) for r < q/p via a quotient group equals the direct recursion")
    for r in range(1, low):
        for n in range(1, n_max + 1):
            try:
                direct = adams.adams_s_direct_basis(ctx, n, r)
            except CapExceeded as exc:
                small.skip(exc)
                continue
            small.expect(direct, adams.adams_s_via_lambda(ctx, n, r), n, r)
    if low > 1:
        out.append(small)
    return out


# -- driver ------------------------------------------------------------------------------
def parse_suites(wanted: str | list[str]) -> list[str]:
    names = wanted.split(",") if isinstance(wanted, str) else list(wanted)
    names = [s.strip() for s in names if s.strip()]
    if not names or "all" in names:
        return list(SUITES)
    bad = [s for s in names if s not in SUITES]
    if bad:
        raise ValueError(f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(SUITES + ('all',))}")
    return [s for s in SUITES if s in names]


def run(ctx: GreenContext, suites: str | list[str] = "all", n_max: int | None = None, seed: int = 0,
        timings: bool = False) -> VerificationReport:
    """Run the named suites in a fixed order.

    ``n_max`` bounds the degree range of the periodicity and Adams suites
    (default 4q, at least 2q) and of the conversion suite (default 12).
    """
    names = parse_suites(suites)
    if n_max is not None and "periodicity" in names and ctx.q > 1:
        _period_n_max(ctx, n_max)
    label = "all" if names == list(SUITES) else ",".join(names)
    report = VerificationReport(ctx.p, ctx.q, ctx.dim_cap, label, seed, timings=timings)
    start = time.perf_counter()
    for name in names:
        t0 = time.perf_counter()
        if name == "ring":
            checks = ring_suite(ctx, seed)
        elif name == "powers":
            checks = powers_suite(ctx)
        elif name == "adams":
            checks, obs = adams_suite(ctx, n_max)
            report.observations.extend(obs)
        elif name == "periodicity":
            checks = periodicity_suite(ctx, n_max)
        elif name == "heller":
            checks = heller_suite(ctx)
        else:
            checks = verify_conversion(ctx, n_max)
        if timings:
            per = (time.perf_counter() - t0) * 1000 / max(len(checks), 1)
            for c in checks:
                c.time_ms = round(per, 3)
        report.checks.extend(checks)
    report.wall_time_ms = round((time.perf_counter() - start) * 1000, 3)
    return report
