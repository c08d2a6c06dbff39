"""Explicit KC-modules given by the matrix of a fixed generator g of C.

This is the brute-force side of every cross-check: modules are built as
matrices over F_p and decomposed by reading off the Jordan type of g.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import TYPE_CHECKING

import numpy as np

import scipy.sparse as sp

from . import _kernels, permquotient
from .errors import CapExceeded, ContextMismatch
from .fplinalg import MatrixFp, PrimeField, jordan_type_unipotent

if TYPE_CHECKING:
    from .greenring import GreenContext, GreenElement


@dataclass(frozen=True, eq=False)
class ModuleRep:
    """A KC-module: the action ``gen`` of the generator on K^dim.

    ``weights`` grades the basis so that gen - I strictly raises weight; it is
    carried along by every construction and only used to order elimination.
    """

    ctx: "GreenContext"
    gen: MatrixFp
    weights: tuple[int, ...]
    label: str = "M"

    @property
    def dim(self) -> int:
        return self.gen.rows

    def __repr__(self):
        return f"ModuleRep({self.label}, dim={self.dim}, p={self.ctx.p}, q={self.ctx.q})"


def _field(ctx) -> PrimeField:
    return PrimeField(ctx.p)


def _check_cap(ctx, what: str, dim: int):
    if dim > ctx.dim_cap:
        raise CapExceeded(what, dim, ctx.dim_cap)


def _same_ctx(a: ModuleRep, b: ModuleRep):
    if a.ctx.p != b.ctx.p or a.ctx.q != b.ctx.q:
        raise ContextMismatch(f"modules over (p={a.ctx.p}, q={a.ctx.q}) and (p={b.ctx.p}, q={b.ctx.q})")


def indecomposable(ctx, r: int) -> ModuleRep:
    """J_r: generator I + N_r on an r-dimensional space."""
    if not 1 <= r <= ctx.q:
        raise ValueError(f"r = {r} outside 1..{ctx.q}")
    f = _field(ctx)
    gen = MatrixFp.identity(f, r) + MatrixFp.shift(f, r)
    return ModuleRep(ctx, gen, tuple(range(r)), f"V{r}")


def _p_power(p: int, t: int) -> bool:
    while t % p == 0:
        t //= p
    return t == 1


def permutation_module(ctx, t: int) -> ModuleRep:
    """F_p on t points cycled by g, for t a power of p dividing q.

    Its Jordan type is {t: 1}, so it is a second basis for V_t in which g is
    a permutation matrix.
    """
    if not (_p_power(ctx.p, t) and ctx.q % t == 0):
        raise ValueError(f"t = {t} is not a power of {ctx.p} dividing {ctx.q}")
    f = _field(ctx)
    perm = sp.csc_matrix(
        (np.ones(t, np.int64), (np.roll(np.arange(t), -1), np.arange(t))), shape=(t, t)
    )
    return ModuleRep(ctx, MatrixFp(f, perm), (0,) * t, f"P{t}")


def trivial(ctx) -> ModuleRep:
    return ModuleRep(ctx, MatrixFp.identity(_field(ctx), 1), (0,), "K")


def zero_module(ctx) -> ModuleRep:
    return ModuleRep(ctx, MatrixFp.zeros(_field(ctx), 0), (), "0")


def direct_sum(a: ModuleRep, b: ModuleRep) -> ModuleRep:
    _same_ctx(a, b)
    return ModuleRep(a.ctx, a.gen.block_diag(b.gen), a.weights + b.weights, f"({a.label} + {b.label})")


def tensor(a: ModuleRep, b: ModuleRep) -> ModuleRep:
    _same_ctx(a, b)
    label = f"({a.label} x {b.label})"
    _check_cap(a.ctx, label, a.dim * b.dim)
    weights = tuple(wa + wb for wa in a.weights for wb in b.weights)
    return ModuleRep(a.ctx, a.gen.kron(b.gen), weights, label)


def _power(a: ModuleRep, n: int, dim: int, basis: np.ndarray, kernel, label: str) -> ModuleRep:
    f = a.gen.field
    m = a.gen.csc
    ptr, idx, val = kernel(
        m.indptr.astype(np.int64),
        m.indices.astype(np.int64),
        m.data.astype(np.int64),
        a.dim,
        n,
        a.ctx.p,
        basis,
        dim,
    )
    gen = MatrixFp.from_csc(f, (dim, dim), ptr, idx, val)
    w = np.asarray(a.weights, dtype=np.int64)
    weights = tuple(int(x) for x in w[basis].sum(axis=1)) if n else (0,) * dim
    return ModuleRep(a.ctx, gen, weights, label)


def exterior_power(a: ModuleRep, n: int) -> ModuleRep:
    """Lambda^n(a) on the wedge basis of increasing index tuples."""
    if n < 0:
        raise ValueError("n must be non-negative")
    label = f"L^{n}({a.label})"
    if n == 0:
        return trivial(a.ctx)
    if n > a.dim:
        return zero_module(a.ctx)
    dim = comb(a.dim, n)
    _check_cap(a.ctx, label, dim)
    basis = _kernels.enumerate_subsets(a.dim, n, dim)
    return _power(a, n, dim, basis, _kernels.exterior_columns, label)


def symmetric_power(a: ModuleRep, n: int) -> ModuleRep:
    """S^n(a) on the monomial basis of sorted index tuples."""
    if n < 0:
        raise ValueError("n must be non-negative")
    label = f"S^{n}({a.label})"
    if n == 0:
        return trivial(a.ctx)
    if a.dim == 0:
        return zero_module(a.ctx)
    dim = comb(a.dim + n - 1, n)
    _check_cap(a.ctx, label, dim)
    basis = _kernels.enumerate_multisets(a.dim, n, dim)
    return _power(a, n, dim, basis, _kernels.symmetric_columns, label)


def decompose(a: ModuleRep) -> "GreenElement":
    """The element sum_k m_k V_k read off from the Jordan type of the generator."""
    if a.dim == 0:
        return a.ctx.zero()
    jt = jordan_type_unipotent(a.gen, a.ctx.q, a.weights)
    return a.ctx.element(jt.coeffs(a.ctx.q))


SYMMETRIC_METHODS = ("auto", "jordan", "permutation", "quotient")


def symmetric_power_method(p: int, r: int) -> str:
    if _p_power(p, r):
        return "permutation"
    if _p_power(p, r + 1):
        return "quotient"
    return "jordan"


def decompose_symmetric_power(ctx, r: int, n: int, method: str = "auto") -> "GreenElement":
    """decompose(symmetric_power(indecomposable(ctx, r), n)) by an exact route.

    S^n is functorial, so S^n of any matrix conjugate to the Jordan block has
    the same Jordan type.  ``permutation`` uses the cyclic permutation basis
    (r a power of p); ``quotient`` reads the type off a cokernel presentation
    over F_p[T]/(T^t) (r + 1 = t a power of p, or any r <= t); ``jordan``
    builds the matrix on the Jordan basis.  All routes respect the cap on
    dim S^n(V_r).
    """
    if method not in SYMMETRIC_METHODS:
        raise ValueError(f"unknown method {method!r}")
    if not 1 <= r <= ctx.q:
        raise ValueError(f"r = {r} outside 1..{ctx.q}")
    if n < 0:
        raise ValueError("n must be non-negative")
    _check_cap(ctx, f"S^{n}(V{r})", comb(r + n - 1, n))
    if n == 0 or r == 1:
        return ctx.element((1,) + (0,) * (ctx.q - 1))
    if method == "auto":
        method = symmetric_power_method(ctx.p, r)
    if method == "permutation":
        mod = symmetric_power(permutation_module(ctx, r), n)
        # order the monomial basis by rotation orbit so elimination stays
        # inside each orbit
        basis = _kernels.enumerate_multisets(r, n, mod.dim)
        orbit = _kernels.permutation_cycles(_kernels.multiset_rotation(basis, r, n))[0]
        return decompose(ModuleRep(ctx, mod.gen, tuple(int(o) for o in orbit), mod.label))
    if method == "quotient":
        t = 1
        while t < r:
            t *= ctx.p
        if ctx.q % t:
            raise ValueError(f"no permutation module of size {t} for q = {ctx.q}")
        blocks = permquotient.symmetric_power_blocks(ctx.p, t, r, n)
        return ctx.element(tuple(blocks.get(k, 0) for k in range(1, ctx.q + 1)))
    return decompose(symmetric_power(indecomposable(ctx, r), n))
