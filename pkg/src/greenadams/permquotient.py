"""Symmetric powers of V_r as quotients of permutation modules.

Let t be a power of p with r <= t and let P_t be the permutation module on
t points cycled by g.  As a module over A = F_p[T]/(T^t), T = g - 1, P_t is
free of rank one, so V_r = P_t / T^r P_t.  Writing W = T^r P_t,

    S^n(V_r) = S^n(P_t) / W S^(n-1)(P_t).

S^n(P_t) is the permutation module on degree-n monomials; each rotation orbit
of size s is a copy of A/(T^s) generated by a chosen representative.  The
quotient is therefore the cokernel of a sparse matrix over A, and its Smith
form (pivots T^v with v minimal first) lists the Jordan blocks directly:
one block of size v per pivot T^v, v >= 1, and one block of size t per
orbit row left without a pivot.

For r = t - 1 the submodule W is spanned by the invariant y_0 + ... + y_(t-1)
and one generator per orbit of degree-(n-1) monomials suffices; this case
has no fill-in in practice.  Other r need one generator per monomial.
"""

from __future__ import annotations

import heapq
from math import comb

import numpy as np

from . import _kernels
from .errors import ConsistencyError


class _TruncatedPolys:
    """Arithmetic in F_p[T]/(T^t) on coefficient arrays of length t."""

    def __init__(self, p: int, t: int):
        self.p = p
        self.t = t
        # (1 + T)^s for 0 <= s < t, reduced mod p
        rows = np.zeros((t, t), np.int64)
        rows[0, 0] = 1
        for s in range(1, t):
            rows[s, 0] = 1
            rows[s, 1:] = (rows[s - 1, 1:] + rows[s - 1, :-1]) % p
        self.shifts = rows

    def mul(self, a, b):
        return np.convolve(a, b)[: self.t] % self.p

    @staticmethod
    def valuation(a) -> int:
        return int(np.flatnonzero(a)[0])

    def divide_out(self, c, v, unit_inv):
        """c / (T^v u) for val(c) >= v, well defined up to T^(t - v)."""
        shifted = np.zeros(self.t, np.int64)
        shifted[: self.t - v] = c[v:]
        return self.mul(shifted, unit_inv)

    def unit_inverse(self, a, v):
        u = np.zeros(self.t, np.int64)
        u[: self.t - v] = a[v:]
        inv0 = pow(int(u[0]), -1, self.p)
        x = np.zeros(self.t, np.int64)
        x[0] = inv0
        for i in range(1, self.t):
            s = int(np.dot(u[1 : i + 1], x[i - 1 :: -1][:i]))
            x[i] = (-s * inv0) % self.p
        return x


def smith_valuations(columns, nrows: int, p: int, t: int) -> tuple[dict[int, int], int]:
    """Smith form of a sparse matrix over F_p[T]/(T^t).

    ``columns`` is a list of {row: coefficient array}.  Returns the counts of
    pivots by valuation and the number of rows that received no pivot.
    """
    ring = _TruncatedPolys(p, t)
    cols = {j: dict(c) for j, c in enumerate(columns) if c}
    rows: dict[int, set] = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)

    heap: list = []

    def push(i, j):
        c = cols[j]
        cost = (len(c) - 1) * (len(rows[i]) - 1)
        heapq.heappush(heap, (ring.valuation(c[i]), cost, i, j))

    for j, c in cols.items():
        for i in c:
            push(i, j)

    pivots: dict[int, int] = {}
    npiv = 0
    while heap:
        v, cost, pi, pj = heapq.heappop(heap)
        c = cols.get(pj)
        if c is None or pi not in c:
            continue
        cur_v = ring.valuation(c[pi])
        if cur_v != v:
            continue  # a fresher record with the current valuation exists
        cur_cost = (len(c) - 1) * (len(rows[pi]) - 1)
        if cur_cost > cost:
            heapq.heappush(heap, (v, cur_cost, pi, pj))
            continue
        # v is minimal among all remaining entries, so the pivot divides its
        # row; clear the row by column operations, then drop row and column
        pcol = cols.pop(pj)
        a = pcol.pop(pi)
        for i in pcol:
            rows[i].discard(pj)
        rows[pi].discard(pj)
        unit_inv = ring.unit_inverse(a, v)
        for j in list(rows[pi]):
            cj = cols[j]
            f = ring.divide_out(cj.pop(pi), v, unit_inv)
            for i, b in pcol.items():
                old = cj.get(i)
                new = -ring.mul(f, b) if old is None else old - ring.mul(f, b)
                new %= p
                if new.any():
                    if old is None:
                        rows[i].add(j)
                    cj[i] = new
                    push(i, j)
                elif old is not None:
                    del cj[i]
                    rows[i].discard(j)
            if not cj:
                del cols[j]
        del rows[pi]
        npiv += 1
        pivots[v] = pivots.get(v, 0) + 1
    return pivots, nrows - npiv


def _monomial_orbits(t: int, n: int):
    count = comb(t + n - 1, n)
    basis = _kernels.enumerate_multisets(t, n, count)
    rot = _kernels.multiset_rotation(basis, t, n)
    orbit, shift, sizes, first = _kernels.permutation_cycles(rot)
    return basis, orbit, shift, sizes, first


def symmetric_power_blocks(p: int, t: int, r: int, n: int) -> dict[int, int]:
    """Jordan blocks {size: multiplicity} of g on S^n(V_r), 1 <= r <= t.

    ``t`` must be a power of p; C acts through a cyclic quotient of order t.
    """
    if not 1 <= r <= t:
        raise ValueError(f"r = {r} outside 1..{t}")
    if n == 0:
        return {1: 1}
    _, orbit, shift, sizes, _ = _monomial_orbits(t, n)
    ring = _TruncatedPolys(p, t)
    columns = []
    for o, s in enumerate(sizes):
        if s < t:
            rel = np.zeros(t, np.int64)
            rel[s] = 1
            columns.append({o: rel})
    if r < t:
        coef = [comb(r, i) * (-1) ** (r - i) % p for i in range(r + 1)]
        lower, _, _, _, lower_first = _monomial_orbits(t, n - 1)
        gens = lower_first if r == t - 1 else np.arange(lower.shape[0])
        ins = _kernels.multiset_insertions(lower[gens], t, n - 1)
        for row in ins:
            col: dict[int, np.ndarray] = {}
            for i, c in enumerate(coef):
                if c == 0:
                    continue
                m = row[i]
                o = int(orbit[m])
                term = c * ring.shifts[shift[m]]
                col[o] = term if o not in col else col[o] + term
            col = {o: x % p for o, x in col.items() if (x % p).any()}
            if col:
                columns.append(col)
    pivots, free = smith_valuations(columns, len(sizes), p, t)
    blocks = {v: m for v, m in pivots.items() if v >= 1}
    if free:
        blocks[t] = blocks.get(t, 0) + free
    dim = sum(k * m for k, m in blocks.items())
    if dim != comb(r + n - 1, n):
        raise ConsistencyError(f"cokernel has dimension {dim}, expected {comb(r + n - 1, n)}")
    return dict(sorted(blocks.items()))
