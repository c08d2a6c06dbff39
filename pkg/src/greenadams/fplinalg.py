"""Exact linear algebra over a prime field F_p.

Matrices are stored sparse (CSC, entries reduced into ``[0, p)``): the
generators of exterior and symmetric powers reach tens of thousands of rows
but only carry a few hundred nonzeros per column.  Ranks are computed by
column reduction in compiled code, bit-packed for p = 2 and bit-sliced for
p = 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .errors import ConsistencyError, DimensionMismatch, NotUnipotent

MAX_PRIME = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"{self.p!r} is not prime")
        if self.p > MAX_PRIME:
            raise ValueError(f"p = {self.p} exceeds supported maximum {MAX_PRIME}")

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)


def _canonical(m: sp.spmatrix, p: int) -> sp.csc_matrix:
    m = sp.csc_matrix(m, dtype=np.int64)
    m.sum_duplicates()
    m.data %= p
    m.eliminate_zeros()
    m.sort_indices()
    return m


class MatrixFp:
    """An immutable matrix over F_p."""

    __slots__ = ("field", "_m")

    def __init__(self, field: PrimeField, m):
        self.field = field
        if sp.issparse(m):
            self._m = _canonical(m, field.p)
        else:
            arr = np.asarray(m, dtype=np.int64)
            if arr.ndim != 2:
                raise DimensionMismatch("matrix data must be two-dimensional")
            self._m = _canonical(sp.csc_matrix(arr % field.p), field.p)

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "MatrixFp":
        return cls(field, sp.identity(n, dtype=np.int64, format="csc"))

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int | None = None) -> "MatrixFp":
        cols = rows if cols is None else cols
        return cls(field, sp.csc_matrix((rows, cols), dtype=np.int64))

    @classmethod
    def shift(cls, field: PrimeField, n: int) -> "MatrixFp":
        """The nilpotent N_n sending basis vector i to i + 1 and the last to 0."""
        return cls(field, sp.eye(n, n, k=-1, dtype=np.int64, format="csc"))

    @classmethod
    def from_csc(cls, field: PrimeField, shape, indptr, indices, data) -> "MatrixFp":
        return cls(field, sp.csc_matrix((data, indices, indptr), shape=shape))

    # -- basic properties ---------------------------------------------------
    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rows(self) -> int:
        return self._m.shape[0]

    @property
    def cols(self) -> int:
        return self._m.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._m.shape

    @property
    def nnz(self) -> int:
        return self._m.nnz

    @property
    def csc(self) -> sp.csc_matrix:
        return self._m

    def to_dense(self) -> np.ndarray:
        return self._m.toarray()

    def __eq__(self, other):
        if not isinstance(other, MatrixFp):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        return (self._m != other._m).nnz == 0

    def __hash__(self):
        return hash((self.field, self.shape, self._m.nnz))

    def __repr__(self):
        return f"MatrixFp(p={self.p}, shape={self.shape}, nnz={self.nnz})"

    # -- arithmetic ---------------------------------------------------------
    def _check_field(self, other: "MatrixFp"):
        if self.field != other.field:
            raise DimensionMismatch(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        return matmul(self, other)

    def __add__(self, other: "MatrixFp") -> "MatrixFp":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return MatrixFp(self.field, self._m + other._m)

    def __sub__(self, other: "MatrixFp") -> "MatrixFp":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return MatrixFp(self.field, self._m + (self.p - 1) * other._m)

    def kron(self, other: "MatrixFp") -> "MatrixFp":
        self._check_field(other)
        return MatrixFp(self.field, sp.kron(self._m, other._m, format="csc"))

    def block_diag(self, other: "MatrixFp") -> "MatrixFp":
        self._check_field(other)
        if self.rows == 0:
            return other
        if other.rows == 0:
            return self
        return MatrixFp(self.field, sp.block_diag((self._m, other._m), format="csc"))


def matmul(a: MatrixFp, b: MatrixFp) -> MatrixFp:
    a._check_field(b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return MatrixFp(a.field, a.csc @ b.csc)


def matpow(a: MatrixFp, k: int) -> MatrixFp:
    if a.rows != a.cols:
        raise DimensionMismatch(f"matrix power of non-square {a.shape}")
    if k < 0:
        raise ValueError("negative exponent")
    result = MatrixFp.identity(a.field, a.rows)
    base = a
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def subtract_identity(a: MatrixFp) -> MatrixFp:
    if a.rows != a.cols:
        raise DimensionMismatch(f"subtract_identity of non-square {a.shape}")
    return a - MatrixFp.identity(a.field, a.rows)


def _order_from_weights(n: int, weights: Sequence[int] | None) -> tuple[np.ndarray, np.ndarray]:
    """(row position array, processing order) sorted by weight then index."""
    if weights is None:
        order = np.arange(n, dtype=np.int64)
    else:
        w = np.asarray(weights, dtype=np.int64)
        if w.shape != (n,):
            raise DimensionMismatch("weights must have one entry per row")
        order = np.lexsort((np.arange(n), w)).astype(np.int64)
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n, dtype=np.int64)
    return pos, order


def _rank_csc(m: sp.csc_matrix, p: int, row_pos, col_order, max_rank: int) -> int:
    nrows = m.shape[0]
    if nrows == 0 or m.shape[1] == 0 or m.nnz == 0:
        return 0
    args = (m.indptr.astype(np.int64), m.indices.astype(np.int64), m.data.astype(np.int64))
    max_rank = int(min(max_rank, nrows, m.shape[1]))
    if p == 2:
        return int(_kernels.rank_gf2(*args, nrows, row_pos, col_order, max_rank))
    if p == 3:
        return int(_kernels.rank_gf3(*args, nrows, row_pos, col_order, max_rank))
    return int(_kernels.rank_gfp(*args, nrows, p, row_pos, col_order, max_rank))


def rank(a: MatrixFp, row_weights: Sequence[int] | None = None) -> int:
    """F_p-rank of ``a``; the optional weights only steer pivot order."""
    row_pos, _ = _order_from_weights(a.rows, row_weights)
    col_order = np.arange(a.cols, dtype=np.int64)
    return _rank_csc(a.csc, a.p, row_pos, col_order, min(a.rows, a.cols))


@dataclass(frozen=True)
class JordanType:
    """Multiset of Jordan block sizes: ``blocks[k]`` is the number of k-blocks."""

    blocks: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): int(m) for k, m in self.blocks.items() if m}
        for k, m in clean.items():
            if k < 1 or m < 0:
                raise ValueError(f"invalid block entry {k}: {m}")
        object.__setattr__(self, "blocks", dict(sorted(clean.items())))

    @property
    def dim(self) -> int:
        return sum(k * m for k, m in self.blocks.items())

    def multiplicity(self, k: int) -> int:
        return self.blocks.get(k, 0)

    def coeffs(self, q: int) -> tuple[int, ...]:
        if self.blocks and max(self.blocks) > q:
            raise ValueError(f"block of size {max(self.blocks)} exceeds q = {q}")
        return tuple(self.blocks.get(k, 0) for k in range(1, q + 1))

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self.blocks == JordanType(other).blocks
        if isinstance(other, JordanType):
            return self.blocks == other.blocks
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.blocks.items()))


def rank_profile(a: MatrixFp, q: int, weights: Sequence[int] | None = None) -> list[int]:
    """Ranks of (a - I)^k for k = 0..q+1 (the last entry repeats the q-th)."""
    n = a.rows
    if a.rows != a.cols:
        raise DimensionMismatch(f"rank profile of non-square {a.shape}")
    row_pos, order = _order_from_weights(n, weights)
    p = a.p
    # N^(p^j) = g^(p^j) - I stays sparse, so N^k is assembled as
    # N^(p^j) @ N^(k - p^j) with p^j the largest p-power <= k.
    def split(k):
        t = 1
        while t * p <= k:
            t *= p
        return t

    needed = {k - split(k) for k in range(2, q + 1)}
    eye = sp.identity(n, dtype=np.int64, format="csc")
    gpow = a.csc
    powers = {}
    ranks = [n]
    for k in range(1, q + 1):
        if ranks[-1] == 0:
            ranks.append(0)
            continue
        t = split(k)
        if t == k:
            if k > 1:
                # g^k = (g^(k/p))^p
                base = gpow
                for _ in range(p - 1):
                    gpow = _canonical(gpow @ base, p)
            powers[k] = _canonical(gpow - eye, p)
        else:
            powers[k] = _canonical(powers[t] @ powers[k - t], p)
        ranks.append(_rank_csc(powers[k], p, row_pos, order, ranks[-1]))
        if t != k and k not in needed:
            del powers[k]
    ranks.append(ranks[q])
    return ranks


def jordan_type_unipotent(a: MatrixFp, q: int, weights: Sequence[int] | None = None) -> JordanType:
    """Jordan type of a unipotent matrix with (a - I)^q = 0.

    ``weights`` is an optional grading of the basis in which a - I is strictly
    increasing; it does not affect the result, only the amount of fill-in.
    """
    if q < 1:
        raise ValueError("q must be positive")
    ranks = rank_profile(a, q, weights)
    if ranks[q] != 0:
        raise NotUnipotent(f"(M - I)^{q} has rank {ranks[q]}, expected 0")
    blocks = {}
    for k in range(1, q + 1):
        m = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        if m < 0:
            raise ConsistencyError(f"negative multiplicity {m} for block size {k}")
        if m:
            blocks[k] = m
    jt = JordanType(blocks)
    if jt.dim != a.rows:
        raise ConsistencyError(f"block sizes sum to {jt.dim}, dimension is {a.rows}")
    return jt
