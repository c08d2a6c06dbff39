from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _naive import jordan_block, jordan_coeffs, rank_mod
from greenadams.errors import DimensionMismatch, NotUnipotent
from greenadams.fplinalg import (
    JordanType,
    MatrixFp,
    PrimeField,
    is_prime,
    jordan_type_unipotent,
    matmul,
    matpow,
    rank,
    rank_profile,
    subtract_identity,
)

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def test_prime_field_rejects_composites():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(67)
    assert PrimeField(61).p == 61
    assert F5.inv(3) == 2


def test_rank_examples():
    assert rank(MatrixFp.identity(F2, 3)) == 3
    assert rank(MatrixFp.zeros(F3, 4)) == 0
    assert rank(MatrixFp.shift(F2, 4)) == 3


def test_rank_does_not_modify_input():
    a = MatrixFp(F3, [[1, 2, 0], [2, 1, 0], [1, 1, 1]])
    before = a.to_dense().copy()
    rank(a)
    assert np.array_equal(a.to_dense(), before)


def test_entries_are_reduced():
    a = MatrixFp(F3, [[4, -1], [3, 6]])
    assert a.to_dense().tolist() == [[1, 2], [0, 0]]


def test_matrix_ops():
    n3 = MatrixFp.shift(F3, 3)
    assert matpow(n3, 3) == MatrixFp.zeros(F3, 3)
    assert matpow(n3, 0) == MatrixFp.identity(F3, 3)
    a = MatrixFp(F5, [[1, 2], [3, 4]])
    assert matmul(MatrixFp.identity(F5, 2), a) == a
    assert subtract_identity(MatrixFp.identity(F2, 4)) == MatrixFp.zeros(F2, 4)
    assert matmul(a, a).to_dense().tolist() == [[7 % 5, 10 % 5], [15 % 5, 22 % 5]]


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        matmul(MatrixFp.zeros(F2, 2, 3), MatrixFp.zeros(F2, 2, 3))
    with pytest.raises(DimensionMismatch):
        matpow(MatrixFp.zeros(F2, 2, 3), 2)
    with pytest.raises(DimensionMismatch):
        subtract_identity(MatrixFp.zeros(F2, 2, 3))
    with pytest.raises(ValueError):
        matpow(MatrixFp.identity(F2, 2), -1)


def test_jordan_type_examples():
    j4 = MatrixFp(F2, jordan_block(4))
    assert jordan_type_unipotent(j4, 4) == {4: 1}
    assert jordan_type_unipotent(MatrixFp.identity(F3, 5), 9) == {1: 5}
    j2 = MatrixFp(F2, jordan_block(2))
    assert jordan_type_unipotent(j2.kron(j2), 4) == {2: 2}


def test_jordan_type_rejects_non_unipotent():
    with pytest.raises(NotUnipotent):
        jordan_type_unipotent(MatrixFp(F3, [[2]]), 3)
    # unipotent but needs a larger q
    with pytest.raises(NotUnipotent):
        jordan_type_unipotent(MatrixFp(F2, jordan_block(4)), 2)


def test_jordan_type_container():
    jt = JordanType({2: 2, 3: 0})
    assert jt.blocks == {2: 2}
    assert jt.dim == 4
    assert jt.coeffs(4) == (0, 2, 0, 0)
    with pytest.raises(ValueError):
        jt.coeffs(1)


@st.composite
def small_matrices(draw, max_dim=50):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    density = draw(st.floats(0.05, 1.0))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    vals = rng.integers(0, p, size=(rows, cols))
    vals[rng.random((rows, cols)) > density] = 0
    # plant dependent rows now and then
    if rows > 2 and draw(st.booleans()):
        vals[-1] = (vals[0] + 2 * vals[1]) % p
    return p, vals


@given(small_matrices())
def test_rank_matches_naive_eliminator(data):
    p, vals = data
    assert rank(MatrixFp(PrimeField(p), vals)) == rank_mod(vals, p)


@st.composite
def unipotent_with_conjugator(draw, max_dim=30):
    p = draw(st.sampled_from([2, 3, 5]))
    e = draw(st.integers(1, 2 if p > 2 else 3))
    q = p**e
    sizes = draw(st.lists(st.integers(1, q), min_size=1, max_size=6))
    sizes = sizes[: max(1, len(sizes))]
    while sum(sizes) > max_dim:
        sizes.pop()
    n = sum(sizes)
    g = np.zeros((n, n), dtype=np.int64)
    at = 0
    for s in sizes:
        g[at : at + s, at : at + s] = jordan_block(s)
        at += s
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    # unit lower times unit upper triangular is always invertible
    lower = np.tril(rng.integers(0, p, (n, n)), -1) + np.eye(n, dtype=np.int64)
    upper = np.triu(rng.integers(0, p, (n, n)), 1) + np.eye(n, dtype=np.int64)
    return p, q, sizes, g, lower, upper


def _inverse_mod(m, p):
    n = m.shape[0]
    aug = np.concatenate([m % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i, c] % p)
        aug[[c, piv]] = aug[[piv, c]]
        aug[c] = aug[c] * pow(int(aug[c, c]), -1, p) % p
        for i in range(n):
            if i != c and aug[i, c]:
                aug[i] = (aug[i] - aug[i, c] * aug[c]) % p
    return aug[:, n:]


@given(unipotent_with_conjugator())
def test_jordan_type_conjugation_invariant(data):
    p, q, sizes, g, lower, upper = data
    f = PrimeField(p)
    P = (lower @ upper) % p
    conj = (P @ g @ _inverse_mod(P, p)) % p
    expected = {}
    for s in sizes:
        expected[s] = expected.get(s, 0) + 1
    jt = jordan_type_unipotent(MatrixFp(f, conj), q)
    assert jt == expected
    assert jt.dim == g.shape[0]
    assert list(jt.coeffs(q)) == jordan_coeffs(conj, p, q)


@given(unipotent_with_conjugator())
def test_rank_profile_non_increasing(data):
    p, q, _, g, lower, upper = data
    P = (lower @ upper) % p
    conj = (P @ g @ _inverse_mod(P, p)) % p
    ranks = rank_profile(MatrixFp(PrimeField(p), conj), q)
    assert ranks[0] == g.shape[0]
    assert all(a >= b for a, b in zip(ranks, ranks[1:]))
