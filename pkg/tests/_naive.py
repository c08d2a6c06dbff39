"""Slow, obviously correct reference computations used as independent oracles."""

from __future__ import annotations

import itertools

import numpy as np


def rank_mod(rows, p: int) -> int:
    m = [[int(x) % p for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def jordan_block(r: int) -> np.ndarray:
    return np.eye(r, dtype=np.int64) + np.eye(r, k=-1, dtype=np.int64)


def jordan_coeffs(g: np.ndarray, p: int, q: int) -> list[int]:
    n = g.shape[0]
    nil = (g - np.eye(n, dtype=np.int64)) % p
    ranks = [n]
    power = np.eye(n, dtype=np.int64)
    for _ in range(q + 1):
        power = (power @ nil) % p
        ranks.append(rank_mod(power, p))
    return [ranks[k - 1] - 2 * ranks[k] + ranks[k + 1] for k in range(1, q + 1)]


def rotation_orbit_sizes(q: int, n: int, multisets: bool) -> dict[int, int]:
    """Orbit sizes of c -> c + 1 on n-subsets (or n-multisets) of Z/q, by enumeration."""
    combos = itertools.combinations_with_replacement if multisets else itertools.combinations
    seen = set()
    sizes: dict[int, int] = {}
    for c in combos(range(q), n):
        if c in seen:
            continue
        orbit = set()
        cur = c
        while cur not in orbit:
            orbit.add(cur)
            cur = tuple(sorted((x + 1) % q for x in cur))
        seen |= orbit
        sizes[len(orbit)] = sizes.get(len(orbit), 0) + 1
    return sizes


def symmetric_square(g: np.ndarray) -> np.ndarray:
    """S^2 of a matrix on the sorted-pair monomial basis, by direct expansion."""
    n = g.shape[0]
    basis = list(itertools.combinations_with_replacement(range(n), 2))
    index = {b: i for i, b in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for j, (a, b) in enumerate(basis):
        for x in range(n):
            for y in range(n):
                out[index[tuple(sorted((x, y)))], j] += g[x, a] * g[y, b]
    return out
