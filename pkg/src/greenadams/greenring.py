"""The Green ring R_KC of a cyclic p-group C of order q = p^e over F_p.

Elements are integer vectors over the basis V_1, ..., V_q of indecomposables.
Products and exterior/symmetric powers of basis modules come from the
explicit-module oracle and are memoized per context; powers of the regular
module V_q also have an orbit-counting formula that needs no matrices.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from . import modreal
from .errors import ConsistencyError, ContextMismatch
from .fplinalg import PrimeField

DEFAULT_DIM_CAP = 60_000


class GreenContext:
    """The pair (p, q = p^e) with oracle limits and memo tables.

    Memo tables map basis indices to coefficient tuples:

    * ``tensor[(r, s)]`` (r <= s): V_r V_s
    * ``lambda_table[(r, j)]`` (2j <= r): Lambda^j(V_r)
    * ``s_table[(r, n)]`` (r < q): S^n(V_r)
    * ``adams_lambda_table[(n, r)]``, ``adams_s_table[(n, r)]``: raw Adams values
      (the latter from the direct symmetric-power recursion)

    Fills are serialized by a re-entrant lock, so a context may be shared
    between threads.
    """

    def __init__(self, p: int, e: int, dim_cap: int = DEFAULT_DIM_CAP):
        PrimeField(p)
        if e < 0:
            raise ValueError("e must be non-negative")
        self.p = int(p)
        self.e = int(e)
        self.q = self.p**self.e
        if dim_cap < self.q * self.q:
            raise ValueError(f"dim_cap {dim_cap} is below q^2 = {self.q * self.q}")
        self.dim_cap = int(dim_cap)
        self.tensor: dict[tuple[int, int], tuple[int, ...]] = {}
        self.lambda_table: dict[tuple[int, int], tuple[int, ...]] = {}
        self.s_table: dict[tuple[int, int], tuple[int, ...]] = {}
        self.adams_lambda_table: dict[tuple[int, int], tuple[int, ...]] = {}
        self.adams_s_table: dict[tuple[int, int], tuple[int, ...]] = {}
        self.lock = threading.RLock()
        self._factors: dict[int, GreenContext] = {self.e: self}

    def __repr__(self):
        return f"GreenContext(p={self.p}, q={self.q})"

    def same(self, other: "GreenContext") -> bool:
        return self.p == other.p and self.q == other.q

    # -- related contexts -----------------------------------------------------
    def factor(self, j: int) -> "GreenContext":
        """The context of order p^j (j <= e), sharing this context's cap."""
        if not 0 <= j <= self.e:
            raise ValueError(f"order p^{j} does not divide q = {self.q}")
        with self.lock:
            if j not in self._factors:
                self._factors[j] = GreenContext(self.p, j, max(self.dim_cap, self.p ** (2 * j)))
            return self._factors[j]

    def child(self) -> "GreenContext":
        """The context of the subgroup of index p."""
        if self.q == 1:
            raise ValueError("the trivial group has no subgroup of index p")
        return self.factor(self.e - 1)

    # -- elements ---------------------------------------------------------------
    def element(self, coeffs: Sequence[int]) -> "GreenElement":
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.q:
            raise ValueError(f"expected {self.q} coefficients, got {len(coeffs)}")
        return GreenElement(self, coeffs)

    def zero(self) -> "GreenElement":
        return GreenElement(self, (0,) * self.q)

    def one(self) -> "GreenElement":
        return self.V(1)

    def V(self, r: int) -> "GreenElement":
        """The basis element V_r; V_0 is the zero element."""
        if not 0 <= r <= self.q:
            raise ValueError(f"V_{r} is not defined for q = {self.q}")
        c = [0] * self.q
        if r:
            c[r - 1] = 1
        return GreenElement(self, tuple(c))

    def basis(self) -> list["GreenElement"]:
        return [self.V(r) for r in range(1, self.q + 1)]

    def _check_r(self, r: int):
        if not 1 <= r <= self.q:
            raise ValueError(f"r = {r} outside 1..{self.q}")

    # -- multiplication table ---------------------------------------------------
    def tensor_basis(self, r: int, s: int) -> "GreenElement":
        """V_r V_s, read off the Kronecker product of Jordan blocks."""
        self._check_r(r)
        self._check_r(s)
        key = (min(r, s), max(r, s))
        with self.lock:
            if key not in self.tensor:
                a = modreal.indecomposable(self, key[0])
                b = modreal.indecomposable(self, key[1])
                self.tensor[key] = modreal.decompose(modreal.tensor(a, b)).coeffs
            return GreenElement(self, self.tensor[key])

    # -- exterior and symmetric powers -----------------------------------------
    def lambda_power(self, r: int, j: int) -> "GreenElement":
        """Lambda^j(V_r); uses Lambda^j(V_r) = Lambda^(r-j)(V_r) to halve the table."""
        self._check_r(r)
        if j < 0:
            raise ValueError("j must be non-negative")
        if j > r:
            return self.zero()
        j = min(j, r - j)
        if j == 0:
            return self.one()
        if r == self.q:
            return self.lambda_regular(j)
        key = (r, j)
        with self.lock:
            if key not in self.lambda_table:
                mod = modreal.exterior_power(modreal.indecomposable(self, r), j)
                self.lambda_table[key] = modreal.decompose(mod).coeffs
            return GreenElement(self, self.lambda_table[key])

    def s_power(self, r: int, n: int) -> "GreenElement":
        """S^n(V_r); the regular module goes through orbit counting."""
        self._check_r(r)
        if n < 0:
            raise ValueError("n must be non-negative")
        if n == 0:
            return self.one()
        if r == self.q:
            return self.s_regular(n)
        key = (r, n)
        with self.lock:
            if key not in self.s_table:
                self.s_table[key] = modreal.decompose_symmetric_power(self, r, n).coeffs
            return GreenElement(self, self.s_table[key])

    def _regular(self, n: int, multisets: bool) -> "GreenElement":
        # rotation c -> c + 1 on n-subsets (or n-multisets) of Z/q; an orbit of
        # size t is a copy of V_t
        if n < 0:
            raise ValueError("n must be non-negative")
        q = self.q

        def fixed(t: int) -> int:
            # subsets fixed by g^t: unions of residue classes mod t
            if t < 1 or (n * t) % q:
                return 0
            k = n * t // q
            return comb(t + k - 1, k) if multisets else comb(t, k)

        c = [0] * q
        t = 1
        while t <= q:
            count, rem = divmod(fixed(t) - fixed(t // self.p if t > 1 else 0), t)
            if rem:
                raise ConsistencyError(f"orbit count of size {t} is not integral")
            c[t - 1] = count
            t *= self.p
        return GreenElement(self, tuple(c))

    def lambda_regular(self, n: int) -> "GreenElement":
        return self._regular(n, multisets=False)

    def s_regular(self, n: int) -> "GreenElement":
        return self._regular(n, multisets=True)

    # -- maps between contexts ----------------------------------------------------
    def restrict(self, a: "GreenElement") -> "GreenElement":
        """Restriction to the subgroup of index p: V_r -> (p-b)V~_a + bV~_(a+1), r = ap + b."""
        self._own(a)
        child = self.child()
        c = [0] * child.q
        for r, x in a.terms():
            k, b = divmod(r, self.p)
            if k:
                c[k - 1] += (self.p - b) * x
            if b:
                c[k] += b * x
        return GreenElement(child, tuple(c))

    def induce(self, a: "GreenElement") -> "GreenElement":
        """Induction from the subgroup of index p: V~_r -> V_(pr)."""
        child = self.child()
        if not a.ctx.same(child):
            raise ContextMismatch(f"induce expects an element over q = {child.q}, got q = {a.ctx.q}")
        c = [0] * self.q
        for r, x in a.terms():
            c[self.p * r - 1] += x
        return GreenElement(self, tuple(c))

    def inflate(self, a: "GreenElement") -> "GreenElement":
        """Inflation from a quotient of order p^j: pad the coefficient vector."""
        if a.ctx.p != self.p or self.q % a.ctx.q:
            raise ContextMismatch(f"cannot inflate from q = {a.ctx.q} (p = {a.ctx.p}) to q = {self.q}")
        return GreenElement(self, a.coeffs + (0,) * (self.q - a.ctx.q))

    def _own(self, a: "GreenElement"):
        if not self.same(a.ctx):
            raise ContextMismatch(f"element over q = {a.ctx.q}, p = {a.ctx.p} used in {self!r}")


def _coerce(ctx: GreenContext, other) -> "GreenElement | None":
    if isinstance(other, GreenElement):
        if not ctx.same(other.ctx):
            raise ContextMismatch(f"elements over (p={ctx.p}, q={ctx.q}) and (p={other.ctx.p}, q={other.ctx.q})")
        return other
    return None


@dataclass(frozen=True, eq=False)
class GreenElement:
    """sum_i alpha_i V_i with integer coefficients of either sign."""

    ctx: GreenContext
    coeffs: tuple[int, ...]

    # -- structure --------------------------------------------------------------
    def alpha(self, i: int) -> int:
        return self.coeffs[i - 1]

    def alpha1(self) -> int:
        return self.coeffs[0]

    def terms(self) -> Iterable[tuple[int, int]]:
        """(r, alpha_r) for the nonzero coefficients."""
        return ((r, x) for r, x in enumerate(self.coeffs, 1) if x)

    def dimension(self) -> int:
        return sum(r * x for r, x in enumerate(self.coeffs, 1))

    def delta_endomorphism(self) -> "GreenElement":
        return self.dimension() * self.ctx.one()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_induced(self) -> bool:
        return all(x == 0 for r, x in self.terms() if r % self.ctx.p)

    def proj_equiv(self, other: "GreenElement") -> bool:
        d = self - other
        return all(x == 0 for r, x in d.terms() if r != self.ctx.q)

    def ind_equiv(self, other: "GreenElement") -> bool:
        return (self - other).is_induced()

    def heller(self, n: int = 1) -> "GreenElement":
        """Omega^n, with Omega(V_r) = V_(q-r) and Omega(V_q) = 0."""
        if n < 0:
            raise ValueError("n must be non-negative")
        q = self.ctx.q
        c = list(self.coeffs)
        for _ in range(n):
            nxt = [0] * q
            for r in range(1, q):
                nxt[q - r - 1] = c[r - 1]
            c = nxt
        return GreenElement(self.ctx, tuple(c))

    def restrict(self) -> "GreenElement":
        return self.ctx.restrict(self)

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = _coerce(self.ctx, other)
        if o is None:
            return NotImplemented
        return GreenElement(self.ctx, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def __sub__(self, other):
        o = _coerce(self.ctx, other)
        if o is None:
            return NotImplemented
        return GreenElement(self.ctx, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __neg__(self):
        return GreenElement(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return GreenElement(self.ctx, tuple(other * a for a in self.coeffs))
        o = _coerce(self.ctx, other)
        if o is None:
            return NotImplemented
        out = [0] * self.ctx.q
        for r, x in self.terms():
            for s, y in o.terms():
                for k, z in self.ctx.tensor_basis(r, s).terms():
                    out[k - 1] += x * y * z
        return GreenElement(self.ctx, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GreenElement):
            return NotImplemented
        return self.ctx.same(other.ctx) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.q, self.coeffs))

    def __repr__(self):
        return f"GreenElement(p={self.ctx.p}, q={self.ctx.q}, {self})"

    def __str__(self):
        return format_element(self.coeffs)


def format_element(coeffs: Sequence[int]) -> str:
    """Signed sum such as ``-2*V1 + 2*V2``; unit coefficients print bare."""
    parts = []
    for r, x in enumerate(coeffs, 1):
        if not x:
            continue
        mag = abs(x)
        term = f"V{r}" if mag == 1 else f"{mag}*V{r}"
        if not parts:
            parts.append(term if x > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if x > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"
