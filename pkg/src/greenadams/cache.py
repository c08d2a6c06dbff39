"""Persistence of a context's memo tables as a versioned JSON document.

Layout::

    {"version": 1, "p": 2, "q": 4,
     "tensor_table": {"r,s": [...]}, "lambda_table": {"r,j": [...]},
     "s_table": {"r,n": [...]}, "adams_lambda": {"n,r": [...]},
     "adams_s": {"n,r": [...]}}

Values are length-q integer arrays.  Loading re-derives a seeded random
sample of the entries from scratch and refuses the file on any mismatch.
"""

from __future__ import annotations

import json
import math
import os
import random
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from . import adams
from .errors import CapExceeded, GreenError
from .greenring import GreenContext

VERSION = 1
DEFAULT_SAMPLE_FRACTION = 0.05

# JSON section name -> context attribute
SECTIONS = {
    "tensor_table": "tensor",
    "lambda_table": "lambda_table",
    "s_table": "s_table",
    "adams_lambda": "adams_lambda_table",
    "adams_s": "adams_s_table",
}


class CacheError(GreenError):
    """The cache file is unreadable, malformed, or for another context."""


class CacheMismatch(GreenError):
    def __init__(self, mismatches: list[str]):
        self.mismatches = mismatches
        super().__init__(f"{len(mismatches)} cache entries disagree with the oracle: {mismatches[0]}")


@dataclass
class ValidationResult:
    checked: int = 0
    total: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _key(k: tuple[int, int]) -> str:
    return f"{k[0]},{k[1]}"


def dump(ctx: GreenContext) -> dict:
    doc: dict = {"version": VERSION, "p": ctx.p, "q": ctx.q}
    with ctx.lock:
        for name, attr in SECTIONS.items():
            table = dict(getattr(ctx, attr))
            if name == "tensor_table":
                # the context stores r <= s; the file carries the full square
                table.update({(s, r): v for (r, s), v in list(table.items())})
            doc[name] = {_key(k): list(table[k]) for k in sorted(table)}
    return doc


def save(ctx: GreenContext, path: str | os.PathLike) -> None:
    path = Path(path)
    text = json.dumps(dump(ctx), indent=None, separators=(",", ":"))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
        os.replace(tmp, path)
    except OSError as exc:
        raise CacheError(f"cannot write cache {path}: {exc}") from exc


def _parse(ctx: GreenContext, doc) -> dict[str, dict[tuple[int, int], tuple[int, ...]]]:
    if not isinstance(doc, dict) or doc.get("version") != VERSION:
        raise CacheError("unsupported cache version")
    if doc.get("p") != ctx.p or doc.get("q") != ctx.q:
        raise CacheError(f"cache is for p={doc.get('p')}, q={doc.get('q')}, not p={ctx.p}, q={ctx.q}")
    out = {}
    for name in SECTIONS:
        section = doc.get(name, {})
        if not isinstance(section, dict):
            raise CacheError(f"section {name} is not an object")
        table = {}
        for key, val in section.items():
            try:
                a, b = (int(x) for x in key.split(","))
            except ValueError as exc:
                raise CacheError(f"bad key {key!r} in {name}") from exc
            if not (isinstance(val, list) and len(val) == ctx.q and all(isinstance(x, int) for x in val)):
                raise CacheError(f"bad value for {name}[{key}]")
            table[(a, b)] = tuple(val)
        if name == "tensor_table":
            table = _fold_tensor(table)
        out[name] = table
    return out


def _fold_tensor(table):
    folded = {}
    for (a, b), val in table.items():
        key = (min(a, b), max(a, b))
        if folded.get(key, val) != val:
            raise CacheError(f"tensor_table[{a},{b}] and [{b},{a}] disagree")
        folded[key] = val
    return folded


def _rederive(fresh: GreenContext, name: str, key: tuple[int, int]) -> tuple[int, ...]:
    a, b = key
    if name == "tensor_table":
        return fresh.tensor_basis(a, b).coeffs
    if name == "lambda_table":
        return fresh.lambda_power(a, b).coeffs
    if name == "s_table":
        return fresh.s_power(a, b).coeffs
    if name == "adams_lambda":
        return adams.adams_lambda_basis(fresh, a, b).coeffs
    return adams.adams_s_direct_basis(fresh, a, b).coeffs


def validate_tables(ctx: GreenContext, tables, fraction: float, seed: int = 0) -> ValidationResult:
    entries = [(name, k) for name in SECTIONS for k in sorted(tables[name])]
    res = ValidationResult(total=len(entries))
    if not entries or fraction <= 0:
        return res
    k = len(entries) if fraction >= 1 else max(1, math.ceil(fraction * len(entries)))
    sample = random.Random(seed).sample(entries, k)
    fresh = GreenContext(ctx.p, ctx.e, ctx.dim_cap)
    for name, key in sorted(sample):
        res.checked += 1
        try:
            want = _rederive(fresh, name, key)
        except (ValueError, GreenError) as exc:
            res.mismatches.append(f"{name}[{_key(key)}]: not recomputable ({exc})")
            continue
        if want != tables[name][key]:
            res.mismatches.append(f"{name}[{_key(key)}]: stored {list(tables[name][key])}, oracle {list(want)}")
    return res


def read(ctx: GreenContext, path: str | os.PathLike):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    return _parse(ctx, doc)


def load(ctx: GreenContext, path: str | os.PathLike, fraction: float = DEFAULT_SAMPLE_FRACTION,
         seed: int = 0) -> ValidationResult:
    """Merge a cache file into ``ctx`` after revalidating a sample of it."""
    tables = read(ctx, path)
    res = validate_tables(ctx, tables, fraction, seed)
    if not res.ok:
        raise CacheMismatch(res.mismatches)
    with ctx.lock:
        for name, attr in SECTIONS.items():
            getattr(ctx, attr).update(tables[name])
    return res


def validate(ctx: GreenContext, path: str | os.PathLike, fraction: float = 1.0, seed: int = 0) -> ValidationResult:
    return validate_tables(ctx, read(ctx, path), fraction, seed)


def build(ctx: GreenContext, n_max: int | None = None) -> None:
    """Fill the tensor and exterior tables and S^n(V_r) for n <= n_max (default q).

    Symmetric powers beyond the cap are left out rather than failing.
    """
    q = ctx.q
    n_max = q if n_max is None else n_max
    for r in range(1, q + 1):
        for s in range(r, q + 1):
            ctx.tensor_basis(r, s)
        for j in range(r + 1):
            ctx.lambda_power(r, j)
        for n in range(1, n_max + 1):
            try:
                ctx.s_power(r, n)
            except CapExceeded:
                break
