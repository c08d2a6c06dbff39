"""Command-line front end: ``greenadams compute|table|verify|cache``.

Exit codes: 0 success, 1 verification failure or cache mismatch, 2 invalid
arguments, 3 dimension cap exceeded, 4 I/O or cache-file error.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import os
import sys
from dataclasses import dataclass

import click

from . import adams, cache, verify
from .errors import CapExceeded, GreenError
from .greenring import DEFAULT_DIM_CAP, GreenContext, GreenElement

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_IO = 0, 1, 2, 3, 4

OPS = ("adams-lambda", "adams-s", "lambda-power", "s-power", "tensor", "heller", "restrict", "induce")
# ops whose value depends on --n (tensor reads its second factor from --s)
N_OPS = {"adams-lambda", "adams-s", "lambda-power", "s-power", "heller"}


class CliAbort(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


@dataclass
class CliConfig:
    p: int
    e: int
    dim_cap: int
    cache_path: str | None
    output_format: str
    seed: int

    def context(self) -> GreenContext:
        try:
            ctx = GreenContext(self.p, self.e, self.dim_cap)
        except ValueError as exc:
            raise CliAbort(EXIT_USAGE, str(exc)) from exc
        if self.cache_path and os.path.exists(self.cache_path):
            cache.load(ctx, self.cache_path, seed=self.seed)
        return ctx

    def save(self, ctx: GreenContext):
        if self.cache_path:
            cache.save(ctx, self.cache_path)


def context_options(f):
    @click.option("--p", "p", type=int, required=True, help="Characteristic p (prime).")
    @click.option("--e", "e", type=int, required=True, help="Exponent e, with q = p^e.")
    @click.option("--dim-cap", type=int, default=DEFAULT_DIM_CAP, show_default=True,
                  help="Largest explicit module the oracle may build.")
    @click.option("--cache", "cache_path", type=click.Path(dir_okay=False), default=None,
                  help="JSON cache file to load and update.")
    @click.option("--format", "output_format", type=click.Choice(["pretty", "json", "csv"]), default="pretty",
                  show_default=True)
    @click.option("--seed", type=int, default=0, show_default=True)
    @functools.wraps(f)
    def wrapper(p, e, dim_cap, cache_path, output_format, seed, **kwargs):
        cfg = CliConfig(p, e, dim_cap, cache_path, output_format, seed)
        return _guarded(f, cfg, **kwargs)

    return wrapper


def _guarded(f, cfg: CliConfig, **kwargs):
    try:
        code = f(cfg, **kwargs)
    except CliAbort as exc:
        click.echo(f"error: {exc.message}", err=True)
        sys.exit(exc.code)
    except CapExceeded as exc:
        click.echo(f"cap exceeded: {exc}", err=True)
        sys.exit(EXIT_CAP)
    except cache.CacheMismatch as exc:
        click.echo(f"cache mismatch: {len(exc.mismatches)} entries", err=True)
        for m in exc.mismatches:
            click.echo(f"  {m}", err=True)
        sys.exit(EXIT_FAIL)
    except (cache.CacheError, OSError) as exc:
        click.echo(f"i/o error: {exc}", err=True)
        sys.exit(EXIT_IO)
    except (ValueError, GreenError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    sys.exit(code or EXIT_OK)


# -- rendering ----------------------------------------------------------------------
def element_json(a: GreenElement) -> dict:
    return {"coeffs": list(a.coeffs), "dim": a.dimension()}


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _header(q: int) -> list[str]:
    return [f"V{i}" for i in range(1, q + 1)]


def render_element(a: GreenElement, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(element_json(a))
    if fmt == "csv":
        return _csv([list(a.coeffs)], _header(a.ctx.q)).rstrip("\n")
    return str(a)


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise CliAbort(EXIT_USAGE, f"bad range {text!r}; expected an integer or a..b") from exc
    if hi < lo:
        raise CliAbort(EXIT_USAGE, f"empty range {text!r}")
    return list(range(lo, hi + 1))


# -- dispatch -----------------------------------------------------------------------
def evaluate(ctx: GreenContext, op: str, n: int | None, r: int | None, s: int | None = None) -> GreenElement:
    """The value of ``op`` at (n, r[, s]); raises ValueError on bad arguments."""
    if r is None:
        raise ValueError(f"{op} needs --r")
    if op in N_OPS and n is None:
        raise ValueError(f"{op} needs --n")
    if op == "induce":
        child = ctx.child()
        child._check_r(r)
        return ctx.induce(child.V(r))
    ctx._check_r(r)
    v = ctx.V(r)
    if op == "adams-lambda":
        return adams.adams_lambda_fast(ctx, n, v)
    if op == "adams-s":
        return adams.adams_s_fast(ctx, n, v)
    if op == "lambda-power":
        return ctx.lambda_power(r, n)
    if op == "s-power":
        return ctx.s_power(r, n)
    if op == "heller":
        return v.heller(n)
    if op == "tensor":
        if s is None:
            raise ValueError("tensor needs --s")
        return ctx.tensor_basis(r, s)
    if op == "restrict":
        return ctx.restrict(v)
    raise ValueError(f"unknown op {op!r}")


@click.group()
def main():
    """Exact Adams operations on the Green ring of a cyclic p-group."""


@main.command()
@click.argument("op", type=click.Choice(OPS))
@click.option("--n", type=int, default=None, help="Degree n.")
@click.option("--r", type=int, default=None, help="Basis index r (V_r).")
@click.option("--s", type=int, default=None, help="Second factor for tensor.")
@context_options
def compute(cfg: CliConfig, op, n, r, s):
    """Print one value, e.g. ``compute adams-lambda --p 3 --e 2 --n 6 --r 9``."""
    ctx = cfg.context()
    a = evaluate(ctx, op, n, r, s)
    click.echo(render_element(a, cfg.output_format))
    cfg.save(ctx)


@main.command()
@click.argument("op", type=click.Choice(OPS))
@click.option("--n", "n_range", default=None, help="Range a..b of n (of s for tensor).")
@click.option("--r", "r_range", required=True, help="Range a..b of r.")
@context_options
def table(cfg: CliConfig, op, n_range, r_range):
    """One row per (n, r), n outer and r inner."""
    ctx = cfg.context()
    if n_range is None:
        if op in N_OPS or op == "tensor":
            raise CliAbort(EXIT_USAGE, f"{op} needs --n")
        ns = [None]
    else:
        ns = parse_range(n_range)
    rs = parse_range(r_range)
    rows = []
    for n in ns:
        for r in rs:
            a = evaluate(ctx, op, n, r, n) if op == "tensor" else evaluate(ctx, op, n, r)
            rows.append((n, r, a))
    q_out = rows[0][2].ctx.q
    if cfg.output_format == "csv":
        body = [["" if n is None else n, r, *a.coeffs] for n, r, a in rows]
        click.echo(_csv(body, ["n", "r", *_header(q_out)]), nl=False)
    elif cfg.output_format == "json":
        click.echo(json.dumps([{"n": n, "r": r, **element_json(a)} for n, r, a in rows]))
    else:
        for n, r, a in rows:
            click.echo(f"r={r}: {a}" if n is None else f"n={n} r={r}: {a}")
    cfg.save(ctx)


@main.command(name="verify")
@click.option("--suites", default="all", show_default=True,
              help=f"Comma-separated subset of {', '.join(verify.SUITES)}, or all.")
@click.option("--n-max", type=int, default=None, help="Degree bound (default 4q; 12 for conversion).")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report here.")
@click.option("--timings", is_flag=True, help="Record wall-clock times in the report.")
@context_options
def verify_cmd(cfg: CliConfig, suites, n_max, report_path, timings):
    """Run verification suites; exit 1 if any check fails."""
    ctx = cfg.context()
    rep = verify.run(ctx, suites, n_max=n_max, seed=cfg.seed, timings=timings)
    text = rep.to_json()
    if report_path:
        with open(report_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if cfg.output_format == "json" and not report_path:
        click.echo(text, nl=False)
    # keep stdout pure JSON when the report goes there
    to_err = cfg.output_format == "json" and not report_path
    summ = rep.summary
    click.echo(
        f"p={ctx.p} q={ctx.q} suite={rep.suite}: pass={summ['pass']} fail={summ['fail']} "
        f"skipped_cap={summ['skipped_cap']}",
        err=to_err,
    )
    periods = {c.check_id.rsplit("_", 1)[1]: c.value for c in rep.checks
               if c.check_id.startswith("periodicity.minimal_period_")}
    if periods:
        click.echo(f"minimal periods: lambda={periods['lambda']} s={periods['s']}", err=to_err)
    cfg.save(ctx)
    bad = rep.failures()
    if bad:
        first = bad[0]
        click.echo(f"FAIL {first.check_id}: {first.statement}", err=True)
        click.echo(f"  witness: {json.dumps(first.witness)}", err=True)
        return EXIT_FAIL
    return EXIT_OK


@main.command(name="cache")
@click.argument("action", type=click.Choice(["build", "validate", "clear"]))
@click.option("--n-max", type=int, default=None, help="Symmetric powers up to this degree (default q).")
@click.option("--fraction", type=float, default=1.0, show_default=True,
              help="Fraction of entries re-derived by validate.")
@context_options
def cache_cmd(cfg: CliConfig, action, n_max, fraction):
    """Build, validate, or remove the cache file given by --cache."""
    if not cfg.cache_path:
        raise CliAbort(EXIT_USAGE, "cache commands need --cache PATH")
    path = cfg.cache_path
    if action == "clear":
        if os.path.exists(path):
            os.remove(path)
            click.echo(f"removed {path}")
        else:
            click.echo(f"no cache at {path}")
        return EXIT_OK
    if action == "validate":
        try:
            ctx = GreenContext(cfg.p, cfg.e, cfg.dim_cap)
        except ValueError as exc:
            raise CliAbort(EXIT_USAGE, str(exc)) from exc
        res = cache.validate(ctx, path, fraction=fraction, seed=cfg.seed)
        if not res.ok:
            click.echo(f"mismatch: {len(res.mismatches)} of {res.checked} checked entries", err=True)
            for m in res.mismatches:
                click.echo(f"  {m}", err=True)
            return EXIT_FAIL
        click.echo(f"ok: {res.checked} of {res.total} entries re-derived")
        return EXIT_OK
    ctx = cfg.context()
    cache.build(ctx, n_max)
    cache.save(ctx, path)
    doc = cache.dump(ctx)
    sizes = ", ".join(f"{name}={len(doc[name])}" for name in cache.SECTIONS)
    click.echo(f"wrote {path}: {sizes}")
    return EXIT_OK


if __name__ == "__main__":
    main()
