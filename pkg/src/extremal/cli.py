"""Command-line surface.

Exit codes: 0 ok, 2 parse/usage error, 3 budget exceeded, 4 counterexample
found under ``scan --expect-clean``.  All randomness hangs off the single
``--seed`` option, so equal invocations produce byte-identical outputs.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path
from typing import Optional

import click

from . import hgr, workbench
from .errors import BudgetError, FormatError
from .workbench import canonical_json, fmt_float

EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_COUNTEREXAMPLE = 4


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (FormatError, FileNotFoundError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_PARSE)
        except BudgetError as exc:
            click.echo(f"budget exceeded: {exc}", err=True)
            sys.exit(EXIT_BUDGET)

    return wrapper


@click.group()
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for all randomness.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Worker threads for scans; results merge deterministically.")
@click.pass_context
def main(ctx: click.Context, seed: int, jobs: int) -> None:
    """Desk-scale extremal hypergraph workbench."""
    ctx.obj = {"seed": seed, "jobs": max(1, jobs)}


def _emit(payload: dict, json_path: Optional[str]) -> None:
    if json_path:
        Path(json_path).write_text(canonical_json(payload))


@main.command()
@click.argument("tag")
@click.argument("params", nargs=-1)
@click.option("-o", "--output", required=True, help="Output .hgr path.")
@_guarded
def make(tag: str, params: tuple[str, ...], output: str) -> None:
    """Generate a named construction (turan, turanr, complete, gentriangle,
    hinge, matching, sunflower, semibip, turanplus, expansion <file>)."""
    if tag == "expansion":
        if len(params) != 1:
            raise FormatError("expansion takes one argument: the base graph file")
        from .constructions import expansion

        g = expansion(hgr.load(params[0]))
    else:
        try:
            ints = [int(p) for p in params]
        except ValueError as exc:
            raise FormatError(f"construction parameters must be integers: {exc}") from exc
        g = workbench.op_make(tag, ints)
    hgr.dump(g, output)
    click.echo(f"wrote {output}: r={g.r} n={g.n} m={len(g.edges)}")


@main.command()
@click.argument("path")
@click.option("--class", "target", default=None, help="Class spec, e.g. krl:3:3 or bipartite.")
@click.option("--family", default=None, help="Family spec, e.g. k3 or sigma:3.")
@click.option("--json", "json_path", default=None, help="Write the report as JSON.")
@_guarded
def check(path: str, target: Optional[str], family: Optional[str], json_path: Optional[str]) -> None:
    """Report hull membership / freeness of a graph file."""
    payload = workbench.op_check(path, target, family)
    _emit(payload, json_path)
    for key in ("in_hull", "member", "free"):
        if key in payload:
            click.echo(f"{key}: {payload[key]}")


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--family", required=True)
@click.option("--method", type=click.Choice(["brute", "patterns", "both"]), default="both",
              show_default=True)
@click.option("--pmax", type=int, default=None, help="Pattern size cap for the pattern route.")
@click.option("--json", "json_path", default=None)
@click.option("--witness-dir", default=None, help="Directory for extremal witness .hgr files.")
@_guarded
def ex(n: int, family: str, method: str, pmax: Optional[int], json_path: Optional[str],
       witness_dir: Optional[str]) -> None:
    """Exact Turan number with extremal witnesses."""
    payload = workbench.op_ex(n, family, method, pmax)
    _emit(payload, json_path)
    if witness_dir:
        out = Path(witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, obj in enumerate(payload["witnesses"]):
            hgr.dump(hgr.from_json_obj(obj), out / f"ex_n{n}_w{i}.hgr")
    click.echo(f"ex(n={n}, {family}) = {payload['value']} "
               f"[{payload['method']}, {len(payload['witnesses'])} witness(es)]")


@main.command()
@click.argument("path")
@click.option("--supports", is_flag=True, help="Force full support enumeration.")
@click.option("--restarts", type=int, default=64, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--json", "json_path", default=None)
@click.pass_context
@_guarded
def lagrangian(ctx: click.Context, path: str, supports: bool, restarts: int, fmt: str,
               json_path: Optional[str]) -> None:
    """Maximize the edge polynomial of a graph file over the simplex."""
    payload = workbench.op_lagrangian(path, supports, restarts, ctx.obj["seed"])
    _emit(payload, json_path)
    if fmt == "json":
        click.echo(canonical_json(payload), nl=False)
    else:
        maximizer = ";".join(fmt_float(w) for w in payload["maximizer"])
        click.echo("value,gap,method,maximizer")
        click.echo(f"{fmt_float(payload['value'])},{fmt_float(payload['gap'])},"
                   f"{payload['method']},{maximizer}")


@main.command()
@click.argument("path")
@click.option("--family", required=True)
@click.option("--mode", type=click.Choice(["class", "vertex"]), default="class", show_default=True)
@click.option("--trace", "trace_path", default=None, help="Write the step trace as JSON.")
@click.option("-o", "--output", default=None, help="Write the final graph as .hgr.")
@_guarded
def symmetrize(path: str, family: str, mode: str, trace_path: Optional[str],
               output: Optional[str]) -> None:
    """Run symmetrization to a fixed point."""
    payload = workbench.op_symmetrize(path, family, mode)
    _emit(payload, trace_path)
    if output:
        hgr.dump(hgr.from_json_obj(payload["final"]), output)
    final = payload["final"]
    click.echo(f"{len(payload['steps'])} step(s); final has {len(final['edges'])} edges")


@main.command()
@click.option("--family", required=True)
@click.option("--class", "target", required=True)
@click.option("--kind", type=click.Choice(["degree", "vertex", "edge"]), default="degree",
              show_default=True)
@click.option("--n", "n_range", required=True, help="Vertex range A..B (e.g. 5..7).")
@click.option("--eps", type=float, required=True)
@click.option("--delta", type=float, default=0.0, show_default=True)
@click.option("--piref", type=float, default=None,
              help="Reference density; defaults to the family preset when known.")
@click.option("--expect-clean", is_flag=True,
              help="Exit with status 4 if any counterexample is found.")
@click.option("--json", "json_path", default=None)
@click.option("--csv", "csv_path", default=None, help="Write the counterexample table as CSV.")
@click.pass_context
@_guarded
def scan(ctx: click.Context, family: str, target: str, kind: str, n_range: str, eps: float,
         delta: float, piref: Optional[float], expect_clean: bool, json_path: Optional[str],
         csv_path: Optional[str]) -> None:
    """Exhaustive stability scan over all family-free graphs in a vertex range."""
    try:
        lo, hi = (int(tok) for tok in n_range.split(".."))
    except ValueError as exc:
        raise FormatError(f"bad --n range {n_range!r}, expected A..B") from exc
    payload = workbench.op_scan(family, target, kind, lo, hi, eps, delta, piref,
                                jobs=ctx.obj["jobs"])
    _emit(payload, json_path)
    if csv_path:
        rows = ["n,min_degree,edges,distance,bound"]
        for c in payload["counterexamples"]:
            dist = "" if c["distance"] is None else str(c["distance"])
            bound = "" if c["bound"] is None else fmt_float(c["bound"])
            rows.append(f"{c['n']},{c['min_degree']},{c['edges']},{dist},{bound}")
        Path(csv_path).write_text("\n".join(rows) + "\n")
    click.echo(payload["summary"])
    if expect_clean and payload["counterexamples"]:
        sys.exit(EXIT_COUNTEREXAMPLE)


@main.command()
@click.argument("path")
@click.option("--v", "vertex", type=int, required=True)
@click.option("--class", "target", required=True)
@click.option("--zeta", type=float, required=True)
@click.option("--piref", type=float, required=True)
@click.option("--json", "json_path", default=None)
@_guarded
def extendable(path: str, vertex: int, target: str, zeta: float, piref: float,
               json_path: Optional[str]) -> None:
    """Vertex-extendability verdict for one graph and one vertex."""
    payload = workbench.op_extendable(path, vertex, target, zeta, piref)
    _emit(payload, json_path)
    click.echo(f"{payload['status']} (degree_ok={payload['degree_ok']}, "
               f"base_in_hull={payload['base_in_hull']}, self_in_hull={payload['self_in_hull']})")


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--r", "uniformity", type=int, required=True)
@click.option("--family", default=None, help="Restrict to family-free graphs.")
@click.option("-o", "--outdir", default=None, help="Dump one .hgr per isomorphism class.")
@click.option("--json", "json_path", default=None)
@_guarded
def enum(n: int, uniformity: int, family: Optional[str], outdir: Optional[str],
         json_path: Optional[str]) -> None:
    """Isomorph-free enumeration."""
    payload = workbench.op_enum(n, uniformity, family)
    _emit(payload, json_path)
    if outdir:
        out = Path(outdir)
        out.mkdir(parents=True, exist_ok=True)
        for i, obj in enumerate(payload["graphs"]):
            hgr.dump(hgr.from_json_obj(obj), out / f"g{i:05d}.hgr")
    click.echo(f"{payload['count']} isomorphism class(es)")


if __name__ == "__main__":
    main()
