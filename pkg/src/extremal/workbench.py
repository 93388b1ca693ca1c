"""Experiment configs, result records, and the shared command implementations.

Every CLI subcommand is a thin wrapper over an ``op_*`` function here, and
``run`` replays a JSON config through the same functions, so a config plus a
seed fully determines the outputs.  Output JSON is canonical (sorted keys,
two-space indent, trailing newline) and CSV floats carry 12 significant
digits; wall time lives only on the result record, never in output files.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional

from . import __version__
from . import constructions as cons
from . import hgr
from .errors import FormatError
from .isomorphism import canonical_relabel, enumerate_rgraphs
from .lagrangian import maximize
from .morphism import (
    FamilySpec,
    cancellative_family,
    explicit_family,
    generalized_triangles,
    is_free,
    single_graph,
    weak_expansions,
)
from .rgraph import RGraph
from .stability import (
    ClassSpec,
    check_vertex_extendable,
    class_membership,
    complete_blowups,
    in_hull,
    scan_stability,
    semibipartite_class,
    two_covered_systems,
)
from .symmetrization import ex as ex_both
from .symmetrization import ex_bruteforce, ex_via_patterns, symmetrize


def fmt_float(x: float) -> str:
    return f"{float(x):.12g}"


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# family and class parsing (the CLI surface names)


def parse_family(text: str) -> FamilySpec:
    """CLI family syntax: ``k<L>`` for a single complete graph, ``sigma:<r>``,
    ``cancellative:<r>``, ``weakexp:<path>``, ``file:<path>``, ``list:<dir>``.
    """
    text = text.strip()
    if text.startswith("k") and text[1:].isdigit():
        return single_graph(cons.complete_graph(int(text[1:])))
    if text.startswith("sigma"):
        arg = text.split(":", 1)[1] if ":" in text else text[len("sigma") :]
        if not arg.isdigit():
            raise FormatError(f"bad family spec {text!r}: expected sigma:<r>")
        return generalized_triangles(int(arg))
    if text.startswith("cancellative"):
        arg = text.split(":", 1)[1] if ":" in text else text[len("cancellative") :]
        if not arg.isdigit():
            raise FormatError(f"bad family spec {text!r}: expected cancellative:<r>")
        return cancellative_family(int(arg))
    if text.startswith("weakexp:"):
        return weak_expansions(hgr.load(text.split(":", 1)[1]))
    if text.startswith("file:"):
        return single_graph(hgr.load(text.split(":", 1)[1]))
    if text.startswith("list:"):
        directory = Path(text.split(":", 1)[1])
        members = [hgr.load(p) for p in sorted(directory.glob("*.hgr"))]
        if not members:
            raise FormatError(f"no .hgr files in {directory}")
        return explicit_family(members)
    raise FormatError(f"unknown family spec {text!r}")


def parse_class(text: str) -> ClassSpec:
    """CLI class syntax: ``krl:<r>:<parts>`` (alias ``bipartite``),
    ``semibip:<r>``, ``twocov:<r>[:<pmax>]``."""
    text = text.strip()
    if text == "bipartite":
        return complete_blowups(2, 2)
    parts = text.split(":")
    try:
        if parts[0] == "krl" and len(parts) == 3:
            return complete_blowups(int(parts[1]), int(parts[2]))
        if parts[0] == "semibip" and len(parts) == 2:
            return semibipartite_class(int(parts[1]))
        if parts[0] == "twocov" and len(parts) in (2, 3):
            pmax = int(parts[2]) if len(parts) == 3 else 6
            return two_covered_systems(int(parts[1]), pmax)
    except ValueError as exc:
        raise FormatError(f"bad class spec {text!r}") from exc
    raise FormatError(f"unknown class spec {text!r}")


def preset_pi(fam: FamilySpec) -> Optional[Fraction]:
    """Exact limiting densities for the stock families, None when unknown."""
    if fam.kind == "explicit" and len(fam.members) == 1:
        f = fam.members[0]
        if f.r == 2 and len(f.edges) == (f.n * (f.n - 1)) // 2 and f.n >= 3:
            return 1 - Fraction(1, f.n - 1)  # complete graph on f.n vertices
    if fam.kind in ("generalized-triangle", "cancellative") and fam.r in (3, 4):
        from math import factorial

        r = fam.r
        return Fraction(factorial(r), r**r)
    return None


# ---------------------------------------------------------------------------
# command implementations (shared by the CLI and by run())

MAKE_TAGS = {
    "turan": (cons.turan_graph, 2),
    "turanr": (cons.turan_rgraph, 3),
    "complete": (cons.complete_rgraph, 2),
    "gentriangle": (cons.gen_triangle, 1),
    "hinge": (cons.hinge_graph, 2),
    "matching": (cons.matching, 2),
    "sunflower": (cons.sunflower, 2),
    "semibip": (cons.complete_semibipartite, 3),
    "turanplus": (cons.turan_plus, 2),
}


def op_make(tag: str, params: list[int]) -> RGraph:
    if tag == "expansion":
        raise FormatError("expansion needs a base graph file; use `make expansion <file>`")
    if tag not in MAKE_TAGS:
        raise FormatError(f"unknown construction {tag!r}; choose from {sorted(MAKE_TAGS)}")
    fn, arity = MAKE_TAGS[tag]
    if len(params) != arity:
        raise FormatError(f"{tag} takes {arity} integer parameter(s), got {len(params)}")
    try:
        return fn(*params)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def op_ex(n: int, family: str, method: str, p_max: Optional[int]) -> dict:
    fam = parse_family(family)
    if method == "brute":
        res = ex_bruteforce(n, fam)
    elif method == "patterns":
        res = ex_via_patterns(n, fam, p_max)
    else:
        res = ex_both(n, fam, p_max=p_max)
    return {
        "command": "ex",
        "n": n,
        "family": family,
        "method": res.method,
        "value": res.value,
        "witnesses": [hgr.to_json_obj(canonical_relabel(w)) for w in res.witnesses],
    }


def op_lagrangian(path: str, supports: bool, restarts: int, seed: int) -> dict:
    g = hgr.load(path)
    res = maximize(g, restarts=restarts, seed=seed, support_limit=g.n if supports else 12)
    return {
        "command": "lagrangian",
        "input": str(path),
        "value": res.value,
        "method": res.method,
        "gap": res.gap,
        "converged": res.converged,
        "maximizer": list(res.maximizer.weights),
    }


def op_symmetrize(path: str, family: str, mode: str) -> dict:
    g = hgr.load(path)
    fam = parse_family(family)
    trace = symmetrize(g, fam, mode)
    return {
        "command": "symmetrize",
        "input": str(path),
        "family": family,
        "mode": mode,
        "steps": [
            {
                "kind": s.kind,
                "absorbed": list(s.absorbed),
                "donor": list(s.donor),
                "edges": [s.edges_before, s.edges_after],
                "energy": [s.energy_before, s.energy_after],
            }
            for s in trace.steps
        ],
        "final": hgr.to_json_obj(trace.final),
    }


def op_scan(
    family: str,
    target: str,
    kind: str,
    n_lo: int,
    n_hi: int,
    eps: float,
    delta: float,
    pi_ref: Optional[float],
    jobs: int = 1,
) -> dict:
    fam = parse_family(family)
    spec = parse_class(target)
    if pi_ref is None:
        preset = preset_pi(fam)
        if preset is None:
            raise FormatError("no density preset for this family; pass --piref explicitly")
        pi_val: float | Fraction = preset
    else:
        pi_val = pi_ref
    verdict = scan_stability(fam, spec, kind, (n_lo, n_hi), eps, delta, float(pi_val), jobs=jobs)
    return {
        "command": "scan",
        "family": family,
        "class": target,
        "kind": kind,
        "n_range": [n_lo, n_hi],
        "eps": eps,
        "delta": delta,
        "pi_ref": float(pi_val),
        "scanned": verdict.scanned,
        "max_distance": verdict.max_distance,
        "heuristic": verdict.heuristic,
        "summary": verdict.summary(),
        "counterexamples": [
            {
                "n": c.n,
                "graph": hgr.to_json_obj(c.graph),
                "min_degree": c.min_degree,
                "edges": c.edge_count,
                "distance": c.distance,
                "bound": c.bound,
            }
            for c in verdict.counterexamples
        ],
    }


def op_check(path: str, target: Optional[str], family: Optional[str]) -> dict:
    g = hgr.load(path)
    out: dict[str, Any] = {"command": "check", "input": str(path), "r": g.r, "n": g.n,
                           "edges": len(g.edges)}
    if target is not None:
        spec = parse_class(target)
        out["class"] = target
        out["in_hull"] = in_hull(g, spec)
        out["member"] = class_membership(g, spec)
    if family is not None:
        fam = parse_family(family)
        out["family"] = family
        out["free"] = is_free(g, fam)
    return out


def op_extendable(path: str, v: int, target: str, zeta: float, pi_ref: float) -> dict:
    g = hgr.load(path)
    spec = parse_class(target)
    verdict = check_vertex_extendable(g, v, spec, zeta, pi_ref)
    return {
        "command": "extendable",
        "input": str(path),
        "vertex": v,
        "class": target,
        "zeta": zeta,
        "pi_ref": pi_ref,
        "status": verdict.status,
        "degree_ok": verdict.degree_ok,
        "base_in_hull": verdict.base_in_hull,
        "self_in_hull": verdict.self_in_hull,
        "threshold": verdict.threshold,
    }


def op_enum(n: int, r: int, family: Optional[str]) -> dict:
    if family is not None:
        fam = parse_family(family)
        reps = enumerate_rgraphs(n, r, lambda g: is_free(g, fam), monotone=True)
    else:
        reps = enumerate_rgraphs(n, r)
    return {
        "command": "enum",
        "n": n,
        "r": r,
        "family": family,
        "count": len(reps),
        "graphs": [hgr.to_json_obj(g) for g in reps],
    }


# ---------------------------------------------------------------------------
# configs and records

_CONFIG_KEYS = {"command", "params", "seed", "outputs"}


@dataclass
class ExperimentConfig:
    command: str
    params: dict
    seed: int = 0
    outputs: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid config JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise FormatError("config must be a JSON object")
        unknown = obj.keys() - _CONFIG_KEYS
        if unknown:
            raise FormatError(f"unknown config keys: {sorted(unknown)}")
        missing = {"command", "params"} - obj.keys()
        if missing:
            raise FormatError(f"config missing keys: {sorted(missing)}")
        if not isinstance(obj["command"], str) or not isinstance(obj["params"], dict):
            raise FormatError("config field types: command=str, params=object")
        seed = obj.get("seed", 0)
        outputs = obj.get("outputs", {})
        if not isinstance(seed, int) or not isinstance(outputs, dict):
            raise FormatError("config field types: seed=int, outputs=object")
        return cls(obj["command"], obj["params"], seed, outputs)

    def to_json(self) -> str:
        return canonical_json(
            {"command": self.command, "params": self.params, "seed": self.seed,
             "outputs": self.outputs}
        )

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


@dataclass
class ResultRecord:
    config_digest: str
    tool_version: str
    wall_time_s: float
    outputs: dict


def emit_table(records: list["ResultRecord"], *, wall_time: bool = True) -> str:
    """Fixed-column CSV over result records.

    Columns: ``config_digest,command,tool_version,wall_time_s``; the wall-time
    column can be suppressed for byte-stable comparisons.
    """
    header = "config_digest,command,tool_version" + (",wall_time_s" if wall_time else "")
    rows = [header]
    for rec in records:
        cmd = rec.outputs.get("payload", {}).get("command", "")
        row = f"{rec.config_digest},{cmd},{rec.tool_version}"
        if wall_time:
            row += f",{fmt_float(rec.wall_time_s)}"
        rows.append(row)
    return "\n".join(rows) + "\n"


_DISPATCH: dict[str, Callable[..., dict]] = {
    "ex": lambda p, seed: op_ex(p["n"], p["family"], p.get("method", "both"), p.get("pmax")),
    "lagrangian": lambda p, seed: op_lagrangian(
        p["input"], p.get("supports", False), p.get("restarts", 64), seed
    ),
    "symmetrize": lambda p, seed: op_symmetrize(p["input"], p["family"], p.get("mode", "class")),
    "scan": lambda p, seed: op_scan(
        p["family"], p["class"], p.get("kind", "degree"), p["n_lo"], p["n_hi"],
        p["eps"], p.get("delta", 0.0), p.get("pi_ref"),
    ),
    "check": lambda p, seed: op_check(p["input"], p.get("class"), p.get("family")),
    "extendable": lambda p, seed: op_extendable(
        p["input"], p["vertex"], p["class"], p["zeta"], p["pi_ref"]
    ),
    "enum": lambda p, seed: op_enum(p["n"], p["r"], p.get("family")),
}


def run(config: ExperimentConfig, workdir: str | Path = ".") -> ResultRecord:
    """Execute a config and persist any requested outputs.

    ``outputs`` maps logical names to paths: ``json`` stores the canonical
    payload; other names are command-specific (witness files for ``ex``).
    """
    if config.command not in _DISPATCH:
        raise FormatError(f"unknown command {config.command!r}")
    started = time.monotonic()
    payload = _DISPATCH[config.command](config.params, config.seed)
    elapsed = time.monotonic() - started
    workdir = Path(workdir)
    written = {}
    for name, rel in config.outputs.items():
        path = workdir / rel
        if name == "json":
            path.write_text(canonical_json(payload))
            written[name] = str(path)
        else:
            raise FormatError(f"unknown output kind {name!r}")
    return ResultRecord(config.digest(), __version__, elapsed, {"payload": payload, **written})
