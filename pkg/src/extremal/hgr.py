"""HGR text format and its JSON mirror.

The text format is one header line ``r n m`` followed by ``m`` lines of ``r``
space-separated vertex indices, 0-based and strictly ascending within a line.
The writer emits edges in lexicographic order with a trailing newline, so its
output is byte-stable and ``loads(dumps(h)) == h`` exactly.

A JSON mirror ``{"r": ..., "n": ..., "edges": [[...], ...]}`` is accepted on
input; ``load`` sniffs the format from the first non-space character.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .errors import FormatError
from .rgraph import RGraph


def dumps(h: RGraph) -> str:
    lines = [f"{h.r} {h.n} {len(h.edges)}"]
    for e in h.edges:
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def dump(h: RGraph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(h))


def loads(text: str) -> RGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty HGR document")
    head = lines[0].split()
    if len(head) != 3:
        raise FormatError(f"header must be 'r n m', got {lines[0]!r}")
    try:
        r, n, m = (int(tok) for tok in head)
    except ValueError as exc:
        raise FormatError(f"non-integer header field in {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise FormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        try:
            verts = tuple(int(tok) for tok in ln.split())
        except ValueError as exc:
            raise FormatError(f"non-integer vertex in line {ln!r}") from exc
        if len(verts) != r:
            raise FormatError(f"edge line {ln!r} has {len(verts)} vertices, expected {r}")
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise FormatError(f"edge line {ln!r} is not strictly ascending")
        edges.append(verts)
    if len(set(edges)) != len(edges):
        raise FormatError("duplicate edge in HGR document")
    try:
        return RGraph(r, n, tuple(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def from_json_obj(obj: Any) -> RGraph:
    if not isinstance(obj, dict):
        raise FormatError("JSON graph must be an object")
    missing = {"r", "n", "edges"} - obj.keys()
    if missing:
        raise FormatError(f"JSON graph missing fields: {sorted(missing)}")
    r, n, edges = obj["r"], obj["n"], obj["edges"]
    if not isinstance(r, int) or not isinstance(n, int) or not isinstance(edges, list):
        raise FormatError("JSON graph fields have wrong types")
    seen = set()
    for e in edges:
        if not isinstance(e, list) or not all(isinstance(v, int) for v in e):
            raise FormatError(f"JSON edge {e!r} must be a list of integers")
        key = tuple(sorted(e))
        if key in seen:
            raise FormatError(f"duplicate edge {e!r}")
        seen.add(key)
    try:
        return RGraph(r, n, tuple(tuple(e) for e in edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def to_json_obj(h: RGraph) -> dict:
    return {"r": h.r, "n": h.n, "edges": [list(e) for e in h.edges]}


def load(path: str | os.PathLike) -> RGraph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
        return from_json_obj(obj)
    return loads(text)
