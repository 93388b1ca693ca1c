"""Symmetrization of family-free hypergraphs and exact Turan numbers.

Both step variants pick the lexicographically least pair of equivalence
classes that share no edge, ordered so the class with smaller (degree, size)
gets its links replaced by the other's.  Class steps rewrite a whole class at
once and strictly reduce the class count; vertex steps rewrite one vertex and
strictly increase (edge count, class energy) lexicographically.  Every step
re-checks freeness even though blowup-invariance guarantees it: a violation is
converted into a loud SoundnessError carrying the offending graph.

``ex_bruteforce`` maximizes over an isomorph-free enumeration; the pattern
route maximizes blowups of two-covered free patterns, which agrees with the
brute force for blowup-invariant families.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional

from .errors import SoundnessError
from .isomorphism import CANONICAL_MAX_N, canonical_form, enumerate_rgraphs
from .morphism import FamilySpec, is_free
from .rgraph import (
    RGraph,
    bit,
    blowup,
    class_energy,
    equivalence_classes,
    is_two_covered,
    mask_of,
    pair_covered,
)

CLASS_MODE = "class"
VERTEX_MODE = "vertex"


@dataclass(frozen=True)
class SymStep:
    kind: str  # "class-merge" | "vertex"
    absorbed: tuple[int, ...]
    donor: tuple[int, ...]
    edges_before: int
    edges_after: int
    energy_before: int
    energy_after: int


@dataclass(frozen=True)
class SymTrace:
    steps: tuple[SymStep, ...]
    final: RGraph


@dataclass(frozen=True)
class ExResult:
    n: int
    family: FamilySpec
    value: int
    witnesses: tuple[RGraph, ...]
    method: str  # "bruteforce" | "patterns" | "patterns-heuristic" | "both-agree"


def _select_pair(h: RGraph) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The least-indexed pair of equivalence classes with no covering edge
    between them, returned as (absorbed, donor) by (degree, size) order."""
    parts = equivalence_classes(h).classes
    degs = [h.degrees[c[0]] if c else 0 for c in parts]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if pair_covered(h, parts[i][0], parts[j][0]):
                continue
            key_i = (degs[i], len(parts[i]))
            key_j = (degs[j], len(parts[j]))
            if key_i <= key_j:
                return parts[i], parts[j]
            return parts[j], parts[i]
    return None


def _replace_links(h: RGraph, absorbed: Iterable[int], donor_rep: int) -> RGraph:
    """Rebuild the graph so that every absorbed vertex gets the donor's link.

    Donor links avoid the absorbed class entirely (any common edge would cover
    the class pair), so the rewritten edges are valid r-sets.
    """
    absorbed = tuple(absorbed)
    absorbed_mask = mask_of(absorbed)
    donor_link = h.link_masks[donor_rep]
    kept = [m for m in h.edge_masks if not m & absorbed_mask]
    fresh = [a | bit(v) for v in absorbed for a in donor_link]
    return RGraph.from_masks(h.r, h.n, kept + fresh)


def _guard_free(h_new: RGraph, fam: FamilySpec, before: RGraph) -> None:
    if not is_free(h_new, fam):
        raise SoundnessError(
            f"symmetrization step left the {fam.label} class: the family is not "
            f"blowup-invariant on this input (before: {before!r}, after: {h_new!r})"
        )


def class_symmetrize_step(h: RGraph, fam: FamilySpec) -> Optional[RGraph]:
    """One whole-class link replacement, or None when already symmetrized."""
    pair = _select_pair(h)
    if pair is None:
        return None
    absorbed, donor = pair
    out = _replace_links(h, absorbed, donor[0])
    _guard_free(out, fam, h)
    return out


def vertex_symmetrize_step(h: RGraph, fam: FamilySpec) -> Optional[RGraph]:
    """One single-vertex link replacement, or None when already symmetrized."""
    pair = _select_pair(h)
    if pair is None:
        return None
    absorbed, donor = pair
    out = _replace_links(h, (absorbed[0],), donor[0])
    _guard_free(out, fam, h)
    return out


def symmetrize(h: RGraph, fam: FamilySpec, mode: str = CLASS_MODE) -> SymTrace:
    """Iterate symmetrization steps to a symmetrized, family-free graph.

    Raises SoundnessError if a step breaks monotonicity or freeness (both are
    guaranteed for blowup-invariant families, so a raise is a counterexample).
    """
    if mode not in (CLASS_MODE, VERTEX_MODE):
        raise ValueError(f"mode must be 'class' or 'vertex', got {mode!r}")
    if not is_free(h, fam):
        raise ValueError("input graph is not family-free")
    step_fn = class_symmetrize_step if mode == CLASS_MODE else vertex_symmetrize_step
    steps: list[SymStep] = []
    cur = h
    cap = comb(h.n, h.r) * (h.n**2 + 1) + h.n + 1  # lex chain bound on (edges, energy)
    for _ in range(cap):
        pair = _select_pair(cur)
        if pair is None:
            break
        absorbed, donor = pair
        if mode == VERTEX_MODE:
            absorbed = (absorbed[0],)
        nxt = _replace_links(cur, absorbed, donor[0])
        _guard_free(nxt, fam, cur)
        rec = SymStep(
            "class-merge" if mode == CLASS_MODE else "vertex",
            absorbed,
            donor,
            len(cur.edges),
            len(nxt.edges),
            class_energy(cur),
            class_energy(nxt),
        )
        before = (rec.edges_before, rec.energy_before)
        after = (rec.edges_after, rec.energy_after)
        if mode == VERTEX_MODE:
            if after <= before:
                raise SoundnessError(f"vertex step did not lex-increase: {before} -> {after}")
        else:
            if after < before:
                raise SoundnessError(f"class step lex-decreased: {before} -> {after}")
            cc_before = equivalence_classes(cur).class_count
            cc_after = equivalence_classes(nxt).class_count
            if cc_after >= cc_before:
                raise SoundnessError(
                    f"class step did not reduce class count: {cc_before} -> {cc_after}"
                )
        steps.append(rec)
        cur = nxt
    else:
        raise SoundnessError("symmetrization failed to terminate within its lex bound")
    assert _select_pair(cur) is None
    return SymTrace(tuple(steps), cur)


# ---------------------------------------------------------------------------
# exact Turan numbers

_FREE_REPS: dict[tuple[FamilySpec, int], tuple[RGraph, ...]] = {}


def free_representatives(n: int, fam: FamilySpec) -> tuple[RGraph, ...]:
    """Isomorph-free list of all family-free graphs on exactly n vertices (cached)."""
    key = (fam, n)
    if key not in _FREE_REPS:
        reps = enumerate_rgraphs(n, fam.r, lambda g: is_free(g, fam), monotone=True)
        _FREE_REPS[key] = tuple(reps)
    return _FREE_REPS[key]


def ex_bruteforce(n: int, fam: FamilySpec) -> ExResult:
    """Exact maximum edge count over all family-free graphs on n vertices,
    with every extremal graph retained up to isomorphism."""
    reps = free_representatives(n, fam)
    value = max(len(g.edges) for g in reps)
    witnesses = tuple(g for g in reps if len(g.edges) == value)
    return ExResult(n, fam, value, witnesses, "bruteforce")


def two_covered_free_patterns(fam: FamilySpec, p_max: int) -> tuple[RGraph, ...]:
    """Family-free patterns on up to ``p_max`` vertices in which every vertex
    pair shares an edge.  Two-coveredness is not subgraph-closed, so it is
    filtered after enumeration rather than used as a pruning predicate."""
    out = []
    for p in range(1, p_max + 1):
        for g in free_representatives(p, fam):
            if is_two_covered(g):
                out.append(g)
    return tuple(out)


def _compositions(total: int, parts: int):
    """Positive integer vectors of the given length summing to ``total``."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _blowup_size(g: RGraph, sizes: tuple[int, ...]) -> int:
    total = 0
    for e in g.edges:
        term = 1
        for v in e:
            term *= sizes[v]
        total += term
    return total


def ex_via_patterns(
    n: int,
    fam: FamilySpec,
    p_max: Optional[int] = None,
    *,
    exhaustive_limit: int = 10**6,
) -> ExResult:
    """Maximum edge count over proper blowups of two-covered family-free
    patterns.  For blowup-invariant families (caller-asserted) with
    ``p_max = n`` and an exhaustive composition search this equals the
    brute-force value: symmetrized graphs are exactly proper blowups of their
    two-covered quotients, and symmetrization never loses edges."""
    p_cap = min(p_max if p_max is not None else n, n)
    patterns = two_covered_free_patterns(fam, p_cap)
    best_val = 0
    best: list[tuple[RGraph, tuple[int, ...]]] = []
    heuristic = False
    for pat in patterns:
        p = pat.n
        if comb(n - 1, p - 1) <= exhaustive_limit:
            candidates = _compositions(n, p)
        else:
            heuristic = True
            candidates = _rounded_candidates(pat, n)
        for sizes in candidates:
            val = _blowup_size(pat, sizes)
            if val > best_val:
                best_val = val
                best = [(pat, sizes)]
            elif val == best_val:
                best.append((pat, sizes))
    witnesses: dict[tuple, RGraph] = {}
    for pat, sizes in best:
        g, _ = blowup(pat, sizes)
        if g.n <= CANONICAL_MAX_N:
            key = canonical_form(g).key
        else:
            key = (canonical_form(pat).key, tuple(sorted(sizes)))
        if key not in witnesses:
            if not is_free(g, fam):
                raise SoundnessError(
                    f"pattern blowup is not family-free; {fam.label} is not blowup-invariant"
                )
            witnesses[key] = g
    method = "patterns-heuristic" if heuristic else "patterns"
    wit = tuple(witnesses[k] for k in sorted(witnesses))
    return ExResult(n, fam, best_val, wit, method)


def _rounded_candidates(pat: RGraph, n: int):
    """Continuous maximizer rounded by largest remainders, plus its +-1 cube."""
    from .lagrangian import maximize

    res = maximize(pat)
    target = [w * n for w in res.maximizer.weights]
    base = [int(t) for t in target]
    rem = n - sum(base)
    order = sorted(range(pat.n), key=lambda i: target[i] - base[i], reverse=True)
    for i in order[:rem]:
        base[i] += 1
    seen = set()
    deltas = itertools.product((-1, 0, 1), repeat=pat.n)
    for d in deltas:
        cand = tuple(b + x for b, x in zip(base, d))
        if sum(cand) != n or any(c < 1 for c in cand) or cand in seen:
            continue
        seen.add(cand)
        yield cand


def ex(n: int, fam: FamilySpec, method: str = "both", p_max: Optional[int] = None) -> ExResult:
    """Front door: brute force, the pattern route, or both with agreement check."""
    if method == "brute":
        return ex_bruteforce(n, fam)
    if method == "patterns":
        return ex_via_patterns(n, fam, p_max)
    if method != "both":
        raise ValueError(f"method must be brute|patterns|both, got {method!r}")
    brute = ex_bruteforce(n, fam)
    patt = ex_via_patterns(n, fam, p_max)
    if brute.value != patt.value:
        raise SoundnessError(
            f"route disagreement for {fam.label} at n={n}: "
            f"bruteforce={brute.value}, patterns={patt.value}"
        )
    return ExResult(n, fam, brute.value, brute.witnesses, "both-agree")
