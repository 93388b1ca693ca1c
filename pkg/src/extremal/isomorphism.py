"""Canonical labeling and isomorph-free enumeration for small r-graphs.

The canonical form of a graph is the minimal edge list over all vertex
relabelings, where edges are compared as bitmasks (so the edge order is
colexicographic) and edge lists elementwise.  Minimality is computed exactly
by a level-by-level search that keeps every partial relabeling achieving the
minimal prefix; vertices with identical links are interchangeable and only
one representative per class is branched on, which keeps the frontier small
even for highly symmetric graphs.

Enumeration grows graphs one vertex at a time, trying every link for the new
vertex and deduplicating by canonical form.  A predicate flagged ``monotone``
(closed under taking subgraphs) prunes both the link search and intermediate
levels.  Budgets are deliberate: the module refuses sizes it cannot handle
exactly rather than degrading silently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Optional

from .errors import BudgetError
from .rgraph import RGraph, equivalence_classes, mask_to_tuple

CANONICAL_MAX_N = 10

# Default per-uniformity caps on the vertex count for exhaustive enumeration.
ENUM_BUDGET = {2: 9, 3: 7, 4: 7}
ENUM_BUDGET_DEFAULT = 6


@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-class certificate: minimal representative edge list.

    Two graphs have equal canonical forms iff they are isomorphic (with equal
    ``r`` and ``n``).  ``automorphisms`` is the order of the automorphism
    group, recovered from the search frontier at no extra cost.
    """

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]
    automorphisms: int

    @property
    def key(self) -> tuple:
        return (self.r, self.n, self.edges)


# Appended to every batch before native tuple comparison: makes a proper
# prefix compare as LARGER, i.e. the longer batch wins (its extra masks
# precede anything a shorter batch can still produce at later levels).
_SENTINEL = 1 << 63


@lru_cache(maxsize=1 << 17)
def canonical_form(h: RGraph) -> CanonicalForm:
    if h.n > CANONICAL_MAX_N:
        raise BudgetError(f"canonical_form supports n <= {CANONICAL_MAX_N}, got {h.n}")
    n = h.n
    eq = equivalence_classes(h)
    class_of = eq.assignment
    class_sizes = [len(c) for c in eq.classes]
    edges_at: list[list[int]] = [[] for _ in range(n)]
    for m in h.edge_masks:
        rest = m
        while rest:
            low = rest & -rest
            edges_at[low.bit_length() - 1].append(m)
            rest ^= low

    # beam: partial relabelings as (old vertices in new-label order, assigned
    # mask); all entries share the same (minimal) completed-edge prefix.
    beam: list[tuple[tuple[int, ...], int]] = [((), 0)]
    prefix: list[int] = []
    for k in range(n):
        best_batch: Optional[tuple[int, ...]] = None
        kept: list[tuple[tuple[int, ...], int]] = []
        for pos, assigned in beam:
            pos_arr = [0] * n
            for idx, old in enumerate(pos):
                pos_arr[old] = idx
            seen_classes = 0
            for u in range(n):
                if (assigned >> u) & 1:
                    continue
                cu = class_of[u]
                if (seen_classes >> cu) & 1:
                    continue  # identical link: swapping u with the seen twin is an automorphism
                seen_classes |= 1 << cu
                now = assigned | (1 << u)
                batch = []
                for m in edges_at[u]:
                    if m & ~now:
                        continue
                    nm = 1 << k
                    mm = m & ~(1 << u)
                    while mm:
                        low = mm & -mm
                        nm |= 1 << pos_arr[low.bit_length() - 1]
                        mm ^= low
                    batch.append(nm)
                batch.sort()
                key = tuple(batch) + (_SENTINEL,)
                if best_batch is None or key < best_batch:
                    best_batch = key
                    kept = [(pos + (u,), now)]
                elif key == best_batch:
                    kept.append((pos + (u,), now))
        if best_batch is not None and len(best_batch) > 1:
            prefix.extend(best_batch[:-1])
        beam = kept if kept else [((), 0)]
    aut = len(beam)
    for s in class_sizes:
        aut *= factorial(s)
    edges = tuple(mask_to_tuple(m) for m in prefix)
    return CanonicalForm(h.r, n, edges, aut)


def canonical_relabel(h: RGraph) -> RGraph:
    """The canonical representative of the isomorphism class of ``h``."""
    return RGraph(h.r, h.n, canonical_form(h).edges)


def relabel(h: RGraph, perm: Iterable[int]) -> RGraph:
    """Apply a vertex permutation (old label -> new label)."""
    p = tuple(perm)
    if sorted(p) != list(range(h.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    return RGraph(h.r, h.n, tuple(tuple(p[v] for v in e) for e in h.edges))


def are_isomorphic(a: RGraph, b: RGraph) -> bool:
    if a.r != b.r or a.n != b.n or len(a.edges) != len(b.edges):
        return False
    return canonical_form(a).key == canonical_form(b).key


def enumerate_rgraphs(
    n: int,
    r: int,
    predicate: Optional[Callable[[RGraph], bool]] = None,
    *,
    monotone: bool = False,
    max_n: Optional[int] = None,
) -> list[RGraph]:
    """One representative per isomorphism class of r-graphs on exactly ``n``
    labeled vertices (isolated vertices included) satisfying ``predicate``.

    ``monotone=True`` asserts the predicate is closed under taking subgraphs;
    this lets intermediate levels and partial links be pruned.  Without the
    flag the predicate is applied only to the final level, so the whole space
    is enumerated first.
    """
    limit = max_n if max_n is not None else ENUM_BUDGET.get(r, ENUM_BUDGET_DEFAULT)
    if n > limit:
        raise BudgetError(f"enumeration of {r}-graphs capped at n <= {limit}, got {n}")
    if n > CANONICAL_MAX_N:
        raise BudgetError(f"enumeration needs canonical forms, capped at n <= {CANONICAL_MAX_N}")

    reps: list[RGraph] = [RGraph(r, 0, ())]
    for k in range(n):
        out: dict[tuple, RGraph] = {}
        pool = [c + (k,) for c in itertools.combinations(range(k), r - 1)]

        def register(g: RGraph) -> None:
            key = canonical_form(g).key
            if key not in out:
                out[key] = g

        for base in reps:
            base_edges = base.edges

            def grow(start: int, chosen: tuple[tuple[int, ...], ...]) -> None:
                g = RGraph(r, k + 1, base_edges + chosen)
                if monotone and predicate is not None and not predicate(g):
                    return  # no supergraph can satisfy a subgraph-closed predicate
                register(g)
                for i in range(start, len(pool)):
                    grow(i + 1, chosen + (pool[i],))

            grow(0, ())
        reps = [out[key] for key in sorted(out)]
    if predicate is not None and not monotone:
        reps = [g for g in reps if predicate(g)]
    return reps
