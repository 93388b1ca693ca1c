"""Subgraph containment, homomorphisms, forbidden-family detectors.

A forbidden family is either an explicit finite list of r-graphs or one of the
named detector families: generalized triangles (three edges A, B, C with
``|B & C| = r-1`` and ``B ^ C <= A``), the cancellative family (same without
the intersection constraint), and weak expansions of a fixed base graph.  The
named detectors test freeness directly on the host; materializing the family
as a member list is only done where an independent check demands it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import BudgetError
from .isomorphism import canonical_form, enumerate_rgraphs
from .rgraph import RGraph, induced, mask_of, mask_to_tuple

EXPLICIT = "explicit"
GEN_TRIANGLE = "generalized-triangle"
CANCELLATIVE = "cancellative"
WEAK_EXPANSION = "weak-expansion"


@dataclass(frozen=True)
class FamilySpec:
    """A forbidden family: explicit member list or a named detector."""

    kind: str
    r: int
    members: tuple[RGraph, ...] = ()
    base: Optional[RGraph] = None

    def __post_init__(self) -> None:
        if self.kind not in (EXPLICIT, GEN_TRIANGLE, CANCELLATIVE, WEAK_EXPANSION):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == EXPLICIT and not self.members:
            raise ValueError("explicit family needs at least one member")
        for m in self.members:
            if m.r != self.r:
                raise ValueError("family members must share one uniformity")
        if self.kind == WEAK_EXPANSION and (self.base is None or self.base.r != self.r):
            raise ValueError("weak-expansion family needs a base graph of matching uniformity")

    @property
    def label(self) -> str:
        if self.kind == EXPLICIT:
            return f"list[{len(self.members)}x r={self.r}]"
        if self.kind == WEAK_EXPANSION:
            return f"weakexp[r={self.r}, base n={self.base.n} m={len(self.base.edges)}]"
        return f"{self.kind}[r={self.r}]"


def explicit_family(members: Iterable[RGraph]) -> FamilySpec:
    mem = tuple(members)
    return FamilySpec(EXPLICIT, mem[0].r, members=mem)


def single_graph(f: RGraph) -> FamilySpec:
    return explicit_family((f,))


def generalized_triangles(r: int) -> FamilySpec:
    if r < 2:
        raise ValueError("generalized triangles need r >= 2")
    return FamilySpec(GEN_TRIANGLE, r)


def cancellative_family(r: int) -> FamilySpec:
    if r < 2:
        raise ValueError("cancellative family needs r >= 2")
    return FamilySpec(CANCELLATIVE, r)


def weak_expansions(base: RGraph, vertex_count: Optional[int] = None) -> FamilySpec:
    if vertex_count is not None and vertex_count != base.n:
        raise ValueError(f"vertex_count {vertex_count} != v(base) = {base.n}")
    return FamilySpec(WEAK_EXPANSION, base.r, base=base)


# ---------------------------------------------------------------------------
# embeddings and homomorphisms


def _search_order(f: RGraph) -> list[int]:
    return sorted(range(f.n), key=lambda v: (-f.degrees[v], v))


def contains_subgraph(host: RGraph, pattern: RGraph) -> Optional[dict[int, int]]:
    """An injective edge-preserving map from pattern vertices into the host,
    or None.  Backtracking over pattern vertices in degree-descending order,
    pruned by degree and by pair coverage."""
    if host.r != pattern.r:
        raise ValueError(f"uniformity mismatch: host r={host.r}, pattern r={pattern.r}")
    if pattern.n > host.n or len(pattern.edges) > len(host.edges):
        return None
    order = _search_order(pattern)
    pat_adj = pattern.covered_adj
    host_adj = host.covered_adj
    edge_masks = pattern.edge_masks
    phi: dict[int, int] = {}

    def extend(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        u = order[idx]
        prev = [w for w in order[:idx] if (pat_adj[u] >> w) & 1]
        for v in range(host.n):
            if (used >> v) & 1 or host.degrees[v] < pattern.degrees[u]:
                continue
            if any(not (host_adj[v] >> phi[w]) & 1 for w in prev):
                continue
            phi[u] = v
            ok = True
            placed = used | (1 << v)
            for m in edge_masks:
                if (m >> u) & 1 and all(((1 << w) & m) == 0 or w in phi for w in mask_to_tuple(m)):
                    if mask_of(phi[w] for w in mask_to_tuple(m)) not in host.edge_mask_set:
                        ok = False
                        break
            if ok and extend(idx + 1, placed):
                return True
            del phi[u]
        return False

    return dict(phi) if extend(0, 0) else None


def has_homomorphism(pattern: RGraph, host: RGraph) -> Optional[dict[int, int]]:
    """An edge-preserving map pattern -> host (not necessarily injective), or
    None.  Images of a single edge are automatically injective because host
    edges have r distinct vertices."""
    if host.r != pattern.r:
        raise ValueError(f"uniformity mismatch: host r={host.r}, pattern r={pattern.r}")
    if pattern.edges and not host.edges:
        return None
    order = _search_order(pattern)
    pat_adj = pattern.covered_adj
    host_adj = host.covered_adj
    edge_masks = pattern.edge_masks
    phi: dict[int, int] = {}

    def extend(idx: int) -> bool:
        if idx == len(order):
            return True
        u = order[idx]
        prev = [w for w in order[:idx] if (pat_adj[u] >> w) & 1]
        for v in range(host.n):
            if any(phi[w] == v or not (host_adj[v] >> phi[w]) & 1 for w in prev):
                continue
            phi[u] = v
            ok = True
            for m in edge_masks:
                if (m >> u) & 1 and all(w in phi for w in mask_to_tuple(m)):
                    img = 0
                    for w in mask_to_tuple(m):
                        img |= 1 << phi[w]
                    if img not in host.edge_mask_set:
                        ok = False
                        break
            if ok and extend(idx + 1):
                return True
            del phi[u]
        return False

    if pattern.n > 0 and host.n == 0:
        return None
    return dict(phi) if extend(0) else None


# ---------------------------------------------------------------------------
# named detectors


def find_generalized_triangle(h: RGraph) -> Optional[tuple[tuple[int, ...], ...]]:
    """A witnessing edge triple (A, B, C) with ``|B & C| = r-1`` and the
    symmetric difference of B and C inside A, or None."""
    masks = h.edge_masks
    r = h.r
    for j in range(len(masks)):
        for k in range(j + 1, len(masks)):
            b, c = masks[j], masks[k]
            if (b & c).bit_count() != r - 1:
                continue
            d = b ^ c
            for a in masks:
                if a != b and a != c and a & d == d:
                    return (mask_to_tuple(a), mask_to_tuple(b), mask_to_tuple(c))
    return None


def find_cancellative_violation(h: RGraph) -> Optional[tuple[tuple[int, ...], ...]]:
    """Edges (A, B, C) with B != C and the symmetric difference of B and C
    contained in A, or None; None means the graph is cancellative."""
    masks = h.edge_masks
    for j in range(len(masks)):
        for k in range(j + 1, len(masks)):
            b, c = masks[j], masks[k]
            d = b ^ c
            if d.bit_count() > h.r:
                continue
            for a in masks:
                if a != b and a != c and a & d == d:
                    return (mask_to_tuple(a), mask_to_tuple(b), mask_to_tuple(c))
    return None


def uncovered_pairs(f: RGraph) -> tuple[tuple[int, int], ...]:
    """Vertex pairs of ``f`` not contained in any edge (isolated vertices count)."""
    out = []
    for u in range(f.n):
        for v in range(u + 1, f.n):
            if not (f.covered_adj[u] >> v) & 1:
                out.append((u, v))
    return tuple(out)


@dataclass(frozen=True)
class WeakExpansionWitness:
    embedding: dict[int, int] = field(compare=False)
    connectors: dict[tuple[int, int], tuple[int, ...]] = field(compare=False)


def find_weak_expansion(
    host: RGraph, base: RGraph, *, distinct_connectors: bool = False
) -> Optional[WeakExpansionWitness]:
    """An embedding of ``base`` whose uncovered pairs are all covered by host
    edges; this is exactly containment of a weak expansion of the base.

    Any covering edge serves as a connector by default.  ``distinct_connectors``
    additionally demands pairwise-distinct connector edges (connectors never
    coincide with embedded base edges: a base edge through both endpoints
    would make the pair covered).
    """
    if host.r != base.r:
        raise ValueError(f"uniformity mismatch: host r={host.r}, base r={base.r}")
    pairs = uncovered_pairs(base)
    if base.n > host.n:
        return None
    order = _search_order(base)
    base_adj = base.covered_adj
    unc_adj = [0] * base.n
    for u, v in pairs:
        unc_adj[u] |= 1 << v
        unc_adj[v] |= 1 << u
    host_adj = host.covered_adj
    phi: dict[int, int] = {}

    def connectors_for(embedding: dict[int, int]) -> Optional[dict]:
        chosen: dict[tuple[int, int], tuple[int, ...]] = {}
        options = []
        for u, v in pairs:
            pm = (1 << embedding[u]) | (1 << embedding[v])
            cand = [m for m in host.edge_masks if m & pm == pm]
            if not cand:
                return None
            options.append(((u, v), cand))
        if not distinct_connectors:
            for pair, cand in options:
                chosen[pair] = mask_to_tuple(cand[0])
            return chosen
        options.sort(key=lambda t: len(t[1]))

        def assign(i: int, used: frozenset[int]) -> bool:
            if i == len(options):
                return True
            pair, cand = options[i]
            for m in cand:
                if m in used:
                    continue
                chosen[pair] = mask_to_tuple(m)
                if assign(i + 1, used | {m}):
                    return True
                del chosen[pair]
            return False

        return chosen if assign(0, frozenset()) else None

    def extend(idx: int, used: int) -> Optional[WeakExpansionWitness]:
        if idx == len(order):
            conn = connectors_for(phi)
            if conn is not None:
                return WeakExpansionWitness(dict(phi), conn)
            return None
        u = order[idx]
        prev_cov = [w for w in order[:idx] if (base_adj[u] >> w) & 1]
        prev_unc = [w for w in order[:idx] if (unc_adj[u] >> w) & 1]
        for v in range(host.n):
            if (used >> v) & 1 or host.degrees[v] < base.degrees[u]:
                continue
            if any(not (host_adj[v] >> phi[w]) & 1 for w in prev_cov):
                continue
            if any(not (host_adj[v] >> phi[w]) & 1 for w in prev_unc):
                continue  # uncovered base pairs still need host coverage
            phi[u] = v
            ok = True
            for m in base.edge_masks:
                if (m >> u) & 1 and all(w in phi for w in mask_to_tuple(m)):
                    if mask_of(phi[w] for w in mask_to_tuple(m)) not in host.edge_mask_set:
                        ok = False
                        break
            if ok:
                res = extend(idx + 1, used | (1 << v))
                if res is not None:
                    return res
            del phi[u]
        return None

    return extend(0, 0)


# ---------------------------------------------------------------------------
# freeness


def is_free(h: RGraph, fam: FamilySpec) -> bool:
    """True iff no family member embeds into ``h``."""
    if h.r != fam.r:
        raise ValueError(f"uniformity mismatch: graph r={h.r}, family r={fam.r}")
    if fam.kind == GEN_TRIANGLE:
        return find_generalized_triangle(h) is None
    if fam.kind == CANCELLATIVE:
        return find_cancellative_violation(h) is None
    if fam.kind == WEAK_EXPANSION:
        return find_weak_expansion(h, fam.base) is None
    return all(contains_subgraph(h, f) is None for f in fam.members)


def is_hom_free(h: RGraph, fam: FamilySpec) -> bool:
    """True iff no family member admits a homomorphism into ``h``.

    The named detector families are closed under homomorphic images (an image
    of a member contains a member), so for them hom-freeness coincides with
    subgraph-freeness; explicit lists get a real homomorphism search.
    """
    if h.r != fam.r:
        raise ValueError(f"uniformity mismatch: graph r={h.r}, family r={fam.r}")
    if fam.kind == EXPLICIT:
        return all(has_homomorphism(f, h) is None for f in fam.members)
    return is_free(h, fam)


# ---------------------------------------------------------------------------
# member materialization and the blowup-invariance check


def _support(g: RGraph) -> RGraph:
    used = sorted({v for e in g.edges for v in e})
    return induced(g, used)[0]


def _triple_members(r: int, require_tight: bool) -> tuple[RGraph, ...]:
    """All 3-edge members on their supports, up to isomorphism.  Members live
    on at most 2r-1 vertices, so a fixed universe suffices."""
    universe = list(itertools.combinations(range(2 * r - 1), r))
    out: dict[tuple, RGraph] = {}
    for b, c in itertools.combinations(universe, 2):
        inter = len(set(b) & set(c))
        if require_tight and inter != r - 1:
            continue
        diff = set(b) ^ set(c)
        if len(diff) > r:
            continue
        for a in universe:
            if a == b or a == c or not diff <= set(a):
                continue
            g = _support(RGraph(r, 2 * r - 1, (a, b, c)))
            key = canonical_form(g).key
            if key not in out:
                out[key] = g
    return tuple(out[k] for k in sorted(out))


def _weak_expansion_members(base: RGraph, budget: int = 200_000) -> tuple[RGraph, ...]:
    pairs = uncovered_pairs(base)
    extra = base.r - 2
    total_n = base.n + extra * len(pairs)
    if total_n > 64:
        raise BudgetError("weak-expansion member universe exceeds 64 vertices")
    from math import comb

    count = 1
    for _ in pairs:
        count *= comb(total_n - 2, extra)
        if count > budget:
            raise BudgetError(
                f"weak-expansion family has more than {budget} raw members; "
                "use the detector instead"
            )
    out: dict[tuple, RGraph] = {}
    slots = list(range(total_n))
    per_pair = []
    for u, v in pairs:
        per_pair.append([c for c in itertools.combinations(slots, extra) if u not in c and v not in c])
    for combo in itertools.product(*per_pair):
        edges = list(base.edges)
        for (u, v), extra_vs in zip(pairs, combo):
            edges.append(tuple(sorted((u, v) + extra_vs)))
        if len(set(edges)) != len(edges):
            continue
        g = _support(RGraph(base.r, total_n, tuple(edges)))
        key = canonical_form(g).key
        if key not in out:
            out[key] = g
    return tuple(out[k] for k in sorted(out))


def family_members(fam: FamilySpec) -> tuple[RGraph, ...]:
    """Materialize the family as an isomorph-free member list.

    Guarded: weak-expansion families can be far too large to list.
    """
    if fam.kind == EXPLICIT:
        return fam.members
    if fam.kind == GEN_TRIANGLE:
        return _triple_members(fam.r, require_tight=True)
    if fam.kind == CANCELLATIVE:
        return _triple_members(fam.r, require_tight=False)
    return _weak_expansion_members(fam.base)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def hom_image_closed(fam: FamilySpec) -> bool:
    """Sufficient condition for blowup-invariance: every homomorphic image of
    every member contains a member.  Explicit families only."""
    if fam.kind != EXPLICIT:
        raise ValueError("hom_image_closed applies to explicit families")
    for f in fam.members:
        for blocks in _set_partitions(list(range(f.n))):
            block_of = {}
            for i, blk in enumerate(blocks):
                for v in blk:
                    block_of[v] = i
            image_edges = set()
            valid = True
            for e in f.edges:
                img = tuple(sorted({block_of[v] for v in e}))
                if len(img) != f.r:
                    valid = False
                    break
                image_edges.add(img)
            if not valid:
                continue
            image = RGraph(f.r, len(blocks), tuple(image_edges))
            if all(contains_subgraph(image, m) is None for m in fam.members):
                return False
    return True


@dataclass(frozen=True)
class BlowupInvarianceReport:
    family: FamilySpec
    n_max: int
    invariant: bool
    counterexample: Optional[tuple[RGraph, RGraph, dict]] = field(default=None, compare=False)
    hom_image_closed: Optional[bool] = None


def check_blowup_invariance(fam: FamilySpec, n_max: int) -> BlowupInvarianceReport:
    """Verify that every family-free graph on up to ``n_max`` vertices is also
    family-hom-free, using a materialized member list so the homomorphism side
    is independent of the detectors."""
    members = family_members(fam)
    closed = hom_image_closed(fam) if fam.kind == EXPLICIT else None
    for n in range(1, n_max + 1):
        for h in enumerate_rgraphs(n, fam.r, lambda g: is_free(g, fam), monotone=True):
            for f in members:
                phi = has_homomorphism(f, h)
                if phi is not None:
                    return BlowupInvarianceReport(fam, n_max, False, (h, f, phi), closed)
    return BlowupInvarianceReport(fam, n_max, True, None, closed)
