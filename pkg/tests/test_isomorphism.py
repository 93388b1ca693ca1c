import itertools
import random

import pytest

from extremal import constructions as cons
from extremal.errors import BudgetError
from extremal.isomorphism import (
    are_isomorphic,
    canonical_form,
    canonical_relabel,
    enumerate_rgraphs,
    relabel,
)
from extremal.morphism import is_free, single_graph
from extremal.rgraph import RGraph, mask_of

from conftest import cycle, random_rgraph


def naive_minimum(h: RGraph) -> list[int]:
    best = None
    for perm in itertools.permutations(range(h.n)):
        masks = sorted(sum(1 << perm[v] for v in e) for e in h.edges)
        if best is None or masks < best:
            best = masks
    return best


def test_matches_naive_minimum_on_random_graphs():
    rng = random.Random(11)
    for _ in range(150):
        r = rng.choice([2, 3, 4])
        n = rng.randint(r, 6)
        h = random_rgraph(rng, n, r, 0.45)
        mine = sorted(mask_of(e) for e in canonical_form(h).edges)
        assert mine == naive_minimum(h)


def test_relabel_invariance():
    rng = random.Random(5)
    for h in [cycle(5), cons.turan_graph(6, 3), cons.gen_triangle(3), random_rgraph(rng, 6, 3)]:
        base = canonical_form(h).key
        for _ in range(1000):
            perm = list(range(h.n))
            rng.shuffle(perm)
            assert canonical_form(relabel(h, perm)).key == base


def test_k3_relabeled():
    k3 = cons.complete_graph(3)
    assert canonical_form(relabel(k3, [2, 0, 1])) == canonical_form(k3)


@pytest.mark.parametrize(
    "graph,count",
    [
        (cons.complete_graph(4), 24),
        (cycle(5), 10),
        (cons.turan_graph(8, 2), 1152),
        (RGraph(2, 3, ((0, 1), (1, 2))), 2),
        (RGraph(2, 4, ()), 24),
    ],
)
def test_automorphism_counts(graph, count):
    assert canonical_form(graph).automorphisms == count


def test_canonical_relabel_is_isomorphic():
    g = cons.turan_rgraph(6, 3, 3)
    c = canonical_relabel(g)
    assert are_isomorphic(g, c)


def test_budget():
    with pytest.raises(BudgetError):
        canonical_form(RGraph(2, 11, ()))
    with pytest.raises(BudgetError):
        enumerate_rgraphs(10, 2)
    with pytest.raises(BudgetError):
        enumerate_rgraphs(8, 3)


def test_triangle_free_enumeration_counts():
    k3 = single_graph(cons.complete_graph(3))
    counts = [
        len(enumerate_rgraphs(n, 2, lambda g: is_free(g, k3), monotone=True))
        for n in range(1, 8)
    ]
    assert counts == [1, 2, 3, 7, 14, 38, 107]


def test_enumeration_matches_labeled_dedup_oracle():
    # independent oracle: dedup all labeled 3-graphs on 5 vertices by the
    # naive minimum over all permutations
    pool = list(itertools.combinations(range(5), 3))
    seen = set()
    for bits in range(1 << len(pool)):
        edges = tuple(pool[i] for i in range(len(pool)) if (bits >> i) & 1)
        seen.add(tuple(naive_minimum(RGraph(3, 5, edges))))
    reps = enumerate_rgraphs(5, 3)
    assert len(reps) == len(seen) == 34


def test_enumeration_deterministic():
    a = enumerate_rgraphs(5, 2)
    b = enumerate_rgraphs(5, 2)
    assert [g.edges for g in a] == [g.edges for g in b]
