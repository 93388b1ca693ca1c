import itertools
import random

import pytest

from extremal import constructions as cons
from extremal.isomorphism import enumerate_rgraphs
from extremal.morphism import (
    cancellative_family,
    check_blowup_invariance,
    contains_subgraph,
    explicit_family,
    family_members,
    find_cancellative_violation,
    find_generalized_triangle,
    find_weak_expansion,
    generalized_triangles,
    has_homomorphism,
    is_free,
    is_hom_free,
    single_graph,
    uncovered_pairs,
    weak_expansions,
)
from extremal.rgraph import RGraph, blowup

from conftest import cycle, random_free_rgraph, random_rgraph

T3 = RGraph(3, 5, ((0, 1, 2), (0, 1, 3), (2, 3, 4)))
K3 = cons.complete_graph(3)


class TestContainment:
    def test_k4_contains_k3(self):
        phi = contains_subgraph(cons.complete_graph(4), K3)
        assert phi is not None and len(set(phi.values())) == 3

    def test_c5_triangle_free(self):
        assert contains_subgraph(cycle(5), K3) is None

    def test_balanced_tripartite_avoids_gen_triangle(self):
        assert contains_subgraph(cons.turan_rgraph(6, 3, 3), T3) is None

    def test_uniformity_mismatch(self):
        with pytest.raises(ValueError):
            contains_subgraph(T3, K3)

    def test_embedding_preserves_edges(self):
        host = cons.turan_rgraph(7, 4, 3)
        phi = contains_subgraph(host, cons.complete_rgraph(4, 3))
        assert phi is not None
        for e in cons.complete_rgraph(4, 3).edges:
            assert host.has_edge(phi[v] for v in e)


class TestHomomorphism:
    def test_c5_to_k3(self):
        phi = has_homomorphism(cycle(5), K3)
        assert phi is not None
        for u, v in cycle(5).edges:
            assert phi[u] != phi[v] and K3.has_edge((phi[u], phi[v]))

    def test_k3_to_c5(self):
        assert has_homomorphism(K3, cycle(5)) is None

    def test_blowup_projects(self):
        blown, _ = blowup(cons.complete_rgraph(4, 3), [2, 1, 1, 1])
        assert has_homomorphism(blown, cons.complete_rgraph(4, 3)) is not None

    @pytest.mark.parametrize("seed", range(8))
    def test_subgraph_implies_hom(self, seed):
        rng = random.Random(seed)
        host = random_rgraph(rng, 6, 2, 0.5)
        pattern = random_rgraph(rng, 4, 2, 0.5)
        if contains_subgraph(host, pattern) is not None:
            assert has_homomorphism(pattern, host) is not None


class TestDetectors:
    def test_gen_triangle_witness(self):
        a, b, c = find_generalized_triangle(T3)
        assert (a, b, c) == ((2, 3, 4), (0, 1, 2), (0, 1, 3))
        assert len(set(b) & set(c)) == 2
        assert set(b) ^ set(c) <= set(a)

    def test_balanced_tripartite_clean(self):
        assert find_generalized_triangle(cons.turan_rgraph(6, 3, 3)) is None

    def test_too_few_edges(self):
        assert find_generalized_triangle(RGraph(3, 5, ((0, 1, 2), (0, 1, 3)))) is None

    def test_cancellative_violation_t3(self):
        assert find_cancellative_violation(T3) is not None

    def test_matching_cancellative(self):
        assert find_cancellative_violation(cons.matching(3, 2)) is None

    def test_sigma_strictly_inside_cancellative_for_r4(self):
        # hunt a 4-graph telling the two detectors apart, by enumeration
        found = None
        for g in enumerate_rgraphs(
            6, 4, lambda h: find_generalized_triangle(h) is None, monotone=True
        ):
            if find_cancellative_violation(g) is not None:
                found = g
                break
        assert found is not None
        assert find_generalized_triangle(found) is None

    def test_r3_detectors_agree(self, all_3graphs_upto_6):
        for g in all_3graphs_upto_6[5]:
            assert (find_generalized_triangle(g) is None) == (
                find_cancellative_violation(g) is None
            )


class TestFreeness:
    def test_bipartite_triangle_free(self):
        assert is_free(cons.turan_graph(8, 2), single_graph(K3))

    def test_k44_contains_c4(self):
        assert not is_free(cons.turan_graph(8, 2), single_graph(cycle(4)))

    def test_single_edge_sigma_free(self):
        assert is_free(RGraph(3, 3, ((0, 1, 2),)), generalized_triangles(3))

    def test_hom_free_vs_free(self):
        # K3 is C5-free but not C5-hom-free: the gap detected by invariance
        fam = single_graph(cycle(5))
        assert is_free(K3, fam)
        assert not is_hom_free(K3, fam)

    def test_named_family_hom_freeness(self):
        assert is_hom_free(cons.turan_rgraph(6, 3, 3), generalized_triangles(3))
        blown, _ = blowup(T3, (2, 1, 1, 1, 1))
        assert not is_hom_free(blown, generalized_triangles(3))

    def test_edgeless_member_embeds_by_definition(self):
        # an edgeless forbidden graph embeds into anything with enough
        # vertices, so it forbids every graph on >= v(F) vertices
        fam = single_graph(RGraph(2, 3, ()))
        assert not is_free(cons.complete_graph(4), fam)
        assert not is_free(RGraph(2, 3, ()), fam)
        assert is_free(RGraph(2, 2, ()), fam)


class TestWeakExpansion:
    def test_complete_host(self):
        assert find_weak_expansion(cons.complete_rgraph(6, 3), cons.matching(3, 2)) is not None

    def test_semibipartite_host_excludes_matching_expansion(self):
        host = cons.complete_semibipartite(2, 6, 3)
        assert find_weak_expansion(host, cons.matching(3, 2)) is None

    def test_empty_base_needs_shadow_clique(self):
        base = RGraph(3, 4, ())
        assert find_weak_expansion(cons.turan_rgraph(6, 3, 3), base) is None
        assert find_weak_expansion(cons.complete_rgraph(4, 3), base) is not None

    def test_covered_base_reduces_to_containment(self):
        rng = random.Random(3)
        for _ in range(20):
            host = random_rgraph(rng, 6, 3, 0.4)
            base = random_rgraph(rng, 4, 3, 0.6)
            if uncovered_pairs(base):
                continue
            assert (find_weak_expansion(host, base) is None) == (
                contains_subgraph(host, base) is None
            )

    def test_strict_mode_needs_distinct_connectors(self):
        base = RGraph(3, 3, ())  # three uncovered pairs
        host = RGraph(3, 3, ((0, 1, 2),))  # one edge covers all three
        assert find_weak_expansion(host, base) is not None
        assert find_weak_expansion(host, base, distinct_connectors=True) is None

    def test_strict_mode_satisfiable(self):
        base = RGraph(3, 3, ())
        host = cons.complete_rgraph(5, 3)
        out = find_weak_expansion(host, base, distinct_connectors=True)
        assert out is not None
        assert len(set(out.connectors.values())) == 3


class TestFamilies:
    def test_member_lists(self):
        assert len(family_members(generalized_triangles(3))) == 2
        assert len(family_members(cancellative_family(3))) == 2
        assert len(family_members(generalized_triangles(4))) > len(
            family_members(generalized_triangles(3))
        )

    def test_members_have_three_edges(self):
        for m in family_members(generalized_triangles(4)):
            assert len(m.edges) == 3
            assert find_generalized_triangle(m) is not None

    def test_mixed_uniformity_rejected(self):
        with pytest.raises(ValueError):
            explicit_family([K3, T3])

    def test_weak_expansion_members_graph_case(self):
        fam = weak_expansions(RGraph(2, 3, ((0, 1),)))
        members = family_members(fam)
        # one uncovered-pair-free completion each: pairs {0,2},{1,2} get edges
        assert all(len(m.edges) == 3 for m in members)


class TestBlowupInvariance:
    def test_k3_invariant(self):
        rep = check_blowup_invariance(single_graph(K3), 6)
        assert rep.invariant and rep.hom_image_closed

    def test_c5_not_invariant(self):
        rep = check_blowup_invariance(single_graph(cycle(5)), 5)
        assert not rep.invariant
        host, member, phi = rep.counterexample
        assert is_free(host, single_graph(cycle(5)))
        assert has_homomorphism(member, host) is not None

    def test_sigma3_invariant(self):
        rep = check_blowup_invariance(generalized_triangles(3), 5)
        assert rep.invariant

    @pytest.mark.parametrize("fam_name", ["k3", "sigma3"])
    def test_blowups_of_free_patterns_stay_free(self, fam_name):
        fam = single_graph(K3) if fam_name == "k3" else generalized_triangles(3)
        patterns = enumerate_rgraphs(4, fam.r, lambda g: is_free(g, fam), monotone=True)
        for pat in patterns:
            for sizes in itertools.product(range(1, 4), repeat=pat.n):
                if sum(sizes) > 8:
                    continue
                blown, _ = blowup(pat, sizes)
                assert is_free(blown, fam)


class TestRandomFreeGenerator:
    def test_outputs_are_free(self):
        rng = random.Random(0)
        for fam in (single_graph(K3), generalized_triangles(3)):
            for _ in range(10):
                g = random_free_rgraph(rng, 6, fam)
                assert is_free(g, fam)
