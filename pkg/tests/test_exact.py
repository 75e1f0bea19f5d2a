import math
from itertools import permutations

import pytest

from revfree import (
    CapacityError,
    PreconditionError,
    build_conflict_graph,
    max_full_of_flips,
    max_reverse_free,
    naive_subset_oracle,
    verify_full_of_flips,
    verify_reverse_free,
)
from revfree.exact import max_clique_vertices, word_universe_size


def parity(word):
    inversions = sum(
        1
        for i in range(len(word))
        for j in range(i + 1, len(word))
        if word[i] > word[j]
    )
    return inversions % 2


def small_instances(limit):
    """All (n, k, repetition_free) with at most `limit` vertices."""
    out = []
    for repetition_free in (True, False):
        for n in range(1, limit + 1):
            for k in range(1, 8):
                if word_universe_size(n, k, repetition_free) <= limit:
                    out.append((n, k, repetition_free))
    return out


class TestConflictGraph:
    def test_s3_structure(self):
        graph = build_conflict_graph(3, 3, True)
        assert graph.vertex_count() == 6
        assert all(graph.degree(v) == 3 for v in range(6))
        for u in range(6):
            for v in range(u + 1, 6):
                expected = parity(graph.words[u]) != parity(graph.words[v])
                assert graph.has_edge(u, v) == expected

    def test_two_permutations(self):
        graph = build_conflict_graph(2, 2, True)
        assert graph.vertex_count() == 2
        assert graph.has_edge(0, 1)

    def test_length_one_words_never_conflict(self):
        for n in (1, 3, 6):
            graph = build_conflict_graph(n, 1, True)
            assert graph.vertex_count() == n
            assert all(graph.degree(v) == 0 for v in range(n))

    def test_vertices_in_lexicographic_order(self):
        graph = build_conflict_graph(3, 2, False)
        assert list(graph.words) == sorted(graph.words)

    def test_capacity_guard_names_count(self):
        with pytest.raises(CapacityError) as info:
            build_conflict_graph(10, 5, False)
        assert "100000" in str(info.value)

    def test_no_self_loops(self):
        graph = build_conflict_graph(3, 2, False)
        assert all(not graph.has_edge(v, v) for v in range(graph.vertex_count()))


class TestMaxCliqueKernel:
    def test_empty_graph(self):
        assert max_clique_vertices([], 0) == []

    def test_edgeless(self):
        assert max_clique_vertices([0, 0, 0], 3) in ([0], [1], [2])

    def test_triangle_plus_pendant(self):
        # vertices 0-1-2 triangle, 3 attached to 0
        adj = [0b1110, 0b0101, 0b0011, 0b0001]
        assert max_clique_vertices(adj, 4) == [0, 1, 2]


class TestMaxReverseFree:
    def test_f22(self):
        size, witness = max_reverse_free(2, 2, True)
        assert size == 1

    def test_f33(self):
        size, witness = max_reverse_free(3, 3, True)
        assert size == 3
        assert verify_reverse_free(witness, "pairwise") == (True, None)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_fn2_is_half_the_pairs(self, n):
        size, witness = max_reverse_free(n, 2, True)
        assert size == n * (n - 1) // 2
        assert verify_reverse_free(witness, "signature") == (True, None)

    def test_fbar22(self):
        size, witness = max_reverse_free(2, 2, False)
        assert size == 3
        assert verify_reverse_free(witness, "pairwise") == (True, None)

    def test_f_monotone_in_n(self):
        values = [max_reverse_free(n, 2, True)[0] for n in range(2, 7)]
        assert values == sorted(values)

    def test_f_at_most_fbar(self):
        for n, k in [(2, 2), (3, 2), (3, 3), (4, 2)]:
            assert max_reverse_free(n, k, True)[0] <= max_reverse_free(n, k, False)[0]

    def test_empty_universe(self):
        size, witness = max_reverse_free(2, 3, True)
        assert size == 0
        assert len(witness) == 0


class TestMaxFullOfFlips:
    def test_g22(self):
        size, witness = max_full_of_flips(2, 2, True)
        assert size == 2
        assert verify_full_of_flips(witness) == (True, None)

    def test_g33(self):
        size, witness = max_full_of_flips(3, 3, True)
        assert size == 2
        assert verify_full_of_flips(witness) == (True, None)

    def test_gn1(self):
        for n in (1, 2, 5):
            assert max_full_of_flips(n, 1, True)[0] == 1

    def test_product_inequality(self):
        # G(n,n) * F(n,n) <= n!, tight at n = 3
        for n in (2, 3, 4):
            f = max_reverse_free(n, n, True)[0]
            g = max_full_of_flips(n, n, True)[0]
            assert f * g <= math.factorial(n)
        assert max_reverse_free(3, 3, True)[0] * max_full_of_flips(3, 3, True)[0] == 6


class TestNaiveOracle:
    def test_s3_values(self):
        graph = build_conflict_graph(3, 3, True)
        assert naive_subset_oracle(graph, "independent") == 3
        assert naive_subset_oracle(graph, "clique") == 2

    def test_edgeless_graph(self):
        graph = build_conflict_graph(5, 1, True)
        assert naive_subset_oracle(graph, "independent") == 5
        assert naive_subset_oracle(graph, "clique") == 1

    def test_rejects_unknown_mode(self):
        graph = build_conflict_graph(2, 2, True)
        with pytest.raises(PreconditionError):
            naive_subset_oracle(graph, "vertex-cover")

    def test_capacity_guard(self):
        graph = build_conflict_graph(3, 3, False)  # 27 vertices
        with pytest.raises(CapacityError):
            naive_subset_oracle(graph, "independent")

    def test_solver_matches_oracle_everywhere(self):
        for n, k, repetition_free in small_instances(20):
            graph = build_conflict_graph(n, k, repetition_free)
            ind_size, ind_witness = max_reverse_free(n, k, repetition_free)
            assert ind_size == naive_subset_oracle(graph, "independent"), (
                n,
                k,
                repetition_free,
            )
            clique_size, clique_witness = max_full_of_flips(n, k, repetition_free)
            assert clique_size == naive_subset_oracle(graph, "clique"), (
                n,
                k,
                repetition_free,
            )
            if len(ind_witness):
                assert verify_reverse_free(ind_witness, "signature")[0]
            if len(clique_witness):
                assert verify_full_of_flips(clique_witness)[0]


def brute_force_best_code(n, k, repetition_free, mode):
    """Independent exhaustive check over all subsets of the word universe."""
    if repetition_free:
        words = list(permutations(range(n), k))
    else:
        from itertools import product

        words = list(product(range(n), repeat=k))
    from revfree import Code

    best = 0
    for mask in range(1 << len(words)):
        chosen = [words[i] for i in range(len(words)) if (mask >> i) & 1]
        if len(chosen) <= best:
            continue
        code = Code(n=n, k=k, repetition_free=repetition_free, words=tuple(chosen))
        if mode == "independent":
            ok, _ = verify_reverse_free(code, "signature")
        else:
            ok, _ = verify_full_of_flips(code)
        if ok:
            best = len(chosen)
    return best


def test_oracle_matches_word_level_brute_force():
    # ties the graph encoding back to the raw word-level definitions
    for n, k, repetition_free in [(3, 2, True), (2, 2, False), (3, 3, True)]:
        graph = build_conflict_graph(n, k, repetition_free)
        for mode in ("independent", "clique"):
            assert naive_subset_oracle(graph, mode) == brute_force_best_code(
                n, k, repetition_free, mode
            )
