"""Exact maximum reverse-free / full-of-flips code sizes at desk scale.

The words of [n]^k (or its repetition-free subset) become vertices of a
conflict graph whose edges join word pairs having a reverse.  A maximum
reverse-free code is then a maximum independent set and a maximum
full-of-flips code a maximum clique.  Both are solved by one clique kernel
(independent set goes through the complement) with greedy-coloring bounds,
plus a brute-force subset oracle for cross-validation on tiny instances.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .errors import CapacityError, PreconditionError
from .words import Code, _letter_positions, _pair_has_reverse

VERTEX_LIMIT = 10_000
ORACLE_VERTEX_LIMIT = 20


@dataclass(frozen=True)
class ConflictGraph:
    """All words of the mode's word set, plus the reverse relation as edges.

    ``adj[v]`` is a bitmask over vertex indices; vertices are the words in
    lexicographic order.
    """

    n: int
    k: int
    repetition_free: bool
    words: tuple
    adj: tuple

    def vertex_count(self) -> int:
        return len(self.words)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()


def word_universe_size(n: int, k: int, repetition_free: bool) -> int:
    return math.perm(n, k) if repetition_free else n ** k


def build_conflict_graph(n: int, k: int, repetition_free: bool) -> ConflictGraph:
    """Enumerate the word universe and connect pairs having a reverse."""
    if n < 1 or k < 1:
        raise PreconditionError("need n >= 1 and k >= 1")
    total = word_universe_size(n, k, repetition_free)
    if total > VERTEX_LIMIT:
        raise CapacityError(
            f"conflict graph would have {total} vertices, over the "
            f"{VERTEX_LIMIT} limit"
        )
    if repetition_free:
        words = tuple(permutations(range(n), k))
    else:
        words = tuple(product(range(n), repeat=k))
    nv = len(words)
    posmaps = [_letter_positions(w) for w in words]
    adj = [0] * nv
    for a in range(nv):
        wa = words[a]
        pos_a = posmaps[a]
        for b in range(a + 1, nv):
            if _pair_has_reverse(wa, words[b], pos_a):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return ConflictGraph(
        n=n, k=k, repetition_free=repetition_free, words=words, adj=tuple(adj)
    )


# -- clique kernel -------------------------------------------------------------


def max_clique_vertices(adj, nv: int):
    """Maximum clique of a bitset-adjacency graph, as ascending vertex list.

    Branch and bound with greedy-coloring upper bounds; vertices are
    relabeled highest-degree-first (ties by index) so the search, and hence
    the returned witness, is deterministic.
    """
    if nv == 0:
        return []
    order = sorted(range(nv), key=lambda v: (-adj[v].bit_count(), v))
    rank = [0] * nv
    for i, v in enumerate(order):
        rank[v] = i
    radj = [0] * nv
    for v in range(nv):
        mask = adj[v]
        new = 0
        while mask:
            low = mask & -mask
            new |= 1 << rank[low.bit_length() - 1]
            mask ^= low
        radj[rank[v]] = new

    best: list[int] = []
    stack: list[int] = []
    limit = sys.getrecursionlimit()
    if limit < 2 * nv + 100:
        sys.setrecursionlimit(2 * nv + 100)

    def color_sort(cand: int):
        verts: list[int] = []
        bounds: list[int] = []
        color = 0
        left = cand
        while left:
            color += 1
            avail = left
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~(radj[v] | low)
                left ^= low
                verts.append(v)
                bounds.append(color)
        return verts, bounds

    def expand(cand: int):
        verts, bounds = color_sort(cand)
        for idx in range(len(verts) - 1, -1, -1):
            if len(stack) + bounds[idx] <= len(best):
                return
            v = verts[idx]
            stack.append(v)
            sub = cand & radj[v]
            if sub:
                expand(sub)
            elif len(stack) > len(best):
                best[:] = stack
            stack.pop()
            cand &= ~(1 << v)

    expand((1 << nv) - 1)
    return sorted(order[i] for i in best)


def _witness_code(graph: ConflictGraph, vertices) -> Code:
    return Code(
        n=graph.n,
        k=graph.k,
        repetition_free=graph.repetition_free,
        words=tuple(graph.words[v] for v in sorted(vertices)),
    )


def max_reverse_free(n: int, k: int, repetition_free: bool):
    """Exact maximum reverse-free code size with a witness code.

    Maximum independent set of the conflict graph, solved as a clique on
    the complement.
    """
    graph = build_conflict_graph(n, k, repetition_free)
    nv = graph.vertex_count()
    full = (1 << nv) - 1
    comp = [full & ~graph.adj[v] & ~(1 << v) for v in range(nv)]
    chosen = max_clique_vertices(comp, nv)
    return len(chosen), _witness_code(graph, chosen)


def max_full_of_flips(n: int, k: int, repetition_free: bool):
    """Exact maximum full-of-flips code size with a witness code."""
    graph = build_conflict_graph(n, k, repetition_free)
    chosen = max_clique_vertices(graph.adj, graph.vertex_count())
    return len(chosen), _witness_code(graph, chosen)


# -- brute-force oracle ---------------------------------------------------------


def naive_subset_oracle(graph: ConflictGraph, mode: str) -> int:
    """Exact optimum by enumerating all 2^V vertex subsets.

    ``mode`` is ``"independent"`` (no edge inside the subset) or
    ``"clique"`` (every pair inside the subset adjacent).  Vectorized over
    the full subset range, but still a plain exhaustive check, independent
    of the branch-and-bound solver.
    """
    if mode not in ("independent", "clique"):
        raise PreconditionError(f"unknown oracle mode {mode!r}")
    nv = graph.vertex_count()
    if nv > ORACLE_VERTEX_LIMIT:
        raise CapacityError(
            f"{nv} vertices exceed the oracle limit {ORACLE_VERTEX_LIMIT}"
        )
    if nv == 0:
        return 0
    total = 1 << nv
    masks = np.arange(total, dtype=np.int64)
    valid = np.ones(total, dtype=bool)
    for u in range(nv):
        for v in range(u + 1, nv):
            edge = graph.has_edge(u, v)
            forbidden = edge if mode == "independent" else not edge
            if forbidden:
                both = ((masks >> u) & (masks >> v) & 1).astype(bool)
                valid &= ~both
    sizes = np.zeros(total, dtype=np.int8)
    for v in range(nv):
        sizes += ((masks >> v) & 1).astype(np.int8)
    return int(sizes[valid].max())
