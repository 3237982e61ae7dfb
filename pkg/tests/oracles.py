"""Independent brute-force oracles shared by the test modules."""

import math
import random
from itertools import combinations

import networkx as nx
from networkx.algorithms import isomorphism

from x3p.graph_core import PartitionedGraph


def random_partitioned_graph(rng: random.Random, n: int, p: float, k: int | None = None) -> PartitionedGraph:
    k = k or rng.randint(1, n)
    cuts = sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []
    bounds = [0, *cuts, n]
    sizes = [b - a for a, b in zip(bounds, bounds[1:])]
    owner = [i for i, size in enumerate(sizes) for _ in range(size)]
    edges = [(u, v) for u, v in combinations(range(n), 2) if owner[u] != owner[v] and rng.random() < p]
    return PartitionedGraph.from_edges(sizes, edges)


def to_networkx(G: PartitionedGraph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def nx_contains_kst(G: PartitionedGraph, s: int, t: int) -> bool:
    """Generic subgraph monomorphism search for K_{s,t}."""
    pattern = nx.complete_bipartite_graph(s, t)
    return isomorphism.GraphMatcher(to_networkx(G), pattern).subgraph_is_monomorphic()


def naive_contains_kst(G: PartitionedGraph, s: int, t: int) -> bool:
    """Enumerate every s-subset and every disjoint t-subset."""
    adj = [set(G.neighbors(v)) for v in range(G.n)]
    for S in combinations(range(G.n), s):
        rest = [v for v in range(G.n) if v not in S]
        for T in combinations(rest, t):
            if all(b in adj[a] for a in S for b in T):
                return True
    return False


def min_binom_sum_exhaustive(m: int, e: int, s: int) -> int:
    """min sum C(d_i, s) over all compositions of e into m nonnegative parts."""
    best = None
    for bars in combinations(range(e + m - 1), m - 1):
        prev = -1
        total = 0
        for b in (*bars, e + m - 1):
            total += math.comb(b - prev - 1, s)
            prev = b
        if best is None or total < best:
            best = total
    return best


def max_bipartite_c4_free(n: int) -> int:
    """Largest C4-free bipartite graph on n vertices, any bipartition.

    For parts (a, b) with a <= b, rows are subsets of the b columns with
    pairwise intersections of size <= 1; rows are chosen in nonincreasing
    subset order to skip permutations.
    """
    best = 0
    for a in range(1, n // 2 + 1):
        b = n - a
        subsets = sorted(range(1 << b), key=lambda x: -bin(x).count("1"))
        sizes = [bin(x).count("1") for x in subsets]

        def rec(idx, chosen, count, total):
            nonlocal best
            if count == a:
                best = max(best, total)
                return
            for i in range(idx, len(subsets)):
                if total + sizes[i] * (a - count) <= best:
                    return
                x = subsets[i]
                if all(bin(x & y).count("1") <= 1 for y in chosen):
                    chosen.append(x)
                    # identical rows are allowed only when they have <= 1 element
                    rec(i if sizes[i] <= 1 else i + 1, chosen, count + 1, total + sizes[i])
                    chosen.pop()

        rec(0, [], 0, 0)
    return best
