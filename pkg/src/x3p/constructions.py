"""Graph constructions: Bose-Chowla quotient graphs, Williford's ring graph,
the sum-quotient graph, and random k-partition pruning.

Quotient vertices are cosets of H = <g> in Z_m.  Since H = d Z_m with
d = gcd(m, g), the canonical (smallest) representative of x + H is x mod d
and the cosets are indexed by 0..d-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import DifferenceOverlap, DivisibilityViolated, NotSidon, NotUnit, PreconditionFailed
from .graph_core import PartitionedGraph
from .sidon import SidonSet, bose_chowla, difference_set, disjoint_from_subgroup, is_sidon


@dataclass(frozen=True)
class QuotientSpec:
    m: int
    generator_h: int
    h_elements: tuple[int, ...]
    coset_reps: tuple[int, ...]

    @property
    def index(self):
        """Number of cosets; also the modulus that maps x to its representative."""
        return len(self.coset_reps)

    def rep(self, x):
        return x % self.index


def subgroup_generated(m: int, g: int) -> QuotientSpec:
    if not 0 <= g < m:
        raise ValueError(f"generator {g} outside [0, {m})")
    d = gcd(m, g)  # gcd(m, 0) == m
    h = tuple(range(0, m, d))
    return QuotientSpec(m, g, h, tuple(range(d)))


def _check_divides(q, t):
    if t < 1 or (q - 1) % t:
        raise DivisibilityViolated(t, q)


def bose_chowla_quotient(q: int, t: int):
    """(A, H) for the pair (q, t): A Bose-Chowla in Z_{q^2-1}, H = <((q-1)/t)(q+1)>."""
    _check_divides(q, t)
    m = q * q - 1
    A = bose_chowla(q)
    H = subgroup_generated(m, ((q - 1) // t) * (q + 1) % m)
    assert len(H.h_elements) == t
    return A, H


def _translate_edges(A, H, src_offset, dst_offset):
    d = H.index
    edges = []
    for x in range(d):
        targets = {(x + a) % d for a in A}
        # (A - A) and H meet only in 0, so distinct a give distinct cosets
        assert len(targets) == len(A), "multi-edge in quotient construction"
        edges.extend((src_offset + x, dst_offset + y) for y in sorted(targets))
    return edges


def build_G_qt(q: int, t: int) -> PartitionedGraph:
    """Bipartite graph on two copies of Z_{q^2-1}/H; x+H ~ x+a+H for a in A."""
    A, H = bose_chowla_quotient(q, t)
    d = H.index
    edges = _translate_edges(A, H, 0, d)
    labels = [f"X{x}" for x in range(d)] + [f"Y{x}" for x in range(d)]
    meta = {"construction": "g_qt", "params": {"q": q, "t": t}, "A": list(A.elements)}
    return PartitionedGraph.from_edges((d, d), edges, labels, meta)


def build_Gamma_qt(q: int, t: int) -> PartitionedGraph:
    """3-partite graph X -> Y -> Z -> X, each arc joining x+H to x+a+H."""
    A, H = bose_chowla_quotient(q, t)
    d = H.index
    edges = (
        _translate_edges(A, H, 0, d)
        + _translate_edges(A, H, d, 2 * d)
        + _translate_edges(A, H, 2 * d, 0)
    )
    labels = [f"{part}{x}" for part in "XYZ" for x in range(d)]
    meta = {"construction": "gamma_qt", "params": {"q": q, "t": t}, "A": list(A.elements)}
    return PartitionedGraph.from_edges((d, d, d), edges, labels, meta)


def build_sum_quotient(m: int, H: QuotientSpec, A: SidonSet) -> PartitionedGraph:
    """Graph on Z_m/H with x+H ~ y+H iff x+y in A+H; loops dropped.

    No proper colouring is computed, so every vertex is placed in its own
    part.  The loop count is recorded in ``metadata['loops']``.
    """
    if H.m != m or A.modulus != m:
        raise PreconditionFailed(f"modulus mismatch: m={m}, H.m={H.m}, A.modulus={A.modulus}")
    if not disjoint_from_subgroup(A, H.h_elements):
        raise PreconditionFailed("(A - A) meets H outside 0")
    d = H.index
    shifted = {a % d for a in A}
    assert len(shifted) == len(A)
    edges = set()
    loops = 0
    for x in range(d):
        for a in shifted:
            y = (a - x) % d
            if y == x:
                loops += 1
            else:
                edges.add((min(x, y), max(x, y)))
    meta = {
        "construction": "sum_quotient",
        "params": {"m": m, "h": H.generator_h, "A": list(A.elements)},
        "loops": loops,
        "multi_edges": 0,
    }
    return PartitionedGraph.from_edges((1,) * d, sorted(edges), [str(x) for x in range(d)], meta)


def williford_condition_holds(v, A, c):
    """Raise the matching error unless (A, c) satisfies the ring-graph hypotheses."""
    if gcd(c, v) != 1:
        raise NotUnit(f"{c} is not a unit mod {v}")
    A = [a % v for a in A]
    if len(set(A)) != len(A) or not is_sidon(A, v):
        raise NotSidon(f"{sorted(A)} is not a Sidon set mod {v}")
    da = difference_set(SidonSet(v, tuple(A))).residues()
    db = {(c * x) % v for x in da}
    if da & db:
        raise DifferenceOverlap(f"(A - A) and (cA - cA) share {sorted(da & db)}")
    return True


def build_williford(v: int, A, c: int) -> PartitionedGraph:
    """3-partite C4-free graph on 3v vertices from a translate pair (A, cA) in Z_v.

    S1 = Z_v, S2 = translates A + j, S3 = translates B + i (B = cA), the latter
    two indexed by j and i.  x ~ A+j iff x - j in A; x ~ B+i iff x - i in B;
    A+j ~ B+i iff i - cj in A.
    """
    williford_condition_holds(v, A, c)
    A = sorted(a % v for a in A)
    B = sorted({(c * a) % v for a in A})
    edges = []
    for j in range(v):
        edges.extend(((j + a) % v, v + j) for a in A)
    for i in range(v):
        edges.extend(((i + b) % v, 2 * v + i) for b in B)
    for j in range(v):
        edges.extend((v + j, 2 * v + (c * j + a) % v) for a in A)
    labels = [f"x{x}" for x in range(v)] + [f"A+{j}" for j in range(v)] + [f"B+{i}" for i in range(v)]
    meta = {"construction": "williford", "params": {"v": v, "A": A, "c": c}}
    return PartitionedGraph.from_edges((v, v, v), sorted(edges), labels, meta)


def random_k_partition_prune(G: PartitionedGraph, k: int, seed: int):
    """Colour vertices uniformly into k classes and keep only cross-class edges.

    Vertices are renumbered so that each class is a contiguous part; labels
    carry the original index.  Returns (graph, retained_edge_count).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    colour = rng.integers(0, k, size=G.n)
    order = sorted(range(G.n), key=lambda v: (colour[v], v))
    new_index = {old: new for new, old in enumerate(order)}
    sizes = tuple(int(np.sum(colour == c)) for c in range(k))
    kept = [
        (new_index[u], new_index[v]) for u, v in G.edges() if colour[u] != colour[v]
    ]
    old_labels = G.labels or tuple(str(v) for v in range(G.n))
    labels = [old_labels[v] for v in order]
    meta = {
        "construction": "random_prune",
        "params": {"k": k, "seed": seed, "source": G.metadata.get("construction", "")},
        "original_edges": G.edge_count,
    }
    pruned = PartitionedGraph.from_edges(sizes, kept, labels, meta)
    return pruned, len(kept)
