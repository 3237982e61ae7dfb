"""Acceptance criteria, one test each.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
prints one [PASS]/[FAIL] line per criterion.
"""

import math
import random
import time
from functools import lru_cache

import pytest

from oracles import min_binom_sum_exhaustive, naive_contains_kst, nx_contains_kst, random_partitioned_graph
from x3p.bounds import (
    exact_chi2_bound,
    exact_chi3_bound,
    gamma_lower_bound_check,
    lagrange_numeric_oracle,
    minbinom,
    thm1_coefficient,
)
from x3p.constructions import (
    bose_chowla_quotient,
    build_G_qt,
    build_Gamma_qt,
    build_sum_quotient,
    build_williford,
    random_k_partition_prune,
)
from x3p.designs import canonical_set, search_translate_pairs
from x3p.graph_core import dumps, is_C4_free, is_Kst_free, loads, stats
from x3p.report import certify_equality
from x3p.sidon import bose_chowla, check_bose_chowla_structure, is_sidon

PRIME_POWERS_16 = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
PRIME_POWERS_32 = PRIME_POWERS_16 + [17, 19, 23, 25, 27, 29, 31, 32]
ORACLE_PAIRS = [(2, 2), (2, 3), (2, 5), (2, 7), (3, 3), (3, 4)]
GRID = 300


def valid_pairs(qs):
    return [(q, t) for q in qs for t in range(1, q) if (q - 1) % t == 0]


@lru_cache(maxsize=None)
def oracle(s, t):
    return lagrange_numeric_oracle(s, t, grid_resolution=GRID, restarts=2, seed=0)


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


@pytest.mark.criterion(1, "exact equality certificates 30 (n=15) and 615 (n=123)")
def test_criterion_1_equality_certificates():
    rep, dt = timed(certify_equality, 15, 2, 2, "williford", {"v": 5, "A": [0, 1], "c": 2})
    assert rep.equality_certified and rep.bound_upper["value"] == 30 == rep.edge_count
    assert dt < 1
    rep, dt = timed(certify_equality, 123, 2, 2, "williford", {"v": 41, "A": [1, 10, 16, 18, 37], "c": 9})
    assert rep.equality_certified and rep.bound_upper["value"] == 615 == rep.edge_count
    assert dt < 60


@pytest.mark.criterion(2, "Gamma_qt vertex/edge formulas and K_{2,2t+1}-freeness, q <= 16")
def test_criterion_2_gamma_formulas():
    start = time.perf_counter()
    for q, t in valid_pairs(PRIME_POWERS_16):
        G = build_Gamma_qt(q, t)
        assert G.n == 3 * (q * q - 1) // t
        assert G.edge_count == 3 * q * (q * q - 1) // t
        assert is_Kst_free(G, 2, 2 * t + 1).free
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(3, "Bose-Chowla size, Sidon property and difference structure, q <= 32")
def test_criterion_3_bose_chowla():
    start = time.perf_counter()
    for q in PRIME_POWERS_32:
        A = bose_chowla(q)
        assert len(A) == q
        assert is_sidon(A.elements, q * q - 1)
        assert check_bose_chowla_structure(q, A)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion(4, "Williford graphs on 15 and 123 vertices")
def test_criterion_4_williford():
    start = time.perf_counter()
    for v, A, c, n, deg, edges in [(5, [0, 1], 2, 15, 4, 30), (41, [1, 10, 16, 18, 37], 9, 123, 10, 615)]:
        G = build_williford(v, A, c)
        assert G.n == n and G.edge_count == edges
        assert stats(G).degree_histogram == {deg: n}
        assert is_C4_free(G)
    assert time.perf_counter() - start < 1


@pytest.mark.criterion(5, "numeric Lagrange oracle matches the closed form within 1e-4")
def test_criterion_5_lagrange_oracle():
    start = time.perf_counter()
    for s, t in ORACLE_PAIRS:
        value, (d1, d2, _) = oracle(s, t)
        assert abs(value - thm1_coefficient(s, t).coefficient) <= 1e-4, (s, t, value)
        assert abs(d1 - 1 / 3) <= 1 / GRID and abs(d2 - 1 / 3) <= 1 / GRID, (s, t, d1, d2)
    assert time.perf_counter() - start < 120


@pytest.mark.criterion(6, "Gamma_qt lower-bound inequality for q <= 16")
def test_criterion_6_gamma_lower_bound():
    start = time.perf_counter()
    for q, t in valid_pairs(PRIME_POWERS_16):
        rec = gamma_lower_bound_check(q, t)
        assert rec["floor_formula_ok"], rec
        assert rec["edges"] >= math.sqrt(t / 3) * rec["n"] ** 1.5 - rec["n"]
    assert time.perf_counter() - start < 1


@pytest.mark.criterion(7, "bipartite comparison ex_chi2(123, C4) <= 521")
def test_criterion_7_chi2():
    res, dt = timed(exact_chi2_bound, 123, 2, 2)
    assert res.value <= 521
    assert dt < 5


@pytest.mark.slow
@pytest.mark.criterion(8, "translate-pair searches (5,2), (41,5), (61,6)")
def test_criterion_8_searches():
    res, dt = timed(search_translate_pairs, 5, 2)
    assert res.complete and (canonical_set((0, 1), 5), 2) in {(p.A, p.c) for p in res.pairs}
    assert dt < 1
    res, dt = timed(search_translate_pairs, 41, 5)
    assert res.complete and (canonical_set((1, 10, 16, 18, 37), 41), 9) in {(p.A, p.c) for p in res.pairs}
    assert dt < 1
    res, dt = timed(search_translate_pairs, 61, 6)
    assert res.pairs == [] and res.status == "Complete"
    assert dt < 30 * 60


@pytest.mark.criterion(9, "property suite: oracle, K_{s,t} oracle, minbinom, random pruning")
def test_criterion_9_property_suite():
    start = time.perf_counter()
    # oracle vs closed form (shares the cached runs of criterion 5)
    for s, t in ORACLE_PAIRS:
        assert abs(oracle(s, t)[0] - thm1_coefficient(s, t).coefficient) <= 1e-4

    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 40)
        G = random_partitioned_graph(rng, n, rng.choice([0.05, 0.1, 0.2, 0.35, 0.5]))
        s = rng.randint(1, 3)
        t = rng.randint(s, 3)
        found = naive_contains_kst(G, s, t) if n <= 14 else nx_contains_kst(G, s, t)
        assert is_Kst_free(G, s, t).free == (not found)

    for m in range(1, 7):
        for e in range(21):
            for s in (1, 2, 3):
                assert minbinom(m, e, s) == min_binom_sum_exhaustive(m, e, s)

    src = build_Gamma_qt(7, 3)
    for k in (2, 3, 4):
        fr = [random_k_partition_prune(src, k, seed)[1] / src.edge_count for seed in range(100)]
        mean = sum(fr) / len(fr)
        se = math.sqrt(sum((f - mean) ** 2 for f in fr) / (len(fr) - 1)) / math.sqrt(len(fr))
        assert abs(mean - (1 - 1 / k)) <= 3 * se, (k, mean, se)
    assert time.perf_counter() - start < 120


@pytest.mark.criterion(10, "x3p-graph v1 round trip for every construction")
def test_criterion_10_round_trip():
    start = time.perf_counter()
    graphs = [build_G_qt(q, t) for q, t in valid_pairs([3, 4, 5, 7, 8, 9])]
    graphs += [build_Gamma_qt(q, t) for q, t in valid_pairs([3, 4, 5, 7, 8, 9])]
    for q, t in valid_pairs([3, 5, 7]):
        A, H = bose_chowla_quotient(q, t)
        graphs.append(build_sum_quotient(H.m, H, A))
    graphs += [build_williford(5, [0, 1], 2), build_williford(13, [0, 1, 4], 5),
               build_williford(41, [1, 10, 16, 18, 37], 9)]
    graphs.append(random_k_partition_prune(build_Gamma_qt(7, 3), 3, 1)[0])
    for G in graphs:
        H = loads(dumps(G))  # loads re-validates partition invariants
        assert H.same_structure(G) and H.labels == G.labels
        assert stats(H) == stats(G)
        assert dumps(loads(dumps(H))) == dumps(H)
        if len(G.part_sizes) == 3 and G.metadata.get("construction") == "williford":
            assert is_C4_free(H)
    assert time.perf_counter() - start < 5


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
