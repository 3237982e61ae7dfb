from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from x3p.errors import NotSidon, NotSubgroup, OutOfRange
from x3p.sidon import (
    SidonSet,
    bose_chowla,
    check_bose_chowla_structure,
    difference_set,
    disjoint_from_subgroup,
    is_sidon,
)

PRIME_POWERS_32 = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]


def test_is_sidon_examples():
    assert is_sidon({0, 1}, 5)
    assert is_sidon([1, 10, 16, 18, 37], 41)
    assert not is_sidon([0, 1, 2], 7)
    with pytest.raises(OutOfRange):
        is_sidon([0, 9], 5)


@given(st.integers(2, 30).flatmap(lambda m: st.tuples(st.just(m), st.sets(st.integers(0, m - 1), max_size=8))))
def test_is_sidon_matches_difference_counting(case):
    m, A = case
    diffs = Counter((a - b) % m for a, b in permutations(A, 2))
    assert is_sidon(A, m) == all(c == 1 for c in diffs.values())


def test_sidonset_rejects_non_sidon():
    with pytest.raises(NotSidon):
        SidonSet(7, (0, 1, 2))
    assert SidonSet(5, (1, 0)).elements == (0, 1)


def test_difference_set_examples():
    assert difference_set(SidonSet(5, (0, 1))).counts == {1: 1, 4: 1}
    A = SidonSet(41, (1, 10, 16, 18, 37))
    ds = difference_set(A)
    assert len(ds.counts) == 20 and ds.total == 20


def test_bose_chowla_q3_differences():
    A = bose_chowla(3)
    assert A.modulus == 8 and 1 in A
    diffs = [(a - b) % 8 for a, b in permutations(A.elements, 2)]
    assert len(diffs) == 6 and len(set(diffs)) == 6
    assert set(difference_set(A).counts) == set(diffs)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_bose_chowla_size(q):
    A = bose_chowla(q)
    assert len(A) == q
    assert 1 in A


def test_structure_small_cases():
    A3 = bose_chowla(3)
    assert difference_set(A3).residues() | {0} == set(range(8)) - {4}
    A5 = bose_chowla(5)
    assert difference_set(A5).residues() | {0} == set(range(24)) - {6, 12, 18}
    A2 = bose_chowla(2)
    assert difference_set(A2).residues() | {0} == {0, 1, 2}
    for q, A in ((2, A2), (3, A3), (5, A5)):
        assert check_bose_chowla_structure(q, A)


@pytest.mark.parametrize("q", PRIME_POWERS_32)
def test_bose_chowla_invariants(q):
    A = bose_chowla(q)
    assert len(A) == q
    assert is_sidon(A.elements, A.modulus)
    ds = difference_set(A)
    assert ds.total == q * (q - 1) and set(ds.counts.values()) <= {1}
    assert check_bose_chowla_structure(q, A)
    m = q * q - 1
    for t in range(1, q):
        if (q - 1) % t == 0:
            g = (q - 1) // t * (q + 1) % m
            H = {(i * g) % m for i in range(m)}
            assert len(H) == t
            assert disjoint_from_subgroup(A, H)


def test_disjoint_from_subgroup_examples():
    assert disjoint_from_subgroup(bose_chowla(5), {0, 12})
    assert disjoint_from_subgroup(SidonSet(5, (0, 1)), {0})
    A = SidonSet(7, (0, 1, 3))
    assert not disjoint_from_subgroup(A, set(range(7)))
    with pytest.raises(NotSubgroup):
        disjoint_from_subgroup(A, {0, 2})
