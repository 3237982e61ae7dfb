"""Sidon sets in Z_m and the Bose-Chowla construction.

The literal element set returned by :func:`bose_chowla` depends on which
generator of GF(q^2)* is used.  Everything downstream (set size, Sidon
property, the shape of A - A, edge counts and freeness of the graphs) does not.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import NotSidon, NotSubgroup, OutOfRange
from .finite_field import field_of_order, in_subfield, primitive_element


def _differences(elements, m):
    return Counter((a - b) % m for a in elements for b in elements if a != b)


@dataclass(frozen=True)
class SidonSet:
    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(self.elements))
        object.__setattr__(self, "elements", elems)
        if len(set(elems)) != len(elems):
            raise NotSidon(f"repeated elements in {elems}")
        if any(not 0 <= a < self.modulus for a in elems):
            raise OutOfRange(f"elements must lie in [0, {self.modulus})")
        if not is_sidon(elems, self.modulus):
            raise NotSidon(f"{elems} is not a Sidon set mod {self.modulus}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x % self.modulus in self.elements


@dataclass(frozen=True)
class DifferenceSet:
    modulus: int
    counts: dict[int, int]

    @property
    def total(self):
        return sum(self.counts.values())

    def residues(self):
        return set(self.counts)


def is_sidon(A: Iterable[int], m: int) -> bool:
    A = list(A)
    if any(not 0 <= a < m for a in A):
        raise OutOfRange(f"elements must lie in [0, {m})")
    if len(set(A)) != len(A):
        raise OutOfRange("elements must be distinct")
    seen = set()
    for a in A:
        for b in A:
            if a != b:
                d = (a - b) % m
                if d in seen:
                    return False
                seen.add(d)
    return True


def difference_set(A: SidonSet) -> DifferenceSet:
    return DifferenceSet(A.modulus, dict(sorted(_differences(A.elements, A.modulus).items())))


def bose_chowla(q: int) -> SidonSet:
    """A = {a in Z_{q^2-1} : theta^a - theta in GF(q)} for theta generating GF(q^2)*.

    One running multiplication per exponent; no discrete logarithms.
    """
    field_q = field_of_order(q)
    big = field_of_order(q * q)
    assert big.p == field_q.p
    theta = primitive_element(big)
    m = q * q - 1
    elems = []
    power = big.one()
    for a in range(m):
        if in_subfield(power - theta, q):
            elems.append(a)
        power = power * theta
    result = SidonSet(m, tuple(elems))
    assert len(result) == q, (q, elems)
    return result


def excluded_differences(q: int) -> set[int]:
    """The residues {i(q+1) : 1 <= i <= q-2} that A - A misses."""
    return {i * (q + 1) for i in range(1, q - 1)}


def check_bose_chowla_structure(q: int, A: SidonSet) -> bool:
    """A - A (with 0) must be exactly Z_{q^2-1} minus the nonzero multiples i(q+1), i <= q-2."""
    m = q * q - 1
    if A.modulus != m:
        return False
    attained = difference_set(A).residues() | {0}
    return attained == set(range(m)) - excluded_differences(q)


def _is_subgroup(H, m):
    H = set(H)
    return 0 in H and all((a + b) % m in H for a in H for b in H)


def disjoint_from_subgroup(A: SidonSet, H: Iterable[int]) -> bool:
    """True iff no nonzero element of the subgroup H is a difference of A."""
    H = {h % A.modulus for h in H}
    if not _is_subgroup(H, A.modulus):
        raise NotSubgroup(f"{sorted(H)} is not a subgroup of Z_{A.modulus}")
    return not (difference_set(A).residues() & (H - {0}))
