"""Difference families and translate pairs (A, cA) in Z_v.

A translate pair is usable for the 3-partite C4-free ring graph when A is a
Sidon set and (A - A) and (cA - cA) meet only in 0.  When v = 2k^2 - 2k + 1
the 2k(k-1) nonzero differences then cover Z_v \\ {0} exactly once, i.e.
{A, cA} is a (v, k, 1) difference family.

Canonical form: (A, c) ~ (u(A + g), c) for every unit u and shift g, since
u(A+g) - u(A+g) = u(A - A) and likewise for cA.  The representative is the
lexicographically smallest sorted tuple among all u(A + g); it always starts
with 0 and its second element divides v.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import NotUnit, RaggedBlocks
from .sidon import is_sidon


@dataclass
class DifferenceFamily:
    v: int
    lam: int
    blocks: tuple[tuple[int, ...], ...]
    verified: bool | None = field(default=None, compare=False)


def verify_difference_family(F: DifferenceFamily):
    """Return (ok, multiplicities) where multiplicities maps residue -> count."""
    sizes = {len(b) for b in F.blocks}
    if len(sizes) > 1:
        raise RaggedBlocks(f"blocks have sizes {sorted(sizes)}")
    counts = Counter()
    for block in F.blocks:
        for a in block:
            for b in block:
                if a != b:
                    counts[(a - b) % F.v] += 1
    mult = {r: counts.get(r, 0) for r in range(1, F.v)}
    ok = all(c == F.lam for c in mult.values()) and not counts.get(0)
    F.verified = ok
    return ok, mult


def _units(v):
    return [u for u in range(1, v) if gcd(u, v) == 1]


def canonical_set(A, v) -> tuple[int, ...]:
    """Lexicographically smallest u(A + g) over units u and shifts g."""
    A = [a % v for a in A]
    best = None
    for a0 in A:
        shifted = [(a - a0) % v for a in A]
        for u in _units(v) if v > 1 else [0]:
            cand = tuple(sorted(u * x % v for x in shifted))
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class TranslatePair:
    v: int
    A: tuple[int, ...]
    c: int

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(sorted(a % self.v for a in self.A)))
        if gcd(self.c, self.v) != 1:
            raise NotUnit(f"{self.c} is not a unit mod {self.v}")

    @property
    def B(self):
        return tuple(sorted(self.c * a % self.v for a in self.A))

    def canonical(self) -> TranslatePair:
        return TranslatePair(self.v, canonical_set(self.A, self.v), self.c)

    def line(self):
        return f"v={self.v} c={self.c} A={','.join(map(str, self.A))}"


def _diffs(S, v):
    return {(a - b) % v for a in S for b in S if a != b}


def williford_condition(P: TranslatePair) -> bool:
    if len(set(P.A)) != len(P.A) or not is_sidon(P.A, P.v):
        return False
    return not (_diffs(P.A, P.v) & _diffs(P.B, P.v))


def coverage_ratio(P: TranslatePair) -> Fraction:
    if P.v < 2:
        return Fraction(1)
    covered = _diffs(P.A, P.v) | _diffs(P.B, P.v)
    return Fraction(len(covered), P.v - 1)


@dataclass
class SearchResult:
    pairs: list[TranslatePair]
    status: str  # "Complete" or "BudgetExceeded"
    nodes: int

    @property
    def complete(self):
        return self.status == "Complete"

    def lines(self):
        out = [p.line() for p in self.pairs]
        out.append(f"# status: {self.status} nodes={self.nodes}")
        return out


def _c_orbit(c, v):
    inv = pow(c, -1, v)
    return sorted({c % v, -c % v, inv, -inv % v})


def _search_one_c(v, k, c, full, min_ratio, budget):
    """DFS over sorted sets {0 < x2 < ...} valid for multiplier c.

    ``used`` is a bitmask over Z_v holding 0 and every difference of A and
    of cA seen so far; a new element is admissible iff all its new
    differences and their c-multiples are fresh and pairwise distinct.
    """
    cmul = [c * d % v for d in range(v)]
    divisors = [d for d in range(1, v) if v % d == 0]
    found = []
    nodes = 0
    cur = [0]
    exhausted = False

    def extend(used, x):
        mask = used
        for a in cur:
            for d in ((x - a) % v, (a - x) % v):
                for val in (d, cmul[d]):
                    bit = 1 << val
                    if mask & bit:
                        return None
                    mask |= bit
        return mask

    def leaf(used):
        A = tuple(cur)
        if canonical_set(A, v) != A:
            return
        covered = bin(used).count("1") - 1
        if full and covered != v - 1:
            return
        if min_ratio is not None and Fraction(covered, v - 1) < min_ratio:
            return
        found.append(A)

    def rec(used, start):
        nonlocal nodes, exhausted
        if exhausted:
            return
        if len(cur) == k:
            leaf(used)
            return
        need = k - len(cur)
        for x in range(start, v - need + 1):
            mask = extend(used, x)
            if mask is None:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                exhausted = True
                return
            cur.append(x)
            rec(mask, x + 1)
            cur.pop()
            if exhausted:
                return

    if k == 1:
        leaf(1)
    else:
        for x2 in divisors:
            if v - x2 < k - 1:
                break
            mask = extend(1, x2)
            if mask is None:
                continue
            nodes += 1
            cur.append(x2)
            rec(mask, x2 + 1)
            cur.pop()
            if exhausted:
                break
    return found, nodes, exhausted


def _orbit_job(args):
    return _search_one_c(*args)


def search_translate_pairs(v, k, require_full_coverage=True, budget=None, min_ratio=None, threads=None):
    """Enumerate canonical translate pairs (A, c) in Z_v with |A| = k.

    Pairs valid for c are exactly those valid for -c, c^-1 and -c^-1, so one
    search per such orbit suffices.  ``budget`` caps DFS nodes per orbit;
    when hit the result is flagged ``BudgetExceeded``.
    """
    if k < 1 or v < 2:
        raise ValueError("need k >= 1 and v >= 2")
    if min_ratio is not None:
        min_ratio = Fraction(min_ratio)
    reps = []
    seen = set()
    for c in _units(v):
        if c not in seen:
            orbit = _c_orbit(c, v)
            seen.update(orbit)
            reps.append((c, orbit))

    jobs = [(v, k, c, require_full_coverage, min_ratio, budget) for c, _ in reps]
    workers = threads if threads is not None else int(os.environ.get("X3P_THREADS", "1") or 1)
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_orbit_job, jobs))
    else:
        results = [_search_one_c(*job) for job in jobs]

    pairs = set()
    nodes = 0
    exhausted = False
    for (c, orbit), (found, n, ex) in zip(reps, results):
        nodes += n
        exhausted |= ex
        for A in found:
            for cc in orbit:
                pairs.add((A, cc))
    out = [TranslatePair(v, A, c) for A, c in sorted(pairs)]
    if v == 2 * k * k - 2 * k + 1:
        for p in out:
            ok, _ = verify_difference_family(DifferenceFamily(v, 1, (p.A, p.B)))
            assert ok, p
    return SearchResult(out, "BudgetExceeded" if exhausted else "Complete", nodes)
