"""Partitioned graphs with bitset adjacency, K_{s,t}-freeness checks, and file I/O.

Adjacency rows are Python ints used as bitsets (bit v of ``adj[u]`` set iff
u ~ v).  Parts are contiguous index ranges, listed in order.

A graph contains K_{s,t} (s <= t) iff some s-set of vertices has at least t
common neighbours; in a loopless graph those neighbours are automatically
outside the s-set.  All freeness checks reduce to that count.
"""

from __future__ import annotations

import io
import os
from collections import Counter
from dataclasses import dataclass, field

from .errors import EmptySet, GraphFormatError, PartitionError, STooLarge

MAX_VERTICES = 100_000
MAX_SIDE = 4
FORMAT_HEADER = "# x3p-graph v1"


def _bits(x):
    """Indices of the set bits of ``x`` in increasing order."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


@dataclass(frozen=True, eq=False)
class PartitionedGraph:
    part_sizes: tuple[int, ...]
    adj: tuple[int, ...]
    labels: tuple[str, ...] = ()
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "part_sizes", tuple(self.part_sizes))
        object.__setattr__(self, "adj", tuple(self.adj))
        if self.labels:
            object.__setattr__(self, "labels", tuple(self.labels))
        validate(self)

    @property
    def n(self):
        return len(self.adj)

    @property
    def parts(self) -> list[range]:
        out, start = [], 0
        for size in self.part_sizes:
            out.append(range(start, start + size))
            start += size
        return out

    def part_of(self) -> list[int]:
        owner = []
        for i, size in enumerate(self.part_sizes):
            owner.extend([i] * size)
        return owner

    def neighbors(self, v) -> list[int]:
        return _bits(self.adj[v])

    def degree(self, v) -> int:
        return self.adj[v].bit_count()

    def edges(self):
        for u, row in enumerate(self.adj):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    @property
    def edge_count(self):
        return sum(row.bit_count() for row in self.adj) // 2

    def same_structure(self, other: PartitionedGraph) -> bool:
        return self.part_sizes == other.part_sizes and self.adj == other.adj

    @classmethod
    def from_edges(cls, part_sizes, edges, labels=(), metadata=None):
        n = sum(part_sizes)
        if n > MAX_VERTICES:
            raise ValueError(f"{n} vertices exceeds the cap of {MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PartitionError(f"edge ({u}, {v}) out of range for n={n}")
            if adj[u] >> v & 1:
                raise PartitionError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(part_sizes), tuple(adj), tuple(labels), dict(metadata or {}))


def validate(G: PartitionedGraph) -> None:
    """Check symmetry, looplessness and that no edge lies inside a part."""
    n = len(G.adj)
    if any(size < 0 for size in G.part_sizes) or sum(G.part_sizes) != n:
        raise PartitionError(f"part sizes {G.part_sizes} do not cover {n} vertices")
    if G.labels and len(G.labels) != n:
        raise PartitionError("label count does not match vertex count")
    full = (1 << n) - 1
    for start, size in zip(_starts(G.part_sizes), G.part_sizes):
        mask = ((1 << size) - 1) << start
        for u in range(start, start + size):
            row = G.adj[u]
            if row & ~full or row < 0:
                raise PartitionError(f"vertex {u} has neighbours outside [0, {n})")
            if row & mask:
                bad = _bits(row & mask)[0]
                if bad == u:
                    raise PartitionError(f"self-loop at vertex {u}")
                raise PartitionError(f"edge ({u}, {bad}) lies inside a part")
            for v in _bits(row):
                if not G.adj[v] >> u & 1:
                    raise PartitionError(f"asymmetric adjacency between {u} and {v}")


def _starts(sizes):
    out, s = [], 0
    for size in sizes:
        out.append(s)
        s += size
    return out


# -- common neighbourhoods ----------------------------------------------------

def common_neighborhood(G: PartitionedGraph, S) -> int:
    """Bitset of vertices adjacent to every vertex of ``S``."""
    S = list(S)
    if not S:
        raise EmptySet("common neighbourhood of the empty set is undefined")
    acc = G.adj[S[0]]
    for v in S[1:]:
        acc &= G.adj[v]
    return acc


def _max_common_range(adj, s, first_range):
    """Search s-subsets whose smallest vertex lies in ``first_range``.

    Returns (value, witness) with the lexicographically first maximiser.
    Subtrees whose running intersection cannot beat the incumbent are skipped.
    """
    n = len(adj)
    best = -1
    witness = ()
    stack_set = []

    def rec(start, acc, depth):
        nonlocal best, witness
        if depth == s:
            c = acc.bit_count()
            if c > best:
                best, witness = c, tuple(stack_set)
            return
        need = s - depth
        for v in range(start, n - need + 1):
            nxt = acc & adj[v]
            if nxt.bit_count() <= best:
                continue
            stack_set.append(v)
            rec(v + 1, nxt, depth + 1)
            stack_set.pop()

    full = (1 << n) - 1
    for v in first_range:
        if v > n - s:
            break
        acc = full & adj[v]
        if acc.bit_count() <= best:
            continue
        stack_set.append(v)
        rec(v + 1, acc, 1)
        stack_set.pop()
    return max(best, 0), witness


def _worker_count(threads):
    if threads is None:
        threads = int(os.environ.get("X3P_THREADS", "1") or 1)
    return max(1, threads)


def max_common_degree(G: PartitionedGraph, s: int, threads: int | None = None):
    """Largest common neighbourhood over all s-subsets, with a maximising s-set.

    Ties go to the lexicographically smallest s-set.  The empty graph gives
    0 with witness (0, ..., s-1); a graph with fewer than s vertices gives 0
    and an empty witness.
    """
    if not 1 <= s <= MAX_SIDE:
        raise STooLarge(f"s={s} outside the supported range 1..{MAX_SIDE}")
    n = G.n
    if n < s:
        return 0, ()
    workers = _worker_count(threads)
    if workers == 1 or n < 64:
        value, witness = _max_common_range(G.adj, s, range(n))
    else:
        from concurrent.futures import ProcessPoolExecutor

        shards = [range(i, n, workers) for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_shard_job, [(G.adj, s, tuple(r)) for r in shards]))
        value = max(r[0] for r in results)
        witness = min((r[1] for r in results if r[0] == value and r[1]), default=())
    if value == 0:
        witness = tuple(range(s))
    return value, witness


def _shard_job(args):
    adj, s, first = args
    return _max_common_range(adj, s, first)


@dataclass
class FreenessResult:
    free: bool
    s: int
    t: int
    max_common: int
    witness_side: tuple[int, ...] = ()
    witness_common: tuple[int, ...] = ()

    def __bool__(self):
        return self.free


def is_Kst_free(G: PartitionedGraph, s: int, t: int, threads: int | None = None) -> FreenessResult:
    if s > t:
        s, t = t, s
    value, side = max_common_degree(G, s, threads=threads)
    if value <= t - 1:
        return FreenessResult(True, s, t, value)
    common = tuple(_bits(common_neighborhood(G, side))[:t])
    return FreenessResult(False, s, t, value, tuple(side), common)


def is_C4_free(G: PartitionedGraph) -> bool:
    return is_Kst_free(G, 2, 2).free


@dataclass
class GraphStats:
    edge_count: int
    degree_histogram: dict[int, int]
    part_sizes: tuple[int, ...]
    pair_edges: dict[tuple[int, int], int]

    @property
    def degree_min(self):
        return min(self.degree_histogram, default=0)

    @property
    def degree_max(self):
        return max(self.degree_histogram, default=0)


def stats(G: PartitionedGraph) -> GraphStats:
    owner = G.part_of()
    k = len(G.part_sizes)
    pair = {(i, j): 0 for i in range(k) for j in range(i + 1, k)}
    for u, v in G.edges():
        a, b = sorted((owner[u], owner[v]))
        pair[a, b] += 1
    hist = Counter(G.degree(v) for v in range(G.n))
    return GraphStats(G.edge_count, dict(sorted(hist.items())), G.part_sizes, pair)


# -- x3p-graph v1 -------------------------------------------------------------

def _format_params(params):
    return " ".join(f"{k}={_fmt_value(v)}" for k, v in params.items())


def _fmt_value(v):
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def dumps(G: PartitionedGraph) -> str:
    buf = io.StringIO()
    buf.write(FORMAT_HEADER + "\n")
    name = G.metadata.get("construction")
    if name:
        params = _format_params(G.metadata.get("params", {}))
        buf.write(f"# construction: {name} {params}".rstrip() + "\n")
    buf.write("p " + " ".join(str(x) for x in (len(G.part_sizes), *G.part_sizes)) + "\n")
    for i, label in enumerate(G.labels):
        buf.write(f"v {i} {label}\n")
    for u, v in G.edges():
        buf.write(f"e {u} {v}\n")
    return buf.getvalue()


def write_graph(G: PartitionedGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(G))


def _parse_params(tokens):
    params = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        params[key] = value if sep else ""
    return params


def loads(text: str) -> PartitionedGraph:
    """Parse an x3p-graph v1 document, validating every invariant."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise GraphFormatError(f"missing '{FORMAT_HEADER}' header", 1)
    part_sizes = None
    labels: dict[int, str] = {}
    edges = []
    seen = set()
    metadata: dict = {}
    owner: list[int] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("construction:"):
                tokens = body[len("construction:"):].split()
                if tokens:
                    metadata["construction"] = tokens[0]
                    metadata["params"] = _parse_params(tokens[1:])
            continue
        kind, _, rest = line.partition(" ")
        if kind == "p":
            if part_sizes is not None:
                raise GraphFormatError("duplicate 'p' line", lineno)
            try:
                nums = [int(x) for x in rest.split()]
            except ValueError:
                raise GraphFormatError("non-integer in 'p' line", lineno) from None
            if not nums or nums[0] != len(nums) - 1 or any(x < 0 for x in nums):
                raise GraphFormatError("'p' line must be 'p <k> <n1> ... <nk>'", lineno)
            part_sizes = tuple(nums[1:])
            if sum(part_sizes) > MAX_VERTICES:
                raise GraphFormatError(f"more than {MAX_VERTICES} vertices", lineno)
            for i, size in enumerate(part_sizes):
                owner.extend([i] * size)
            continue
        if part_sizes is None:
            raise GraphFormatError(f"'{kind}' line before the 'p' line", lineno)
        n = len(owner)
        if kind == "v":
            idx, _, label = rest.partition(" ")
            try:
                i = int(idx)
            except ValueError:
                raise GraphFormatError("bad vertex index", lineno) from None
            if not 0 <= i < n:
                raise GraphFormatError(f"vertex {i} out of range", lineno)
            if i in labels:
                raise GraphFormatError(f"duplicate label for vertex {i}", lineno)
            labels[i] = label
        elif kind == "e":
            parts = rest.split()
            if len(parts) != 2:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError("non-integer edge endpoint", lineno) from None
            if not (0 <= u < v < n):
                raise GraphFormatError(f"edge ({u}, {v}) needs 0 <= u < v < {n}", lineno)
            if owner[u] == owner[v]:
                raise GraphFormatError(f"edge ({u}, {v}) lies inside part {owner[u]}", lineno)
            if (u, v) in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
            seen.add((u, v))
            edges.append((u, v))
        else:
            raise GraphFormatError(f"unknown line type '{kind}'", lineno)
    if part_sizes is None:
        raise GraphFormatError("missing 'p' line")
    n = len(owner)
    if labels and len(labels) != n:
        raise GraphFormatError(f"labels given for {len(labels)} of {n} vertices")
    label_seq = tuple(labels[i] for i in range(n)) if labels else ()
    return PartitionedGraph.from_edges(part_sizes, edges, label_seq, metadata)


def read_graph(path) -> PartitionedGraph:
    with open(path) as fh:
        return loads(fh.read())


# -- small helpers used by tests and the CLI ------------------------------------

def complete_bipartite(s: int, t: int) -> PartitionedGraph:
    edges = [(u, s + v) for u in range(s) for v in range(t)]
    return PartitionedGraph.from_edges((s, t), edges, metadata={"construction": "K", "params": {"s": s, "t": t}})


def cycle(n: int) -> PartitionedGraph:
    """C_n on vertices 0..n-1 with each vertex its own part."""
    return PartitionedGraph.from_edges((1,) * n, [(i, (i + 1) % n) for i in range(n)])


def empty_graph(part_sizes) -> PartitionedGraph:
    return PartitionedGraph.from_edges(tuple(part_sizes), [])

