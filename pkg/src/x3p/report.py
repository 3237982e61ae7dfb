"""Reports tying a witness construction to an exact upper bound."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import bounds, constructions
from .errors import X3PError
from .graph_core import PartitionedGraph, is_Kst_free, stats

REPORT_KEYS = (
    "construction",
    "n",
    "part_sizes",
    "edge_count",
    "degree_min",
    "degree_max",
    "freeness",
    "bound_upper",
    "bound_lower",
    "equality_certified",
)


@dataclass
class Report:
    construction: dict
    n: int
    part_sizes: list[int]
    edge_count: int
    degree_min: int
    degree_max: int
    freeness: dict = field(default_factory=dict)
    bound_upper: dict | None = None
    bound_lower: int | None = None
    equality_certified: bool = False
    reason: str = ""

    def __post_init__(self):
        if self.equality_certified:
            assert self.freeness.get("verified"), "certified without verified freeness"
            assert self.bound_upper and self.bound_upper["value"] == self.edge_count

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, data):
        missing = [k for k in REPORT_KEYS if k not in data]
        if missing:
            raise ValueError(f"report is missing keys {missing}")
        return cls(**{k: data[k] for k in (*REPORT_KEYS, "reason") if k in data})

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def freeness_record(G: PartitionedGraph, s: int, t: int) -> dict:
    res = is_Kst_free(G, s, t)
    rec = {"s": res.s, "t": res.t, "verified": res.free, "max_common": res.max_common, "witness": None}
    if not res.free:
        rec["witness"] = {"side": list(res.witness_side), "common": list(res.witness_common)}
    return rec


def graph_report(G: PartitionedGraph, s=None, t=None) -> Report:
    st = stats(G)
    construction = {
        "name": G.metadata.get("construction", ""),
        "params": G.metadata.get("params", {}),
    }
    freeness = freeness_record(G, s, t) if s is not None else {}
    return Report(
        construction=construction,
        n=G.n,
        part_sizes=list(G.part_sizes),
        edge_count=st.edge_count,
        degree_min=st.degree_min,
        degree_max=st.degree_max,
        freeness=freeness,
        bound_lower=st.edge_count,
    )


def pad_isolated(G: PartitionedGraph, n: int) -> PartitionedGraph:
    """Append isolated vertices to the last part until G has n vertices."""
    extra = n - G.n
    if extra < 0:
        raise ValueError(f"witness already has {G.n} > {n} vertices")
    if extra == 0:
        return G
    sizes = list(G.part_sizes)
    sizes[-1] += extra
    labels = list(G.labels) + [f"iso{i}" for i in range(extra)] if G.labels else ()
    meta = dict(G.metadata)
    meta["padding"] = extra
    return PartitionedGraph(tuple(sizes), G.adj + (0,) * extra, tuple(labels), meta)


def build_witness(kind: str, params: dict) -> PartitionedGraph:
    if kind == "williford":
        return constructions.build_williford(params["v"], params["A"], params["c"])
    if kind == "gamma_qt":
        return constructions.build_Gamma_qt(params["q"], params["t"])
    raise ValueError(f"unsupported witness kind {kind!r}")


def certify_equality(n: int, s: int, t: int, kind: str = "williford", params: dict | None = None,
                     threads=None) -> Report:
    """Build a witness, verify it, and compare its size with the exact chi<=3 bound.

    Any failing step yields ``equality_certified=False`` with a reason.
    """
    params = params or {}
    construction = {"name": kind, "params": params}
    try:
        G = pad_isolated(build_witness(kind, params), n)
    except (X3PError, ValueError, KeyError) as exc:
        return Report(construction, n, [], 0, 0, 0, reason=f"witness: {type(exc).__name__}: {exc}")

    report = graph_report(G, s, t)
    report.construction = construction
    try:
        bound = bounds.exact_chi3_bound(n, s, t, threads=threads)
    except X3PError as exc:
        report.reason = f"bound: {type(exc).__name__}: {exc}"
        return report
    report.bound_upper = bound.to_dict()
    reasons = []
    if len(G.part_sizes) != 3:
        reasons.append(f"witness has {len(G.part_sizes)} parts, not 3")
    if not report.freeness["verified"]:
        reasons.append(f"witness contains K_{{{s},{t}}}")
    if report.edge_count != bound.value:
        reasons.append(f"edges {report.edge_count} != upper bound {bound.value}")
    report.equality_certified = not reasons
    report.reason = "; ".join(reasons)
    return report
