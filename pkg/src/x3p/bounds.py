"""Upper and lower bounds on ex_{chi<=k}(n, K_{s,t}).

Three families live here:

* closed-form leading coefficients (tripartite KST analogue, the k-partite
  K_{2,t} / K_{3,3} bounds, classical bipartite and unrestricted values);
* the part-fraction optimisation behind the tripartite coefficient, both in
  closed form and via an independent numerical solver;
* exact finite-n bounds from the integer form of the common-neighbour count:
  for every part i and every s-subset of it there are at most t-1 common
  neighbours outside, so with e_ij edges between parts i and j,

      minbinom(n_j, e_ij, s) + minbinom(n_k, e_ik, s) <= (t-1) * C(n_i, s).

  Maximising e_12 + e_13 + e_23 under the three constraints bounds every
  K_{s,t}-free tripartite graph with those part sizes.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass

import numpy as np

from .errors import BadParams, SearchBudgetExceeded

DEFAULT_MAX_CELLS = 50_000_000
_CHUNK_CELLS = 1_000_000


@dataclass(frozen=True)
class AsymptoticBound:
    coefficient: float
    exponent: float
    source: str

    def __call__(self, n):
        return self.coefficient * n**self.exponent

    def describe(self):
        return f"{self.coefficient:.6f} · n^{self.exponent:g}"


def _check_st(s, t):
    if not 2 <= s <= t:
        raise BadParams(f"need 2 <= s <= t, got s={s}, t={t}")


def thm1_coefficient(s: int, t: int) -> AsymptoticBound:
    """(1/3)^(1-1/s) ((t-1)/2)^(1/s) n^(2-1/s) for 3-partite K_{s,t}-free graphs."""
    _check_st(s, t)
    coef = (1 / 3) ** (1 - 1 / s) * ((t - 1) / 2) ** (1 / s)
    return AsymptoticBound(coef, 2 - 1 / s, "tripartite-kst")


def lagrange_closed_form(s: int, t: int, d1, d2):
    """Stationary value of c12 + c13 + c23 at part fractions (d1, d2, 1-d1-d2).

    Accepts scalars or numpy arrays.
    """
    _check_st(s, t)
    d1 = np.asarray(d1, dtype=float)
    d2 = np.asarray(d2, dtype=float)
    if np.any(d1 < 0) or np.any(d2 < 0) or np.any(d1 + d2 > 1 + 1e-12):
        raise BadParams("part fractions outside the simplex")
    inner = d1 * (1 - d1) + d2 * (1 - d2) - d1 * d2
    value = ((t - 1) / 2) ** (1 / s) * np.maximum(inner, 0.0) ** (1 - 1 / s)
    return float(value) if value.ndim == 0 else value


def _pair_ascent(u, v, wu, wv, budget, s, iters):
    """Maximise u + v subject to wu u^s + wv v^s <= budget, 0 <= u, v <= 1.

    Golden-section search along the boundary; x + y(x) is concave there.
    Elementwise over arrays.  Returns the improved (u, v), never worse than
    the input.
    """
    budget = np.maximum(budget, 0.0)
    hi = np.minimum(1.0, (budget / wu) ** (1 / s))

    def other(x):
        return np.minimum(1.0, (np.maximum(budget - wu * x**s, 0.0) / wv) ** (1 / s))

    def f(x):
        return x + other(x)

    invphi = (math.sqrt(5) - 1) / 2
    a, b = np.zeros_like(hi), hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        left = fc > fd
        a = np.where(left, a, c)
        b = np.where(left, d, b)
        probe = np.where(left, b - invphi * (b - a), a + invphi * (b - a))
        fp = f(probe)
        c, d = np.where(left, probe, d), np.where(left, c, probe)
        fc, fd = np.where(left, fp, fd), np.where(left, fc, fp)
    x = (a + b) / 2
    y = other(x)
    better = x + y > u + v
    return np.where(better, x, u), np.where(better, y, v)


def lagrange_numeric_oracle(
    s: int,
    t: int,
    grid_resolution: int = 300,
    restarts: int = 2,
    seed: int = 0,
    sweeps: int = 12,
    golden_iters: int = 40,
):
    """Numerically maximise c12 + c13 + c23 over the feasible region.

    Grid over interior part fractions d_i = i/R; at each grid point the
    inner problem

        max x + y + z  s.t.  d3^(s-1) x^s + d2^(s-1) y^s + d1^(s-1) z^s
                             <= (t-1)/2 (d1 d2 d3)^(s-1),   0 <= x, y, z <= 1

    is solved by cyclic ascent over coordinate pairs along the constraint
    boundary, from ``restarts`` random feasible starts.  Shares nothing with
    :func:`lagrange_closed_form`.

    Returns (value, (d1, d2, d3)).
    """
    _check_st(s, t)
    if grid_resolution < 100:
        raise BadParams("grid_resolution must be >= 100")
    R = grid_resolution
    ii, jj = np.meshgrid(np.arange(1, R), np.arange(1, R), indexing="ij")
    mask = ii + jj <= R - 1
    d1 = ii[mask] / R
    d2 = jj[mask] / R
    d3 = 1.0 - d1 - d2
    wx, wy, wz = d3 ** (s - 1), d2 ** (s - 1), d1 ** (s - 1)
    cap = (t - 1) / 2 * (d1 * d2 * d3) ** (s - 1)

    rng = np.random.default_rng(seed)
    best = np.full(d1.shape, -np.inf)
    for _ in range(restarts):
        u = rng.random((3, d1.size)) + 1e-3
        load = wx * u[0] ** s + wy * u[1] ** s + wz * u[2] ** s
        scale = (cap / load) ** (1 / s)
        x, y, z = (np.minimum(1.0, scale * u[k]) for k in range(3))
        for _ in range(sweeps):
            x, y = _pair_ascent(x, y, wx, wy, cap - wz * z**s, s, golden_iters)
            y, z = _pair_ascent(y, z, wy, wz, cap - wx * x**s, s, golden_iters)
            x, z = _pair_ascent(x, z, wx, wz, cap - wy * y**s, s, golden_iters)
        best = np.maximum(best, x + y + z)
    k = int(np.argmax(best))
    return float(best[k]), (float(d1[k]), float(d2[k]), float(d3[k]))


@dataclass(frozen=True)
class Thm4Coefficients:
    K2t_upper: float
    K2t_lower: float
    K33_upper: float
    K33_lower: float


def thm4_coefficients(t: int, k: int) -> Thm4Coefficients:
    """Leading coefficients for k-partite K_{2,t}-free (n^1.5) and K_{3,3}-free (n^(5/3)) graphs."""
    if k < 3 or t < 2:
        raise BadParams(f"need k >= 3 and t >= 2, got t={t}, k={k}")
    frac = 1 - 1 / k
    base = math.sqrt(t - 1) / 2
    return Thm4Coefficients(
        K2t_upper=frac**0.5 * base,
        K2t_lower=frac * base,
        K33_upper=frac ** (2 / 3) / 2,
        K33_lower=frac / 2,
    )


def classical_coefficients(s: int, t: int) -> dict[str, float]:
    """Known leading coefficients for K_{s,t} (only s=2, or s=t=3).

    Keys:
      ``ex``          unrestricted ex(n, K_{s,t}) coefficient;
      ``ex_chi2``     bipartite-host coefficient (s = 2 only);
      ``ex_k2t1_display``  the value sqrt(t'/2) with t' = t-1, i.e. the
                      K_{2,t'+1} formula as commonly displayed; for t = 2
                      this is 1/sqrt(2), whereas the sharp C4 constant is 1/2.
    """
    if s == 2 and t >= 2:
        return {
            "ex": math.sqrt(t - 1) / 2,
            "ex_chi2": math.sqrt(t - 1) / (2 * math.sqrt(2)),
            "ex_k2t1_display": math.sqrt((t - 1) / 2),
        }
    if s == 3 and t == 3:
        return {"ex": 0.5}
    raise BadParams(f"no classical coefficient recorded for K_{{{s},{t}}}")


def nikiforov_bound(m: int, n: int, s: int, t: int) -> float:
    """z(m,n,s,t) <= (s-t+1)^(1/t) n m^(1-1/t) + (t-1) m^(2-2/t) + (t-2) n, for s >= t."""
    if not s >= t >= 2 or m < 1 or n < 1:
        raise BadParams(f"need s >= t >= 2 and m, n >= 1; got m={m}, n={n}, s={s}, t={t}")
    return (s - t + 1) ** (1 / t) * n * m ** (1 - 1 / t) + (t - 1) * m ** (2 - 2 / t) + (t - 2) * n


# -- exact integer bounds --------------------------------------------------------

def minbinom(m: int, e: int, s: int) -> int:
    """min sum_v C(d_v, s) over m nonnegative integers d_v summing to e.

    Convexity of C(., s) makes the balanced sequence optimal.
    """
    if e < 0 or s < 0:
        raise ValueError("e and s must be nonnegative")
    if m == 0:
        if e:
            raise ValueError("cannot place edges on zero vertices")
        return 0
    if m < 0:
        raise ValueError("m must be nonnegative")
    q, r = divmod(e, m)
    return (m - r) * math.comb(q, s) + r * math.comb(q + 1, s)


def _minbinom_array(m, emax, s):
    e = np.arange(emax + 1, dtype=np.int64)
    if m == 0:
        return np.zeros(1, dtype=np.int64)
    q, r = np.divmod(e, m)
    return (m - r) * _comb_vec(q, s) + r * _comb_vec(q + 1, s)


def _comb_vec(x, s):
    out = np.ones_like(x)
    for i in range(s):
        out = out * (x - i)
    out //= math.factorial(s)
    return np.where(x >= s, out, 0)


def max_edges_under(m: int, budget: int, s: int, emax: int) -> int:
    """Largest e <= emax with minbinom(m, e, s) <= budget (-1 if none)."""
    if budget < 0:
        return -1
    if m == 0:
        return 0
    lo, hi = 0, emax
    if minbinom(m, hi, s) <= budget:
        return hi
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if minbinom(m, mid, s) <= budget:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class ExactBoundResult:
    value: int
    witness: tuple[int, ...]
    partition: tuple[int, ...]
    s: int
    t: int

    def to_dict(self):
        return asdict(self)

    def describe(self):
        return f"{self.value} at ({','.join(map(str, self.partition))})"


def exact_tripartite_bound(n1, n2, n3, s, t, max_cells=DEFAULT_MAX_CELLS) -> ExactBoundResult:
    """Exact maximum of e12 + e13 + e23 under the three counting constraints.

    Every (e12, e13) pair in the capped box is scanned; e23 is then the
    largest value allowed by the two constraints it enters, since both are
    monotone in e23.  Ties go to the lexicographically smallest witness.
    """
    if min(n1, n2, n3) < 0:
        raise BadParams("part sizes must be nonnegative")
    if s > t:
        s, t = t, s
    if s < 1:
        raise BadParams("s must be >= 1")
    budget = [(t - 1) * math.comb(n, s) for n in (n1, n2, n3)]
    B1, B2, B3 = budget

    E12 = min(max_edges_under(n2, B1, s, n1 * n2), max_edges_under(n1, B2, s, n1 * n2))
    E13 = min(max_edges_under(n3, B1, s, n1 * n3), max_edges_under(n1, B3, s, n1 * n3))
    E23 = min(max_edges_under(n3, B2, s, n2 * n3), max_edges_under(n2, B3, s, n2 * n3))
    cells = (E12 + 1) * (E13 + 1)
    if cells > max_cells:
        raise SearchBudgetExceeded(f"{cells} cells exceeds budget {max_cells}")

    mb1_12 = _minbinom_array(n1, E12, s)
    mb2_12 = _minbinom_array(n2, E12, s)
    mb1_13 = _minbinom_array(n1, E13, s)
    mb3_13 = _minbinom_array(n3, E13, s)
    mb2_23 = _minbinom_array(n2, E23, s)
    mb3_23 = _minbinom_array(n3, E23, s)

    # e23 allowed by part 2 (given e12) and by part 3 (given e13)
    cap_from_12 = np.searchsorted(mb3_23, B2 - mb1_12, side="right") - 1
    cap_from_13 = np.searchsorted(mb2_23, B3 - mb1_13, side="right") - 1
    e13 = np.arange(E13 + 1)

    best_value, best = -1, None
    rows = max(1, _CHUNK_CELLS // (E13 + 1))
    for start in range(0, E12 + 1, rows):
        stop = min(E12 + 1, start + rows)
        e12 = np.arange(start, stop)
        feasible = (mb2_12[start:stop, None] + mb3_13[None, :]) <= B1
        e23 = np.minimum(cap_from_12[start:stop, None], cap_from_13[None, :])
        total = np.where(feasible, e12[:, None] + e13[None, :] + e23, -1)
        k = int(np.argmax(total))
        value = int(total.flat[k])
        if value > best_value:
            r, c = divmod(k, E13 + 1)
            best_value = value
            best = (start + r, c, int(e23[r, c]))
    assert best is not None and best_value >= 0
    return ExactBoundResult(best_value, best, (n1, n2, n3), s, t)


def _tripartite_upper_estimate(n1, n2, n3, s, t):
    """Cheap upper bound (sum of per-axis caps) used to skip partitions."""
    B = [(t - 1) * math.comb(n, s) for n in (n1, n2, n3)]
    return (
        min(max_edges_under(n2, B[0], s, n1 * n2), max_edges_under(n1, B[1], s, n1 * n2))
        + min(max_edges_under(n3, B[0], s, n1 * n3), max_edges_under(n1, B[2], s, n1 * n3))
        + min(max_edges_under(n3, B[1], s, n2 * n3), max_edges_under(n2, B[2], s, n2 * n3))
    )


def _partitions3(n):
    for n1 in range(n // 3 + 1):
        for n2 in range(n1, (n - n1) // 2 + 1):
            yield n1, n2, n - n1 - n2


def _chi3_job(args):
    part, s, t, max_cells = args
    return exact_tripartite_bound(*part, s, t, max_cells=max_cells)


def exact_chi3_bound(n, s, t, max_cells=DEFAULT_MAX_CELLS, threads=None) -> ExactBoundResult:
    """Maximum of :func:`exact_tripartite_bound` over partitions n1 <= n2 <= n3.

    Empty parts are allowed (a graph with chromatic number below 3 is still
    3-partite).  Ties go to the lexicographically smallest partition.
    """
    if n < 3:
        raise BadParams("n must be >= 3")
    if s > t:
        s, t = t, s
    parts = list(_partitions3(n))
    workers = threads if threads is not None else int(os.environ.get("X3P_THREADS", "1") or 1)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_chi3_job, [(p, s, t, max_cells) for p in parts], chunksize=16))
        best = None
        for res in results:
            if best is None or res.value > best.value:
                best = res
        return best

    best = None
    for part in parts:
        if best is not None and _tripartite_upper_estimate(*part, s, t) <= best.value:
            continue
        res = exact_tripartite_bound(*part, s, t, max_cells=max_cells)
        if best is None or res.value > best.value:
            best = res
    return best


def exact_chi2_bound(n, s, t) -> ExactBoundResult:
    """Bipartite analogue: max e over n1 + n2 = n with
    minbinom(n2, e, s) <= (t-1) C(n1, s) and minbinom(n1, e, s) <= (t-1) C(n2, s)."""
    if n < 2:
        raise BadParams("n must be >= 2")
    if s > t:
        s, t = t, s
    best = None
    for n1 in range(1, n // 2 + 1):
        n2 = n - n1
        e = min(
            max_edges_under(n2, (t - 1) * math.comb(n1, s), s, n1 * n2),
            max_edges_under(n1, (t - 1) * math.comb(n2, s), s, n1 * n2),
        )
        if best is None or e > best.value:
            best = ExactBoundResult(e, (e,), (n1, n2), s, t)
    return best


def gamma_lower_bound_check(q: int, t: int) -> dict:
    """Check edges(Gamma_{q,t}) = n sqrt(nt/3 + 1) >= sqrt(t/3) n^1.5 - n for n = 3(q^2-1)/t."""
    from .constructions import build_Gamma_qt

    G = build_Gamma_qt(q, t)
    n = 3 * (q * q - 1) // t
    edges = G.edge_count
    # nt/3 + 1 == q^2, so n sqrt(nt/3 + 1) == n q exactly
    exact_form = edges == 3 * q * (q * q - 1) // t == n * q and n * t + 3 == 3 * q * q
    floor = math.sqrt(t / 3) * n**1.5 - n
    return {
        "q": q,
        "t": t,
        "n": n,
        "edges": edges,
        "floor": floor,
        "floor_formula_ok": bool(exact_form and edges >= floor),
    }
