"""Exact covering-radius engines, bounds, and coset-leader machinery.

Three engines compute exact radii: ``direct`` scans every ambient vector against
every codeword, ``syndrome`` streams the ambient space once into a dense
minimum-weight-per-coset table, and ``bfs`` visits vectors in increasing weight
order until every coset is covered.  All three agree wherever they run; budgets
degrade the result to an interval report rather than ever returning a wrong
exact value.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .linalg import LinearCode, enumerate_codewords
from .ring import BudgetExceededError, RingSpec, WeightMetric

DEFAULT_CHUNK = 1 << 18


@dataclass(frozen=True)
class SearchBudget:
    """Engine budgets; exceeding one degrades to an interval, never a wrong exact."""

    direct_evals: int = 1 << 34
    visit: int = 1 << 32
    table_entries: int = 1 << 28
    bfs_visit: int = 1 << 30


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class RadiusReport:
    """Outcome of a covering-radius computation: an exact value or an interval."""

    metric: str
    method: str
    lo: int
    hi: int | None
    value: int | None = None
    witness: tuple[int, ...] | None = None
    visited: int = 0
    seconds: float = 0.0

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        out: dict = {"metric": self.metric, "method": self.method}
        if self.exact:
            out["value"] = self.value
        else:
            out["interval"] = [self.lo, self.hi]
        out["witness"] = list(self.witness) if self.witness is not None else None
        out["stats"] = {"visited": self.visited, "seconds": round(self.seconds, 6)}
        return out


@dataclass(frozen=True)
class BoundReport:
    sphere_covering_lb: int
    delsarte_ub: int | None
    mattson_ub: int | None = None
    mattson_decomposition: dict | None = None

    def to_dict(self) -> dict:
        return {
            "sphere_covering_lb": self.sphere_covering_lb,
            "delsarte_ub": self.delsarte_ub,
            "mattson_ub": self.mattson_ub,
            "mattson_decomposition": self.mattson_decomposition,
        }


def _exact_report(metric, method, value, witness, visited, seconds) -> RadiusReport:
    return RadiusReport(metric.value, method, value, value, value, witness, visited, seconds)


# ---------------------------------------------------------------------------
# ambient-space streaming

def _digits_of_range(start: int, stop: int, n: int, s: int) -> np.ndarray:
    """Vectors with lexicographic indices [start, stop) as base-2^s digit rows."""
    idx = np.arange(start, stop, dtype=np.int64)
    shifts = (s * (n - 1 - np.arange(n, dtype=np.int64)))[None, :]
    return ((idx[:, None] >> shifts) & ((1 << s) - 1)).astype(np.uint8)


def _index_of_vector(coords: Sequence[int], s: int) -> int:
    idx = 0
    for c in coords:
        idx = (idx << s) | int(c)
    return idx


class _SyndromeMap:
    """Packs the mixed-radix syndrome of a vector into a dense integer key.

    Row i of the dual's standard form is 2^v * u_i; the residue x.u_i mod
    2^(s-v) is a coset invariant with exactly one value per coset, so the packed
    keys enumerate the cosets with no gaps.
    """

    def __init__(self, code: LinearCode):
        dual = code.dual()
        self.s = code.ring.s
        self.n = code.n
        self.units = dual.std_unit_rows_unpermuted().astype(np.int64)
        levels = np.array(dual.std.levels, dtype=np.int64)
        bits = self.s - levels
        self.masks = ((1 << bits) - 1).astype(np.int64)
        self.shifts = np.concatenate([[0], np.cumsum(bits)[:-1]]).astype(np.int64)
        self.total_bits = int(bits.sum())
        if self.total_bits > 62:
            raise BudgetExceededError(f"coset key needs {self.total_bits} bits; table is infeasible")
        self.n_cosets = 1 << self.total_bits
        self._units_f32 = self.units.astype(np.float32)

    def keys_of(self, digits: np.ndarray) -> np.ndarray:
        if not len(self.units):
            return np.zeros(len(digits), dtype=np.int64)
        syn = (digits.astype(np.float32) @ self._units_f32.T).astype(np.int64)
        syn &= self.masks[None, :]
        return (syn << self.shifts[None, :]).sum(axis=1)

    def key_of(self, coords: Sequence[int]) -> int:
        return int(self.keys_of(np.asarray(coords, dtype=np.uint8)[None, :])[0])


def _weight_table(ring: RingSpec, metric: WeightMetric) -> np.ndarray:
    return metric.element_weights(ring).astype(np.int32)


def _min_weight_dtype(max_weight: int):
    return np.uint8 if max_weight < 0xFF else (np.uint16 if max_weight < 0xFFFF else np.uint32)


def _scan_coset_minima(args) -> np.ndarray:
    """Stream an index range and fold per-coset minimum weights into a dense table."""
    (units, masks, shifts, n, s, wtable, n_cosets, start, stop, chunk, dtype_name) = args
    dtype = np.dtype(dtype_name)
    sentinel = np.iinfo(dtype).max
    table = np.full(n_cosets, sentinel, dtype=dtype)
    units_f32 = units.astype(np.float32)
    for lo in range(start, stop, chunk):
        hi = min(lo + chunk, stop)
        digits = _digits_of_range(lo, hi, n, s)
        weights = wtable[digits].sum(axis=1, dtype=np.int32).astype(dtype)
        if len(units):
            syn = (digits.astype(np.float32) @ units_f32.T).astype(np.int64)
            syn &= masks[None, :]
            keys = (syn << shifts[None, :]).sum(axis=1)
        else:
            keys = np.zeros(hi - lo, dtype=np.int64)
        np.minimum.at(table, keys, weights)
    return table


def coset_leader_table(
    code: LinearCode,
    metric: WeightMetric,
    *,
    budget: SearchBudget = DEFAULT_BUDGET,
    threads: int = 1,
    with_leaders: bool = False,
    chunk: int = DEFAULT_CHUNK,
) -> "CosetLeaderTable":
    """Complete minimum-coset-weight table, built by one pass over the ambient space."""
    metric.check_ring(code.ring)
    s, n = code.ring.s, code.n
    total = 1 << (s * n)
    smap = _SyndromeMap(code)
    if smap.n_cosets > budget.table_entries:
        raise BudgetExceededError(
            f"{smap.n_cosets} cosets exceed the table budget {budget.table_entries}"
        )
    if total > budget.visit:
        raise BudgetExceededError(f"visiting {total} vectors exceeds the budget {budget.visit}")
    wtable = _weight_table(code.ring, metric)
    dtype = _min_weight_dtype(int(wtable.max()) * n + 1)
    args = [
        (smap.units, smap.masks, smap.shifts, n, s, wtable, smap.n_cosets, lo, hi, chunk, dtype.__name__)
        for lo, hi in _split_range(total, threads)
    ]
    if threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(_scan_coset_minima, args))
        weights = partials[0]
        for part in partials[1:]:
            np.minimum(weights, part, out=weights)
    else:
        weights = _scan_coset_minima(args[0])
    sentinel = np.iinfo(dtype).max
    if np.any(weights == sentinel):
        raise AssertionError("incomplete coset table: some coset was never visited")
    leaders = None
    if with_leaders:
        leaders = _find_leaders(smap, wtable, weights, chunk)
    return CosetLeaderTable(code, metric, smap, weights, leaders, True, total)


def _find_leaders(smap: _SyndromeMap, wtable, weights, chunk) -> np.ndarray:
    """Second lexicographic pass recording, per coset, the first vector attaining
    the coset minimum (hence the lexicographically least minimum-weight leader)."""
    n, s = smap.n, smap.s
    total = 1 << (s * n)
    leaders = np.zeros((smap.n_cosets, n), dtype=np.uint8)
    pending = np.ones(smap.n_cosets, dtype=bool)
    remaining = smap.n_cosets
    for lo in range(0, total, chunk):
        digits = _digits_of_range(lo, min(lo + chunk, total), n, s)
        keys = smap.keys_of(digits)
        w = wtable[digits].sum(axis=1, dtype=np.int32)
        hit = pending[keys] & (w == weights[keys])
        if np.any(hit):
            # keep only the first hit per key inside this chunk
            idx = np.flatnonzero(hit)
            first = idx[np.unique(keys[idx], return_index=True)[1]]
            leaders[keys[first]] = digits[first]
            pending[keys[first]] = False
            remaining -= len(first)
            if remaining == 0:
                break
    return leaders


@dataclass
class CosetLeaderTable:
    """Minimum coset weights keyed by packed syndrome; complete by construction."""

    code: LinearCode
    metric: WeightMetric
    syndromes: _SyndromeMap
    weights: np.ndarray
    leaders: np.ndarray | None
    complete: bool
    visited: int

    def weight_of_coset(self, coords: Sequence[int]) -> int:
        return int(self.weights[self.syndromes.key_of(coords)])

    def distribution(self) -> dict[int, int]:
        counts = np.bincount(self.weights)
        return {int(w): int(c) for w, c in enumerate(counts) if c}


def coset_weight_distribution(
    code: LinearCode,
    metric: WeightMetric,
    *,
    budget: SearchBudget = DEFAULT_BUDGET,
    threads: int = 1,
) -> dict[int, int]:
    """Histogram coset-leader weight -> number of cosets; its largest key is the
    covering radius."""
    return coset_leader_table(code, metric, budget=budget, threads=threads).distribution()


# ---------------------------------------------------------------------------
# direct engine

def _scan_min_distances(args):
    (words, wtable, n, s, start, stop, chunk) = args
    best = -1
    best_idx = -1
    for lo in range(start, stop, chunk):
        digits = _digits_of_range(lo, min(lo + chunk, stop), n, s)
        diffs = (digits[:, None, :] - words[None, :, :]) & ((1 << s) - 1)
        dmin = wtable[diffs].sum(axis=2, dtype=np.int32).min(axis=1)
        local = int(dmin.max())
        if local > best:
            best = local
            best_idx = lo + int(np.argmax(dmin == local))
    return best, best_idx


def covering_radius_of_set(
    words: np.ndarray,
    ring: RingSpec,
    metric: WeightMetric,
    *,
    budget: SearchBudget = DEFAULT_BUDGET,
    threads: int = 1,
    chunk: int = 1 << 12,
) -> RadiusReport:
    """Exact covering radius of an arbitrary (possibly non-linear) set of words."""
    metric.check_ring(ring)
    words = np.asarray(words, dtype=np.uint8)
    if words.ndim != 2 or not len(words):
        raise ValueError("need a non-empty 2d array of words")
    n = words.shape[1]
    s = ring.s
    total = 1 << (s * n)
    if total * len(words) > budget.direct_evals:
        raise BudgetExceededError(
            f"{total} x {len(words)} distance evaluations exceed the budget "
            f"{budget.direct_evals}; the syndrome engine may still fit"
        )
    wtable = _weight_table(ring, metric)
    t0 = time.perf_counter()
    ranges = _split_range(total, threads)
    args = [(words, wtable, n, s, lo, hi, chunk) for lo, hi in ranges]
    if threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_min_distances, args))
    else:
        results = [_scan_min_distances(a) for a in args]
    best, best_idx = -1, -1
    for val, idx in results:
        if val > best or (val == best and idx < best_idx):
            best, best_idx = val, idx
    witness = tuple(int(x) for x in _digits_of_range(best_idx, best_idx + 1, n, s)[0])
    return _exact_report(metric, "direct", best, witness, total, time.perf_counter() - t0)


def covering_radius_direct(
    code: LinearCode,
    metric: WeightMetric,
    *,
    budget: SearchBudget = DEFAULT_BUDGET,
    threads: int = 1,
) -> RadiusReport:
    """Exact radius by scanning all ambient vectors against all codewords."""
    words = enumerate_codewords(code).words
    return covering_radius_of_set(words, code.ring, metric, budget=budget, threads=threads)


# ---------------------------------------------------------------------------
# syndrome engine

def covering_radius_syndrome(
    code: LinearCode,
    metric: WeightMetric,
    *,
    budget: SearchBudget = DEFAULT_BUDGET,
    threads: int = 1,
    witness: bool = True,
    chunk: int = DEFAULT_CHUNK,
) -> RadiusReport:
    """Exact radius as the largest minimum weight over the complete coset table."""
    t0 = time.perf_counter()
    table = coset_leader_table(code, metric, budget=budget, threads=threads, chunk=chunk)
    radius = int(table.weights.max())
    wit = None
    if witness:
        wit = _first_deep_hole(table, radius, chunk, threads)
    return _exact_report(metric, "syndrome_table", radius, wit, table.visited, time.perf_counter() - t0)


def _scan_first_hit(args):
    """First index in [start, stop) whose coset minimum equals the radius, else None."""
    (units, masks, shifts, n, s, weights, radius, start, stop, chunk) = args
    units_f32 = units.astype(np.float32)
    for lo in range(start, stop, chunk):
        digits = _digits_of_range(lo, min(lo + chunk, stop), n, s)
        if len(units):
            syn = (digits.astype(np.float32) @ units_f32.T).astype(np.int64)
            syn &= masks[None, :]
            keys = (syn << shifts[None, :]).sum(axis=1)
        else:
            keys = np.zeros(len(digits), dtype=np.int64)
        hit = weights[keys] == radius
        if np.any(hit):
            return lo + int(np.argmax(hit))
    return None


def _first_deep_hole(table: "CosetLeaderTable", radius: int, chunk: int, threads: int = 1) -> tuple[int, ...]:
    """Lexicographically first vector whose coset minimum equals the radius.

    Workers scan disjoint index ranges and stop at their first local hit; the
    smallest hit index wins, so the result does not depend on the worker count.
    """
    smap = table.syndromes
    total = 1 << (smap.s * smap.n)
    weights = table.weights
    args = [
        (smap.units, smap.masks, smap.shifts, smap.n, smap.s, weights, radius, lo, hi, chunk)
        for lo, hi in _split_range(total, threads)
    ]
    if threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            hits = [h for h in pool.map(_scan_first_hit, args) if h is not None]
        first = min(hits, default=None)
    else:
        first = _scan_first_hit(args[0])
    if first is None:
        raise AssertionError("no deep hole found at the computed radius")
    return tuple(int(x) for x in _digits_of_range(first, first + 1, smap.n, smap.s)[0])


# ---------------------------------------------------------------------------
# weight-ordered (BFS) engine

def _iter_exact_weight(n: int, elem_w: Sequence[int], target: int) -> Iterator[tuple[int, ...]]:
    """All vectors whose per-coordinate weights sum to target, in lex order."""
    m = len(elem_w)
    maxw = max(elem_w)
    cur = [0] * n

    def rec(pos: int, rem: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            if rem == 0:
                yield tuple(cur)
            return
        room = maxw * (n - pos - 1)
        for v in range(m):
            left = rem - elem_w[v]
            if 0 <= left <= room:
                cur[pos] = v
                yield from rec(pos + 1, left)
        cur[pos] = 0

    if n == 0:
        if target == 0:
            yield ()
        return
    yield from rec(0, target)


def covering_radius_bfs(
    code: LinearCode,
    metric: WeightMetric,
    r_cap: int,
    *,
    budget: SearchBudget = DEFAULT_BUDGET,
    batch: int = 4096,
) -> RadiusReport:
    """Visit vectors in increasing weight order, marking cosets as they first appear.

    If every coset is reached by weight r <= r_cap the radius is exactly r;
    otherwise the result is the open interval [r_cap + 1, infinity).
    """
    metric.check_ring(code.ring)
    t0 = time.perf_counter()
    smap = _SyndromeMap(code)
    if smap.n_cosets > budget.table_entries:
        raise BudgetExceededError(f"{smap.n_cosets} cosets exceed the table budget {budget.table_entries}")
    elem_w = [int(x) for x in metric.element_weights(code.ring)]
    covered = np.zeros(smap.n_cosets, dtype=bool)
    remaining = smap.n_cosets
    visited = 0
    for w in range(r_cap + 1):
        buf: list[tuple[int, ...]] = []
        for vec in _iter_exact_weight(code.n, elem_w, w):
            buf.append(vec)
            if len(buf) == batch:
                hit, remaining, visited = _mark_batch(smap, covered, buf, remaining, visited)
                if hit is not None:
                    return _exact_report(metric, "weight_bfs", w, hit, visited, time.perf_counter() - t0)
                buf.clear()
                if visited > budget.bfs_visit:
                    return RadiusReport(metric.value, "weight_bfs", w, None, None, None, visited, time.perf_counter() - t0)
        if buf:
            hit, remaining, visited = _mark_batch(smap, covered, buf, remaining, visited)
            if hit is not None:
                return _exact_report(metric, "weight_bfs", w, hit, visited, time.perf_counter() - t0)
    return RadiusReport(
        metric.value, "weight_bfs", r_cap + 1, None, None, None, visited, time.perf_counter() - t0
    )


def _mark_batch(smap, covered, buf, remaining, visited):
    arr = np.array(buf, dtype=np.uint8)
    keys = smap.keys_of(arr)
    visited += len(buf)
    for i, key in enumerate(keys):
        if not covered[key]:
            covered[key] = True
            remaining -= 1
            if remaining == 0:
                return tuple(int(x) for x in arr[i]), remaining, visited
    return None, remaining, visited


# ---------------------------------------------------------------------------
# bounds

def sphere_covering_lower_bound(n: int, code_size: int, s: int) -> int:
    """Smallest r whose binary-length ball sizes, times the code size, cover the
    ambient space: sum_{i<=r} C(2^(s-1) n, i) >= 2^(2^(s-1) n) / |C|.  Exact
    integer arithmetic throughout."""
    if n < 1 or code_size < 1:
        raise ValueError("need n >= 1 and a positive code size")
    big_n = (1 << (s - 1)) * n
    need = 1 << big_n
    acc = 0
    for r in range(big_n + 1):
        acc += math.comb(big_n, r)
        if acc * code_size >= need:
            return r
    return big_n


def delsarte_bound(code: LinearCode, *, budget_k: int = 26) -> int:
    """Number of distinct nonzero homogeneous weights in the dual code.

    The dual is streamed through its 2-basis in chunks, so only the set of
    distinct weights is ever held."""
    from .linalg import two_basis

    dual = code.dual()
    k = dual.two_dimension
    if k > budget_k:
        raise BudgetExceededError(f"dual 2-dimension {k} exceeds enumeration budget {budget_k}")
    basis = two_basis(dual)
    table = WeightMetric.HOMOGENEOUS.element_weights(code.ring).astype(np.int64)
    m = code.ring.modulus
    seen: set[int] = set()
    chunk = 1 << 16
    for start in range(0, 1 << k, chunk):
        idx = np.arange(start, min(start + chunk, 1 << k), dtype=np.int64)
        bits = (idx[:, None] >> np.arange(k)) & 1
        words = (bits @ basis) % m
        seen.update(int(w) for w in np.unique(table[words].sum(axis=1)))
    seen.discard(0)
    return len(seen)


def mattson_stack(c0: LinearCode, c1: LinearCode, connect: np.ndarray | Sequence[Sequence[int]]) -> LinearCode:
    """Code generated by [[0, G1], [G0, A]]; its radius is at most r(C0) + r(C1)
    in every translation-invariant metric."""
    if c0.ring != c1.ring:
        raise ValueError("component codes must share a ring")
    a = np.array(connect, dtype=np.int64)
    if a.size == 0:
        a = a.reshape(len(c0.rows), c1.n if a.ndim < 2 else a.shape[1])
    if a.shape != (len(c0.rows), c1.n):
        raise ValueError(f"connecting matrix must be {len(c0.rows)} x {c1.n}, got {a.shape}")
    top = np.hstack([np.zeros((len(c1.rows), c0.n), dtype=np.int64), c1.rows])
    bottom = np.hstack([c0.rows, a % c0.ring.modulus])
    return LinearCode(c0.ring, c0.n + c1.n, np.vstack([top, bottom]))


def bound_report(
    code: LinearCode,
    *,
    metric: WeightMetric = WeightMetric.HOMOGENEOUS,
    budget: SearchBudget = DEFAULT_BUDGET,
    threads: int = 1,
) -> BoundReport:
    """Sphere-covering and Delsarte bounds, plus a Mattson bound when the
    generator matrix visibly splits as [[0, G1], [G0, A]]."""
    lb = sphere_covering_lower_bound(code.n, code.size, code.ring.s)
    try:
        ub = delsarte_bound(code)
    except BudgetExceededError:
        ub = None
    mattson_ub = None
    decomposition = None
    split = _find_stack_split(code)
    if split is not None:
        j, c0, c1 = split
        try:
            r0 = covering_radius(c0, metric, budget=budget, threads=threads).value
            r1 = covering_radius(c1, metric, budget=budget, threads=threads).value
            if r0 is not None and r1 is not None:
                mattson_ub = r0 + r1
                decomposition = {"split_column": j, "left_radius": r0, "right_radius": r1}
        except BudgetExceededError:
            pass
    return BoundReport(lb, ub, mattson_ub, decomposition)


def _find_stack_split(code: LinearCode):
    rows = code.rows
    if len(rows) < 2:
        return None
    for j in range(1, code.n):
        zero_left = ~np.any(rows[:, :j], axis=1)
        if zero_left.any() and (~zero_left).any():
            c1 = LinearCode(code.ring, code.n - j, rows[zero_left][:, j:])
            c0 = LinearCode(code.ring, j, rows[~zero_left][:, :j])
            return j, c0, c1
    return None


# ---------------------------------------------------------------------------
# dispatcher

def covering_radius(
    code: LinearCode,
    metric: WeightMetric,
    method: str = "auto",
    *,
    r_cap: int | None = None,
    budget: SearchBudget = DEFAULT_BUDGET,
    threads: int = 1,
    witness: bool = True,
) -> RadiusReport:
    """Compute the covering radius by the requested engine, or pick one that fits.

    ``auto`` tries the syndrome table, then the direct scan, then the weight-
    ordered search, and finally falls back to a bounds-only interval report.
    """
    metric.check_ring(code.ring)
    s, n = code.ring.s, code.n
    total = 1 << (s * n)
    max_weight = int(metric.element_weights(code.ring).max()) * n
    if method == "direct":
        return covering_radius_direct(code, metric, budget=budget, threads=threads)
    if method == "syndrome":
        return covering_radius_syndrome(code, metric, budget=budget, threads=threads, witness=witness)
    if method == "bfs":
        cap = max_weight if r_cap is None else r_cap
        return covering_radius_bfs(code, metric, cap, budget=budget)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")

    n_cosets = 1 << (s * n - code.two_dimension)
    ambient_small = total <= (1 << 24)
    cap = max_weight if r_cap is None else r_cap
    # A large ambient space with few cosets means a big code with a small
    # radius, where the weight-ordered search terminates after a shallow scan.
    if not ambient_small and n_cosets <= min(budget.table_entries, 1 << 20):
        report = covering_radius_bfs(code, metric, cap, budget=budget)
        if report.exact:
            return report
    if total <= budget.visit and n_cosets <= budget.table_entries:
        return covering_radius_syndrome(code, metric, budget=budget, threads=threads, witness=witness)
    if total * code.size <= budget.direct_evals:
        return covering_radius_direct(code, metric, budget=budget, threads=threads)
    if n_cosets <= budget.table_entries:
        report = covering_radius_bfs(code, metric, cap, budget=budget)
        if report.exact:
            return report
    lb = sphere_covering_lower_bound(n, code.size, s)
    try:
        ub = delsarte_bound(code, budget_k=20)
    except BudgetExceededError:
        ub = None
    return RadiusReport(metric.value, "bound_only", lb, ub, None, None, 0, 0.0)


def _split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = (total + parts - 1) // parts
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]
