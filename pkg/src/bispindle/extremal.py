"""Classical certifying extractors: a dipath whose vertex count bounds the
chromatic number, the long-cycle-or-coloring dichotomy for strong digraphs,
and two sequence-combinatorics witnesses used by the collection engines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .coloring import Coloring, exact_chromatic
from .digraph import Digraph, DiCycle, DiPath, is_strong
from .errors import PreconditionError


def gallai_roy_dipath(d: Digraph) -> tuple[DiPath, Coloring]:
    """A dipath with L vertices plus a proper L-coloring of the whole digraph.

    L is the longest-dipath vertex count of a maximal spanning acyclic
    subdigraph, so chi(d) <= L <= (longest dipath vertex count of d).
    Level of v = longest dipath vertex count ending at v.
    """
    if d.n == 0:
        raise PreconditionError("empty digraph")
    kept: set[tuple[int, int]] = set()
    out: dict[int, list[int]] = {v: [] for v in range(d.n)}
    for u, v in d.sorted_arcs():
        if not _reachable(out, v, u):
            kept.add((u, v))
            out[u].append(v)
    order = _topo_order(d.n, kept)
    level = {v: 1 for v in range(d.n)}
    best_pred: dict[int, Optional[int]] = {v: None for v in range(d.n)}
    for v in order:
        for w in out[v]:
            if level[v] + 1 > level[w] or (
                level[v] + 1 == level[w]
                and best_pred[w] is not None
                and v < best_pred[w]
            ):
                level[w] = level[v] + 1
                best_pred[w] = v
    top = max(range(d.n), key=lambda v: (level[v], -v))
    seq = [top]
    while best_pred[seq[-1]] is not None:
        seq.append(best_pred[seq[-1]])
    seq.reverse()
    bound = level[top]
    coloring = Coloring({v: level[v] - 1 for v in range(d.n)}, bound)
    return DiPath(seq), coloring


def _reachable(out: dict[int, list[int]], src: int, dst: int) -> bool:
    if src == dst:
        return True
    seen = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        for w in out[u]:
            if w == dst:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _topo_order(n: int, arcs: set[tuple[int, int]]) -> list[int]:
    indeg = [0] * n
    out: dict[int, list[int]] = {v: [] for v in range(n)}
    for u, v in sorted(arcs):
        indeg[v] += 1
        out[u].append(v)
    import heapq

    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order


def bondy_certifier(d: Digraph, k: int) -> Union[DiCycle, Coloring]:
    """Either a directed cycle of length >= k or a proper (k-1)-coloring.

    Requires a strong digraph and k >= 2. The coloring branch routes through
    the exact oracle; the cycle branch is a pruned DFS (desk scale), which
    must succeed whenever the coloring branch is unavailable.
    """
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if not is_strong(d):
        raise PreconditionError("input must be strong")
    cyc = find_cycle_at_least(d, k)
    if cyc is not None:
        return cyc
    chi, col = exact_chromatic(d)
    if chi > k - 1:
        raise AssertionError("strong digraph with chi >= k must contain a cycle of length >= k")
    return col.with_bound(max(k - 1, 1))


def find_cycle_at_least(d: Digraph, k: int) -> Optional[DiCycle]:
    """First directed cycle of length >= k in DFS (lexicographic) order."""
    n = d.n
    if k > n:
        return None
    for s in range(n):
        if n - s < k:
            break
        path = [s]
        on_path = {s}
        found = _long_cycle_dfs(d, s, k, path, on_path)
        if found is not None:
            return DiCycle(found)
    return None


def _long_cycle_dfs(
    d: Digraph, s: int, k: int, path: list[int], on_path: set[int]
) -> Optional[tuple[int, ...]]:
    u = path[-1]
    if len(path) >= k and d.has_arc(u, s):
        return tuple(path)
    for w in d.out_adj[u]:
        if w <= s or w in on_path:
            continue
        path.append(w)
        on_path.add(w)
        got = _long_cycle_dfs(d, s, k, path, on_path)
        if got is not None:
            return got
        path.pop()
        on_path.remove(w)
    return None


# ---------------------------------------------------------------------------
# sequence witnesses


@dataclass(frozen=True)
class SequenceWitnessMin:
    """Indices holding one common value with strictly larger entries between."""

    indices: tuple[int, ...]
    common_value: int

    def check(self, seq: Sequence[int]) -> bool:
        idx = self.indices
        if list(idx) != sorted(set(idx)):
            return False
        if any(seq[i] != self.common_value for i in idx):
            return False
        for i, j in zip(idx, idx[1:]):
            if any(seq[t] <= self.common_value for t in range(i + 1, j)):
                return False
        return True


@dataclass(frozen=True)
class SequenceWitnessMax:
    """A window whose last entry ties or beats every entry in the window."""

    start: int
    length: int

    def check(self, seq: Sequence[int]) -> bool:
        w = seq[self.start: self.start + self.length]
        return len(w) == self.length and all(w[-1] >= x for x in w)


def repeated_minimum_indices(seq: Sequence[int], l: int, k: int) -> SequenceWitnessMin:
    """For values in 1..k and length >= l**k, return l indices of one common
    value m such that every entry strictly between two of them exceeds m."""
    seq = list(seq)
    if l < 1:
        raise PreconditionError("l must be positive")
    if any(not 1 <= x <= k for x in seq):
        raise PreconditionError(f"values must lie in 1..{k}")
    if len(seq) < l**k:
        raise PreconditionError(f"need length >= {l**k}, got {len(seq)}")

    lo, hi = 0, len(seq)
    while True:
        window = seq[lo:hi]
        m = min(window)
        positions = [lo + i for i, x in enumerate(window) if x == m]
        if len(positions) >= l:
            return SequenceWitnessMin(tuple(positions[:l]), m)
        # the occurrences of m split the window into runs of larger values;
        # one of the at most l runs is long enough to recurse into
        need = _ceil_div(len(window) - (l - 1), len(positions) + 1)
        bounds = [lo - 1] + positions + [hi]
        for a, b in zip(bounds, bounds[1:]):
            if b - a - 1 >= need:
                lo, hi = a + 1, b
                break
        else:
            raise AssertionError("pigeonhole failure in repeated_minimum_indices")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def window_with_max_last(seq: Sequence[int], m: int, k: int) -> SequenceWitnessMax:
    """For values in 1..k and length > k*(m-1), return a window of m
    consecutive entries whose last entry is >= all entries in the window."""
    seq = list(seq)
    if m < 1:
        raise PreconditionError("m must be positive")
    if any(not 1 <= x <= k for x in seq):
        raise PreconditionError(f"values must lie in 1..{k}")
    if len(seq) <= k * (m - 1):
        raise PreconditionError(f"need length > {k * (m - 1)}, got {len(seq)}")

    lo = 0
    cur = k
    while cur > 1:
        last = None
        for i in range(len(seq) - 1, lo - 1, -1):
            if seq[i] == cur:
                last = i
                break
        if last is None:
            cur -= 1
            continue
        if last - lo >= m - 1:
            return SequenceWitnessMax(last - m + 1, m)
        lo = last + 1
        cur -= 1
    return SequenceWitnessMax(lo, m)
