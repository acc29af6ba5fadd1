"""Helpers shared by the two cycle-collection engines: unions of cycles,
deterministic BFS dipaths inside restricted arc sets, common subpaths of
two cycles, and the generic overlap extraction between a freshly expanded
cycle and a collection member.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from .digraph import Digraph, DiCycle, DiPath
from .spindles import BispindlePattern, SubdivisionWitness, verify_witness


def union_arc_set(cycles: Iterable[DiCycle]) -> set[tuple[int, int]]:
    arcs: set[tuple[int, int]] = set()
    for c in cycles:
        arcs.update(c.as_path_arcs())
    return arcs


def union_vertex_set(cycles: Iterable[DiCycle]) -> set[int]:
    out: set[int] = set()
    for c in cycles:
        out.update(c.vertices)
    return out


def arc_adjacency(arcs: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in arcs:
        adj.setdefault(u, []).append(v)
    return {u: sorted(vs) for u, vs in adj.items()}


def bfs_dipath(
    arcs: Iterable[tuple[int, int]],
    sources: Iterable[int],
    targets: Iterable[int],
    banned: Iterable[int] = (),
) -> Optional[DiPath]:
    """Shortest dipath from any source to any target inside the arc set.

    Multi-source BFS with sorted expansion; a source inside the target set
    yields a trivial path. Banned vertices are avoided entirely.
    """
    adj = arc_adjacency(arcs)
    ban = set(banned)
    srcs = sorted(set(sources) - ban)
    tgts = set(targets) - ban
    for s in srcs:
        if s in tgts:
            return DiPath((s,))
    prev: dict[int, int] = {s: -1 for s in srcs}
    queue = deque(srcs)
    while queue:
        u = queue.popleft()
        for w in adj.get(u, ()):
            if w in ban or w in prev:
                continue
            prev[w] = u
            if w in tgts:
                seq = [w]
                cur = u
                while cur != -1:
                    seq.append(cur)
                    cur = prev[cur]
                seq.reverse()
                return DiPath(seq)
            queue.append(w)
    return None


def common_subpath(c1: DiCycle, c2: DiCycle) -> tuple[bool, Optional[DiPath]]:
    """(ok, path): the shared vertices as a common subpath of both cycles.

    ok=False when the intersection is not a directed subpath traversed the
    same way by both cycles. An empty intersection is (True, None); a single
    shared vertex is the trivial path.
    """
    shared = set(c1.vertices) & set(c2.vertices)
    if not shared:
        return True, None
    if len(shared) == 1:
        return True, DiPath((next(iter(shared)),))
    if len(shared) >= c1.length or len(shared) >= c2.length:
        return False, None
    # contiguity on c1 (cyclic): exactly one shared vertex has an unshared
    # predecessor; the run starts there
    starts = [v for v in shared if c1.predecessor(v) not in shared]
    if len(starts) != 1:
        return False, None
    start = starts[0]
    seq = [start]
    while True:
        nxt = c1.successor(seq[-1])
        if nxt in shared:
            seq.append(nxt)
        else:
            break
    if len(seq) != len(shared):
        return False, None
    # same contiguous run, same direction, along c2
    for a, b in zip(seq, seq[1:]):
        if c2.successor(a) != b:
            return False, None
    if len(seq) < c2.length and c2.predecessor(seq[0]) in shared:
        return False, None
    return True, DiPath(seq)


def overlap_candidates(cnew: DiCycle, member: DiCycle) -> list[tuple[int, int]]:
    """Shared-vertex pairs consecutive along cnew (no shared vertex between),
    in deterministic order. Requires at least two shared vertices."""
    shared = [v for v in cnew.vertices if v in set(member.vertices)]
    if len(shared) < 2:
        return []
    pairs = []
    for i, x in enumerate(shared):
        y = shared[(i + 1) % len(shared)]
        if x != y:
            pairs.append((x, y))
    return pairs


def overlap_witness(
    d: Digraph, cnew: DiCycle, member: DiCycle, pattern: BispindlePattern
) -> Optional[SubdivisionWitness]:
    """Try to realize the pattern from two overlapping directed cycles.

    For each pair of shared vertices consecutive along the new cycle, the
    two cycles offer two parallel routes between them plus the return route;
    every assembled candidate is checked by the independent verifier.
    """
    for x, y in overlap_candidates(cnew, member):
        seg_new = cnew.segment(x, y)
        seg_mem = member.segment(x, y)
        back_mem = member.segment(y, x)
        back_new = cnew.segment(y, x)
        cands = [
            SubdivisionWitness(x, y, (seg_new, seg_mem), (back_mem,)),
            SubdivisionWitness(x, y, (seg_new, seg_mem), (back_new,)),
        ]
        for w in cands:
            if verify_witness(d, pattern, w):
                return w
    return None
