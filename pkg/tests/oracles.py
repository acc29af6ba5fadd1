"""Independent brute-force oracles, deliberately sharing no code with the
library's own algorithms beyond the Digraph container."""

from __future__ import annotations

import itertools

from bispindle import Digraph


def reachable(d: Digraph, src: int) -> set[int]:
    seen = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        for v in range(d.n):
            if d.has_arc(u, v) and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def is_strong_brute(d: Digraph) -> bool:
    return all(len(reachable(d, v)) == d.n for v in range(d.n))


def mutually_reachable(d: Digraph, a: int, b: int) -> bool:
    return b in reachable(d, a) and a in reachable(d, b)


def brute_chromatic(d: Digraph) -> int:
    und = {frozenset((u, v)) for u, v in d.arcs}
    if not und:
        return 1 if d.n else 0
    for k in range(1, d.n + 1):
        for assignment in itertools.product(range(k), repeat=d.n):
            if all(assignment[u] != assignment[v] for u, v in d.arcs):
                return k
    raise AssertionError


def all_simple_dipaths(d: Digraph, src: int, dst: int, banned=frozenset()):
    """Every simple dipath src -> dst avoiding banned internal vertices."""
    out = []

    def rec(path, seen):
        u = path[-1]
        if u == dst:
            out.append(tuple(path))
            return
        for v in range(d.n):
            if d.has_arc(u, v) and v not in seen and v not in banned:
                path.append(v)
                seen.add(v)
                rec(path, seen)
                path.pop()
                seen.remove(v)

    rec([src], {src})
    return out


def brute_has_b211(d: Digraph) -> bool:
    """Exhaustive search for two internally disjoint forward paths of
    lengths >= 2 and >= 1 plus one backward path, all internally disjoint."""
    for x in range(d.n):
        for y in range(d.n):
            if x == y:
                continue
            fwd = all_simple_dipaths(d, x, y)
            bwd = all_simple_dipaths(d, y, x)
            if not bwd or len(fwd) < 2:
                continue
            for p1 in fwd:
                if len(p1) - 1 < 2:
                    continue
                i1 = set(p1[1:-1])
                for p2 in fwd:
                    if p2 == p1 and len(p1) == 2:
                        continue
                    if p2 is p1:
                        continue
                    i2 = set(p2[1:-1])
                    if i1 & i2:
                        continue
                    for p3 in bwd:
                        i3 = set(p3[1:-1])
                        if (i1 | i2) & i3:
                            continue
                        return True
    return False


def all_directed_cycles(d: Digraph):
    """Every directed cycle once, as a canonical tuple."""
    out = set()
    for s in range(d.n):
        def rec(path, seen):
            u = path[-1]
            if d.has_arc(u, s) and len(path) >= 2:
                out.add(tuple(path))
            for v in range(s + 1, d.n):
                if d.has_arc(u, v) and v not in seen:
                    path.append(v)
                    seen.add(v)
                    rec(path, seen)
                    path.pop()
                    seen.remove(v)

        rec([s], {s})
    return out
