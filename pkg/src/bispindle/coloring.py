"""Proper colorings of underlying graphs.

A Coloring maps vertices to dense color indices starting at 0 and carries
an explicit declared bound, so "uses at most B colors" is a field check.
The exact oracle here is the single source of truth for chromatic numbers
at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .digraph import Digraph, DiPath, contract, underlying_connected
from .errors import LimitExceeded, PreconditionError


@dataclass(frozen=True)
class Coloring:
    colors: dict[int, int]
    bound: int

    def __init__(self, colors: dict[int, int], bound: int):
        colors = {int(v): int(c) for v, c in colors.items()}
        if bound < 1 and colors:
            raise PreconditionError("bound must be positive")
        for v, c in colors.items():
            if c < 0 or c >= bound:
                raise PreconditionError(f"color {c} of vertex {v} outside [0,{bound})")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "bound", bound)

    def __call__(self, v: int) -> int:
        return self.colors[v]

    def vertices(self) -> set[int]:
        return set(self.colors)

    def used(self) -> int:
        return len(set(self.colors.values()))

    def with_bound(self, bound: int) -> "Coloring":
        return Coloring(self.colors, bound)

    def restrict(self, vertices: Iterable[int]) -> "Coloring":
        return Coloring({v: self.colors[v] for v in vertices}, self.bound)

    def swap(self, a: int, b: int) -> "Coloring":
        """Transpose two color classes."""
        if a == b:
            return self
        sw = {a: b, b: a}
        return Coloring({v: sw.get(c, c) for v, c in self.colors.items()}, self.bound)

    def to_json(self, n: int) -> dict:
        if set(self.colors) != set(range(n)):
            raise PreconditionError("only full colorings serialize to the list form")
        return {"bound": self.bound, "colors": [self.colors[v] for v in range(n)]}

    @staticmethod
    def from_json(obj: dict) -> "Coloring":
        cols = obj["colors"]
        return Coloring({v: c for v, c in enumerate(cols)}, int(obj["bound"]))


def is_proper(d: Digraph, col: Coloring, vertices: Optional[Iterable[int]] = None) -> bool:
    """True iff every vertex in scope is colored and adjacent ones differ."""
    verts = set(vertices) if vertices is not None else set(range(d.n))
    if not verts <= col.vertices():
        return False
    for u, v in d.arcs:
        if u in verts and v in verts and col.colors[u] == col.colors[v]:
            return False
    return True


def _und_adj_on(d: Digraph, verts: Sequence[int]) -> dict[int, list[int]]:
    vset = set(verts)
    return {v: [w for w in d.und_adj[v] if w in vset] for v in verts}


# ---------------------------------------------------------------------------
# greedy / degeneracy / Brooks


def degeneracy_coloring(d: Digraph, vertices: Optional[Iterable[int]] = None) -> Coloring:
    """Greedy coloring along a smallest-last order; bound = degeneracy + 1."""
    verts = sorted(set(vertices)) if vertices is not None else list(range(d.n))
    if not verts:
        return Coloring({}, 1)
    adj = _und_adj_on(d, verts)
    deg = {v: len(adj[v]) for v in verts}
    alive = set(verts)
    order = []
    degeneracy = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        degeneracy = max(degeneracy, deg[v])
        order.append(v)
        alive.remove(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
    colors: dict[int, int] = {}
    for v in reversed(order):
        used = {colors[w] for w in adj[v] if w in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return Coloring(colors, degeneracy + 1)


def _greedy_along(d: Digraph, verts: Sequence[int], order: Sequence[int],
                  preset: Optional[dict[int, int]] = None) -> dict[int, int]:
    adj = _und_adj_on(d, verts)
    colors = dict(preset) if preset else {}
    for v in order:
        if v in colors:
            continue
        used = {colors[w] for w in adj[v] if w in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


def _reverse_bfs_order(adj: dict[int, list[int]], root: int, verts: set[int]) -> list[int]:
    """Order ending at root in which every earlier vertex has a later neighbor."""
    from collections import deque

    seen = {root}
    out = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w in verts and w not in seen:
                seen.add(w)
                out.append(w)
                queue.append(w)
    if len(out) != len(verts):
        raise PreconditionError("underlying graph must be connected")
    return list(reversed(out))


def brooks_coloring(d: Digraph, vertices: Optional[Iterable[int]] = None) -> Coloring:
    """Constructive Brooks coloring of a connected underlying graph.

    Uses at most Delta colors unless the graph is complete or an odd cycle
    (then Delta + 1). The returned bound is the number of colors used.
    """
    verts = sorted(set(vertices)) if vertices is not None else list(range(d.n))
    if not verts:
        raise PreconditionError("empty vertex set")
    if not underlying_connected(d, verts):
        raise PreconditionError("underlying graph must be connected")
    adj = _und_adj_on(d, verts)
    n = len(verts)
    if n == 1:
        return Coloring({verts[0]: 0}, 1)
    delta = max(len(adj[v]) for v in verts)

    complete = all(len(adj[v]) == n - 1 for v in verts)
    if complete:
        colors = {v: i for i, v in enumerate(verts)}
        return Coloring(colors, n)
    if delta == 2 and all(len(adj[v]) == 2 for v in verts):
        # a cycle: alternate, with a third color on odd length
        order = [verts[0]]
        prev = None
        while len(order) < n:
            nxts = [w for w in adj[order[-1]] if w != prev]
            prev = order[-1]
            order.append(nxts[0])
        colors = {v: i % 2 for i, v in enumerate(order)}
        if n % 2 == 1:
            colors[order[-1]] = 2
        return Coloring(colors, 3 if n % 2 == 1 else 2)

    vset = set(verts)
    low = [v for v in verts if len(adj[v]) < delta]
    if low:
        root = low[0]
        order = _reverse_bfs_order(adj, root, vset)
        colors = _greedy_along(d, verts, order)
    else:
        colors = _brooks_regular(d, verts, adj, delta)
    bound = max(colors.values()) + 1
    if bound > delta:
        raise AssertionError("Brooks bound exceeded on a non-exceptional graph")
    return Coloring(colors, bound)


def _brooks_regular(d: Digraph, verts: list[int], adj: dict[int, list[int]],
                    delta: int) -> dict[int, int]:
    vset = set(verts)
    cut = _find_cut_vertex(adj, verts)
    if cut is not None:
        # split at the cut vertex; each side sees it with degree < Delta
        from .digraph import underlying_components

        pieces = underlying_components(d, [v for v in verts if v != cut])
        colors: dict[int, int] = {}
        for piece in pieces:
            pverts = sorted(set(piece) | {cut})
            padj = {v: [w for w in adj[v] if w in set(pverts)] for v in pverts}
            order = _reverse_bfs_order(padj, cut, set(pverts))
            sub = _greedy_along(d, pverts, order)
            # make the cut vertex colors agree across pieces
            if colors.get(cut, sub[cut]) != sub[cut]:
                a, b = sub[cut], colors[cut]
                sub = {v: (b if c == a else a if c == b else c) for v, c in sub.items()}
            colors.update(sub)
        return colors
    # 2-connected Delta-regular, not complete, Delta >= 3:
    # find v with non-adjacent neighbors a, b whose removal keeps it connected
    for v in verts:
        nb = adj[v]
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                a, b = nb[i], nb[j]
                if a in adj[b]:
                    continue
                rest = vset - {a, b}
                radj = {x: [w for w in adj[x] if w in rest] for x in rest}
                try:
                    order = _reverse_bfs_order(radj, v, rest)
                except PreconditionError:
                    continue
                colors = _greedy_along(d, verts, [a, b] + order, preset={a: 0, b: 0})
                return colors
    raise AssertionError("no Brooks splitting pair found on a regular non-complete graph")


def _find_cut_vertex(adj: dict[int, list[int]], verts: list[int]) -> Optional[int]:
    if len(verts) <= 2:
        return None
    vset = set(verts)
    for v in verts:
        rest = vset - {v}
        if not rest:
            continue
        start = next(iter(sorted(rest)))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in rest and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(rest):
            return v
    return None


# ---------------------------------------------------------------------------
# exact oracle


def exact_chromatic(d: Digraph, limit: int = 40) -> tuple[int, Coloring]:
    """Exact chromatic number of the underlying graph with an optimal coloring.

    Branch and bound: greedy clique lower bound, DSATUR upper bound, then
    DSATUR-ordered backtracking per candidate color count. Deterministic.
    """
    if d.n > limit:
        raise LimitExceeded(f"exact_chromatic limited to n <= {limit}, got {d.n}")
    chi, colors = _exact_on(d, list(range(d.n)))
    return chi, Coloring(colors, max(chi, 1))


def chromatic_number_of_subset(d: Digraph, vertices: Iterable[int], limit: int = 40) -> int:
    verts = sorted(set(vertices))
    if len(verts) > limit:
        raise LimitExceeded(f"exact chromatic limited to {limit} vertices")
    chi, _ = _exact_on(d, verts)
    return chi


def _exact_on(d: Digraph, verts: list[int]) -> tuple[int, dict[int, int]]:
    if not verts:
        return 0, {}
    adj = _und_adj_on(d, verts)
    # DSATUR upper bound
    ub_colors = _dsatur(adj, verts)
    ub = max(ub_colors.values()) + 1
    lb = _greedy_clique(adj, verts)
    if lb == ub:
        return ub, ub_colors
    for k in range(lb, ub):
        got = _k_colorable(adj, verts, k)
        if got is not None:
            return k, got
    return ub, ub_colors


def _dsatur(adj: dict[int, list[int]], verts: list[int]) -> dict[int, int]:
    colors: dict[int, int] = {}
    satur: dict[int, set[int]] = {v: set() for v in verts}
    uncolored = set(verts)
    while uncolored:
        v = max(uncolored, key=lambda x: (len(satur[x]), len(adj[x]), -x))
        c = 0
        while c in satur[v]:
            c += 1
        colors[v] = c
        uncolored.remove(v)
        for w in adj[v]:
            if w in uncolored:
                satur[w].add(c)
    return colors


def _greedy_clique(adj: dict[int, list[int]], verts: list[int]) -> int:
    best = 1 if verts else 0
    order = sorted(verts, key=lambda v: (-len(adj[v]), v))
    for seed in order[: min(len(order), 8)]:
        clique = [seed]
        for w in sorted(adj[seed], key=lambda v: (-len(adj[v]), v)):
            if all(w in adj[u] for u in clique):
                clique.append(w)
        best = max(best, len(clique))
    return best


def _k_colorable(adj: dict[int, list[int]], verts: list[int], k: int) -> Optional[dict[int, int]]:
    colors: dict[int, int] = {}
    satur: dict[int, set[int]] = {v: set() for v in verts}

    def pick() -> Optional[int]:
        un = [v for v in verts if v not in colors]
        if not un:
            return None
        return max(un, key=lambda x: (len(satur[x]), len(adj[x]), -x))

    def rec(maxused: int) -> bool:
        v = pick()
        if v is None:
            return True
        # color symmetry: allow at most one brand-new color
        limit = min(k, maxused + 1)
        for c in range(limit):
            if c in satur[v]:
                continue
            colors[v] = c
            touched = []
            for w in adj[v]:
                if w not in colors and c not in satur[w]:
                    satur[w].add(c)
                    touched.append(w)
            if rec(max(maxused, c + 1)):
                return True
            del colors[v]
            for w in touched:
                satur[w].remove(c)
        return False

    return dict(colors) if rec(0) else None


# ---------------------------------------------------------------------------
# composition


def product_coloring(c1: Coloring, c2: Coloring) -> Coloring:
    """Pair coloring (c1(v), c2(v)) reindexed; proper on any arc union of
    digraphs each coloring is proper on."""
    if c1.vertices() != c2.vertices():
        raise PreconditionError("colorings must cover the same vertex set")
    b2 = c2.bound
    colors = {v: c1.colors[v] * b2 + c2.colors[v] for v in c1.colors}
    return Coloring(colors, c1.bound * b2)


def lift_contraction_coloring(
    d: Digraph,
    parts: Sequence[Iterable[int]],
    part_colorings: Sequence[Coloring],
    quotient_coloring: Coloring,
) -> Coloring:
    """Combine per-part colorings with a coloring of the contraction.

    The contraction is computed internally with the canonical numbering of
    ``contract``. Vertices outside every part take part-color 0. Input
    colorings are verified; the result has bound
    quotient.bound * max(part bounds, 1).
    """
    partsets = [sorted(set(p)) for p in parts]
    if len(partsets) != len(part_colorings):
        raise PreconditionError("one coloring per part required")
    q, qmap = contract(d, partsets)
    if quotient_coloring.vertices() != set(range(q.n)):
        raise PreconditionError("quotient coloring must cover the contraction")
    if not is_proper(q, quotient_coloring):
        raise PreconditionError("quotient coloring is not proper on the contraction")
    for p, col in zip(partsets, part_colorings):
        if not set(p) <= col.vertices():
            raise PreconditionError("part coloring does not cover its part")
        if not is_proper(d, col, p):
            raise PreconditionError("part coloring is not proper on its induced subdigraph")
    maxpart = max((c.bound for c in part_colorings), default=1)
    colors: dict[int, int] = {}
    for i, (p, col) in enumerate(zip(partsets, part_colorings)):
        qc = quotient_coloring.colors[i]
        for v in p:
            colors[v] = qc * maxpart + col.colors[v]
    for v in range(d.n):
        if v not in colors:
            colors[v] = quotient_coloring.colors[qmap[v]] * maxpart
    out = Coloring(colors, quotient_coloring.bound * maxpart)
    if not is_proper(d, out):
        raise AssertionError("lifted coloring failed the properness check")
    return out


def is_rainbow(d: Digraph, col: Coloring, p: DiPath) -> bool:
    """True iff all vertices of the dipath receive pairwise distinct colors."""
    if not p.is_in(d):
        raise PreconditionError("path does not lie in the digraph")
    seen = [col.colors[v] for v in p.vertices]
    return len(set(seen)) == len(seen)
