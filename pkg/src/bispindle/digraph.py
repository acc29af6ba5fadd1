"""Core digraph representation plus the structural primitives everything
else manipulates: directed paths and cycles with slicing, strong
components, blocks, directed ears, shortest cycles and block counting.

Digraphs are simple (no loops, no parallel arcs); digons are allowed.
All values are immutable after construction and every operation is a pure
function, so concurrent use needs no locking.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import PreconditionError


@dataclass(frozen=True)
class Digraph:
    """A digraph on vertices 0..n-1 with an O(1)-queryable arc set."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        arcset = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in arcset:
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"arc ({u},{v}) out of range for n={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", arcset)

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            adj[u].append(v)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def und_adj(self) -> tuple[tuple[int, ...], ...]:
        """Adjacency of the underlying undirected graph."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def vertices(self) -> range:
        return range(self.n)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def __repr__(self) -> str:  # keeps pytest diffs readable
        return f"Digraph(n={self.n}, m={len(self.arcs)})"


@dataclass(frozen=True)
class DiPath:
    """A directed path given by its vertex sequence (all distinct)."""

    vertices: tuple[int, ...]

    def __init__(self, vertices: Sequence[int]):
        vs = tuple(int(v) for v in vertices)
        if not vs:
            raise PreconditionError("a dipath has at least one vertex")
        if len(set(vs)) != len(vs):
            raise PreconditionError(f"repeated vertex in dipath {vs}")
        object.__setattr__(self, "vertices", vs)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def s(self) -> int:
        """Initial vertex."""
        return self.vertices[0]

    @property
    def t(self) -> int:
        """Terminal vertex."""
        return self.vertices[-1]

    def drop_first(self) -> "DiPath":
        return DiPath(self.vertices[1:])

    def drop_last(self) -> "DiPath":
        return DiPath(self.vertices[:-1])

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    def prefix_to(self, v: int) -> "DiPath":
        return DiPath(self.vertices[: self.index(v) + 1])

    def suffix_from(self, v: int) -> "DiPath":
        return DiPath(self.vertices[self.index(v):])

    def segment(self, a: int, b: int) -> "DiPath":
        ia, ib = self.index(a), self.index(b)
        if ia > ib:
            raise PreconditionError(f"{a} does not precede {b} on this dipath")
        return DiPath(self.vertices[ia: ib + 1])

    def is_in(self, d: Digraph) -> bool:
        return all(d.has_arc(u, v) for u, v in zip(self.vertices, self.vertices[1:]))


@dataclass(frozen=True)
class DiCycle:
    """A directed cycle as a cyclic vertex sequence (all distinct, length >= 2)."""

    vertices: tuple[int, ...]

    def __init__(self, vertices: Sequence[int]):
        vs = tuple(int(v) for v in vertices)
        if len(vs) < 2:
            raise PreconditionError("a dicycle has length at least 2")
        if len(set(vs)) != len(vs):
            raise PreconditionError(f"repeated vertex in dicycle {vs}")
        object.__setattr__(self, "vertices", vs)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    def successor(self, v: int) -> int:
        return self.vertices[(self.index(v) + 1) % self.length]

    def predecessor(self, v: int) -> int:
        return self.vertices[(self.index(v) - 1) % self.length]

    def dist(self, a: int, b: int) -> int:
        """Arc count from a forward to b; dist(a, a) == 0."""
        return (self.index(b) - self.index(a)) % self.length

    def segment(self, a: int, b: int) -> DiPath:
        """The subdipath from a forward around the cycle to b.

        segment(a, a) is the trivial one-vertex path, never the full cycle.
        """
        ia = self.index(a)
        k = self.dist(a, b)
        return DiPath(tuple(self.vertices[(ia + i) % self.length] for i in range(k + 1)))

    def forward_from(self, a: int, steps: int) -> int:
        return self.vertices[(self.index(a) + steps) % self.length]

    def rotated_to(self, v: int) -> "DiCycle":
        i = self.index(v)
        return DiCycle(self.vertices[i:] + self.vertices[:i])

    def canonical(self) -> tuple[int, ...]:
        """Rotation starting at the least vertex; used for dedup and ties."""
        i = self.vertices.index(min(self.vertices))
        return self.vertices[i:] + self.vertices[:i]

    def as_path_arcs(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_in(self, d: Digraph) -> bool:
        return all(d.has_arc(u, v) for u, v in self.as_path_arcs())

    def reversed_if(self, d: Digraph) -> Optional["DiCycle"]:
        rev = DiCycle(tuple(reversed(self.vertices)))
        return rev if rev.is_in(d) else None


def concat(p: DiPath, q: DiPath) -> DiPath:
    """Concatenate two dipaths sharing exactly the junction t(p) == s(q)."""
    if p.t != q.s:
        raise PreconditionError(f"no junction: t(p)={p.t} but s(q)={q.s}")
    shared = set(p.vertices) & set(q.vertices)
    if shared != {p.t}:
        raise PreconditionError(f"paths overlap beyond the junction: {sorted(shared)}")
    return DiPath(p.vertices + q.vertices[1:])


def concat_all(paths: Sequence[DiPath]) -> DiPath:
    """Chain several dipaths; consecutive junctions may coincide (trivial hops)."""
    out = paths[0]
    for p in paths[1:]:
        if p.length == 0 and p.s == out.t:
            continue
        if out.length == 0 and out.t == p.s:
            out = p
            continue
        out = concat(out, p)
    return out


# ---------------------------------------------------------------------------
# connectivity


def strong_components(d: Digraph) -> list[list[int]]:
    """Strong components in a topological order of the condensation.

    Iterative Tarjan; components are sorted internally and ties are resolved
    by visiting vertices in increasing order, so output is deterministic.
    """
    n = d.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = itertools.count()

    for root in range(n):
        if index[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = next(counter)
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for j in range(pi, len(d.out_adj[v])):
                w = d.out_adj[v][j]
                if index[w] == -1:
                    work[-1] = (v, j + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    # Tarjan emits components in reverse topological order.
    return list(reversed(comps))


def is_strong(d: Digraph) -> bool:
    return len(strong_components(d)) == 1


def is_acyclic(d: Digraph) -> bool:
    return all(len(c) == 1 for c in strong_components(d)) and not any(
        d.has_arc(v, v) for v in range(d.n)
    )


def underlying_connected(d: Digraph, vertices: Optional[Iterable[int]] = None) -> bool:
    verts = sorted(vertices) if vertices is not None else list(range(d.n))
    if not verts:
        return True
    vset = set(verts)
    seen = {verts[0]}
    queue = deque([verts[0]])
    while queue:
        u = queue.popleft()
        for w in d.und_adj[u]:
            if w in vset and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(vset)


def underlying_components(d: Digraph, vertices: Iterable[int]) -> list[list[int]]:
    """Connected components of the underlying graph induced on `vertices`."""
    vset = set(vertices)
    seen: set[int] = set()
    comps = []
    for s in sorted(vset):
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in d.und_adj[u]:
                if w in vset and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def induced_subdigraph(d: Digraph, vertices: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
    """Induced subdigraph relabeled to 0..k-1 plus the label map (new -> old)."""
    labels = tuple(sorted(set(vertices)))
    pos = {v: i for i, v in enumerate(labels)}
    arcs = [(pos[u], pos[v]) for u, v in d.arcs if u in pos and v in pos]
    return Digraph(len(labels), arcs), labels


def blocks(d: Digraph) -> list[list[int]]:
    """Vertex sets of the blocks (biconnected components) of the underlying graph.

    Isolated vertices form singleton blocks; a bridge forms a 2-vertex block.
    """
    n = d.n
    adj = d.und_adj
    visited = [False] * n
    depth = [0] * n
    low = [0] * n
    parent = [-1] * n
    estack: list[tuple[int, int]] = []
    out: list[list[int]] = []

    for root in range(n):
        if visited[root]:
            continue
        if not adj[root]:
            out.append([root])
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        visited[root] = True
        while work:
            v, pi = work[-1]
            advanced = False
            for j in range(pi, len(adj[v])):
                w = adj[v][j]
                if not visited[w]:
                    work[-1] = (v, j + 1)
                    estack.append((v, w))
                    visited[w] = True
                    depth[w] = depth[v] + 1
                    low[w] = depth[w]
                    parent[w] = v
                    work.append((w, 0))
                    advanced = True
                    break
                if w != parent[v] and depth[w] < depth[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], depth[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= depth[pv]:
                    comp: set[int] = set()
                    while estack:
                        a, b = estack.pop()
                        comp.add(a)
                        comp.add(b)
                        if (a, b) == (pv, v):
                            break
                    out.append(sorted(comp))
    return out


# ---------------------------------------------------------------------------
# structural extractors


def max_chi_strong_block(d: Digraph) -> Digraph:
    """The block of the underlying graph with the largest exact chromatic
    number, returned as a relabeled induced subdigraph.

    The result is strong (blocks of a strong digraph induce strong
    subdigraphs) and has the same chromatic number as the input.
    """
    verts = max_chi_strong_block_vertices(d)
    sub, _ = induced_subdigraph(d, verts)
    if not is_strong(sub):
        raise AssertionError("block of a strong digraph must induce a strong subdigraph")
    return sub


def max_chi_strong_block_vertices(d: Digraph) -> tuple[int, ...]:
    """Original-label vertex set of the block picked by max_chi_strong_block."""
    from .coloring import chromatic_number_of_subset

    if not is_strong(d):
        raise PreconditionError("input must be strong")
    if not d.arcs:
        raise PreconditionError("input must have at least one arc")
    best: Optional[tuple[int, tuple[int, ...]]] = None
    for blk in blocks(d):
        chi = chromatic_number_of_subset(d, blk)
        key = (-chi, tuple(blk))
        if best is None or key < best:
            best = key
    assert best is not None
    return best[1]


def shortest_directed_cycle(d: Digraph) -> Optional[DiCycle]:
    """A shortest directed cycle, or None if the digraph is acyclic.

    Ties are broken by the lexicographically least vertex sequence starting
    from the cycle's least vertex.
    """
    n = d.n
    best_len = None
    for s in range(n):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best_len is not None and dist[u] + 1 >= best_len:
                continue
            for w in d.out_adj[u]:
                if w == s:
                    cand = dist[u] + 1
                    if best_len is None or cand < best_len:
                        best_len = cand
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
    if best_len is None:
        return None

    g = best_len
    # lexicographically least cycle of length g whose least vertex is the start
    for s in range(n):
        dist_to_s = _distances_to(d, s)
        found = _lex_cycle_from(d, s, g, dist_to_s)
        if found is not None:
            return DiCycle(found)
    raise AssertionError("cycle length was found but no cycle reconstructed")


def _distances_to(d: Digraph, target: int) -> list[Optional[int]]:
    dist: list[Optional[int]] = [None] * d.n
    dist[target] = 0
    queue = deque([target])
    while queue:
        u = queue.popleft()
        for w in d.in_adj[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _lex_cycle_from(
    d: Digraph, s: int, g: int, dist_to_s: list[Optional[int]]
) -> Optional[tuple[int, ...]]:
    """First (lex) cycle of exactly length g through s using vertices > s."""
    path = [s]
    on_path = {s}

    def rec() -> Optional[tuple[int, ...]]:
        u = path[-1]
        if len(path) == g:
            return tuple(path) if d.has_arc(u, s) else None
        for w in d.out_adj[u]:
            if w <= s or w in on_path:
                continue
            rem = dist_to_s[w]
            if rem is None or len(path) + rem > g:
                continue
            path.append(w)
            on_path.add(w)
            got = rec()
            if got is not None:
                return got
            path.pop()
            on_path.remove(w)
        return None

    return rec()


def find_directed_ear(d: Digraph, f: Digraph) -> DiPath:
    """A directed ear of f in d: a dipath of d with both distinct endpoints
    in f and no internal vertex or arc inside f.

    f is given over the same vertex space with arcs a subset of d's; its
    vertex set is the set of arc endpoints. The shortest ear is returned,
    ties broken by vertex sequence.
    """
    if f.n != d.n:
        raise PreconditionError("f must live on the same vertex space as d")
    if not f.arcs:
        raise PreconditionError("f must be nontrivial (at least one arc)")
    if not f.arcs <= d.arcs:
        raise PreconditionError("f must be a subdigraph of d")
    fverts = sorted({v for a in f.arcs for v in a})
    if set(fverts) == set(range(d.n)) and f.arcs == d.arcs:
        raise PreconditionError("f must be a proper subdigraph of d")
    fset = set(fverts)
    if not _strong_on(f, fverts):
        raise PreconditionError("f must be strong")
    if not is_strong(d):
        raise PreconditionError("d must be strong")
    if _has_cut_vertex(d, list(range(d.n))):
        raise PreconditionError("d must be 2-connected")
    if len(fverts) > 2 and _has_cut_vertex(f, fverts):
        raise PreconditionError("f must be 2-connected")

    candidates: list[tuple[int, tuple[int, ...]]] = []
    # length-1 ears: d-arcs between distinct f-vertices missing from f
    for u, v in d.sorted_arcs():
        if u in fset and v in fset and u != v and not f.has_arc(u, v):
            candidates.append((1, (u, v)))
    # longer ears: BFS from each f-vertex through outside vertices
    for u in fverts:
        prev: dict[int, int] = {}
        queue = deque()
        for w in d.out_adj[u]:
            if w not in fset and w not in prev:
                prev[w] = u
                queue.append(w)
        while queue:
            x = queue.popleft()
            for w in d.out_adj[x]:
                if w in fset:
                    if w != u:
                        seq = [w, x]
                        cur = x
                        while prev[cur] != u:
                            cur = prev[cur]
                            seq.append(cur)
                        seq.append(u)
                        seq.reverse()
                        candidates.append((len(seq) - 1, tuple(seq)))
                elif w not in prev:
                    prev[w] = x
                    queue.append(w)
    if not candidates:
        raise PreconditionError("no directed ear exists; preconditions were not met")
    candidates.sort()
    return DiPath(candidates[0][1])


def _strong_on(f: Digraph, verts: list[int]) -> bool:
    if len(verts) <= 1:
        return True
    vset = set(verts)
    for direction in (f.out_adj, f.in_adj):
        seen = {verts[0]}
        queue = deque([verts[0]])
        while queue:
            u = queue.popleft()
            for w in direction[u]:
                if w in vset and w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(verts):
            return False
    return True


def _has_cut_vertex(d: Digraph, verts: list[int]) -> bool:
    if len(verts) <= 2:
        return False
    for v in verts:
        rest = [w for w in verts if w != v]
        if len(underlying_components(d, rest)) > 1:
            return True
    return False


def blocks_of_cycle(d: Digraph, cyc: Sequence[int]) -> int:
    """Number of maximal directed subpaths of an (underlying) cycle.

    Each consecutive pair must be realized by at least one arc. Digon edges
    match either direction; a consistently directed cycle counts as one
    block by convention. Invariant under rotation and reversal.
    """
    vs = [int(v) for v in cyc]
    if len(vs) < 2 or len(set(vs)) != len(vs):
        raise PreconditionError("input is not a cycle of the underlying graph")
    orient: list[Optional[bool]] = []  # True = forward, None = digon wildcard
    for i, u in enumerate(vs):
        v = vs[(i + 1) % len(vs)]
        fwd, back = d.has_arc(u, v), d.has_arc(v, u)
        if not fwd and not back:
            raise PreconditionError(f"edge {{{u},{v}}} not realized by any arc")
        orient.append(None if (fwd and back) else fwd)
    fixed = [o for o in orient if o is not None]
    if len(fixed) <= 1:
        return 1
    changes = sum(1 for a, b in zip(fixed, fixed[1:] + fixed[:1]) if a != b)
    return max(changes, 1)


def contract(d: Digraph, parts: Sequence[Iterable[int]]) -> tuple[Digraph, dict[int, int]]:
    """Contract each part to one vertex (loops dropped, arcs deduplicated).

    Quotient numbering: part i becomes vertex i; untouched vertices follow
    in ascending order. Returns the quotient and the vertex map old -> new.
    """
    partsets = [sorted(set(p)) for p in parts]
    seen: set[int] = set()
    for p in partsets:
        if not p:
            raise PreconditionError("empty part")
        if seen & set(p):
            raise PreconditionError("parts must be disjoint")
        for v in p:
            if not 0 <= v < d.n:
                raise PreconditionError(f"part vertex {v} out of range")
        seen |= set(p)
    qmap: dict[int, int] = {}
    for i, p in enumerate(partsets):
        for v in p:
            qmap[v] = i
    nxt = len(partsets)
    for v in range(d.n):
        if v not in qmap:
            qmap[v] = nxt
            nxt += 1
    arcs = {(qmap[u], qmap[v]) for u, v in d.arcs if qmap[u] != qmap[v]}
    return Digraph(nxt, arcs), qmap
