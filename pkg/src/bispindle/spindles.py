"""Bispindle patterns, subdivision witnesses, the independent witness
verifier, subdivision detectors, and the two standalone extractors
(strong tournaments; strong digraphs of chromatic number at least four).

A pattern B(k1,k2;k3) asks for two (x,y)-dipaths of lengths >= k1, >= k2
and one (y,x)-dipath of length >= k3, all pairwise internally disjoint;
a p-spindle is p forward dipaths and no backward ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .coloring import exact_chromatic
from .digraph import (
    Digraph,
    DiCycle,
    DiPath,
    concat,
    find_directed_ear,
    induced_subdigraph,
    is_strong,
    max_chi_strong_block_vertices,
    shortest_directed_cycle,
)
from .errors import PreconditionError


@dataclass(frozen=True)
class BispindlePattern:
    """Minimum path lengths: forward slots are (x,y)-dipaths, backward (y,x)."""

    forward: tuple[int, ...]
    backward: tuple[int, ...]

    def __init__(self, forward: Iterable[int], backward: Iterable[int] = ()):
        fwd = tuple(int(x) for x in forward)
        bwd = tuple(int(x) for x in backward)
        if not fwd and not bwd:
            raise PreconditionError("pattern needs at least one path slot")
        if any(x < 1 for x in fwd + bwd):
            raise PreconditionError("all minimum lengths must be >= 1")
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "backward", bwd)

    @staticmethod
    def b(k1: int, k2: int, k3: int) -> "BispindlePattern":
        return BispindlePattern((k1, k2), (k3,))

    @staticmethod
    def spindle(p: int) -> "BispindlePattern":
        return BispindlePattern((1,) * p, ())

    def is_pure_spindle(self) -> bool:
        return not self.backward and all(x == 1 for x in self.forward)

    def label(self) -> str:
        if len(self.forward) == 2 and len(self.backward) == 1:
            return f"B({self.forward[0]},{self.forward[1]};{self.backward[0]})"
        fwd = ",".join(map(str, self.forward))
        bwd = ",".join(map(str, self.backward))
        return f"B({fwd};{bwd})"

    def to_json(self) -> dict:
        return {"forward": list(self.forward), "backward": list(self.backward)}

    @staticmethod
    def from_json(obj: dict) -> "BispindlePattern":
        return BispindlePattern(obj["forward"], obj.get("backward", ()))


@dataclass(frozen=True)
class SubdivisionWitness:
    """Hub pair plus internally disjoint dipaths realizing a pattern."""

    x: int
    y: int
    forward: tuple[DiPath, ...]
    backward: tuple[DiPath, ...]

    def __init__(self, x: int, y: int, forward: Sequence[DiPath], backward: Sequence[DiPath]):
        object.__setattr__(self, "x", int(x))
        object.__setattr__(self, "y", int(y))
        object.__setattr__(self, "forward", tuple(forward))
        object.__setattr__(self, "backward", tuple(backward))

    def paths(self) -> list[DiPath]:
        return list(self.forward) + list(self.backward)

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "forward": [list(p.vertices) for p in self.forward],
            "backward": [list(p.vertices) for p in self.backward],
        }

    @staticmethod
    def from_json(obj: dict) -> "SubdivisionWitness":
        return SubdivisionWitness(
            obj["x"],
            obj["y"],
            [DiPath(p) for p in obj["forward"]],
            [DiPath(p) for p in obj["backward"]],
        )


def witness_violations(d: Digraph, pat: BispindlePattern, w: SubdivisionWitness) -> list[str]:
    """Machine-readable reasons the witness fails; empty list means valid."""
    bad: list[str] = []
    if not (0 <= w.x < d.n and 0 <= w.y < d.n):
        return ["hub out of range"]
    if w.x == w.y:
        return ["hubs coincide"]
    for tag, paths, src, dst in (
        ("forward", w.forward, w.x, w.y),
        ("backward", w.backward, w.y, w.x),
    ):
        for i, p in enumerate(paths):
            if p.s != src or p.t != dst:
                bad.append(f"{tag}[{i}] does not run {src}->{dst}")
            if not p.is_in(d):
                bad.append(f"{tag}[{i}] uses a missing arc")
    interiors = []
    for p in w.paths():
        inner = set(p.vertices[1:-1])
        if inner & {w.x, w.y}:
            bad.append("internal vertex hits a hub")
        interiors.append(inner)
    for i in range(len(interiors)):
        for j in range(i + 1, len(interiors)):
            if interiors[i] & interiors[j]:
                bad.append(f"paths {i} and {j} share an internal vertex")
    # two identical one-arc paths would not be two paths in the subdivision
    for tag, paths in (("forward", w.forward), ("backward", w.backward)):
        ones = [p for p in paths if p.length == 1]
        if len(ones) > 1:
            bad.append(f"duplicate length-1 {tag} paths")
    for tag, paths, mins in (
        ("forward", w.forward, pat.forward),
        ("backward", w.backward, pat.backward),
    ):
        if len(paths) < len(mins):
            bad.append(f"only {len(paths)} {tag} paths for {len(mins)} slots")
            continue
        have = sorted((p.length for p in paths), reverse=True)
        want = sorted(mins, reverse=True)
        for i, need in enumerate(want):
            if have[i] < need:
                bad.append(f"{tag} slot needing length {need} got {have[i]}")
    return bad


def verify_witness(d: Digraph, pat: BispindlePattern, w: SubdivisionWitness) -> bool:
    return not witness_violations(d, pat, w)


# ---------------------------------------------------------------------------
# detection


@dataclass(frozen=True)
class Detection:
    """Tri-state detector verdict; "absent" only from complete searches."""

    status: str  # "found" | "absent" | "unknown"
    witness: Optional[SubdivisionWitness] = None

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: Optional[int]):
        self.left = nodes

    def spend(self) -> bool:
        if self.left is None:
            return True
        self.left -= 1
        return self.left >= 0


def find_subdivision(
    d: Digraph,
    pat: BispindlePattern,
    exhaustive: Optional[bool] = None,
    node_budget: int = 200_000,
    dense_limit: int = 16,
    sparse_limit: int = 60,
) -> Detection:
    """Search for a subdivision witness of the pattern.

    Pure spindles with unit minimums go through a vertex-capacitated
    max-flow per hub pair (exact at any supported size). Otherwise a
    backtracking search over hub pairs and internally disjoint path systems
    runs; in exhaustive mode its "absent" verdict is definitive, in budgeted
    mode running out of nodes yields "unknown". Hub pairs are scanned in
    lexicographic order and the first witness found is returned.
    """
    if d.n > sparse_limit:
        raise PreconditionError(f"detector limited to n <= {sparse_limit}")
    if exhaustive is None:
        exhaustive = d.n <= 12
    if pat.is_pure_spindle():
        return _find_pure_spindle(d, len(pat.forward))
    if exhaustive:
        if d.n > dense_limit:
            raise PreconditionError(
                f"exhaustive mode limited to n <= {dense_limit}; pass exhaustive=False"
            )
        budget = _Budget(None)
    else:
        budget = _Budget(node_budget)
    res = _search_pattern(d, pat, budget)
    if res is not None:
        return Detection("found", res)
    if budget.left is not None and budget.left < 0:
        return Detection("unknown")
    return Detection("absent")


def _find_pure_spindle(d: Digraph, p: int) -> Detection:
    for x in range(d.n):
        for y in range(d.n):
            if x == y:
                continue
            paths = vertex_disjoint_paths(d, x, y, p)
            if paths is not None:
                w = SubdivisionWitness(x, y, paths, ())
                assert verify_witness(d, BispindlePattern.spindle(p), w)
                return Detection("found", w)
    return Detection("absent")


def vertex_disjoint_paths(d: Digraph, x: int, y: int, p: int) -> Optional[list[DiPath]]:
    """p internally vertex-disjoint x->y dipaths via unit-capacity max flow,
    or None if fewer exist."""
    if x == y:
        raise PreconditionError("hubs must differ")
    # split each non-hub vertex v into v_in=2v, v_out=2v+1
    def vin(v: int) -> int:
        return 2 * v

    def vout(v: int) -> int:
        return 2 * v + 1

    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, set[int]] = {}

    def add(a: int, b: int, c: int) -> None:
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    big = d.n + 1
    for v in range(d.n):
        add(vin(v), vout(v), big if v in (x, y) else 1)
    for u, v in d.sorted_arcs():
        add(vout(u), vin(v), 1)

    src, dst = vout(x), vin(y)
    flow = 0
    while flow < p:
        prev: dict[int, int] = {src: src}
        queue = deque([src])
        while queue and dst not in prev:
            a = queue.popleft()
            for b in sorted(adj.get(a, ())):
                if b not in prev and cap.get((a, b), 0) > 0:
                    prev[b] = a
                    queue.append(b)
        if dst not in prev:
            return None
        cur = dst
        while cur != src:
            pa = prev[cur]
            cap[(pa, cur)] -= 1
            cap[(cur, pa)] += 1
            cur = pa
        flow += 1
    # decompose: an arc is used iff its unit capacity is saturated
    usage = {(u, v) for u, v in d.arcs if cap.get((vout(u), vin(v)), 0) == 0}
    paths = []
    for _ in range(p):
        seq = [x]
        taken: list[tuple[int, int]] = []
        while seq[-1] != y:
            nxts = sorted(v for (u, v) in usage if u == seq[-1])
            if not nxts:
                raise AssertionError("flow decomposition failed")
            nxt = nxts[0]
            usage.remove((seq[-1], nxt))
            taken.append((seq[-1], nxt))
            if nxt in seq:
                # flow cycle through a hub; its arcs stay removed, resume there
                i = seq.index(nxt)
                seq, taken = seq[: i + 1], taken[:i]
                continue
            seq.append(nxt)
        paths.append(DiPath(seq))
    return paths


def _search_pattern(
    d: Digraph, pat: BispindlePattern, budget: _Budget
) -> Optional[SubdivisionWitness]:
    slots: list[tuple[str, int]] = [("f", m) for m in sorted(pat.forward, reverse=True)]
    slots += [("b", m) for m in sorted(pat.backward, reverse=True)]
    reach_fwd = _reach_matrix(d)
    for x in range(d.n):
        for y in range(d.n):
            if x == y:
                continue
            if pat.forward and not reach_fwd[x][y]:
                continue
            if pat.backward and not reach_fwd[y][x]:
                continue
            chosen: list[DiPath] = []
            got = _fill_slots(d, slots, 0, x, y, set(), chosen, budget)
            if got:
                fwd = [p for p, (k, _) in zip(chosen, slots) if k == "f"]
                bwd = [p for p, (k, _) in zip(chosen, slots) if k == "b"]
                w = SubdivisionWitness(x, y, fwd, bwd)
                assert verify_witness(d, pat, w)
                return w
            if budget.left is not None and budget.left < 0:
                return None
    return None


def _reach_matrix(d: Digraph) -> list[list[bool]]:
    out = []
    for s in range(d.n):
        seen = [False] * d.n
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in d.out_adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append(seen)
    return out


def _fill_slots(
    d: Digraph,
    slots: list[tuple[str, int]],
    i: int,
    x: int,
    y: int,
    used_internal: set[int],
    chosen: list[DiPath],
    budget: _Budget,
) -> bool:
    if i == len(slots):
        return True
    kind, need = slots[i]
    src, dst = (x, y) if kind == "f" else (y, x)
    taken_one_arc = any(
        p.length == 1 for p, (k2, _) in zip(chosen, slots) if k2 == kind
    )

    def extend(seq: list[int], inner: set[int]) -> bool:
        if not budget.spend():
            return False
        u = seq[-1]
        if u == dst:
            length = len(seq) - 1
            if length < need:
                return False
            if length == 1 and taken_one_arc:
                return False
            chosen.append(DiPath(seq))
            used_internal.update(inner)
            if _fill_slots(d, slots, i + 1, x, y, used_internal, chosen, budget):
                return True
            chosen.pop()
            used_internal.difference_update(inner)
            return False
        for wv in d.out_adj[u]:
            if wv == dst:
                if extend(seq + [wv], inner):
                    return True
            elif wv not in (x, y) and wv not in used_internal and wv not in inner:
                if extend(seq + [wv], inner | {wv}):
                    return True
            if budget.left is not None and budget.left < 0:
                return False
        return False

    return extend([src], set())


# ---------------------------------------------------------------------------
# tournaments


def _is_tournament(t: Digraph) -> bool:
    for u in range(t.n):
        for v in range(u + 1, t.n):
            if t.has_arc(u, v) == t.has_arc(v, u):
                return False
    return True


def camion_hamiltonian_cycle(t: Digraph) -> DiCycle:
    """Hamiltonian directed cycle of a strong tournament, by cycle insertion."""
    if not _is_tournament(t):
        raise PreconditionError("input must be a tournament")
    if not is_strong(t):
        raise PreconditionError("input must be strong")
    if t.n < 3:
        raise PreconditionError("a strong tournament has at least 3 vertices")
    cyc = _any_triangle(t)
    cycle = list(cyc)
    while len(cycle) < t.n:
        outside = [v for v in range(t.n) if v not in cycle]
        inserted = False
        for v in outside:
            for i, u in enumerate(cycle):
                nxt = cycle[(i + 1) % len(cycle)]
                if t.has_arc(u, v) and t.has_arc(v, nxt):
                    cycle.insert(i + 1, v)
                    inserted = True
                    break
            if inserted:
                break
        if inserted:
            continue
        # every outside vertex uniformly dominates or is dominated by the cycle
        dominators = [v for v in outside if t.has_arc(v, cycle[0])]
        dominated = [v for v in outside if t.has_arc(cycle[0], v)]
        grown = False
        for u in dominated:
            for w in dominators:
                if t.has_arc(u, w):
                    cycle.extend([u, w])
                    grown = True
                    break
            if grown:
                break
        if not grown:
            raise AssertionError("insertion argument failed on a strong tournament")
    return DiCycle(cycle)


def _any_triangle(t: Digraph) -> tuple[int, int, int]:
    for a in range(t.n):
        for b in t.out_adj[a]:
            for c in t.out_adj[b]:
                if t.has_arc(c, a):
                    return (a, b, c)
    raise AssertionError("a strong tournament contains a directed triangle")


def tournament_b_k11(t: Digraph, k: int) -> SubdivisionWitness:
    """B(k,1;1) witness in a strong tournament on exactly 2k-1 vertices.

    Finds a Hamiltonian cycle; a chord jumping at least k vertices gives the
    witness directly, otherwise the tournament is rotative with respect to
    the cycle order and the explicit construction applies. Needs k >= 3:
    on 3 vertices the only strong tournament is the directed triangle, which
    has no B(2,1;1) subdivision.
    """
    if k < 3:
        raise PreconditionError("k must be at least 3 (no witness exists on 3 vertices)")
    n = 2 * k - 1
    if t.n != n:
        raise PreconditionError(f"tournament must have exactly {n} vertices")
    ham = camion_hamiltonian_cycle(t)
    vs = ham.vertices
    for i in range(n):
        for jump in range(k, n - 1 + 1):
            u, v = vs[i], vs[(i + jump) % n]
            if t.has_arc(u, v):
                fwd = [ham.segment(u, v), DiPath((u, v))]
                bwd = [ham.segment(v, u)]
                w = SubdivisionWitness(u, v, fwd, bwd)
                if verify_witness(t, BispindlePattern.b(k, 1, 1), w):
                    return w
    # rotative case, positions 1-based along the Hamiltonian cycle
    def at(pos: int) -> int:
        return vs[(pos - 1) % n]

    x, y = at(1), at(k + 2)
    f1 = concat(ham.segment(at(1), at(k - 1)), DiPath((at(k - 1), at(k + 1), at(k + 2))))
    f2 = DiPath((at(1), at(k), at(k + 2)))
    b1 = ham.segment(at(k + 2), at(1))
    w = SubdivisionWitness(x, y, (f1, f2), (b1,))
    if not verify_witness(t, BispindlePattern.b(k, 1, 1), w):
        raise AssertionError("rotative construction failed verification")
    return w


def extract_b211(d: Digraph) -> SubdivisionWitness:
    """B(2,1;1) witness in a strong digraph of exact chromatic number >= 4.

    Restrict to the block of maximum chromatic number, take a shortest
    directed cycle (always induced there), attach a directed ear of length
    at least two, and split the cycle at the ear's endpoints.
    """
    if not is_strong(d):
        raise PreconditionError("input must be strong")
    chi, _ = exact_chromatic(d)
    if chi < 4:
        raise PreconditionError(f"chromatic number is {chi} < 4")
    verts = max_chi_strong_block_vertices(d)
    sub, labels = induced_subdigraph(d, verts)
    cyc = shortest_directed_cycle(sub)
    if cyc is None:
        raise AssertionError("a strong block with chi >= 4 contains a cycle")
    f = Digraph(sub.n, cyc.as_path_arcs())
    ear = find_directed_ear(sub, f)
    if ear.length < 2:
        raise AssertionError("ear of an induced shortest cycle must have length >= 2")
    u, v = ear.s, ear.t
    fwd = [ear, cyc.segment(u, v)]
    bwd = [cyc.segment(v, u)]
    w = SubdivisionWitness(u, v, fwd, bwd)
    # map back to the host digraph's labels
    relabel = lambda p: DiPath(tuple(labels[i] for i in p.vertices))
    w = SubdivisionWitness(labels[u], labels[v], [relabel(p) for p in w.forward],
                           [relabel(p) for p in w.backward])
    if not verify_witness(d, BispindlePattern.b(2, 1, 1), w):
        raise AssertionError("extracted witness failed verification")
    return w
