"""Instance families and the spindle-freeness detectors that validate the
extremal construction: digraphs of large chromatic number containing no
3-spindle and no (2+2)-bispindle.
"""

from __future__ import annotations

import random
from typing import Optional

from .coloring import chromatic_number_of_subset
from .digraph import Digraph, is_acyclic, is_strong, blocks_of_cycle
from .errors import PreconditionError
from .spindles import (
    BispindlePattern,
    Detection,
    SubdivisionWitness,
    find_subdivision,
    vertex_disjoint_paths,
    verify_witness,
)


def odd_dicycle(n: int) -> Digraph:
    if n < 3 or n % 2 == 0:
        raise PreconditionError("n must be odd and at least 3")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise PreconditionError("n must be at least 2")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def bidirected_complete(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def rotative_tournament(k: int) -> Digraph:
    """Tournament on 2k-1 vertices where i beats i+1, ..., i+k-1 (mod 2k-1)."""
    if k < 2:
        raise PreconditionError("k must be at least 2")
    n = 2 * k - 1
    arcs = [(i, (i + d) % n) for i in range(n) for d in range(1, k)]
    return Digraph(n, arcs)


def random_strong_digraph(n: int, arc_probability: float, seed: int) -> Digraph:
    """Seeded random digraph, forced strong.

    Arcs are sampled independently; a few rejection resamples are tried and
    then a random Hamiltonian-cycle backbone is added. Bit-identical per seed.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    rng = random.Random(seed)
    last: Optional[Digraph] = None
    for _ in range(3):
        arcs = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and rng.random() < arc_probability
        ]
        last = Digraph(n, arcs)
        if is_strong(last):
            return last
    assert last is not None
    perm = list(range(n))
    rng.shuffle(perm)
    backbone = [(perm[i], perm[(i + 1) % n]) for i in range(n)] if n > 1 else []
    return Digraph(n, set(last.arcs) | set(backbone))


def random_tournament(n: int, seed: int) -> Digraph:
    rng = random.Random(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, arcs)


# ---------------------------------------------------------------------------
# many-block acyclic instances (pluggable) and the extremal construction


def validate_dkb(d: Digraph, k: int, b: int, cycle_budget: int = 200_000) -> Optional[bool]:
    """True iff d is acyclic, every underlying cycle has at least b blocks,
    and the exact chromatic number exceeds k. None when the undirected cycle
    enumeration exceeds its budget."""
    if not is_acyclic(d):
        return False
    try:
        chi = chromatic_number_of_subset(d, range(d.n))
    except Exception:
        return None
    if chi <= k:
        return False
    steps = [0]
    for cyc in _undirected_cycles(d, steps, cycle_budget):
        if cyc is None:
            return None
        if blocks_of_cycle(d, cyc) < b:
            return False
    return True


def _undirected_cycles(d: Digraph, steps: list[int], budget: int):
    """Yield each simple cycle of the underlying graph once (None on budget)."""
    adj = d.und_adj
    n = d.n
    for s in range(n):
        path = [s]
        on_path = {s}

        def rec():
            steps[0] += 1
            if steps[0] > budget:
                yield None
                return
            u = path[-1]
            for w in adj[u]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from rec()
                    path.pop()
                    on_path.remove(w)

        yield from rec()


def find_dkb(k: int, b: int, seed: int = 0, attempts: int = 20_000) -> Optional[Digraph]:
    """Seeded randomized search for a tiny valid many-block instance (k <= 2)."""
    if k > 2:
        raise PreconditionError("randomized search only supported for k <= 2")
    if k <= 0:
        return Digraph(2, [(0, 1)])
    rng = random.Random(seed)
    for _ in range(attempts):
        n = rng.randint(4, 8)
        arcs = set()
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < 0.35:
                    arcs.add((u, v))
        d = Digraph(n, arcs)
        if not is_acyclic(d):
            continue
        if validate_dkb(d, k, b) is True:
            return d
    return None


def spindle_free_construction(dk4: Digraph, k: int) -> Digraph:
    """Strong digraph with chromatic number > k, no 3-spindle and no
    (2+2)-bispindle, built from a validated acyclic many-block instance.

    Appends a dipath (x_1..x_l, z, y_1..y_m) joining the sinks back to the
    sources; every directed cycle of the result uses the arc (x_l, z).
    """
    ok = validate_dkb(dk4, k, 4)
    if ok is not True:
        raise PreconditionError("input failed validation as a (k,4) many-block instance")
    n = dk4.n
    sinks = [v for v in range(n) if not dk4.out_adj[v]]
    sources = [v for v in range(n) if not dk4.in_adj[v]]
    l, m = len(sinks), len(sources)
    assert l >= 1 and m >= 1
    xs = [n + i for i in range(l)]
    z = n + l
    ys = [n + l + 1 + j for j in range(m)]
    arcs = set(dk4.arcs)
    chain = xs + [z] + ys
    arcs.update(zip(chain, chain[1:]))
    arcs.update((s, x) for s, x in zip(sinks, xs))
    arcs.update((y, t) for y, t in zip(ys, sources))
    out = Digraph(n + l + m + 1, arcs)
    if not is_strong(out):
        raise AssertionError("construction must be strong")
    return out


def detect_3spindle(d: Digraph) -> Detection:
    """Exact 3-spindle detection via unit-vertex-capacity max flow per hub pair."""
    for x in range(d.n):
        for y in range(d.n):
            if x == y:
                continue
            paths = vertex_disjoint_paths(d, x, y, 3)
            if paths is not None:
                w = SubdivisionWitness(x, y, paths, ())
                assert verify_witness(d, BispindlePattern.spindle(3), w)
                return Detection("found", w)
    return Detection("absent")


def detect_22bispindle(d: Digraph, exhaustive: Optional[bool] = None) -> Detection:
    """(2+2)-bispindle detection.

    Fast pre-filter: if the digraph is acyclic, or deleting one arc leaves
    it acyclic (all directed cycles share that arc), no two arc-disjoint
    directed cycles exist and the answer is definitively absent.
    """
    if is_acyclic(d):
        return Detection("absent")
    for a in d.sorted_arcs():
        if is_acyclic(Digraph(d.n, d.arcs - {a})):
            return Detection("absent")
    return find_subdivision(d, BispindlePattern((1, 1), (1, 1)), exhaustive=exhaustive)
