import random

import pytest
from hypothesis import given, settings, strategies as st

from bispindle import (
    Coloring,
    Digraph,
    DiPath,
    LimitExceeded,
    PreconditionError,
    brooks_coloring,
    contract,
    degeneracy_coloring,
    exact_chromatic,
    is_proper,
    is_rainbow,
    lift_contraction_coloring,
    product_coloring,
)
from bispindle.generators import (
    bidirected_complete,
    directed_cycle,
    odd_dicycle,
    transitive_tournament,
)
from oracles import brute_chromatic


def random_digraph(n, p, seed):
    rng = random.Random(seed)
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


class TestDegeneracy:
    def test_cycle_needs_three_slots(self):
        col = degeneracy_coloring(directed_cycle(5))
        assert col.bound == 3
        assert is_proper(directed_cycle(5), col)

    def test_complete_underlying(self):
        col = degeneracy_coloring(transitive_tournament(5))
        assert col.bound == 5

    def test_edgeless(self):
        col = degeneracy_coloring(Digraph(4, []))
        assert col.bound == 1
        assert col.used() == 1 or len(col.colors) == 4


class TestBrooks:
    def test_odd_cycle_exception(self):
        col = brooks_coloring(odd_dicycle(5))
        assert col.bound == 3
        assert is_proper(odd_dicycle(5), col)

    def test_complete_exception(self):
        col = brooks_coloring(bidirected_complete(4))
        assert col.bound == 4

    def test_even_cycle_two_colors(self):
        col = brooks_coloring(directed_cycle(6))
        assert col.bound == 2
        assert is_proper(directed_cycle(6), col)

    def test_rejects_disconnected(self):
        with pytest.raises(PreconditionError):
            brooks_coloring(Digraph(4, [(0, 1), (2, 3)]))

    @given(st.integers(3, 9), st.integers(0, 10_000))
    @settings(max_examples=80, deadline=None)
    def test_brooks_bound_on_connected_graphs(self, n, seed):
        d = random_digraph(n, 0.4, seed)
        from bispindle.digraph import underlying_connected

        if not underlying_connected(d):
            return
        col = brooks_coloring(d)
        assert is_proper(d, col)
        adj = d.und_adj
        delta = max(len(a) for a in adj)
        verts = range(d.n)
        complete = all(len(adj[v]) == d.n - 1 for v in verts)
        odd_cycle = d.n % 2 == 1 and all(len(adj[v]) == 2 for v in verts)
        if complete or odd_cycle:
            assert col.bound <= delta + 1
        else:
            assert col.bound <= delta


class TestExact:
    @pytest.mark.parametrize(
        "d,chi",
        [
            (directed_cycle(5), 3),
            (bidirected_complete(4), 4),
            (directed_cycle(6), 2),
            (transitive_tournament(5), 5),
            (Digraph(3, []), 1),
        ],
    )
    def test_known_values(self, d, chi):
        got, col = exact_chromatic(d)
        assert got == chi
        assert is_proper(d, col)
        assert col.used() == chi

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            exact_chromatic(Digraph(50, []), limit=40)

    @given(st.integers(1, 7), st.floats(0.1, 0.9), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_against_brute_force(self, n, p, seed):
        d = random_digraph(n, p, seed)
        chi, col = exact_chromatic(d)
        assert chi == brute_chromatic(d)
        assert is_proper(d, col)

    @given(st.integers(2, 9), st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_never_beats_greedy_bounds(self, n, seed):
        d = random_digraph(n, 0.5, seed)
        chi, _ = exact_chromatic(d)
        assert chi <= degeneracy_coloring(d).bound
        from bispindle.digraph import underlying_connected

        if underlying_connected(d):
            assert chi <= brooks_coloring(d).bound


class TestProduct:
    def test_bound_arithmetic(self):
        c1 = Coloring({0: 0, 1: 1}, 2)
        c2 = Coloring({0: 2, 1: 0}, 3)
        got = product_coloring(c1, c2)
        assert got.bound == 6

    def test_mismatch_rejected(self):
        with pytest.raises(PreconditionError):
            product_coloring(Coloring({0: 0}, 1), Coloring({1: 0}, 1))

    def test_union_of_arc_disjoint_split_is_proper(self):
        # 200 seeded random digraphs split into two spanning arc-disjoint halves
        for seed in range(200):
            rng = random.Random(seed)
            n = rng.randint(2, 12)
            d = random_digraph(n, 0.4, seed * 7 + 1)
            arcs = sorted(d.arcs)
            half1 = {a for a in arcs if rng.random() < 0.5}
            half2 = set(arcs) - half1
            d1, d2 = Digraph(n, half1), Digraph(n, half2)
            _, c1 = exact_chromatic(d1)
            _, c2 = exact_chromatic(d2)
            got = product_coloring(c1, c2)
            assert is_proper(d, got)


class TestLift:
    def test_singleton_parts_mirror_quotient(self):
        d = directed_cycle(4)
        parts = [[v] for v in range(4)]
        part_cols = [Coloring({v: 0}, 1) for v in range(4)]
        q, _ = contract(d, parts)
        _, qcol = exact_chromatic(q)
        got = lift_contraction_coloring(d, parts, part_cols, qcol)
        assert is_proper(d, got)
        assert got.bound == qcol.bound

    def test_two_digon_parts(self):
        arcs = [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2), (3, 0)]
        d = Digraph(4, arcs)
        parts = [[0, 1], [2, 3]]
        part_cols = [Coloring({0: 0, 1: 1}, 2), Coloring({2: 0, 3: 1}, 2)]
        q, _ = contract(d, parts)
        _, qcol = exact_chromatic(q)
        got = lift_contraction_coloring(d, parts, part_cols, qcol)
        assert is_proper(d, got)
        assert got.bound <= qcol.bound * 2

    def test_improper_part_rejected(self):
        d = Digraph(2, [(0, 1)])
        with pytest.raises(PreconditionError):
            lift_contraction_coloring(
                d, [[0, 1]], [Coloring({0: 0, 1: 0}, 1)], Coloring({0: 0}, 1)
            )

    @given(st.integers(3, 10), st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_bound_inequality(self, n, seed):
        d = random_digraph(n, 0.35, seed)
        rng = random.Random(seed + 1)
        verts = list(range(n))
        rng.shuffle(verts)
        cut = rng.randint(1, n)
        parts = [sorted(verts[:cut])]
        if n - cut >= 2:
            parts.append(sorted(verts[cut:]))
        part_cols = []
        for p in parts:
            _, col = exact_chromatic(d)
            part_cols.append(col.restrict(p))
        q, _ = contract(d, parts)
        _, qcol = exact_chromatic(q)
        got = lift_contraction_coloring(d, parts, part_cols, qcol)
        assert is_proper(d, got)
        assert got.bound <= qcol.bound * max(c.bound for c in part_cols)


class TestRainbow:
    def test_single_vertex(self):
        d = Digraph(1, [])
        assert is_rainbow(d, Coloring({0: 0}, 1), DiPath((0,)))

    def test_repeat_not_rainbow(self):
        d = Digraph(2, [(0, 1)])
        assert not is_rainbow(d, Coloring({0: 0, 1: 0}, 1), DiPath((0, 1)))

    def test_injective_long_path(self):
        d = Digraph(7, [(i, i + 1) for i in range(6)])
        col = Coloring({v: v for v in range(7)}, 7)
        assert is_rainbow(d, col, DiPath(tuple(range(7))))
