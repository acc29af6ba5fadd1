import pytest
from hypothesis import given, settings, strategies as st

from bispindle import (
    Digraph,
    DiCycle,
    DiPath,
    PreconditionError,
    blocks_of_cycle,
    concat,
    contract,
    find_directed_ear,
    induced_subdigraph,
    is_strong,
    max_chi_strong_block,
    shortest_directed_cycle,
    strong_components,
)
from bispindle.generators import (
    bidirected_complete,
    directed_cycle,
    random_strong_digraph,
    transitive_tournament,
)
from oracles import all_directed_cycles, is_strong_brute, mutually_reachable


def digons(*pairs):
    out = []
    for u, v in pairs:
        out += [(u, v), (v, u)]
    return out


class TestTypes:
    def test_digraph_rejects_loops(self):
        with pytest.raises(PreconditionError):
            Digraph(2, [(0, 0)])

    def test_digraph_rejects_out_of_range(self):
        with pytest.raises(PreconditionError):
            Digraph(2, [(0, 2)])

    def test_dipath_distinct(self):
        with pytest.raises(PreconditionError):
            DiPath((0, 1, 0))

    def test_dicycle_min_length(self):
        with pytest.raises(PreconditionError):
            DiCycle((0,))

    def test_cycle_slicing(self):
        c = DiCycle((0, 1, 2, 3, 4))
        assert c.segment(1, 3).vertices == (1, 2, 3)
        assert c.segment(3, 1).vertices == (3, 4, 0, 1)
        assert c.segment(2, 2).vertices == (2,)
        assert c.dist(4, 0) == 1

    def test_concat(self):
        assert concat(DiPath((0, 1)), DiPath((1, 2))).vertices == (0, 1, 2)
        with pytest.raises(PreconditionError):
            concat(DiPath((0, 1, 2)), DiPath((2, 0)))
        with pytest.raises(PreconditionError):
            concat(DiPath((0, 1)), DiPath((2, 3)))


class TestStrongComponents:
    def test_cycle_is_one_component(self):
        assert strong_components(directed_cycle(3)) == [[0, 1, 2]]

    def test_transitive_tournament_singletons(self):
        assert strong_components(transitive_tournament(3)) == [[0], [1], [2]]

    def test_two_triangles_in_source_sink_order(self):
        arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]
        d = Digraph(6, arcs)
        comps = strong_components(d)
        assert comps == [[0, 1, 2], [3, 4, 5]]
        for comp in comps:
            for a in comp:
                for b in comp:
                    assert mutually_reachable(d, a, b)

    @given(st.integers(2, 9), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_components_partition_and_are_strong(self, n, seed):
        import random

        rng = random.Random(seed)
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.3]
        d = Digraph(n, arcs)
        comps = strong_components(d)
        flat = [v for comp in comps for v in comp]
        assert sorted(flat) == list(range(n))
        for comp in comps:
            for a in comp:
                for b in comp:
                    assert mutually_reachable(d, a, b)
        # topological order of the condensation
        pos = {}
        for i, comp in enumerate(comps):
            for v in comp:
                pos[v] = i
        for u, v in d.arcs:
            assert pos[u] <= pos[v]


class TestShortestCycle:
    def test_plain_cycle(self):
        c = shortest_directed_cycle(directed_cycle(5))
        assert c is not None and c.length == 5

    def test_digon_beats_triangle(self):
        d = Digraph(3, [(0, 1), (1, 2), (2, 0), (1, 0)])
        c = shortest_directed_cycle(d)
        assert c is not None and c.length == 2 and set(c.vertices) == {0, 1}

    def test_acyclic_is_none(self):
        assert shortest_directed_cycle(transitive_tournament(4)) is None

    @given(st.integers(2, 8), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_minimum_against_enumeration(self, n, seed):
        import random

        rng = random.Random(seed)
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.3]
        d = Digraph(n, arcs)
        cycles = all_directed_cycles(d)
        got = shortest_directed_cycle(d)
        if not cycles:
            assert got is None
        else:
            assert got is not None
            assert got.is_in(d)
            assert got.length == min(len(c) for c in cycles)


class TestBlocksOfCycle:
    def test_directed_cycle_counts_one(self):
        assert blocks_of_cycle(directed_cycle(4), [0, 1, 2, 3]) == 1

    def test_two_block_cycle(self):
        d = Digraph(4, [(0, 1), (1, 2), (0, 3), (3, 2)])
        assert blocks_of_cycle(d, [0, 1, 2, 3]) == 2

    def test_antidirected_four_cycle(self):
        d = Digraph(4, [(0, 1), (2, 1), (2, 3), (0, 3)])
        assert blocks_of_cycle(d, [0, 1, 2, 3]) == 4

    def test_rejects_unrealized_edge(self):
        with pytest.raises(PreconditionError):
            blocks_of_cycle(Digraph(3, [(0, 1)]), [0, 1, 2])

    @given(st.integers(3, 8), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_rotation_and_reversal_invariance(self, n, seed):
        import random

        rng = random.Random(seed)
        arcs = set()
        cyc = list(range(n))
        for i in range(n):
            u, v = cyc[i], cyc[(i + 1) % n]
            arcs.add((u, v) if rng.random() < 0.5 else (v, u))
            if rng.random() < 0.2:
                arcs.add((v, u))
        d = Digraph(n, arcs)
        base = blocks_of_cycle(d, cyc)
        for r in range(1, n):
            rot = cyc[r:] + cyc[:r]
            assert blocks_of_cycle(d, rot) == base
        assert blocks_of_cycle(d, list(reversed(cyc))) == base


class TestEars:
    def test_ear_in_bidirected_k4(self):
        d = bidirected_complete(4)
        f = Digraph(4, [(0, 1), (1, 2), (2, 0)])
        ear = find_directed_ear(d, f)
        assert ear.length >= 1
        assert ear.s != ear.t
        fverts = {0, 1, 2}
        assert ear.s in fverts and ear.t in fverts
        assert all(v not in fverts for v in ear.vertices[1:-1])

    def test_ear_on_chorded_cycle(self):
        d = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 0)])
        f = Digraph(5, [(0, 1), (1, 2), (2, 0)])
        ear = find_directed_ear(d, f)
        assert ear.vertices == (2, 3, 4, 0)

    def test_rejects_non_proper(self):
        d = directed_cycle(4)
        with pytest.raises(PreconditionError):
            find_directed_ear(d, d)

    def test_union_with_ear_stays_strong_and_2connected(self):
        for seed in range(30):
            d = random_strong_digraph(7, 0.45, seed)
            from bispindle.digraph import _has_cut_vertex

            if _has_cut_vertex(d, list(range(d.n))):
                continue
            c = shortest_directed_cycle(d)
            if c is None or c.length == d.n and len(c.as_path_arcs()) == len(d.arcs):
                continue
            f = Digraph(d.n, c.as_path_arcs())
            if f.arcs == d.arcs:
                continue
            ear = find_directed_ear(d, f)
            union = Digraph(d.n, set(f.arcs) | set(zip(ear.vertices, ear.vertices[1:])))
            touched = sorted({v for a in union.arcs for v in a})
            sub, _ = induced_subdigraph(d, touched)
            usub, _ = induced_subdigraph(union, touched)
            assert is_strong_brute(usub)
            from bispindle.digraph import _has_cut_vertex as hcv

            assert not hcv(usub, list(range(usub.n)))


class TestBlocksAndContract:
    def test_max_chi_block_identity_on_k4(self):
        d = bidirected_complete(4)
        blk = max_chi_strong_block(d)
        assert blk.n == 4 and is_strong(blk)

    def test_max_chi_block_on_two_triangles(self):
        arcs = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]
        d = Digraph(5, arcs)
        blk = max_chi_strong_block(d)
        assert blk.n == 3
        from bispindle import exact_chromatic

        assert exact_chromatic(blk)[0] == 3

    def test_contract_numbering(self):
        d = Digraph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
        q, qmap = contract(d, [[0, 1, 2]])
        assert q.n == 3
        assert qmap[0] == qmap[1] == qmap[2] == 0
        assert qmap[3] == 1 and qmap[4] == 2
        assert (0, 1) in q.arcs and (2, 0) in q.arcs
