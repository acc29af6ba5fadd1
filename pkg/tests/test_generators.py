import pytest

from bispindle import (
    Digraph,
    PreconditionError,
    detect_22bispindle,
    detect_3spindle,
    exact_chromatic,
    find_dkb,
    is_acyclic,
    is_strong,
    odd_dicycle,
    random_strong_digraph,
    rotative_tournament,
    spindle_free_construction,
    validate_dkb,
)
from bispindle.generators import bidirected_complete, transitive_tournament
from oracles import is_strong_brute


class TestFamilies:
    def test_odd_cycle(self):
        d = odd_dicycle(5)
        assert exact_chromatic(d)[0] == 3
        with pytest.raises(PreconditionError):
            odd_dicycle(4)

    def test_rotative(self):
        r3 = rotative_tournament(2)
        assert r3.arcs == frozenset({(0, 1), (1, 2), (2, 0)})
        r5 = rotative_tournament(3)
        assert all(len(r5.out_adj[v]) == 2 for v in range(5))
        for k in range(2, 7):
            assert is_strong(rotative_tournament(k))

    def test_random_strong_deterministic(self):
        a = random_strong_digraph(8, 0.3, 42)
        b = random_strong_digraph(8, 0.3, 42)
        assert a.arcs == b.arcs
        assert is_strong_brute(a)

    def test_random_strong_extremes(self):
        assert random_strong_digraph(1, 0.5, 0).n == 1
        full = random_strong_digraph(4, 1.0, 0)
        assert len(full.arcs) == 12

    def test_random_strong_always_strong(self):
        for seed in range(80):
            assert is_strong_brute(random_strong_digraph(3 + seed % 9, 0.2, seed))


class TestDkb:
    def test_single_arc_valid_for_k0(self):
        assert validate_dkb(Digraph(2, [(0, 1)]), 0, 4) is True

    def test_tt3_fails_block_count(self):
        assert validate_dkb(transitive_tournament(3), 2, 4) is False

    def test_cycle_not_acyclic(self):
        from bispindle.generators import directed_cycle

        assert validate_dkb(directed_cycle(4), 1, 4) is False

    def test_found_instance_for_k2(self):
        d = find_dkb(2, 4, seed=1)
        assert d is not None
        assert validate_dkb(d, 2, 4) is True
        assert exact_chromatic(d)[0] > 2


class TestSpindleFreeConstruction:
    def build(self, k, seed=1):
        if k <= 1:
            base = Digraph(2, [(0, 1)])
        else:
            base = find_dkb(2, 4, seed=seed)
            assert base is not None
        return base, spindle_free_construction(base, k if k > 0 else 0)

    def test_single_arc_base(self):
        base, d = self.build(0)
        assert is_strong_brute(d)

    def test_rejects_cyclic_base(self):
        from bispindle.generators import directed_cycle

        with pytest.raises(PreconditionError):
            spindle_free_construction(directed_cycle(4), 1)

    def test_construction_properties_k2(self):
        base, d = self.build(2)
        assert is_strong_brute(d)
        # removing the hinge arc leaves an acyclic digraph
        sinks = [v for v in range(base.n) if not base.out_adj[v]]
        xl = base.n + len(sinks) - 1
        z = base.n + len(sinks)
        assert d.has_arc(xl, z)
        assert is_acyclic(Digraph(d.n, d.arcs - {(xl, z)}))
        # chromatic number carries over
        assert exact_chromatic(d)[0] > 2

    def test_detectors_absent_on_construction(self):
        _, d = self.build(2)
        assert detect_3spindle(d).status == "absent"
        assert detect_22bispindle(d).status == "absent"

    def test_detectors_found_on_dense(self):
        k4 = bidirected_complete(4)
        assert detect_3spindle(k4).found
        assert detect_22bispindle(k4).found

    def test_detectors_absent_on_plain_cycle(self):
        c5 = odd_dicycle(5)
        assert detect_3spindle(c5).status == "absent"
        assert detect_22bispindle(c5).status == "absent"
