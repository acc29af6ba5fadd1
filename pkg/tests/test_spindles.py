import itertools
import random

import pytest

from bispindle import (
    BispindlePattern,
    Digraph,
    DiPath,
    PreconditionError,
    SubdivisionWitness,
    camion_hamiltonian_cycle,
    exact_chromatic,
    extract_b211,
    find_subdivision,
    tournament_b_k11,
    verify_witness,
    witness_violations,
)
from bispindle.generators import (
    bidirected_complete,
    directed_cycle,
    odd_dicycle,
    random_strong_digraph,
    rotative_tournament,
    transitive_tournament,
)
from bispindle.spindles import _search_pattern, _Budget
from oracles import brute_has_b211, is_strong_brute


B211 = BispindlePattern.b(2, 1, 1)


def all_tournaments(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        arcs = [(u, v) if b else (v, u) for (u, v), b in zip(pairs, bits)]
        yield Digraph(n, arcs)


class TestVerifyWitness:
    def test_valid_on_bidirected_triangle(self):
        d = bidirected_complete(3)
        w = SubdivisionWitness(0, 2, (DiPath((0, 1, 2)), DiPath((0, 2))), (DiPath((2, 0)),))
        assert verify_witness(d, B211, w)

    def test_length_deficit(self):
        d = bidirected_complete(3)
        w = SubdivisionWitness(0, 2, (DiPath((0, 1, 2)), DiPath((0, 2))), (DiPath((2, 0)),))
        assert not verify_witness(d, BispindlePattern.b(3, 1, 1), w)

    def test_overlapping_internal_vertex(self):
        d = bidirected_complete(4)
        w = SubdivisionWitness(
            0, 2, (DiPath((0, 1, 2)), DiPath((0, 3, 2))), (DiPath((2, 1, 0)),)
        )
        assert not verify_witness(d, B211, w)
        assert any("internal" in r for r in witness_violations(d, B211, w))

    def test_duplicate_one_arc_paths_rejected(self):
        d = bidirected_complete(3)
        w = SubdivisionWitness(0, 1, (DiPath((0, 1)), DiPath((0, 1))), (DiPath((1, 0)),))
        assert not verify_witness(d, BispindlePattern((1, 1), (1,)), w)

    def test_missing_arc(self):
        d = directed_cycle(3)
        w = SubdivisionWitness(0, 1, (DiPath((0, 1)),), (DiPath((1, 0)),))
        assert not verify_witness(d, BispindlePattern((1,), (1,)), w)


class TestFindSubdivision:
    def test_odd_cycle_has_no_b211(self):
        assert find_subdivision(odd_dicycle(5), B211, exhaustive=True).status == "absent"

    def test_bidirected_triangle_found(self):
        got = find_subdivision(bidirected_complete(3), B211, exhaustive=True)
        assert got.found
        assert verify_witness(bidirected_complete(3), B211, got.witness)

    def test_one_one_pattern_is_a_cycle(self):
        pat = BispindlePattern((1,), (1,))
        assert find_subdivision(directed_cycle(4), pat).found
        assert find_subdivision(transitive_tournament(4), pat).status == "absent"

    def test_pure_spindle_uses_flow(self):
        got = find_subdivision(bidirected_complete(4), BispindlePattern.spindle(3))
        assert got.found

    def test_agreement_with_brute_oracle_exhaustive_n4(self):
        n = 4
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        for bits in range(1 << len(pairs)):
            arcs = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            if len(arcs) < 5:
                continue
            d = Digraph(n, arcs)
            got = find_subdivision(d, B211, exhaustive=True)
            assert got.status in ("found", "absent")
            assert got.found == brute_has_b211(d)
            if got.found:
                assert verify_witness(d, B211, got.witness)

    def test_agreement_on_random_n6(self):
        for seed in range(120):
            rng = random.Random(seed)
            d = Digraph(6, [(u, v) for u in range(6) for v in range(6)
                            if u != v and rng.random() < 0.35])
            got = find_subdivision(d, B211, exhaustive=True)
            assert got.found == brute_has_b211(d)

    def test_flow_agrees_with_backtracking(self):
        for seed in range(60):
            n = 4 + seed % 6
            rng = random.Random(seed)
            d = Digraph(n, [(u, v) for u in range(n) for v in range(n)
                            if u != v and rng.random() < 0.4])
            for p in (2, 3):
                pat = BispindlePattern.spindle(p)
                flow = find_subdivision(d, pat)
                back = _search_pattern(d, pat, _Budget(None))
                assert flow.found == (back is not None)


class TestCamion:
    def test_triangle(self):
        ham = camion_hamiltonian_cycle(directed_cycle(3))
        assert ham.length == 3

    def test_rotative_five(self):
        ham = camion_hamiltonian_cycle(rotative_tournament(3))
        assert ham.length == 5
        assert ham.is_in(rotative_tournament(3))

    def test_rejects_non_tournament(self):
        with pytest.raises(PreconditionError):
            camion_hamiltonian_cycle(bidirected_complete(3))

    def test_rejects_non_strong(self):
        with pytest.raises(PreconditionError):
            camion_hamiltonian_cycle(transitive_tournament(5))

    def test_every_strong_tournament_on_five(self):
        count = 0
        for t in all_tournaments(5):
            if not is_strong_brute(t):
                continue
            count += 1
            ham = camion_hamiltonian_cycle(t)
            assert ham.length == 5
            assert ham.is_in(t)
        assert count > 0


class TestTournamentWitness:
    def test_rotative_five_k3(self):
        t = rotative_tournament(3)
        w = tournament_b_k11(t, 3)
        assert verify_witness(t, BispindlePattern.b(3, 1, 1), w)
        lens = sorted((p.length for p in w.forward), reverse=True)
        assert lens[0] >= 3

    def test_all_strong_tournaments_on_five(self):
        for t in all_tournaments(5):
            if not is_strong_brute(t):
                continue
            w = tournament_b_k11(t, 3)
            assert verify_witness(t, BispindlePattern.b(3, 1, 1), w)

    def test_rejects_non_strong(self):
        with pytest.raises(PreconditionError):
            tournament_b_k11(transitive_tournament(5), 3)

    def test_rejects_wrong_order(self):
        with pytest.raises(PreconditionError):
            tournament_b_k11(rotative_tournament(3), 4)

    def test_rejects_k2(self):
        with pytest.raises(PreconditionError):
            tournament_b_k11(directed_cycle(3), 2)


class TestExtractB211:
    def test_bidirected_k4(self):
        d = bidirected_complete(4)
        w = extract_b211(d)
        assert verify_witness(d, B211, w)

    def test_bidirected_k5(self):
        d = bidirected_complete(5)
        w = extract_b211(d)
        assert verify_witness(d, B211, w)

    def test_odd_cycle_rejected(self):
        with pytest.raises(PreconditionError):
            extract_b211(odd_dicycle(5))

    def test_random_strong_chi4(self):
        found = 0
        for seed in range(120):
            d = random_strong_digraph(6, 0.65, seed)
            chi, _ = exact_chromatic(d)
            if chi < 4:
                continue
            found += 1
            w = extract_b211(d)
            assert verify_witness(d, B211, w)
        assert found >= 10


class TestBudget:
    def test_unknown_on_tiny_budget(self):
        d = random_digraph_for_budget()
        got = find_subdivision(
            d, BispindlePattern.b(2, 1, 1), exhaustive=False, node_budget=3
        )
        assert got.status == "unknown"

    def test_absent_without_budget_pressure(self):
        from bispindle.generators import directed_cycle

        d = directed_cycle(20)
        got = find_subdivision(d, BispindlePattern.b(2, 1, 1), exhaustive=False)
        assert got.status == "absent"


def random_digraph_for_budget():
    import random as _r

    rng = _r.Random(5)
    n = 14
    return Digraph(n, [(u, v) for u in range(n) for v in range(n)
                       if u != v and rng.random() < 0.5])
