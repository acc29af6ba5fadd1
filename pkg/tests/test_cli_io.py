import json

import pytest

from bispindle import Digraph, PreconditionError
from bispindle.cli import run
from bispindle.io import dumps, loads, read_edge_list, to_dot, write_edge_list


class TestEdgeList:
    def test_round_trip(self):
        d = Digraph(4, [(0, 1), (1, 2), (2, 0), (3, 1)])
        assert loads(dumps(d)).arcs == d.arcs

    def test_comments_skipped(self):
        text = "# family=odd-cycle\n3 3\n0 1\n1 2\n2 0\n"
        assert loads(text).n == 3

    def test_rejects_loop(self):
        with pytest.raises(PreconditionError):
            loads("2 1\n0 0\n")

    def test_rejects_duplicate(self):
        with pytest.raises(PreconditionError):
            loads("2 2\n0 1\n0 1\n")

    def test_rejects_count_mismatch(self):
        with pytest.raises(PreconditionError):
            loads("2 2\n0 1\n")

    def test_canonical_order(self):
        d = Digraph(3, [(2, 0), (0, 1)])
        assert dumps(d).splitlines()[1:] == ["0 1", "2 0"]

    def test_dot_export(self):
        dot = to_dot(Digraph(2, [(0, 1)]))
        assert "digraph" in dot and "0 -> 1;" in dot

    def test_file_round_trip(self, tmp_path):
        d = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        p = tmp_path / "g.txt"
        write_edge_list(d, p, header=["test"])
        assert read_edge_list(p).arcs == d.arcs


class TestCli:
    def test_gen_then_chi(self, tmp_path, capsys):
        f = tmp_path / "c5.txt"
        assert run(["gen", "odd-cycle", "--n", "5", "-o", str(f)]) == 0
        assert run(["chi", str(f)]) == 0
        out = capsys.readouterr().out
        assert "chi: 3" in out

    def test_rotative_detect_found(self, tmp_path, capsys):
        f = tmp_path / "r5.txt"
        assert run(["gen", "rotative", "--k", "3", "-o", str(f)]) == 0
        assert run(["--json", "detect", str(f), "--pattern", "3,1:1"]) == 0
        payload = json.loads(capsys.readouterr().out.split("wrote")[-1].split("\n", 1)[1])
        assert payload["status"] == "found"

    def test_certify_p211_error_branch(self, tmp_path, capsys):
        f = tmp_path / "c5.txt"
        run(["gen", "odd-cycle", "--n", "5", "-o", str(f)])
        code = run(["certify", str(f), "--theorem", "p211", "-o", str(tmp_path / "c.json")])
        assert code == 1
        assert "chromatic" in capsys.readouterr().err

    def test_certify_verify_round_trip(self, tmp_path):
        f = tmp_path / "g.txt"
        cert = tmp_path / "cert.json"
        run(["gen", "random", "--n", "9", "--p", "0.4", "--seed", "7", "-o", str(f)])
        assert run(["certify", str(f), "--theorem", "bk11", "--k", "3", "-o", str(cert)]) == 0
        assert run(["verify", str(f), str(cert)]) == 0

    def test_verify_rejects_tamper(self, tmp_path):
        f = tmp_path / "g.txt"
        cert = tmp_path / "cert.json"
        run(["gen", "random", "--n", "9", "--p", "0.4", "--seed", "7", "-o", str(f)])
        run(["certify", str(f), "--theorem", "bk11", "--k", "3", "-o", str(cert)])
        payload = json.loads(cert.read_text())
        if payload["kind"] == "coloring":
            d = read_edge_list(f)
            u, v = sorted(d.arcs)[0]
            payload["coloring"]["colors"][u] = payload["coloring"]["colors"][v]
        else:
            payload["witness"]["forward"][0][0] ^= 1
        cert.write_text(json.dumps(payload))
        assert run(["verify", str(f), str(cert)]) == 1

    def test_usage_error(self):
        assert run(["detect"]) == 2

    def test_spindle_free_gen(self, tmp_path, capsys):
        f = tmp_path / "t3.txt"
        assert run(["gen", "spindle-free", "--k", "1", "--seed", "3", "-o", str(f)]) == 0
        assert run(["--json", "detect", str(f), "--pattern", "1,1,1:"]) == 0
        out = capsys.readouterr().out
        payload = json.loads(out.split("wrote")[-1].split("\n", 1)[1])
        assert payload["status"] == "absent"

    def test_p211_round_trip(self, tmp_path):
        f = tmp_path / "k4.txt"
        cert = tmp_path / "cert.json"
        run(["gen", "complete", "--n", "4", "-o", str(f)])
        assert run(["certify", str(f), "--theorem", "p211", "-o", str(cert)]) == 0
        assert run(["verify", str(f), str(cert)]) == 0
        payload = json.loads(cert.read_text())
        assert payload["kind"] == "witness" and payload["pattern"] == "B(2,1;1)"
