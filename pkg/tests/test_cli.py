from __future__ import annotations

import json
import subprocess
import sys

import pytest

from oretree.cli import main
from oretree.graph import parse_graph, serialize_graph
from oretree.instances import complete_bipartite, cycle, spider


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip().startswith("{") else None
    return code, doc, out


def test_analyze_k35(capsys, files):
    code, doc, _ = run(capsys, "analyze", files("g.txt", serialize_graph(complete_bipartite(3, 5))))
    assert code == 0 and doc["schema"] == 1
    assert doc["input"] == {"n": 8, "m": 15}
    assert doc["ore_profile"] == {"sigma2": 6, "k_min": 3}
    assert doc["static_bounds"]["thm2_bound"] == 1
    assert doc["static_bounds"]["thm3_bound"] == {"numerator": 3, "denominator": 1}


def test_analyze_spider(capsys, files):
    code, doc, _ = run(capsys, "analyze", files("g.txt", serialize_graph(spider(3))))
    assert doc["ore_profile"] == {"sigma2": 2, "k_min": 7}
    assert doc["static_bounds"]["thm2_bound"] == 3
    assert doc["static_bounds"]["thm3_bound"] == {"numerator": 9, "denominator": 1}


def test_infinity_rendering(capsys, files):
    _, doc, _ = run(capsys, "analyze", files("g.txt", "3 3\n0 1\n1 2\n0 2\n"))
    assert doc["ore_profile"]["sigma2"] == "infinity"


def test_error_exit_codes(capsys, files):
    assert run(capsys, "analyze", files("d.txt", "4 2\n0 1\n2 3\n"))[0] == 3
    assert run(capsys, "analyze", files("p.txt", "2 1\n0 0\n"))[0] == 2
    assert run(capsys, "analyze", files("q.txt", "garbage"))[0] == 2
    assert run(capsys, "optimize", "/nonexistent/file")[0] == 2


def test_optimize_k35(capsys, files):
    code, doc, _ = run(capsys, "optimize", files("g.txt", serialize_graph(complete_bipartite(3, 5))))
    assert code == 0
    assert (doc["tree"]["f"], doc["tree"]["b"], doc["tree"]["s"]) == (3, 1, 3)
    assert doc["search"]["certified"] is True
    assert all(doc["bounds"][f"thm{i}_ok"] for i in (1, 2, 3))
    tree = parse_graph(doc["artifact"]["text"])
    assert tree.m == 7


def test_optimize_dot_to_file(capsys, files, tmp_path):
    out = tmp_path / "t.dot"
    code, doc, _ = run(
        capsys, "optimize", files("g.txt", serialize_graph(spider(2))), "--emit", "dot", "--out", str(out), "--verbose"
    )
    assert code == 0 and doc["artifact"] == {"format": "dot", "path": str(out)}
    assert doc["moves"] == []
    text = out.read_text()
    assert text.startswith("graph T {") and text.count("shape=box") == 2


def test_optimize_budget_exit(capsys, files):
    g = files("g.txt", serialize_graph(complete_bipartite(4, 6)))
    code, doc, _ = run(capsys, "optimize", g, "--max-iters", "0", "--seed", "1")
    assert code == 5
    assert doc["search"]["error"] == "budget exhausted"


def test_optimize_verbose_move_log(capsys, files):
    g = files("g.txt", serialize_graph(complete_bipartite(4, 6)))
    _, doc, _ = run(capsys, "optimize", g, "--verbose", "--seed", "1")
    assert doc["search"]["iterations"] == len(doc["moves"]) > 0
    assert {"kind", "add", "delete", "potential"} <= set(doc["moves"][0])


def test_oracle_command(capsys, files):
    code, doc, _ = run(capsys, "oracle", files("g.txt", serialize_graph(complete_bipartite(3, 5))))
    assert code == 0
    assert doc["oracle"]["tree_count"] == 2025
    assert (doc["oracle"]["min_leaves"], doc["oracle"]["min_branch"]) == (3, 1)
    assert doc["theorems"]["k_ended_ok"] is True


def test_oracle_cap_exit(capsys, files):
    code, doc, _ = run(capsys, "oracle", files("g.txt", serialize_graph(complete_bipartite(3, 5))), "--cap", "100")
    assert code == 6 and doc["oracle"]["tree_count"] == 2025


@pytest.mark.parametrize(
    "family, params, n, m",
    [
        ("bipartite", ["3", "5"], 8, 15),
        ("spider", ["3"], 8, 7),
        ("path", ["4"], 4, 3),
        ("cycle", ["5"], 5, 5),
        ("complete", ["4"], 4, 6),
        ("random", ["5", "1"], 5, 10),
    ],
)
def test_gen(capsys, tmp_path, family, params, n, m):
    out = tmp_path / "g.txt"
    code, doc, _ = run(capsys, "gen", family, *params, "--out", str(out))
    assert code == 0
    g = parse_graph(out.read_text())
    assert (g.n, g.m) == (n, m)
    assert doc["input"] == {"n": n, "m": m}


def test_gen_ore_to_stdout(capsys):
    code, doc, _ = run(capsys, "gen", "ore", "8", "2", "--seed", "4")
    g = parse_graph(doc["graph"])
    assert code == 0 and doc["ore_profile"]["k_min"] <= 2 and g.n == 8


def test_gen_bad_params(capsys):
    assert run(capsys, "gen", "spider", "x")[0] == 2
    assert run(capsys, "gen", "bipartite", "3")[0] == 2
    assert run(capsys, "gen", "spider", "0")[0] == 2


def test_verify_path_tree_of_c5(capsys, files):
    g = files("g.txt", serialize_graph(cycle(5)))
    t = files("t.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n")
    code, doc, _ = run(capsys, "verify", g, t)
    assert code == 0 and doc["valid"]
    assert doc["tree"]["f"] == 2
    assert all(doc["bounds"][f"thm{i}_ok"] for i in (1, 2, 3))


def test_verify_double_star_reports_failures(capsys, files):
    g = files("g.txt", serialize_graph(complete_bipartite(3, 5)))
    t = files("t.txt", "8 7\n0 3\n0 4\n0 5\n0 6\n0 7\n1 3\n2 3\n")
    code, doc, _ = run(capsys, "verify", g, t)
    assert code == 0 and doc["valid"]
    # f = 6, branch vertices 0 (degree 5) and 3 (degree 3)
    assert (doc["tree"]["f"], doc["tree"]["b"], doc["tree"]["s"]) == (6, 2, 8)
    assert not doc["bounds"]["thm1_ok"] and not doc["bounds"]["thm2_ok"] and not doc["bounds"]["thm3_ok"]


def test_verify_invalid_trees(capsys, files):
    g = files("g.txt", serialize_graph(cycle(5)))
    assert run(capsys, "verify", g, files("a.txt", "5 3\n0 1\n1 2\n2 3\n"))[0] == 7
    assert run(capsys, "verify", g, files("b.txt", "5 4\n0 2\n1 2\n2 3\n3 4\n"))[0] == 7
    assert run(capsys, "verify", g, files("c.txt", "4 3\n0 1\n1 2\n2 3\n"))[0] == 7
    assert run(capsys, "verify", g, files("d.txt", "5 4\n0 1\n"))[0] == 2


def test_quiet_off_summary(capsys, files):
    _, _, out = run(capsys, "analyze", files("g.txt", serialize_graph(spider(3))), "--quiet-off")
    assert "sigma2=2 k_min=7" in out.err
    _, _, out = run(capsys, "analyze", files("g.txt", serialize_graph(spider(3))))
    assert out.err == ""


def test_bench_table(capsys):
    code = main(["bench", "--family", "spider", "--sizes", "8,10", "--seeds", "1"])
    lines = capsys.readouterr().out.splitlines()
    assert code == 0
    assert lines[0].split() == ["family", "n", "seed", "m", "k_min", "f", "b", "s", "iters", "cert", "seconds"]
    assert len(lines) == 3
    assert lines[1].split()[:9] == ["spider", "8", "0", "7", "7", "5", "3", "9", "0"]


def test_reports_are_byte_identical(files):
    g = files("g.txt", serialize_graph(complete_bipartite(4, 6)))
    cmd = [sys.executable, "-m", "oretree", "optimize", g, "--seed", "2", "--verbose"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["schema"] == 1
