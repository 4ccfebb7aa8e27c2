import json

import pytest

from hypercover.cli import build_table, main
from hypercover.constructions import ConstructionSpec, build
from hypercover.core import complete, dumps, loads, min_degree


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _strip_time(text: str) -> dict:
    d = json.loads(text)
    d.pop("timestamp")
    return d


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


class TestGen:
    def test_g4(self, capsys):
        code, out, _ = run(capsys, "gen", "g4", "--n", "8")
        G = loads(out)
        assert code == 0 and (G.n, G.m) == (8, 8)

    def test_g2(self, capsys):
        code, out, _ = run(capsys, "gen", "g2", "--k", "4")
        G = loads(out)
        assert code == 0 and (G.n, G.m) == (13, 52)
        assert "c apex 0" in out

    def test_g7(self, capsys):
        _, out, _ = run(capsys, "gen", "g7", "--n", "10")
        G = loads(out)
        assert G.n == 10 and min_degree(G, 1) == 8

    def test_round_trip(self, capsys):
        for name, n, k in (("g1", 7, None), ("g3", 12, None), ("g8", 11, 4), ("g9", 13, 3)):
            argv = ["gen", name, "--n", str(n)] + ([] if k is None else ["--k", str(k)])
            _, out, _ = run(capsys, *argv)
            spec = ConstructionSpec(int(name[1:]), n, k)
            assert loads(out) == build(spec).graph

    def test_bad_params(self, capsys):
        code, _, err = run(capsys, "gen", "g2", "--k", "3")
        assert code == 2 and "k >= 4" in err

    def test_to_file(self, capsys, tmp_path):
        path = tmp_path / "g.h3"
        assert run(capsys, "gen", "g5", "--n", "7", "--out", str(path))[0] == 0
        assert loads(path.read_text()) == build(ConstructionSpec(5, 7)).graph


class TestDetect:
    def test_g2_apex_uncovered(self, capsys, files):
        path = files("g2.h3", build(ConstructionSpec(2, k=4)).dumps())
        code, out, _ = run(capsys, "detect", path, "--pattern", "T")
        assert code == 1
        assert out.splitlines()[-1].split()[:2] == ["uncovered:", "0"]

    def test_complete_covered(self, capsys, files):
        code, out, _ = run(capsys, "detect", files("k5.h3", dumps(complete(5))), "--pattern", "T")
        assert code == 0 and out.splitlines()[-1] == "covering"

    def test_g6_apex_star_centre(self, capsys, files):
        path = files("g6.h3", build(ConstructionSpec(6, 9)).dumps())
        code, out, _ = run(capsys, "detect", path, "--pattern", "Skc:3", "--vertex", "0", "--format", "json")
        assert code == 1
        assert json.loads(out)["report"]["uncovered"] == [0]

    def test_parse_error_line(self, capsys, files):
        code, _, err = run(capsys, "detect", files("bad.h3", "p h3 5 2\ne 0 1 2\ne 0 1 2\n"), "--pattern", "T")
        assert code == 2 and "line 3" in err

    def test_pattern_file(self, capsys, files):
        g = files("k5.h3", dumps(complete(5)))
        pat = files("f.h3", "p h3 4 2\ne 0 1 2\ne 0 1 3\nr 3\n")
        assert run(capsys, "detect", g, "--pattern-file", pat)[0] == 0

    def test_missing_pattern(self, capsys, files):
        assert run(capsys, "detect", files("k5.h3", dumps(complete(5))))[0] == 2

    def test_missing_file(self, capsys):
        assert run(capsys, "detect", "/nonexistent.h3", "--pattern", "T")[0] == 2


class TestSearchCommands:
    def test_threshold(self, capsys):
        code, out, _ = run(capsys, "threshold", "--n", "5", "--pattern", "T", "--i", "2")
        assert code == 0 and out.strip() == "1"

    def test_threshold_expect(self, capsys):
        assert run(capsys, "threshold", "--n", "5", "--pattern", "P2", "--i", "2", "--expect", "1")[0] == 1

    def test_threshold_infeasible(self, capsys):
        code, _, err = run(capsys, "threshold", "--n", "8", "--pattern", "T", "--i", "2")
        assert code == 2 and "n <= 6" in err

    def test_threshold_budget(self, capsys):
        argv = ["threshold", "--n", "7", "--pattern", "T", "--i", "2", "--iso-reject", "--budget-seconds", "0.5"]
        code, out, _ = run(capsys, *argv)
        assert code == 2 and out.startswith("BudgetExceeded")

    def test_witness_exhausted(self, capsys):
        code, out, _ = run(capsys, "witness", "--n", "5", "--pattern", "T", "--i", "2", "--d", "2")
        assert code == 0 and out.strip() == "Exhausted"

    def test_witness_expectation_mismatch(self, capsys):
        argv = ["witness", "--n", "5", "--pattern", "T", "--i", "2", "--d", "1", "--expect", "exhausted"]
        assert run(capsys, *argv)[0] == 1

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["witness", "--n", "5", "--bogus"])
        assert exc.value.code == 2


class TestAudit:
    def test_codegree_path_audit(self, capsys):
        code, out, _ = run(capsys, "audit", "--theorem", "thm13", "--n", "8", "--samples", "20")
        assert code == 0 and "0 violations" in out

    def test_star_audit_at_seven_fails(self, capsys, tmp_path):
        # the stated range starts at n = 7, where counterexamples exist
        argv = ["audit", "--theorem", "s32", "--n", "7", "--samples", "500", "--seed", "7",
                "--format", "json", "--artifacts", str(tmp_path)]
        code, out, _ = run(capsys, *argv)
        rep = json.loads(out)["report"]
        assert code == 1 and rep["violations"] > 0
        for f in tmp_path.iterdir():
            assert min_degree(loads(f.read_text()), 2) >= 2

    def test_star_audit_at_eight(self, capsys):
        assert run(capsys, "audit", "--theorem", "s32", "--n", "8", "--samples", "200", "--seed", "7")[0] == 0

    def test_json_reproducible(self, capsys):
        argv = ["audit", "--theorem", "thm12ii", "--n", "12", "--samples", "30", "--seed", "5", "--format", "json"]
        a = run(capsys, *argv)[1]
        b = run(capsys, *argv)[1]
        assert _strip_time(a) == _strip_time(b)
        assert json.dumps(_strip_time(a), sort_keys=True) == json.dumps(_strip_time(b), sort_keys=True)
        cfg = json.loads(a)["config"]
        assert cfg["seed"] == 5 and "budget_seconds" in cfg

    def test_bad_densities(self, capsys):
        assert run(capsys, "audit", "--theorem", "thm13", "--n", "8", "--densities", "x")[0] == 2


@pytest.fixture(scope="module")
def rows():
    return {r["id"]: r for r in build_table(samples=5, seed=0)}


class TestTable:
    def test_codegree_path_row(self, rows):
        r = rows["thm1.3"]
        assert "c_2(n,P_2)=0" in r["claim"].replace(" ", "") and r["status"] == "pass"
        assert r["mode"].startswith("exact")

    def test_g8_row_flagged(self, rows):
        r = rows["obs3.7"]
        assert "flagged" in r["status"] or "flagged" in r["claim"]

    def test_unaudited_row(self, rows):
        assert rows["thm1.2(iv)"]["status"] == "not audited (unspecified O(n))"

    def test_command(self, capsys):
        code, out, _ = run(capsys, "table", "--samples", "2")
        assert code == 0 and "thm1.1" in out
