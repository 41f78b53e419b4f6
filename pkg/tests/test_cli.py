import json
import subprocess
import sys

import pytest

from polysew import cyclic_polytope, sew_bbp_oracle, tower_from_labels
from polysew.cli import main, parse_script
from polysew.formats import ParseError, read_polytope


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c74_file(tmp_path, capsys):
    path = tmp_path / "c74.json"
    assert run(capsys, "gen-cyclic", 7, 4, "-o", path)[0] == 0
    return path


class TestGenCyclic:
    def test_c64(self, tmp_path, capsys):
        code, out, _ = run(capsys, "gen-cyclic", 6, 4, "-o", tmp_path / "c.json")
        assert code == 0 and "9 facets" in out
        P, meta = read_polytope(tmp_path / "c.json")
        assert len(P.facets) == 9
        assert meta["generator"] == {"kind": "cyclic", "n": 6, "d": 4}

    def test_pentagon_text(self, tmp_path, capsys):
        assert run(capsys, "gen-cyclic", 5, 2, "-o", tmp_path / "p.txt")[0] == 0
        assert (tmp_path / "p.txt").read_text().startswith("dim 2\nlabels 0 1 2 3 4\n")

    def test_bad_parameters(self, tmp_path, capsys):
        code, _, err = run(capsys, "gen-cyclic", 3, 4, "-o", tmp_path / "x.json")
        assert code == 1 and "BadParameters" in err


class TestVerify:
    def test_c74(self, c74_file, capsys):
        code, out, _ = run(capsys, "verify", c74_file, "--neighbourly", "--facet-formula")
        assert code == 0
        assert "14 facets = C(5,2)+C(4,1)" in out

    def test_universal_dims(self, c74_file, capsys):
        code, out, _ = run(capsys, "verify", c74_file, "--universal-dims", 1)
        assert code == 0 and "universal 1-faces: 7" in out

    def test_broken_file(self, c74_file, tmp_path, capsys):
        doc = json.loads(c74_file.read_text())
        doc["facets"].pop(0)
        broken = tmp_path / "broken.json"
        broken.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", broken)
        assert code == 1 and "BadRidge" in out

    def test_not_neighbourly(self, tmp_path, capsys):
        facets = [[2 * i + (b >> i & 1) for i in range(4)] for b in range(16)]
        doc = {"format": "polysew-polytope", "version": 1, "dim": 4,
               "labels": [str(i) for i in range(8)], "facets": [[str(v) for v in F] for F in facets]}
        path = tmp_path / "cross.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", path, "--neighbourly")
        assert code == 1 and "neighbourly: NO" in out

    def test_missing_file(self, tmp_path, capsys):
        assert run(capsys, "verify", tmp_path / "nope.json")[0] == 2

    def test_garbage(self, tmp_path, capsys):
        path = tmp_path / "g.json"
        path.write_text("{")
        assert run(capsys, "verify", path)[0] == 2


class TestSew:
    def test_auto_with_oracle(self, c74_file, tmp_path, capsys):
        out_path = tmp_path / "s.json"
        code, out, _ = run(capsys, "sew", c74_file, "--auto", "-o", out_path, "--oracle-check")
        assert code == 0 and "oracle check: pass" in out
        P, meta = read_polytope(out_path)
        assert P.n == 8 and len(P.facets) == 20
        assert meta["history"][-1]["auto"] is True
        code, out, _ = run(capsys, "verify", out_path, "--neighbourly", "--facet-formula")
        assert code == 0 and "20 facets" in out

    def test_explicit_tower_and_tracking(self, c74_file, tmp_path, capsys):
        out_path = tmp_path / "s.txt"
        code, out, _ = run(capsys, "sew", c74_file, "--tower", "0,1;2,3", "--label", "new",
                           "-o", out_path, "--track-universal")
        assert code == 0
        side = json.loads((tmp_path / "s.txt.universal.json").read_text())
        assert side["dim"] == 4
        assert ["0", "new"] in side["faces"]["1"]
        P, _ = read_polytope(out_path)
        base = cyclic_polytope(7, 4)
        assert P.facets == sew_bbp_oracle(base, tower_from_labels(base, [("0", "1"), ("2", "3")]), "new").facets

    def test_too_few_vertices(self, tmp_path, capsys):
        run(capsys, "gen-cyclic", 6, 4, "-o", tmp_path / "c.json")
        code, _, err = run(capsys, "sew", tmp_path / "c.json", "--auto", "-o", tmp_path / "o.json")
        assert code == 1 and "TooFewVertices" in err

    def test_rejected_tower(self, c74_file, tmp_path, capsys):
        code, _, err = run(capsys, "sew", c74_file, "--tower", "0,2;3,5", "-o", tmp_path / "o.json")
        assert code == 1 and "NotUniversalAtLevel" in err

    def test_bad_tower_syntax(self, c74_file, tmp_path, capsys):
        assert run(capsys, "sew", c74_file, "--tower", "0;1", "-o", tmp_path / "o.json")[0] == 2

    def test_oracle_mismatch_exit_code(self, c74_file, tmp_path, capsys, monkeypatch):
        import polysew.cli as cli

        def broken(P, T, label):
            Q = sew_bbp_oracle(P, T, label)
            return type(Q)(Q.dim, Q.labels, Q.facets[1:])

        monkeypatch.setattr(cli, "sew_bbp_oracle", broken)
        code, _, err = run(capsys, "sew", c74_file, "--auto", "-o", tmp_path / "o.json", "--oracle-check")
        assert code == 3 and "mismatch" in err
        assert not (tmp_path / "o.json").exists()


class TestTowers:
    def test_c74(self, c74_file, capsys):
        code, out, _ = run(capsys, "towers", c74_file, "--limit", 10)
        lines = out.splitlines()
        assert code == 0 and len(lines) == 10
        assert lines[0] == "0,1;2,3"

    def test_c64_warns(self, tmp_path, capsys):
        run(capsys, "gen-cyclic", 6, 4, "-o", tmp_path / "c.json")
        code, out, err = run(capsys, "towers", tmp_path / "c.json")
        assert code == 0 and out.strip() and "warning" in err

    def test_not_neighbourly(self, tmp_path, capsys):
        facets = [[2 * i + (b >> i & 1) for i in range(4)] for b in range(16)]
        path = tmp_path / "cross.txt"
        path.write_text("dim 4\nlabels " + " ".join(map(str, range(8))) + "\n"
                        + "".join("facet " + " ".join(map(str, F)) + "\n" for F in facets))
        code, _, err = run(capsys, "towers", path)
        assert code == 1 and "NotNeighbourly" in err


class TestPipeline:
    SCRIPT = "generate 7 4\nsew-auto\nverify\nsew-auto\nverify\nsew-auto\nverify\nreport\n"

    def test_three_sews(self, tmp_path, capsys):
        script = tmp_path / "p.txt"
        script.write_text(self.SCRIPT)
        code, out, _ = run(capsys, "pipeline", script, "-o", tmp_path / "final.json")
        assert code == 0
        P, meta = read_polytope(tmp_path / "final.json")
        assert P.n == 10 and len(P.facets) == 35
        assert [h["label"] for h in meta["history"]] == ["s1", "s2", "s3"]
        assert out.count(": pass") == 3

    def test_deterministic(self, tmp_path, capsys):
        script = tmp_path / "p.txt"
        script.write_text(self.SCRIPT + "write " + str(tmp_path / "mid.txt") + "\n")
        run(capsys, "pipeline", script, "-o", tmp_path / "a.json")
        first = (tmp_path / "a.json").read_bytes(), (tmp_path / "mid.txt").read_bytes()
        run(capsys, "pipeline", script, "-o", tmp_path / "a.json")
        assert ((tmp_path / "a.json").read_bytes(), (tmp_path / "mid.txt").read_bytes()) == first

    def test_empty(self, tmp_path, capsys):
        script = tmp_path / "e.txt"
        script.write_text("# nothing\n")
        assert run(capsys, "pipeline", script)[0] == 0

    def test_explicit_sew_step(self, tmp_path, capsys):
        script = tmp_path / "p.txt"
        script.write_text("generate 7 4\nsew 0,1;2,3 a\nsew 0,a;1,2\nverify\n")
        code, out, _ = run(capsys, "pipeline", script)
        assert code == 0 and "a through 0,1;2,3" in out and "s2 through 0,a;1,2" in out

    def test_undefined_label_before_running(self, tmp_path, capsys):
        script = tmp_path / "p.txt"
        out_file = tmp_path / "never.json"
        script.write_text(f"generate 7 4\nwrite {out_file}\nsew 0,1;q,3\n")
        code, _, err = run(capsys, "pipeline", script)
        assert code == 2 and "undefined label 'q'" in err
        assert not out_file.exists()

    def test_parse_errors(self):
        for text in ("sew-auto\n", "generate 7\n", "generate 7 4\nfly\n", "generate 7 4\nsew-auto 3\n"):
            with pytest.raises(ParseError):
                parse_script(text)

    def test_later_label_is_visible(self):
        steps = parse_script("generate 7 4\nsew-auto\nsew s1,0;1,2\n")
        assert steps[-1].args == [[("s1", "0"), ("1", "2")], "s2"]


class TestBench:
    def test_single_row(self, capsys):
        code, out, _ = run(capsys, "bench", 7, 8, "--repeats", 1)
        assert code == 0
        rows = [ln for ln in out.splitlines() if ln.strip() and ln.split()[0].isdigit()]
        assert len(rows) == 1 and rows[0].split()[:2] == ["7", "14"]

    def test_vertex_guard(self, capsys):
        code, _, err = run(capsys, "bench", 6, 10)
        assert code == 1 and "TooFewVertices" in err

    def test_bad_range(self, capsys):
        assert run(capsys, "bench", 9, 8)[0] == 2


def test_console_script_module():
    res = subprocess.run([sys.executable, "-m", "polysew.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "polysew" in res.stdout


def test_usage_error_exit_code():
    res = subprocess.run([sys.executable, "-m", "polysew.cli", "sew"], capture_output=True, text=True)
    assert res.returncode == 2
