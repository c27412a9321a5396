import json
import subprocess
import sys
from pathlib import Path

import pytest

import permorb
import permorb.cli
import permorb.covering
from permorb.cli import main
from permorb.schema import bundled_ring, dumps, load_problem, ring_to_dict
from permorb.sewing import FactorizationReport

EXAMPLES = Path(permorb.__file__).parent / "data" / "examples"
FIGURE2 = str(EXAMPLES / "figure2.json")
LEFT = str(EXAMPLES / "sew_pair" / "left.json")
RIGHT = str(EXAMPLES / "sew_pair" / "right.json")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def write_problem(tmp_path, name, perms, size, labels=None, ring="ising"):
    obj = {
        "format_version": 1,
        "ground": {"size": size},
        "points": [{"id": f"{name}{i}", "perm": p} for i, p in enumerate(perms)],
    }
    if labels is not None:
        obj["assignment"] = [
            {"point": f"{name}{i}", "orbit": orbit, "label": lab}
            for i, per_point in enumerate(labels) for orbit, lab in per_point.items()
        ]
    if ring is not None:
        obj["ring"] = ring
    path = tmp_path / f"{name}.json"
    path.write_text(dumps(obj))
    return str(path)


class TestCover:
    def test_figure2(self, capsys):
        code, out, _ = run(capsys, "cover", FIGURE2)
        assert code == 0 and "genus: 1" in out

    def test_identity(self, capsys, tmp_path):
        path = write_problem(tmp_path, "e", ["()", "id"], 3, ring=None)
        code, out, _ = run(capsys, "cover", path)
        assert code == 0 and out.count("genus: 0") == 3

    def test_inadmissible(self, capsys, tmp_path):
        path = write_problem(tmp_path, "bad", ["(1 2)", "(2 3)"], 3, ring=None)
        code, out, err = run(capsys, "cover", path)
        assert code == 2
        assert "(1 2 3)" in err or "(1 3 2)" in err
        code, out, _ = run(capsys, "--format", "json", "cover", path)
        assert code == 2 and json.loads(out)["error"] == "not_admissible"

    def test_dot_and_json(self, capsys):
        code, out, _ = run(capsys, "cover", FIGURE2, "--dot")
        assert code == 0 and out.startswith("graph covering {")
        code, out, _ = run(capsys, "cover", FIGURE2, "--format", "json")
        obj = json.loads(out)
        assert obj["components"][0]["genus"] == 1
        assert [b["index"] for b in obj["components"][0]["branches"]] == [2, 2, 2, 2]
        _, again, _ = run(capsys, "cover", FIGURE2, "--format", "json")
        assert again == out

    def test_quiet(self, capsys):
        assert run(capsys, "cover", FIGURE2, "--quiet")[1] == "genera: 1\n"

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "cover", tmp_path / "nope.json")
        assert code == 3 and err.startswith("permorb: error:")

    def test_schema_error(self, capsys, tmp_path):
        path = tmp_path / "p.json"
        path.write_text('{"format_version": 1, "ground": {"size": 2}, "points": [], "junk": 0}')
        assert run(capsys, "cover", path)[0] == 3

    def test_internal_consistency(self, capsys, monkeypatch):
        monkeypatch.setattr(permorb.covering, "genus_from_orbit_counts", lambda d, c: 99)
        code, _, err = run(capsys, "cover", FIGURE2)
        assert code == 70 and "disagree" in err


class TestDim:
    def test_figure2(self, capsys):
        code, out, _ = run(capsys, "dim", FIGURE2)
        assert code == 0
        assert out == "component {1, 2}: N(1; sigma, sigma, sigma, sigma) = 8\ndimension: 8\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "dim", FIGURE2, "--format", "json")
        assert json.loads(out) == {
            "components": [{"orbit": ["1", "2"], "genus": 1, "labels": ["sigma"] * 4, "factor": 8}],
            "dimension": 8,
        }

    def test_trivial_ring_override(self, capsys, tmp_path):
        path = write_problem(tmp_path, "t", ["(1 2)", "(1 2)"], 2, [{1: "1"}, {1: "1"}])
        assert run(capsys, "dim", path, "--ring", "trivial")[1].endswith("dimension: 1\n")

    def test_three_point_matches_table(self, capsys, tmp_path):
        path = write_problem(tmp_path, "s", ["(1 2)", "(1 2)", "()"], 2,
                             [{1: "sigma"}, {1: "sigma"}, {1: "1", 2: "1"}])
        code, out, _ = run(capsys, "dim", path, "--quiet")
        _, table, _ = run(capsys, "table", "ising", "--size", 2, "--g1", "(1 2)", "--g2", "(1 2)",
                          "--format", "json")
        rows = json.loads(table)["rows"]
        entry = next(r for r in rows if r["in1"] == {"1": "sigma"} and r["in2"] == {"1": "sigma"}
                     and r["out"] == {"1": "1", "2": "1"})
        assert code == 0 and int(out) == entry["dim"] == 1

    def test_incomplete(self, capsys, tmp_path):
        path = write_problem(tmp_path, "i", ["(1 2)", "(1 2)"], 2, [{1: "sigma"}])
        assert run(capsys, "dim", path)[0] == 4

    def test_no_ring(self, capsys, tmp_path):
        path = write_problem(tmp_path, "n", ["()"], 1, [{1: "1"}], ring=None)
        assert run(capsys, "dim", path)[0] == 3

    def test_bad_label(self, capsys, tmp_path):
        path = write_problem(tmp_path, "b", ["()"], 1, [{1: "tau"}])
        assert run(capsys, "dim", path)[0] == 3


class TestTable:
    def test_size_one(self, capsys):
        code, out, _ = run(capsys, "table", "fibonacci", "--size", 1, "--g1", "()", "--g2", "()", "--csv")
        assert code == 0
        assert out.splitlines()[1:] == [
            "(1: 1),(1: 1),(1: 1),1", "(1: 1),(1: 1),(1: tau),0",
            "(1: 1),(1: tau),(1: 1),0", "(1: 1),(1: tau),(1: tau),1",
            "(1: tau),(1: 1),(1: 1),0", "(1: tau),(1: 1),(1: tau),1",
            "(1: tau),(1: tau),(1: 1),1", "(1: tau),(1: tau),(1: tau),1",
        ]

    def test_blowup(self, capsys):
        code, _, err = run(capsys, "table", "ising", "--size", 4, "--g1", "()", "--g2", "()", "--cap", 100)
        assert code == 5 and "100" in err

    def test_bad_cycle(self, capsys):
        assert run(capsys, "table", "ising", "--size", 2, "--g1", "(1 3)", "--g2", "()")[0] == 3


class TestSew:
    def test_sigma_pair(self, capsys, tmp_path):
        out_path = tmp_path / "sewn.json"
        code, out, _ = run(capsys, "sew", LEFT, RIGHT, "-o", out_path, "--check-covering", "--check-factorization")
        assert code == 0
        assert "covering check: OK (components 1, genera [1])" in out
        assert "factorization check: LHS = 8 = RHS = 8 (OK)" in out
        sewn = load_problem(out_path)
        assert [p.id for p in sewn.data.points] == ["x1", "x2", "y1", "y2"]
        code, out, _ = run(capsys, "dim", out_path, "--quiet")
        assert (code, out) == (0, "8\n")

    def test_two_point_involutions(self, capsys, tmp_path):
        a = write_problem(tmp_path, "a", ["(1 2)", "(1 2)"], 2, [{1: "sigma"}, {1: "sigma"}])
        b = write_problem(tmp_path, "b", ["(1 2)", "(1 2)"], 2, [{1: "sigma"}, {1: "sigma"}])
        code, out, _ = run(capsys, "sew", a, b, "--check-covering", "--check-factorization", "--format", "json")
        obj = json.loads(out)
        assert code == 0
        assert obj["checks"]["covering"]["equal"] and obj["checks"]["factorization"]["equal"]
        assert [p["perm"] for p in obj["sewn"]["points"]] == ["(1 2)", "(1 2)"]

    def test_three_point_sides(self, capsys, tmp_path):
        labels = [{1: "sigma"}, {1: "sigma"}, {1: "1", 2: "eps"}]
        a = write_problem(tmp_path, "a", ["(1 2)", "(1 2)", "()"], 2, labels)
        b = write_problem(tmp_path, "b", ["(1 2)", "(1 2)", "()"], 2, labels)
        code, out, _ = run(capsys, "sew", a, b, "--check-factorization")
        assert code == 0 and "factorization check: LHS = 1 = RHS = 1 (OK)" in out

    def test_named_points(self, capsys):
        code, out, _ = run(capsys, "sew", LEFT, RIGHT, "--left-point", "x0", "--right-point", "y0",
                           "--format", "json")
        assert code == 0 and json.loads(out)["sewn"]["sewing"]["left_point"] == "x0"
        assert run(capsys, "sew", LEFT, RIGHT, "--left-point", "zz")[0] == 3

    def test_mismatch(self, capsys, tmp_path):
        a = write_problem(tmp_path, "a", ["(1 2 3)", "(1 3 2)"], 3)
        b = write_problem(tmp_path, "b", ["(1 2 3)", "(1 3 2)"], 3)
        code, _, err = run(capsys, "sew", a, b)
        assert code == 6 and "permorb: error:" in err

    def test_no_remaining(self, capsys, tmp_path):
        a = write_problem(tmp_path, "a", ["()"], 2)
        b = write_problem(tmp_path, "b", ["()", "()"], 2)
        assert run(capsys, "sew", a, b)[0] == 6

    def test_failed_check_exits_70(self, capsys, monkeypatch):
        monkeypatch.setattr(permorb.cli, "factorization_check", lambda *a, **k: FactorizationReport(8, 7, 9))
        code, out, err = run(capsys, "sew", LEFT, RIGHT, "--check-factorization")
        assert code == 70 and "MISMATCH" in out


class TestCheckRing:
    def test_valid(self, capsys):
        assert run(capsys, "check-ring", "ising") == (0, "OK\n", "")
        assert run(capsys, "check-ring", "trivial")[1] == "OK\n"

    def test_table(self, capsys):
        out = run(capsys, "check-ring", "ising", "--table")[1]
        assert "sigma x sigma = 1 + eps" in out

    def test_broken(self, capsys, tmp_path):
        obj = ring_to_dict(bundled_ring("ising"))
        obj["coeffs"] = [c for c in obj["coeffs"] if c[:3] != ["sigma", "sigma", "eps"]]
        obj["coeffs"].append(["sigma", "sigma", "eps", 2])
        path = tmp_path / "broken.json"
        path.write_text(dumps(obj))
        code, out, _ = run(capsys, "check-ring", path)
        assert code == 3
        assert "FAIL associativity at ('sigma', 'sigma', 'eps', '1')" in out
        code, out, _ = run(capsys, "check-ring", path, "--format", "json")
        assert not json.loads(out)["valid"]
        assert run(capsys, "table", path, "--size", 1, "--g1", "()", "--g2", "()")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "permorb", "cover", FIGURE2, "--quiet"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "genera: 1\n"


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    # usage errors share the bad-input code so that 2 always means inadmissible data
    assert err.value.code == 3
