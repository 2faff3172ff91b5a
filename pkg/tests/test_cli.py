import json
import subprocess
import sys

import pytest

from endscope.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


GOOD = {"kind": "metric", "points": ["a", "b", "c"], "d": [[0, 1, 2], [1, 0, 1], [2, 1, 0]],
        "rho": {"kind": "sites", "sites": [{"point": "a", "delta": "1/2"}]}}
BAD = {"kind": "metric", "points": ["a", "b", "c"], "d": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]}


def test_validate_good_file(tmp_path, capsys):
    code, out, _ = run(["validate", write(tmp_path, "g.json", GOOD)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["valid"] is True
    assert rep["rho"]["values"] == [["a", "1/2"], ["b", "1/1"], ["c", "2/1"]]
    assert rep["input"]["d"][0] == ["0/1", "1/1", "2/1"]


def test_validate_triangle_violation(tmp_path, capsys):
    code, out, _ = run(["validate", write(tmp_path, "b.json", BAD)], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["valid"] is False
    assert "triangle" in json.dumps(rep["validation"])


def test_validate_lipschitz_failure(tmp_path, capsys):
    obj = dict(GOOD, rho={"kind": "explicit", "values": ["5", "1", "1"]})
    code, out, _ = run(["validate", write(tmp_path, "l.json", obj)], capsys)
    assert code == 1 and json.loads(out)["rho"]["lipschitz"]["pass"] is False


def test_parse_error_reports_position(tmp_path, capsys):
    code, _, err = run(["validate", write(tmp_path, "p.json", '{"kind": "metric",\n  "points": [1,}')], capsys)
    assert code == 2 and "line 2" in err


def test_schema_errors_enumerated(tmp_path, capsys):
    code, _, err = run(["validate", write(tmp_path, "s.json", {"kind": "metric", "points": [1]})], capsys)
    assert code == 2 and "d" in err


def test_usage_errors(capsys):
    assert run(["validate"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["ends", "--catalog", "nosuch"], capsys)[0] == 2
    assert run(["ends", "--catalog", "line", "--radii", "1,2"], capsys)[0] == 2


def test_validate_catalog_paper_example(capsys):
    code, out, _ = run(["validate", "--catalog", "paper_example", "--params", "m=12", "w=1/10", "--level", "5"],
                       capsys)
    assert code == 0 and json.loads(out)["valid"] is True


def test_rho_command(capsys):
    code, out, _ = run(["rho", "--catalog", "paper_example", "--params", "m=4", "--level", "2"], capsys)
    rep = json.loads(out)
    assert code == 0 and {v for _, v in rep["rho"]["values"]} == {"1/1"}
    assert rep["rho"]["heine_borel"] is False


def test_components_with_dot(tmp_path, capsys):
    dot = tmp_path / "r.dot"
    code, out, _ = run(["components", write(tmp_path, "g.json", GOOD), "--dot", str(dot)], capsys)
    rep = json.loads(out)
    assert code == 0 and dot.read_text().startswith("digraph")
    assert [c["tag"] for c in rep["components"]["classes"]] == ["non-compact", "compact", "compact"]
    assert rep["digraph_arcs"] == [["c", "b"]]


def test_ends_command(capsys):
    code, out, _ = run(["ends", "--catalog", "line", "--levels", "5..12"], capsys)
    assert code == 0 and json.loads(out)["ends"]["describe"] == "finite(2)"
    code, out, _ = run(["ends", "--catalog", "tree", "--params", "k=3", "--levels", "5..9"], capsys)
    assert json.loads(out)["ends"]["describe"] == "unbounded"


def test_jspace_command(capsys):
    code, out, _ = run(["jspace", "--catalog", "grid"], capsys)
    assert code == 0 and json.loads(out)["jspace"]["j_space"] is True


@pytest.mark.parametrize("argv,verdict", [
    (["--catalog", "paper_example", "--params", "m=12", "w=1/10", "--level", "5"], "pass"),
    (["--catalog", "line", "--level", "4"], "inapplicable"),
    (["--catalog", "grid", "--level", "4"], "pass"),
])
def test_theorem1_command(argv, verdict, capsys):
    code, out, _ = run(["theorem1"] + argv, capsys)
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == verdict
    if verdict == "pass" and "paper_example" in argv:
        assert [r["replayed"] for r in rep["witness_replay"]] == [True]


def test_iso_finite_and_symbolic(tmp_path, capsys):
    code, out, _ = run(["iso", write(tmp_path, "g.json", GOOD)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["group"]["order"] == 1
    assert rep["checks"] == {"rho_invariant": True, "class_equivariant": True}
    code, out, _ = run(["iso", "--catalog", "paper_example", "--params", "m=6", "--level", "3"], capsys)
    rep = json.loads(out)
    assert all(g["preserves_distances"] for g in rep["generators"])
    assert [s["infinite"] for s in rep["stabilizers"]] == [False, True]


def test_catalog_list(capsys):
    code, out, _ = run(["catalog", "list"], capsys)
    assert code == 0 and "paper_example" in {f["name"] for f in json.loads(out)["families"]}


def test_json_flag_and_byte_stability(tmp_path, capsys):
    argv = ["theorem1", "--catalog", "paper_example", "--params", "m=5", "--level", "3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--json", str(a)]) == 0
    assert main(argv + ["--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["verdict"] == "pass"


def test_no_float_literals_in_reports(capsys):
    _, out, _ = run(["components", "--catalog", "paper_example", "--params", "m=4", "--level", "2"], capsys)

    def walk(x):
        if isinstance(x, dict):
            return all(walk(v) for v in x.values())
        if isinstance(x, list):
            return all(walk(v) for v in x)
        return not isinstance(x, float)
    assert walk(json.loads(out))


def test_console_script_module_entry():
    proc = subprocess.run([sys.executable, "-m", "endscope.cli", "catalog", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["command"] == "catalog list"


def test_env_bound_for_iso(tmp_path, capsys, monkeypatch):
    n = 6
    obj = {"kind": "metric", "points": list(range(n)), "d": [[abs(i - j) for j in range(n)] for i in range(n)]}
    monkeypatch.setenv("ENDSCOPE_MAX_N", "4")
    code, _, err = run(["iso", write(tmp_path, "c.json", obj)], capsys)
    assert code == 1 and "BoundExceeded" in err
