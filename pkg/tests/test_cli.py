import json
import math
import subprocess
import sys

import pytest

from hs_inscribe import acceptance, cli, hs_metric, ideal_polyhedron, reports
from hs_inscribe.colors import Color


def corpus_path(name):
    from importlib import resources
    return str(resources.files("hs_inscribe") / "corpus" / name)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_graph_wheel(capsys):
    code, out, _ = run(["check-graph", corpus_path("wheel4.json")], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["C2"]["reason"] == "apex dominates"


def test_check_graph_cube(capsys):
    code, out, _ = run(["check-graph", corpus_path("cube_matching.json")], capsys)
    rep = json.loads(out)
    assert code == 0
    w = {(e["u"], e["v"]): e["weight"] for e in rep["synthesized"]["edges"]}
    colors = {(e["u"], e["v"]): e["color"] for e in rep["synthesized"]["edges"]}
    for e, x in w.items():
        assert (x["num"], x["den"]) == ((1, 1) if colors[e] == "r" else (-2, 1))


def test_check_graph_nested(capsys):
    code, out, _ = run(["check-graph", corpus_path("nested_squares_reconstruction.json")], capsys)
    rep = json.loads(out)
    assert code == 1
    assert rep["LP"]["certificate"]["verified"]
    assert "reconstructed" in rep["note"]
    assert rep["C2"]["failing_edges"] == [[0, 5], [2, 7]]


def test_check_graph_not_polyhedral(capsys):
    code, out, _ = run(["check-graph", corpus_path("square_not_polyhedral.json")], capsys)
    assert code == 1 and json.loads(out)["polyhedral"] is False


def test_check_graph_given_weights(tmp_path, capsys):
    obj = json.loads(open(corpus_path("cube_matching.json")).read())
    for e in obj["edges"]:
        red = (e["u"] < 4) == (e["v"] < 4)
        e["weight"] = {"num": 1 if red else -2, "den": 8, "pi": True}
    path = tmp_path / "w.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(["check-graph", str(path)], capsys)
    assert code == 0 and json.loads(out)["given_weights_check"]["ok"]
    obj["edges"][0]["weight"]["num"] = 3
    path.write_text(json.dumps(obj))
    code, out, _ = run(["check-graph", str(path)], capsys)
    assert code == 1


@pytest.mark.parametrize("content", ["{not json", json.dumps({"n": 2}), json.dumps({"n": 3, "edges": [{"u": 0}]})])
def test_malformed_exit_2(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(["check-graph", str(path)], capsys)
    assert code == 2 and "error" in json.loads(err)


def test_missing_file_and_usage(capsys):
    assert run(["verify", "/nonexistent.json"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["generate", "1", "4"], capsys)[0] == 2


def test_bad_env_tol(monkeypatch, capsys):
    monkeypatch.setenv("HS_INSCRIBE_TOL", "abc")
    assert run(["verify", corpus_path("poly_1_4.json")], capsys)[0] == 2


def test_generate_verify_pipe(tmp_path, capsys):
    path = tmp_path / "pyr.json"
    assert run(["generate", "1", "4", "2.0", "-o", str(path)], capsys)[0] == 0
    code, out, _ = run(["verify", str(path)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    apex = [v for v in range(5) if rep["labels"][v].endswith("+")][0]
    assert float(rep["A2"]["vertex_sums"][str(apex)]) == pytest.approx(-2 * math.pi, abs=1e-9)


def test_verify_3_4_blue_sum(capsys):
    code, out, _ = run(["verify", corpus_path("poly_3_4.json")], capsys)
    rep = json.loads(out)
    assert code == 0
    assert -2 * math.pi < rep["A3"]["blue_sum"] < 0
    assert rep["A3_literal"]["pass"] is False


def test_verify_off_quadric(capsys):
    code, _, err = run(["verify", corpus_path("off_quadric.json")], capsys)
    assert code == 2 and json.loads(err)["error"] == "NotOnQuadric"


def test_verify_degenerate_exit_1(tmp_path, capsys):
    path = tmp_path / "flat.json"
    one_sheet = [[math.cos(a), math.sin(a), math.sqrt(2), 1] for a in (0, 1, 2, 3)]
    path.write_text(json.dumps({"vertices": one_sheet}))
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 1 and json.loads(out)["error"] == "StronglyIdeal"


def test_generate_seed_reproducible(capsys):
    _, a, _ = run(["generate", "3", "3", "2.0", "--seed", "7"], capsys)
    _, b, _ = run(["generate", "3", "3", "2.0", "--seed", "7"], capsys)
    _, c, _ = run(["generate", "3", "3", "2.0", "--seed", "8"], capsys)
    assert a == b != c


def test_generate_deform_heights(capsys):
    code, out, _ = run(["generate", "2", "5", "1.5", "--deform", "1.2"], capsys)
    assert code == 0
    assert all(abs(abs(x[2]) - 1.2) < 1e-12 for x in json.loads(out)["vertices"])


def test_horogon(capsys):
    code, out, _ = run(["horogon", "--cone-angle", corpus_path("two_gon.json")], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["cone_angle"] < 2 * math.pi


def test_horogon_deform(capsys):
    _, out, _ = run(["horogon", corpus_path("pentagon.json"), "--deform", "1.0"], capsys)
    rep = json.loads(out)
    for a, b in zip(rep["deform"]["vertices_disk"], rep["vertices_disk"]):
        assert a == pytest.approx(b, abs=1e-12)
    _, out, _ = run(["horogon", corpus_path("pentagon.json"), "--deform", "0.5"], capsys)
    assert json.loads(out)["deform"]["common_horocycle_residual"] < 1e-9


def test_text_format(capsys):
    code, out, _ = run(["check-graph", "--format", "text", corpus_path("wheel4.json")], capsys)
    assert code == 0 and "C2.reason: \"apex dominates\"" in out


def test_corpus_listing(capsys):
    code, out, _ = run(["corpus"], capsys)
    assert code == 0 and "index.json" in json.loads(out)["files"]


def test_manifest_exit_codes():
    for entry in acceptance.corpus_manifest():
        args = [entry["command"], *entry["args"], corpus_path(entry["file"])]
        got = subprocess.run([sys.executable, "-m", "hs_inscribe.cli", *args], capture_output=True).returncode
        assert got == entry["exit"], entry["file"]


def test_corpus_run_all_deterministic(capsys):
    code1, out1, _ = run(["corpus", "--run-all", "--seed", "3"], capsys)
    code2, out2, _ = run(["corpus", "--run-all", "--seed", "3"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_corpus_mutation_sign_bug(monkeypatch, capsys):
    """A sign slip in the angle formula must turn the corpus run red."""
    good = ideal_polyhedron.dihedral_angles

    def buggy(poly, tol=1e-9):
        g = good(poly, tol)
        g.weights = {e: (abs(w) if g.colors[e] is Color.BLUE else w) for e, w in g.weights.items()}
        return g

    for mod in (ideal_polyhedron, reports, acceptance, hs_metric):
        monkeypatch.setattr(mod, "dihedral_angles", buggy)
    code, out, _ = run(["corpus", "--run-all"], capsys)
    rep = json.loads(out)
    assert code == 1
    assert any(f["exit"] == 1 and f["command"] == "verify" for f in rep["files"])
    _, out, _ = run(["verify", corpus_path("poly_3_4.json")], capsys)
    assert json.loads(out)["A2"]["pass"] is False
