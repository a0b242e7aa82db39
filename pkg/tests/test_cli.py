import io as stdio
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hodgelab import io
from hodgelab.cli import main
from hodgelab.complex import octahedron
from hodgelab.expr import parse_and_eval
from hodgelab.integrate import unit_cube_chain

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

GREEN = "-x2*dx1 + x1*dx2"


def run(*argv):
    out = stdio.StringIO()
    code = main([str(a) for a in argv], stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


GOLDEN_RUNS = {
    "betti_octahedron.json": ("betti", "--complex", DATA / "octahedron.off"),
    "stokes_green.json": ("stokes", GREEN, "--chain", DATA / "unit_square.json"),
    "decompose_hollow.json": ("decompose", "--complex", DATA / "hollow_triangle.json",
                              "--cochain", DATA / "hollow_loop_cochain.json"),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_output(name):
    code, text = run(*GOLDEN_RUNS[name])
    assert code == 0
    assert text == (GOLDEN / name).read_text()


def test_betti_octahedron_values():
    assert run_json("betti", "--complex", DATA / "octahedron.off") == (0, {"betti": [1, 0, 1], "euler": 2})


def test_stokes_green_values():
    code, out = run_json("stokes", GREEN, "--chain", DATA / "unit_square.json")
    assert code == 0 and out == {"lhs": "2", "rhs": "2", "equal": True}


def test_repeated_subprocess_runs_are_byte_identical():
    argv = [sys.executable, "-m", "hodgelab", *map(str, GOLDEN_RUNS["decompose_hollow.json"])]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second == (GOLDEN / "decompose_hollow.json").read_bytes()


def test_d_of_top_form():
    code, out = run_json("d", "dx1^dx2^dx3", "-n", 3)
    assert code == 0
    assert out["form"] == {"dimension": 3, "degree": 3, "terms": []}
    assert out["text"] == "0*dx1^dx2^dx3"


def test_eval_round_trips_through_text_and_json():
    code, out = run_json("eval", "3/2 * dx1 + x2*dx2")
    assert code == 0
    w = parse_and_eval("3/2 * dx1 + x2*dx2", 3)
    assert parse_and_eval(out["text"], 3) == w
    assert io.form_from_json(out["form"]) == w


@pytest.mark.parametrize("command, expr, text", [
    ("star", "dx1", "dx2^dx3"),
    ("codiff", "x1*dx1 + x2*dx2 + x3*dx3", "-3"),
    ("laplacian", "x1^2 + x2^2 + x3^2", "-6"),
    ("grad", "x1*x2", "(x2)*dx1 + (x1)*dx2"),
    ("div", "x1*dx1", "1"),
    ("curl", "x1*dx2", "dx3"),
])
def test_form_commands(command, expr, text):
    code, out = run_json(command, expr)
    assert code == 0 and out["text"] == text


def test_homotopy_in_the_plane():
    code, out = run_json("homotopy", "dx1^dx2", "-n", 2)
    assert code == 0 and out["text"] == "(-1/2*x2)*dx1 + (1/2*x1)*dx2"


def test_witten_command():
    code, out = run_json("witten", "1", "--f", "x1", "--t", "1")
    assert code == 0 and out["text"] == "dx1"


def test_maxwell_command(tmp_path):
    cube = tmp_path / "cube.json"
    cube.write_text(io.dumps(io.embedded_chain_to_json(unit_cube_chain(4))))
    code, out = run_json("maxwell", "x1*dx2", "--domain", cube)
    assert code == 0
    assert out["bianchi_ok"] and out["continuity_ok"]
    assert out["action"] == "1/2"
    assert io.form_from_json(out["F"]) == parse_and_eval("dx1^dx2", 4)


def test_integrate_and_l2():
    assert run_json("integrate", "dx1^dx2", "--chain", DATA / "unit_square.json") == (0, {"value": "1"})
    assert run_json("l2", "dx1", "dx1", "--domain", DATA / "unit_square.json") == (0, {"value": "1"})


def test_euler_and_complex_commands():
    code, out = run_json("euler", "--complex", DATA / "tetrahedron.off")
    assert code == 0 and out == {"euler": 2, "simplex_counts": [4, 6, 4]}
    code, out = run_json("complex", "--complex", DATA / "octahedron.off")
    assert code == 0 and io.complex_from_json(out) == octahedron()


def test_tetrahedron_off_betti():
    assert run_json("betti", "--complex", DATA / "tetrahedron.off")[1]["betti"] == [1, 0, 1]


def test_off_without_faces(tmp_path):
    off = tmp_path / "points.off"
    off.write_text("OFF\n4 0 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n")
    assert run_json("betti", "--complex", off) == (0, {"betti": [4], "euler": 4})


def test_off_vertex_out_of_range(tmp_path):
    off = tmp_path / "bad.off"
    off.write_text("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 3\n")
    code, out = run_json("betti", "--complex", off)
    assert code == 2 and out["error"]["kind"] == "input"


def test_harmonic_rep_pairing_and_cohomologous(tmp_path):
    K = DATA / "hollow_triangle.json"
    loop = DATA / "hollow_loop_cochain.json"
    code, out = run_json("harmonic-rep", "--complex", K, "--cochain", loop)
    assert code == 0
    harmonic = {tuple(e["simplex"]): e["value"] for e in out["harmonic"]["values"]}
    assert harmonic == {(0, 1): "7/6", (0, 2): "-7/6", (1, 2): "7/6"}

    rep = tmp_path / "rep.json"
    rep.write_text(io.dumps(out["harmonic"]))
    code, out = run_json("cohomologous", "--complex", K, "--cochain", loop, rep)
    assert code == 0 and out["cohomologous"] is True and out["witness"]["degree"] == 0

    chain = tmp_path / "chain.json"
    chain.write_text(io.dumps({"degree": 1, "values": [
        {"simplex": [0, 1], "value": "1"}, {"simplex": [1, 2], "value": "1"}, {"simplex": [0, 2], "value": "-1"}]}))
    assert run_json("pairing", "--complex", K, "--chain", chain, "--cochain", loop) == (0, {"value": "7/2"})
    assert run_json("pairing", "--complex", K, "--chain", chain, "--cochain", rep) == (0, {"value": "7/2"})


def test_output_flag(tmp_path):
    target = tmp_path / "out.json"
    code, text = run("betti", "--complex", DATA / "octahedron.off", "-o", target)
    assert code == 0 and text == ""
    assert target.read_text() == (GOLDEN / "betti_octahedron.json").read_text()


# -- errors --------------------------------------------------------------------

def test_parse_error_exit_code_and_position():
    code, out = run_json("eval", "x1 + * x2")
    assert code == 2
    assert out["error"]["kind"] == "parse"
    assert out["error"]["position"] == {"line": 1, "column": 6}


def test_type_error_exit_code():
    code, out = run_json("grad", "dx1")
    assert code == 1 and out["error"]["kind"] in ("type", "domain")


def test_domain_error_exit_code():
    code, out = run_json("homotopy", "x1")
    assert code == 1 and out["error"]["kind"] == "domain"


def test_non_closed_cochain_is_a_domain_error(tmp_path):
    K = tmp_path / "filled.json"
    K.write_text('{"facets": [[0, 1, 2]]}')
    w = tmp_path / "w.json"
    w.write_text('{"degree": 1, "values": [{"simplex": [0, 1], "value": "1"}]}')
    code, out = run_json("harmonic-rep", "--complex", K, "--cochain", w)
    assert code == 1 and out["error"]["kind"] == "domain"


def test_unknown_flag_is_a_usage_error():
    code, out = run_json("eval", "x1", "--bogus")
    assert code == 2 and out["error"]["kind"] == "usage"


def test_missing_file():
    code, out = run_json("betti", "--complex", DATA / "nope.json")
    assert code == 2 and out["error"]["kind"] == "input"


def test_max_dim_env(monkeypatch):
    monkeypatch.setenv("HODGELAB_MAX_DIM", "3")
    assert run("eval", "dx4", "-n", 4)[0] == 2
    monkeypatch.setenv("HODGELAB_MAX_DIM", "4")
    assert run("eval", "dx4", "-n", 4)[0] == 0
