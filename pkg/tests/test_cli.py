import json
import subprocess
import sys

import pytest

from adorbits import serialize as ser
from adorbits.cli import main
from adorbits.polyhedra import HPolyhedron, VPolyhedron
from adorbits.rootsys import parse_algebra

EX1 = ["--algebra", "su(2,1)", "--a", "4,1,-5", "--b", "2,1,-3"]
EX2 = ["--algebra", "su(2,2)", "--a", "4,2,1,-7", "--b", "3,2,1,-6"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_polytope_su21(capsys):
    code, out, _ = run(capsys, "polytope", *EX1)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "adorbits/orbit-sum/v1"
    assert data["exact"] is True
    assert data["vertices"]["vertices"] == [["5/1", "3/1", "-8/1"], ["5/1", "5/1", "-10/1"], ["6/1", "2/1", "-8/1"]]
    assert all(c["passed"] for c in data["checks"].values())
    assert data["config"] == {
        "command": "polytope", "algebra": "su(2,1)",
        "a": ["4/1", "1/1", "-5/1"], "b": ["2/1", "1/1", "-3/1"],
        "samples": 20000, "seed": 0,
    }


def test_polytope_su22(capsys):
    code, out, _ = run(capsys, "polytope", *EX2)
    assert code == 0
    assert len(json.loads(out)["s_ab"]["inequalities"]) == 7


def test_output_is_byte_stable(capsys):
    first = run(capsys, "polytope", *EX2)[1]
    assert run(capsys, "polytope", *EX2)[1] == first
    v1 = run(capsys, "verify", *EX1, "--samples", "300", "--seed", "4")[1]
    assert run(capsys, "verify", *EX1, "--samples", "300", "--seed", "4")[1] == v1


@pytest.mark.parametrize("argv,needle", [
    (["polytope", "--algebra", "su(2,1)", "--a", "1,2,-3", "--b", "2,1,-3"], "chamber violation: λ₁ < λ₂"),
    (["polytope", "--algebra", "su(2,1)", "--a", "2,-1,-1", "--b", "2,1,-3"], "admissibility violation"),
    (["polytope", "--algebra", "su(2,1)", "--a", "4.0,1,-5", "--b", "2,1,-3"], "float literal"),
    (["polytope", "--algebra", "su(2,1)", "--a", "4,1", "--b", "2,1,-3"], "needs 3"),
    (["polytope", "--algebra", "sl(3)", "--a", "1,0,-1", "--b", "1,0,-1"], "unrecognized"),
    (["polytope", "--algebra", "su(2,1)", "--a", "4,1,-5"], "required"),
    (["verify", *EX1, "--samples", "0"], "invalid sample count"),
    (["lattice", *EX1], "--truncate is required"),
    (["lattice", *EX1, "--truncate", "9", "--functional", "0,0,1"], "unbounded truncation"),
    (["horn"], "horn needs"),
])
def test_invalid_input_exit_2(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert needle in err
    assert out == ""


def test_verify_ok_and_violation(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", *EX1, "--samples", "10000", "--seed", "7", "--tol", "1e-6")
    assert code == 0
    rep = json.loads(out)
    assert rep["inside"] == rep["total"] == 10000
    assert rep["config"]["scales"] == [0.25, 0.5, 1.0]

    # hand-edited polyhedron file with λ₁ ≥ 11/2 instead of 5
    run(capsys, "polytope", *EX1, "--out", str(tmp_path / "ex1.json"))
    data = json.loads((tmp_path / "ex1.json").read_text(encoding="utf-8"))
    for row in data["s_ab"]["inequalities"]:
        if row["normal"] == ["1/1", "0/1", "0/1"]:
            row["offset"] = "11/2"
    (tmp_path / "tight.json").write_text(json.dumps(data), encoding="utf-8")
    code, out, _ = run(capsys, "verify", *EX1, "--samples", "2000", "--polyhedron", str(tmp_path / "tight.json"))
    assert code == 3
    assert json.loads(out)["inside"] < 2000


def test_verify_rejects_bad_polyhedron_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "something/else"}), encoding="utf-8")
    assert run(capsys, "verify", *EX1, "--samples", "10", "--polyhedron", str(bad))[0] == 2


def test_lattice_commands(capsys):
    code, out, _ = run(capsys, "lattice", *EX1, "--truncate", "9", "--functional", "1,1,0")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 5
    assert data["points_reduced"] == [[5, 3], [5, 4], [6, 2], [6, 3], [7, 2]]
    code, out, _ = run(capsys, "lattice", *EX1, "--truncate", "7", "--functional", "1,1,0")
    assert code == 0 and json.loads(out)["points"] == []
    code, out, _ = run(capsys, "lattice", "--algebra", "su(1,1)", "--a", "1,-1", "--b", "1,-1",
                       "--truncate", "4", "--functional", "1,0")
    assert [p[0] for p in json.loads(out)["points"]] == [2, 3, 4]


def test_orbit_image_command(capsys):
    code, out, _ = run(capsys, "orbit-image", "--algebra", "su(2,1)", "--a", "4,1,-5")
    assert code == 0
    assert len(json.loads(out)["image"]["inequalities"]) == 3


def test_horn_command(capsys):
    code, out, _ = run(capsys, "horn", "--n", "3", *EX1)
    assert code == 0
    data = json.loads(out)
    assert len(data["triples"]) == 12
    assert data["exact"] is True


def test_out_file_and_plot_data(capsys, tmp_path):
    target = tmp_path / "result.json"
    plot = tmp_path / "plot.json"
    code, out, _ = run(capsys, "polytope", *EX1, "--out", str(target), "--emit-plot-data", str(plot),
                       "--plot-samples", "50")
    assert code == 0 and out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["algebra"] == "su(2,1)"
    p = json.loads(plot.read_text(encoding="utf-8"))
    assert p["labels"] == ["λ₁", "λ₂"]
    assert len(p["samples"]) == 50 and len(p["rays"]) == 2
    assert sorted(f.name for f in tmp_path.iterdir()) == ["plot.json", "result.json"]


def test_sampled_form_is_flagged(capsys):
    code, out, err = run(capsys, "polytope", "--algebra", "sp(2,R)", "--a", "3,1", "--b", "2,1", "--samples", "300")
    assert code == 0
    assert json.loads(out)["exact"] is False
    assert "sampled" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "adorbits", "horn", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == "adorbits/horn/v1"


def test_hpoly_json_round_trip():
    P = parse_algebra("su(2,1)").chamber_polyhedron()
    assert ser.hpoly_from_json(json.loads(ser.dumps(ser.hpoly_to_json(P)))) == P
    with pytest.raises(ValueError):
        ser.hpoly_from_json({"schema": "adorbits/vpolyhedron/v1"})
    V = VPolyhedron.from_points(2, [(1, 2)], [(0, 1)])
    assert ser.vpoly_from_json(ser.vpoly_to_json(V)) == V


def test_form_json():
    data = ser.form_to_json(parse_algebra("su(2,2)"))
    assert data["block_sizes"] == [2, 2] and len(data["noncompact_positive"]) == 4
