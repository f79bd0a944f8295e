import json

import pytest

from nashfan import __version__
from nashfan.cli import run
from nashfan.fan import GroebnerFan2
from nashfan.groebner import MarkedBasis
from nashfan.nash import NON_SINGULAR, SINGULAR, Witness, check_witness
from nashfan.semigroup import AffineSemigroup, Cone


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    code, out, _ = invoke(capsys, "--version")
    assert code == 0 and __version__ in out


def test_dual(capsys):
    code, out, _ = invoke(capsys, "dual", "--rays", "0,1;4,-3")
    assert code == 0
    data = json.loads(out)
    assert data["semigroup"]["generators"] == [[1, 0], [3, 4], [1, 1]]
    assert data["semigroup"]["transform"] == [[1, 0], [0, 1]]
    assert AffineSemigroup.from_dict(data["semigroup"]).edge_count == 2


def test_gb_plane(capsys):
    code, out, _ = invoke(capsys, "gb", "--rays", "1,0;0,1", "-n", "1")
    assert code == 0
    data = json.loads(out)
    assert {tuple(e["mark"]) for e in data["basis"]["elements"]} == {(2, 0), (1, 1), (0, 2)}
    assert data["staircase_dimension"] == 3


def test_gb_a3_with_weight(capsys, a3, j1_basis):
    code, out, _ = invoke(
        capsys, "gb", "--gens", "1,0;3,4;1,1", "--normals", "0,1;4,-3", "-n", "1", "-p", "0", "--weight", "1,4"
    )
    assert code == 0
    data = json.loads(out)
    assert len(data["initial_forms"]) == len(data["basis"]["elements"])
    assert {"field": 0, "terms": [{"exp": [3, 4], "coeff": "1"}]} in data["initial_forms"]
    basis = MarkedBasis.from_dict(a3, data["basis"])
    assert set(basis.marks) == set(j1_basis.marks)


def test_gb_renders_with_generator_names(capsys):
    code, out, _ = invoke(capsys, "gb", "--rays", "0,1;4,-3", "-n", "1", "--order", "2,-1;1,1")
    assert code == 0
    assert "u3v4 + u - 4*uv + 2" in json.loads(out)["rendered"]


def test_fan_with_svg(capsys, tmp_path):
    svg = tmp_path / "fan.svg"
    out_path = tmp_path / "fan.json"
    code, out, _ = invoke(
        capsys, "fan", "--rays", "0,1;4,-3", "-n", "1", "-p", "0", "--order", "2,-1;1,1",
        "--svg", str(svg), "--out", str(out_path),
    )
    assert code == 0 and out == ""
    data = json.loads(out_path.read_text())
    assert [[2, -1], [0, 1]] in [cell["rays"] for cell in data["cells"]]
    assert data["trivial"] is False
    assert svg.read_text().startswith("<?xml")
    semigroup = AffineSemigroup.from_dict(data["semigroup"])
    fan = GroebnerFan2.from_dict(semigroup, data)
    assert GroebnerFan2.from_dict(semigroup, json.loads(json.dumps(fan.to_dict()))) == fan


def test_fan_reports_rays_in_input_coordinates(capsys):
    code, out, _ = invoke(capsys, "fan", "--rays", "1,1;-1,1", "-n", "1", "-p", "5")
    assert code == 0
    data = json.loads(out)
    assert data["semigroup"]["transform"] != [[1, 0], [0, 1]]
    rays = [tuple(ray) for ray in data["input_rays"]]
    assert len(rays) == len(data["cells"]) + 1
    assert {rays[0], rays[-1]} == {(1, 1), (-1, 1)}
    assert all(Cone.from_rays([(1, 1), (-1, 1)]).contains(ray) for ray in rays)
    code, out, _ = invoke(capsys, "nobile", "--rays", "1,1;-1,1", "-n", "1", "-p", "5")
    assert code == 0 and [tuple(ray) for ray in json.loads(out)["input_rays"]] == rays


def test_fan_output_is_byte_deterministic(capsys):
    argv = ["fan", "--rays", "0,1;2,-1", "-n", "1", "-p", "3"]
    assert invoke(capsys, *argv)[1] == invoke(capsys, *argv)[1]


def test_nobile(capsys):
    code, out, _ = invoke(capsys, "nobile", "--rays", "1,0;0,1", "-n", "2", "-p", "7")
    assert code == 0 and json.loads(out)["verdict"] == NON_SINGULAR
    code, out, _ = invoke(capsys, "nobile", "--rays", "0,1;4,-3", "-n", "1", "-p", "2")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == SINGULAR and data["witness"] is not None


def test_witness(capsys):
    code, out, _ = invoke(capsys, "witness", "--rays", "0,1;4,-3", "-p", "5", "-n", "1")
    assert code == 0
    data = json.loads(out)
    assert data["verified"] is True and data["failed"] == []
    assert data["w"] == [1, 0] and data["edge_index"] == 2
    semigroup = AffineSemigroup.from_dict(data["semigroup"])
    assert check_witness(Witness.from_dict(semigroup, data), semigroup) == []


def test_a3(capsys):
    code, out, _ = invoke(capsys, "a3", "--nmax", "1", "--primes", "0,2")
    assert code == 0
    data = json.loads(out)
    assert data["pass"] is True
    assert [(r["n"], r["p"]) for r in data["reports"]] == [(1, 0), (1, 2)]


@pytest.mark.parametrize(
    "argv",
    [
        ["dual", "--rays", "0,1;0,2"],
        ["dual", "--rays", "0,1;x,2"],
        ["gb", "-n", "1"],
        ["gb", "--rays", "0,1;4,-3", "--gens", "1,0;3,4;1,1", "-n", "1"],
        ["gb", "--rays", "0,1;4,-3", "-n", "1", "-p", "4"],
        ["gb", "--rays", "0,1;4,-3", "-n", "1", "--order", "1,1;2,2"],
        ["witness", "--rays", "1,0;0,1", "-p", "5", "-n", "1"],
        ["witness", "--rays", "0,1;4,-3", "-p", "4", "-n", "1"],
        ["a3", "--nmax", "99"],
        ["a3", "--nmax", "1", "--primes", "0,6"],
        ["unknown-command"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.strip()
