import json

import numpy as np
import pytest

from gmpmat.cli import main


SET_SYM = {"b0": -2.0, "a0": 2.0, "gaps": [[-1.0, 1.0]]}
DELTA1 = {"lambda0": 1.0, "c0": 0.0, "terms": [[1.0, 1.0]]}
POINT1 = {"poles": [1.0], "p": [1.0, 1.0], "q": [0.0, 0.0]}
GOOD = {"poles": [2.0], "p": [1.0, 1.0], "q": [1.0, 0.0]}


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "set.json").write_text(json.dumps(SET_SYM))
    (tmp_path / "delta.json").write_text(json.dumps(DELTA1))
    (tmp_path / "pt.json").write_text(json.dumps(POINT1))
    (tmp_path / "good.json").write_text(json.dumps(GOOD))
    return tmp_path


def _run(args, out):
    code = main(list(args) + ["--out", str(out)])
    assert code == 0
    return json.loads(out.read_text()) if out.suffix == ".json" else out.read_text()


def test_delta_solve_and_bands_roundtrip(workdir):
    got = _run(
        ["delta", "solve", "--set", str(workdir / "set.json")],
        workdir / "delta_out.json",
    )
    assert abs(got["lambda0"] - 2.0) < 1e-10
    assert abs(got["terms"][0][0] - 4.0) < 1e-10
    (workdir / "solved.json").write_text(json.dumps(got))
    back = _run(
        ["delta", "bands", "--delta", str(workdir / "solved.json")],
        workdir / "set_out.json",
    )
    assert abs(back["b0"] + 2.0) < 1e-9 and abs(back["a0"] - 2.0) < 1e-9


def test_delta_eval_point_and_grid(workdir):
    got = _run(
        ["delta", "eval", "--delta", str(workdir / "delta.json"), "--z", "0.5,0.5"],
        workdir / "val.json",
    )
    want = complex(0.5, 0.5) + 1.0 / (1.0 - complex(0.5, 0.5))
    assert abs(complex(got["re"], got["im"]) - want) < 1e-12
    text = _run(
        ["delta", "eval", "--delta", str(workdir / "delta.json"), "--grid=-3:-2:5"],
        workdir / "grid.csv",
    )
    assert len(text.strip().splitlines()) == 5


def test_transfer_and_lambda_commands(workdir):
    got = _run(
        ["transfer", "coeffs", "--coeffs", str(workdir / "good.json")],
        workdir / "dc.json",
    )
    assert got["nu0"] == 1.0 and got["d0"] == -1.0 and got["nus"] == [4.0]
    lams = _run(
        ["transfer", "lambdas", "--coeffs", str(workdir / "good.json")],
        workdir / "lams.json",
    )
    assert lams == [4.0]


def test_gmp_check_command(workdir):
    got = _run(
        ["gmp", "check", "--coeffs", str(workdir / "good.json"), "--periods", "30"],
        workdir / "check.json",
    )
    assert got["is_gmp"] is True
    assert got["structural_ok"] is True


def test_iso_project_and_verify(workdir):
    got = _run(
        ["iso", "project", "--delta", str(workdir / "delta.json"), "--init", "1.2,0.1"],
        workdir / "proj.json",
    )
    (workdir / "proj.json").write_text(json.dumps(got))
    ver = _run(
        [
            "iso",
            "verify",
            "--delta",
            str(workdir / "delta.json"),
            "--coeffs",
            str(workdir / "proj.json"),
        ],
        workdir / "ver.json",
    )
    assert ver["on_manifold"] is True


def test_magic_verify_command(workdir):
    got = _run(
        [
            "magic",
            "verify",
            "--delta",
            str(workdir / "delta.json"),
            "--coeffs",
            str(workdir / "pt.json"),
            "--periods",
            "30",
        ],
        workdir / "magic.json",
    )
    assert got["defect"] < 1e-6


def test_spectrum_and_resolvent_commands(workdir):
    text = _run(
        ["spectrum", "eig", "--coeffs", str(workdir / "pt.json"), "--periods", "10"],
        workdir / "eig.csv",
    )
    assert len(text.strip().splitlines()) == 20
    got = _run(
        ["resolvent", "eval", "--coeffs", str(workdir / "pt.json"), "--z", "0.2,1.0"],
        workdir / "res.json",
    )
    assert got["r_plus"][1] > 0


def test_jacobi_bands_command(workdir):
    got = _run(
        ["jacobi", "transfer", "--a", "1,2", "--b", "0,0", "--bands"],
        workdir / "edges.json",
    )
    assert np.max(np.abs(np.array(got) - [-3.0, -1.0, 1.0, 3.0])) < 1e-10


def test_ortho_build_report(workdir):
    lines = ["%s,1.0" % x for x in np.linspace(-2.0, -1.0, 12)]
    lines += ["%s,1.0" % x for x in np.linspace(1.0, 2.0, 12)]
    (workdir / "measure.csv").write_text("\n".join(lines))
    got = _run(
        [
            "ortho",
            "build",
            "--measure",
            str(workdir / "measure.csv"),
            "--family",
            "monomial",
            "--n",
            "6",
            "--report",
        ],
        workdir / "rep.json",
    )
    assert got["pattern"] == "jacobi"
    assert got["violations"] == []


def test_invalid_set_exits_1(workdir, capsys):
    (workdir / "bad.json").write_text(json.dumps({"b0": 2.0, "a0": -2.0, "gaps": []}))
    code = main(["delta", "solve", "--set", str(workdir / "bad.json")])
    assert code == 1
    assert "error" in json.loads(capsys.readouterr().err)


def test_missing_file_exits_1(workdir, capsys):
    code = main(["delta", "solve", "--set", str(workdir / "nope.json")])
    assert code == 1
    capsys.readouterr()


def test_convergence_failure_exits_2(workdir, capsys):
    asym = {"b0": -2.1, "a0": 2.3, "gaps": [[-0.7, 0.9]]}
    (workdir / "asym.json").write_text(json.dumps(asym))
    code = main(
        ["delta", "solve", "--set", str(workdir / "asym.json"), "--tol", "1e-30"]
    )
    assert code == 2
    payload = json.loads(capsys.readouterr().err)
    assert "residual" in payload
