import json

import pytest

from ftl.cli import main


def run(tmp_path, cmd, text=None, *extra):
    args = [cmd, "--out", str(tmp_path / "out"), *extra]
    if text is not None:
        cfg = tmp_path / f"{cmd}.txt"
        cfg.write_text(text)
        args += ["--config", str(cfg)]
    code = main(args)
    rep = json.loads((tmp_path / "out" / f"{cmd}.json").read_text())
    return code, rep


def test_tau_ok(tmp_path):
    code, rep = run(tmp_path, "tau", "domain egg2\nrandom 50\npoint 0 0 -0.01 0\neps 1e-4\n")
    assert code == 0 and rep["status"] == "ok"
    lines = (tmp_path / "out" / "tau.csv").read_bytes().split(b"\n")
    assert lines[0].startswith(b"domain,eta1_re") and b"\r" not in lines[0]
    assert len(lines) == 2 + 51


def test_tolerance_override_reports_witness(tmp_path):
    code, rep = run(tmp_path, "tau", "domain mixed\nrandom 20\n", "--tol", "tau_rel=0")
    assert code == 1 and rep["status"] == "violation"
    v = rep["violations"][0]
    assert v["invariant"] == "tau closed form matches bisection" and "eta" in v["witness"]


def test_corrupt_domain(tmp_path, capsys):
    (tmp_path / "bad.dom").write_text("m 2 box 1.0\n1 1 1.0 0.0\n2 0 0.5 0.0\n")
    code, rep = run(tmp_path, "frame", "domain bad.dom\n")
    assert code == 2 and rep["status"] == "invalid" and rep["line"] == 3
    assert "(2,0)" in capsys.readouterr().err


def test_bad_descriptor_line(tmp_path):
    code, rep = run(tmp_path, "pba", "trials 10\nk nope\n")
    assert code == 2 and rep["line"] == 2


def test_constant_suite_empty_witness(tmp_path):
    code, rep = run(tmp_path, "renorm", "suite constant\n")
    assert code == 1
    assert "empty witness set" in rep["violations"][0]["witness"]["error"]


def test_unknown_suite(tmp_path):
    code, rep = run(tmp_path, "renorm", "suite nope\n")
    assert code == 2 and "unknown suite" in rep["error"]


def test_frame_and_constants(tmp_path):
    code, _ = run(tmp_path, "frame", "domain twoterm\nrandom 100\n")
    assert code == 0
    code, rep = run(tmp_path, "constants", "domain egg1\nsamples 256\n")
    assert code == 0 and rep["summary"]["domains"]["egg1"]["constants"]["C3"] >= 1
    assert (tmp_path / "out" / "egg1.dom").read_text().startswith("m 2 box")


def test_kobayashi_descriptor(tmp_path):
    code, rep = run(tmp_path, "kobayashi", "domain egg1\nray w2 1e-3 1e-2 3 log\ndirection 1 0 0 0\nfamily affine\n")
    assert code == 0 and len(rep["summary"]["sweeps"]) == 1
    assert (tmp_path / "out" / "kobayashi.csv").read_text().count("\n") == 4


def test_rescale_and_normality(tmp_path):
    code, rep = run(tmp_path, "rescale", "domain twoterm\nsequence ray -1 0 10..1e9*10\ncompact box 1 grid 8\n")
    assert code == 0 and rep["summary"]["domains"]["twoterm"]["brody_hyperbolic"]
    code, rep = run(tmp_path, "normality", "domain egg1\nsequence ray -1 0 10..200:10\nfamily constant\ndiscs poly degree 2 count 1 seed 3\n")
    assert code == 0 and len(rep["summary"]["runs"]) == 2


def test_deterministic_csv(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        d.mkdir()
        cfg = d / "c.txt"
        cfg.write_text("domain mixed\nrandom 30\n")
        assert main(["frame", "--config", str(cfg), "--out", str(d / "out"), "--seed", "9"]) == 0
    assert (a / "out" / "frame.csv").read_bytes() == (b / "out" / "frame.csv").read_bytes()


def test_unknown_tolerance():
    with pytest.raises(SystemExit):
        main(["tau", "--tol", "nope=1"])


def test_sequence_must_approach_boundary_point(tmp_path):
    code, rep = run(tmp_path, "normality", "domain egg1\nsequence ray -1 0 10..50:10\n")
    assert code == 2 and rep["line"] == 2
