import json

import pytest

from lagderham import __version__
from lagderham.cli import RunConfig, main, run


@pytest.fixture()
def cusp_file(tmp_path):
    out = tmp_path / "cusp.json"
    assert main(["variety", "gen", "--family", "curve", "--poly", "p^2-q^3", "--weights", "q=2,p=3",
                 "--out", str(out)]) == 0
    return out


def test_variety_gen_embeds_provenance(cusp_file):
    rep = json.loads(cusp_file.read_text())
    assert rep["version"] == __version__
    assert rep["config"]["command"] == "variety"
    assert rep["result"]["W"] == 5


def test_cohomology_of_cusp(cusp_file, capsys):
    assert main(["cohomology", "--variety", str(cusp_file), "--p", "1"]) == 0
    rep = json.loads(capsys.readouterr().out)
    sec = rep["result"]["cohomology"][0]
    assert sec["nonzero"] == {"-1": 1, "1": 1}
    assert set(sec["degrees"][0]) == {"e", "dim_ker", "dim_im", "dim_h"}


def test_table_rendering(cusp_file, capsys):
    assert main(["cohomology", "--variety", str(cusp_file), "--format", "table", "--max-degree", "3"]) == 0
    out = capsys.readouterr().out
    assert "H^1 of curve" in out and "nonzero:" in out


def test_reports_are_byte_identical(cusp_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["cohomology", "--variety", str(cusp_file), "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_workers_give_same_rows(cusp_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["cohomology", "--variety", str(cusp_file), "--out", str(a)])
    main(["cohomology", "--variety", str(cusp_file), "--workers", "2", "--out", str(b)])
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ra["result"] == rb["result"]


def test_degenerate_bound_warns(capsys):
    assert main(["reproduce", "lemma-h1", "--k", "2", "--max-degree", "0"]) == 0
    captured = capsys.readouterr()
    assert "warning" in captured.err
    assert json.loads(captured.out)["result"]["verdict"] == "pass"


def test_checks(cusp_file, tmp_path):
    assert main(["check", "alpha-torsion", "--variety", str(cusp_file)]) == 0
    assert main(["check", "involutivity", "--variety", str(cusp_file)]) == 0
    assert main(["check", "cm", "--variety", str(cusp_file)]) == 0
    s = tmp_path / "s.json"
    assert main(["variety", "gen", "--family", "swallowtail", "--n", "2", "--k", "1", "--out", str(s)]) == 0
    assert main(["check", "parametrization", "--variety", str(s)]) == 0
    assert main(["check", "parametrization", "--variety", str(cusp_file)]) == 1


def test_verification_failure_exit_code(tmp_path):
    # two coordinate functions q, p do not form a lagrangian (involutive) ideal
    ring = {"names": ["q", "p"], "weights": [1, 1], "n": 1, "W": 2, "q": ["q"], "p": ["p"]}
    bad = {"family": {}, "ring": ring, "generators": ["q", "p"], "expected_dimension": 1}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    assert main(["check", "involutivity", "--variety", str(path)]) == 2


def test_error_exit_codes(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["cohomology", "--variety", str(broken)]) == 1
    assert main(["cohomology", "--variety", str(tmp_path / "missing.json")]) == 1
    bad_w = tmp_path / "w.json"
    ring = {"names": ["q", "p"], "weights": [2, 2], "n": 1, "W": 5, "q": ["q"], "p": ["p"]}
    bad_w.write_text(json.dumps({"ring": ring, "generators": ["p^2-q^2"]}))
    assert main(["cohomology", "--variety", str(bad_w)]) == 1
    assert "error" in capsys.readouterr().err


def test_cap_exhaustion(tmp_path, capsys):
    s = tmp_path / "s.json"
    assert main(["variety", "gen", "--family", "swallowtail", "--k", "1", "--out", str(s)]) == 0
    assert main(["cohomology", "--variety", str(s), "--max-slice-dim", "2", "--max-degree", "12"]) == 1
    assert "resource cap" in capsys.readouterr().err


def test_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("LAGDERHAM_CACHE", str(tmp_path / "cache"))
    status, _ = run(RunConfig("reproduce", "cm-check", options={"k": 1}))
    assert status == 0
    assert (tmp_path / "cache" / "swallowtail-n2-k1-kernel.json").exists()
    status, _ = run(RunConfig("reproduce", "cm-check", options={"k": 1}))
    assert status == 0


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig("cohomology", workers=0)
    with pytest.raises(ValueError):
        RunConfig("cohomology", bound=-1)


def test_depth_command(cusp_file, capsys):
    assert main(["depth", "--module", "conormal-dual", "--variety", str(cusp_file), "--cap", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["depth"]["depth"] == 1


def test_reproduce_alpha_torsion(capsys):
    assert main(["reproduce", "alpha-torsion"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert all(c["matches"] for c in rep["result"]["comparisons"])
