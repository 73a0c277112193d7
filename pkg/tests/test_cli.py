import csv
import io
import json
import math

import pytest

from nvsinc import cli, experiment
from nvsinc.exceptions import QuadratureNotConverged
from nvsinc.experiment import ExperimentSpec, SpecError, load_spec


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coeffs_csv(capsys):
    code, out, _ = _run(capsys, "coeffs", "--t", "4.5", "--k-lo", "0", "--k-hi", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,value"
    assert lines[2] == "1,-0.13997364800728807"
    code, out, _ = _run(capsys, "coeffs", "--t", "3", "--k-lo", "2", "--k-hi", "4", "--classical")
    assert out.splitlines()[1:] == ["2,0.0", "3,1.0", "4,0.0"]


def test_oracle(capsys):
    code, out, _ = _run(capsys, "oracle", "--t", "4.5", "--k", "1")
    assert code == 0
    diff = float(out.splitlines()[2].split()[1])
    assert abs(diff) < 1e-12


def test_bad_config_exits_2(capsys):
    code, _, err = _run(capsys, "coeffs", "--omega", "3.5", "--t", "4.5", "--k-lo", "0", "--k-hi", "1")
    assert code == 2 and "BandEdgeOutOfRange" in err
    code, _, err = _run(capsys, "coeffs", "--n", "3", "--t", "4.5", "--k-lo", "0", "--k-hi", "1")
    assert code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"omega": "pi/2", "n": 6}))
    code, out, _ = _run(capsys, "interp", "--config", str(cfg), "--t", "0.5", "--L", "5",
                        "--signal", "cosine:omega=1")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"] == {"omega": math.pi / 2, "omega1": 3 * math.pi / 4, "n": 6}
    cfg.write_text(json.dumps({"omega": 1, "bogus": 2}))
    code, _, err = _run(capsys, "coeffs", "--config", str(cfg), "--t", "1.5", "--k-lo", "0", "--k-hi", "1")
    assert code == 2 and "bogus" in err


def test_interp_report(capsys):
    code, out, _ = _run(capsys, "interp", "--t", "4.5", "--L", "200", "--signal", "cosine:omega=5*pi/12")
    doc = json.loads(out)
    assert code == 0
    assert doc["window"] == {"mode": "t", "L": 200, "k_lo": -195, "k_hi": 205}
    assert doc["abs_err_modified"] < doc["abs_err_classical"]


def test_interp_samples(tmp_path, capsys):
    path = tmp_path / "s.csv"
    rows = ["k,re,im"] + [f"{k},{math.cos(0.5 * k)!r},0" for k in range(-40, 41)]
    path.write_text("\n".join(rows) + "\n")
    code, out, _ = _run(capsys, "interp", "--samples", str(path), "--t", "2.0", "--window=-40:40",
                        "--signal", "cosine:omega=0.5")
    doc = json.loads(out)
    assert code == 0
    assert doc["estimate_modified"] == math.cos(1.0) or abs(doc["estimate_modified"] - math.cos(1.0)) < 1e-15
    path.write_text("k,re\n0,1\n2,1\n")
    code, _, err = _run(capsys, "interp", "--samples", str(path), "--t", "1.0", "--window=0:2")
    assert code == 2 and "contiguous" in err


def test_sweep_csv(capsys):
    code, out, _ = _run(capsys, "sweep", "--t", "4.5", "--Ls", "1e2,1e3", "--signal", "cosine:omega=5*pi/12")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "L,err_classical,err_modified"
    assert [ln.split(",")[0] for ln in lines[1:]] == ["100", "1000"]
    assert len(lines[1].split(",")[1].split("e")[0].replace(".", "").lstrip("-")) == 20


def _small_spec(tmp_path, **over):
    data = {
        "omega": "5*pi/12", "signals": ["cosine:omega=5*pi/12,shift=L/2"], "t": [10.4], "L": [50, 100],
        "windows": ["zero", "t"], "output": str(tmp_path / "out.csv"),
    }
    data.update(over)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(data))
    return path


def test_run_writes_csv(tmp_path, capsys):
    code, _, _ = _run(capsys, "run", "--spec", str(_small_spec(tmp_path)))
    assert code == 0
    raw = (tmp_path / "out.csv").read_bytes()
    assert b"\r" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == ",".join(experiment.CSV_COLUMNS)
    assert len(lines) == 1 + 2 * 2 * 2
    first = next(csv.reader(io.StringIO(lines[1])))
    assert first[1:5] == ["zero", "1.0400000000000000355e+01", "50", "classical"]
    assert first[9] == "4"  # the resolved N is embedded in every row


def test_run_json(tmp_path, capsys):
    code, _, _ = _run(capsys, "run", "--spec", str(_small_spec(tmp_path)), "--format", "json",
                      "--out", str(tmp_path / "r.json"))
    doc = json.loads((tmp_path / "r.json").read_text())
    assert code == 0 and doc["config"]["n"] == 4 and len(doc["rows"]) == 8


@pytest.mark.parametrize("over, field", [
    ({"t": []}, "t"),
    ({"L": [0]}, "L"),
    ({"omega": 4.0}, "omega"),
    ({"windows": ["middle"]}, "windows"),
    ({"signals": ["square:omega=1"]}, "signals"),
    ({"format": "xml"}, "format"),
    ({"colour": "red"}, "colour"),
])
def test_run_invalid_spec(tmp_path, capsys, over, field):
    code, _, err = _run(capsys, "run", "--spec", str(_small_spec(tmp_path, **over)))
    assert code == 2
    assert f"invalid {field}:" in err


def test_spec_roundtrip():
    for name in experiment.BUNDLED_SPECS:
        spec = load_spec(name)
        assert ExperimentSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(SpecError):
        load_spec("no_such_spec")


def test_reference_table(tmp_path, capsys):
    out = tmp_path / "kpt.csv"
    code, _, _ = _run(capsys, "run", "--spec", "paper_sec3_kpt", "--out", str(out))
    assert code == 0
    table = (tmp_path / "kpt.reference.csv").read_text().splitlines()
    assert table[0] == ",".join(experiment.REFERENCE_COLUMNS)
    assert len(table) == 1 + 6


def test_selftest(capsys):
    code1, out1, _ = _run(capsys, "selftest")
    code2, out2, _ = _run(capsys, "selftest")
    assert code1 == 0 and out1 == out2
    assert [ln.split()[0] for ln in out1.splitlines()] == ["PASS"] * 5
    code, out, _ = _run(capsys, "selftest", "--inject-fault")
    assert code == 1 and "FAIL" in out


def test_selftest_numeric_failure_exits_3(monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise QuadratureNotConverged("forced")

    monkeypatch.setattr(experiment, "coeff_by_quadrature", broken)
    code, _, err = _run(capsys, "selftest")
    assert code == 3 and "QuadratureNotConverged" in err


def test_thread_count_independence(tmp_path, monkeypatch, capsys):
    spec = _small_spec(tmp_path)
    outputs = []
    for threads in ("1", "8"):
        monkeypatch.setenv("NVSINC_THREADS", threads)
        _run(capsys, "run", "--spec", str(spec), "--out", str(tmp_path / f"o{threads}.csv"))
        outputs.append((tmp_path / f"o{threads}.csv").read_bytes())
    assert outputs[0] == outputs[1]
