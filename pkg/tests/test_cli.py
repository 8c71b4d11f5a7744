import gzip
import json
import math

import numpy as np
import pytest

from conftest import DATA
from zetadeltas.cli import RunConfig, main
from zetadeltas.errors import ZetaDeltasError
from zetadeltas.paircorr import r2_theory

# a desk-scale homogeneous window inside the bundled table
WINDOW = ["--input", str(DATA), "--start", "90001", "--count", "10000"]


def read_csv(path):
    header, rows = [], []
    with open(path) as fh:
        lines = fh.read().splitlines()
    header = [l[2:] for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    cols = body[0].split(",")
    rows = [dict(zip(cols, l.split(","))) for l in body[1:]]
    return header, cols, rows


@pytest.fixture
def small_file(tmp_path):
    p = tmp_path / "zeros.txt"
    p.write_text("# three\n14.134725141\n21.022039638\n25.010857580\n")
    return p


def test_validate_clean(small_file, capsys):
    assert main(["validate", "--input", str(small_file)]) == 0
    out = capsys.readouterr().out
    assert "count" in out and "3" in out


def test_validate_decreasing_pair(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1.0\n2.0\n# note\n1.5\n3.0\n")
    assert main(["validate", "--input", str(p)]) == 2
    assert "line 4" in capsys.readouterr().out


def test_validate_garbage_line(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1.0\nnope\n")
    assert main(["validate", "--input", str(p)]) == 2
    assert "line 2" in capsys.readouterr().out


def test_validate_missing_file(tmp_path, capsys):
    assert main(["validate", "--input", str(tmp_path / "absent.txt")]) == 1
    assert "I/O error" in capsys.readouterr().err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["deltas"])
    assert exc.value.code == 1


def test_deltas_outputs(small_file, tmp_path):
    out = tmp_path / "o"
    assert main(["deltas", "--input", str(small_file), "--nmax", "2", "--out", str(out),
                 "--lo", "0", "--hi", "12", "--bins", "12"]) == 0
    header, cols, rows = read_csv(out / "deltas_moments.csv")
    assert header[0].startswith("zetadeltas 0.1.0 deltas")
    cfg = json.loads(header[1][len("config "):])
    assert cfg["nmax"] == 2 and cfg["bins"] == 12 and "workers" not in cfg
    assert cols[:6] == ["n", "count", "mean", "variance", "skewness", "kurtosis"]
    assert [r["count"] for r in rows] == ["2", "1"]
    assert rows[1]["variance"] == ""
    _, cols, hist = read_csv(out / "deltas_hist.csv")
    assert cols == ["n", "bin_lo", "bin_hi", "count"]
    assert sum(int(r["count"]) for r in hist) == 3
    _, _, integ = read_csv(out / "deltas_integrated.csv")
    assert sum(int(r["count"]) for r in integ) == 3


def test_deltas_lag_error(small_file, tmp_path, capsys):
    assert main(["deltas", "--input", str(small_file), "--nmax", "3",
                 "--out", str(tmp_path)]) == 1
    assert "lag" in capsys.readouterr().err


def test_deltas_row_count_and_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["deltas", *WINDOW, "--nmax", "159", "--out", str(a), "--workers", "1"]) == 0
    assert main(["deltas", *WINDOW, "--nmax", "159", "--out", str(b), "--workers", "8"]) == 0
    _, _, rows = read_csv(a / "deltas_moments.csv")
    assert len(rows) == 159
    for name in ("deltas_moments.csv", "deltas_hist.csv", "deltas_integrated.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_environment_override(small_file, tmp_path, monkeypatch):
    monkeypatch.setenv("ZETADELTAS_NMAX", "1")
    monkeypatch.setenv("ZETADELTAS_OUT", str(tmp_path / "env"))
    assert main(["deltas", "--input", str(small_file)]) == 0
    _, _, rows = read_csv(tmp_path / "env" / "deltas_moments.csv")
    assert len(rows) == 1


def test_fit_outputs(tmp_path):
    assert main(["fit", *WINDOW, "--nmax", "20", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "johnson_fits.json").read_text())
    assert doc["header"][0].startswith("zetadeltas 0.1.0 fit")
    fits = doc["fits"]
    assert [f["lag"] for f in fits] == list(range(1, 21))
    for f in fits:
        assert {"lag", "family", "gamma", "delta", "xi", "lambda", "chi_square", "ks"} <= set(f)
        assert f["ks"] < 0.05
    assert fits[0]["family"] == "SB"
    _, cols, rows = read_csv(tmp_path / "skew_kurt_plane.csv")
    bound = [r for r in rows if r["kind"] == "boundary"]
    assert len(bound) == 200
    assert (float(bound[0]["beta1"]), float(bound[0]["kurtosis"])) == (0.0, 3.0)
    assert len([r for r in rows if r["kind"] == "lag"]) == 20


def test_paircorr_outputs(tmp_path):
    assert main(["paircorr", *WINDOW, "--nmax", "30", "--bins", "60",
                 "--out", str(tmp_path)]) == 0
    header, cols, rows = read_csv(tmp_path / "paircorr.csv")
    assert cols == ["bin_center", "empirical_density", "theory_density"]
    assert len(rows) == 60
    c = np.array([float(r["bin_center"]) for r in rows])
    emp = np.array([float(r["empirical_density"]) for r in rows])
    th = np.array([float(r["theory_density"]) for r in rows])
    assert np.array_equal(th, r2_theory(c))
    at_one = np.argmin(np.abs(c - 1.0))
    if c[at_one] == 1.0:
        assert th[at_one] == 1.0
    assert r2_theory(1.0) == 1.0
    rms = float(next(h for h in header if h.startswith("rms_deviation")).split()[1])
    sel = c >= 0.2
    assert rms == pytest.approx(math.sqrt(np.mean((emp[sel] - th[sel]) ** 2)), abs=1e-12)


def test_infer_without_reference(tmp_path):
    assert main(["infer", *WINDOW, "--nmax", "80", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "zero_candidates.json").read_text())
    assert "match" not in doc
    assert doc["smoothing_halfwidth"] == 1
    locs = [c["location"] for c in doc["candidates"]]
    assert locs == sorted(locs)


def test_infer_with_reference(tmp_path):
    ref = tmp_path / "ref.txt"
    ref.write_text("14.134725142\n21.022039639\n25.010857580\n")
    assert main(["infer", *WINDOW, "--nmax", "80", "--out", str(tmp_path),
                 "--reference", str(ref), "--tolerance", "0.5"]) == 0
    doc = json.loads((tmp_path / "zero_candidates.json").read_text())
    m = doc["match"]
    assert len(m["pairs"]) <= 3
    assert len(m["pairs"]) + len(m["unmatched_references"]) == 3
    for p in m["pairs"]:
        assert p["error"] <= 0.5


def test_gzip_input(tmp_path):
    p = tmp_path / "z.txt.gz"
    with gzip.open(p, "wt") as fh:
        fh.write("14.134725141\n21.022039638\n25.010857580\n30.424876125\n")
    assert main(["deltas", "--input", str(p), "--nmax", "2", "--out", str(tmp_path)]) == 0


def test_run_config_rejects_nonpositive():
    with pytest.raises(ZetaDeltasError):
        RunConfig(input="x", workers=0)
    with pytest.raises(ZetaDeltasError):
        RunConfig(input="x", nmax=0)
    with pytest.raises(ZetaDeltasError):
        RunConfig(input="x", start=1, first_ordinal=5)
    assert "workers" not in RunConfig(input="x").provenance()
