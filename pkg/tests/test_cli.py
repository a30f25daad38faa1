import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from mincurv.cli import main
from mincurv.discrete import DiscreteArcChain

from conftest import RA_SQUARE

INSTANCE = str(Path(__file__).resolve().parent.parent / "instances" / "square_corner.json")


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_report_ratio(capsys):
    code, out, _ = run(capsys, "report", "--instance", INSTANCE)
    assert code == 0
    doc = json.loads(out[out.index("{"):])
    exact_ratio = RA_SQUARE / (math.sqrt(5) / 25)  # 2.315524...
    assert doc["improvement_ratio"] == pytest.approx(exact_ratio, abs=1e-12)
    # the quoted 2.3156 is the same quotient, rounded loosely
    assert doc["improvement_ratio"] == pytest.approx(2.3156, abs=1e-4)
    assert doc["r_a"] == pytest.approx(RA_SQUARE, abs=1e-12)
    assert "improvement ratio" in out
    assert set(doc["discrete_min_radius_by_p"]) == {"2", "5", "10", "50", "100", "300"}


def test_report_single_p(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "report", "--instance", INSTANCE, "--p", "20", "--out", str(out_file))
    assert code == 0
    assert list(json.loads(out_file.read_text())["discrete_min_radius_by_p"]) == ["20"]


def test_dubins_too_large_exits_2(capsys):
    code, _, err = run(capsys, "dubins", "--instance", INSTANCE, "--radius", "0.3")
    assert code == 2
    assert "RadiusTooLarge" in err


def test_dubins_ok(capsys):
    code, out, _ = run(capsys, "dubins", "--instance", INSTANCE, "--radius", "0.1")
    assert code == 0
    assert json.loads(out)["path"]["min_radius"] == 0.1


def test_discrete_csv_rows(capsys):
    code, out, _ = run(capsys, "discrete", "--instance", INSTANCE, "--p", "300", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "theta0", "R_k", "L_k"]
    assert len(rows) - 1 == 300


def test_discrete_json_roundtrip(capsys):
    code, out, _ = run(capsys, "discrete", "--instance", INSTANCE, "--p", "50")
    assert code == 0
    doc = json.loads(out)
    chain = DiscreteArcChain.from_json(out)
    again = json.dumps({**doc, "chain": chain.to_dict()}, indent=2) + "\n"
    assert again == out


@pytest.mark.parametrize("fmt", ["json", "csv", "svg"])
@pytest.mark.parametrize("cmd", ["exact", "baseline"])
def test_formats(capsys, cmd, fmt):
    code, out, _ = run(capsys, cmd, "--instance", INSTANCE, "--format", fmt, "--samples", "11")
    assert code == 0
    if fmt == "json":
        json.loads(out)
    elif fmt == "csv":
        assert len(out.strip().splitlines()) == 12
    else:
        assert out.startswith("<svg") and out.rstrip().endswith("</svg>")


def test_report_svg_overlay(capsys):
    code, out, _ = run(capsys, "report", "--instance", INSTANCE, "--format", "svg", "--p", "30")
    assert code == 0
    for css in ("exact", "discrete", "baseline"):
        assert f'class="{css}"' in out


def _write(tmp_path, doc):
    f = tmp_path / "inst.json"
    f.write_text(json.dumps(doc))
    return str(f)


def test_refuses_parallel_tangents(capsys, tmp_path):
    path = _write(tmp_path, {"A": [0, 0], "B": [1, 1], "alpha": [1, 0], "beta": [1, 0]})
    code, _, err = run(capsys, "exact", "--instance", path)
    assert code == 1 and "ParallelTangents" in err


def test_refuses_backwards_tangents(capsys, tmp_path):
    path = _write(tmp_path, {"A": [1, 0], "B": [0, 1], "alpha": [1, 0], "beta": [0, 1]})
    code, _, _ = run(capsys, "exact", "--instance", path)
    assert code == 2


def test_missing_file_and_bad_json(capsys, tmp_path):
    assert run(capsys, "exact", "--instance", str(tmp_path / "nope.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "exact", "--instance", str(bad))[0] == 1


def test_mirrored_instance_output_is_user_oriented(capsys, tmp_path):
    path = _write(tmp_path, {"A": [0.5, 0.5], "B": [0.0, 0.5], "alpha": [-1, -1], "beta": [0, 1]})
    code, out, _ = run(capsys, "exact", "--instance", path)
    assert code == 0
    pieces = json.loads(out)["path"]["pieces"]
    assert pieces[0]["start"] == pytest.approx([0.5, 0.5])
    assert pieces[-1]["end"] == pytest.approx([0.0, 0.5])
    code, out, _ = run(capsys, "discrete", "--instance", path, "--p", "10")
    assert code == 0


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "mincurv", "dubins", "--instance", INSTANCE, "--radius", "0.3"],
        capture_output=True, text=True,
    )
    assert res.returncode == 2
    res = subprocess.run([sys.executable, "-m", "mincurv", "exact", "--instance", INSTANCE], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["case_tag"] == "SegmentThenArc"
