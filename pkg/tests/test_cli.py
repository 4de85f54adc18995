"""End-to-end tests of the command line frontend."""

import csv
import io
import json
import math

import pytest

from curvetrace.cli import main

SQRT_CURVE_JSON = {"deg_y": 2,
                   "y_coeffs": [[[0, 0], [-1, 0]], [[0, 0]], [[1, 0]]]}

MONODROMY_INPUT = json.dumps({
    "curve": SQRT_CURVE_JSON,
    "path": [{"type": "arc", "center": [0, 0], "radius": 1.0,
              "start_angle": 0.0, "end_angle": 2 * math.pi,
              "orientation": 1}],
    "y0": [1, 0],
})

SEGMENT_INPUT = json.dumps({
    "curve": SQRT_CURVE_JSON,
    "path": [{"type": "segment", "from": [1, 0], "to": [4, 0]}],
    "y0": [1, 0],
})

THROUGH_BRANCH_POINT = json.dumps({
    "curve": SQRT_CURVE_JSON,
    "path": [{"type": "segment", "from": [1, 0], "to": [-1, 0]}],
    "y0": [1, 0],
})


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_trace_monodromy_fixture(capsys):
    code, out, _ = run_cli(capsys, "trace", MONODROMY_INPUT)
    assert code == 0
    rows = json.loads(out)
    assert rows[-1]["T"] == 1.0
    y = complex(*rows[-1]["y"])
    assert abs(y - (-1)) < 1e-9


def test_trace_csv_output(capsys):
    code, out, _ = run_cli(capsys, "trace", SEGMENT_INPUT, "--output", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[-1]["y_re"]) == pytest.approx(2.0)
    assert rows[-1]["delta"] == ""
    assert float(rows[0]["delta"]) > 0


def test_trace_through_branch_point_exits_2(capsys):
    code, _, err = run_cli(capsys, "trace", THROUGH_BRANCH_POINT)
    assert code == 2
    assert "failure" in err


def test_malformed_json_exits_1(capsys):
    code, _, err = run_cli(capsys, "trace", '{"curve": nope}')
    assert code == 1
    assert "not valid JSON" in err


def test_missing_field_named(capsys):
    bad = json.dumps({"curve": {"y_coeffs": [["bad"]]},
                      "path": [{"type": "segment", "from": [1, 0],
                                "to": [4, 0]}],
                      "y0": [1, 0]})
    code, _, err = run_cli(capsys, "trace", bad)
    assert code == 1
    assert "y_coeffs[0]" in err


def test_deterministic_output(capsys):
    _, first, _ = run_cli(capsys, "trace", MONODROMY_INPUT)
    _, second, _ = run_cli(capsys, "trace", MONODROMY_INPUT)
    assert first == second


def test_trace_plot_written(capsys, tmp_path):
    target = tmp_path / "trace.svg"
    code, _, _ = run_cli(capsys, "trace", SEGMENT_INPUT,
                         "--plot", str(target))
    assert code == 0
    assert target.exists()
    assert b"<svg" in target.read_bytes()[:300]


def test_trace_high_precision(capsys):
    code, out, _ = run_cli(capsys, "trace", SEGMENT_INPUT,
                           "--precision", "113")
    assert code == 0
    rows = json.loads(out)
    y_re = rows[-1]["y"][0]
    assert isinstance(y_re, str)  # full-precision decimal string
    assert abs(float(y_re) - 2.0) < 1e-12


def test_trace_system_fixture(capsys):
    system = {
        "equations": [
            {"y_coeffs": [[[0, 0], [-1, 0]], [[0, 0]], [[1, 0]]]}],
        "initial": [[1, 0], [1, 0]],
        "target": [4, 0],
    }
    code, out, _ = run_cli(capsys, "trace-system", json.dumps(system))
    assert code == 0
    rows = json.loads(out)
    x1 = complex(*rows[-1]["positions"][1])
    assert abs(x1 - 2) < 1e-9


def test_bench_table_rows(capsys):
    code, out, _ = run_cli(capsys, "bench", "--m-values", "10",
                           "--k-values", "10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    by_key = {r["m_or_k"]: r for r in rows}
    m10 = by_key["m=10"]
    assert (m10["paper_alg1_steps"], m10["bl2013_steps"],
            m10["hhl2014_intervals"]) == ("9", "184", "51")
    assert float(m10["endpoint_error"]) < 1e-9
    k10 = by_key["k=10"]
    assert (k10["paper_alg1_steps"], k10["bl2013_steps"],
            k10["hhl2014_intervals"]) == ("44", "1108", "71")
    assert float(k10["endpoint_error"]) < 1e-9


def test_compare_resultant_example2(capsys):
    code, out, _ = run_cli(capsys, "compare-resultant", "example2",
                           "--rho-fraction", "0.85")
    assert code == 0
    result = json.loads(out)
    assert result["resultant_steps"] > result["system_steps"]


def test_compare_resultant_variant_nontermination(capsys):
    code, out, _ = run_cli(capsys, "compare-resultant", "example2-variant")
    assert code == 0
    result = json.loads(out)
    assert result["resultant_steps"] == "NON_TERMINATION"
    assert result["system_steps"] >= 1


def test_compare_resultant_linear_control(capsys):
    code, out, _ = run_cli(capsys, "compare-resultant", "linear")
    assert code == 0
    result = json.loads(out)
    assert result["system_steps"] == 1
    assert result["resultant_steps"] == 1


def test_darboux_command(capsys, tmp_path):
    target = tmp_path / "loop.svg"
    code, out, _ = run_cli(capsys, "darboux", "--turns", "1",
                           "--plot", str(target))
    assert code == 0
    rows = json.loads(out)
    y = complex(*rows[-1]["y"])
    assert abs(y - complex(math.cos(2 * math.pi / 5),
                           -math.sin(2 * math.pi / 5))) < 1e-6
    assert target.exists()


def test_bad_rho_fraction_rejected(capsys):
    code, _, err = run_cli(capsys, "trace", SEGMENT_INPUT,
                           "--rho-fraction", "1.5")
    assert code == 1
    assert "rho-fraction" in err
