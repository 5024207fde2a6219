import json
import os
import subprocess

import pytest

import cumdiff


def test_curve_and_metrics():
    agg = cumdiff.aggregate([0.1, 0.2, 0.2, 0.3], [1.0, 0.0, 1.0, 0.5], [0.0, 0.0, 0.0, 0.5])
    assert len(agg) == 3
    curve = cumdiff.cumulative_curve(agg)
    assert curve.abscissae[-1] == pytest.approx(1.0)
    assert curve.ordinates[-1] == pytest.approx(0.5)
    m = cumdiff.metrics(agg)
    assert m.kuiper >= m.kolmogorov_smirnov >= abs(m.average_difference)
    assert cumdiff.secant_slope(curve, 0, 1) == pytest.approx(1.0)


def test_errors_carry_kind():
    with pytest.raises(cumdiff.CumdiffError) as info:
        cumdiff.aggregate([], [], [])
    assert info.value.kind == "EmptyInput"
    with pytest.raises(ValueError):
        cumdiff.aggregate([0.1, 0.2], [0.0, float("nan")], [0.0, 0.0])


def test_hilbert_round_trip():
    for index in range(64):
        point = cumdiff.hilbert_decode(index, 2, 3)
        assert cumdiff.hilbert_encode(point, 3) == index
    assert 0.0 <= cumdiff.hilbert_score([0.3, 0.7]) < 1.0


def test_bins_and_diagram():
    scores = [i / 10 for i in range(10)]
    agg = cumdiff.aggregate(scores, scores, [0.5] * 10)
    interior = cumdiff.bins_equivariance(agg, 2)
    assert len(interior) == 1
    d = cumdiff.diagram(scores, scores, [0.5] * 10, None, interior)
    assert len(d.q_mean) == 2


def test_synth_and_analyze(tmp_path):
    data, expected = cumdiff.synth(n=400, m=100, profile="jump", seed=2)
    assert len(data["scores"]) == 400
    assert len(expected) == 100
    path = tmp_path / "data.csv"
    with open(path, "w") as f:
        f.write("score,q,r\n")
        for s, q, r in zip(data["scores"], data["q"], data["r"]):
            f.write(f"{s!r},{q!r},{r!r}\n")
    out = json.loads(cumdiff.analyze_csv(str(path), ["score"], "q", "r", bins=[5]))
    assert out["metrics"]["kuiper"] > 0
    assert out["provenance"]["records"] == 400


def test_coverage_small():
    assert 0.8 <= cumdiff.coverage(trials=200, n=200, m=20, seed=1) <= 1.0


@pytest.mark.skipif("CUMDIFF_CLI" not in os.environ, reason="command-line tool not provided")
def test_cli_runs(tmp_path):
    result = subprocess.run(
        [os.environ["CUMDIFF_CLI"], "synth", "--n", "200", "--m", "50", "--out", str(tmp_path)],
        capture_output=True,
        text=True,
        check=True,
    )
    assert "kuiper" in result.stdout
