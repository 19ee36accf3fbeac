import csv
import json
from dataclasses import replace

import numpy as np
import pytest

from vlmult.exponents import ConstantExponent
from vlmult.grid import GridSpec, forward_transform
from vlmult.harness.cli import main
from vlmult.harness.config import ConfigError, LambdaSweep, default_config, load_configs
from vlmult.harness.corpus import (
    band_limited,
    constant_pairs,
    estimate_bilinear_norm,
    holder_pairs,
    random_pairs,
    standard_corpus,
)
from vlmult.harness.experiments import run
from vlmult.harness.report import CSV_HEADER, ExperimentReport, fit_slope, to_csv, to_json
from vlmult.norms import WEIGHTED_NORM_CONVENTION
from vlmult.symbols import Constant, Gaussian

GRID = GridSpec(1, 8.0, 128)


# config ---------------------------------------------------------------------

def test_defaults_and_overrides(tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("seed: 4\ngrid: {N: 64}\ne4:\n  params: {rectangles: 21}\n  tolerances: {spread: 9.0}\n")
    (e1, e4) = load_configs(path, ("e1", "e4"), grid_l=6.0)
    assert e1.seed == e4.seed == 4
    assert e4.grid.N == 64 and e4.grid.L == 6.0
    assert e4.params["rectangles"] == 21 and e4.params["min_width"] == 0.5
    assert e4.tol("spread") == 9.0
    assert load_configs(path, ("e1",), seed=9)[0].seed == 9


@pytest.mark.parametrize("text", [
    "bogus: 1\n",
    "e1:\n  colour: red\n",
    "e4:\n  params: {rectangle: 3}\n",
    "e4:\n  tolerances: {sprd: 3}\n",
    "grid: {N: 100}\n",
    "e2:\n  symbols: [{kind: wavelet}]\n",
    "e1:\n  lambda_sweep: {min: 8, max: 2}\n",
    "- just\n- a list\n",
])
def test_bad_configs(tmp_path, text):
    path = tmp_path / "c.yaml"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_configs(path)


def test_lambda_sweep():
    lams = LambdaSweep().values()
    assert lams[0] == 2.0 and lams[-1] == pytest.approx(64.0) and len(lams) == 11
    with pytest.raises(ConfigError):
        default_config("e10")


# corpus ---------------------------------------------------------------------

def test_corpus_is_seeded_and_band_limited():
    a = band_limited(GRID, 3, 7)
    assert np.array_equal(a.values, band_limited(GRID, 3, 7).values)
    assert not np.array_equal(a.values, band_limited(GRID, 3, 8).values)
    F = forward_transform(a).values
    assert np.all(np.abs(F[np.abs(GRID.xi1d) > 2.0 + 1e-9]) < 1e-10)
    with pytest.raises(ValueError):
        band_limited(GRID, 0, 0, band=GRID.nyquist)


def test_corpus_independent_of_resolution():
    fine = GRID.refine()
    Fa = forward_transform(band_limited(GRID, 1, 2, band=1.0)).values
    Fb = forward_transform(band_limited(fine, 1, 2, band=1.0)).values
    k = np.arange(-16, 17)
    assert np.allclose(Fa[k % GRID.N], Fb[k % fine.N], atol=1e-12)


def test_holder_pairs_attain_equality():
    p1, p2, p3 = ConstantExponent(4.0), ConstantExponent(4.0), ConstantExponent(2.0)
    est = estimate_bilinear_norm(Constant(1.0, 2), p1, p2, p3, holder_pairs(GRID, p1, p2, p3))
    assert est == pytest.approx(1.0, abs=1e-6)


def test_estimator_examples():
    corpus = standard_corpus(GRID, 0, 6, (ConstantExponent(4.0),) * 2 + (ConstantExponent(2.0),))
    one = estimate_bilinear_norm(Constant(1.0, 2), 4.0, 4.0, 2.0, corpus)
    assert one >= 1.0 - 1e-6
    assert estimate_bilinear_norm(Constant(0.0, 2), 4.0, 4.0, 2.0, corpus) == 0.0
    with pytest.raises(ValueError):
        estimate_bilinear_norm(Constant(1.0, 2), 4.0, 4.0, 2.0, [])
    m = Gaussian(1.0, 2)
    small = estimate_bilinear_norm(m, 4.0, 4.0, 2.0, corpus[:3])
    assert estimate_bilinear_norm(m, 4.0, 4.0, 2.0, corpus) >= small
    est, ratios = estimate_bilinear_norm(m, 4.0, 4.0, 2.0, corpus, return_all=True)
    assert len(ratios) == len(corpus) and est == np.nanmax(ratios)


def test_constant_and_random_pairs():
    assert len(constant_pairs(GRID, 2)) == 2
    pairs = random_pairs(GRID, 5, 3)
    assert len({p.label for p in pairs}) == 3
    assert all(p.f.grid == GRID for p in pairs)


# reports --------------------------------------------------------------------

def test_fit_slope_recovers_power_law():
    x = np.geomspace(1, 100, 9)
    s = fit_slope(x, 3 * x**-0.75, "p")
    assert s.slope == pytest.approx(-0.75, abs=1e-12)
    assert s.residual < 1e-12 and s.points == 5


def test_csv_and_json_format():
    rep = ExperimentReport("e0", {"k": 1})
    rep.info("a", "value", 1.5)
    rep.check("a", "error", 0.1, 0.2, True)
    rep.check("b", "error", float("nan"), 0.2, True)
    text = to_csv([rep], reproducible=True)
    rows = list(csv.reader(text.splitlines()))
    assert tuple(rows[0]) == CSV_HEADER
    assert rows[1] == ["e0", "a", "value", "1.5", "", ""]
    assert rows[2][-1] == "true" and rows[3][-1] == "false"
    assert to_csv([rep]).startswith("# generated")
    data = json.loads(to_json([rep]))["reports"][0]
    assert data["passed"] is False
    assert all(r["provenance"] == WEIGHTED_NORM_CONVENTION for r in data["rows"])
    assert data["rows"][2]["value"] == "nan"


# experiments and CLI --------------------------------------------------------

def test_small_experiment_runs():
    cfg = default_config("e6")
    rep = run(replace(cfg, corpus_size=3))
    assert rep.passed and len(rep.rows) == 2


def test_cli_exit_codes(tmp_path, capsys):
    quick = tmp_path / "q.yaml"
    quick.write_text("corpus_size: 3\n")
    assert main(["e6", "--config", str(quick), "--out", str(tmp_path / "ok.csv")]) == 0
    assert (tmp_path / "ok.json").exists()

    strict = tmp_path / "s.yaml"
    strict.write_text("corpus_size: 3\ne6:\n  tolerances: {identity: 1.0e-30}\n")
    assert main(["e6", "--config", str(strict), "--out", str(tmp_path / "fail.csv")]) == 1
    assert "FAIL e6" in capsys.readouterr().err

    bad = tmp_path / "b.yaml"
    bad.write_text("e6:\n  unknown: 1\n")
    assert main(["e6", "--config", str(bad), "--out", str(tmp_path / "x.csv")]) == 2
    assert main(["e6", "--seed", "-1", "--out", str(tmp_path / "x.csv")]) == 2
    assert main(["e6", "--config", str(tmp_path / "missing.yaml")]) == 2
    with pytest.raises(SystemExit):
        main(["e99"])
