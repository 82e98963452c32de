import math
import os
import pathlib

import numpy as np
import pytest

import irops


def test_synth_report_shares():
    rep = irops.report(irops.synth_csv(20000, 42))
    assert rep["total"] == 20000
    assert abs(rep["delayed_share_of_disrupted_pct"] - 94.0) <= 1.0
    assert rep["cells"][("Weather", "Delayed")] > 0


def test_synth_is_deterministic():
    assert irops.synth_csv(500, 7) == irops.synth_csv(500, 7)
    assert irops.synth_csv(500, 7) != irops.synth_csv(500, 8)


def test_engineer_columns():
    names, x = irops.engineer(irops.synth_csv(2000, 3), 3)
    assert x.shape[1] == len(names)
    assert "ACTL_TURN_MINS" in names
    assert np.isfinite(x).all()


def test_bad_csv_raises_schema_error():
    with pytest.raises(irops.SchemaError):
        irops.report("not,a,flight,file\n")


def test_vincenty_equator():
    assert irops.vincenty(0.0, 0.0, 0.0, 1.0) == pytest.approx(111319.491, abs=0.01)
    with pytest.raises(irops.ConvergenceError):
        irops.vincenty(0.0, 0.0, 0.5, 179.7)
    assert irops.vincenty(0.0, 0.0, 0.5, 179.7, fallback=True) > 1.9e7


def test_yeo_johnson_inverse():
    for lam in (-1.5, 0.0, 0.5, 2.0):
        for v in (-3.0, -0.2, 0.0, 0.7, 5.0):
            assert irops.yeo_johnson_inverse(irops.yeo_johnson(v, lam), lam) == pytest.approx(v, abs=1e-10)
    rng = np.random.default_rng(0)
    assert 0.8 <= irops.fit_yeo_johnson_lambda(rng.normal(size=2000).tolist()) <= 1.2


def test_pca_orthonormal():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(200, 5)) * np.array([4.0, 2.0, 1.0, 0.5, 0.1])
    out = irops.pca(x, 3)
    c = out["components"]
    assert np.allclose(c @ c.T, np.eye(3), atol=1e-10)
    assert np.all(np.diff(out["eigenvalues"]) <= 0)
    assert out["scores"].shape == (200, 3)


def test_tsne_separates_clusters():
    rng = np.random.default_rng(2)
    centers = np.eye(3, 5) * 10.0
    x = np.vstack([c + rng.normal(scale=0.5, size=(40, 5)) for c in centers])
    y, trace = irops.tsne(x, perplexity=10.0, n_iter=500, seed=4)
    assert y.shape == (120, 2)
    assert trace[-1][1] < trace[0][1]
    truth = np.repeat(np.arange(3), 40)
    means = np.array([y[truth == c].mean(axis=0) for c in range(3)])
    nearest = np.argmin(((y[:, None, :] - means[None, :, :]) ** 2).sum(axis=2), axis=1)
    assert (nearest == truth).mean() >= 0.95


def test_mutual_information():
    rng = np.random.default_rng(3)
    x = rng.normal(size=2000)
    y = 0.9 * x + math.sqrt(0.19) * rng.normal(size=2000)
    assert irops.mi_ksg(x.tolist(), y.tolist()) == pytest.approx(-0.5 * math.log(1 - 0.81), abs=0.08)
    assert irops.mi_ksg(x.tolist(), rng.normal(size=2000).tolist()) < 0.05


def test_gpr_fit_predict():
    rng = np.random.default_rng(4)
    x = rng.uniform(-2, 2, size=(80, 2))
    y = np.sin(1.5 * x[:, 0]) + 0.05 * rng.normal(size=80)
    model = irops.gpr_fit(x, y, restarts=2, seed=5)
    assert len(model.lengthscales) == 2
    assert model.lengthscales[1] > 5 * model.lengthscales[0]
    xs = rng.uniform(-2, 2, size=(30, 2))
    mean, var = model.predict(xs)
    assert np.sqrt(np.mean((mean - np.sin(1.5 * xs[:, 0])) ** 2)) < 0.1
    assert np.all(var >= 0)
    pairs = irops.sme_qq(mean.tolist(), var.tolist(), np.sin(1.5 * xs[:, 0]).tolist(), model.noise_variance)
    assert len(pairs) == 30
    with pytest.raises(irops.DimensionError):
        model.predict(np.zeros((3, 5)))


def test_matern_value():
    assert irops.matern32(0.0) == 1.0
    assert irops.matern32(1.0) == pytest.approx(0.48336, abs=1e-4)


def test_cli_round_trip(tmp_path):
    root = pathlib.Path(os.environ.get("IROPS_TEST_TMP", tmp_path))
    root.mkdir(parents=True, exist_ok=True)
    code, _, _ = irops.run(["synth", "--n", "1000", "--seed", "1", "-o", str(root / "synth")])
    assert code == 0
    assert (root / "synth" / "flights.csv").exists()
    code, _, err = irops.run(["report", "-i", str(root / "missing.csv"), "-o", str(root / "r")])
    assert code == 1 and err
    assert irops.run(["bogus"])[0] == 2
