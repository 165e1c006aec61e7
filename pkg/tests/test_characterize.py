import json

import numpy as np
import pytest

import pdckit as pk
from pdckit import characterize as ch


def test_grid_for_zeta_reaches_target():
    pulse = ch.default_pulse("sech")
    pmf = pk.pmf_for_xi("sech", 1.0, "sinc", 1.26)
    for zeta in (8.0, 25.0):
        grid = ch.grid_for_zeta(pulse, pmf, zeta, 200)
        ja = pk.build_jsa(pulse, pmf, grid)
        assert pk.realized_zeta(ja) == pytest.approx(zeta, rel=0.02)
        assert grid.zeta == zeta


def test_optimize_xi_gaussian_case():
    xi, p = ch.optimize_xi("gaussian", "gaussian", zeta=20, n_bins=200)
    assert xi == pytest.approx(1.0, abs=0.01)
    assert p == pytest.approx(1.0, abs=1e-4)


def test_optimize_xi_bracket_failure():
    with pytest.raises(ValueError, match="unimodal"):
        ch.optimize_xi("gaussian", "gaussian", zeta=15, n_bins=128,
                       bracket=(2.0, 6.0))


def test_sweep_xi_fixed_point():
    xi, p = ch.optimize_xi("gaussian", "sinc", zeta=20, n_bins=200)
    res = ch.sweep_xi("gaussian", "sinc", [xi], zeta=20, n_bins=200)
    assert res.purity[0] == pytest.approx(p, abs=1e-3)


def test_sweep_xi_limits_lose_purity():
    res = ch.sweep_xi("gaussian", "gaussian", [0.15, 1.0, 6.0], zeta=15, n_bins=200)
    assert res.purity[1] > 0.999
    assert res.purity[0] < 0.6
    assert res.purity[2] < 0.6


def test_sweep_chirp_monotone():
    res = ch.sweep_chirp("sech", "sinc", [0.0, 0.7, 1.5, 3.0], zeta=12, n_bins=128)
    assert np.all(np.diff(res.purity) < 0)
    assert res.metadata["xi"] == pk.OPTIMAL_XI[("sech", "sinc")]


def test_sweeps_are_deterministic_and_thread_independent():
    kw = dict(zeta=10, n_bins=96)
    a = ch.sweep_xi("sech", "sinc", [0.9, 1.26, 1.8], **kw)
    b = ch.sweep_xi("sech", "sinc", [0.9, 1.26, 1.8], **kw)
    c = ch.sweep_xi("sech", "sinc", [0.9, 1.26, 1.8], threads=3, **kw)
    np.testing.assert_array_equal(a.purity, b.purity)
    np.testing.assert_array_equal(a.purity, c.purity)


def test_sweep_result_validation():
    with pytest.raises(ValueError):
        ch.SweepResult("x", np.array([1.0, 2.0]), np.array([0.5]),
                       np.array([0.5, 0.6]), np.array([0.5, 0.6]))
    with pytest.raises(ValueError):
        ch.SweepResult("x", np.array([1.0]), np.array([1.5]),
                       np.array([0.5]), np.array([0.5]))


def test_sweep_csv_and_sidecar(tmp_path):
    res = ch.sweep_xi("gaussian", "sinc", [1.0, 1.13], zeta=8, n_bins=64)
    path = tmp_path / "sweep.csv"
    ch.write_sweep_csv(res, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "xi,purity,purity_like_jsi,purity_like_sqrt_jsi"
    assert len(lines) == 3
    sidecar = json.loads((tmp_path / "sweep.csv.json").read_text())
    assert sidecar["pef_shape"] == "gaussian"
    assert sidecar["n_bins"] == 64


def test_counting_mc_determinism_and_order_independence():
    ja = ch.build_for_xi("sech", "sinc", 1.26, 10, 64)
    jsi = pk.to_intensity(ja).values
    r1 = ch.jsi_counting_montecarlo(jsi, [10, 100], trials=20, rng_seed=5)
    r2 = ch.jsi_counting_montecarlo(jsi, [10, 100], trials=20, rng_seed=5)
    np.testing.assert_array_equal(r1.mean, r2.mean)
    r4 = ch.jsi_counting_montecarlo(jsi, [10, 100], trials=20, rng_seed=6)
    assert not np.array_equal(r1.mean, r4.mean)
    r5 = ch.jsi_counting_montecarlo(jsi, [10, 100], trials=20, rng_seed=5, threads=2)
    np.testing.assert_array_equal(r1.mean, r5.mean)


def test_counting_mc_validation():
    ja = ch.build_for_xi("sech", "sinc", 1.26, 8, 32)
    with pytest.raises(ValueError, match="max_counts"):
        ch.jsi_counting_montecarlo(pk.to_intensity(ja).values, [0.5], trials=5)


def test_counting_mc_zero_noise_limit():
    ja = ch.build_for_xi("sech", "sinc", 1.26, 10, 64)
    jsi = pk.to_intensity(ja).values
    res = ch.jsi_counting_montecarlo(jsi, [2e7], trials=4, rng_seed=1)
    assert res.mean[0] == pytest.approx(res.deterministic, abs=2e-4)


def test_poling_error_study_smoke():
    res = ch.poling_error_study("wall_jitter", [0.0, 0.08], methods=["periodic"],
                                trials=5, rng_seed=3)
    assert len(res) == 1
    r = res[0]
    assert r.mean_purity[0] == pytest.approx(r.baseline_purity, abs=1e-12)
    assert r.mean_amplitude_ratio[0] == pytest.approx(1.0, abs=1e-12)
    assert r.mean_amplitude_ratio[1] < 1.0
    # determinism
    res2 = ch.poling_error_study("wall_jitter", [0.0, 0.08], methods=["periodic"],
                                 trials=5, rng_seed=3)
    np.testing.assert_array_equal(res[0].mean_purity, res2[0].mean_purity)


def test_poling_error_study_validation():
    with pytest.raises(ValueError, match="error kind"):
        ch.poling_error_study("melting", [0.1])


def test_reference_cache_reused():
    ch._REFERENCE_CACHE.clear()
    v1 = ch.reference_purity(fast=True)
    assert ch._REFERENCE_CACHE  # populated
    v2 = ch.reference_purity(fast=True)
    assert v1 == v2


def test_purity_map_small(tmp_path):
    res = ch.purity_map([8, 20], [48, 96], fast_reference=True)
    assert res.purity.shape == (2, 2)
    assert 0 < res.reference <= 1
    path = tmp_path / "map.csv"
    ch.write_map_csv(res, path)
    sidecar = json.loads((tmp_path / "map.csv.json").read_text())
    assert sidecar["reference_purity"] == pytest.approx(res.reference)


def test_table1_smoke():
    rows = ch.table1(zeta=10, n_bins=96)
    assert [r["pef"] for r in rows] == ["gaussian", "sech", "gaussian", "sech"]
    gg = rows[0]
    assert gg["optimal_xi"] == pytest.approx(1.0, abs=0.02)
    assert gg["max_purity"] > 0.999
