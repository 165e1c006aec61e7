import math

import numpy as np
import pytest

import pdckit as pk
from pdckit import characterize as ch

CENTER = 2.38e15


def test_grid_detunings_symmetric():
    g = pk.SpectralGrid(n_bins=8, span=4.0)
    d = g.detunings
    np.testing.assert_allclose(d, -d[::-1], atol=1e-15)
    assert g.bin_width == pytest.approx(0.5)
    assert len(d) == 8


def test_grid_validation():
    with pytest.raises(ValueError):
        pk.SpectralGrid(n_bins=1, span=1.0)
    with pytest.raises(ValueError):
        pk.SpectralGrid(n_bins=4, span=-1.0)


def test_constant_jsa_two_bins():
    # huge widths make both factors 1 over the grid
    pulse = pk.PulseSpec("gaussian", 1e30, CENTER)
    pmf = pk.PmfSpec("gaussian", 1e30)
    grid = pk.SpectralGrid(n_bins=2, span=2.0)
    ja = pk.build_jsa(pulse, pmf, grid)
    area = grid.bin_width**2
    np.testing.assert_allclose(np.abs(ja.values), 1 / math.sqrt(4 * area), rtol=1e-12)


def test_normalization_includes_measure():
    ja = ch.build_for_xi("sech", "sinc", 1.26, 12, 128)
    assert ja.normalized
    assert ja.l2_norm == pytest.approx(1.0, abs=1e-12)


def test_norm_stable_under_refinement():
    pulse = ch.default_pulse("gaussian")
    pmf = pk.pmf_for_xi("gaussian", 1.0, "gaussian", 1.0)
    grid1 = ch.grid_for_zeta(pulse, pmf, 10, 200)
    grid2 = pk.SpectralGrid(n_bins=400, span=grid1.span)
    raw1 = pk.build_jsa(pulse, pmf, grid1, normalize=False)
    raw2 = pk.build_jsa(pulse, pmf, grid2, normalize=False)
    assert raw1.l2_norm == pytest.approx(raw2.l2_norm, rel=1e-10)
    assert raw1.normalize().l2_norm == pytest.approx(1.0, abs=1e-12)
    assert raw2.normalize().l2_norm == pytest.approx(1.0, abs=1e-12)


def test_separable_gaussian_is_rank_one():
    ja = ch.build_for_xi("gaussian", "gaussian", 1.0, 20, 200)
    b = pk.schmidt_decompose(ja).coefficients
    assert b[0] == pytest.approx(1.0, abs=1e-9)


def test_wide_pmf_is_strongly_correlated():
    pulse = ch.default_pulse("gaussian")
    pmf = pk.PmfSpec("gaussian", 8.0 * pulse.width_param)
    grid = ch.grid_for_zeta(pulse, pmf, 25, 400)
    ja = pk.build_jsa(pulse, pmf, grid)
    assert pk.purity(ja) < 0.3


def test_symmetric_jsa_is_symmetric_matrix():
    for pef, pmf in (("gaussian", "gaussian"), ("sech", "sinc")):
        ja = ch.build_for_xi(pef, pmf, 1.2, 10, 96)
        np.testing.assert_allclose(ja.values, ja.values.T, atol=1e-12)
        fs = pk.marginal_fwhm(ja, "signal")
        fi = pk.marginal_fwhm(ja, "idler")
        assert fs == pytest.approx(fi, rel=1e-9)


def test_marginal_fwhm_separable_gaussian_analytic():
    # separable sigma_pef = sigma_pmf = s: marginal intensity is gaussian
    # with std s/2, so FWHM = sqrt(2 ln 2) * s
    pulse = ch.default_pulse("gaussian")
    pmf = pk.pmf_for_xi("gaussian", 1.0, "gaussian", 1.0)
    grid = ch.grid_for_zeta(pulse, pmf, 15, 512)
    ja = pk.build_jsa(pulse, pmf, grid)
    expected = math.sqrt(2 * math.log(2)) * pulse.width_param
    # linear interpolation between bins: error O((bin/FWHM)^2)
    assert pk.marginal_fwhm(ja, "signal") == pytest.approx(expected, rel=1e-3)


def test_marginal_fwhm_range_too_small():
    pulse = ch.default_pulse("gaussian")
    pmf = pk.pmf_for_xi("gaussian", 1.0, "gaussian", 1.0)
    grid = pk.SpectralGrid(n_bins=64, span=0.5 * pulse.amplitude_fwhm)
    ja = pk.build_jsa(pulse, pmf, grid)
    with pytest.raises(ValueError, match="spectral range too small"):
        pk.marginal_fwhm(ja)


def test_marginal_fwhm_edge_peak():
    grid = pk.SpectralGrid(n_bins=16, span=1.0)
    vals = np.zeros((16, 16), dtype=complex)
    vals[0, :] = 1.0  # peak on the first signal bin
    ja = pk.JointAmplitude(grid, vals, normalized=False)
    with pytest.raises(ValueError, match="edge"):
        pk.marginal_fwhm(ja, "signal")


def test_jsi_ignores_chirp_and_signs():
    flat = ch.build_for_xi("sech", "sinc", 1.26, 10, 96)
    chirped = ch.build_for_xi("sech", "sinc", 1.26, 10, 96, chirp_kw2=2.0)
    np.testing.assert_allclose(pk.to_intensity(flat).values,
                               pk.to_intensity(chirped).values, atol=1e-12)

    grid = pk.SpectralGrid(n_bins=4, span=1.0)
    vals = np.ones((4, 4)) / 4.0
    flipped = vals.copy()
    flipped[1, 2] *= -1
    a = pk.JointAmplitude(grid, vals.astype(complex))
    b = pk.JointAmplitude(grid, flipped.astype(complex))
    np.testing.assert_allclose(pk.to_intensity(a).values, pk.to_intensity(b).values)


def test_sqrt_jsi_reconstructs_positive_jsa():
    ja = ch.build_for_xi("gaussian", "gaussian", 1.3, 10, 64)
    jsi = pk.to_intensity(ja)
    np.testing.assert_allclose(np.sqrt(jsi.values), np.abs(ja.values), atol=1e-14)


def test_realized_zeta_matches_request():
    ja = ch.build_for_xi("sech", "sinc", 1.26, 20, 256)
    assert pk.realized_zeta(ja) == pytest.approx(20.0, rel=0.02)


def test_jsa_csv_round_trip(tmp_path):
    ja = ch.build_for_xi("sech", "sinc", 1.26, 8, 24, chirp_kw2=1.0)
    path = tmp_path / "jsa.csv"
    pk.write_jsa_csv(ja, path)
    back = pk.read_jsa_csv(path)
    np.testing.assert_allclose(back.values, ja.values, rtol=1e-15)
    assert back.grid.n_bins == ja.grid.n_bins
    assert back.grid.span == pytest.approx(ja.grid.span)
    assert back.normalized == ja.normalized


def test_jsi_csv_format(tmp_path):
    ja = ch.build_for_xi("gaussian", "sinc", 1.13, 8, 6)
    path = tmp_path / "jsi.csv"
    pk.write_jsi_csv(pk.to_intensity(ja), path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# pdckit-jsi v1")
    assert lines[1].split(",")[0] == "omega_s"
    assert len(lines) == 2 + 6
    # single real column block: header + one value per idler bin
    assert len(lines[2].split(",")) == 1 + 6


def test_intensity_rejects_negative():
    grid = pk.SpectralGrid(n_bins=2, span=1.0)
    with pytest.raises(ValueError):
        pk.JointIntensity(grid, np.array([[1.0, -0.1], [0.0, 0.0]]))
