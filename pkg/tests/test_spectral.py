import math

import numpy as np
import pytest

import pdckit as pk
from pdckit.spectral import GAUSS_FWHM_SIGMA, SECH_FWHM_TAU, SINC_FWHM_KAPPA

CENTER = 2.38e15


def test_derived_constants_match_published_roundings():
    # equal-width conversion factors, computed from closed forms
    assert SECH_FWHM_TAU / GAUSS_FWHM_SIGMA == pytest.approx(0.712, abs=1e-3)
    assert SINC_FWHM_KAPPA / GAUSS_FWHM_SIGMA == pytest.approx(1.61, abs=1e-2)
    assert SECH_FWHM_TAU / SINC_FWHM_KAPPA == pytest.approx(0.442, abs=1e-3)
    # width-ratio prefactors
    assert GAUSS_FWHM_SIGMA / SECH_FWHM_TAU == pytest.approx(1.40, abs=5e-3)
    assert SINC_FWHM_KAPPA / SECH_FWHM_TAU == pytest.approx(2.26, abs=5e-3)


def test_width_convert_values():
    assert pk.width_convert("gaussian", 1.0, "sech") == pytest.approx(0.712, abs=1e-3)
    assert pk.width_convert("sinc", 1.0, "gaussian") == pytest.approx(1.61, abs=1e-2)


def test_width_convert_round_trip():
    x = 0.7312
    back = pk.width_convert("sech", pk.width_convert("gaussian", x, "sech"), "gaussian")
    assert back == pytest.approx(x, rel=1e-12)
    back = pk.width_convert("sinc", pk.width_convert("gaussian", x, "sinc"), "gaussian")
    assert back == pytest.approx(x, rel=1e-12)


def test_pef_peak_is_one():
    for shape in ("gaussian", "sech"):
        p = pk.PulseSpec(shape, 1.3, CENTER)
        assert pk.pef_value(p, 0.0, 0.0) == pytest.approx(1.0)


def test_gaussian_pef_half_maximum():
    sigma = 2.2
    p = pk.PulseSpec("gaussian", sigma, CENTER)
    s = math.sqrt(2 * math.log(2)) * sigma
    assert abs(pk.pef_value(p, s / 2, s / 2)) == pytest.approx(0.5, rel=1e-12)


def test_sech_chirp_phase():
    tau = 0.9
    p = pk.PulseSpec("sech", tau, CENTER, chirp_kw2=2.0)
    w = p.amplitude_fwhm
    val = pk.pef_value(p, w / 4, w / 4)  # detuning sum w/2
    assert abs(val) == pytest.approx(0.5, rel=1e-12)
    # k = 2/w^2, phase = -k (w/2)^2 = -1/2
    assert np.angle(val) == pytest.approx(-0.5, abs=1e-12)


def test_chirp_is_pure_phase():
    rng = np.random.default_rng(7)
    flat = pk.PulseSpec("sech", 1.1, CENTER)
    chirped = pk.PulseSpec("sech", 1.1, CENTER, chirp_kw2=3.7)
    pts = rng.normal(0, 2, (40, 2))
    a = np.abs(pk.pef_value(flat, pts[:, 0], pts[:, 1]))
    b = np.abs(pk.pef_value(chirped, pts[:, 0], pts[:, 1]))
    np.testing.assert_allclose(a, b, rtol=1e-13)


def test_pef_depends_on_sum_only():
    rng = np.random.default_rng(11)
    p = pk.PulseSpec("gaussian", 1.4, CENTER, chirp_kw2=1.0)
    for _ in range(20):
        s = rng.normal(0, 2)
        split1, split2 = rng.uniform(0, 1, 2)
        v1 = pk.pef_value(p, split1 * s, (1 - split1) * s)
        v2 = pk.pef_value(p, split2 * s, (1 - split2) * s)
        assert v1 == pytest.approx(v2, rel=1e-12)


def test_pmf_depends_on_difference_only():
    rng = np.random.default_rng(13)
    for shape in ("gaussian", "sinc"):
        m = pk.PmfSpec(shape, 0.8)
        for _ in range(20):
            d = rng.normal(0, 2)
            shift1, shift2 = rng.normal(0, 3, 2)
            v1 = pk.pmf_value(m, shift1 + d, shift1)
            v2 = pk.pmf_value(m, shift2 + d, shift2)
            assert v1 == pytest.approx(v2, rel=1e-11, abs=1e-13)


def test_sinc_pmf_values():
    kappa = 1.7
    m = pk.PmfSpec("sinc", kappa)
    assert pk.pmf_value(m, 1.23, 1.23) == pytest.approx(1.0)
    assert pk.pmf_value(m, math.pi / kappa, 0.0) == pytest.approx(0.0, abs=1e-14)


def test_gaussian_pmf_general_angle():
    m = pk.PmfSpec("gaussian", 0.9, theta=math.pi / 3)
    got = pk.pmf_value(m, 0.9, 0.0)
    assert got == pytest.approx(math.exp(-math.sin(math.pi / 3) ** 2), rel=1e-12)


def _numeric_fwhm(fn, guess):
    # bracketed bisection for the half-max crossing of an even profile
    lo, hi = 0.0, guess
    while fn(hi) > 0.5:
        hi *= 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if fn(mid) > 0.5:
            lo = mid
        else:
            hi = mid
    return lo + hi  # 2 * half-width


@pytest.mark.parametrize("shape,param", [("gaussian", 1.3), ("sech", 0.7), ("sinc", 2.1)])
def test_numeric_fwhm_matches_closed_form(shape, param):
    if shape == "sinc":
        spec = pk.PmfSpec("sinc", param)

        def profile(x):
            return abs(float(pk.pmf_value(spec, x / 2, -x / 2)))
    elif shape == "gaussian":
        pulse = pk.PulseSpec("gaussian", param, CENTER)

        def profile(x):
            return abs(complex(pk.pef_value(pulse, x / 2, x / 2)))
    else:
        pulse = pk.PulseSpec("sech", param, CENTER)

        def profile(x):
            return abs(complex(pk.pef_value(pulse, x / 2, x / 2)))

    expected = pk.amplitude_fwhm(shape, param)
    assert _numeric_fwhm(profile, expected) == pytest.approx(expected, rel=1e-9)


def test_duration_conversion_identities():
    t = 137e-15
    sigma = pk.pulse_width_from_duration("gaussian", t)
    assert sigma * t == pytest.approx(2 * math.sqrt(math.log(2)), rel=1e-12)
    tau = pk.pulse_width_from_duration("sech", t)
    assert t / tau == pytest.approx(2 * math.acosh(math.sqrt(2)), rel=1e-12)


def test_sech_duration_bandwidth_by_fft():
    # transform-limited sech: the spectral amplitude FWHM from an explicit
    # Fourier transform must match the closed form
    t_fwhm = 100e-15
    tau = pk.pulse_width_from_duration("sech", t_fwhm)
    n = 1 << 16
    dt = tau / 10
    t = (np.arange(n) - n / 2) * dt
    x = np.abs(t / tau)
    field = 2 * np.exp(-x) / (1 + np.exp(-2 * x))
    spec = np.abs(np.fft.fftshift(np.fft.fft(field)))
    omega = 2 * math.pi * np.fft.fftshift(np.fft.fftfreq(n, dt))
    half = spec.max() / 2
    above = np.where(spec >= half)[0]
    lo, hi = above.min(), above.max()

    def crossing(i, j):
        return omega[i] + (omega[j] - omega[i]) * (half - spec[i]) / (spec[j] - spec[i])

    fwhm_num = crossing(hi, hi + 1) - crossing(lo, lo - 1)
    expected = pk.amplitude_fwhm("sech", tau)
    assert fwhm_num == pytest.approx(expected, rel=1e-4)


def test_pulse_spec_validation():
    with pytest.raises(ValueError):
        pk.PulseSpec("triangle", 1.0, CENTER)
    with pytest.raises(ValueError):
        pk.PulseSpec("gaussian", -1.0, CENTER)
    with pytest.raises(ValueError):
        pk.PulseSpec("gaussian", 1.0, CENTER, chirp_kw2=-0.1)


def test_pmf_spec_validation():
    with pytest.raises(ValueError):
        pk.PmfSpec("sinc", -1.0)
    with pytest.raises(ValueError):
        pk.PmfSpec("custom")  # needs domains and group


def test_pmf_for_xi_sets_width_ratio():
    pulse = pk.PulseSpec("sech", 0.9, CENTER)
    for pmf_shape in ("gaussian", "sinc"):
        spec = pk.pmf_for_xi("sech", 0.9, pmf_shape, 1.26)
        ratio = spec.amplitude_fwhm / pulse.amplitude_fwhm
        assert ratio == pytest.approx(1.26, rel=1e-12)
