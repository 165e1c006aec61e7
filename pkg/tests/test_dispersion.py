import math

import numpy as np
import pytest

import pdckit as pk
from pdckit.dispersion import AxisDispersion, C_LIGHT, Material, gdd_per_length, wavenumber

PUMP_791 = 791.4502e-9  # 2*pi*c / 2.38e15


def test_ktp_y_golden():
    # evaluated independently from the published fit
    assert pk.refractive_index(pk.KTP, 791e-9, "y") == pytest.approx(
        1.757232318888, abs=1e-9)


def test_nbk7_golden():
    assert pk.refractive_index(pk.NBK7, 400e-9) == pytest.approx(
        1.530848538249, abs=1e-9)


def test_fused_silica_golden():
    assert pk.refractive_index(pk.FUSED_SILICA, 400e-9) == pytest.approx(
        1.470116118559, abs=1e-9)


def test_out_of_range_is_error_not_extrapolation():
    with pytest.raises(pk.DispersionRangeError) as err:
        pk.refractive_index(pk.KTP, 10e-6, "y")
    msg = str(err.value)
    assert "KTP" in msg and "3.54" in msg


def test_index_above_one_over_full_range():
    for mat, axes in ((pk.KTP, ("x", "y", "z")), (pk.NBK7, (None,)),
                      (pk.FUSED_SILICA, (None,))):
        lo, hi = mat.valid_range_um
        for axis in axes:
            lams = np.linspace(lo, hi, 100) * 1e-6
            ns = [pk.refractive_index(mat, lam, axis) for lam in lams]
            assert min(ns) > 1.0


def test_anisotropic_requires_axis():
    with pytest.raises(ValueError, match="anisotropic"):
        pk.refractive_index(pk.KTP, 791e-9)


def test_constant_index_group_velocity():
    toy = Material("toy", {"iso": AxisDispersion(const=2.25)}, (0.2, 10.0))
    v_inv = pk.group_velocity_inverse(toy, 1e-6)
    assert v_inv == pytest.approx(1.5 / C_LIGHT, rel=1e-12)


def test_ktp_symmetric_gvm_at_791():
    g = pk.ktp_type2_group(PUMP_791)
    resid = abs(g.v_p_inv - 0.5 * (g.v_s_inv + g.v_i_inv)) / g.v_p_inv
    assert resid < 1e-2
    assert g.is_symmetric


def test_group_velocity_step_halving_converges():
    a = pk.group_velocity_inverse(pk.KTP, 791e-9, "y", rel_step=1e-5)
    b = pk.group_velocity_inverse(pk.KTP, 791e-9, "y", rel_step=5e-6)
    assert abs(a - b) / abs(a) < 1e-6


def test_central_difference_ratio():
    # raw central differences converge at second order: error ratio ~ 4
    omega = 2 * math.pi * C_LIGHT / 791e-9

    def raw(h):
        return (wavenumber(pk.KTP, omega + h, "y")
                - wavenumber(pk.KTP, omega - h, "y")) / (2 * h)

    h = 1e-4 * omega
    d1, d2, d4 = raw(h), raw(h / 2), raw(h / 4)
    ratio = (d1 - d2) / (d2 - d4)
    assert ratio == pytest.approx(4.0, rel=0.05)


def _fold(theta):
    while theta <= -math.pi / 2:
        theta += math.pi
    while theta > math.pi / 2:
        theta -= math.pi
    return theta


def test_gvm_angle_symmetric_is_quarter_pi():
    assert pk.gvm_angle(2.0, 1.5, 2.5) == pytest.approx(math.pi / 4, abs=1e-12)


def test_gvm_angle_limits():
    assert pk.gvm_angle(2.0, 2.0, 3.0) == pytest.approx(0.0, abs=1e-12)
    assert pk.gvm_angle(2.0, 3.0, 2.0) == pytest.approx(math.pi / 2, abs=1e-12)


def test_gvm_angle_degenerate_error():
    with pytest.raises(ValueError, match="orientation"):
        pk.gvm_angle(2.0, 2.0, 2.0)


def test_gvm_angle_swap_property():
    rng = np.random.default_rng(41)
    for _ in range(50):
        vp, vs, vi = rng.uniform(1.0, 3.0, 3)
        if abs(vp - vs) < 1e-6 and abs(vp - vi) < 1e-6:
            continue
        t1 = pk.gvm_angle(vp, vs, vi)
        t2 = pk.gvm_angle(vp, vi, vs)
        assert t2 == pytest.approx(_fold(math.pi / 2 - t1), abs=1e-10)


@pytest.mark.parametrize(
    "material,length,duration,lam,expected",
    [
        (pk.NBK7, 0.01, 50e-15, 400e-9, 2.1),
        (pk.NBK7, 0.01, 200e-15, 400e-9, 0.13),
        (pk.FUSED_SILICA, 0.30, 200e-15, 400e-9, 3.2),
    ],
)
def test_chirp_parameter_reference_points(material, length, duration, lam, expected):
    pulse = pk.pulse_from_duration("sech", duration, 2 * math.pi * C_LIGHT / lam)
    kw2 = pk.chirp_parameter(material, length, pulse)
    assert kw2 == pytest.approx(expected, rel=0.10)


def test_chirp_parameter_scaling():
    pulse = pk.pulse_from_duration("sech", 100e-15, 2 * math.pi * C_LIGHT / 400e-9)
    base = pk.chirp_parameter(pk.NBK7, 0.01, pulse)
    # linear in propagation length
    for mult in (2.0, 3.0):
        assert pk.chirp_parameter(pk.NBK7, 0.01 * mult, pulse) == pytest.approx(
            mult * base, rel=1e-9)
    # quadratic in spectral width: halving the duration doubles the width
    half = pk.pulse_from_duration("sech", 50e-15, pulse.center_freq)
    assert pk.chirp_parameter(pk.NBK7, 0.01, half) == pytest.approx(
        4 * base, rel=1e-9)


def test_crystal_length_linear_in_duration():
    g = pk.ktp_type2_group(PUMP_791)
    l1 = pk.crystal_length_for_pulse(1e-12, "sech", g)
    l2 = pk.crystal_length_for_pulse(2e-12, "sech", g)
    assert l2 == pytest.approx(2 * l1, rel=1e-12)


def test_crystal_length_shape_ratio():
    # ratio fixed by the optimal width ratios and the per-shape
    # duration-to-bandwidth conversions
    g = pk.ktp_type2_group(PUMP_791)
    ls = pk.crystal_length_for_pulse(1e-12, "sech", g)
    lg = pk.crystal_length_for_pulse(1e-12, "gaussian", g)
    w_g = 4 * math.sqrt(2) * math.log(2)
    w_s = 8 * math.acosh(2.0) * math.acosh(math.sqrt(2.0)) / math.pi
    expected = (1.13 * w_g) / (1.26 * w_s)
    assert ls / lg == pytest.approx(expected, rel=1e-9)


def test_crystal_length_golden_point():
    # golden from a direct purity-maximization sweep over length
    # (1 ps sech pump on the symmetric KTP configuration)
    g = pk.ktp_type2_group(PUMP_791)
    assert pk.crystal_length_for_pulse(1e-12, "sech", g) == pytest.approx(
        13.7306e-3, rel=0.01)


def test_crystal_length_rejects_gaussian_pmf():
    g = pk.ktp_type2_group(PUMP_791)
    with pytest.raises(ValueError, match="sinc"):
        pk.crystal_length_for_pulse(1e-12, "sech", g, pmf_shape="gaussian")


def test_crystal_length_rejects_asymmetric_group():
    g = pk.make_group_data(2.0 / C_LIGHT, 1.2 / C_LIGHT, 1.5 / C_LIGHT)
    with pytest.raises(ValueError, match="symmetric"):
        pk.crystal_length_for_pulse(1e-12, "sech", g)


def test_coherence_length_ktp():
    g = pk.ktp_type2_group(PUMP_791)
    assert pk.coherence_length(g) == pytest.approx(23.05e-6, rel=0.01)


def test_symmetrized_group():
    g = pk.symmetrized(pk.ktp_type2_group(PUMP_791))
    assert g.slope_s == -g.slope_i
    assert g.theta == pytest.approx(math.pi / 4)
    with pytest.raises(ValueError):
        pk.symmetrized(pk.make_group_data(2.0, 1.0, 1.5))


def test_gdd_sign_and_magnitude():
    # normal dispersion at 400 nm: positive group delay dispersion
    omega = 2 * math.pi * C_LIGHT / 400e-9
    gdd = gdd_per_length(pk.NBK7, omega)
    assert 100e-27 < gdd < 140e-27  # fs^2/mm scale


def test_material_file_round_trip(tmp_path):
    path = tmp_path / "materials.txt"
    path.write_text(
        "pdckit-materials v1\n"
        "# comment line\n"
        "material=KTP axis=y const=2.09930 res=0.922683:0.0467695 "
        "ir=0.0138408 range=0.43:3.54\n"
        "material=KTP axis=z const=2.12725 res=1.18431:0.0514852 "
        "res=0.6603:100.00507 ir=0.00968956 range=0.43:3.54\n"
    )
    mats = pk.load_material_file(path)
    assert set(mats) == {"KTP"}
    got = pk.refractive_index(mats["KTP"], 791e-9, "y")
    assert got == pytest.approx(pk.refractive_index(pk.KTP, 791e-9, "y"), rel=1e-12)


def test_material_file_requires_header(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("material=KTP axis=y const=2 range=0.4:3\n")
    with pytest.raises(ValueError, match="header"):
        pk.load_material_file(path)
