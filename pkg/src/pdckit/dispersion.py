"""Material dispersion: refractive indices, group velocities, phase mismatch
and the quadratic-phase (chirp) bookkeeping needed to design photon-pair
sources around a group-velocity-matched crystal.

All public functions take wavelengths in metres and angular frequencies in
rad/s; Sellmeier coefficients are tabulated in the conventional micrometre
units and converted internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .spectral import PulseSpec

C_LIGHT = 299792458.0  # m/s

# Reference width ratios (PMF FWHM / PEF FWHM) that maximize heralded-photon
# spectral purity for each envelope/phase-matching pair.  They are design
# constants here; `characterize.optimize_xi` recomputes them from scratch and
# the test suite checks agreement.
OPTIMAL_XI = {
    ("gaussian", "gaussian"): 1.00,
    ("sech", "gaussian"): 1.12,
    ("gaussian", "sinc"): 1.13,
    ("sech", "sinc"): 1.26,
}

SYMMETRIC_GVM_RTOL = 1e-2


class DispersionRangeError(ValueError):
    """Wavelength outside a material's tabulated validity range."""


@dataclass(frozen=True)
class AxisDispersion:
    """Sellmeier data for a single polarization axis.

    n^2(lam) = const + sum_j B_j*l2/(l2 - C_j) + sum_j D_j/(l2 - E_j) - F*l2

    with lam in micrometres and l2 = lam^2.  The two term families cover the
    KTP and optical-glass fit conventions in the cited sources.
    """

    const: float
    resonant: tuple[tuple[float, float], ...] = ()
    pole: tuple[tuple[float, float], ...] = ()
    ir_term: float = 0.0

    def index(self, lam_um: float) -> float:
        l2 = lam_um * lam_um
        n2 = self.const - self.ir_term * l2
        for b, c in self.resonant:
            n2 += b * l2 / (l2 - c)
        for d, e in self.pole:
            n2 += d / (l2 - e)
        return math.sqrt(n2)


@dataclass(frozen=True)
class Material:
    """A named material with per-axis Sellmeier data and a validity window."""

    name: str
    axes: dict[str, AxisDispersion]
    valid_range_um: tuple[float, float]

    def axis_data(self, axis: str | None) -> AxisDispersion:
        if axis is None:
            if len(self.axes) != 1:
                raise ValueError(
                    f"{self.name} is anisotropic; specify one of {sorted(self.axes)}"
                )
            return next(iter(self.axes.values()))
        try:
            return self.axes[axis]
        except KeyError:
            raise ValueError(
                f"{self.name} has no axis {axis!r}; available: {sorted(self.axes)}"
            ) from None

    def check_range(self, wavelength_m: float) -> float:
        lam_um = wavelength_m * 1e6
        lo, hi = self.valid_range_um
        tol = 1e-9 * hi  # unit-conversion rounding at the boundaries
        if lam_um < lo - tol or lam_um > hi + tol:
            raise DispersionRangeError(
                f"{self.name}: wavelength {lam_um:.4g} um outside valid "
                f"range [{lo}, {hi}] um"
            )
        return lam_um


# Built-in material tables.  Coefficients transcribed from:
#   KTP x: Fan et al., Appl. Opt. 26, 2390 (1987)
#   KTP y: Konig & Wong, Appl. Phys. Lett. 84, 1644 (2004)
#   KTP z: Fradkin et al., Appl. Phys. Lett. 74, 914 (1999)
#   N-BK7: SCHOTT optical glass datasheet
#   fused silica: Malitson, J. Opt. Soc. Am. 55, 1205 (1965)
KTP = Material(
    name="KTP",
    axes={
        "x": AxisDispersion(3.0065, pole=((0.03901, 0.04251),), ir_term=0.01327),
        "y": AxisDispersion(2.09930, resonant=((0.922683, 0.0467695),), ir_term=0.0138408),
        "z": AxisDispersion(
            2.12725,
            resonant=((1.18431, 5.14852e-2), (0.6603, 100.00507)),
            ir_term=9.68956e-3,
        ),
    },
    valid_range_um=(0.43, 3.54),
)

NBK7 = Material(
    name="N-BK7",
    axes={
        "iso": AxisDispersion(
            1.0,
            resonant=(
                (1.03961212, 0.00600069867),
                (0.231792344, 0.0200179144),
                (1.01046945, 103.560653),
            ),
        )
    },
    valid_range_um=(0.30, 2.50),
)

FUSED_SILICA = Material(
    name="fused-silica",
    axes={
        "iso": AxisDispersion(
            1.0,
            resonant=(
                (0.6961663, 0.0684043**2),
                (0.4079426, 0.1162414**2),
                (0.8974794, 9.896161**2),
            ),
        )
    },
    valid_range_um=(0.21, 3.71),
)

MATERIALS = {m.name: m for m in (KTP, NBK7, FUSED_SILICA)}


def refractive_index(material: Material, wavelength_m: float, axis: str | None = None) -> float:
    """Refractive index at a vacuum wavelength, from the material's Sellmeier fit.

    Raises DispersionRangeError outside the tabulated range; the fits are
    never extrapolated.
    """
    lam_um = material.check_range(wavelength_m)
    return material.axis_data(axis).index(lam_um)


def wavenumber(material: Material, omega: float, axis: str | None = None) -> float:
    """k(omega) = omega*n(omega)/c in 1/m."""
    lam_m = 2 * math.pi * C_LIGHT / omega
    return omega * refractive_index(material, lam_m, axis) / C_LIGHT


def group_velocity_inverse(
    material: Material,
    wavelength_m: float,
    axis: str | None = None,
    rel_step: float = 1e-5,
) -> float:
    """Inverse group velocity dk/domega (s/m) by Richardson-refined central
    differences of k(omega).

    The wavelength must sit far enough inside the valid range that the
    finite-difference stencil stays inside it.
    """
    omega = 2 * math.pi * C_LIGHT / wavelength_m
    h = rel_step * omega

    def diff(step):
        return (
            wavenumber(material, omega + step, axis)
            - wavenumber(material, omega - step, axis)
        ) / (2 * step)

    d1 = diff(h)
    d2 = diff(h / 2)
    return (4 * d2 - d1) / 3


def gdd_per_length(material: Material, omega: float, axis: str | None = None,
                   rel_step: float = 1e-4) -> float:
    """Group delay dispersion per unit length, d2k/domega^2 (s^2/m)."""
    h = rel_step * omega

    def second(step):
        return (
            wavenumber(material, omega + step, axis)
            - 2 * wavenumber(material, omega, axis)
            + wavenumber(material, omega - step, axis)
        ) / step**2

    d1 = second(h)
    d2 = second(h / 2)
    return (4 * d2 - d1) / 3


@dataclass(frozen=True)
class GroupData:
    """Inverse group velocities, centre-frequency phase mismatch and the
    phase-matching-function orientation they imply."""

    v_p_inv: float
    v_s_inv: float
    v_i_inv: float
    dk0: float
    theta: float

    @property
    def slope_s(self) -> float:
        """Coefficient of the signal detuning in the linearized mismatch."""
        return self.v_p_inv - self.v_s_inv

    @property
    def slope_i(self) -> float:
        return self.v_p_inv - self.v_i_inv

    @property
    def is_symmetric(self) -> bool:
        dev = abs(self.v_p_inv - 0.5 * (self.v_s_inv + self.v_i_inv))
        return dev / abs(self.v_p_inv) < SYMMETRIC_GVM_RTOL

    def delta_k(self, omega_s, omega_i):
        """Linearized mismatch at signal/idler detunings (rad/s)."""
        return self.dk0 + self.slope_s * omega_s + self.slope_i * omega_i


def gvm_angle(v_p_inv: float, v_s_inv: float, v_i_inv: float) -> float:
    """Orientation angle of the phase-matching function in the detuning
    plane, folded into (-pi/2, pi/2].

    tan(theta) = -(v_p_inv - v_s_inv) / (v_p_inv - v_i_inv)
    """
    num = -(v_p_inv - v_s_inv)
    den = v_p_inv - v_i_inv
    scale = max(abs(v_p_inv), abs(v_s_inv), abs(v_i_inv))
    if abs(num) < 1e-15 * scale and abs(den) < 1e-15 * scale:
        raise ValueError("all group velocities equal: orientation undefined")
    theta = math.atan2(num, den)
    if theta <= -math.pi / 2:
        theta += math.pi
    elif theta > math.pi / 2:
        theta -= math.pi
    return theta


def make_group_data(v_p_inv: float, v_s_inv: float, v_i_inv: float, dk0: float = 0.0) -> GroupData:
    theta = gvm_angle(v_p_inv, v_s_inv, v_i_inv)
    return GroupData(v_p_inv, v_s_inv, v_i_inv, dk0, theta)


def symmetrized(group: GroupData) -> GroupData:
    """Idealize a nearly-symmetric group configuration so the mismatch
    depends on the detuning difference only (theta = pi/4 exactly).

    Requires the configuration to satisfy the symmetric-GVM tolerance.
    """
    if not group.is_symmetric:
        raise ValueError("group data is not within the symmetric-GVM tolerance")
    slope = 0.5 * (group.slope_s - group.slope_i)
    vbar = group.v_p_inv
    return GroupData(vbar, vbar - slope, vbar + slope, group.dk0, math.pi / 4)


def pdc_group_data(
    pump: tuple[Material, str | None],
    signal: tuple[Material, str | None],
    idler: tuple[Material, str | None],
    pump_wavelength_m: float,
) -> GroupData:
    """Group data for degenerate collinear downconversion: signal and idler
    at twice the pump wavelength."""
    lam_p = pump_wavelength_m
    lam_d = 2 * pump_wavelength_m
    wp = 2 * math.pi * C_LIGHT / lam_p
    wd = wp / 2
    vp = group_velocity_inverse(pump[0], lam_p, pump[1])
    vs = group_velocity_inverse(signal[0], lam_d, signal[1])
    vi = group_velocity_inverse(idler[0], lam_d, idler[1])
    dk0 = (
        wavenumber(pump[0], wp, pump[1])
        - wavenumber(signal[0], wd, signal[1])
        - wavenumber(idler[0], wd, idler[1])
    )
    return make_group_data(vp, vs, vi, dk0)


def ktp_type2_group(pump_wavelength_m: float) -> GroupData:
    """Type-II ppKTP configuration: y-polarized pump and signal, z-polarized
    idler, propagation along x.

    The axis assignment is inferred from the Sellmeier sources above (the
    y/z fits were published for exactly this telecom-band configuration);
    the polarization labels are not part of the fits themselves.
    """
    return pdc_group_data((KTP, "y"), (KTP, "y"), (KTP, "z"), pump_wavelength_m)


def coherence_length(group: GroupData) -> float:
    """First-order quasi-phase-matching domain length pi/|dk0|."""
    if group.dk0 == 0:
        raise ValueError("dk0 is zero: no quasi-phase-matching period needed")
    return math.pi / abs(group.dk0)


def chirp_parameter(
    material: Material,
    propagation_length_m: float,
    pulse: "PulseSpec",
    axis: str | None = None,
) -> float:
    """Dimensionless quadratic-phase strength k*w^2 accumulated by a pulse
    traversing the material.

    k is half the group delay dispersion of the path, w the spectral
    amplitude FWHM of the pulse envelope.
    """
    k = 0.5 * propagation_length_m * gdd_per_length(material, pulse.center_freq, axis)
    w = pulse.amplitude_fwhm
    return k * w * w


def crystal_length_for_pulse(
    intensity_fwhm_s: float,
    pef_shape: str,
    group: GroupData,
    pmf_shape: str = "sinc",
    xi: float | None = None,
) -> float:
    """Crystal length whose sinc phase-matching width sits at the optimal
    width ratio for a pump pulse of the given duration.

    The duration is the FWHM of the temporal intensity profile (what an
    autocorrelator measures).  Only sinc phase matching is supported: for
    shaped (custom-poled) crystals the length is set by the shaping target,
    not by this relation.
    """
    from .spectral import amplitude_fwhm, param_for_fwhm, pulse_width_from_duration

    if pmf_shape != "sinc":
        raise ValueError(
            "crystal length fixes the PMF width only for unpoled/periodically "
            "poled (sinc) crystals"
        )
    if not group.is_symmetric:
        raise ValueError("requires symmetric group-velocity matching")
    if xi is None:
        xi = OPTIMAL_XI[(pef_shape, pmf_shape)]
    w_pef = amplitude_fwhm(pef_shape, pulse_width_from_duration(pef_shape, intensity_fwhm_s))
    kappa = param_for_fwhm("sinc", xi * w_pef)
    return 2 * kappa / abs(group.slope_i)


def load_material_file(path) -> dict[str, Material]:
    """Parse a versioned material table.

    Line format (one axis per line, '#' comments):
        material=KTP axis=y const=2.0993 res=0.922683:0.0467695 ir=0.0138408 range=0.43:3.54
    Multiple res=/pole= tokens add terms.  The first non-comment line must be
    the header 'pdckit-materials v1'.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    content = [ln for ln in lines if ln and not ln.startswith("#")]
    if not content or content[0] != "pdckit-materials v1":
        raise ValueError("missing 'pdckit-materials v1' header")

    staged: dict[str, dict] = {}
    for ln in content[1:]:
        fields: dict[str, list[str]] = {}
        for tok in ln.split():
            key, _, val = tok.partition("=")
            fields.setdefault(key, []).append(val)

        def one(key, default=None):
            if key not in fields:
                if default is not None:
                    return default
                raise ValueError(f"material line missing {key}=: {ln!r}")
            return fields[key][0]

        name = one("material")
        axis = one("axis", "iso")
        res = tuple(tuple(float(x) for x in v.split(":")) for v in fields.get("res", ()))
        pole = tuple(tuple(float(x) for x in v.split(":")) for v in fields.get("pole", ()))
        disp = AxisDispersion(
            const=float(one("const")),
            resonant=res,  # type: ignore[arg-type]
            pole=pole,  # type: ignore[arg-type]
            ir_term=float(one("ir", "0")),
        )
        lo, hi = (float(x) for x in one("range").split(":"))
        entry = staged.setdefault(name, {"axes": {}, "range": (lo, hi)})
        entry["axes"][axis] = disp
        entry["range"] = (min(entry["range"][0], lo), max(entry["range"][1], hi))

    return {
        name: Material(name=name, axes=e["axes"], valid_range_um=e["range"])
        for name, e in staged.items()
    }
