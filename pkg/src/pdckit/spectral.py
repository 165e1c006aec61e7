"""Analytic pump-envelope and phase-matching function families.

Pump envelopes are functions of the detuning sum Omega_s + Omega_i, the
symmetric phase-matching families of the rotated coordinate
sin(theta)*Omega_s - cos(theta)*Omega_i.  All widths are spectral-amplitude
FWHM unless stated otherwise; conversion constants are derived from the
closed forms at import time rather than hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numeric import GAUSS_FWHM_SIGMA, SINC_HALF_POINT
from .dispersion import GroupData
from .poling import DomainStructure, pmf_from_domains

PEF_SHAPES = ("gaussian", "sech")
PMF_SHAPES = ("gaussian", "sinc", "custom")

SECH_FWHM_TAU = 4.0 * math.acosh(2.0) / math.pi          # FWHM = this / tau
SINC_FWHM_KAPPA = 2.0 * SINC_HALF_POINT                  # FWHM = this / kappa

# Temporal intensity FWHM <-> spectral width parameter, per shape.
GAUSS_DURATION_SIGMA = 2.0 * math.sqrt(math.log(2.0))    # t_fwhm = this / sigma
SECH_DURATION_TAU = 2.0 * math.acosh(math.sqrt(2.0))     # t_fwhm = this * tau


def amplitude_fwhm(shape: str, param: float) -> float:
    """Spectral-amplitude FWHM of a family member with width parameter
    sigma (gaussian), tau (sech) or kappa (sinc)."""
    if shape == "gaussian":
        return GAUSS_FWHM_SIGMA * param
    if shape == "sech":
        return SECH_FWHM_TAU / param
    if shape == "sinc":
        return SINC_FWHM_KAPPA / param
    raise ValueError(f"unknown shape {shape!r}")


def param_for_fwhm(shape: str, fwhm: float) -> float:
    """Inverse of amplitude_fwhm."""
    if fwhm <= 0:
        raise ValueError("FWHM must be positive")
    if shape == "gaussian":
        return fwhm / GAUSS_FWHM_SIGMA
    if shape == "sech":
        return SECH_FWHM_TAU / fwhm
    if shape == "sinc":
        return SINC_FWHM_KAPPA / fwhm
    raise ValueError(f"unknown shape {shape!r}")


def width_convert(from_shape: str, param: float, to_shape: str) -> float:
    """Width parameter in the target family with equal amplitude FWHM."""
    if param <= 0:
        raise ValueError("width parameter must be positive")
    return param_for_fwhm(to_shape, amplitude_fwhm(from_shape, param))


def pulse_width_from_duration(shape: str, intensity_fwhm_s: float) -> float:
    """Spectral width parameter of a transform-limited pulse whose temporal
    intensity profile has the given FWHM."""
    if intensity_fwhm_s <= 0:
        raise ValueError("duration must be positive")
    if shape == "gaussian":
        return GAUSS_DURATION_SIGMA / intensity_fwhm_s
    if shape == "sech":
        return intensity_fwhm_s / SECH_DURATION_TAU
    raise ValueError(f"unknown pump shape {shape!r}")


def _sech(x):
    # overflow-safe sech
    ax = np.abs(x)
    e = np.exp(-ax)
    return 2.0 * e / (1.0 + e * e)


def _sinc(x):
    return np.sinc(np.asarray(x) / math.pi)  # np.sinc is sin(pi x)/(pi x)


@dataclass(frozen=True)
class PulseSpec:
    """Pump envelope: shape family, width parameter, centre frequency and
    dimensionless chirp strength k*w^2 (0 = transform limited)."""

    shape: str
    width_param: float
    center_freq: float
    chirp_kw2: float = 0.0

    def __post_init__(self):
        if self.shape not in PEF_SHAPES:
            raise ValueError(f"pump shape must be one of {PEF_SHAPES}")
        if self.width_param <= 0:
            raise ValueError("width_param must be positive")
        if self.center_freq <= 0:
            raise ValueError("center_freq must be positive")
        if self.chirp_kw2 < 0:
            raise ValueError("chirp_kw2 must be non-negative")

    @property
    def amplitude_fwhm(self) -> float:
        return amplitude_fwhm(self.shape, self.width_param)

    @property
    def chirp_k(self) -> float:
        """Quadratic spectral phase coefficient k (s^2)."""
        w = self.amplitude_fwhm
        return self.chirp_kw2 / (w * w)


def pulse_from_duration(
    shape: str,
    intensity_fwhm_s: float,
    center_freq: float,
    chirp_kw2: float = 0.0,
) -> PulseSpec:
    """PulseSpec from a measured pulse duration (temporal intensity FWHM)."""
    return PulseSpec(shape, pulse_width_from_duration(shape, intensity_fwhm_s),
                     center_freq, chirp_kw2)


@dataclass(frozen=True)
class PmfSpec:
    """Phase-matching function: analytic gaussian/sinc family at orientation
    theta, or the exact domain-sum response of a poled structure."""

    shape: str
    width_param: float | None = None
    theta: float = math.pi / 4
    domains: DomainStructure | None = None
    group: GroupData | None = None

    def __post_init__(self):
        if self.shape not in PMF_SHAPES:
            raise ValueError(f"PMF shape must be one of {PMF_SHAPES}")
        if self.shape == "custom":
            if self.domains is None or self.group is None:
                raise ValueError("custom PMF needs domains and group data")
        else:
            if self.width_param is None or self.width_param <= 0:
                raise ValueError("width_param must be positive")

    @property
    def amplitude_fwhm(self) -> float:
        if self.shape == "custom":
            raise ValueError("custom PMF width is not an analytic parameter")
        return amplitude_fwhm(self.shape, self.width_param)


def pef_value(pulse: PulseSpec, omega_s, omega_i):
    """Pump envelope at signal/idler detunings, including the quadratic
    chirp phase. The magnitude depends on the detunings only through their
    sum; the chirp multiplies a pure phase onto it."""
    s = np.asarray(omega_s) + np.asarray(omega_i)
    if pulse.shape == "gaussian":
        amp = np.exp(-(s * s) / (2.0 * pulse.width_param**2))
    else:
        amp = _sech(0.5 * math.pi * pulse.width_param * s)
    if pulse.chirp_kw2 != 0.0:
        return amp * np.exp(-1j * pulse.chirp_k * s * s)
    return amp.astype(complex)


def pmf_value(pmf: PmfSpec, omega_s, omega_i):
    """Phase-matching function at signal/idler detunings.

    The rotated coordinate u = sin(theta)*Omega_s - cos(theta)*Omega_i
    reduces to (Omega_s - Omega_i)/sqrt(2) at theta = pi/4, recovering the
    symmetric forms.  Custom shapes evaluate the exact domain sum at the
    linearized mismatch.
    """
    omega_s = np.asarray(omega_s, dtype=float)
    omega_i = np.asarray(omega_i, dtype=float)
    if pmf.shape == "custom":
        dk = pmf.group.delta_k(omega_s, omega_i)
        flat = np.atleast_1d(dk).ravel()
        vals = pmf_from_domains(pmf.domains, flat)
        return vals.reshape(np.shape(dk)) if np.shape(dk) else vals[0]
    u = math.sin(pmf.theta) * omega_s - math.cos(pmf.theta) * omega_i
    if pmf.shape == "gaussian":
        return np.exp(-(u * u) / pmf.width_param**2)
    return _sinc(math.sqrt(2.0) * pmf.width_param * u)


def pmf_for_xi(pulse_shape: str, pef_param: float, pmf_shape: str, xi: float,
               theta: float = math.pi / 4) -> PmfSpec:
    """Analytic PMF whose amplitude FWHM is xi times the pump envelope's."""
    if xi <= 0:
        raise ValueError("xi must be positive")
    w_pef = amplitude_fwhm(pulse_shape, pef_param)
    return PmfSpec(pmf_shape, param_for_fwhm(pmf_shape, xi * w_pef), theta=theta)
