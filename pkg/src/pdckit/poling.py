"""Crystal nonlinearity structures: periodic poling, customized duty cycle,
customized domain orientation, fabrication-imperfection injectors and the
exact phase-matching response of a domain list.

A structure is an ordered list of adjacent, non-overlapping domains with
widths w_j and orientation signs s_j; its phase-matching function is the
finite sum

    phi(dk) = sum_j s_j w_j sinc(dk w_j / 2) exp(i dk z_j)

which equals the integral of the sign profile exactly (each term is the
integral over one domain).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numeric import GAUSS_FWHM_SIGMA, SINC_HALF_POINT

POLING_METHODS = ("periodic", "duty_cycle", "domain_orientation", "unpoled")

# Collision clamp for perturbed walls; also the smallest duty-cycle segment.
MIN_WIDTH_FRACTION = 1e-3

OVERPOLING_MAX = 0.15
WALL_JITTER_MAX = 0.12
MISSED_MAX = 0.10


@dataclass(frozen=True)
class DomainStructure:
    """Ordered poled domains. Arrays are frozen after construction."""

    widths: np.ndarray
    signs: np.ndarray
    coherence_length: float
    method: str
    clamped_walls: int = 0

    def __post_init__(self):
        w = np.array(self.widths, dtype=float)
        s = np.array(self.signs, dtype=np.int8)
        if w.ndim != 1 or s.shape != w.shape:
            raise ValueError("widths and signs must be 1-d arrays of equal length")
        if len(w) == 0:
            raise ValueError("structure needs at least one domain")
        if np.any(w <= 0):
            raise ValueError("all domain widths must be positive")
        if not np.all(np.abs(s) == 1):
            raise ValueError("signs must be +1 or -1")
        if self.method not in POLING_METHODS:
            raise ValueError(f"method must be one of {POLING_METHODS}")
        w.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "widths", w)
        object.__setattr__(self, "signs", s)

    @property
    def n_domains(self) -> int:
        return len(self.widths)

    @property
    def total_length(self) -> float:
        return float(np.sum(self.widths))

    @property
    def positions(self) -> np.ndarray:
        """Domain centres z_j measured from the input face."""
        return np.cumsum(self.widths) - self.widths / 2

    @property
    def walls(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.widths)])

    @property
    def period(self) -> float:
        return 2 * self.coherence_length

    @property
    def qpm_mismatch(self) -> float:
        """First-order quasi-phase-matched mismatch pi/l_c."""
        return math.pi / self.coherence_length


def pmf_from_domains(d: DomainStructure, dk_values) -> np.ndarray:
    """Exact phase-matching amplitude of the structure at each mismatch value.

    Linear in the domain count per point; evaluation is chunked so the
    intermediate (domains x points) array stays small.
    """
    dks = np.atleast_1d(np.asarray(dk_values, dtype=float))
    w = d.widths[:, None]
    sw = (d.signs * d.widths)[:, None]
    z = d.positions[:, None]
    out = np.empty(dks.shape, dtype=complex)
    chunk = max(1, int(4e6) // max(1, d.n_domains))
    for i in range(0, len(dks), chunk):
        dk = dks[None, i:i + chunk]
        x = 0.5 * dk * w
        out[i:i + chunk] = np.sum(sw * np.sinc(x / math.pi) * np.exp(1j * dk * z), axis=0)
    return out


def make_periodic(l_c: float, n_domains: int) -> DomainStructure:
    """Periodically poled structure: alternating fixed-width domains,
    poling period 2*l_c."""
    if n_domains < 2:
        raise ValueError("periodic structure needs at least 2 domains")
    if l_c <= 0:
        raise ValueError("coherence length must be positive")
    widths = np.full(n_domains, float(l_c))
    signs = np.where(np.arange(n_domains) % 2 == 0, 1, -1)
    return DomainStructure(widths, signs, l_c, "periodic")


def make_unpoled(length: float, l_c: float) -> DomainStructure:
    """Single uniform domain (constant nonlinearity)."""
    return DomainStructure(np.array([float(length)]), np.array([1]), l_c, "unpoled")


def sigma_z_for_bandwidth_match(reference_length: float) -> float:
    """Gaussian nonlinearity width whose shaped response has the same
    amplitude FWHM as the sinc response of an unshaped/periodically poled
    crystal of the given length."""
    sigma_pmf_per_kappa = 2.0 * SINC_HALF_POINT / GAUSS_FWHM_SIGMA
    return 0.5 * reference_length / sigma_pmf_per_kappa


def gaussian_amplitude_target(length: float, sigma_z: float | None = None):
    """Gaussian target profile over [0, length], normalized to peak 1.

    The default width matches the shaped response's width to the sinc
    response of an unshaped crystal of the same length.
    """
    if sigma_z is None:
        sigma_z = sigma_z_for_bandwidth_match(length)
    center = 0.5 * length

    def target(z):
        return np.exp(-((np.asarray(z, dtype=float) - center) ** 2) / (2 * sigma_z**2))

    return target


def make_duty_cycle(l_c: float, n_periods: int, target=None) -> DomainStructure:
    """Duty-cycle-shaped periodic structure.

    Each period 2*l_c carries a flipped segment of width delta*period
    centred on the period (centring keeps the first-order response phase
    flat), with sin(pi*delta) = target(period centre), so the local
    first-order amplitude tracks the target.  Same-sign half-segments of
    neighbouring periods merge, giving 2*n_periods + 1 domains.
    """
    if n_periods < 1:
        raise ValueError("need at least one period")
    period = 2.0 * l_c
    length = n_periods * period
    if target is None:
        target = gaussian_amplitude_target(length)
    centers = (np.arange(n_periods) + 0.5) * period
    t = np.asarray(target(centers), dtype=float)
    if np.any(t < 0) or np.any(t > 1):
        raise ValueError("target amplitude values must lie in [0, 1]")
    delta_min = MIN_WIDTH_FRACTION * l_c / period
    delta = np.clip(np.arcsin(t) / math.pi, delta_min, 0.5)

    widths = [0.5 * (1 - delta[0]) * period]
    signs = [-1]
    for m in range(n_periods):
        widths.append(delta[m] * period)
        signs.append(1)
        gap = 0.5 * (1 - delta[m]) * period
        if m + 1 < n_periods:
            gap += 0.5 * (1 - delta[m + 1]) * period
        widths.append(gap)
        signs.append(-1)
    return DomainStructure(np.array(widths), np.array(signs), l_c, "duty_cycle")


def make_domain_orientation(l_c: float, n_domains: int, target=None) -> DomainStructure:
    """Domain-orientation-shaped structure: fixed-width domains whose signs
    are chosen greedily so the running response at the quasi-phase-matched
    point tracks the cumulative integral of the target amplitude."""
    if n_domains < 2:
        raise ValueError("need at least 2 domains")
    length = n_domains * l_c
    if target is None:
        target = gaussian_amplitude_target(length)
    z = (np.arange(n_domains) + 0.5) * l_c
    t = np.asarray(target(z), dtype=float)
    if np.any(t < 0) or np.any(t > 1):
        raise ValueError("target amplitude values must lie in [0, 1]")

    # per-domain response at dk* = pi/l_c: s_j * u * i * (-1)^j, u = 2 l_c/pi
    u = 2.0 * l_c / math.pi
    goal = np.cumsum(t) * u
    signs = np.empty(n_domains, dtype=int)
    run = 0.0
    for j in range(n_domains):
        step = u if j % 2 == 0 else -u
        if abs(run + step - goal[j]) <= abs(run - step - goal[j]):
            signs[j] = 1
            run += step
        else:
            signs[j] = -1
            run -= step
    return DomainStructure(np.full(n_domains, float(l_c)), signs, l_c, "domain_orientation")


def inject_overpoling(d: DomainStructure, fraction: float) -> DomainStructure:
    """Systematic widening of flipped (s = -1) domains into their unflipped
    neighbours.

    Each wall between opposite orientations moves into the unflipped side by
    (fraction/4) * min(neighbour widths); redistribution is purely local, so
    the total length is exactly preserved and wall positions stay on the
    designed lattice to within the shift itself.  A periodic structure
    acquires the width imbalance (w_flipped - w_unflipped)/l_c = fraction;
    interior adjacent pairs keep their summed width (the crystal end faces
    cannot move, so the two boundary domains trade width one-sidedly).
    """
    if not 0.0 <= fraction <= OVERPOLING_MAX:
        raise ValueError(f"fraction must be within [0, {OVERPOLING_MAX}]")
    if fraction == 0.0:
        return d
    walls = d.walls
    shift = np.zeros_like(walls)
    for j in range(1, len(walls) - 1):
        left, right = d.signs[j - 1], d.signs[j]
        if left == right:
            continue
        delta = 0.25 * fraction * min(d.widths[j - 1], d.widths[j])
        shift[j] = delta if right == 1 else -delta
    new_w = np.diff(walls + shift)
    if np.any(new_w <= 0):
        raise ValueError("over-poling fraction collapses a domain")
    return DomainStructure(new_w, np.array(d.signs), d.coherence_length, d.method)


def inject_wall_jitter(d: DomainStructure, sigma_rvd: float, rng_seed) -> DomainStructure:
    """Random variation of interior wall positions: each wall is displaced
    by an independent Gaussian draw, the crystal end faces stay fixed, and
    colliding walls are clamped to a minimum domain width.

    Clamp events are counted on the returned structure.
    """
    if sigma_rvd < 0:
        raise ValueError("sigma_rvd must be non-negative")
    if sigma_rvd > WALL_JITTER_MAX * d.coherence_length:
        raise ValueError(
            f"sigma_rvd above the studied range {WALL_JITTER_MAX} * l_c"
        )
    if sigma_rvd == 0:
        return d
    rng = np.random.default_rng(rng_seed)
    walls = d.walls
    inner = walls[1:-1] + rng.normal(0.0, sigma_rvd, d.n_domains - 1)
    inner = np.sort(inner)
    new_walls = np.concatenate([[0.0], inner, [walls[-1]]])
    min_w = MIN_WIDTH_FRACTION * d.coherence_length
    clamped = 0
    for j in range(1, len(new_walls)):
        lo = new_walls[j - 1] + min_w
        if new_walls[j] < lo:
            new_walls[j] = lo
            clamped += 1
    for j in range(len(new_walls) - 2, -1, -1):
        hi = new_walls[j + 1] - min_w
        if new_walls[j] > hi:
            new_walls[j] = hi
            clamped += 1
    return DomainStructure(np.diff(new_walls), d.signs.copy(), d.coherence_length,
                           d.method, clamped_walls=clamped)


def inject_missed_domains(d: DomainStructure, miss_fraction: float, rng_seed) -> DomainStructure:
    """Missed domain inversions: a random subset of the flipped (s = -1)
    domains reverts to the background orientation."""
    if not 0.0 <= miss_fraction <= 1.0:
        raise ValueError("miss_fraction must be within [0, 1]")
    rng = np.random.default_rng(rng_seed)
    flipped = np.where(d.signs == -1)[0]
    k = int(round(miss_fraction * len(flipped)))
    signs = np.array(d.signs, dtype=int)
    if k:
        picked = rng.choice(flipped, size=k, replace=False)
        signs[picked] = 1
    return DomainStructure(d.widths.copy(), signs, d.coherence_length, d.method)


def peak_amplitude_ratio(test: DomainStructure, reference: DomainStructure,
                         pulse, grid, group) -> float:
    """Peak |JSA| of the test structure relative to the reference structure,
    both evaluated un-normalized on the same pump/grid/group configuration."""
    from .jsa import build_jsa
    from .spectral import PmfSpec

    def peak(structure):
        spec = PmfSpec("custom", domains=structure, group=group)
        ja = build_jsa(pulse, spec, grid, normalize=False)
        return float(np.max(np.abs(ja.values)))

    ref = peak(reference)
    if ref == 0.0:
        raise ValueError("reference structure has zero peak amplitude")
    return peak(test) / ref


def pmf_survey(d: DomainStructure, dk_max: float | None = None,
               n_points: int = 2000) -> tuple[np.ndarray, np.ndarray]:
    """|phi(dk)| over a wide mismatch range, for locating response lobes far
    from the quasi-phase-matched peak."""
    dk_qpm = d.qpm_mismatch
    if dk_max is None:
        dk_max = 3.5 * dk_qpm
    if dk_max < 3.0 * dk_qpm:
        raise ValueError("survey range must cover at least 3*pi/l_c")
    dks = np.linspace(0.0, dk_max, n_points)
    dks[0] = 1e-12 * dk_qpm  # avoid the exactly-zero point for tidy phases
    mag = np.abs(pmf_from_domains(d, dks))
    dks[0] = 0.0
    return dks, mag


def write_poling(d: DomainStructure, path, seed=None) -> None:
    """Text export: header with l_c, method and seed, then one
    'width_um sign' line per domain."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# pdckit-poling v1\n")
        fh.write(f"# l_c_um {d.coherence_length * 1e6:.17g}\n")
        fh.write(f"# method {d.method}\n")
        fh.write(f"# seed {seed if seed is not None else 'none'}\n")
        for w, s in zip(d.widths, d.signs):
            fh.write(f"{w * 1e6:.17g} {int(s)}\n")


def read_poling(path) -> DomainStructure:
    l_c = None
    method = "unpoled"
    widths = []
    signs = []
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline().strip()
        if first != "# pdckit-poling v1":
            raise ValueError("missing '# pdckit-poling v1' header")
        for ln in fh:
            ln = ln.strip()
            if not ln:
                continue
            if ln.startswith("#"):
                parts = ln[1:].split()
                if parts[:1] == ["l_c_um"]:
                    l_c = float(parts[1]) * 1e-6
                elif parts[:1] == ["method"]:
                    method = parts[1]
                continue
            w, s = ln.split()
            widths.append(float(w) * 1e-6)
            signs.append(int(s))
    if l_c is None:
        raise ValueError("poling file missing l_c_um header")
    return DomainStructure(np.array(widths), np.array(signs), l_c, method)
