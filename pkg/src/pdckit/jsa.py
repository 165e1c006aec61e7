"""Discretized joint spectral amplitude/intensity on uniform detuning grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import PmfSpec, PulseSpec, pef_value, pmf_value
from .poling import pmf_from_domains


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform signal/idler detuning grid.

    n_bins bins per axis cover a total span (rad/s) symmetrically about the
    centre frequencies; samples sit at bin centres (midpoint rule).  zeta
    records the realized span / mean marginal FWHM when the grid was built
    for a target spectral-range ratio.
    """

    n_bins: int
    span: float
    center_s: float = 0.0
    center_i: float = 0.0
    zeta: float | None = None

    def __post_init__(self):
        if self.n_bins < 2:
            raise ValueError("n_bins must be at least 2")
        if self.span <= 0:
            raise ValueError("span must be positive")

    @property
    def bin_width(self) -> float:
        return self.span / self.n_bins

    @property
    def detunings(self) -> np.ndarray:
        """Bin-centre offsets from the axis centre, symmetric about zero."""
        d = self.bin_width
        return (np.arange(self.n_bins) - 0.5 * (self.n_bins - 1)) * d

    @property
    def signal_freqs(self) -> np.ndarray:
        return self.center_s + self.detunings

    @property
    def idler_freqs(self) -> np.ndarray:
        return self.center_i + self.detunings


@dataclass(frozen=True)
class JointAmplitude:
    """Complex joint spectral amplitude sampled on a grid; rows are signal
    bins, columns idler bins."""

    grid: SpectralGrid
    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        v = np.array(self.values)  # own the data; callers keep their arrays
        if v.shape != (self.grid.n_bins, self.grid.n_bins):
            raise ValueError("values must be n_bins x n_bins")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def l2_norm(self) -> float:
        """Discrete L2 norm including the bin-area measure."""
        area = self.grid.bin_width ** 2
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * area))

    def normalize(self) -> "JointAmplitude":
        n = self.l2_norm
        if n == 0:
            raise ValueError("all-zero amplitude cannot be normalized")
        return JointAmplitude(self.grid, self.values / n, normalized=True)

    def counting_normalized(self) -> np.ndarray:
        """Values scaled to unit Frobenius norm (no measure factor)."""
        return self.values / np.linalg.norm(self.values)


@dataclass(frozen=True)
class JointIntensity:
    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.grid.n_bins, self.grid.n_bins):
            raise ValueError("values must be n_bins x n_bins")
        if np.any(v < 0):
            raise ValueError("intensity values must be non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def build_jsa(pulse: PulseSpec, pmf: PmfSpec, grid: SpectralGrid,
              normalize: bool = True) -> JointAmplitude:
    """Sample pump envelope times phase-matching function at the grid's bin
    centres.

    Custom (domain-sum) phase matching and an exactly antisymmetric slope
    pair evaluate over the 2N-1 distinct detuning differences instead of
    all N^2 points.
    """
    off = grid.detunings
    os_col = off[:, None]
    oi_row = off[None, :]
    pef = pef_value(pulse, os_col, oi_row)

    if pmf.shape == "custom" and pmf.group.slope_s == -pmf.group.slope_i:
        idx = np.arange(grid.n_bins)
        d_idx = idx[:, None] - idx[None, :]          # integer difference grid
        uniq = np.arange(-(grid.n_bins - 1), grid.n_bins)
        dks = pmf.group.dk0 + pmf.group.slope_s * grid.bin_width * uniq
        line = pmf_from_domains(pmf.domains, dks)
        phi = line[d_idx + grid.n_bins - 1]
    else:
        phi = pmf_value(pmf, os_col, oi_row)

    ja = JointAmplitude(grid, pef * phi, normalized=False)
    return ja.normalize() if normalize else ja


def to_intensity(j: JointAmplitude) -> JointIntensity:
    return JointIntensity(j.grid, np.abs(j.values) ** 2)


def marginal_intensity(j: JointAmplitude, axis: str = "signal") -> np.ndarray:
    """Marginal intensity distribution along one photon's axis."""
    inten = np.abs(j.values) ** 2
    if axis == "signal":
        return inten.sum(axis=1) * j.grid.bin_width
    if axis == "idler":
        return inten.sum(axis=0) * j.grid.bin_width
    raise ValueError("axis must be 'signal' or 'idler'")


def marginal_fwhm(j: JointAmplitude, axis: str = "signal") -> float:
    """FWHM of the marginal intensity distribution, linearly interpolated
    between bins.  A peak or half-max crossing at the grid edge means the
    grid does not contain the photon spectrum."""
    inten = marginal_intensity(j, axis)
    m = int(np.argmax(inten))
    n = len(inten)
    if m == 0 or m == n - 1:
        raise ValueError("spectral range too small: marginal peak at grid edge")
    half = inten[m] / 2.0

    il = m
    while il > 0 and inten[il] > half:
        il -= 1
    if inten[il] > half:
        raise ValueError("spectral range too small: half maximum not reached")
    ir = m
    while ir < n - 1 and inten[ir] > half:
        ir += 1
    if inten[ir] > half:
        raise ValueError("spectral range too small: half maximum not reached")

    x = j.grid.detunings
    d = j.grid.bin_width
    xl = x[il] + d * (half - inten[il]) / (inten[il + 1] - inten[il])
    xr = x[ir - 1] + d * (half - inten[ir - 1]) / (inten[ir] - inten[ir - 1])
    return float(xr - xl)


def mean_marginal_fwhm(j: JointAmplitude) -> float:
    return 0.5 * (marginal_fwhm(j, "signal") + marginal_fwhm(j, "idler"))


def realized_zeta(j: JointAmplitude) -> float:
    """Spectral-range ratio of the grid the amplitude lives on."""
    return j.grid.span / mean_marginal_fwhm(j)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_jsa_csv(j: JointAmplitude, path) -> None:
    """CSV export: metadata line, a header row carrying the idler bin-centre
    frequencies ((re, im) column pair per bin), then one row per signal bin."""
    g = j.grid
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(
            f"# pdckit-jsa v1 n_bins={g.n_bins} span={_fmt(g.span)} "
            f"center_s={_fmt(g.center_s)} center_i={_fmt(g.center_i)} "
            f"normalized={int(j.normalized)}\n"
        )
        cols = ["omega_s"]
        for w in g.idler_freqs:
            cols += [f"re@{_fmt(w)}", f"im@{_fmt(w)}"]
        fh.write(",".join(cols) + "\n")
        for ws, row in zip(g.signal_freqs, j.values):
            cells = [_fmt(ws)]
            for v in row:
                cells += [_fmt(v.real), _fmt(v.imag)]
            fh.write(",".join(cells) + "\n")


def read_jsa_csv(path) -> JointAmplitude:
    with open(path, "r", encoding="utf-8") as fh:
        meta = fh.readline().strip()
        if not meta.startswith("# pdckit-jsa v1 "):
            raise ValueError("missing '# pdckit-jsa v1' header")
        kv = dict(tok.split("=", 1) for tok in meta.split()[3:])
        fh.readline()  # column header
        rows = [ln.strip().split(",") for ln in fh if ln.strip()]
    n = int(kv["n_bins"])
    if len(rows) != n:
        raise ValueError(f"expected {n} data rows, found {len(rows)}")
    vals = np.empty((n, n), dtype=complex)
    for r, cells in enumerate(rows):
        nums = np.array([float(c) for c in cells[1:]])
        vals[r] = nums[0::2] + 1j * nums[1::2]
    grid = SpectralGrid(
        n_bins=n,
        span=float(kv["span"]),
        center_s=float(kv["center_s"]),
        center_i=float(kv["center_i"]),
    )
    return JointAmplitude(grid, vals, normalized=bool(int(kv["normalized"])))


def write_jsi_csv(j: JointIntensity, path) -> None:
    g = j.grid
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(
            f"# pdckit-jsi v1 n_bins={g.n_bins} span={_fmt(g.span)} "
            f"center_s={_fmt(g.center_s)} center_i={_fmt(g.center_i)}\n"
        )
        fh.write(",".join(["omega_s"] + [_fmt(w) for w in g.idler_freqs]) + "\n")
        for ws, row in zip(g.signal_freqs, j.values):
            fh.write(",".join([_fmt(ws)] + [_fmt(v) for v in row]) + "\n")
