"""Schmidt decomposition of discretized joint amplitudes, heralded-photon
density matrices and the purity-like parameter computed from intensity data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jsa import JointAmplitude

COEFF_TRUNCATION = 1e-12  # drop singular values below this fraction of the largest


@dataclass(frozen=True)
class SchmidtResult:
    """Normalized Schmidt coefficients (squares sum to one, descending),
    the discretized mode pairs, and the heralded-photon purity sum(b^4)."""

    coefficients: np.ndarray
    signal_modes: np.ndarray  # column k is the k-th signal mode
    idler_modes: np.ndarray   # column k is the k-th idler mode
    purity: float

    @property
    def schmidt_number(self) -> float:
        """Effective mode count 1/sum(b^4)."""
        return 1.0 / self.purity


def schmidt_decompose(matrix) -> SchmidtResult:
    """Singular value decomposition of a joint-amplitude matrix, with the
    singular values normalized so their squares sum to one.

    Accepts a plain matrix or a JointAmplitude; the result is invariant
    under overall rescaling, so either counting- or measure-normalized
    input gives the same coefficients.
    """
    if isinstance(matrix, JointAmplitude):
        matrix = matrix.values
    m = np.asarray(matrix)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    total = np.linalg.norm(m)
    if total == 0:
        raise ValueError("all-zero matrix has no Schmidt decomposition")
    u, s, vh = np.linalg.svd(m / total)
    keep = s >= COEFF_TRUNCATION * s[0]
    s = s[keep]
    b = s / np.sqrt(np.sum(s * s))
    purity = float(np.sum(b**4))
    return SchmidtResult(
        coefficients=b,
        signal_modes=u[:, keep],
        idler_modes=vh[keep].conj().T,
        purity=purity,
    )


def purity(matrix) -> float:
    """Heralded-photon spectral purity sum(b_k^4) of a joint amplitude."""
    if isinstance(matrix, JointAmplitude):
        matrix = matrix.values
    m = np.asarray(matrix)
    total = np.linalg.norm(m)
    if total == 0:
        raise ValueError("all-zero matrix has no Schmidt decomposition")
    s = np.linalg.svd(m / total, compute_uv=False)
    s = s[s >= COEFF_TRUNCATION * s[0]]
    b2 = (s * s) / np.sum(s * s)
    return float(np.sum(b2 * b2))


def purity_like(matrix) -> float:
    """Purity-like parameter from a real matrix such as a measured joint
    intensity or its square root.

    Same singular-value pipeline as the amplitude purity; it equals the true
    purity only when the underlying amplitude is real and non-negative, and
    is otherwise a systematically wrong estimate.
    """
    return purity(np.asarray(matrix, dtype=float))


@dataclass(frozen=True)
class HeraldedDensity:
    """Discretized spectral density matrix rho(omega, omega') of the photon
    heralded by a flat-response detection of its partner.

    values holds the kernel; discrete traces carry the bin measure, so
    trace() is 1 for a normalized joint amplitude and purity() matches the
    Schmidt-coefficient sum.
    """

    values: np.ndarray
    bin_width: float

    def trace(self) -> float:
        return float(np.real(np.trace(self.values)) * self.bin_width)

    def purity(self) -> float:
        return float(np.real(np.sum(self.values * self.values.T)) * self.bin_width**2)


def heralded_density(j: JointAmplitude) -> HeraldedDensity:
    """rho(w, w') = sum_i f(w, w_i) f*(w', w_i) dw_i for the signal photon."""
    if not j.normalized:
        raise ValueError("heralded density needs a normalized joint amplitude")
    f = j.values
    rho = (f @ f.conj().T) * j.grid.bin_width
    return HeraldedDensity(values=rho, bin_width=j.grid.bin_width)


def write_schmidt_csv(result: SchmidtResult, path, grid=None, n_modes: int = 0) -> None:
    """Coefficient export, optionally followed by the first n_modes
    discretized mode pairs (bin centre, re, im per mode)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# pdckit-schmidt v1\n")
        fh.write("k,coefficient\n")
        for k, b in enumerate(result.coefficients):
            fh.write(f"{k},{b:.17g}\n")
        if n_modes:
            n_modes = min(n_modes, result.signal_modes.shape[1])
            axis = (grid.signal_freqs if grid is not None
                    else np.arange(result.signal_modes.shape[0], dtype=float))
            header = ["omega"]
            for k in range(n_modes):
                header += [f"signal{k}_re", f"signal{k}_im",
                           f"idler{k}_re", f"idler{k}_im"]
            fh.write(",".join(header) + "\n")
            for row in range(result.signal_modes.shape[0]):
                cells = [f"{axis[row]:.17g}"]
                for k in range(n_modes):
                    q = result.signal_modes[row, k]
                    r = result.idler_modes[row, k]
                    cells += [f"{q.real:.17g}", f"{q.imag:.17g}",
                              f"{r.real:.17g}", f"{r.imag:.17g}"]
                fh.write(",".join(cells) + "\n")
