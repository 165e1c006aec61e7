"""Two-photon interference between heralded photons from two identical,
independent sources, and the visibility it implies.

The coincidence probability for photons in state rho meeting on a balanced
beamsplitter with relative delay tau is

    P_cc(tau) = (1 - Tr[rho D(tau) rho D(tau)^dag]) / 2,

with D(tau) the diagonal delay phase exp(i omega tau) on the grid.  The trace
reduces to a Fourier sum over the squared moduli of the density-matrix
(anti)diagonals, which is how it is evaluated here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jsa import JointAmplitude, mean_marginal_fwhm
from .schmidt import purity as schmidt_purity

WING_FRACTION = 0.05  # outermost fraction of the scan used for the wing level
DEFAULT_POINTS = 201
DEFAULT_SPAN_COHERENCE_TIMES = 10.0


@dataclass(frozen=True)
class HomPattern:
    """Coincidence dip: delays, probabilities, and the extracted visibility
    V = 1 - N_min/N_max with N_min the zero-delay coincidence probability and
    N_max the wing level."""

    delays: np.ndarray
    coincidence_prob: np.ndarray
    visibility: float
    n_min: float
    n_max: float
    purity: float
    metadata: dict = field(default_factory=dict)


def default_delays(j: JointAmplitude, points: int = DEFAULT_POINTS,
                   span_coherence_times: float = DEFAULT_SPAN_COHERENCE_TIMES) -> np.ndarray:
    """Symmetric delay scan over +-span coherence times (1/marginal FWHM)."""
    tau_c = 1.0 / mean_marginal_fwhm(j)
    return np.linspace(-span_coherence_times * tau_c, span_coherence_times * tau_c,
                       points)


def hom_pattern(j: JointAmplitude, delays=None) -> HomPattern:
    """Interference pattern of two heralded photons from identical sources.

    The zero-delay coincidence level is (1 - P)/2 for heralded purity P, and
    the wings settle at 1/2, so the visibility equals the purity; both are
    computed from the same grid so the identity is checked end to end.
    """
    if not j.normalized:
        raise ValueError("hom_pattern needs a normalized joint amplitude")
    if delays is None:
        delays = default_delays(j)
    delays = np.asarray(delays, dtype=float)

    f = j.counting_normalized()
    rho = f @ f.conj().T           # unit-trace heralded density, counting form
    n = rho.shape[0]
    abs2 = np.abs(rho) ** 2
    # band sums B_d = sum_m |rho_{m, m+d}|^2; Tr = sum_d B_d e^{i d dw tau}
    band = np.array([np.trace(abs2, offset=d) for d in range(-n + 1, n)])
    d_index = np.arange(-n + 1, n)
    dw = j.grid.bin_width

    phases = np.cos(np.outer(delays, d_index * dw))
    overlap = phases @ band
    pcc = 0.5 * (1.0 - overlap)

    p = schmidt_purity(j)
    n_min = 0.5 * (1.0 - float(band.sum()))  # tau = 0 value, = (1 - P)/2
    k = max(1, int(round(WING_FRACTION * len(delays) / 2)))
    n_max = float(np.mean(np.concatenate([pcc[:k], pcc[-k:]])))
    if n_max <= 0:
        raise ValueError("wing level vanished; delay scan is degenerate")
    visibility = 1.0 - n_min / n_max
    return HomPattern(
        delays=delays,
        coincidence_prob=pcc,
        visibility=visibility,
        n_min=n_min,
        n_max=n_max,
        purity=p,
        metadata={"points": len(delays)},
    )


def visibility_check(j: JointAmplitude, delays=None) -> tuple[float, float, float]:
    """(visibility, purity, |difference|) for one source configuration."""
    pattern = hom_pattern(j, delays)
    return pattern.visibility, pattern.purity, abs(pattern.visibility - pattern.purity)


def write_hom_csv(pattern: HomPattern, path) -> None:
    """Pattern CSV plus a JSON sidecar with the visibility and purity."""
    import json

    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("delay_s,coincidence_prob\n")
        for t, pc in zip(pattern.delays, pattern.coincidence_prob):
            fh.write(f"{t:.17g},{pc:.17g}\n")
    with open(str(path) + ".json", "w", encoding="utf-8") as fh:
        json.dump(
            {
                "visibility": pattern.visibility,
                "purity": pattern.purity,
                "n_min": pattern.n_min,
                "n_max": pattern.n_max,
                **pattern.metadata,
            },
            fh, indent=2, sort_keys=True, default=float,
        )
        fh.write("\n")
