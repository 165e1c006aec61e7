"""Figure recipes: which pdckit output files each figure consumes and how
the panels are laid out.  Rendering is read-only over the data directory.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .loaders import (  # noqa: E402
    MissingDataError,
    load_columns,
    load_jsa_magnitude,
    load_mixed_table,
    load_purity_map,
    load_sidecar,
)

SHAPE_PAIRS = (("gaussian", "gaussian"), ("sech", "gaussian"),
               ("gaussian", "sinc"), ("sech", "sinc"))
PAIR_LABELS = {p: f"{p[0]} PEF / {p[1]} PMF" for p in SHAPE_PAIRS}
PAIR_COLORS = dict(zip(SHAPE_PAIRS, ("tab:blue", "tab:orange", "tab:green", "tab:red")))


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    description: str
    inputs: tuple[str, ...]
    draw: Callable[[Path], "plt.Figure"]


def _jsa_panel(ax, data_dir, name, title):
    s, i, mag = load_jsa_magnitude(data_dir / name)
    ax.pcolormesh(i, s, mag, shading="auto", cmap="inferno", rasterized=True)
    ax.set_xlabel("idler frequency (rad/s)")
    ax.set_ylabel("signal frequency (rad/s)")
    ax.set_title(title, fontsize=9)
    ax.set_aspect("equal")


def draw_fig1(data_dir: Path):
    fig, axes = plt.subplots(1, 2, figsize=(8.2, 3.6), constrained_layout=True)
    _jsa_panel(axes[0], data_dir, "jsa_example_separable.csv",
               "separable (unequal bandwidths)")
    _jsa_panel(axes[1], data_dir, "jsa_example_correlated.csv",
               "strongly correlated")
    fig.suptitle("Example joint spectral amplitudes")
    return fig


def draw_fig2(data_dir: Path):
    fig, axes = plt.subplots(2, 2, figsize=(7.4, 6.8), constrained_layout=True)
    for ax, pair in zip(axes.ravel(), SHAPE_PAIRS):
        _jsa_panel(ax, data_dir, f"jsa_{pair[0]}_{pair[1]}.csv", PAIR_LABELS[pair])
    fig.suptitle("Joint spectral amplitudes, symmetric group-velocity matching")
    return fig


def draw_fig3(data_dir: Path):
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    for pair in SHAPE_PAIRS:
        cols = load_columns(data_dir / f"xi_sweep_{pair[0]}_{pair[1]}.csv",
                            ("xi", "purity"))
        ax.plot(cols["xi"], cols["purity"], color=PAIR_COLORS[pair],
                label=PAIR_LABELS[pair])
    ax.set_xlabel(r"width ratio $\xi$")
    ax.set_ylabel("heralded-photon purity")
    ax.set_ylim(0, 1.02)
    ax.legend(fontsize=8)
    return fig


def draw_fig4(data_dir: Path):
    cols = load_columns(data_dir / "crystal_length.csv",
                        ("duration_s", "length_gaussian_m", "length_sech_m"))
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    t_ps = cols["duration_s"] * 1e12
    ax.plot(t_ps, cols["length_gaussian_m"] * 1e3, label="gaussian PEF")
    ax.plot(t_ps, cols["length_sech_m"] * 1e3, label="sech PEF")
    ax.set_xlabel("pump duration, intensity FWHM (ps)")
    ax.set_ylabel("optimal crystal length (mm)")
    ax.legend()
    return fig


def draw_fig5(data_dir: Path):
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    for pair in SHAPE_PAIRS:
        cols = load_columns(data_dir / f"chirp_sweep_{pair[0]}_{pair[1]}.csv",
                            ("kw2", "purity"))
        ax.plot(cols["kw2"], cols["purity"], color=PAIR_COLORS[pair],
                label=PAIR_LABELS[pair])
    ax.set_xlabel(r"chirp strength $k w^2$")
    ax.set_ylabel("heralded-photon purity")
    ax.legend(fontsize=8)
    return fig


def _poling_error_panels(axes, rows, xlabel):
    methods = sorted({r["method"] for r in rows})
    for method in methods:
        sel = [r for r in rows if r["method"] == method]
        lv = np.array([float(r["level"]) for r in sel])
        for ax, key, err in ((axes[0], "mean_purity", "std_purity"),
                             (axes[1], "mean_amplitude_ratio", "std_amplitude_ratio")):
            y = np.array([float(r[key]) for r in sel])
            e = np.array([float(r[err]) for r in sel])
            ax.errorbar(lv, y, yerr=e, marker="o", capsize=2, label=method)
            ax.set_xlabel(xlabel)
    axes[0].set_ylabel("purity")
    axes[1].set_ylabel("peak amplitude ratio")
    axes[0].legend(fontsize=7)


def draw_fig6(data_dir: Path):
    req = ("error", "method", "level", "mean_purity", "std_purity",
           "mean_amplitude_ratio", "std_amplitude_ratio", "baseline_purity")
    jit = load_mixed_table(data_dir / "poling_errors_wall_jitter.csv", req)
    mis = load_mixed_table(data_dir / "poling_errors_missed_domains.csv", req)
    fig, axes = plt.subplots(2, 2, figsize=(8.0, 6.2), constrained_layout=True)
    _poling_error_panels(axes[0], jit, r"wall jitter $\sigma$ / $l_c$")
    _poling_error_panels(axes[1], mis, "missed-domain fraction")
    fig.suptitle("Fabrication imperfections: purity and relative amplitude")
    return fig


def draw_fig7(data_dir: Path):
    names = ("unpoled", "periodic", "duty_cycle", "domain_orientation")
    cols = load_columns(data_dir / "pmf_survey.csv", ("delta_k",) + names)
    fig, axes = plt.subplots(1, 2, figsize=(8.6, 3.6), constrained_layout=True)
    dk = cols["delta_k"]
    qpm = dk[np.argmax(cols["periodic"])]
    for name in names:
        axes[0].semilogy(dk / qpm, np.maximum(cols[name], 1e-12), label=name)
        sel = np.abs(dk - qpm) < 0.15 * qpm
        axes[1].plot(dk[sel] / qpm, cols[name][sel], label=name)
    axes[0].set_xlabel(r"$\Delta k$ / $\Delta k_{qpm}$")
    axes[0].set_ylabel(r"|response| (m)")
    axes[0].set_title("wide range")
    axes[1].set_xlabel(r"$\Delta k$ / $\Delta k_{qpm}$")
    axes[1].set_title("region of interest")
    axes[0].legend(fontsize=7)
    return fig


def _inference_panel(path, xlabel, logx=False):
    cols = load_columns(path, ("purity", "purity_like_jsi", "purity_like_sqrt_jsi"))
    axis_name = [c for c in cols if c not in
                 ("purity", "purity_like_jsi", "purity_like_sqrt_jsi", "std")][0]
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    plot = ax.semilogx if logx else ax.plot
    plot(cols[axis_name], cols["purity"], "o-", color="tab:red", label="from JSA")
    plot(cols[axis_name], cols["purity_like_jsi"], "s-", color="tab:green",
         label="from JSI")
    plot(cols[axis_name], cols["purity_like_sqrt_jsi"], "^-", color="tab:blue",
         label=r"from $\sqrt{\mathrm{JSI}}$")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("inferred purity")
    ax.legend(fontsize=8)
    return fig


def draw_fig8(data_dir: Path):
    return _inference_panel(data_dir / "range_sweep.csv", r"spectral range $\zeta$")


def draw_fig9(data_dir: Path):
    return _inference_panel(data_dir / "resolution_sweep.csv", "resolution N")


def draw_fig10(data_dir: Path):
    zetas, ns, mat = load_purity_map(data_dir / "purity_map.csv")
    ref = load_sidecar(data_dir / "purity_map.csv", ("reference_purity",))[
        "reference_purity"]
    fig, ax = plt.subplots(figsize=(5.6, 4.2), constrained_layout=True)
    levels = ref + np.array([-0.05, -0.02, -0.01, -0.005, 0.005, 0.01, 0.02,
                             0.05, 0.1, 0.2])
    cf = ax.contourf(ns, zetas, mat, levels=np.unique(np.concatenate(
        [[mat.min()], levels, [mat.max()]])), cmap="RdYlGn_r")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("resolution N")
    ax.set_ylabel(r"spectral range $\zeta$")
    fig.colorbar(cf, ax=ax, label=f"purity (reference {ref:.3f})")
    return fig


def draw_fig11(data_dir: Path):
    cols = load_columns(data_dir / "jsi_counts.csv",
                        ("max_counts", "total_pairs", "mean_purity_like", "std"))
    det = load_sidecar(data_dir / "jsi_counts.csv", ("deterministic",))[
        "deterministic"]
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    ax.errorbar(cols["max_counts"], cols["mean_purity_like"], yerr=cols["std"],
                marker="o", capsize=3, linestyle="none", color="tab:blue")
    ax.axhline(det, color="tab:blue", linestyle="--", linewidth=1,
               label=r"deterministic $\sqrt{\mathrm{JSI}}$ value")
    ax.set_xscale("log")
    ax.set_xlabel("mean counts in the brightest bin")
    ax.set_ylabel("purity-like parameter")
    secax = ax.secondary_xaxis(
        "top", functions=(lambda x: x * cols["total_pairs"][0] / cols["max_counts"][0],
                          lambda x: x * cols["max_counts"][0] / cols["total_pairs"][0]))
    secax.set_xlabel("total detected pairs")
    ax.legend(fontsize=8)
    return fig


def draw_fig12(data_dir: Path):
    fig, axes = plt.subplots(2, 2, figsize=(8.0, 6.0), constrained_layout=True)
    for ax, pair in zip(axes.ravel(), SHAPE_PAIRS):
        for kw2, style in ((0, "-"), (2, "--")):
            name = f"hom_{pair[0]}_{pair[1]}_kw2_{kw2:g}.csv"
            cols = load_columns(data_dir / name, ("delay_s", "coincidence_prob"))
            meta = load_sidecar(data_dir / name, ("visibility",))
            ax.plot(cols["delay_s"] * 1e12, cols["coincidence_prob"], style,
                    color=PAIR_COLORS[pair],
                    label=f"$kw^2$={kw2}, V={meta['visibility']:.2f}")
        ax.set_title(PAIR_LABELS[pair], fontsize=9)
        ax.set_xlabel("relative delay (ps)")
        ax.set_ylabel("coincidence probability")
        ax.set_ylim(0, 0.55)
        ax.legend(fontsize=7)
    fig.suptitle("Two-photon interference of heralded photons")
    return fig


RECIPES: dict[str, FigureRecipe] = {}


def _register(figure_id, description, inputs, draw):
    RECIPES[figure_id] = FigureRecipe(figure_id, description, tuple(inputs), draw)


_register("fig1", "example separable/correlated joint amplitudes",
          ["jsa_example_separable.csv", "jsa_example_correlated.csv"], draw_fig1)
_register("fig2", "joint amplitudes for the four shape pairs",
          [f"jsa_{a}_{b}.csv" for a, b in SHAPE_PAIRS], draw_fig2)
_register("fig3", "purity versus width ratio",
          [f"xi_sweep_{a}_{b}.csv" for a, b in SHAPE_PAIRS], draw_fig3)
_register("fig4", "optimal crystal length versus pump duration",
          ["crystal_length.csv"], draw_fig4)
_register("fig5", "purity versus chirp strength",
          [f"chirp_sweep_{a}_{b}.csv" for a, b in SHAPE_PAIRS], draw_fig5)
_register("fig6", "fabrication-imperfection Monte Carlo",
          ["poling_errors_wall_jitter.csv", "poling_errors_missed_domains.csv"],
          draw_fig6)
_register("fig7", "poling response far from the main peak",
          ["pmf_survey.csv"], draw_fig7)
_register("fig8", "inferred purity versus spectral range",
          ["range_sweep.csv"], draw_fig8)
_register("fig9", "inferred purity versus resolution",
          ["resolution_sweep.csv"], draw_fig9)
_register("fig10", "purity over the (zeta, N) lattice",
          ["purity_map.csv", "purity_map.csv.json"], draw_fig10)
_register("fig11", "counting-statistics Monte Carlo",
          ["jsi_counts.csv", "jsi_counts.csv.json"], draw_fig11)
_register("fig12", "two-photon interference patterns",
          [f"hom_{a}_{b}_kw2_{k}.csv" for a, b in SHAPE_PAIRS for k in (0, 2)],
          draw_fig12)
