"""Batch command line: every study writes deterministic CSV/JSON artifacts
into an output directory, one subcommand per reproducible result set."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import characterize as ch
from .dispersion import C_LIGHT, OPTIMAL_XI, crystal_length_for_pulse, ktp_type2_group
from .hom import hom_pattern, write_hom_csv
from .jsa import build_jsa, to_intensity, write_jsa_csv, write_jsi_csv
from .spectral import PmfSpec

DEFAULT_SEED = 2020


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, default=Path("pdckit-out"),
                   help="output directory (created if missing)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--config", type=Path, default=None,
                   help="JSON file whose entries override the flags")


def _add_shapes(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--pef", choices=("gaussian", "sech"), required=required,
                   default=None if required else "sech")
    p.add_argument("--pmf", choices=("gaussian", "sinc"), required=required,
                   default=None if required else "sinc")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pdckit",
        description="photon-pair source design and characterization studies",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="maximum purity and optimal width ratio "
                                      "for the four envelope/phase-matching pairs")
    p.add_argument("--zeta", type=float, default=ch.DEFAULT_ZETA)
    p.add_argument("--bins", type=int, default=ch.DEFAULT_BINS)
    _add_common(p)

    p = sub.add_parser("xi-sweep", help="purity versus width ratio")
    _add_shapes(p)
    p.add_argument("--xi-min", type=float, default=0.4)
    p.add_argument("--xi-max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=40)
    p.add_argument("--zeta", type=float, default=ch.DEFAULT_ZETA)
    p.add_argument("--bins", type=int, default=ch.DEFAULT_BINS)
    _add_common(p)

    p = sub.add_parser("crystal-length", help="optimal crystal length versus "
                                              "pump pulse duration")
    p.add_argument("--t-min", type=float, default=0.2e-12)
    p.add_argument("--t-max", type=float, default=4.0e-12)
    p.add_argument("--points", type=int, default=40)
    p.add_argument("--pump-wavelength", type=float,
                   default=2 * math.pi * C_LIGHT / 2.38e15)
    _add_common(p)

    p = sub.add_parser("chirp-sweep", help="purity versus quadratic-phase strength")
    _add_shapes(p)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--kw2-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--zeta", type=float, default=ch.DEFAULT_ZETA)
    p.add_argument("--bins", type=int, default=ch.DEFAULT_BINS)
    _add_common(p)

    p = sub.add_parser("poling-errors", help="fabrication-imperfection Monte Carlo")
    p.add_argument("--error", choices=("overpoling", "wall_jitter", "missed_domains"),
                   required=True)
    p.add_argument("--levels", type=_parse_floats, default=None)
    p.add_argument("--trials", type=int, default=ch.MC_TRIALS_FABRICATION)
    _add_common(p)

    p = sub.add_parser("pmf-survey", help="response far from the main peak "
                                          "for each poling method")
    p.add_argument("--points", type=int, default=2000)
    _add_common(p)

    p = sub.add_parser("range-sweep", help="inferred purities versus spectral range")
    p.add_argument("--zetas", type=_parse_floats,
                   default=[2, 3, 5, 8, 10, 15, 20, 30, 40, 60])
    p.add_argument("--bins", type=int, default=150)
    _add_common(p)

    p = sub.add_parser("resolution-sweep", help="inferred purities versus resolution")
    p.add_argument("--n-values", type=_parse_ints,
                   default=[10, 20, 30, 40, 60, 100, 150, 250, 400])
    p.add_argument("--zeta", type=float, default=10.0)
    _add_common(p)

    p = sub.add_parser("purity-map", help="purity over a (zeta, N) lattice with "
                                          "a high-accuracy reference")
    p.add_argument("--zeta-min", type=float, default=4.0)
    p.add_argument("--zeta-max", type=float, default=630.0)
    p.add_argument("--zeta-points", type=int, default=8)
    p.add_argument("--n-min", type=int, default=20)
    p.add_argument("--n-max", type=int, default=3000)
    p.add_argument("--n-points", type=int, default=8)
    p.add_argument("--fast", action="store_true",
                   help="use the CI-sized reference instead of the full one")
    _add_common(p)

    p = sub.add_parser("jsi-counts", help="Poisson counting-statistics Monte Carlo")
    p.add_argument("--max-counts", type=_parse_floats,
                   default=[10, 30, 100, 300, 1000, 3000])
    p.add_argument("--trials", type=int, default=ch.MC_TRIALS_COUNTING)
    p.add_argument("--zeta", type=float, default=10.0)
    p.add_argument("--bins", type=int, default=100)
    _add_common(p)

    p = sub.add_parser("hom", help="two-photon interference pattern and visibility")
    _add_shapes(p)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--kw2", type=float, default=0.0)
    p.add_argument("--zeta", type=float, default=ch.DEFAULT_ZETA)
    p.add_argument("--bins", type=int, default=ch.DEFAULT_BINS)
    _add_common(p)

    p = sub.add_parser("jsa-gallery", help="example joint spectra: the four "
                                           "shape pairs plus separable/correlated "
                                           "gaussian cases")
    p.add_argument("--zeta", type=float, default=8.0)
    p.add_argument("--bins", type=int, default=200)
    _add_common(p)

    return ap


def _apply_config(args: argparse.Namespace) -> argparse.Namespace:
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            overrides = json.load(fh)
        for key, value in overrides.items():
            attr = key.replace("-", "_")
            if not hasattr(args, attr):
                raise ValueError(f"config key {key!r} is not a flag of this command")
            if attr == "out":
                value = Path(value)
            setattr(args, attr, value)
    return args


def _write_resolved_config(args: argparse.Namespace, out: Path) -> None:
    resolved = {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in vars(args).items() if k != "config"
    }
    with open(out / f"{args.command}.config.json", "w", encoding="utf-8") as fh:
        json.dump(resolved, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_table1(args) -> None:
    rows = ch.table1(args.zeta, args.bins, threads=args.threads)
    path = args.out / "table1.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("pef,pmf,max_purity,optimal_xi\n")
        for r in rows:
            fh.write(f"{r['pef']},{r['pmf']},{r['max_purity']:.17g},"
                     f"{r['optimal_xi']:.17g}\n")


def _cmd_xi_sweep(args) -> None:
    xis = np.linspace(args.xi_min, args.xi_max, args.points)
    res = ch.sweep_xi(args.pef, args.pmf, xis, args.zeta, args.bins,
                      threads=args.threads)
    ch.write_sweep_csv(res, args.out / f"xi_sweep_{args.pef}_{args.pmf}.csv")


def _cmd_crystal_length(args) -> None:
    group = ktp_type2_group(args.pump_wavelength)
    durations = np.linspace(args.t_min, args.t_max, args.points)
    path = args.out / "crystal_length.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("duration_s,length_gaussian_m,length_sech_m\n")
        for t in durations:
            lg = crystal_length_for_pulse(t, "gaussian", group)
            ls = crystal_length_for_pulse(t, "sech", group)
            fh.write(f"{t:.17g},{lg:.17g},{ls:.17g}\n")


def _cmd_chirp_sweep(args) -> None:
    kw2 = np.linspace(0.0, args.kw2_max, args.points)
    res = ch.sweep_chirp(args.pef, args.pmf, kw2, xi=args.xi,
                         zeta=args.zeta, n_bins=args.bins, threads=args.threads)
    ch.write_sweep_csv(res, args.out / f"chirp_sweep_{args.pef}_{args.pmf}.csv")


def _cmd_poling_errors(args) -> None:
    levels = args.levels
    if levels is None:
        levels = {
            "overpoling": [0.0, 0.05, 0.10, 0.15],
            "wall_jitter": [0.0, 0.04, 0.08, 0.12],
            "missed_domains": [0.0, 0.02, 0.05, 0.10],
        }[args.error]
    results = ch.poling_error_study(args.error, levels, trials=args.trials,
                                    rng_seed=args.seed, threads=args.threads)
    ch.write_poling_error_csv(results, args.out / f"poling_errors_{args.error}.csv")


def _cmd_pmf_survey(args) -> None:
    dks, curves = ch.pmf_survey_study(n_points=args.points)
    ch.write_survey_csv(dks, curves, args.out / "pmf_survey.csv")


def _cmd_range_sweep(args) -> None:
    res = ch.sweep_spectral_range(args.zetas, n_bins=args.bins, threads=args.threads)
    ch.write_sweep_csv(res, args.out / "range_sweep.csv")


def _cmd_resolution_sweep(args) -> None:
    res = ch.sweep_resolution(args.n_values, zeta=args.zeta, threads=args.threads)
    ch.write_sweep_csv(res, args.out / "resolution_sweep.csv")


def _cmd_purity_map(args) -> None:
    zetas = np.geomspace(args.zeta_min, args.zeta_max, args.zeta_points)
    ns = np.unique(np.geomspace(args.n_min, args.n_max, args.n_points).astype(int))
    res = ch.purity_map(zetas, ns, fast_reference=args.fast, threads=args.threads)
    ch.write_map_csv(res, args.out / "purity_map.csv")


def _cmd_jsi_counts(args) -> None:
    ja = ch.build_for_xi("sech", "sinc", OPTIMAL_XI[("sech", "sinc")],
                         args.zeta, args.bins)
    res = ch.jsi_counting_montecarlo(to_intensity(ja).values, args.max_counts,
                                     trials=args.trials, rng_seed=args.seed,
                                     threads=args.threads)
    ch.write_counting_csv(res, args.out / "jsi_counts.csv")


def _cmd_hom(args) -> None:
    xi = args.xi if args.xi is not None else OPTIMAL_XI[(args.pef, args.pmf)]
    ja = ch.build_for_xi(args.pef, args.pmf, xi, args.zeta, args.bins,
                         chirp_kw2=args.kw2)
    pattern = hom_pattern(ja)
    name = f"hom_{args.pef}_{args.pmf}_kw2_{args.kw2:g}.csv"
    write_hom_csv(pattern, args.out / name)


def _cmd_jsa_gallery(args) -> None:
    for pef_shape, pmf_shape in (("gaussian", "gaussian"), ("sech", "gaussian"),
                                 ("gaussian", "sinc"), ("sech", "sinc")):
        xi = OPTIMAL_XI[(pef_shape, pmf_shape)]
        ja = ch.build_for_xi(pef_shape, pmf_shape, xi, args.zeta, args.bins)
        write_jsa_csv(ja, args.out / f"jsa_{pef_shape}_{pmf_shape}.csv")
        write_jsi_csv(to_intensity(ja), args.out / f"jsi_{pef_shape}_{pmf_shape}.csv")

    # separable at theta = pi/3 (unequal photon bandwidths) vs strongly
    # correlated at theta = pi/4
    pulse = ch.default_pulse("gaussian")
    theta = math.pi / 3
    sigma_sep = pulse.width_param * math.sqrt(2 * math.sin(theta) * math.cos(theta))
    for name, pmf in (
        ("separable", PmfSpec("gaussian", sigma_sep, theta=theta)),
        ("correlated", PmfSpec("gaussian", 5.0 * pulse.width_param)),
    ):
        grid = ch.grid_for_zeta(pulse, pmf, args.zeta, args.bins)
        ja = build_jsa(pulse, pmf, grid)
        write_jsa_csv(ja, args.out / f"jsa_example_{name}.csv")


_COMMANDS = {
    "table1": _cmd_table1,
    "xi-sweep": _cmd_xi_sweep,
    "crystal-length": _cmd_crystal_length,
    "chirp-sweep": _cmd_chirp_sweep,
    "poling-errors": _cmd_poling_errors,
    "pmf-survey": _cmd_pmf_survey,
    "range-sweep": _cmd_range_sweep,
    "resolution-sweep": _cmd_resolution_sweep,
    "purity-map": _cmd_purity_map,
    "jsi-counts": _cmd_jsi_counts,
    "hom": _cmd_hom,
    "jsa-gallery": _cmd_jsa_gallery,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args = _apply_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        ap.exit(2, f"pdckit: bad config: {exc}\n")
    try:
        args.out.mkdir(parents=True, exist_ok=True)
        _COMMANDS[args.command](args)
        _write_resolved_config(args, args.out)
    except Exception as exc:  # numerical or I/O failure: diagnostic + exit 1
        print(f"pdckit: {args.command} failed: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
