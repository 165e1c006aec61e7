"""Readers for the pdckit CSV/JSON artifact formats.

These parse exported files only; no physics is recomputed here.  Every
loader validates the columns it needs and raises MissingDataError naming
the offending file and columns, so a recipe fails loudly on schema drift.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


class MissingDataError(RuntimeError):
    """An input file is absent or lacks required columns."""


def _require(path: Path) -> Path:
    if not path.exists():
        raise MissingDataError(f"missing input file: {path}")
    return path


def load_columns(path, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    """Plain comma-separated table with a header row; '#' lines skipped."""
    path = _require(Path(path))
    rows = []
    header = None
    with open(path, "r", encoding="utf-8") as fh:
        for ln in fh:
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            if header is None:
                header = ln.split(",")
                continue
            rows.append(ln.split(","))
    if header is None:
        raise MissingDataError(f"{path}: no header row found")
    missing = [c for c in required if c not in header]
    if missing:
        raise MissingDataError(f"{path}: missing columns {missing}; has {header}")
    data: dict[str, np.ndarray] = {}
    for name in header:
        idx = header.index(name)
        try:
            data[name] = np.array([float(r[idx]) for r in rows])
        except (ValueError, IndexError) as exc:
            raise MissingDataError(f"{path}: malformed column {name!r}: {exc}") from exc
    return data


def load_mixed_table(path, required: tuple[str, ...]) -> list[dict[str, str]]:
    """Comma-separated table kept as strings (for label columns)."""
    path = _require(Path(path))
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    header = lines[0].split(",")
    missing = [c for c in required if c not in header]
    if missing:
        raise MissingDataError(f"{path}: missing columns {missing}; has {header}")
    out = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(header):
            raise MissingDataError(f"{path}: ragged row {ln!r}")
        out.append(dict(zip(header, cells)))
    return out


def load_sidecar(csv_path, required: tuple[str, ...] = ()) -> dict:
    path = _require(Path(str(csv_path) + ".json"))
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    missing = [k for k in required if k not in data]
    if missing:
        raise MissingDataError(f"{path}: missing keys {missing}")
    return data


def load_jsa_magnitude(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """|values| of a pdckit JSA export, with the signal/idler axes."""
    path = _require(Path(path))
    with open(path, "r", encoding="utf-8") as fh:
        meta = fh.readline().strip()
        if not meta.startswith("# pdckit-jsa v1 "):
            raise MissingDataError(f"{path}: not a pdckit-jsa v1 file")
        header = fh.readline().strip().split(",")
        rows = [ln.strip().split(",") for ln in fh if ln.strip()]
    if header[0] != "omega_s" or len(header) < 3:
        raise MissingDataError(f"{path}: unexpected JSA header {header[:3]}...")
    idler = np.array([float(c.split("@")[1]) for c in header[1::2]])
    signal = np.array([float(r[0]) for r in rows])
    mag = np.empty((len(signal), len(idler)))
    for i, r in enumerate(rows):
        nums = np.array([float(x) for x in r[1:]])
        mag[i] = np.hypot(nums[0::2], nums[1::2])
    return signal, idler, mag


def load_purity_map(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """zeta values, N values and the purity matrix of a purity-map export."""
    path = _require(Path(path))
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    header = lines[0].split(",")
    if not header[0].startswith("zeta"):
        raise MissingDataError(f"{path}: unexpected map header {header[0]!r}")
    n_values = np.array([float(x) for x in header[1:]])
    zetas = []
    matrix = []
    for ln in lines[1:]:
        cells = [float(x) for x in ln.split(",")]
        zetas.append(cells[0])
        matrix.append(cells[1:])
    return np.array(zetas), n_values, np.array(matrix)
