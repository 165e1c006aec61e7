"""Render figures from a completed pdckit output directory."""

from __future__ import annotations

from pathlib import Path

import matplotlib.pyplot as plt

from .loaders import MissingDataError
from .recipes import RECIPES


def render(figure_id: str, data_dir, out_path=None, fmt: str = "png") -> Path:
    """Draw one recipe figure from the data directory and write the image.

    Raises MissingDataError when any input file or column is absent.
    """
    try:
        recipe = RECIPES[figure_id]
    except KeyError:
        raise MissingDataError(
            f"unknown figure id {figure_id!r}; known: {sorted(RECIPES)}") from None
    data_dir = Path(data_dir)
    if out_path is None:
        out_path = Path(f"{figure_id}.{fmt}")
    out_path = Path(out_path)
    fig = recipe.draw(data_dir)
    try:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out_path, dpi=150)
    finally:
        plt.close(fig)
    return out_path


def render_all(data_dir, out_dir, fmt: str = "png") -> list[Path]:
    out_dir = Path(out_dir)
    written = []
    for figure_id in RECIPES:
        written.append(render(figure_id, data_dir, out_dir / f"{figure_id}.{fmt}", fmt))
    return written
