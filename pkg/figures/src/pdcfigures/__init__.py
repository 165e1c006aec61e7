"""pdcfigures: figure rendering for pdckit study outputs.

Strictly a consumer of the exported CSV/JSON artifacts; nothing here
recomputes physics, and the core package runs without this one.
"""

from .loaders import MissingDataError
from .recipes import RECIPES, FigureRecipe
from .render import render, render_all

__version__ = "0.1.0"
