"""Unequal circle packing in a square container."""

from ._core import (
    Family,
    Pattern,
    SolveResult,
    __version__,
    known_best,
    parse_solution,
    post_process,
    radii,
    shelf_upper_bound,
    solve,
)

__all__ = [
    "Family",
    "Pattern",
    "SolveResult",
    "__version__",
    "known_best",
    "parse_solution",
    "post_process",
    "radii",
    "shelf_upper_bound",
    "solve",
]
