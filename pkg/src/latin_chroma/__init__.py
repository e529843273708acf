"""Chromatic numbers and certified colorings of Latin square graphs."""
from .squares import (
    LatinSquare,
    apply_isotopy,
    circulant,
    conjugate,
    conjugates,
    format_square,
    is_row_complete,
    parse_catalog,
    parse_square,
    random_square,
    validate,
    williams_row_complete,
)
from .coloring import (
    Budget,
    ChiResult,
    Coloring,
    bound_report,
    circulant_coloring,
    exact_chromatic,
    greedy_coloring,
    plex_bound_coloring,
    row_complete_coloring,
    verify_coloring,
)
from .kernels import BACKEND

__version__ = "0.1.0"
