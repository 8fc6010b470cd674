"""Exact toolkit for branching programs with help polynomials, cut matrices
and rank-metric remote points.

The heavy lifting lives in the compiled ``_ncabp`` extension; this package
re-exports its surface.
"""

from _ncabp import (
    Abp,
    Certificate,
    CutMatrix,
    Decomposition,
    DecompPiece,
    Mat,
    NCPoly,
    ParseError,
    ResourceError,
    bound_report,
    cut_matrix,
    decompose,
    full_rank_poly,
    generate_hard,
    min_span_distance,
    rank_distance,
    solve_improved,
    solve_simple,
)

__all__ = [
    "Abp",
    "Certificate",
    "CutMatrix",
    "Decomposition",
    "DecompPiece",
    "Mat",
    "NCPoly",
    "ParseError",
    "ResourceError",
    "bound_report",
    "cut_matrix",
    "decompose",
    "full_rank_poly",
    "generate_hard",
    "min_span_distance",
    "rank_distance",
    "solve_improved",
    "solve_simple",
]

__version__ = "0.1.0"
