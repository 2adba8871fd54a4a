"""Exact rank, classification, and censuses for matrix spaces over division rings.

Thin re-export of the compiled core. File formats (rings, matrices, spaces,
reports) are JSON strings identical to what the command-line tool reads and
writes, so ``json.loads`` on any ``to_json``/census output gives plain dicts.
"""

from ._core import (
    Matrix,
    Ring,
    SkewrankError,
    Space,
    census_bound,
    census_corollary,
    census_extremal,
    classify,
    compression,
    extraction_predicate,
    inverse,
    normal_form,
    random_matrix,
    regular_rep,
    transpose_op,
    u2_space,
)

__all__ = [
    "Matrix",
    "Ring",
    "SkewrankError",
    "Space",
    "census_bound",
    "census_corollary",
    "census_extremal",
    "classify",
    "compression",
    "extraction_predicate",
    "inverse",
    "normal_form",
    "random_matrix",
    "regular_rep",
    "transpose_op",
    "u2_space",
]
