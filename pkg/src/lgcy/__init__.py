"""Exact and numeric checks of the LG/CY correspondence for two cubics in P^5.

Subpackages: ``lgcy.mf`` (matrix factorizations and windows) and
``lgcy.analytic`` (series and Mellin-Barnes continuation).
"""

from .cohomology import (
    FjrwClass,
    GwClass,
    ch_kminus,
    fjrw_ch_line,
    gw_exp,
    gw_nilpotent_inverse,
    todd_inverse_narrow,
)
from .exact import EisensteinScalar, Rational, TruncatedSeries, eis_inv, eis_mul, eis_to_complex
from .mirror import (
    MirrorMap,
    RangeError,
    Report,
    apply_mirror,
    build_mirror_map,
    build_mirror_map_matrix,
    check_elem_identities,
    check_main_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "EisensteinScalar",
    "FjrwClass",
    "GwClass",
    "MirrorMap",
    "RangeError",
    "Rational",
    "Report",
    "TruncatedSeries",
    "apply_mirror",
    "build_mirror_map",
    "build_mirror_map_matrix",
    "ch_kminus",
    "check_elem_identities",
    "check_main_theorem",
    "eis_inv",
    "eis_mul",
    "eis_to_complex",
    "fjrw_ch_line",
    "gw_exp",
    "gw_nilpotent_inverse",
    "todd_inverse_narrow",
]
