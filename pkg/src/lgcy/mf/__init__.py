"""Graded matrix factorizations and the window algorithm."""

from .factorization import (
    MatrixFactorization,
    MfError,
    MfMorphism,
    Summand,
    ValidationResult,
    build_koszul_minus,
    build_koszul_plus,
    cone,
    direct_sum,
    identity_morphism,
    shift_one,
    twist_shift,
    validate_mf,
)
from .poly import BigradedPoly
from .potential import Potential, PotentialError, default_potential, fermat_split
from .replace import (
    Decomposition,
    NotReplaceable,
    NotReplaceableError,
    find_replaceable,
    replace_summand,
    replacement_witnesses,
)
from .window import (
    LedgerEntry,
    WindowLedger,
    orlov_chern_closed,
    orlov_chern_ledger,
    orlov_object,
    window_push,
)

__all__ = [
    "BigradedPoly",
    "Decomposition",
    "LedgerEntry",
    "MatrixFactorization",
    "MfError",
    "MfMorphism",
    "NotReplaceable",
    "NotReplaceableError",
    "Potential",
    "PotentialError",
    "Summand",
    "ValidationResult",
    "WindowLedger",
    "build_koszul_minus",
    "build_koszul_plus",
    "cone",
    "default_potential",
    "direct_sum",
    "fermat_split",
    "find_replaceable",
    "identity_morphism",
    "orlov_chern_closed",
    "orlov_chern_ledger",
    "orlov_object",
    "replace_summand",
    "replacement_witnesses",
    "shift_one",
    "twist_shift",
    "validate_mf",
    "window_push",
]
